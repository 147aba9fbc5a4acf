"""Published Gram matrices, solution vectors and scalars checked by the reproduction suite"""

from fractions import Fraction

# Row order of the published 8x8 Gram matrix (agrees with the index-set convention)
PUBLISHED_ORDER_DIM8 = (
    (2, 3, 4), (1, 3, 5), (1, 2, 6), (2, 6, 7), (3, 4, 7), (1, 6, 8), (2, 4, 8), (3, 5, 8),
)

PUBLISHED_GRAM_DIM8 = (
    (3, 1, 1, 1, 0, 0, 0, 1),
    (1, 3, 1, 0, 1, 1, 0, 0),
    (1, 1, 3, 0, 0, 0, 1, 0),
    (1, 0, 0, 3, 1, 1, 1, 0),
    (0, 1, 0, 1, 3, 0, 1, 1),
    (0, 1, 0, 1, 0, 3, 1, 1),
    (0, 0, 1, 1, 1, 1, 3, 1),
    (1, 0, 0, 0, 1, 1, 1, 3),
)

DIM8_PARTICULAR = tuple(Fraction(a, 11) for a in (1, 1, 3, 2, 2, 2, 0, 2))
DIM8_DIRECTION = (-1, 1, 0, 1, -1, -1, 0, 1)

# The published 10x10 matrix lists (3,6,9) before (2,5,9)
PUBLISHED_ORDER_DIM9 = (
    (2, 3, 4), (1, 3, 5), (1, 2, 6), (2, 6, 7), (3, 4, 7), (1, 6, 8), (2, 4, 8), (3, 5, 8),
    (3, 6, 9), (2, 5, 9),
)

PUBLISHED_GRAM_DIM9 = (
    (3, 1, 1, 1, 0, 0, 0, 1, 1, 1),
    (1, 3, 1, 0, 1, 1, 0, 0, 1, -1),
    (1, 1, 3, 0, 0, 0, 1, 0, -1, 1),
    (1, 0, 0, 3, 1, 1, 1, 0, 1, 1),
    (0, 1, 0, 1, 3, 0, 1, 1, 1, 0),
    (0, 1, 0, 1, 0, 3, 1, 1, 1, 0),
    (0, 0, 1, 1, 1, 1, 3, 1, 0, 1),
    (1, 0, 0, 0, 1, 1, 1, 3, 1, 1),
    (1, 1, -1, 1, 1, 1, 0, 1, 3, 1),
    (1, -1, 1, 1, 0, 0, 1, 1, 1, 3),
)

# Solution vectors in the published row order
DIM9_PARTICULAR = tuple(Fraction(a, 161) for a in (5, 25, 39, 18, 28, 28, 0, 18, 16, 30))
DIM9_DIRECTIONS = (
    (-1, 1, 0, 1, -1, -1, 0, 1, 0, 0),
    (0, 1, -1, 0, 0, 0, 0, 0, -1, 1),
)

# First eight equations of the published 10x10 system, solved on their own
DIM9_REDUCED_PARTICULAR = tuple(Fraction(a, 11) for a in (3, -1, 3, 0, 4, 4, 0, 0, 0, 0))
DIM9_REDUCED_DIRECTIONS = (
    (-1, 1, 0, 1, -1, -1, 0, 1, 0, 0),
    (-5, -2, 6, 0, -3, -3, 0, 0, 11, 0),
    (-5, 9, -5, 0, -3, -3, 0, 0, 0, 11),
)

DIM8_DERIVATION_DIM = 16
# At q = 1 all constants of the dimension-8 family coincide and Der gains one dimension
DIM8_EXCEPTIONAL_DERIVATION_DIMS = {Fraction(1): 17}
DIM9_DERIVATION_DIM = 19

STATED_SCALE_DIM8 = Fraction(5, 11)
STATED_SCALE_DIM9 = Fraction(9, 14)

# Diagonal entry of the lower-right block of the extended Gram matrix as printed
STATED_EXTENSION_DIAGONAL = 3

CERTIFICATE_A_VALUES = (Fraction(1, 2), Fraction(2, 3), Fraction(9, 10))
