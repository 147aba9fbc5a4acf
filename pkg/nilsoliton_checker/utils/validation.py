"""Input validation for command-line and file inputs"""

import re
from fractions import Fraction
from typing import List, Optional, Tuple, Union

RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")

SUPPORTED_BASE_DIMENSIONS = (8, 9)
MAX_EXTENSION_PAIRS = 50


class ValidationError(ValueError):
    """Raised when validation fails"""
    pass


def parse_rational(text: Union[str, int, Fraction], name: str = "value") -> Fraction:
    """
    Parse an exact rational from "p", "-p" or "p/q" notation

    Args:
        text: Rational text, integer or Fraction
        name: Field name used in error messages

    Returns:
        Fraction in lowest terms
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValidationError(f"{name} must be a rational number, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValidationError(f"{name} must be a rational number, got {text!r}")

    stripped = text.strip()
    if not RATIONAL_PATTERN.match(stripped):
        raise ValidationError(f"{name} must look like 'p' or 'p/q', got {text!r}")
    if "/" in stripped and int(stripped.split("/")[1]) == 0:
        raise ValidationError(f"{name} has a zero denominator: {text!r}")
    return Fraction(stripped)


def parse_positive_rational(text: Union[str, int, Fraction], name: str = "value") -> Fraction:
    """Parse a rational and require it to be strictly positive"""
    value = parse_rational(text, name)
    if value <= 0:
        raise ValidationError(f"{name} must be positive, got {value}")
    return value


def validate_family(m: int, k: int) -> Tuple[bool, Optional[str]]:
    """
    Validate family parameters

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(m, int) or m not in SUPPORTED_BASE_DIMENSIONS:
        return False, f"m must be one of {SUPPORTED_BASE_DIMENSIONS}, got {m!r}"
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        return False, f"k must be a nonnegative integer, got {k!r}"
    if k > MAX_EXTENSION_PAIRS:
        return False, f"k must be at most {MAX_EXTENSION_PAIRS}, got {k}"
    return True, None


def validate_family_params(m: int, k: int, q: Union[str, int, Fraction]) -> Fraction:
    """Validate (m, k, q) and return q as a Fraction, raising ValidationError on bad input"""
    is_valid, error = validate_family(m, k)
    if not is_valid:
        raise ValidationError(error)
    return parse_positive_rational(q, "q")


def validate_max_k(max_k: int) -> bool:
    """Validate the largest extension size used by the reproduction suite"""
    return isinstance(max_k, int) and not isinstance(max_k, bool) and 0 <= max_k <= MAX_EXTENSION_PAIRS


def validate_metric_text(text: str, dim: int) -> List[Fraction]:
    """
    Parse a diagonal metric given as comma or space separated rationals

    Args:
        text: e.g. "1,1,4" or "1 1 1/2"
        dim: Expected number of entries

    Returns:
        List of positive Fractions
    """
    parts = [part for part in re.split(r"[,\s]+", text.strip()) if part]
    if len(parts) != dim:
        raise ValidationError(f"metric must have {dim} entries, got {len(parts)}")
    return [parse_positive_rational(part, f"metric entry {index}") for index, part in enumerate(parts, start=1)]
