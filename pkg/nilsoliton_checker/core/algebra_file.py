"""
Plain-text structure-constant files

    # comment
    dim 8
    2 3 4 1
    1 3 5 2/3

Header `dim <n>`, then one `<i> <j> <k> <p>[/<q>]` line per nonzero c_ij^k.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from nilsoliton_checker.core.liecore import JacobiError, LieAlgebra, Triple, jacobi_check
from nilsoliton_checker.utils.validation import RATIONAL_PATTERN, ValidationError

logger = logging.getLogger("nilsoliton_checker")

HEADER_PATTERN = re.compile(r"^dim\s+(\d+)$")
INDEX_PATTERN = re.compile(r"^\d+$")


class AlgebraFileError(ValidationError):
    """Syntax or content error, located by 1-based line and column"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(f"{location}{message}")


@dataclass
class AlgebraFile:
    dim: int
    entries: List[Tuple[int, int, int, Fraction]] = field(default_factory=list)


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns"""
    return [(match.group(0), match.start() + 1) for match in re.finditer(r"\S+", line)]


def read_algebra_file(text: str) -> AlgebraFile:
    """Parse the file syntax without building the algebra"""
    parsed: Optional[AlgebraFile] = None
    seen: Dict[Triple, int] = {}

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        tokens = _tokens(content)

        if parsed is None:
            match = HEADER_PATTERN.match(content.strip())
            if not match:
                raise AlgebraFileError("expected header 'dim <n>'", line_number, tokens[0][1])
            dim = int(match.group(1))
            if dim < 1:
                raise AlgebraFileError("dimension must be positive", line_number, tokens[1][1])
            parsed = AlgebraFile(dim)
            continue

        if len(tokens) != 4:
            column = tokens[4][1] if len(tokens) > 4 else len(content) + 1
            raise AlgebraFileError(f"expected 4 fields 'i j k value', found {len(tokens)}", line_number, column)

        indices = []
        for token, column in tokens[:3]:
            if not INDEX_PATTERN.match(token):
                raise AlgebraFileError(f"index must be a positive integer, got {token!r}", line_number, column)
            value = int(token)
            if not 1 <= value <= parsed.dim:
                raise AlgebraFileError(f"index {value} outside 1..{parsed.dim}", line_number, column)
            indices.append(value)
        i, j, k = indices
        if i >= j:
            raise AlgebraFileError(f"first two indices must satisfy i < j, got {i} {j}", line_number, tokens[0][1])

        value_token, value_column = tokens[3]
        if not RATIONAL_PATTERN.match(value_token):
            raise AlgebraFileError(f"value must be 'p' or 'p/q', got {value_token!r}", line_number, value_column)
        if "/" in value_token and int(value_token.split("/")[1]) == 0:
            raise AlgebraFileError("zero denominator", line_number, value_column)
        value = Fraction(value_token)
        if value == 0:
            raise AlgebraFileError("structure constants must be nonzero", line_number, value_column)

        if (i, j, k) in seen:
            raise AlgebraFileError(
                f"duplicate triple ({i},{j},{k}), first given on line {seen[(i, j, k)]}", line_number, tokens[0][1]
            )
        seen[(i, j, k)] = line_number
        parsed.entries.append((i, j, k, value))

    if parsed is None:
        raise AlgebraFileError("missing header 'dim <n>'")
    return parsed


def parse_algebra(text: str) -> LieAlgebra:
    """Parse and validate a structure-constant file, reporting Jacobi defects by triple"""
    parsed = read_algebra_file(text)
    brackets = {(i, j, k): value for i, j, k, value in parsed.entries}
    candidate = LieAlgebra.unchecked(parsed.dim, brackets)
    defects = jacobi_check(candidate)
    if defects:
        logger.debug(f"Parsed algebra violates the Jacobi identity at {len(defects)} triple(s)")
        raise JacobiError(defects)
    return candidate


def serialize_algebra(g: LieAlgebra) -> str:
    """Canonical text: header and entries in (k, i, j) order, LF line endings"""
    lines = [f"dim {g.dim}"]
    for (i, j, k), value in g.brackets.items():
        lines.append(f"{i} {j} {k} {value}")
    return "\n".join(lines) + "\n"
