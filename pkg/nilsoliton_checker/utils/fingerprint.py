"""Deterministic identifiers for Lie algebras"""

import hashlib


def normalize_algebra_text(text: str) -> str:
    """
    Normalize structure-constant text for consistent identifiers

    Comments, blank lines and repeated whitespace are dropped so that two
    files describing the same canonical algebra hash identically.

    Args:
        text: Canonical structure-constant text

    Returns:
        Normalized text, one entry per line
    """
    lines = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if line:
            lines.append(" ".join(line.split()))
    return "\n".join(lines) + "\n"


def generate_algebra_id(canonical_text: str) -> str:
    """
    Generate a deterministic algebra ID

    Args:
        canonical_text: Output of serialize_algebra

    Returns:
        First 16 characters of SHA-256 hash of the normalized text
    """
    normalized = normalize_algebra_text(canonical_text)
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()[:16]
