"""Utility functions for file operations"""

import logging
import os
from typing import Optional

from nilsoliton_checker.utils.validation import ValidationError

logger = logging.getLogger("nilsoliton_checker")


def safe_write_file(file_path: str, content: str, context: str = "unknown") -> bool:
    """
    Write a UTF-8 text file with LF line endings, creating parent directories.

    Args:
        file_path: Destination path
        content: Text to write
        context: Context string for logging (e.g., command name)

    Returns:
        True on success, False on error
    """
    try:
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        logger.debug(f"Wrote {file_path} in {context}")
        return True
    except (OSError, PermissionError) as e:
        logger.error(f"Could not write {file_path} in {context}: {e}")
        return False


def read_text_file(file_path: Optional[str]) -> str:
    """Read a UTF-8 text file, raising OSError with the path on failure"""
    if not file_path:
        raise OSError("no file path given")
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise ValidationError(f"{file_path} is not UTF-8 text: byte {e.start} cannot be decoded") from e
