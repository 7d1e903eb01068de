"""
Helper utility functions for documents and result files
"""

import json
import os
import logging
from pathlib import Path
from typing import Any, Dict, Iterable

import pandas as pd

from utils.errors import DocumentParseError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def parse_json_text(text: str, source: str = "<document>") -> Dict[str, Any]:
    """
    Parse a JSON document, reporting the failure position.

    Args:
        text (str): Raw document text
        source (str): Name used in error messages

    Returns:
        dict: Parsed document

    Raises:
        DocumentParseError: If the text is not a JSON object
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentParseError(
            f"malformed document {source}: {e.msg}",
            position=f"line {e.lineno}, column {e.colno}",
        ) from e

    if not isinstance(data, dict):
        raise DocumentParseError(f"document {source} is not a key-value object", position="root")
    return data


def load_json_file(file_path: str) -> Dict[str, Any]:
    """
    Load a JSON document from disk.

    Args:
        file_path (str): Path to the document

    Returns:
        dict: Parsed document
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Error reading document {file_path}: {e}")
        raise
    return parse_json_text(text, source=str(file_path))


def dump_json_text(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def save_json_file(data: Dict[str, Any], file_path: str) -> str:
    """
    Write a JSON document, creating parent directories.

    Args:
        data (dict): Document contents
        file_path (str): Destination path

    Returns:
        str: The path written
    """
    Path(file_path).parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(dump_json_text(data))
    logger.info(f"Wrote document {file_path}")
    return str(file_path)


def require_keys(data: Dict[str, Any], keys: Iterable[str], source: str = "<document>") -> None:
    """Raise DocumentParseError naming the first missing key."""
    for key in keys:
        if key not in data:
            raise DocumentParseError(f"document {source} is missing required key '{key}'", position=key)


def require_float(data: Dict[str, Any], key: str, source: str = "<document>") -> float:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentParseError(f"document {source}: '{key}' must be a number", position=key)
    return float(value)


def write_csv(df: pd.DataFrame, file_path: str) -> str:
    """
    Write a result table with the toolkit's storage precision.

    Args:
        df (pd.DataFrame): Table to write
        file_path (str): Destination path

    Returns:
        str: The path written
    """
    Path(file_path).parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(file_path, index=False, float_format=CSV_FLOAT_FORMAT)
    logger.info(f"Wrote {len(df)} rows to {file_path}")
    return str(file_path)


def safe_divide(numerator: float, denominator: float, default: float = float('nan')) -> float:
    """
    Divide two numbers, returning default if the denominator is zero.

    Args:
        numerator (float): Numerator
        denominator (float): Denominator
        default (float): Value returned on division by zero

    Returns:
        float: Result of division or default
    """
    if denominator == 0:
        return default
    return numerator / denominator


def resolve_output_path(output_dir: str, file_name: str) -> str:
    return os.path.join(output_dir, file_name)
