"""
Polynomial Documents
Canonical JSON interchange format for odd Chebyshev polynomials

Schema:
    {
      "basis": "odd-chebyshev",
      "a": <lower edge>,
      "eps_target": <target or null>,
      "tau": <subnormalization or null>,
      "label": "remez" | "mang" | "sunderhauf" | "spectral" | "spectral-corrected" | "external",
      "degree": <2 * len(coeffs) - 1, optional on input>,
      "coeffs": [c_0, c_1, ...],
      "meta": {...optional provenance...}
    }
"""

import logging
from typing import Any, Dict

from chebpoly.polynomial import OddChebyshevPoly
from utils.errors import DocumentParseError, DomainError
from utils.helpers import (dump_json_text, load_json_file, parse_json_text,
                           require_float, require_keys, save_json_file)

logger = logging.getLogger(__name__)

BASIS = "odd-chebyshev"
REQUIRED_KEYS = ("basis", "a", "coeffs")


def to_document(p: OddChebyshevPoly) -> Dict[str, Any]:
    """
    Convert a polynomial to its document dictionary.

    Args:
        p (OddChebyshevPoly): Polynomial

    Returns:
        dict: Document contents
    """
    return {
        "basis": BASIS,
        "a": float(p.a),
        "eps_target": None if p.eps_target is None else float(p.eps_target),
        "tau": None if p.tau is None else float(p.tau),
        "label": p.label,
        "degree": p.degree,
        "coeffs": [float(c) for c in p.coeffs],
        "meta": dict(p.meta),
    }


def from_document(data: Dict[str, Any], source: str = "<document>") -> OddChebyshevPoly:
    """
    Build a polynomial from a parsed document.

    Documents without a label are treated as externally produced.

    Args:
        data (dict): Parsed document
        source (str): Name used in error messages

    Returns:
        OddChebyshevPoly: The polynomial
    """
    require_keys(data, REQUIRED_KEYS, source)
    if data["basis"] != BASIS:
        raise DocumentParseError(f"document {source} has basis '{data['basis']}', expected '{BASIS}'",
                                 position="basis")

    coeffs = data["coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise DocumentParseError(f"document {source}: 'coeffs' must be a non-empty array", position="coeffs")
    for i, c in enumerate(coeffs):
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise DocumentParseError(f"document {source}: coefficient {i} is not a number",
                                     position=f"coeffs[{i}]")

    optional = {}
    for key in ("eps_target", "tau"):
        if data.get(key) is not None:
            optional[key] = require_float(data, key, source)

    degree = data.get("degree")
    if degree is not None and degree != 2 * len(coeffs) - 1:
        raise DocumentParseError(
            f"document {source}: degree {degree} disagrees with {len(coeffs)} coefficients",
            position="degree",
        )

    meta = data.get("meta") or {}
    if not isinstance(meta, dict):
        raise DocumentParseError(f"document {source}: 'meta' must be an object", position="meta")

    try:
        return OddChebyshevPoly(
            coeffs=[float(c) for c in coeffs],
            a=require_float(data, "a", source),
            label=data.get("label") or "external",
            meta=meta,
            **optional,
        )
    except DomainError as e:
        raise DocumentParseError(f"document {source}: {e}", position="root") from e


def serialize(p: OddChebyshevPoly) -> str:
    return dump_json_text(to_document(p))


def deserialize(text: str, source: str = "<document>") -> OddChebyshevPoly:
    """
    Parse polynomial document text.

    Args:
        text (str): Document text
        source (str): Name used in error messages

    Returns:
        OddChebyshevPoly: The polynomial

    Raises:
        DocumentParseError: With the position of the problem
    """
    return from_document(parse_json_text(text, source), source)


def save_polynomial(p: OddChebyshevPoly, file_path: str) -> str:
    return save_json_file(to_document(p), file_path)


def load_polynomial(file_path: str) -> OddChebyshevPoly:
    p = from_document(load_json_file(file_path), source=str(file_path))
    logger.info(f"Loaded {p.label} polynomial of degree {p.degree} from {file_path}")
    return p
