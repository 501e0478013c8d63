#!/usr/bin/env python3
"""
Germ I/O - Germ File Loading and Canonical Serialization
JSON germ documents (objects, elements, product triples) to GermTable and back
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from ..core.germ_core import ElementSpec, GermSpec, GermTable, build_germ
from .error_handler import MalformedSpec
from .logger import Logger


def _expect_list(document: Dict[str, Any], key: str) -> List[Any]:
    value = document.get(key)
    if not isinstance(value, list):
        raise MalformedSpec(f"'{key}' must be a list", (key,))
    return value


def _expect_name(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise MalformedSpec(f"{where} must be a non-empty string", (repr(value),))
    return value


def spec_from_document(document: Any) -> GermSpec:
    """
    Turn a decoded JSON document into a GermSpec

    Raises:
        MalformedSpec: wrong shapes, unknown keys or non-string names
    """
    if not isinstance(document, dict):
        raise MalformedSpec("germ document must be a JSON object")
    unknown = set(document) - {"objects", "elements", "products"}
    if unknown:
        raise MalformedSpec(f"unknown keys: {', '.join(sorted(unknown))}", tuple(sorted(unknown)))

    objects = [_expect_name(o, "object name") for o in _expect_list(document, "objects")]

    elements = []
    for entry in _expect_list(document, "elements"):
        if not isinstance(entry, dict):
            raise MalformedSpec("each element must be an object", (repr(entry),))
        extra = set(entry) - {"name", "source", "target", "identity"}
        if extra:
            raise MalformedSpec(f"unknown element keys: {', '.join(sorted(extra))}", tuple(sorted(extra)))
        identity = entry.get("identity", False)
        if not isinstance(identity, bool):
            raise MalformedSpec("'identity' must be true or false", (repr(identity),))
        elements.append(ElementSpec(
            name=_expect_name(entry.get("name"), "element name"),
            source=_expect_name(entry.get("source"), "element source"),
            target=_expect_name(entry.get("target"), "element target"),
            identity=identity,
        ))

    products = []
    for triple in document.get("products", []):
        if not isinstance(triple, list) or len(triple) != 3:
            raise MalformedSpec("each product must be a [a, b, c] triple", (repr(triple),))
        products.append(tuple(_expect_name(name, "product entry") for name in triple))

    return GermSpec(objects, elements, products)


def parse_germ_document(text: str, validate: bool = True) -> GermTable:
    """
    Parse a germ document

    Args:
        text: JSON text
        validate: run the associativity check while building

    Returns:
        GermTable

    Raises:
        MalformedSpec: invalid JSON or invalid structure
        GermAxiomViolation: identity laws or associativity fail
    """
    try:
        document = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise MalformedSpec(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    return build_germ(spec_from_document(document), validate=validate)


def _reject_float(token: str) -> Any:
    raise MalformedSpec(f"floats are not allowed in germ files: {token}", (token,))


def load_germ_file(path: Union[str, Path], validate: bool = True) -> GermTable:
    """Read and parse a germ file (UTF-8)"""
    logger = Logger("GermIO")
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise MalformedSpec(f"cannot read germ file {file_path}: {e}") from None
    germ = parse_germ_document(text, validate=validate)
    logger.debug(f"Loaded {file_path.name}: {len(germ.objects)} objects, {len(germ)} elements")
    return germ


def dump_germ_document(germ: GermTable) -> str:
    """
    Canonical serialization

    One element or product per line, products ordered by element order,
    products with an identity factor omitted. Loading and dumping a file
    written in this layout reproduces it byte for byte.
    """
    def encode(value: Any) -> str:
        return json.dumps(value, ensure_ascii=False)

    element_lines = []
    for element in germ.elements:
        entry: Dict[str, Any] = {
            "name": element.label,
            "source": germ.object_name(element.source),
            "target": germ.object_name(element.target),
        }
        if element.is_identity:
            entry["identity"] = True
        element_lines.append("    " + encode(entry))

    product_lines = []
    for (a, b), c in sorted(germ.product.items()):
        if germ.is_identity(a) or germ.is_identity(b):
            continue
        product_lines.append("    " + encode([germ.label(a), germ.label(b), germ.label(c)]))

    def block(lines: List[str]) -> str:
        return "[\n" + ",\n".join(lines) + "\n  ]" if lines else "[]"

    return (
        "{\n"
        f'  "objects": {encode(list(germ.objects))},\n'
        f'  "elements": {block(element_lines)},\n'
        f'  "products": {block(product_lines)}\n'
        "}\n"
    )


def save_germ_file(germ: GermTable, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_germ_document(germ), encoding="utf-8")
