"""JSON documents for set pair systems and edge partitions.

Field order is fixed and arrays are sorted so that files diff cleanly. Each
pair or part is written on its own line.
"""
from __future__ import annotations

import json
from pathlib import Path

from .core import SetPairSystem
from .duality import KINDS, EdgePartition, label, parse_label

FORMAT_VERSION = 1


class DocumentError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=isinstance(obj, dict))


def sps_to_text(sps: SetPairSystem, metadata: dict | None = None) -> str:
    lines = [
        "{",
        f'  "format_version": {FORMAT_VERSION},',
        f'  "ground_set_size": {sps.ground_set_size},',
    ]
    pairs = [_dump({"A": sorted(a), "B": sorted(b)}) for a, b in sps.pairs]
    if pairs:
        lines.append('  "pairs": [')
        lines.extend(f"    {p}," for p in pairs[:-1])
        lines.append(f"    {pairs[-1]}")
        lines.append("  ]" + ("," if metadata else ""))
    else:
        lines.append('  "pairs": []' + ("," if metadata else ""))
    if metadata:
        lines.append(f'  "metadata": {_dump(metadata)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int_list(value, what: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise DocumentError(f"{what} must be an array of integers")
    if value != sorted(set(value)):
        raise DocumentError(f"{what} must be sorted ascending without duplicates")
    return value


def sps_from_obj(obj) -> tuple:
    """``(SetPairSystem, metadata)`` from a parsed document."""
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    if obj.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {obj.get('format_version')!r}")
    n = obj.get("ground_set_size")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError("ground_set_size must be a non-negative integer")
    raw = obj.get("pairs")
    if not isinstance(raw, list):
        raise DocumentError("pairs must be an array")
    pairs = []
    for i, p in enumerate(raw):
        if not isinstance(p, dict) or set(p) != {"A", "B"}:
            raise DocumentError(f"pair {i} must be an object with exactly the keys A and B")
        pairs.append((_int_list(p["A"], f"pair {i} A"), _int_list(p["B"], f"pair {i} B")))
    try:
        sps = SetPairSystem(n, tuple(pairs))
    except ValueError as e:
        raise DocumentError(str(e)) from None
    return sps, obj.get("metadata") or {}


def sps_from_text(text: str) -> tuple:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from None
    return sps_from_obj(obj)


def read_sps(path) -> tuple:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}") from None
    return sps_from_text(text)


def write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _part_tokens(m: int, part) -> list:
    return [label(m, v) for v in sorted(part)]


def partition_to_text(p: EdgePartition) -> str:
    lines = [
        "{",
        f'  "format_version": {FORMAT_VERSION},',
        f'  "m": {p.m},',
        f'  "kind": {json.dumps(p.kind)},',
    ]
    parts = [_dump(_part_tokens(p.m, part)) for part in p.parts]
    if parts:
        lines.append('  "parts": [')
        lines.extend(f"    {x}," for x in parts[:-1])
        lines.append(f"    {parts[-1]}")
        lines.append("  ],")
    else:
        lines.append('  "parts": [],')
    lines.append(f'  "width": {p.width}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def partition_from_text(text: str) -> EdgePartition:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict) or obj.get("format_version") != FORMAT_VERSION:
        raise DocumentError("not a version-1 partition document")
    m, kind, parts, width = obj.get("m"), obj.get("kind"), obj.get("parts"), obj.get("width")
    if not isinstance(m, int) or m < 0 or kind not in KINDS or not isinstance(parts, list) or not isinstance(width, int):
        raise DocumentError("partition document needs integer m, kind, parts array and integer width")
    try:
        decoded = [frozenset(parse_label(m, t) for t in part) for part in parts]
    except (ValueError, TypeError, IndexError) as e:
        raise DocumentError(f"bad part: {e}") from None
    return EdgePartition(m, kind, tuple(decoded), width)


def read_partition(path) -> EdgePartition:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}") from None
    return partition_from_text(text)
