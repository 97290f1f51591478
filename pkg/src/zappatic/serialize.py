"""Arrangement files: a stable JSON format for plane configurations.

Each plane is a 3 x (r+1) matrix of rationals stored as [numerator,
denominator] pairs in lowest terms; integers that do not fit in a signed
64-bit word are written as decimal strings.  Field order is fixed so equal
inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from zappatic.arrangement import Arrangement
from zappatic.errors import RangeError
from zappatic.projective import Subspace

_I64_MIN = -(2**63)
_I64_MAX = 2**63 - 1


def _encode_int(x: int):
    return x if _I64_MIN <= x <= _I64_MAX else str(x)


def _decode_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise RangeError(f"bad integer entry {x!r}")
    return int(x)


def arrangement_to_dict(arr: Arrangement, metadata: dict | None = None) -> dict:
    planes = []
    for p in arr.planes:
        rows = []
        for row in p.subspace.basis:
            rows.append([[_encode_int(x), 1] for x in row])
        planes.append(rows)
    out = {"ambient_dim": arr.ambient_dim, "planes": planes}
    if metadata:
        out["metadata"] = metadata
    return out


def arrangement_from_dict(data: dict) -> tuple[Arrangement, dict]:
    try:
        n = data["ambient_dim"]
        raw_planes = data["planes"]
    except (KeyError, TypeError) as exc:
        raise RangeError(f"malformed arrangement file: missing {exc}")
    if not isinstance(n, int) or n < 2:
        raise RangeError("ambient_dim must be an integer >= 2")
    subs = []
    for rows in raw_planes:
        basis = []
        for row in rows:
            entries = []
            for pair in row:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise RangeError("rational entries must be [num, den] pairs")
                num = _decode_int(pair[0])
                den = _decode_int(pair[1])
                if den <= 0:
                    raise RangeError("denominators must be positive")
                entries.append(Fraction(num, den))
            basis.append(entries)
        subs.append(Subspace(n, basis))
    return Arrangement(n, subs), data.get("metadata", {})


def dumps(arr: Arrangement, metadata: dict | None = None) -> str:
    return json.dumps(arrangement_to_dict(arr, metadata), sort_keys=True, indent=1) + "\n"


def write_arrangement(path, arr: Arrangement, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(arr, metadata))


def read_arrangement(path) -> tuple[Arrangement, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RangeError(f"malformed arrangement file: {exc}")
    return arrangement_from_dict(data)
