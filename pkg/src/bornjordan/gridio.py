"""JSON files for grid operators, states and phase-space functions.

Schema: ``{"kind": "operator"|"state"|"psfunction", "N", "L", "hbar",
"data": [[re, im], ...]}`` with ``data`` in row-major order. Floats are
written with ``repr``, which round-trips every double bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .torus import GridOperator, GridSpec, GridState, PhaseSpaceGridFunction

__all__ = ["FormatError", "to_json", "from_json", "save", "load"]

_KINDS = {GridOperator: "operator", GridState: "state", PhaseSpaceGridFunction: "psfunction"}


class FormatError(ValueError):
    pass


def _array(obj) -> np.ndarray:
    if isinstance(obj, GridOperator):
        return obj.entries
    if isinstance(obj, GridState):
        return obj.amplitudes
    return obj.samples


def to_dict(obj) -> dict:
    kind = _KINDS[type(obj)]
    flat = _array(obj).reshape(-1)
    return {
        "kind": kind,
        **obj.spec.to_dict(),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def to_json(obj) -> str:
    return json.dumps(to_dict(obj))


def from_dict(d: dict):
    try:
        kind = d["kind"]
        spec = GridSpec(int(d["N"]), float(d["L"]), float(d["hbar"]))
        data = np.array([complex(float(re), float(im)) for re, im in d["data"]], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed grid file: {exc}") from None
    N = spec.N
    try:
        if kind == "operator":
            return GridOperator(spec, data.reshape(N, N))
        if kind == "psfunction":
            return PhaseSpaceGridFunction(spec, data.reshape(N, N))
        if kind == "state":
            return GridState(spec, data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"unknown kind {kind!r}")


def from_json(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise FormatError("grid file must hold a JSON object")
    return from_dict(d)


def save(obj, path: str | Path) -> None:
    Path(path).write_text(to_json(obj) + "\n")


def load(path: str | Path, kind: str | None = None):
    obj = from_json(Path(path).read_text())
    if kind is not None and _KINDS[type(obj)] != kind:
        raise FormatError(f"{path}: expected kind {kind!r}, found {_KINDS[type(obj)]!r}")
    return obj
