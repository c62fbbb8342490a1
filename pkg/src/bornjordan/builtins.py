"""Named grid functions, operators and states, so runs need no input files.

Function names (sums allowed with ``+``, e.g. ``harper+mixed:8,8``):
``harper``, ``mixed:<m>,<s>``, ``cosq:<m>``, ``well``, ``one``.
Operator names: ``gaussian-excited``, ``displacement:<m>,<s>``,
``periodic-position:<m>`` (E(m,0) + E(-m,0)).
State names: ``gaussian`` (centred packet), ``gaussian:<q0>,<p0>``,
``harper-packet`` (packet at (L/4, P/4)), ``excited``.
"""

from __future__ import annotations

import numpy as np

from .torus import (
    GridOperator,
    GridSpec,
    GridState,
    PhaseSpaceGridFunction,
    constant_function,
    cos_q,
    displacement,
    excited_state,
    gaussian_excited_projector,
    gaussian_state,
    harper,
    mixed_component,
)

__all__ = ["grid_function", "grid_operator", "grid_state", "UnknownBuiltin"]


class UnknownBuiltin(KeyError):
    pass


def _ints(arg: str, count: int, name: str) -> list[int]:
    try:
        values = [int(x) for x in arg.split(",")]
    except ValueError:
        raise UnknownBuiltin(f"{name}: expected {count} integers, got {arg!r}") from None
    if len(values) != count:
        raise UnknownBuiltin(f"{name}: expected {count} integers, got {arg!r}")
    return values


def _split(name: str) -> tuple[str, str | None]:
    head, sep, arg = name.partition(":")
    return head.strip(), (arg.strip() or None) if sep else None


def grid_function(spec: GridSpec, name: str) -> PhaseSpaceGridFunction:
    parts = [p for p in name.split("+") if p.strip()]
    if not parts:
        raise UnknownBuiltin(f"empty function name {name!r}")
    total = None
    for part in parts:
        f = _one_function(spec, part.strip())
        total = f if total is None else total + f
    return total


def _one_function(spec: GridSpec, name: str) -> PhaseSpaceGridFunction:
    head, arg = _split(name)
    if head == "harper" and arg is None:
        return harper(spec)
    if head == "mixed" and arg is not None:
        m, s = _ints(arg, 2, head)
        return mixed_component(spec, m, s)
    if head == "cosq":
        (m,) = _ints(arg, 1, head) if arg else (1,)
        return cos_q(spec, m)
    if head == "well" and arg is None:
        return PhaseSpaceGridFunction.from_callable(
            spec, lambda q, p: np.exp(np.cos(2 * np.pi * q / spec.L)) + 0 * p)
    if head == "one" and arg is None:
        return constant_function(spec)
    raise UnknownBuiltin(f"unknown grid function {name!r}")


def grid_operator(spec: GridSpec, name: str) -> GridOperator:
    head, arg = _split(name)
    if head == "gaussian-excited" and arg is None:
        return gaussian_excited_projector(spec)
    if head == "displacement" and arg is not None:
        m, s = _ints(arg, 2, head)
        return displacement(spec, m, s)
    if head == "periodic-position":
        (m,) = _ints(arg, 1, head) if arg else (1,)
        return displacement(spec, m, 0) + displacement(spec, -m, 0)
    raise UnknownBuiltin(f"unknown grid operator {name!r}")


def grid_state(spec: GridSpec, name: str) -> GridState:
    head, arg = _split(name)
    if head == "gaussian":
        if arg is None:
            return gaussian_state(spec)
        try:
            q0, p0 = (float(x) for x in arg.split(","))
        except ValueError:
            raise UnknownBuiltin(f"gaussian: expected q0,p0, got {arg!r}") from None
        return gaussian_state(spec, q0, p0)
    if head == "harper-packet" and arg is None:
        return gaussian_state(spec, spec.L / 4, spec.P / 4)
    if head == "excited" and arg is None:
        return excited_state(spec)
    raise UnknownBuiltin(f"unknown grid state {name!r}")
