"""Schroedinger-picture dynamics on the torus with an exact propagator.

The Hamiltonian operator is diagonalized once (dense Hermitian eigensolver)
and states are propagated as psi(t) = V exp(-i w t/hbar) V^dagger psi(0), so
no integrator error enters any comparison.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .quantizer import OrderingRule
from .torus import GridOperator, GridSpec, GridState, PhaseSpaceGridFunction, quantize_grid

__all__ = [
    "NonHermitianHamiltonian",
    "EvolutionJob",
    "Propagator",
    "Sample",
    "propagate",
    "heisenberg_residual",
    "rule_divergence_report",
    "write_time_series",
    "HERMITIAN_TOL",
]

HERMITIAN_TOL = 1e-10


class NonHermitianHamiltonian(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EvolutionJob:
    spec: GridSpec
    H_classical: PhaseSpaceGridFunction
    rule: OrderingRule
    initial: GridState
    t_final: float
    dt: float
    observables: Sequence[GridOperator] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rule", OrderingRule.parse(self.rule))
        object.__setattr__(self, "observables", tuple(self.observables))
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.t_final >= self.dt:
            raise ValueError("t_final must be >= dt")
        if not self.H_classical.is_real():
            raise NonHermitianHamiltonian("classical Hamiltonian samples must be real")
        for obj in (self.H_classical, self.initial, *self.observables):
            if obj.spec != self.spec:
                raise ValueError("job components use different grid specs")

    def times(self) -> np.ndarray:
        n = int(round(self.t_final / self.dt))
        return np.arange(n + 1) * self.dt


class Propagator:
    """exp(-i H t / hbar) for a fixed Hermitian grid operator H."""

    def __init__(self, H: GridOperator):
        err = H.hermiticity_error()
        if err > HERMITIAN_TOL:
            raise NonHermitianHamiltonian(f"|H - H^dagger|_max = {err:.3e}")
        self.H = H
        self.hbar = H.spec.hbar
        # symmetrize away roundoff before the Hermitian eigensolver
        self.energies, self.vectors = np.linalg.eigh(0.5 * (H.entries + H.entries.conj().T))

    def evolve(self, state: GridState, t: float) -> GridState:
        coeffs = self.vectors.conj().T @ state.amplitudes
        phases = np.exp(-1j * self.energies * t / self.hbar)
        return GridState(state.spec, self.vectors @ (phases * coeffs))


@dataclass(frozen=True)
class Sample:
    t: float
    state: GridState
    norm: float
    expectations: tuple[complex, ...]

    def record(self) -> dict:
        return {
            "t": self.t,
            "norm": self.norm,
            "expectations": [[z.real, z.imag] for z in self.expectations],
        }


def hamiltonian_operator(job: EvolutionJob) -> GridOperator:
    return quantize_grid(job.H_classical, job.rule)


def propagate(job: EvolutionJob) -> list[Sample]:
    U = Propagator(hamiltonian_operator(job))
    out = []
    for t in job.times():
        psi = U.evolve(job.initial, float(t))
        out.append(Sample(float(t), psi, psi.norm(), tuple(psi.expectation(A) for A in job.observables)))
    return out


def heisenberg_residual(job: EvolutionJob, A: GridOperator, t: float, dt_fd: float) -> float:
    """|central difference of <A>(t) - <(i/hbar)[H, A]>(t)|."""
    H = hamiltonian_operator(job)
    U = Propagator(H)
    hbar = job.spec.hbar
    plus = U.evolve(job.initial, t + dt_fd).expectation(A)
    minus = U.evolve(job.initial, t - dt_fd).expectation(A)
    fd = (plus - minus) / (2 * dt_fd)
    rate = GridOperator(job.spec, (1j / hbar) * (H.entries @ A.entries - A.entries @ H.entries))
    return abs(fd - U.evolve(job.initial, t).expectation(rate))


def rule_divergence_report(spec: GridSpec, H: PhaseSpaceGridFunction, initial: GridState, t_final: float,
                           dt: float | None = None) -> dict:
    """Compare Born-Jordan and Weyl Hamiltonians and the trajectories they generate."""
    if not H.is_real():
        raise NonHermitianHamiltonian("classical Hamiltonian samples must be real")
    H_bj = quantize_grid(H, OrderingRule.BORN_JORDAN)
    H_w = quantize_grid(H, OrderingRule.WEYL)
    U_bj, U_w = Propagator(H_bj), Propagator(H_w)
    dt = dt if dt is not None else t_final / 100
    times = np.arange(int(round(t_final / dt)) + 1) * dt
    distances = [
        float(np.linalg.norm(U_bj.evolve(initial, t).amplitudes - U_w.evolve(initial, t).amplitudes))
        for t in times
    ]
    diff = H_bj - H_w
    return {
        "hamiltonian_difference_max": diff.max_abs(),
        "hamiltonian_difference_norm": diff.norm(),
        "trajectory_distance_max": max(distances),
        "trajectory_distance_final": distances[-1],
        "times": [float(t) for t in times],
        "distances": distances,
    }


def write_time_series(samples: Sequence[Sample], fh: IO[str]) -> None:
    """JSON lines, one record per sample."""
    for s in samples:
        fh.write(json.dumps(s.record()) + "\n")
