"""Exit criteria for the whole engine, runnable from pytest and ``bjq selftest``."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

import numpy as np

from .classical import ClassicalPoly
from .dynamics import EvolutionJob, Propagator, heisenberg_residual, propagate, rule_divergence_report
from .exact import GaussianRational, HBarPolynomial
from .operators import OperatorPoly, op_mul
from .parser import parse, print_canonical
from .quantizer import (
    OrderingRule,
    groenewold_discrepancy,
    heisenberg_covariance_residual,
    quantize,
    strengthened_rule_residual,
)
from .sampling import random_p_only, random_poly, random_q_only, seed_from_env
from .torus import (
    GridSpec,
    PhaseSpaceGridFunction,
    census_count,
    displacement,
    fourier_quantize,
    gaussian_excited_projector,
    gaussian_state,
    harper,
    matrix_element_check,
    mixed_component,
    nullspace_census,
    quantize_grid,
    sinc,
    wigner_inverse,
)
from .builtins import grid_function

BJ, WEYL = OrderingRule.BORN_JORDAN, OrderingRule.WEYL

HANDWRITTEN_CORPUS = [
    "q^2*p^2",
    "1/2*q*p + 1/2*p*q",
    "3*q1*p2 - hbar^2/3",
    "-2/3*hbar^2",
    "0",
    "1",
    "-i",
    "hbar",
    "q",
    "p^7",
    "(q + p)^3",
    "q^2*p - 1/3*hbar^2",
    "(1/2+1/3*i)*q1*q2^2*p2",
    "-(q - 2*p)*(q + 2*p)",
    "i*hbar*q*p - i*hbar*p*q",
    "5/7*q3*p1^2 + q2",
    "(hbar + 1)^2*q",
    "  q ^ 2 *  p  -  3 / 4  ",
    "q*q*q*p*p/6",
    "-(1/2-3/5*i)*hbar^2*p^4 + 2*i*q^3",
]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    metrics: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail}"


def _hbar_sq_scalar(op: OperatorPoly) -> GaussianRational | None:
    """Coefficient g if ``op == g hbar^2 * 1``, else None."""
    if not op.is_scalar():
        return None
    c = op.scalar_part()
    if set(c.terms) != {2}:
        return None
    return c.coefficient(2)


def criterion_groenewold() -> CriterionResult:
    d = groenewold_discrepancy()
    g = _hbar_sq_scalar(d)
    ok = g is not None and g.is_real() and abs(g.re) == Fraction(1, 3)
    return CriterionResult(1, "Groenewold obstruction", ok, f"discrepancy = {print_canonical(d)}")


def criterion_strengthened_bj(seed: int) -> CriterionResult:
    rng = random.Random(seed)
    start = time.perf_counter()
    failures = 0
    cases = [(1, 100), (2, 25)]
    for dof, count in cases:
        for _ in range(count):
            quad = (random_q_only(rng, dof), random_p_only(rng, dof), random_q_only(rng, dof), random_p_only(rng, dof))
            if strengthened_rule_residual(*quad, BJ):
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 10.0
    return CriterionResult(2, "strengthened rule holds for Born-Jordan", ok,
                           f"{failures} nonzero residuals in 125 quadruples, {elapsed:.2f} s",
                           {"elapsed_s": elapsed, "failures": failures})


def criterion_weyl_violation() -> CriterionResult:
    q, p, z = ClassicalPoly.q(), ClassicalPoly.p(), ClassicalPoly.zero()
    r = strengthened_rule_residual(q**3, z, z, p**3, WEYL)
    g = _hbar_sq_scalar(r)
    ok = g is not None and g.is_real() and abs(g.re) == Fraction(3, 2)
    return CriterionResult(3, "Weyl violates the strengthened rule", ok, f"residual = {print_canonical(r)}")


def criterion_ordering_gap() -> CriterionResult:
    F = parse("q^2*p^2")
    gap = quantize(F, WEYL) - quantize(F, BJ)
    expected = OperatorPoly.constant(HBarPolynomial({2: GaussianRational(Fraction(1, 6))}))
    return CriterionResult(4, "Weyl minus Born-Jordan on q^2 p^2", gap == expected, f"gap = {print_canonical(gap)}")


def criterion_covariance(seed: int) -> CriterionResult:
    rng = random.Random(seed + 1)
    failures = 0
    for _ in range(100):
        F = random_poly(rng, 1, 6)
        for rule in (BJ, WEYL):
            first, second = heisenberg_covariance_residual(F, rule)
            if first or second:
                failures += 1
    return CriterionResult(5, "Heisenberg covariance for both rules", failures == 0,
                           f"{failures} nonzero residual pairs in 200 evaluations")


def _word(letters) -> OperatorPoly:
    out = OperatorPoly.constant(1)
    for ch in letters:
        out = op_mul(out, OperatorPoly.q() if ch == "q" else OperatorPoly.p())
    return out


def _power(which: str, n: int) -> OperatorPoly:
    return OperatorPoly.monomial(n, 0) if which == "q" else OperatorPoly.monomial(0, n)


def bj_q_split(r: int, s: int) -> OperatorPoly:
    total = OperatorPoly.zero()
    for j in range(r + 1):
        total = total + op_mul(op_mul(_power("q", j), _power("p", s)), _power("q", r - j))
    return total.scale(GaussianRational(Fraction(1, r + 1)))


def bj_p_split(r: int, s: int) -> OperatorPoly:
    total = OperatorPoly.zero()
    for j in range(s + 1):
        total = total + op_mul(op_mul(_power("p", j), _power("q", r)), _power("p", s - j))
    return total.scale(GaussianRational(Fraction(1, s + 1)))


def weyl_all_orderings(r: int, s: int) -> OperatorPoly:
    words = set(permutations("q" * r + "p" * s))
    total = OperatorPoly.zero()
    for w in words:
        total = total + _word(w)
    return total.scale(GaussianRational(Fraction(1, len(words))))


def criterion_split_and_symmetrization() -> CriterionResult:
    split_bad = [(r, s) for r in range(9) for s in range(9) if bj_q_split(r, s) != bj_p_split(r, s)]
    bj_bad = [(r, s) for r in range(9) for s in range(9)
              if quantize(ClassicalPoly.monomial(r, s), BJ) != bj_q_split(r, s)]
    weyl_bad = [(r, s) for r in range(7) for s in range(7 - r)
                if quantize(ClassicalPoly.monomial(r, s), WEYL) != weyl_all_orderings(r, s)]
    ok = not (split_bad or bj_bad or weyl_bad)
    return CriterionResult(6, "Born-Jordan split equivalence and Weyl symmetrization", ok,
                           f"split mismatches {split_bad}, BJ mismatches {bj_bad}, Weyl mismatches {weyl_bad}")


def criterion_nullspace() -> CriterionResult:
    spec = GridSpec(64)
    census = nullspace_census(spec)
    brute = []
    for m in range(-32, 32):
        for s in range(-32, 32):
            theta = 2 * math.pi * m * s / 64
            # zero of sin(theta/2) away from theta = 0
            if m * s != 0 and abs(math.sin(theta / 2)) < 1e-9:
                brute.append((m, s))
    worst_zero = max(fourier_quantize(spec, m, s, BJ).max_abs() for m, s in census)
    census_set = set(census)
    worst_norm = 0.0
    for m in range(-32, 32):
        for s in range(-32, 32):
            if (m, s) in census_set:
                continue
            op = fourier_quantize(spec, m, s, BJ)
            expected = abs(sinc(math.pi * m * s / 64))
            worst_norm = max(worst_norm, abs(op.max_abs() - expected))
    ok = (sorted(brute) == sorted(census) and len(census) == census_count(64)
          and worst_zero < 1e-12 and worst_norm < 1e-12)
    return CriterionResult(7, "Born-Jordan null space on the torus", ok,
                           f"{len(census)} census pairs (brute force {len(brute)}, count {census_count(64)}), "
                           f"max census entry {worst_zero:.2e}, max sinc-norm error {worst_norm:.2e}")


def criterion_matrix_elements() -> CriterionResult:
    spec = GridSpec(32)
    worst = max(matrix_element_check(spec, m, s) for m in spec.window for s in spec.window)
    return CriterionResult(8, "Born-Jordan matrix elements", worst < 1e-12, f"max deviation {worst:.2e}")


def criterion_weyl_invertibility(seed: int) -> CriterionResult:
    spec = GridSpec(64)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(10):
        F = PhaseSpaceGridFunction(spec, rng.normal(size=(64, 64)))
        back = wigner_inverse(quantize_grid(F, WEYL))
        worst = max(worst, float(np.max(np.abs(back.samples - F.samples))))
    census_F = mixed_component(spec, 8, 8)
    zero = quantize_grid(census_F, BJ).max_abs()
    nonzero = float(np.max(np.abs(census_F.samples)))
    ok = worst < 1e-10 and zero < 1e-12 and nonzero > 0.5
    return CriterionResult(9, "Weyl invertibility and Born-Jordan counterexample", ok,
                           f"round-trip error {worst:.2e}; BJ image of cos(k8 q + l8 p) max entry {zero:.2e}")


def criterion_wigner_negativity() -> CriterionResult:
    spec = GridSpec(64, math.sqrt(2 * math.pi * 64), 1.0)
    W = wigner_inverse(gaussian_excited_projector(spec))
    low = float(W.samples.real.min())
    return CriterionResult(10, "Wigner negativity of the excited projector", low < -1e-3,
                           f"min sample {low:.6f}, max imaginary part {float(np.abs(W.samples.imag).max()):.1e}")


def criterion_q_only_reductions() -> CriterionResult:
    spec = GridSpec(64)
    worst = 0.0
    for name in ("cosq:1", "cosq:5", "cosq:-3", "well", "one"):
        F = grid_function(spec, name)
        diag = np.diag(F.samples[:, 0])
        for rule in (BJ, WEYL):
            worst = max(worst, float(np.max(np.abs(quantize_grid(F, rule).entries - diag))))
    return CriterionResult(11, "q-only functions quantize to sample diagonals", worst < 1e-12,
                           f"max error {worst:.2e}")


def criterion_dynamics() -> CriterionResult:
    spec = GridSpec(64)
    H = harper(spec)
    psi0 = gaussian_state(spec, spec.L / 4, spec.P / 4)
    H_op = quantize_grid(H, BJ)
    job = EvolutionJob(spec, H, BJ, psi0, 10.0, 0.1, [H_op])
    samples = propagate(job)
    norm_err = max(abs(s.norm - 1) for s in samples)
    e0 = samples[0].expectations[0]
    energy_err = max(abs(s.expectations[0] - e0) for s in samples)
    A = displacement(spec, 1, 0) + displacement(spec, -1, 0)
    d1 = heisenberg_residual(job, A, 1.0, 1e-3)
    d2 = heisenberg_residual(job, A, 1.0, 5e-4)
    ratio = d1 / d2
    ok = norm_err < 1e-10 and energy_err < 1e-10 and 3.5 <= ratio <= 4.5 and max(d1, d2) < 1e-4
    return CriterionResult(12, "Harper dynamics and Heisenberg consistency", ok,
                           f"norm err {norm_err:.1e}, energy err {energy_err:.1e}, "
                           f"FD deviations {d1:.2e}/{d2:.2e}, ratio {ratio:.3f}")


def criterion_rule_divergence() -> CriterionResult:
    spec = GridSpec(64)
    base = harper(spec)
    term = mixed_component(spec, 8, 8)
    H = base + term
    bj_term = (quantize_grid(H, BJ) - quantize_grid(base, BJ)).norm()
    w_term = (quantize_grid(H, WEYL) - quantize_grid(base, WEYL)).norm()
    psi0 = gaussian_state(spec, spec.L / 4, spec.P / 4)
    report = rule_divergence_report(spec, H, psi0, 10.0, 0.1)
    dist = report["trajectory_distance_max"]
    ok = bj_term < 1e-12 and abs(w_term - 1.0) < 1e-12 and dist > 1e-3
    return CriterionResult(13, "Born-Jordan drops a null-space Hamiltonian term", ok,
                           f"BJ term norm {bj_term:.2e}, Weyl term norm {w_term:.15f}, max distance {dist:.3f}")


def criterion_parser(seed: int) -> CriterionResult:
    rng = random.Random(seed + 2)
    failures = []
    for _ in range(200):
        F = random_poly(rng, rng.randint(1, 3), 6, 6)
        text = print_canonical(F)
        if parse(text, F.dof) != F:
            failures.append(text)
    for text in HANDWRITTEN_CORPUS:
        F = parse(text)
        once = print_canonical(F)
        if print_canonical(parse(once, F.dof)) != once or parse(once, F.dof) != F:
            failures.append(text)
    return CriterionResult(14, "parser round trip", not failures,
                           f"{len(failures)} failures in 220 cases" + (f": {failures[:3]}" if failures else ""))


def all_criteria(seed: int | None = None) -> list[Callable[[], CriterionResult]]:
    seed = seed_from_env() if seed is None else seed
    return [
        criterion_groenewold,
        lambda: criterion_strengthened_bj(seed),
        criterion_weyl_violation,
        criterion_ordering_gap,
        lambda: criterion_covariance(seed),
        criterion_split_and_symmetrization,
        criterion_nullspace,
        criterion_matrix_elements,
        lambda: criterion_weyl_invertibility(seed),
        criterion_wigner_negativity,
        criterion_q_only_reductions,
        criterion_dynamics,
        criterion_rule_divergence,
        lambda: criterion_parser(seed),
    ]


def run_all(seed: int | None = None, echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    results = []
    for check in all_criteria(seed):
        res = check()
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
