"""Commuting polynomials on phase space with the Poisson bracket."""

from __future__ import annotations

from .exact import GaussianRational
from .polybase import DofMismatch, PhasePolynomial

__all__ = ["ClassicalPoly", "poisson_bracket", "partial_q", "partial_p", "DofMismatch"]


class ClassicalPoly(PhasePolynomial):
    """Polynomial in q_1..q_n, p_1..p_n with hbar-polynomial coefficients.

    Variables commute, so a key ``(alpha, beta)`` is simply the monomial
    ``prod q_i**alpha_i * prod p_i**beta_i``.
    """

    __slots__ = ()

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                c = c1 * c2
                out[key] = out[key] + c if key in out else c
        return ClassicalPoly(self.dof, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ClassicalPoly.constant(1, self.dof)
        for _ in range(n):
            result = result * self
        return result

    def classical_limit(self) -> "ClassicalPoly":
        """Drop every positive hbar power (hbar -> 0)."""
        return ClassicalPoly(self.dof, {k: c.at_zero() for k, c in self._terms.items()})

    def evaluate(self, q, p, hbar: float = 1.0) -> complex:
        """Numeric value at the point ``(q, p)`` (sequences of length dof)."""
        total = 0j
        for (a, b), c in self._terms.items():
            term = c.evaluate(hbar)
            for x, e in zip(q, a):
                term *= x**e
            for x, e in zip(p, b):
                term *= x**e
            total += term
        return total


def _derivative(F: ClassicalPoly, i: int, which: int) -> ClassicalPoly:
    if not 1 <= i <= F.dof:
        raise IndexError(f"index {i} out of range for dof={F.dof}")
    out = {}
    for key, c in F._terms.items():
        exps = list(key[which])
        e = exps[i - 1]
        if e == 0:
            continue
        exps[i - 1] = e - 1
        new = (tuple(exps), key[1]) if which == 0 else (key[0], tuple(exps))
        out[new] = c.scale(GaussianRational(e))
    return ClassicalPoly(F.dof, out)


def partial_q(F: ClassicalPoly, i: int = 1) -> ClassicalPoly:
    return _derivative(F, i, 0)


def partial_p(F: ClassicalPoly, i: int = 1) -> ClassicalPoly:
    return _derivative(F, i, 1)


def poisson_bracket(F: ClassicalPoly, G: ClassicalPoly) -> ClassicalPoly:
    """``sum_i dF/dq_i dG/dp_i - dF/dp_i dG/dq_i``."""
    if F.dof != G.dof:
        raise DofMismatch(f"dof mismatch: {F.dof} != {G.dof}")
    total = ClassicalPoly.zero(F.dof)
    for i in range(1, F.dof + 1):
        total = total + partial_q(F, i) * partial_p(G, i) - partial_p(F, i) * partial_q(G, i)
    return total

