"""Noncommutative polynomials in q-hat, p-hat with [q_i, p_j] = i hbar delta_ij.

Every :class:`OperatorPoly` is kept in standard order: each key
``(alpha, beta)`` stands for the word ``q^alpha p^beta`` with all position
factors to the left of all momentum factors. Standard order is a unique
normal form, so structural equality of the term maps is operator equality.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .exact import GaussianRational, HBarPolynomial, I
from .polybase import DofMismatch, PhasePolynomial

__all__ = [
    "OperatorPoly",
    "op_mul",
    "commutator",
    "quantum_bracket",
    "adjoint",
    "InexactHbarDivision",
    "QUANTUM_BRACKET_SCALE",
    "DofMismatch",
]

# K = -i/hbar
QUANTUM_BRACKET_SCALE = HBarPolynomial({-1: -I})

_MINUS_I_POWERS = (GaussianRational(1), GaussianRational(0, -1), GaussianRational(-1), GaussianRational(0, 1))


class InexactHbarDivision(ArithmeticError):
    """A commutator had a coefficient not divisible by hbar."""


@lru_cache(maxsize=None)
def _reorder(b: int, a: int) -> tuple[tuple[int, int], ...]:
    """Integer weights w_k with p^b q^a = sum_k w_k (-i hbar)^k q^(a-k) p^(b-k)."""
    return tuple((k, factorial(k) * comb(b, k) * comb(a, k)) for k in range(min(a, b) + 1))


class OperatorPoly(PhasePolynomial):
    _q_name = "qh"
    _p_name = "ph"

    __slots__ = ()

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return op_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return op_mul(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = OperatorPoly.constant(1, self.dof)
        for _ in range(n):
            result = op_mul(result, self)
        return result

    def classical_limit(self):
        """Set hbar -> 0 and drop hats."""
        from .classical import ClassicalPoly

        return ClassicalPoly(self.dof, {k: c.at_zero() for k, c in self._terms.items()})

    @classmethod
    def from_standard_order(cls, F) -> "OperatorPoly":
        """Hat every monomial of ``F`` keeping q left of p.

        This is the quantization only for polynomials that depend on q alone
        or on p alone; there it agrees with every ordering rule.
        """
        return cls(F.dof, F.terms)


def _mul_words(k1, k2):
    """Yield ``(key, weight, hbar_power)`` for the product of two standard words."""
    (a1, b1), (a2, b2) = k1, k2
    partial = [((), (), 1, 0)]
    for i in range(len(a1)):
        nxt = []
        for qs, ps, w, h in partial:
            for k, wk in _reorder(b1[i], a2[i]):
                nxt.append((qs + (a1[i] + a2[i] - k,), ps + (b1[i] + b2[i] - k,), w * wk, h + k))
        partial = nxt
    for qs, ps, w, h in partial:
        yield (qs, ps), w, h


def op_mul(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    """Standard-ordered product ``A B``.

    Each p^b q^a in the middle of a product is moved into standard order with
    the closed form of repeated p q -> q p - i hbar rewriting,
    ``p^b q^a = sum_k k! C(b,k) C(a,k) (-i hbar)^k q^(a-k) p^(b-k)``
    (applied per degree of freedom; different indices commute).
    """
    if A.dof != B.dof:
        raise DofMismatch(f"dof mismatch: {A.dof} != {B.dof}")
    out: dict = {}
    for k1, c1 in A._terms.items():
        for k2, c2 in B._terms.items():
            c12 = c1 * c2
            for key, w, h in _mul_words(k1, k2):
                c = c12.shift(h).scale(_MINUS_I_POWERS[h % 4] * w)
                out[key] = out[key] + c if key in out else c
    return OperatorPoly(A.dof, out)


def commutator(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    return op_mul(A, B) - op_mul(B, A)


def quantum_bracket(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    """``(-i/hbar) [A, B]`` with exact division by hbar."""
    C = commutator(A, B)
    # inputs with transient negative powers are not held to the divisibility check
    if _nonnegative(A) and _nonnegative(B):
        for key, c in C._terms.items():
            if c.min_power() < 1:
                raise InexactHbarDivision(f"coefficient {c} of {key} is not divisible by hbar")
    return C.scale(QUANTUM_BRACKET_SCALE)


def _nonnegative(A: OperatorPoly) -> bool:
    low = A.min_hbar_power()
    return low is None or low >= 0


def adjoint(A: OperatorPoly) -> OperatorPoly:
    """Hermitian conjugate: reverse every word, conjugate coefficients (hbar real)."""
    total = OperatorPoly.zero(A.dof)
    z = (0,) * A.dof
    for (a, b), c in A._terms.items():
        p_part = OperatorPoly(A.dof, {(z, b): c.conjugate()})
        q_part = OperatorPoly(A.dof, {(a, z): 1})
        total = total + op_mul(p_part, q_part)
    return total
