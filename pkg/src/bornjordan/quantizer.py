"""Born-Jordan and Weyl quantization of polynomial observables, and the
bracket-correspondence checks built on them.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Sequence

from .classical import ClassicalPoly, partial_p, partial_q, poisson_bracket
from .exact import GaussianRational
from .operators import OperatorPoly, op_mul, quantum_bracket

__all__ = [
    "OrderingRule",
    "MixedVariableInput",
    "quantize",
    "groenewold_candidates",
    "groenewold_discrepancy",
    "strengthened_rule_residual",
    "dirac_rule_residual",
    "heisenberg_covariance_residual",
    "ehrenfest_residual",
]


class OrderingRule(enum.Enum):
    BORN_JORDAN = "bj"
    WEYL = "weyl"

    @classmethod
    def parse(cls, text: "str | OrderingRule") -> "OrderingRule":
        if isinstance(text, OrderingRule):
            return text
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {"bj": cls.BORN_JORDAN, "bornjordan": cls.BORN_JORDAN, "weyl": cls.WEYL, "w": cls.WEYL}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown ordering rule {text!r}") from None


class MixedVariableInput(ValueError):
    """A q-only (p-only) argument contained a p (q) exponent."""


@lru_cache(maxsize=None)
def _quantize_monomial(a: tuple[int, ...], b: tuple[int, ...], rule: OrderingRule) -> OperatorPoly:
    """Quantization of q^a p^b (multi-indices a, b).

    Both rules are sums over splittings q^j p^b q^(a-j), j <= a, with weight
    prod_i C(a_i, j_i) times
      Born-Jordan: int_0^1 t^|j| (1-t)^(|a|-|j|) dt = |j|! (|a|-|j|)! / (|a|+1)!
      Weyl:        (1/2)^|a|
    For one degree of freedom these are 1/(r+1) and C(r,j)/2^r.
    """
    dof = len(a)
    z = (0,) * dof
    total_a = sum(a)
    middle = OperatorPoly(dof, {(z, b): 1})
    total = OperatorPoly.zero(dof)
    for j in product(*(range(e + 1) for e in a)):
        rest = tuple(x - y for x, y in zip(a, j))
        weight = Fraction(prod(comb(x, y) for x, y in zip(a, j)))
        if rule is OrderingRule.BORN_JORDAN:
            n = sum(j)
            weight *= Fraction(factorial(n) * factorial(total_a - n), factorial(total_a + 1))
        else:
            weight /= 2**total_a
        word = op_mul(op_mul(OperatorPoly(dof, {(j, z): 1}), middle), OperatorPoly(dof, {(rest, z): 1}))
        total = total + word.scale(GaussianRational(weight))
    return total


def quantize(F: ClassicalPoly, rule: "OrderingRule | str" = OrderingRule.BORN_JORDAN) -> OperatorPoly:
    """Linear extension of the monomial quantization formulas."""
    rule = OrderingRule.parse(rule)
    total = OperatorPoly.zero(F.dof)
    for (a, b), c in F.terms.items():
        total = total + _quantize_monomial(a, b, rule).scale(c)
    return total


def _hat(F: ClassicalPoly) -> OperatorPoly:
    return OperatorPoly.from_standard_order(F)


def groenewold_candidates() -> tuple[OperatorPoly, OperatorPoly]:
    """The two values of Q(q^2 p^2) forced by full bracket correspondence.

    From {Q(q^3), Q(p^3)}_Q = Q({q^3, p^3}) = 9 Q(q^2 p^2) and
    {Q(q^2 p), Q(q p^2)}_Q = Q({q^2 p, q p^2}) = 3 Q(q^2 p^2),
    with Q(q^2 p) = q p q and Q(q p^2) = p q p.
    """
    q, p = OperatorPoly.q(), OperatorPoly.p()
    a = quantum_bracket(q**3, p**3).scale(GaussianRational(Fraction(1, 9)))
    b = quantum_bracket(q * p * q, p * q * p).scale(GaussianRational(Fraction(1, 3)))
    return a, b


def groenewold_discrepancy() -> OperatorPoly:
    a, b = groenewold_candidates()
    return a - b


def _require(poly: ClassicalPoly, *, q_only: bool, label: str) -> None:
    if q_only and poly.depends_on_p():
        raise MixedVariableInput(f"{label} must depend on q only: {poly}")
    if not q_only and poly.depends_on_q():
        raise MixedVariableInput(f"{label} must depend on p only: {poly}")


def strengthened_rule_residual(F1: ClassicalPoly, G1: ClassicalPoly, F2: ClassicalPoly, G2: ClassicalPoly,
                               rule: "OrderingRule | str" = OrderingRule.BORN_JORDAN) -> OperatorPoly:
    """{Q(F1+G1), Q(F2+G2)}_Q - Q({F1+G1, F2+G2}) for q-only F's and p-only G's."""
    _require(F1, q_only=True, label="F1")
    _require(F2, q_only=True, label="F2")
    _require(G1, q_only=False, label="G1")
    _require(G2, q_only=False, label="G2")
    A, B = F1 + G1, F2 + G2
    return quantum_bracket(quantize(A, rule), quantize(B, rule)) - quantize(poisson_bracket(A, B), rule)


def dirac_rule_residual(c, k: Sequence, l: Sequence, F: ClassicalPoly, G: ClassicalPoly,
                        rule: "OrderingRule | str" = OrderingRule.BORN_JORDAN) -> OperatorPoly:
    """{Q(c + k.q + l.p), Q(F(q) + G(p))}_Q - (k . grad_p G(p-hat) - l . grad_q F(q-hat))."""
    _require(F, q_only=True, label="F")
    _require(G, q_only=False, label="G")
    n = F.dof
    if G.dof != n or len(k) != n or len(l) != n:
        raise ValueError("k, l, F and G must share one dof")
    linear = ClassicalPoly.constant(c, n)
    for i in range(n):
        linear = linear + ClassicalPoly.q(i + 1, n).scale(k[i]) + ClassicalPoly.p(i + 1, n).scale(l[i])
    expected = OperatorPoly.zero(n)
    for i in range(n):
        expected = expected + _hat(partial_p(G, i + 1)).scale(k[i]) - _hat(partial_q(F, i + 1)).scale(l[i])
    return quantum_bracket(quantize(linear, rule), quantize(F + G, rule)) - expected


def heisenberg_covariance_residual(F: ClassicalPoly, rule: "OrderingRule | str" = OrderingRule.BORN_JORDAN,
                                   index: int = 1) -> tuple[OperatorPoly, OperatorPoly]:
    """({q_i, Q(F)}_Q - Q(dF/dp_i), {p_i, Q(F)}_Q + Q(dF/dq_i))."""
    n = F.dof
    QF = quantize(F, rule)
    first = quantum_bracket(OperatorPoly.q(index, n), QF) - quantize(partial_p(F, index), rule)
    second = quantum_bracket(OperatorPoly.p(index, n), QF) + quantize(partial_q(F, index), rule)
    return first, second


def ehrenfest_residual(H: ClassicalPoly, rule: "OrderingRule | str" = OrderingRule.BORN_JORDAN
                       ) -> list[tuple[OperatorPoly, OperatorPoly]]:
    """Operator equations of motion for every degree of freedom.

    With dA/dt = {A, Q(H)}_Q, returns per index
    ``(dq_i/dt - Q(dH/dp_i), dp_i/dt + Q(dH/dq_i))``.
    """
    return [heisenberg_covariance_residual(H, rule, i) for i in range(1, H.dof + 1)]
