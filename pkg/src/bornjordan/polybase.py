"""Shared storage, linear arithmetic and printing for phase-space polynomials.

A polynomial is a map from an exponent key ``(alpha, beta)`` (two tuples of
length ``dof``) to an :class:`HBarPolynomial` coefficient. Subclasses decide
what the key means (commuting monomial or standard-ordered operator word) and
define multiplication.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Tuple

from .exact import GaussianRational, HBarPolynomial

Exponents = Tuple[int, ...]
Key = Tuple[Exponents, Exponents]

__all__ = ["DofMismatch", "PhasePolynomial", "Key", "Exponents"]


class DofMismatch(ValueError):
    pass


class PhasePolynomial:
    _q_name = "q"
    _p_name = "p"

    __slots__ = ("dof", "_terms", "_hash")

    def __init__(self, dof: int, terms: Mapping[Key, object] | None = None):
        if dof < 1:
            raise ValueError("dof must be >= 1")
        clean: dict[Key, HBarPolynomial] = {}
        if terms:
            for (a, b), c in terms.items():
                a, b = tuple(a), tuple(b)
                if len(a) != dof or len(b) != dof:
                    raise ValueError(f"exponent key {(a, b)} does not match dof={dof}")
                if min(a + b) < 0:
                    raise ValueError("exponents must be non-negative")
                c = HBarPolynomial.coerce(c)
                if c:
                    key = (a, b)
                    if key in clean:
                        c = clean[key] + c
                        if not c:
                            del clean[key]
                            continue
                    clean[key] = c
        object.__setattr__(self, "dof", dof)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # construction helpers

    @classmethod
    def zero(cls, dof: int = 1):
        return cls(dof)

    @classmethod
    def constant(cls, c, dof: int = 1):
        z = (0,) * dof
        return cls(dof, {(z, z): c})

    @classmethod
    def monomial(cls, q_exp: Iterable[int] | int, p_exp: Iterable[int] | int, coeff=1):
        """``coeff * q^q_exp p^p_exp``; integer exponents mean one degree of freedom."""
        if isinstance(q_exp, int):
            q_exp = (q_exp,)
        if isinstance(p_exp, int):
            p_exp = (p_exp,)
        q_exp, p_exp = tuple(q_exp), tuple(p_exp)
        return cls(len(q_exp), {(q_exp, p_exp): coeff})

    @classmethod
    def q(cls, i: int = 1, dof: int = 1):
        return cls.monomial(_unit(i, dof), (0,) * dof)

    @classmethod
    def p(cls, i: int = 1, dof: int = 1):
        return cls.monomial((0,) * dof, _unit(i, dof))

    # access

    @property
    def terms(self) -> dict[Key, HBarPolynomial]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, HBarPolynomial]]:
        """Terms in canonical (descending lexicographic) order."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True))

    def coefficient(self, q_exp, p_exp) -> HBarPolynomial:
        if isinstance(q_exp, int):
            q_exp, p_exp = (q_exp,), (p_exp,)
        return self._terms.get((tuple(q_exp), tuple(p_exp)), HBarPolynomial())

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        z = (0,) * self.dof
        return all(k == (z, z) for k in self._terms)

    def scalar_part(self) -> HBarPolynomial:
        z = (0,) * self.dof
        return self._terms.get((z, z), HBarPolynomial())

    def depends_on_p(self) -> bool:
        return any(any(b) for _, b in self._terms)

    def depends_on_q(self) -> bool:
        return any(any(a) for a, _ in self._terms)

    def min_hbar_power(self) -> int | None:
        powers = [c.min_power() for c in self._terms.values()]
        return min(powers) if powers else None

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def is_hbar_free(self) -> bool:
        return all(c.is_constant() for c in self._terms.values())

    # linear structure

    def _check(self, other) -> None:
        if self.dof != other.dof:
            raise DofMismatch(f"dof mismatch: {self.dof} != {other.dof}")

    def _coerce(self, other):
        if isinstance(other, type(self)):
            self._check(other)
            return other
        if isinstance(other, PhasePolynomial):
            return NotImplemented
        try:
            return type(self).constant(HBarPolynomial.coerce(other), self.dof)
        except TypeError:
            return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)) and other.dof != self.dof:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.dof == other.dof and self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((type(self).__name__, self.dof, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return type(self)(self.dof, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.dof, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PhasePolynomial":
        c = HBarPolynomial.coerce(c)
        return type(self)(self.dof, {k: v * c for k, v in self._terms.items()})

    def map_coefficients(self, fn) -> "PhasePolynomial":
        return type(self)(self.dof, {k: fn(v) for k, v in self._terms.items()})

    # printing

    def _var(self, name: str, i: int) -> str:
        return name if self.dof == 1 else f"{name}{i + 1}"

    def _monomial_text(self, key: Key) -> list[str]:
        a, b = key
        out = []
        for name, exps in ((self._q_name, a), (self._p_name, b)):
            for i, e in enumerate(exps):
                if e == 1:
                    out.append(self._var(name, i))
                elif e > 1:
                    out.append(f"{self._var(name, i)}^{e}")
        return out

    def __str__(self) -> str:
        pieces: list[tuple[str, str]] = []
        for key, coeff in self.items():
            mono = self._monomial_text(key)
            for k, g in coeff.items():
                pieces.append(_render_term(g, k, mono))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self}, dof={self.dof})"


def _unit(i: int, dof: int) -> Exponents:
    if not 1 <= i <= dof:
        raise IndexError(f"index {i} out of range for dof={dof}")
    return tuple(1 if j == i - 1 else 0 for j in range(dof))


def _fmt(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _render_term(g: GaussianRational, hbar_power: int, mono: list[str]) -> tuple[str, str]:
    factors: list[str] = []
    sign = "+"
    if g.im and g.re:
        factors.append(f"({g})")
    elif g.im:
        if g.im < 0:
            sign = "-"
        if abs(g.im) != 1:
            factors.append(_fmt(abs(g.im)))
        factors.append("i")
    else:
        if g.re < 0:
            sign = "-"
        if abs(g.re) != 1:
            factors.append(_fmt(abs(g.re)))
    if hbar_power == 1:
        factors.append("hbar")
    elif hbar_power:
        factors.append(f"hbar^{hbar_power}")
    factors.extend(mono)
    return sign, "*".join(factors) if factors else "1"

