"""Exact scalars: Gaussian rationals and Laurent polynomials in a formal hbar.

Both types are immutable and hashable. Rationals are ``fractions.Fraction``,
so numerators and denominators are arbitrary-precision and always reduced.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

__all__ = ["GaussianRational", "HBarPolynomial", "hbar_divide", "ZERO", "ONE", "I", "HBAR"]


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return _fmt_fraction(self.re)
        if not self.re:
            return f"{_fmt_fraction(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt_fraction(self.re)}{sign}{_fmt_fraction(abs(self.im))}*i"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class HBarPolynomial:
    """Finite Laurent polynomial ``sum_k c_k hbar**k`` with Gaussian rational ``c_k``.

    Zero coefficients are never stored. Negative powers are allowed, but only
    as intermediate values (see :func:`hbar_divide`).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[int(k)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HBarPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> "HBarPolynomial":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "HBarPolynomial":
        if isinstance(x, HBarPolynomial):
            return x
        return cls({0: GaussianRational.coerce(x)})

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, GaussianRational]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, k: int) -> GaussianRational:
        return self._terms.get(k, ZERO)

    def min_power(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_power(self) -> int | None:
        return max(self._terms) if self._terms else None

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        try:
            other = HBarPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        try:
            other = HBarPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return HBarPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return HBarPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = HBarPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = HBarPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, ZERO) + c1 * c2
        return HBarPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = HBarPolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "HBarPolynomial":
        c = GaussianRational.coerce(c)
        return HBarPolynomial({k: v * c for k, v in self._terms.items()})

    def shift(self, n: int) -> "HBarPolynomial":
        """Multiply by ``hbar**n``."""
        return HBarPolynomial({k + n: c for k, c in self._terms.items()})

    def conjugate(self) -> "HBarPolynomial":
        return HBarPolynomial({k: c.conjugate() for k, c in self._terms.items()})

    def at_zero(self) -> GaussianRational:
        """Value at hbar = 0; requires no negative powers."""
        if self._terms and min(self._terms) < 0:
            raise ValueError("negative hbar power has no value at hbar = 0")
        return self._terms.get(0, ZERO)

    def evaluate(self, hbar: float) -> complex:
        return sum((complex(c) * hbar**k for k, c in self._terms.items()), 0j)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            if k == 0:
                parts.append(f"({c})" if c.re and c.im else str(c))
            else:
                h = "hbar" if k == 1 else f"hbar^{k}"
                parts.append(h if c == ONE else f"({c})*{h}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HBarPolynomial({self})"


HBAR = HBarPolynomial({1: 1})


def hbar_divide(x: HBarPolynomial) -> HBarPolynomial:
    """Return ``x / hbar``; every power shifts down by one."""
    return x.shift(-1)
