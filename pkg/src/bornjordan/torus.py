"""Numeric quantization on an N-point periodic position grid (one degree of freedom).

Positions are q_j = j*dq (dq = L/N) and momenta p_r = r*2*pi*hbar/L. Fourier
components are labelled by integers (m, s) in the symmetric window
[-N/2, N/2): wavenumber k_m = 2*pi*m/L and displacement l_s = s*dq/hbar, so
that the commutation phase is theta = hbar*k_m*l_s = 2*pi*m*s/N.

The displacement operator E(m, s) = exp(-i theta/2) T(s) M(m) is built from the
clock M(m) = diag(exp(i k_m q_j)) and the cyclic shift (T(s) psi)_j = psi_{j+s}.
It is the grid form of exp(i(k q + l p)), and the E(m, s) with (m, s) in the
window are an orthogonal basis: Tr[E(m,s)^dagger E(m',s')] = N delta.

Nyquist lines: E(m, s) depends on the integer pair, not just on m, s mod N,
because exp(-i theta/2) changes sign under m -> m + N when s is odd. The
phase is therefore computed from the label pair of ``GridSpec.label``, which
agrees with the window pair except that m = -N/2 becomes +N/2 when s > 0
and s = -N/2 becomes +N/2 when m > 0. Labels are closed under negation, so
E(-m, -s) = E(m, s)^dagger for every pair, real functions quantize to
Hermitian matrices, and Hermitian operators have real Wigner functions.

Aliasing: a sampled function is decomposed into window components only;
content above the Nyquist frequency folds back into the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .quantizer import OrderingRule

__all__ = [
    "GridSpec",
    "GridOperator",
    "GridState",
    "PhaseSpaceGridFunction",
    "clock",
    "shift",
    "displacement",
    "sinc",
    "sinc_factor",
    "fourier_quantize",
    "fourier_coefficients",
    "quantize_grid",
    "wigner_inverse",
    "nullspace_census",
    "census_count",
    "matrix_element_kernel",
    "matrix_element_check",
    "q_split_operator",
    "p_split_operator",
    "grid_quantum_bracket",
    "harper",
    "mixed_component",
    "cos_q",
    "constant_function",
    "gaussian_state",
    "excited_state",
    "gaussian_excited_projector",
]


@dataclass(frozen=True)
class GridSpec:
    """Discrete torus: N grid points, position period L, Planck constant hbar.

    ``L`` defaults to sqrt(2*pi*hbar*N), which makes the momentum period equal
    to L (symmetric position and momentum windows).
    """

    N: int = 64
    L: float | None = None
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 4 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 4, got {self.N!r}")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if self.L is None:
            object.__setattr__(self, "L", math.sqrt(2 * math.pi * self.hbar * self.N))
        if not self.L > 0:
            raise ValueError("L must be positive")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def dq(self) -> float:
        return self.L / self.N

    @property
    def dp(self) -> float:
        return 2 * math.pi * self.hbar / self.L

    @property
    def P(self) -> float:
        """Momentum period."""
        return self.dp * self.N

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.N) * self.dq

    @property
    def momenta(self) -> np.ndarray:
        return np.arange(self.N) * self.dp

    @property
    def window(self) -> range:
        return range(-self.N // 2, self.N // 2)

    def reduce(self, m: int) -> int:
        """Representative of m mod N in [-N/2, N/2)."""
        return (int(m) + self.N // 2) % self.N - self.N // 2

    def wavenumber(self, m: int) -> float:
        return 2 * math.pi * self.reduce(m) / self.L

    def displacement_param(self, s: int) -> float:
        return self.reduce(s) * self.dq / self.hbar

    def theta(self, m: int, s: int) -> float:
        return 2 * math.pi * self.reduce(m) * self.reduce(s) / self.N

    def label(self, m: int, s: int) -> tuple[int, int]:
        """Integer pair used for the phase of E(m, s); see the module docstring."""
        m, s, h = self.reduce(m), self.reduce(s), self.N // 2
        if m == -h and s > 0:
            m = h
        elif s == -h and m > 0:
            s = h
        return m, s

    def to_dict(self) -> dict:
        return {"N": self.N, "L": self.L, "hbar": self.hbar}


def _check_spec(a, b):
    if a.spec != b.spec:
        raise ValueError("grid specs differ")


@dataclass(frozen=True, eq=False)
class GridOperator:
    spec: GridSpec
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.shape != (self.spec.N, self.spec.N):
            raise ValueError(f"operator shape {a.shape} does not match N={self.spec.N}")
        if not np.all(np.isfinite(a)):
            raise ValueError("operator entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    def __add__(self, other: "GridOperator") -> "GridOperator":
        _check_spec(self, other)
        return GridOperator(self.spec, self.entries + other.entries)

    def __sub__(self, other: "GridOperator") -> "GridOperator":
        _check_spec(self, other)
        return GridOperator(self.spec, self.entries - other.entries)

    def __matmul__(self, other: "GridOperator") -> "GridOperator":
        _check_spec(self, other)
        return GridOperator(self.spec, self.entries @ other.entries)

    def __mul__(self, c: complex) -> "GridOperator":
        return GridOperator(self.spec, self.entries * c)

    __rmul__ = __mul__

    def dagger(self) -> "GridOperator":
        return GridOperator(self.spec, self.entries.conj().T)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def norm(self) -> float:
        """Spectral norm."""
        return float(np.linalg.norm(self.entries, 2))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


@dataclass(frozen=True, eq=False)
class GridState:
    spec: GridSpec
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.shape != (self.spec.N,):
            raise ValueError(f"state length {a.shape[0]} does not match N={self.spec.N}")
        if not np.all(np.isfinite(a)):
            raise ValueError("state amplitudes must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "GridState":
        return GridState(self.spec, self.amplitudes / self.norm())

    def expectation(self, A: GridOperator) -> complex:
        psi = self.amplitudes
        return complex(np.vdot(psi, A.entries @ psi))

    def projector(self) -> GridOperator:
        psi = self.amplitudes
        return GridOperator(self.spec, np.outer(psi, psi.conj()))


@dataclass(frozen=True, eq=False)
class PhaseSpaceGridFunction:
    """Samples F(q_j, p_r); ``samples[j, r]``."""

    spec: GridSpec
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.samples, dtype=complex)
        if a.shape != (self.spec.N, self.spec.N):
            raise ValueError(f"sample shape {a.shape} does not match N={self.spec.N}")
        if not np.all(np.isfinite(a)):
            raise ValueError("samples must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "samples", a)

    @classmethod
    def from_callable(cls, spec: GridSpec, fn) -> "PhaseSpaceGridFunction":
        q, p = np.meshgrid(spec.positions, spec.momenta, indexing="ij")
        return cls(spec, np.broadcast_to(fn(q, p), (spec.N, spec.N)))

    def __add__(self, other: "PhaseSpaceGridFunction") -> "PhaseSpaceGridFunction":
        _check_spec(self, other)
        return PhaseSpaceGridFunction(self.spec, self.samples + other.samples)

    def __mul__(self, c: complex) -> "PhaseSpaceGridFunction":
        return PhaseSpaceGridFunction(self.spec, self.samples * c)

    __rmul__ = __mul__

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.samples.imag)) <= tol)


# elementary operators

def _half_phase(n, N: int):
    """exp(i pi n / N) for integer n, reduced mod 2N before the float step."""
    return np.exp(1j * np.pi * (np.asarray(n) % (2 * N)) / N)


def clock(spec: GridSpec, m: int) -> np.ndarray:
    """M(m) = diag(exp(i k_m q_j))."""
    j = np.arange(spec.N)
    return np.diag(_half_phase(2 * spec.reduce(m) * j, spec.N))


def shift(spec: GridSpec, s: int) -> np.ndarray:
    """T(s) with (T psi)_j = psi_{j+s mod N}."""
    N = spec.N
    T = np.zeros((N, N), dtype=complex)
    j = np.arange(N)
    T[j, (j + s) % N] = 1.0
    return T


def displacement(spec: GridSpec, m: int, s: int) -> GridOperator:
    m, s = spec.label(m, s)
    phase = _half_phase(-m * s, spec.N)
    return GridOperator(spec, phase * (shift(spec, s) @ clock(spec, m)))


def sinc(x: float) -> float:
    """sin(x)/x with sinc(0) = 1."""
    return 1.0 if x == 0 else math.sin(x) / x


def sinc_factor(spec: GridSpec, m: int, s: int) -> float:
    """Born-Jordan weight sin(theta/2)/(theta/2); exactly 0 on the null set."""
    m, s = spec.reduce(m), spec.reduce(s)
    if m * s == 0:
        return 1.0
    if (m * s) % spec.N == 0:
        return 0.0
    return sinc(math.pi * m * s / spec.N)


def _rule_weight(spec: GridSpec, m: int, s: int, rule: OrderingRule) -> float:
    return sinc_factor(spec, m, s) if rule is OrderingRule.BORN_JORDAN else 1.0


def fourier_quantize(spec: GridSpec, m: int, s: int, rule: "OrderingRule | str") -> GridOperator:
    """Quantized Fourier component exp(i(k_m q + l_s p))."""
    rule = OrderingRule.parse(rule)
    E = displacement(spec, m, s)
    w = _rule_weight(spec, m, s, rule)
    return E if w == 1.0 else E * w


def fourier_coefficients(F: PhaseSpaceGridFunction) -> np.ndarray:
    """c[m mod N, s mod N] with F(q_j, p_r) = sum c_{m,s} exp(2 pi i (m j + s r)/N)."""
    N = F.spec.N
    return np.fft.fft2(F.samples) / (N * N)


def _synthesize(spec: GridSpec, coeffs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_{m,s} coeffs * weights * E(m,s), accumulated one shift s at a time."""
    N = spec.N
    j = np.arange(N)
    out = np.zeros((N, N), dtype=complex)
    ms = np.array(list(spec.window))
    for s in spec.window:
        col = coeffs[ms % N, s % N] * weights[ms % N, s % N] * _half_phase(-_label_product(spec, ms, s), N)
        if not np.any(col):
            continue
        # E(m,s)[j, j+s] = exp(-i pi m s/N) exp(2 pi i m (j+s)/N)
        phases = np.exp(2j * np.pi * np.outer((j + s) % N, ms) / N)
        out[j, (j + s) % N] += phases @ col
    return out


def _label_product(spec: GridSpec, ms: np.ndarray, s: int) -> np.ndarray:
    """m*s of the label pairs, for a column of window m values at fixed s."""
    h = spec.N // 2
    mm = np.where((ms == -h) & (s > 0), h, ms)
    ss = np.where((s == -h) & (ms > 0), h, s)
    return mm * ss


def _weights(spec: GridSpec, rule: OrderingRule) -> np.ndarray:
    N = spec.N
    w = np.ones((N, N))
    if rule is OrderingRule.BORN_JORDAN:
        for m in spec.window:
            for s in spec.window:
                w[m % N, s % N] = sinc_factor(spec, m, s)
    return w


def quantize_grid(F: PhaseSpaceGridFunction, rule: "OrderingRule | str") -> GridOperator:
    """Fourier-synthesis quantization: sum_{m,s} c_{m,s} Q(exp(i(k_m q + l_s p)))."""
    rule = OrderingRule.parse(rule)
    spec = F.spec
    return GridOperator(spec, _synthesize(spec, fourier_coefficients(F), _weights(spec, rule)))


def wigner_inverse(A: GridOperator) -> PhaseSpaceGridFunction:
    """Inverse of the Weyl map: c_{m,s} = Tr[E(m,s)^dagger A]/N, then Fourier synthesis."""
    spec = A.spec
    N = spec.N
    j = np.arange(N)
    C = np.zeros((N, N), dtype=complex)
    ms = np.array(list(spec.window))
    for s in spec.window:
        band = A.entries[j, (j + s) % N]
        phases = np.exp(-2j * np.pi * np.outer(ms, (j + s) % N) / N)
        C[ms % N, s % N] = _half_phase(_label_product(spec, ms, s), N) * (phases @ band) / N
    return PhaseSpaceGridFunction(spec, np.fft.ifft2(C) * (N * N))


def nullspace_census(spec: GridSpec) -> list[tuple[int, int]]:
    """Window pairs whose Born-Jordan quantization vanishes: m*s = 0 mod N, m*s != 0."""
    N = spec.N
    return [(m, s) for m in spec.window for s in spec.window if m * s != 0 and (m * s) % N == 0]


def census_count(N: int) -> int:
    """Size of the null set by counting: for each m != 0 there are gcd(m, N) - 1 valid s."""
    return sum(gcd(abs(m), N) - 1 for m in range(-N // 2, N // 2) if m != 0)


def matrix_element_kernel(spec: GridSpec, m: int, s: int) -> np.ndarray:
    """sinc(theta/2) exp(i k (q_j + s dq/2)) on the entries (j, j+s): the grid kernel of the BJ component."""
    m, s = spec.label(m, s)
    N = spec.N
    K = np.zeros((N, N), dtype=complex)
    w = sinc_factor(spec, m, s)
    for j in range(N):
        # k_m (q_j + s dq/2) = pi m (2j + s) / N
        K[j, (j + s) % N] = w * _half_phase(m * (2 * j + s), N)
    return K


def matrix_element_check(spec: GridSpec, m: int, s: int) -> float:
    BJ = fourier_quantize(spec, m, s, OrderingRule.BORN_JORDAN).entries
    return float(np.max(np.abs(BJ - matrix_element_kernel(spec, m, s))))


def q_split_operator(spec: GridSpec, m: int, s: int) -> np.ndarray:
    """int_0^1 da exp(i a k q) exp(i l p) exp(i (1-a) k q), evaluated in the position basis.

    Entry (j, j+s) is exp(i k (q_j + (1-a) s dq)) integrated over a, using the
    unwrapped translation q_j + s dq.
    """
    m, s = spec.label(m, s)
    N = spec.N
    k = 2 * math.pi * m / spec.L
    x = k * s * spec.dq
    integral = 1.0 if x == 0 else (1 - np.exp(-1j * x)) / (1j * x)
    out = np.zeros((N, N), dtype=complex)
    j = np.arange(N)
    out[j, (j + s) % N] = np.exp(1j * k * (spec.positions + s * spec.dq)) * integral
    return out


def p_split_operator(spec: GridSpec, m: int, s: int) -> np.ndarray:
    """int_0^1 da exp(i a l p) exp(i k q) exp(i (1-a) l p), evaluated in the momentum basis.

    exp(i k q) raises the momentum index by m; with unwrapped momenta the
    a-integral gives exp(i l p_r) int exp(i a theta) da on entry (r+m, r).
    The result is returned in the position basis.
    """
    m, s = spec.label(m, s)
    N = spec.N
    l = s * spec.dq / spec.hbar
    x = 2 * math.pi * m * s / N
    integral = 1.0 if x == 0 else (np.exp(1j * x) - 1) / (1j * x)
    r = np.arange(N)
    Pm = np.zeros((N, N), dtype=complex)
    Pm[(r + m) % N, r] = np.exp(1j * l * spec.momenta) * integral
    # <q_j|p_r> = exp(2 pi i j r / N)/sqrt(N)
    U = np.exp(2j * np.pi * np.outer(r, r) / N) / math.sqrt(N)
    return U @ Pm @ U.conj().T


def grid_quantum_bracket(A: GridOperator, B: GridOperator) -> GridOperator:
    """(-i/hbar)(AB - BA) on the grid."""
    _check_spec(A, B)
    C = A.entries @ B.entries - B.entries @ A.entries
    return GridOperator(A.spec, (-1j / A.spec.hbar) * C)


# builtin phase-space functions and states

def harper(spec: GridSpec) -> PhaseSpaceGridFunction:
    """H = -cos(2 pi q/L) - cos(2 pi p/P)."""
    return PhaseSpaceGridFunction.from_callable(
        spec, lambda q, p: -np.cos(2 * np.pi * q / spec.L) - np.cos(2 * np.pi * p / spec.P))


def mixed_component(spec: GridSpec, m: int, s: int) -> PhaseSpaceGridFunction:
    """cos(k_m q + l_s p)."""
    k, l = spec.wavenumber(m), spec.displacement_param(s)
    return PhaseSpaceGridFunction.from_callable(spec, lambda q, p: np.cos(k * q + l * p))


def cos_q(spec: GridSpec, m: int = 1) -> PhaseSpaceGridFunction:
    k = spec.wavenumber(m)
    return PhaseSpaceGridFunction.from_callable(spec, lambda q, p: np.cos(k * q) + 0 * p)


def constant_function(spec: GridSpec, c: complex = 1.0) -> PhaseSpaceGridFunction:
    return PhaseSpaceGridFunction(spec, np.full((spec.N, spec.N), c, dtype=complex))


def gaussian_state(spec: GridSpec, q0: float | None = None, p0: float = 0.0, width: float | None = None) -> GridState:
    """Normalized Gaussian packet centred at (q0, p0); default width sqrt(hbar)."""
    q0 = spec.L / 2 if q0 is None else q0
    width = math.sqrt(spec.hbar) if width is None else width
    x = spec.positions - q0
    psi = np.exp(-x**2 / (2 * width**2) + 1j * p0 * x / spec.hbar)
    return GridState(spec, psi).normalized()


def excited_state(spec: GridSpec) -> GridState:
    """psi_j ~ (q_j - L/2) exp(-(q_j - L/2)^2 / (2 hbar)), normalized."""
    x = spec.positions - spec.L / 2
    return GridState(spec, x * np.exp(-x**2 / (2 * spec.hbar))).normalized()


def gaussian_excited_projector(spec: GridSpec) -> GridOperator:
    return excited_state(spec).projector()
