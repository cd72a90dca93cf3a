"""Truncated number-basis states, oscillator wavefunctions and the p = 0
projection functional.

A wavelet state is written as ``G(a^dagger)|0>`` with real coefficients
``g[n]`` on ``a^dagger**n``. Since ``a^dagger**n |0> = sqrt(n!) |n>``, the
number-basis amplitudes are ``g[n] * sqrt(n!)``; these states are not
normalized in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import AccuracyError, ParameterError, TruncationError
from .math_core import PI_QUARTER, admissibility_weight, hermite_functions

DEFAULT_DIM = 64
TAIL_WIDTH = 4


def _to_exact(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, (float, np.floating, np.integer)):
        v = float(v)
        if not math.isfinite(v):
            raise ParameterError("g coefficients must be finite")
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise ParameterError(f"g coefficients must be real numbers, got {v!r}")


@dataclass(frozen=True)
class GCoefficients:
    """Coefficients ``g[n]`` of ``a^dagger**n`` acting on the vacuum.

    Stored as exact rationals (floats convert without rounding) with
    trailing zeros trimmed, so the admissibility sum can be tested exactly.
    """

    g: tuple = ()

    def __init__(self, g: Iterable = ()):
        if isinstance(g, GCoefficients):
            vals = g.g
        else:
            vals = [_to_exact(v) for v in g]
        vals = list(vals)
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "g", tuple(vals))

    def __len__(self):
        return len(self.g)

    def __getitem__(self, n):
        return self.g[n] if 0 <= n < len(self.g) else Fraction(0)

    def __iter__(self):
        return iter(self.g)

    def as_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.g], dtype=float)

    def padded(self, length: int) -> list:
        return [self[n] for n in range(length)]

    def scaled(self, alpha) -> "GCoefficients":
        return GCoefficients([_to_exact(alpha) * v for v in self.g])

    def __add__(self, other: "GCoefficients") -> "GCoefficients":
        n = max(len(self), len(other))
        return GCoefficients([self[k] + other[k] for k in range(n)])

    def __repr__(self):
        return f"GCoefficients({[_show(v) for v in self.g]})"


def _show(v: Fraction):
    if v.denominator == 1:
        return int(v)
    if v.denominator <= 10 ** 6:
        return str(v)
    return float(v)


@dataclass(frozen=True)
class FockVector:
    """Complex amplitudes on ``|0>..|dim-1>``."""

    c: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        c = np.array(self.c, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ParameterError("FockVector needs a non-empty 1-D amplitude array")
        if not np.all(np.isfinite(c)):
            raise ParameterError("FockVector amplitudes must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def dim(self) -> int:
        return self.c.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    def tail_mass(self, width: int = TAIL_WIDTH) -> float:
        """Sum of |c[n]|^2 over the top ``width`` number states."""
        return float(np.sum(np.abs(self.c[-width:]) ** 2))

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockVector":
        if not 0 <= n < dim:
            raise ParameterError(f"basis index {n} outside dimension {dim}")
        c = np.zeros(dim, dtype=complex)
        c[n] = 1.0
        return cls(c, normalized=True)


def g_to_fock(g, dim: int = DEFAULT_DIM) -> FockVector:
    g = GCoefficients(g)
    if dim < 1:
        raise ParameterError("dim must be positive")
    if len(g) > dim:
        raise TruncationError(f"g has {len(g)} nonzero slots but dim is {dim}")
    c = np.zeros(dim, dtype=complex)
    for n, v in enumerate(g):
        c[n] = float(v) * math.sqrt(math.factorial(n))
    return FockVector(c)


def position_wavefunction(n: int, x):
    """<x|n>, the n-th oscillator eigenfunction (vectorized over x)."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    vals = hermite_functions(n, x)[n]
    return vals if vals.ndim else float(vals)


def coordinate_bra(x: float, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Components <x|n>, n < dim, from the vacuum expansion of |x>.

    |x> = pi^(-1/4) exp(-x^2/2 + sqrt(2) x a^dagger - a^dagger^2/2)|0>. The
    exponential's power series c_k in a^dagger obeys
    (k+1) c_{k+1} = sqrt(2) x c_k - c_{k-1}, and <n|a^dagger^n|0> = sqrt(n!).
    """
    c = np.zeros(dim)
    c[0] = 1.0
    if dim > 1:
        c[1] = math.sqrt(2.0) * x
    for k in range(1, dim - 1):
        c[k + 1] = (math.sqrt(2.0) * x * c[k] - c[k - 1]) / (k + 1)
    sqrt_fact = np.array([math.sqrt(math.factorial(n)) for n in range(dim)])
    return PI_QUARTER * math.exp(-0.5 * x * x) * c * sqrt_fact


def admissibility_residual(g) -> Fraction:
    """Exact sum over n of (2n-1)!! * g[2n]."""
    g = GCoefficients(g)
    return sum((admissibility_weight(n) * g[2 * n] for n in range((len(g) + 1) // 2)), Fraction(0))


def p0_overlap(g) -> float:
    """<p=0|psi> for |psi> = sum_n g[n] a^dagger^n |0>."""
    return PI_QUARTER * float(admissibility_residual(g))


def coherent_p0_overlap(z: complex) -> complex:
    """<p=0|z> for the coherent state |z>, as used in the weight derivation."""
    z = complex(z)
    return PI_QUARTER * np.exp(np.conj(z) ** 2 / 2)


def _polar_integral(n: int, radial_cutoff: float, n_r: int, n_theta: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radial_cutoff * (nodes + 1.0)
    wr = 0.5 * radial_cutoff * weights
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = r[:, None] * np.exp(1j * theta[None, :])
    integrand = np.exp(-np.abs(z) ** 2) * np.conj(z) ** (2 * n) * np.exp(z * z / 2)
    # d^2z / pi = r dr dtheta / pi; trapezoid in theta is a plain mean times 2 pi.
    angular = integrand.mean(axis=1) * 2.0 * np.pi
    return float(np.real(np.sum(wr * r * angular)) / np.pi)


def weight_via_coherent_integral(n: int, radial_cutoff: float = 10.0,
                                 grid: tuple = (256, 256)) -> float:
    """pi^(1/4) <p=0| a^dagger^(2n) |0> via the coherent-state resolution.

    Integrates exp(-|z|^2) conj(z)^(2n) exp(z^2/2) d^2z / pi in polar form:
    Gauss-Legendre in radius on [0, radial_cutoff], trapezoid in angle.
    Should reproduce (2n-1)!!. The grid is doubled once; a relative change
    above 1e-6 raises AccuracyError.
    """
    if not 0 <= n <= 6:
        raise ParameterError("n must lie in [0, 6]")
    if radial_cutoff < 6:
        raise ParameterError("radial_cutoff must be >= 6")
    n_r, n_theta = grid
    if n_r < 200 or n_theta < 200:
        raise ParameterError("grid sizes must be >= 200")
    coarse = _polar_integral(n, radial_cutoff, n_r, n_theta)
    fine = _polar_integral(n, radial_cutoff, 2 * n_r, 2 * n_theta)
    if abs(fine - coarse) > 1e-6 * max(abs(fine), 1e-300):
        raise AccuracyError(f"coherent integral not converged: {coarse!r} -> {fine!r}")
    return fine


def fock_inner(u: FockVector, v: FockVector) -> complex:
    """<u|v>, antilinear in the first slot."""
    if u.dim != v.dim:
        raise ParameterError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return complex(np.vdot(u.c, v.c))
