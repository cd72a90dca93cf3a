"""Exact polynomials, physicists' Hermite polynomials, double-factorial
weights and Gauss-Hermite quadrature.

Polynomial coefficients are plain Python numbers. Integers and
``fractions.Fraction`` stay exact under every operation here; floats are
only introduced when a caller mixes them in (or at evaluation time).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Sequence

import numpy as np

from .errors import CapacityError, ParameterError

#: Largest n for which every coefficient of H_n is finite as a float64.
MAX_HERMITE_DEGREE = 262
#: Largest n for which (2n-1)!! is finite as a float64.
MAX_WEIGHT_INDEX = 150
#: Supported Gauss-Hermite orders.
MAX_QUADRATURE_ORDER = 256
DEFAULT_QUADRATURE_ORDER = 64

PI_QUARTER = math.pi ** -0.25


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial, ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are trimmed on construction, so the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        for c in self.coeffs:
            if not isinstance(c, Number):
                raise ParameterError(f"non-numeric coefficient {c!r}")
            if isinstance(c, float) and not math.isfinite(c):
                raise ParameterError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def astype_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    n = max(len(p), len(q))
    return Polynomial(tuple(p[k] + q[k] for k in range(n)))


def scale(p: Polynomial, alpha) -> Polynomial:
    return Polynomial(tuple(alpha * c for c in p.coeffs))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Polynomial(tuple(out))


def evaluate(p: Polynomial, x):
    """Horner evaluation in float64 (complex inputs are passed through)."""
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=np.result_type(x, float))
    for c in reversed(p.coeffs):
        acc = acc * x + float(c)
    return acc if acc.ndim else acc[()]


@lru_cache(maxsize=None)
def _hermite_coeffs(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev, cur = (1,), (0, 2)
    for k in range(1, n):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, tuple(nxt)
    return cur


def hermite_poly(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n with exact integer coefficients.

    Built from ``H_{n+1} = 2x H_n - 2n H_{n-1}``. Raises CapacityError above
    ``MAX_HERMITE_DEGREE``, past which some coefficient overflows float64.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterError(f"Hermite degree must be a nonnegative integer, got {n!r}")
    if n > MAX_HERMITE_DEGREE:
        raise CapacityError(f"H_{n} exceeds float64 range (max degree {MAX_HERMITE_DEGREE})")
    return Polynomial(_hermite_coeffs(int(n)))


def admissibility_weight(n: int) -> int:
    """(2n)! / (n! 2^n) = (2n-1)!!, as an exact integer."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterError(f"weight index must be a nonnegative integer, got {n!r}")
    if n > MAX_WEIGHT_INDEX:
        raise CapacityError(f"(2n-1)!! exceeds float64 range for n > {MAX_WEIGHT_INDEX}")
    w = 1
    for k in range(1, int(n) + 1):
        w *= 2 * k - 1
    return w


def hermite_functions(nmax: int, x) -> np.ndarray:
    """Orthonormal Hermite functions psi_0..psi_nmax at ``x``.

    Returns an array of shape ``(nmax + 1,) + shape(x)``. Uses the normalized
    three-term recurrence, which stays O(1) where the raw H_n would overflow.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = PI_QUARTER * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x**2) on the real line."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, fn) -> float:
        """Approximate the integral of ``fn(x) * exp(-x**2)``."""
        return float(np.dot(self.weights, fn(self.nodes)))


@lru_cache(maxsize=None)
def gauss_hermite_rule(m: int) -> QuadratureRule:
    """Golub-Welsch nodes, polished by Newton on the Hermite function psi_m."""
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_QUADRATURE_ORDER:
        raise ParameterError(f"quadrature order must be in [1, {MAX_QUADRATURE_ORDER}], got {m!r}")
    m = int(m)
    off = np.sqrt(np.arange(1, m) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    x = np.linalg.eigvalsh(jacobi)

    for _ in range(3):
        psi = hermite_functions(m, x)
        dpsi = math.sqrt(2.0 * m) * psi[m - 1] - x * psi[m]
        x = x - psi[m] / dpsi

    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    if m % 2:
        x[m // 2] = 0.0
    # Christoffel-Darboux at a root of psi_m: sum_k p_k(x)^2 = m p_{m-1}(x)^2.
    psi_prev = hermite_functions(m - 1, x)[m - 1]
    w = np.exp(-x * x) / (m * psi_prev ** 2)
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(nodes=x, weights=w, order=m)


def gaussian_moment(k: int):
    """Exact value of the integral of x^k exp(-x^2) divided by sqrt(pi)."""
    if k % 2:
        return Fraction(0)
    return Fraction(admissibility_weight(k // 2), 2 ** (k // 2))
