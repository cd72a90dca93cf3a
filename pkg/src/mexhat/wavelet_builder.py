"""Admissible Hermite-Gaussian mother wavelets.

A coefficient vector g defines

    psi(x) = pi^(-1/4) exp(-x^2/2) P(x),   P = sum_n g[n] H_n(x) / 2^(n/2),

and psi has zero mean exactly when sum_n (2n-1)!! g[2n] = 0. Odd slots
are unconstrained. Even-power coefficients of P stay exact rationals; odd
slots pick up a factor sqrt(2) and are carried as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AdmissibilityError, DegenerateInputError, DivergenceError, ParameterError
from .fock_space import GCoefficients, admissibility_residual
from .math_core import (
    DEFAULT_QUADRATURE_ORDER,
    PI_QUARTER,
    Polynomial,
    admissibility_weight,
    evaluate as poly_eval,
    gauss_hermite_rule,
    hermite_functions,
    hermite_poly,
)

ADMISSIBILITY_TOL = 1e-12
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class MotherWavelet:
    """psi(x) = pi^(-1/4) exp(-x^2/2) envelope(x), with its defining g."""

    g: GCoefficients
    envelope: Polynomial
    normalized: bool = False

    def __call__(self, x):
        return evaluate(self, x)

    @property
    def degree(self) -> int:
        return self.envelope.degree


def envelope_from_g(g) -> Polynomial:
    """sum_n g[n] H_n / 2^(n/2), exact on even powers."""
    g = GCoefficients(g)
    out = [0] * len(g)
    for n, gn in enumerate(g):
        if gn == 0:
            continue
        h = hermite_poly(n).coeffs
        if n % 2 == 0:
            div = 2 ** (n // 2)
            for k, c in enumerate(h):
                if c:
                    out[k] += gn * Fraction(c, div)
        else:
            div = 2 ** ((n + 1) // 2)
            for k, c in enumerate(h):
                if c:
                    out[k] += float(gn * Fraction(c, div)) * SQRT2
    return Polynomial(tuple(_simplify(c) for c in out))


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def build_wavelet(g, normalize: bool = False, check: bool = True) -> MotherWavelet:
    """Build the wavelet for ``g``.

    ``check=False`` skips the admissibility gate; only meant for negative
    tests and for non-wavelet signals of the same shape.
    """
    g = GCoefficients(g)
    if check:
        residual = admissibility_residual(g)
        if abs(residual) > ADMISSIBILITY_TOL:
            raise AdmissibilityError(residual)
    w = MotherWavelet(g=g, envelope=envelope_from_g(g))
    if normalize:
        norm = l2_norm(w)
        if norm == 0:
            raise ParameterError("cannot normalize the zero wavelet")
        g = g.scaled(1.0 / norm)
        w = MotherWavelet(g=g, envelope=envelope_from_g(g), normalized=True)
    return w


def solve_free_coefficient(g_partial, free_index: int) -> GCoefficients:
    """Set ``g[free_index]`` so that the weighted even sum vanishes."""
    if free_index < 0 or free_index % 2:
        raise ParameterError("free_index must be an even nonnegative integer; "
                             "odd slots carry zero weight")
    g = GCoefficients(g_partial)
    vals = g.padded(max(len(g), free_index + 1))
    vals[free_index] = Fraction(0)
    rest = admissibility_residual(vals)
    vals[free_index] = -rest / admissibility_weight(free_index // 2)
    return GCoefficients(vals)


def project_admissible(g: Sequence) -> GCoefficients:
    """Orthogonal projection of the even slots onto the admissible hyperplane.

    The even slots considered are those within the length of ``g`` as
    given (before any trailing-zero trimming), so ``[1, 0, 0]`` projects
    over slots 0 and 2.
    """
    length = len(g)
    vals = GCoefficients(g).padded(length)
    evens = range(0, length, 2)
    w = {k: admissibility_weight(k // 2) for k in evens}
    ww = sum(v * v for v in w.values())
    if ww == 0:
        raise DegenerateInputError("no coefficients to project")
    coef = sum((w[k] * vals[k] for k in evens), Fraction(0)) / ww
    for k in evens:
        vals[k] -= coef * w[k]
    out = GCoefficients(vals)
    if len(out) == 0:
        raise DegenerateInputError("projection annihilates the input")
    return out


def evaluate(w: MotherWavelet, x):
    x = np.asarray(x, dtype=float)
    val = PI_QUARTER * np.exp(-0.5 * x * x) * poly_eval(w.envelope, x)
    return val if np.ndim(val) else float(val)


def integral_check(w: MotherWavelet, order: int = DEFAULT_QUADRATURE_ORDER) -> float:
    """Integral of psi over the real line (x = sqrt(2) u makes the weight exp(-u^2))."""
    rule = gauss_hermite_rule(order)
    vals = poly_eval(w.envelope, SQRT2 * rule.nodes)
    return PI_QUARTER * SQRT2 * float(np.dot(rule.weights, vals))


def l2_norm(w: MotherWavelet, order: int = DEFAULT_QUADRATURE_ORDER) -> float:
    rule = gauss_hermite_rule(order)
    vals = poly_eval(w.envelope, rule.nodes)
    return math.sqrt(float(np.dot(rule.weights, vals * vals)) / math.sqrt(math.pi))


class Crossings(NamedTuple):
    count: int
    locations: np.ndarray


def _bisect(p: Polynomial, lo: float, hi: float, flo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = float(poly_eval(p, mid))
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zero_crossings(w: MotherWavelet, step: float = 1e-3, tol: float = 1e-12) -> Crossings:
    """Sign changes of psi, i.e. odd-multiplicity real roots of the envelope.

    Scans [-R, R], R = max(8, 2 sqrt(deg P)), then bisects each bracket.
    """
    p = w.envelope
    if p.is_zero():
        raise ParameterError("zero envelope has no well-defined crossings")
    radius = max(8.0, 2.0 * math.sqrt(max(p.degree, 0)))
    npts = int(math.ceil(2 * radius / step)) + 1
    xs = np.linspace(-radius, radius, npts)
    signs = np.sign(poly_eval(p, xs))
    nz = np.flatnonzero(signs)
    roots = []
    for j, k in zip(nz[:-1], nz[1:]):
        if signs[j] == signs[k]:
            continue
        if k == j + 1:
            roots.append(_bisect(p, xs[j], xs[k], float(poly_eval(p, xs[j])), tol))
        else:
            # exact zeros on the grid between the brackets
            roots.append(0.5 * (xs[j + 1] + xs[k - 1]))
    locs = np.array(roots)
    return Crossings(len(roots), locs)


def fourier_amplitude(w: MotherWavelet, omega) -> np.ndarray:
    """Unitary Fourier transform of psi.

    Uses the oscillator eigenfunction property: psi_n maps to (-i)^n psi_n.
    """
    g = w.g
    omega = np.asarray(omega, dtype=float)
    if len(g) == 0:
        return np.zeros(omega.shape, dtype=complex)
    funcs = hermite_functions(len(g) - 1, omega)
    out = np.zeros(omega.shape, dtype=complex)
    for n, gn in enumerate(g):
        if gn:
            out += float(gn) * math.sqrt(math.factorial(n)) * (-1j) ** n * funcs[n]
    return out


def _log_panel_integral(w: MotherWavelet, t_lo: float, t_hi: float, panels: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(12)
    edges = np.linspace(t_lo, t_hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = mid[:, None] + half[:, None] * nodes[None, :]
    vals = np.abs(fourier_amplitude(w, np.exp(t))) ** 2
    return float(np.sum(half[:, None] * weights[None, :] * vals))


def admissibility_constant(w: MotherWavelet, eps: float = 1e-8, omega_max: float = 40.0) -> float:
    """C = integral of |psi_hat(omega)|^2 / |omega| over the real line.

    With omega = e^t the integrand becomes |psi_hat(e^t)|^2 dt, which decays
    like e^(2t) as t -> -inf iff psi_hat(0) = 0. The band [eps^2, eps] is
    integrated separately; any appreciable mass there means log growth.
    """
    t_lo, t_hi = math.log(eps), math.log(omega_max)
    body = 2.0 * _log_panel_integral(w, t_lo, t_hi, 400)
    probe = 2.0 * _log_panel_integral(w, 2.0 * t_lo, t_lo, 50)
    if probe > 1e-8 * max(1.0, body):
        raise DivergenceError(
            f"admissibility integral grows under refinement (extra {probe:.3g} from "
            f"[{eps ** 2:.0e}, {eps:.0e}]); psi_hat(0) != 0")
    return body
