"""Daughter wavelets and the continuous wavelet transform

    W f(mu, s) = mu^(-1/2) * integral f(x) conj(psi((x - s) / mu)) dx

over closed-form Hermite-Gaussian signals (Gauss-Hermite, exact) and over
sampled signals (trapezoid on the signal's own grid).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CoverageWarning, ParameterError
from .math_core import DEFAULT_QUADRATURE_ORDER, PI_QUARTER, Polynomial, evaluate as poly_eval, gauss_hermite_rule
from .wavelet_builder import MotherWavelet, evaluate as wavelet_eval

#: Daughter wavelets are cut off at |x - s| > WINDOW * mu; exp(-32) ~ 1e-14.
WINDOW = 8.0

try:
    _trapezoid = np.trapezoid
except AttributeError:  # numpy < 2
    _trapezoid = np.trapz


def _check_mu(mu):
    if not mu > 0:
        raise ParameterError(f"scale mu must be positive, got {mu!r}")


@dataclass(frozen=True)
class HermiteSignal:
    """f(x) = amplitude * pi^(-1/4) exp(-u^2/2) envelope(u), u = (x - shift) / width.

    Mother wavelets are the case amplitude = 1, shift = 0, width = 1.
    """

    envelope: Polynomial
    shift: float = 0.0
    width: float = 1.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise ParameterError("width must be positive")

    @classmethod
    def from_wavelet(cls, w: MotherWavelet) -> "HermiteSignal":
        return cls(envelope=w.envelope)

    def __call__(self, x):
        u = (np.asarray(x, dtype=float) - self.shift) / self.width
        return self.amplitude * PI_QUARTER * np.exp(-0.5 * u * u) * poly_eval(self.envelope, u)

    def shifted(self, a: float) -> "HermiteSignal":
        """x -> f(x - a)."""
        return replace(self, shift=self.shift + a)

    def dilated(self, c: float) -> "HermiteSignal":
        """x -> c^(-1/2) f(x / c)."""
        if not c > 0:
            raise ParameterError("dilation factor must be positive")
        return replace(self, shift=self.shift * c, width=self.width * c,
                       amplitude=self.amplitude / math.sqrt(c))


@dataclass(frozen=True)
class SampledSignal:
    xs: np.ndarray
    fs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        fs = np.asarray(self.fs)
        if not np.iscomplexobj(fs):
            fs = fs.astype(float)
        if xs.ndim != 1 or xs.shape != fs.shape:
            raise ParameterError("xs and fs must be 1-D arrays of equal length")
        if xs.size < 2:
            raise ParameterError("a sampled signal needs at least two points")
        if not np.all(np.diff(xs) > 0):
            raise ParameterError("signal grid must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "fs", fs)

    @classmethod
    def from_function(cls, fn, xs) -> "SampledSignal":
        xs = np.asarray(xs, dtype=float)
        return cls(xs, fn(xs))


@dataclass(frozen=True)
class Scalogram:
    """values[i, j] = W f(mus[i], ss[j]); ``covered`` flags cells whose
    daughter window fit inside the signal grid."""

    mus: np.ndarray
    ss: np.ndarray
    values: np.ndarray
    covered: np.ndarray = field(default=None)

    def __post_init__(self):
        if np.any(np.asarray(self.mus) <= 0):
            raise ParameterError("all scales must be positive")
        if np.shape(self.values) != (len(self.mus), len(self.ss)):
            raise ParameterError("values shape does not match the (mu, s) grid")


def daughter_eval(w: MotherWavelet, mu: float, s: float, x):
    """mu^(-1/2) psi((x - s) / mu)."""
    _check_mu(mu)
    return wavelet_eval(w, (np.asarray(x, dtype=float) - s) / mu) / math.sqrt(mu)


def transform_analytic(w: MotherWavelet, f, mu: float, s: float,
                       order: int = DEFAULT_QUADRATURE_ORDER):
    """W f(mu, s) for a Hermite-Gaussian signal, exact up to rounding.

    The two Gaussians combine into one centred at x0 with curvature a, after
    which Gauss-Hermite in u = sqrt(a) (x - x0) integrates the polynomial
    product exactly.
    """
    _check_mu(mu)
    if isinstance(f, MotherWavelet):
        f = HermiteSignal.from_wavelet(f)
    if f.envelope.is_zero() or w.envelope.is_zero() or f.amplitude == 0:
        return 0.0
    sig2, mu2 = f.width ** 2, mu * mu
    a = 0.5 * (1.0 / sig2 + 1.0 / mu2)
    x0 = (f.shift / sig2 + s / mu2) / (2.0 * a)
    log_k = -((f.shift - s) ** 2) / (2.0 * (sig2 + mu2))
    rule = gauss_hermite_rule(order)
    x = x0 + rule.nodes / math.sqrt(a)
    prod = poly_eval(f.envelope, (x - f.shift) / f.width) * poly_eval(w.envelope, (x - s) / mu)
    total = math.exp(log_k) / math.sqrt(a) * float(np.dot(rule.weights, prod))
    value = f.amplitude * math.pi ** -0.5 * total / math.sqrt(mu)
    if isinstance(value, complex) and value.imag == 0:
        return value.real
    return value


def _sampled_cell(w: MotherWavelet, f: SampledSignal, mu: float, s: float):
    lo, hi = s - WINDOW * mu, s + WINDOW * mu
    covered = bool(f.xs[0] <= lo and f.xs[-1] >= hi)
    mask = (f.xs >= lo) & (f.xs <= hi)
    if np.count_nonzero(mask) < 2:
        return 0.0, covered
    xs = f.xs[mask]
    integrand = f.fs[mask] * np.conj(daughter_eval(w, mu, s, xs))
    value = _trapezoid(integrand, xs)
    if np.iscomplexobj(value):
        value = complex(value)
    else:
        value = float(value)
    return value, covered


def transform_sampled(w: MotherWavelet, f: SampledSignal, mu: float, s: float):
    """Trapezoid estimate of W f(mu, s) on the signal grid.

    Emits CoverageWarning when the grid misses part of [s - 8 mu, s + 8 mu].
    """
    _check_mu(mu)
    value, covered = _sampled_cell(w, f, mu, s)
    if not covered:
        warnings.warn(
            f"signal grid [{f.xs[0]}, {f.xs[-1]}] does not cover the daughter window "
            f"[{s - WINDOW * mu}, {s + WINDOW * mu}] at mu={mu}, s={s}",
            CoverageWarning, stacklevel=2)
    return value


def scalogram(w: MotherWavelet, f: SampledSignal, mus, ss) -> Scalogram:
    """Transform over the (mu, s) grid; undercovered cells are flagged, not warned per cell."""
    mus = np.asarray(mus, dtype=float).ravel()
    ss = np.asarray(ss, dtype=float).ravel()
    for mu in mus:
        _check_mu(mu)
    dtype = complex if np.iscomplexobj(f.fs) else float
    values = np.zeros((mus.size, ss.size), dtype=dtype)
    covered = np.zeros((mus.size, ss.size), dtype=bool)
    for i, mu in enumerate(mus):
        for j, s in enumerate(ss):
            values[i, j], covered[i, j] = _sampled_cell(w, f, mu, s)
    return Scalogram(mus=mus, ss=ss, values=values, covered=covered)
