"""Squeeze-translate operator U(mu, s) on a truncated Fock space.

U(mu, s) = mu^(-1/2) * integral |(x - s)/mu><x| dx, so that
<psi|U(mu, s)|f> is the wavelet transform of f at (mu, s). With
lambda = ln mu the operator factors in normal order as

    U = exp(-s^2 / (2 (1 + mu^2)))
        * exp(-(tanh(lambda)/2) a^dag^2 - (s sech(lambda)/sqrt 2) a^dag)
        * sech(lambda)^(a^dag a + 1/2)
        * exp((tanh(lambda)/2) a^2 + (s (1 - tanh(lambda))/sqrt 2) a).

The lowering factor's linear coefficient is s (1 - tanh)/sqrt 2 =
sqrt 2 s / (1 + mu^2), not s sech/sqrt 2: commuting exp((tanh/2) a^2)
through the displacement's exp(-(s/sqrt 2) a^dag) shifts a -> a - s/sqrt 2.
The two agree only at mu = 1.

The outer factors only raise (resp. lower) the photon number, so
<m|U|n> needs intermediate states k <= min(m, n) and the truncated
product is exact entry by entry; no truncation error enters U itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import ParameterError, TruncationError
from .fock_space import DEFAULT_DIM, FockVector, fock_inner, g_to_fock
from .math_core import hermite_functions
from .transform_engine import HermiteSignal, transform_analytic
from .wavelet_builder import build_wavelet

MIN_DIM = 8
TAIL_TOL = 1e-10


def annihilation(dim: int) -> np.ndarray:
    """Truncated a: <n-1|a|n> = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def _exp_series_coeffs(alpha: float, beta: float, count: int) -> np.ndarray:
    """Taylor coefficients of exp(alpha t^2 + beta t)."""
    c = np.zeros(count)
    c[0] = 1.0
    if count > 1:
        c[1] = beta
    for j in range(1, count - 1):
        c[j + 1] = (beta * c[j] + 2.0 * alpha * c[j - 1]) / (j + 1)
    return c


def raising_exponential(alpha: float, beta: float, dim: int) -> np.ndarray:
    """exp(alpha a^dag^2 + beta a^dag) truncated to dim x dim.

    a^dag^j |k> = sqrt((k+j)!/k!) |k+j>, so entry (i, k) is the j = i - k
    series coefficient times that ladder factor.
    """
    c = _exp_series_coeffs(alpha, beta, dim)
    lg = np.array([math.lgamma(n + 1) for n in range(dim)])
    i, k = np.indices((dim, dim))
    j = i - k
    out = np.zeros((dim, dim))
    low = j >= 0
    out[low] = c[j[low]] * np.exp(0.5 * (lg[i[low]] - lg[k[low]]))
    return out


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense U(mu, s) in the number basis.

    ``isometry_defect`` is max | ||U e_n|| - 1 | over n < dim // 4, the only
    place truncation shows up (columns leak into states >= dim).
    """

    entries: np.ndarray
    mu: float
    s: float
    isometry_defect: float

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def lam(self) -> float:
        return math.log(self.mu)

    def __matmul__(self, other):
        if isinstance(other, FockVector):
            return FockVector(self.entries @ other.c)
        if isinstance(other, OperatorMatrix):
            return self.entries @ other.entries
        return self.entries @ other


def _factors(mu: float, s: float, dim: int):
    tanh = (mu * mu - 1.0) / (mu * mu + 1.0)
    sech = 2.0 * mu / (1.0 + mu * mu)
    left = raising_exponential(-0.5 * tanh, -s * sech / math.sqrt(2.0), dim)
    middle = sech ** (np.arange(dim) + 0.5)
    # exp(alpha a^2 + beta a) is the transpose of the raising form.
    right = raising_exponential(0.5 * tanh, s * (1.0 - tanh) / math.sqrt(2.0), dim).T
    prefactor = math.exp(-s * s / (2.0 * (1.0 + mu * mu)))
    return prefactor, left, middle, right


def squeeze_translate_matrix(mu: float, s: float, dim: int = DEFAULT_DIM) -> OperatorMatrix:
    if not mu > 0:
        raise ParameterError(f"mu must be positive, got {mu!r}")
    if dim < MIN_DIM:
        raise ParameterError(f"dim must be >= {MIN_DIM}, got {dim}")
    prefactor, left, middle, right = _factors(mu, s, dim)
    u = (left * middle[None, :]) @ right
    u *= prefactor
    low = dim // 4
    defect = float(np.max(np.abs(np.linalg.norm(u[:, :low], axis=0) - 1.0)))
    u.setflags(write=False)
    return OperatorMatrix(entries=u, mu=float(mu), s=float(s), isometry_defect=defect)


def _oracle_nodes(mu: float, s: float, nmax: int, panels: int = 96, points: int = 20):
    reach = 12.0 + math.sqrt(2.0 * nmax + 1.0)
    lo = min(-reach, s - reach * mu)
    hi = max(reach, s + reach * mu)
    t, wt = np.polynomial.legendre.leggauss(points)
    if points % 2:
        raise ParameterError("use an even number of nodes per panel")
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    w = (half[:, None] * wt[None, :]).ravel()
    return x, w


def oracle_matrix(mu: float, s: float, size: int) -> np.ndarray:
    """<m|U|n> for m, n < size straight from the integral definition.

    Composite Gauss-Legendre on a window covering both the plain and the
    dilated Hermite functions.
    """
    if not mu > 0:
        raise ParameterError(f"mu must be positive, got {mu!r}")
    x, w = _oracle_nodes(mu, s, size - 1)
    if s == 0:
        # fold x and -x pairwise so parity-forbidden elements cancel exactly
        half = x.size // 2
        x, w = x[half:], w[half:]
        pos = (hermite_functions(size - 1, x / mu) * w) @ hermite_functions(size - 1, x).T
        neg = (hermite_functions(size - 1, -x / mu) * w) @ hermite_functions(size - 1, -x).T
        return (pos + neg) / math.sqrt(mu)
    phi_scaled = hermite_functions(size - 1, (x - s) / mu)
    phi = hermite_functions(size - 1, x)
    return (phi_scaled * w) @ phi.T / math.sqrt(mu)


def matrix_element_oracle(mu: float, s: float, m: int, n: int) -> float:
    if m < 0 or n < 0:
        raise ParameterError("indices must be nonnegative")
    return float(oracle_matrix(mu, s, max(m, n) + 1)[m, n])


class SqueezeReport(NamedTuple):
    max_deviation: float
    block: int


def squeeze_generator_expm(mu: float, dim: int) -> np.ndarray:
    """exp((lambda/2)(a^2 - a^dag^2)) in the truncated space (Pade scaling-and-squaring)."""
    a = annihilation(dim)
    lam = math.log(mu)
    return scipy.linalg.expm(0.5 * lam * (a @ a - a.T @ a.T))


def pure_squeeze_check(mu: float, dim: int = DEFAULT_DIM) -> SqueezeReport:
    """Compare the factorized U(mu, 0) with the squeeze exponential on the top-left quarter."""
    block = dim // 4
    u = squeeze_translate_matrix(mu, 0.0, dim).entries
    ref = squeeze_generator_expm(mu, dim)
    dev = float(np.max(np.abs(u[:block, :block] - ref[:block, :block])))
    return SqueezeReport(dev, block)


def quantum_transform(psi: FockVector, f: FockVector, mu: float, s: float) -> complex:
    """<psi|U(mu, s)|f>."""
    if psi.dim != f.dim:
        raise ParameterError(f"dimension mismatch: {psi.dim} vs {f.dim}")
    u = squeeze_translate_matrix(mu, s, psi.dim)
    return fock_inner(psi, u @ f)


def two_route_equivalence(psi_g, f_g, mus, ss, dim: int = DEFAULT_DIM) -> float:
    """max |<psi|U|f> - W_psi f| over the (mu, s) grid.

    ``psi_g`` must be admissible; ``f_g`` is any signal in the same form.
    """
    psi_vec = g_to_fock(psi_g, dim)
    f_vec = g_to_fock(f_g, dim)
    for name, vec in (("psi", psi_vec), ("f", f_vec)):
        tail = vec.tail_mass()
        if tail > TAIL_TOL:
            raise TruncationError(f"{name} tail mass {tail:.3g} exceeds {TAIL_TOL:g} at dim={dim}")
    wavelet = build_wavelet(psi_g)
    signal = HermiteSignal(build_wavelet(f_g, check=False).envelope)
    worst = 0.0
    for mu in np.asarray(mus, dtype=float).ravel():
        for s in np.asarray(ss, dtype=float).ravel():
            q = quantum_transform(psi_vec, f_vec, mu, s)
            c = transform_analytic(wavelet, signal, mu, s)
            worst = max(worst, abs(q - c))
    return worst
