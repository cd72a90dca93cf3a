"""Self-check suite behind ``mexhat validate``.

``quick`` covers the exact identities; ``full`` adds the quadrature and
operator cross-checks. ``weight_fn`` replaces the weight table for the
checks that consume it, so a harness can confirm a broken table is caught.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fock_space import GCoefficients, p0_overlap, weight_via_coherent_integral
from .math_core import admissibility_weight, hermite_poly
from .operator_lab import oracle_matrix, pure_squeeze_check, squeeze_translate_matrix, two_route_equivalence
from .wavelet_builder import build_wavelet, integral_check, project_admissible, zero_crossings

REFERENCE_CASES = {
    "case1": ([0.5, 0, -0.5], (1, 0, -1)),
    "case2": ([-1, 0, -2, 0, 1], (4, 0, -16, 0, 4)),
    "case2-variant": ([-2, 0, -1, 0, 1], (2, 0, -14, 0, 4)),
    "case3": ([1, 0, 2, 0, 4, 0, -1], (26, 0, -134, 0, 76, 0, -8)),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}  ({self.detail}; {self.seconds:.3f}s)"


def _weighted_sum(g, weight_fn) -> float:
    g = GCoefficients(g)
    return sum(weight_fn(n) * g[2 * n] for n in range((len(g) + 1) // 2))


def check_weight_table(weight_fn):
    got = tuple(weight_fn(n) for n in range(5))
    want = tuple(math.factorial(2 * n) // (math.factorial(n) * 2 ** n) for n in range(5))
    return got == want, f"got {got}, factorial formula {want}"


def check_hermite_identities(weight_fn):
    h2 = tuple(c // 2 for c in hermite_poly(2).coeffs)
    h4 = tuple(c // 4 for c in hermite_poly(4).coeffs)
    h6 = tuple(c // 8 for c in hermite_poly(6).coeffs)
    ok = h2 == (-1, 0, 2) and h4 == (3, 0, -12, 0, 4) and h6 == (-15, 0, 90, 0, -60, 0, 8)
    return ok, f"H2/2={h2}, H4/4={h4}, H6/8={h6}"


def check_constraint_cases(weight_fn):
    sums = {name: _weighted_sum(g, weight_fn) for name, (g, _) in REFERENCE_CASES.items()}
    return all(v == 0 for v in sums.values()), f"weighted sums {sums}"


def check_envelopes(weight_fn):
    bad = [name for name, (g, env) in REFERENCE_CASES.items()
           if build_wavelet(g).envelope.coeffs != env]
    return not bad, "all exact" if not bad else f"mismatch in {bad}"


def check_integrals(weight_fn):
    vals = {name: integral_check(build_wavelet(g)) for name, (g, _) in REFERENCE_CASES.items()}
    worst = max(abs(v) for v in vals.values())
    return worst < 1e-12, f"max |integral| = {worst:.2e}"


def check_crossings(weight_fn):
    counts = tuple(zero_crossings(build_wavelet(REFERENCE_CASES[k][0])).count
                   for k in ("case1", "case2", "case3"))
    return counts == (2, 4, 6), f"counts {counts}"


def check_coherent_oracle(weight_fn):
    rel = max(abs(weight_via_coherent_integral(n) - weight_fn(n)) / weight_fn(n) for n in range(5))
    return rel < 1e-5, f"max relative deviation {rel:.2e}"


def check_bridge(weight_fn, trials: int = 200, seed: int = 20240501):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        g = project_admissible(list(rng.uniform(-2, 2, size=rng.integers(2, 13))))
        w = build_wavelet(g)
        worst = max(worst, abs(integral_check(w) - math.sqrt(2 * math.pi) * p0_overlap(g)))
    return worst < 1e-9, f"max |integral - sqrt(2 pi) p0| = {worst:.2e}"


def check_two_route(weight_fn):
    mus, ss = np.linspace(0.5, 2, 5), np.linspace(-2, 2, 5)
    case1, case2 = REFERENCE_CASES["case1"][0], REFERENCE_CASES["case2"][0]
    d64 = two_route_equivalence(case1, case2, mus, ss, 64)
    d48 = two_route_equivalence(case1, case2, mus, ss, 48)
    d96 = two_route_equivalence(case1, case2, mus, ss, 96)
    return d64 < 1e-6 and d96 <= d48, f"dim64 {d64:.2e}, dim48 {d48:.2e}, dim96 {d96:.2e}"


def check_squeeze(weight_fn):
    devs = [pure_squeeze_check(mu, 64).max_deviation for mu in (0.5, 2.0)]
    vac = [abs(squeeze_translate_matrix(mu, 0.0, 64).entries[0, 0] - math.sqrt(2 * mu / (1 + mu * mu)))
           for mu in (0.5, 2.0)]
    return max(devs) < 1e-8 and max(vac) < 1e-12, f"block dev {max(devs):.2e}, vacuum dev {max(vac):.2e}"


def check_matrix_oracle(weight_fn):
    worst = 0.0
    for mu in (0.5, 1.0, math.e, 2.0):
        for s in (0.0, 1.0, -1.0):
            u = squeeze_translate_matrix(mu, s, 64).entries[:13, :13]
            worst = max(worst, float(np.max(np.abs(u - oracle_matrix(mu, s, 13)))))
    return worst < 1e-8, f"max element deviation {worst:.2e}"


QUICK: list[tuple[str, Callable]] = [
    ("weight-table", check_weight_table),
    ("hermite-identities", check_hermite_identities),
    ("constraint-cases", check_constraint_cases),
    ("reference-envelopes", check_envelopes),
    ("admissibility-integrals", check_integrals),
    ("zero-crossings", check_crossings),
]
FULL: list[tuple[str, Callable]] = QUICK + [
    ("coherent-oracle", check_coherent_oracle),
    ("bridge-identity", check_bridge),
    ("two-route-equivalence", check_two_route),
    ("squeeze-special-case", check_squeeze),
    ("matrix-element-oracle", check_matrix_oracle),
]


def run_checks(level: str = "quick", weight_fn: Callable[[int], int] = admissibility_weight):
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    results = []
    for name, fn in (QUICK if level == "quick" else FULL):
        t0 = time.perf_counter()
        try:
            ok, detail = fn(weight_fn)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return results
