"""Command-line front end: ``mexhat build|sample|cwt|validate``.

Config files are flat ``key = value`` lines; ``#`` starts a comment.
Repeated keys and comma-separated values both accumulate into lists::

    g = 1/2, 0, -1/2        # or g_partial = ... with free_index = k
    project = false
    normalize = false
    sample_range = -5, 5
    sample_count = 1001
    signal = signal.csv     # cwt only; relative to the config file
    mu = 0.5, 1, 2
    s = -1, 0, 1

Exit status: 0 ok, 1 validation/admissibility failure, 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import AdmissibilityError, ConfigError, DegenerateInputError, MexhatError
from .fock_space import GCoefficients, admissibility_residual, p0_overlap
from .transform_engine import SampledSignal, scalogram
from .validation import run_checks
from .wavelet_builder import (
    MotherWavelet,
    build_wavelet,
    evaluate,
    l2_norm,
    project_admissible,
    solve_free_coefficient,
    zero_crossings,
)

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2
KNOWN_KEYS = {"g", "g_partial", "free_index", "project", "normalize", "sample_range",
              "sample_count", "signal", "mu", "s", "output", "format"}


def parse_config(text: str, path=None) -> dict:
    entries: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", path, lineno)
        items = [v.strip() for v in value.split(",")]
        if any(not v for v in items):
            raise ConfigError(f"empty value for {key!r}", path, lineno)
        entries.setdefault(key, []).extend(items)
    return entries


def _bool(values, key):
    v = values[-1].lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, got {values[-1]!r}")


def _numbers(values, key, kind=float):
    try:
        return [kind(v) for v in values]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key} must be numeric, got {values!r}") from None


@dataclass
class WaveletSpec:
    mode: str  # "direct" | "projected" | "solved"
    g: list
    free_index: int | None = None
    normalize: bool = False
    sample_range: tuple = (-5.0, 5.0)
    sample_count: int = 1001

    def __post_init__(self):
        if self.sample_count < 2:
            raise ConfigError("sample_count must be >= 2")
        lo, hi = self.sample_range
        if not lo < hi:
            raise ConfigError("sample_range needs lo < hi")

    @classmethod
    def from_entries(cls, e: dict) -> "WaveletSpec":
        has_g, has_partial = "g" in e, "g_partial" in e
        if has_g == has_partial:
            raise ConfigError("define the wavelet with exactly one of 'g' or 'g_partial'")
        project = _bool(e["project"], "project") if "project" in e else False
        if has_partial:
            if project:
                raise ConfigError("'project' applies to 'g', not 'g_partial'")
            if "free_index" not in e:
                raise ConfigError("'g_partial' needs 'free_index'")
            mode, g = "solved", _numbers(e["g_partial"], "g_partial", Fraction)
            free_index = _numbers(e["free_index"][-1:], "free_index", int)[0]
        else:
            if "free_index" in e:
                raise ConfigError("'free_index' only applies to 'g_partial'")
            mode, g, free_index = ("projected" if project else "direct"), _numbers(e["g"], "g", Fraction), None
        kwargs = {}
        if "sample_range" in e:
            rng = _numbers(e["sample_range"], "sample_range")
            if len(rng) != 2:
                raise ConfigError("sample_range takes exactly two values")
            kwargs["sample_range"] = tuple(rng)
        if "sample_count" in e:
            kwargs["sample_count"] = _numbers(e["sample_count"][-1:], "sample_count", int)[0]
        normalize = _bool(e["normalize"], "normalize") if "normalize" in e else False
        return cls(mode=mode, g=g, free_index=free_index, normalize=normalize, **kwargs)

    def coefficients(self) -> GCoefficients:
        if self.mode == "solved":
            return solve_free_coefficient(self.g, self.free_index)
        if self.mode == "projected":
            return project_admissible(self.g)
        return GCoefficients(self.g)


@dataclass
class RunConfig:
    wavelet: WaveletSpec
    signal_path: Path | None = None
    mu_grid: list = field(default_factory=list)
    s_grid: list = field(default_factory=list)
    output_path: Path | None = None
    output_format: str = "csv"

    @classmethod
    def load(cls, path) -> "RunConfig":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc.strerror}", path) from None
        e = parse_config(text, path)
        try:
            cfg = cls(wavelet=WaveletSpec.from_entries(e))
            if "signal" in e:
                sig = Path(e["signal"][-1])
                cfg.signal_path = sig if sig.is_absolute() else path.parent / sig
            if ("mu" in e) != ("s" in e):
                raise ConfigError("'mu' and 's' grids must be given together")
            if "mu" in e:
                cfg.mu_grid = _numbers(e["mu"], "mu")
                cfg.s_grid = _numbers(e["s"], "s")
                if any(not m > 0 for m in cfg.mu_grid):
                    raise ConfigError("all mu must be positive")
            if "output" in e:
                cfg.output_path = Path(e["output"][-1])
            if "format" in e:
                cfg.output_format = e["format"][-1]
        except ConfigError as exc:
            if exc.path is None:
                raise ConfigError(str(exc), path) from None
            raise
        return cfg


def fmt_number(v) -> str:
    """Shortest round-trip text: integers bare, rationals as p/q, floats via repr."""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    return "0.0" if v == 0 else repr(v)


def sample_grid(lo: float, hi: float, count: int) -> np.ndarray:
    # symmetric formula puts x = 0 exactly on the grid for symmetric ranges
    i = np.arange(count)
    return (lo * (count - 1 - i) + hi * i) / (count - 1)


def render_csv(header: str, rows) -> str:
    out = io.StringIO()
    out.write(header + "\n")
    for row in rows:
        out.write(",".join(fmt_number(v) for v in row) + "\n")
    return out.getvalue()


def render_svg(xs, ys) -> str:
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    if ymax == ymin:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    points = " ".join(f"{fmt_number(x)},{fmt_number(-y)}" for x, y in zip(xs, ys))
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{fmt_number(xmin)} {fmt_number(-ymax)} {fmt_number(xmax - xmin)} {fmt_number(ymax - ymin)}" '
        'preserveAspectRatio="none">\n'
        f'<polyline fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke" '
        f'points="{points}"/>\n'
        "</svg>\n"
    )


def read_signal(path) -> SampledSignal:
    """Two-column ``x,f`` CSV; a non-numeric first line is taken as header."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read signal: {exc.strerror}", path) from None
    xs, fs = [], []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ConfigError(f"expected 2 columns, got {len(parts)}", path, lineno)
        try:
            x, f = float(parts[0]), float(parts[1])
        except ValueError:
            if lineno == 1:
                continue
            raise ConfigError(f"non-numeric value in {line!r}", path, lineno) from None
        if not (math.isfinite(x) and math.isfinite(f)):
            raise ConfigError("non-finite value", path, lineno)
        if xs and x <= xs[-1]:
            raise ConfigError(f"x must be strictly increasing ({x!r} after {xs[-1]!r})", path, lineno)
        xs.append(x)
        fs.append(f)
    if len(xs) < 2:
        raise ConfigError("signal needs at least two samples", path)
    return SampledSignal(np.array(xs), np.array(fs))


def _emit(text: str, output, stdout):
    if output is None:
        stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output: {exc.strerror}", output) from None


def _wavelet_from(spec: WaveletSpec) -> MotherWavelet:
    return build_wavelet(spec.coefficients(), normalize=spec.normalize)


def cmd_build(cfg: RunConfig, stdout=sys.stdout) -> int:
    g = cfg.wavelet.coefficients()
    residual = admissibility_residual(g)
    try:
        w = build_wavelet(g, normalize=cfg.wavelet.normalize)
        admissible = True
    except AdmissibilityError:
        w = build_wavelet(g, normalize=cfg.wavelet.normalize, check=False)
        admissible = False
    crossings = zero_crossings(w) if not w.envelope.is_zero() else None
    lines = [
        f"g: [{', '.join(fmt_number(v) for v in w.g)}]",
        f"envelope: [{', '.join(fmt_number(c) for c in w.envelope.coeffs)}]",
        f"weighted_sum: {fmt_number(residual)}",
        f"p0_overlap: {fmt_number(p0_overlap(w.g))}",
        f"l2_norm: {fmt_number(l2_norm(w))}",
        f"crossings: {crossings.count if crossings else 0}",
        f"crossing_locations: [{', '.join(fmt_number(x) for x in crossings.locations) if crossings else ''}]",
        f"admissible: {'yes' if admissible else 'no'}",
    ]
    stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if admissible else EXIT_FAIL


def cmd_sample(cfg: RunConfig, stdout=sys.stdout) -> int:
    w = _wavelet_from(cfg.wavelet)
    lo, hi = cfg.wavelet.sample_range
    xs = sample_grid(lo, hi, cfg.wavelet.sample_count)
    ys = evaluate(w, xs)
    if cfg.output_format == "csv":
        text = render_csv("x,psi", zip(xs, ys))
    elif cfg.output_format == "svg":
        text = render_svg(xs, ys)
    else:
        raise ConfigError(f"unknown format {cfg.output_format!r}")
    _emit(text, cfg.output_path, stdout)
    return EXIT_OK


def cmd_cwt(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    if cfg.signal_path is None:
        raise ConfigError("cwt needs 'signal'")
    if not cfg.mu_grid or not cfg.s_grid:
        raise ConfigError("cwt needs 'mu' and 's' grids")
    w = _wavelet_from(cfg.wavelet)
    sig = read_signal(cfg.signal_path)
    scal = scalogram(w, sig, cfg.mu_grid, cfg.s_grid)
    rows = ((mu, s, scal.values[i, j]) for i, mu in enumerate(scal.mus) for j, s in enumerate(scal.ss))
    _emit(render_csv("mu,s,w", rows), cfg.output_path, stdout)
    short = int(np.count_nonzero(~scal.covered))
    if short:
        stderr.write(f"warning: {short} of {scal.covered.size} cells have a daughter window "
                     "extending past the signal grid\n")
    return EXIT_OK


def cmd_validate(level: str, stdout=sys.stdout, **hooks) -> int:
    results = run_checks(level, **hooks)
    for r in results:
        stdout.write(r.line() + "\n")
    failed = [r.name for r in results if not r.passed]
    stdout.write(f"{len(results) - len(failed)}/{len(results)} checks passed"
                 + (f"; failed: {', '.join(failed)}" if failed else "") + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mexhat", description="Generalized Mexican hat wavelets.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("build", "report on a wavelet definition"),
                        ("sample", "sample the wavelet curve to CSV or SVG"),
                        ("cwt", "wavelet-transform a signal file over a (mu, s) grid")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", required=True, type=Path)
        sp.add_argument("--output", type=Path)
        if name == "sample":
            sp.add_argument("--format", choices=("csv", "svg"))
    sp = sub.add_parser("validate", help="run the self-check suite")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.level, stdout)
    try:
        cfg = RunConfig.load(args.config)
        if args.output is not None:
            cfg.output_path = args.output
        if getattr(args, "format", None):
            cfg.output_format = args.format
        if args.command == "build":
            return cmd_build(cfg, stdout)
        if args.command == "sample":
            return cmd_sample(cfg, stdout)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return cmd_cwt(cfg, stdout, stderr)
    except ConfigError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except (AdmissibilityError, DegenerateInputError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    except MexhatError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_IO
