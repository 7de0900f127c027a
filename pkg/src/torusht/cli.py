"""Command-line benchmarks and CSV emitters.

Subcommands:

* ``roundtrip``: time inverse-then-forward round trips on seeded random
  coefficients and record the worst coefficient error per trial.
* ``weights``: emit the quadrature weight table for one or more
  band-limits.
* ``grid``: emit the sample positions for one band-limit and sampling.
* ``counts``: emit the per-sampling sample counts across band-limits.
* ``integrate``: integrate seeded random band-limited signals on the
  reduced grid and compare against the exact harmonic reference.
* ``backends``: run identical round trips on the compiled and the pure
  numpy kernel backends, side by side.

All output is CSV (UTF-8, floats at 17 significant digits, one header
row). Runs are deterministic: the same invocation with the same seed
reproduces every byte except the timing columns. Timing uses the
monotonic wall clock and covers the transforms only, never grid or
weight setup. Unsupported parameter combinations become per-row error
records and the sweep continues.
"""

import argparse
import concurrent.futures
import math
import sys
import time
from dataclasses import dataclass
from statistics import fmean, pstdev

import numpy as np

from . import kernels
from .errors import TorushtError, InvalidSpinError
from .gl import STABLE_BAND_LIMIT, gl_forward, gl_inverse, gl_nodes
from .grid import check_band_limit, mw_grid, sample_counts
from .grid import to_csv as grid_to_csv
from .mw import (
    HarmonicCoeffs,
    _check_spin,
    forward,
    forward_real,
    inverse,
    inverse_real,
    synthesize_reduced,
)
from .quadrature import harmonic_integral, integrate, quad_weights
from .quadrature import to_csv as weights_to_csv

ROUNDTRIP_HEADER = "band_limit,spin,sampling,trial,epsilon,seconds,seed,trials,error"
INTEGRATE_HEADER = (
    "band_limit,spin,trial,integral_re,integral_im,"
    "expected_re,expected_im,abs_error,seed,error"
)
COUNTS_HEADER = "L,n_mw,n_gl,n_dh"
BACKENDS_HEADER = "backend,band_limit,spin,trial,epsilon,seconds,error"


@dataclass(frozen=True)
class TrialReport:
    """One timed round trip: worst coefficient error and wall seconds."""

    band_limit: int
    spin: int
    sampling: str
    epsilon: float
    seconds: float
    seed: int
    trials: int


@dataclass(frozen=True)
class ComboOutcome:
    """All trials of one (band_limit, spin) pair, or why it was skipped."""

    band_limit: int
    spin: int
    sampling: str
    seed: int
    trials: int
    reports: tuple
    error: str


def gen_random_coeffs(band_limit, spin, seed, real=False, trial=0):
    """Random coefficients, deterministic in (seed, band_limit, spin, trial).

    Real and imaginary parts are uniform on [-1, 1] and degrees below
    |spin| are zero. With ``real=True`` (spin 0 only) the output satisfies
    conj(f_lm) = (-1)^m f_l,-m exactly, so its synthesis has real samples.
    """
    check_band_limit(band_limit)
    _check_spin(band_limit, spin)
    if seed < 0:
        raise ValueError(f"seed must be >= 0, got {seed}")
    if trial < 0:
        raise ValueError(f"trial must be >= 0, got {trial}")
    if real and spin != 0:
        raise InvalidSpinError(
            f"real-symmetric coefficients require spin 0, got {spin}"
        )
    entropy = [
        seed,
        band_limit,
        abs(spin),
        1 if spin < 0 else 0,
        trial,
        1 if real else 0,
    ]
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
    L = int(band_limit)
    if not real:
        values = rng.uniform(-1.0, 1.0, L * L) + 1j * rng.uniform(-1.0, 1.0, L * L)
        values[: spin * spin] = 0.0
        return HarmonicCoeffs(L, spin, values)
    values = np.zeros(L * L, dtype=np.complex128)
    for ell in range(L):
        base = ell * (ell + 1)
        values[base] = rng.uniform(-1.0, 1.0)
        for m in range(1, ell + 1):
            z = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
            values[base + m] = z
            values[base - m] = np.conj(z) if m % 2 == 0 else -np.conj(z)
    return HarmonicCoeffs(L, 0, values)


def _combo_error(band_limit, spin, sampling, real, allow_unstable):
    """Reason a sweep entry cannot run, or the empty string."""
    if abs(spin) >= band_limit:
        return f"|spin| must be below the band limit (spin={spin} at L={band_limit})"
    if real and spin != 0:
        return "the real path supports spin 0 only"
    if real and sampling == "gl":
        return "the real path supports mw sampling only"
    if sampling == "gl" and band_limit > STABLE_BAND_LIMIT and not allow_unstable:
        return (
            f"Gauss-Legendre transforms above L={STABLE_BAND_LIMIT} need "
            "--gl-unstable-override"
        )
    return ""


def _roundtrip_once(band_limit, spin, sampling, seed, trial, real, grid, allow_unstable):
    coeffs = gen_random_coeffs(band_limit, spin, seed, real=real, trial=trial)
    start = time.perf_counter()
    if sampling == "gl":
        samples = gl_inverse(coeffs, grid=grid, allow_unstable=allow_unstable)
        rec = gl_forward(samples, spin, grid=grid, allow_unstable=allow_unstable)
    elif real:
        rec = forward_real(inverse_real(coeffs))
    else:
        rec = forward(inverse(coeffs))
    seconds = time.perf_counter() - start
    epsilon = float(np.max(np.abs(rec.values - coeffs.values)))
    return TrialReport(band_limit, spin, sampling, epsilon, seconds, seed, trial)


def run_roundtrip(
    bandlimits,
    spins,
    sampling="mw",
    trials=5,
    seed=0,
    real=False,
    warmup=0,
    parallel=False,
    allow_unstable=False,
):
    """Round-trip error and timing over the (band_limit, spin) sweep.

    Each trial generates fresh random coefficients and times the inverse
    transform followed by the forward transform; epsilon is the largest
    coefficient deviation of the recovered set. Gauss-Legendre grids are
    built once per band-limit outside the timed region. Returns one
    ``ComboOutcome`` per sweep entry in sweep order.

    Band-limits must be valid on their own; only (band_limit, spin)
    pairings that cannot run together become error records.
    """
    for L in bandlimits:
        check_band_limit(L)
    combos = [(L, s) for L in bandlimits for s in spins]
    errors = {}
    grids = {}
    jobs = []
    for index, (L, spin) in enumerate(combos):
        message = _combo_error(L, spin, sampling, real, allow_unstable)
        if message:
            errors[index] = message
            continue
        if sampling == "gl" and L not in grids:
            grids[L] = gl_nodes(L)
        for _ in range(warmup):
            _roundtrip_once(L, spin, sampling, seed, 0, real, grids.get(L), allow_unstable)
        jobs.extend((index, trial) for trial in range(trials))

    def _run(job):
        index, trial = job
        L, spin = combos[index]
        return index, trial, _roundtrip_once(
            L, spin, sampling, seed, trial, real, grids.get(L), allow_unstable
        )

    if parallel and jobs:
        with concurrent.futures.ThreadPoolExecutor() as pool:
            finished = list(pool.map(_run, jobs))
    else:
        finished = [_run(job) for job in jobs]
    collected = {}
    for index, trial, report in finished:
        collected.setdefault(index, {})[trial] = report
    outcomes = []
    for index, (L, spin) in enumerate(combos):
        if index in errors:
            outcomes.append(
                ComboOutcome(L, spin, sampling, seed, trials, (), errors[index])
            )
        else:
            reports = tuple(collected[index][t] for t in range(trials))
            outcomes.append(
                ComboOutcome(L, spin, sampling, seed, trials, reports, "")
            )
    return outcomes


def _fmt(value):
    return "%.17g" % float(value)


def _safe(message):
    """Error text made CSV-safe: commas and newlines become semicolons."""
    return str(message).replace(",", ";").replace("\n", "; ")


def render_roundtrip_csv(outcomes):
    """Long-format CSV: per-trial rows, then mean and std rows per combo."""
    lines = [ROUNDTRIP_HEADER]
    for oc in outcomes:
        base = f"{oc.band_limit},{oc.spin},{oc.sampling}"
        tail = f"{oc.seed},{oc.trials}"
        if oc.error:
            lines.append(f"{base},,,,{tail},{_safe(oc.error)}")
            continue
        eps = [r.epsilon for r in oc.reports]
        secs = [r.seconds for r in oc.reports]
        for i, r in enumerate(oc.reports):
            lines.append(
                f"{base},{i},{_fmt(r.epsilon)},{_fmt(r.seconds)},{tail},"
            )
        lines.append(f"{base},mean,{_fmt(fmean(eps))},{_fmt(fmean(secs))},{tail},")
        lines.append(f"{base},std,{_fmt(pstdev(eps))},{_fmt(pstdev(secs))},{tail},")
    return "\n".join(lines) + "\n"


def emit_weights(bandlimits, spin=0):
    """Weight-table CSV for the given band-limits, one commented block each."""
    lines = ["theta,v,q,sin_theta,q_minus_sin"]
    for L in bandlimits:
        body = weights_to_csv(quad_weights(L, spin)).rstrip("\n").split("\n")[1:]
        lines.append(f"# band_limit={L} spin={spin}")
        lines.extend(body)
    return "\n".join(lines) + "\n"


def emit_grid(band_limit, sampling="mw"):
    """Sample-position CSV with a distinct-location trailer comment."""
    check_band_limit(band_limit)
    if sampling == "mw":
        text = grid_to_csv(mw_grid(band_limit))
        distinct = sample_counts(band_limit)["n_mw"]
    else:
        grid = gl_nodes(band_limit)
        lines = ["theta,phi"]
        for x in grid.nodes:
            theta = math.acos(x)
            for phi in grid.phis:
                lines.append(f"{theta:.17g},{phi:.17g}")
        text = "\n".join(lines) + "\n"
        distinct = sample_counts(band_limit)["n_gl"]
    return text + f"# distinct sphere locations: {distinct}\n"


def emit_counts(bandlimits):
    """Sample-count comparison CSV across band-limits."""
    lines = [COUNTS_HEADER]
    for L in bandlimits:
        counts = sample_counts(L)
        lines.append(f"{L},{counts['n_mw']},{counts['n_gl']},{counts['n_dh']}")
    return "\n".join(lines) + "\n"


def run_integrate(bandlimits, spins, trials=5, seed=0):
    """Reduced-grid integrals of random signals vs the exact reference.

    The reference is sum_l f_l0 times the exact integral of the m = 0
    basis function, so the comparison holds for any spin.
    """
    for L in bandlimits:
        check_band_limit(L)
    lines = [INTEGRATE_HEADER]
    for L in bandlimits:
        for spin in spins:
            if abs(spin) >= L:
                message = _safe(
                    f"|spin| must be below the band limit (spin={spin} at L={L})"
                )
                lines.append(f"{L},{spin},,,,,,,{seed},{message}")
                continue
            weights = quad_weights(L, spin)
            refs = [harmonic_integral(ell, spin) for ell in range(L)]
            for trial in range(trials):
                coeffs = gen_random_coeffs(L, spin, seed, trial=trial)
                total = integrate(synthesize_reduced(coeffs), weights)
                expected = sum(
                    (coeffs.value(ell, 0) * refs[ell] for ell in range(abs(spin), L)),
                    start=0j,
                )
                error = abs(total - expected)
                lines.append(
                    f"{L},{spin},{trial},{_fmt(total.real)},{_fmt(total.imag)},"
                    f"{_fmt(expected.real)},{_fmt(expected.imag)},"
                    f"{_fmt(error)},{seed},"
                )
    return "\n".join(lines) + "\n"


def run_backends(bandlimits, spin=0, trials=3, seed=0, warmup=1):
    """Identical mw round trips timed on each kernel backend.

    Emits per-trial rows plus mean and std rows per (backend, band_limit).
    A backend that fails to import becomes per-row error records. The
    previously active backend is restored afterwards.
    """
    for L in bandlimits:
        check_band_limit(L)
    lines = [BACKENDS_HEADER]
    previous = kernels.BACKEND
    try:
        for name in ("numpy", "numba"):
            try:
                kernels.set_backend(name)
            except ImportError as exc:
                for L in bandlimits:
                    lines.append(
                        f"{name},{L},{spin},,,,backend unavailable: {_safe(exc)}"
                    )
                continue
            for L in bandlimits:
                if abs(spin) >= L:
                    message = _safe(
                        f"|spin| must be below the band limit (spin={spin} at L={L})"
                    )
                    lines.append(f"{name},{L},{spin},,,,{message}")
                    continue
                for _ in range(warmup):
                    _roundtrip_once(L, spin, "mw", seed, 0, False, None, False)
                eps = []
                secs = []
                for trial in range(trials):
                    r = _roundtrip_once(L, spin, "mw", seed, trial, False, None, False)
                    eps.append(r.epsilon)
                    secs.append(r.seconds)
                    lines.append(
                        f"{name},{L},{spin},{trial},"
                        f"{_fmt(r.epsilon)},{_fmt(r.seconds)},"
                    )
                lines.append(
                    f"{name},{L},{spin},mean,{_fmt(fmean(eps))},{_fmt(fmean(secs))},"
                )
                lines.append(
                    f"{name},{L},{spin},std,{_fmt(pstdev(eps))},{_fmt(pstdev(secs))},"
                )
    finally:
        kernels.set_backend(previous)
    return "\n".join(lines) + "\n"


def _int_list(text):
    try:
        values = [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a comma-separated list of integers, got {text!r}"
        )
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def _pos_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _add_out(parser):
    parser.add_argument(
        "--out", default=None, metavar="FILE",
        help="write the CSV to FILE instead of stdout",
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="torusht",
        description="Benchmarks and data tables for the sphere transforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "roundtrip", help="time inverse-then-forward round trips"
    )
    p.add_argument(
        "-L", "--bandlimit", type=_int_list, default=[4, 16, 64],
        help="comma-separated band-limits (default 4,16,64)",
    )
    p.add_argument(
        "-s", "--spin", type=_int_list, default=[0],
        help="comma-separated spins (default 0)",
    )
    p.add_argument(
        "--sampling", choices=("mw", "gl"), default="mw",
        help="sampling scheme (default mw)",
    )
    p.add_argument("--trials", type=_pos_int, default=5,
                   help="trials per combination (default 5)")
    p.add_argument("--seed", type=_nonneg_int, default=0,
                   help="base seed (default 0)")
    p.add_argument("--real", action="store_true",
                   help="use the real-signal spin-0 fast path")
    p.add_argument("--warmup", type=_nonneg_int, default=0,
                   help="untimed round trips before each combination (default 0)")
    p.add_argument("--parallel-trials", action="store_true",
                   help="run trials concurrently; rows stay in sweep order")
    p.add_argument("--gl-unstable-override", action="store_true",
                   help="allow Gauss-Legendre runs above the stability guard")
    _add_out(p)
    p.set_defaults(handler=_cmd_roundtrip)

    p = sub.add_parser("weights", help="emit the quadrature weight table")
    p.add_argument(
        "-L", "--bandlimit", type=_int_list, default=[4, 64],
        help="comma-separated band-limits (default 4,64)",
    )
    p.add_argument("-s", "--spin", type=int, default=0,
                   help="spin for the folded weights (default 0)")
    _add_out(p)
    p.set_defaults(handler=_cmd_weights)

    p = sub.add_parser("grid", help="emit sample positions")
    p.add_argument("-L", "--bandlimit", type=_pos_int, default=12,
                   help="band-limit (default 12)")
    p.add_argument("--sampling", choices=("mw", "gl"), default="mw",
                   help="sampling scheme (default mw)")
    _add_out(p)
    p.set_defaults(handler=_cmd_grid)

    p = sub.add_parser("counts", help="emit per-sampling sample counts")
    p.add_argument(
        "-L", "--bandlimit", type=_int_list, default=None,
        help="comma-separated band-limits (default 1..128)",
    )
    _add_out(p)
    p.set_defaults(handler=_cmd_counts)

    p = sub.add_parser(
        "integrate", help="integrate random signals on the reduced grid"
    )
    p.add_argument(
        "-L", "--bandlimit", type=_int_list, default=[4, 16, 64],
        help="comma-separated band-limits (default 4,16,64)",
    )
    p.add_argument(
        "-s", "--spin", type=_int_list, default=[0],
        help="comma-separated spins (default 0)",
    )
    p.add_argument("--trials", type=_pos_int, default=5,
                   help="trials per combination (default 5)")
    p.add_argument("--seed", type=_nonneg_int, default=0,
                   help="base seed (default 0)")
    _add_out(p)
    p.set_defaults(handler=_cmd_integrate)

    p = sub.add_parser(
        "backends", help="compare kernel backends on identical round trips"
    )
    p.add_argument(
        "-L", "--bandlimit", type=_int_list, default=[16, 64],
        help="comma-separated band-limits (default 16,64)",
    )
    p.add_argument("-s", "--spin", type=int, default=0,
                   help="spin (default 0)")
    p.add_argument("--trials", type=_pos_int, default=3,
                   help="trials per band-limit (default 3)")
    p.add_argument("--seed", type=_nonneg_int, default=0,
                   help="base seed (default 0)")
    p.add_argument("--warmup", type=_nonneg_int, default=1,
                   help="untimed round trips per backend first (default 1)")
    _add_out(p)
    p.set_defaults(handler=_cmd_backends)

    return parser


def _cmd_roundtrip(args):
    outcomes = run_roundtrip(
        args.bandlimit,
        args.spin,
        sampling=args.sampling,
        trials=args.trials,
        seed=args.seed,
        real=args.real,
        warmup=args.warmup,
        parallel=args.parallel_trials,
        allow_unstable=args.gl_unstable_override,
    )
    return render_roundtrip_csv(outcomes)


def _cmd_weights(args):
    return emit_weights(args.bandlimit, args.spin)


def _cmd_grid(args):
    return emit_grid(args.bandlimit, args.sampling)


def _cmd_counts(args):
    bandlimits = args.bandlimit or range(1, 129)
    return emit_counts(bandlimits)


def _cmd_integrate(args):
    return run_integrate(args.bandlimit, args.spin, args.trials, args.seed)


def _cmd_backends(args):
    return run_backends(
        args.bandlimit, args.spin, args.trials, args.seed, args.warmup
    )


def _write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        text = args.handler(args)
    except TorushtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
