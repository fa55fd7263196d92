"""Command-line front end.

Subcommands::

    minlen varsigma     relative moment correction for (dx_min, eta, n) sweeps
    minlen figure1      varsigma(eta) curves for several n, plot-ready CSV/JSON
    minlen flux-check   tube-quadrature moment against the closed form
    minlen compare      deformation vs weak-relativistic correction and verdict
    minlen matrix       V_nn' table and first-order admixture coefficients

Exit codes: 0 success, 1 verification failed, 2 invalid input,
3 quadrature did not converge.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import deformation, flux, moment, perturbation
from .errors import ConvergenceError, DomainError
from .hydrogen import QuantumNumbers, energy_level
from .units import BOHR_MAGNETON_AU, length_to_atomic

EXIT_OK, EXIT_FAILED, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 1, 2, 3

DEFAULT_DELTA_X_MIN_M = 1e-16
FLUX_RTOL = 1e-8
CROSS_ATOL_BOHR = 1e-9
DIVERGENCE_ATOL = 1e-12


class UsageError(Exception):
    """Invalid command-line input; reported with exit status 2."""


def _fraction(text):
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}")


def _default_grid_nodes():
    raw = os.environ.get("MINLEN_GRID_NODES")
    if raw is None:
        return perturbation.DEFAULT_GRID_NODES
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MINLEN_GRID_NODES must be an integer, got {raw!r}")


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--delta-x-min", type=float, default=DEFAULT_DELTA_X_MIN_M,
                   help="minimal length in meters (default 1e-16)")
    p.add_argument("--atomic-units", action="store_true",
                   help="read --delta-x-min in Bohr radii instead of meters")
    p.add_argument("--eta", type=_fraction, nargs="+", default=[1.0],
                   help="eta in [1/3, 1]; fractions such as 1/3 are accepted")
    p.add_argument("--n", type=int, nargs="+", default=None, help="principal quantum number(s)")
    p.add_argument("--l", type=int, default=None, help="orbital quantum number")
    p.add_argument("--m", type=int, default=None, help="magnetic quantum number")
    p.add_argument("--n-max", type=int, default=perturbation.DEFAULT_N_MAX,
                   help="highest admixed level in the wave-function correction")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--epsilon-bohr", type=float, default=moment.EPSILON_BOHR,
                   help="relative error of the measured Bohr magneton")
    p.add_argument("--grid-nodes", type=int, default=None,
                   help="radial quadrature nodes (default $MINLEN_GRID_NODES or 200)")
    p.add_argument("--no-header-timestamp", action="store_true",
                   help="omit the generation timestamp for byte-identical reruns")
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="minlen",
        description="Orbital magnetic moment of hydrogen in deformed space with minimal length.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("varsigma", parents=[common], help="relative moment correction table")
    fig = sub.add_parser("figure1", parents=[common], help="varsigma(eta) curves for several n")
    fig.add_argument("--samples", type=int, default=21, help="eta samples on [1/3, 1]")
    sub.add_parser("flux-check", parents=[common], help="tube quadrature vs closed form")
    sub.add_parser("compare", parents=[common], help="deformation vs relativistic correction")
    sub.add_parser("matrix", parents=[common], help="perturbation matrix elements")
    return parser


# -- configuration -----------------------------------------------------------


class RunConfig:
    """Validated command-line inputs (lengths stored in Bohr radii)."""

    def __init__(self, args):
        if not args.delta_x_min >= 0:
            raise UsageError(f"--delta-x-min must be non-negative, got {args.delta_x_min}")
        self.delta_x_min_input = args.delta_x_min
        self.atomic_units = args.atomic_units
        self.delta_x_min = (
            args.delta_x_min if args.atomic_units else length_to_atomic(args.delta_x_min)
        )
        for eta in args.eta:
            if not deformation.ETA_MIN - 1e-15 <= eta <= deformation.ETA_MAX:
                raise UsageError(f"--eta must lie in [1/3, 1], got {eta}")
        self.etas = list(args.eta)
        self.ns = args.n
        self.l = args.l
        self.m = args.m
        self.n_max = args.n_max
        self.format = args.format
        self.out = args.out
        if not args.epsilon_bohr > 0:
            raise UsageError(f"--epsilon-bohr must be positive, got {args.epsilon_bohr}")
        self.epsilon_bohr = args.epsilon_bohr
        self.grid_nodes = args.grid_nodes if args.grid_nodes is not None else _default_grid_nodes()
        if self.grid_nodes < 16:
            raise UsageError(f"--grid-nodes must be at least 16, got {self.grid_nodes}")
        self.timestamp = not args.no_header_timestamp
        self.samples = getattr(args, "samples", None)

    @property
    def eta(self):
        if len(self.etas) != 1:
            raise UsageError("this command takes a single --eta value")
        return self.etas[0]

    def params(self, eta=None):
        return deformation.from_minimal_length(self.delta_x_min, self.eta if eta is None else eta)

    def single_n(self, default):
        if self.ns is None:
            return default
        if len(self.ns) != 1:
            raise UsageError("this command takes a single --n value")
        return self.ns[0]

    def state(self, n_default=2, l_default=None, m_default=None):
        n = self.single_n(n_default)
        l = self.l if self.l is not None else (l_default if l_default is not None else n - 1)  # noqa: E741
        m = self.m if self.m is not None else (m_default if m_default is not None else l)
        try:
            return QuantumNumbers(n, l, m)
        except DomainError as exc:
            raise UsageError(str(exc))

    def inputs(self):
        d = {
            "delta_x_min": self.delta_x_min_input,
            "delta_x_min_unit": "bohr" if self.atomic_units else "m",
            "delta_x_min_bohr": self.delta_x_min,
            "eta": self.etas,
            "n": self.ns,
            "l": self.l,
            "m": self.m,
            "n_max": self.n_max,
            "epsilon_bohr": self.epsilon_bohr,
            "grid_nodes": self.grid_nodes,
        }
        if self.samples is not None:
            d["samples"] = self.samples
        return d


# -- output ------------------------------------------------------------------


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.16e}"
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(rows, config, tolerances=None, verdict=None, fmt="csv", timestamp=None):
    """Serialize result rows as CSV text or a JSON document."""
    if fmt == "json":
        doc = {
            "inputs": config,
            "results": [{k: _jsonable(v) for k, v in row.items()} for row in rows],
            "tolerances": tolerances or {},
            "verdict": verdict,
        }
        if timestamp:
            doc["generated"] = timestamp
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated {timestamp}\r\n")
    writer = csv.writer(buf)
    header = list(rows[0]) if rows else []
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in header])
    return buf.getvalue()


def _emit(cfg, rows, tolerances=None, verdict=None):
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if cfg.timestamp else None
    text = render(rows, cfg.inputs(), tolerances, verdict, cfg.format, stamp)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------


def cmd_varsigma(cfg):
    ns = cfg.ns or [2]
    rows = []
    for n in ns:
        for eta in cfg.etas:
            rows.append({
                "delta_x_min_m": cfg.delta_x_min * _bohr_m(),
                "eta": eta,
                "n": n,
                "varsigma": moment.varsigma(cfg.delta_x_min, eta, n),
            })
    _emit(cfg, rows, verdict="ok")
    return EXIT_OK


def _bohr_m():
    from .units import CONSTANTS

    return CONSTANTS.bohr_radius_m


def figure1_rows(delta_x_min, ns, samples):
    """Rows ``eta, varsigma_n<k>...`` on an even eta grid over [1/3, 1]."""
    if samples < 2:
        raise UsageError("--samples must be at least 2")
    etas = np.linspace(deformation.ETA_MIN, deformation.ETA_MAX, samples)
    rows = []
    for eta in etas:
        row = {"eta": float(eta)}
        for n in ns:
            row[f"varsigma_n{n}"] = moment.varsigma(delta_x_min, float(eta), n)
        rows.append(row)
    return rows


def cmd_figure1(cfg):
    ns = sorted(cfg.ns or [2, 3, 4])
    rows = figure1_rows(cfg.delta_x_min, ns, cfg.samples)
    _emit(cfg, rows, verdict="ok")
    return EXIT_OK


def _divergence_samples(q, params, correction, count=64):
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(count):
        point = flux.SphericalPoint(
            r=float(rng.uniform(0.2, 4.0 * q.n**2)),
            theta=float(rng.uniform(0.05, math.pi - 0.05)),
            phi=float(rng.uniform(0.0, 2 * math.pi)),
        )
        worst = max(worst, abs(flux.divergence_check(q, params, point, 1e-4, correction)))
    return worst


def flux_check_report(q, params, n_max, grid_nodes, etas=None):
    """Closed-form vs quadrature moment for one state; returns a row dict."""
    if q.m == 0:
        raise UsageError("flux-check needs m != 0 (the moment of an m = 0 state vanishes)")
    correction = perturbation.correction_expansion(q, params, max(n_max, q.n + 1), grid_nodes)
    spec = flux.TubeQuadratureSpec(radial_nodes=grid_nodes)
    parts = flux.tube_moments(q, params, correction, spec)
    numeric = sum(v for v, _ in parts.values())
    closed = moment.magnetic_moment_closed(q.n, q.m, params)
    discrepancy = abs(numeric - closed) / abs(closed)
    ordinary = parts["ordinary"][0]
    numeric_varsigma = (parts["kinetic"][0] + parts["coulomb"][0]) / ordinary
    cross = abs(parts["cross"][0]) / BOHR_MAGNETON_AU
    div_max = _divergence_samples(q, params, correction)
    passed = discrepancy <= FLUX_RTOL and cross < CROSS_ATOL_BOHR and div_max < DIVERGENCE_ATOL
    return {
        "n": q.n,
        "l": q.l,
        "m": q.m,
        "mu_closed_bohr": closed / BOHR_MAGNETON_AU,
        "mu_quadrature_bohr": numeric / BOHR_MAGNETON_AU,
        "relative_discrepancy": discrepancy,
        "varsigma_closed": moment.varsigma_of(q.n, params),
        "varsigma_quadrature": numeric_varsigma,
        "cross_term_bohr": cross,
        "divergence_max": div_max,
        "pass": passed,
    }


def cmd_flux_check(cfg):
    q = cfg.state()
    row = flux_check_report(q, cfg.params(), cfg.n_max, cfg.grid_nodes)
    tolerances = {
        "relative_discrepancy": FLUX_RTOL,
        "cross_term_bohr": CROSS_ATOL_BOHR,
        "divergence_max": DIVERGENCE_ATOL,
    }
    verdict = "pass" if row["pass"] else "fail"
    _emit(cfg, [row], tolerances, verdict)
    return EXIT_OK if row["pass"] else EXIT_FAILED


def compare_row(n, m, params, epsilon):
    res = moment.comparison_report(n, m, params, epsilon)
    signs = res.signs
    return {
        "n": n,
        "m": m,
        "mu_z_bohr": res.mu_z_bohr,
        "mu_undeformed_bohr": res.undeformed_bohr,
        "deformation_correction": res.varsigma,
        "relativistic_correction": res.relativistic_shift,
        "relativistic_magnitude": res.relativistic_fraction,
        "signs": f"deformation:{signs['deformation']} relativistic:{signs['relativistic']}",
        "epsilon_bohr": res.epsilon,
        "ratio_to_epsilon": res.ratio,
        "verdict": res.verdict,
    }


def cmd_compare(cfg):
    n = cfg.single_n(2)
    m = cfg.m if cfg.m is not None else 1
    try:
        row = compare_row(n, m, cfg.params(), cfg.epsilon_bohr)
    except DomainError as exc:
        raise UsageError(str(exc))
    _emit(cfg, [row], {"epsilon_bohr": cfg.epsilon_bohr}, row["verdict"])
    return EXIT_OK


def matrix_rows(n, l, params, n_max, grid_nodes):  # noqa: E741
    """V_nn', V_n'n and c_n' for n' = l+1 .. n_max."""
    if l == 0:
        raise UsageError(
            "l = 0 is not supported: the linear perturbation operator diverges for s-states"
        )
    rows = []
    for n2 in range(l + 1, n_max + 1):
        req = perturbation.MatrixElementRequest
        v = perturbation.matrix_element_V(req(n, n2, l, params, grid_nodes))
        v_t = perturbation.matrix_element_V(req(n2, n, l, params, grid_nodes))
        c = None if n2 == n else v / (energy_level(n) - energy_level(n2))
        rows.append({
            "n": n,
            "n_prime": n2,
            "l": l,
            "V_nn_prime": v,
            "V_n_prime_n": v_t,
            "symmetry_residual": v - v_t,
            "c_n_prime": c,
        })
    return rows


def cmd_matrix(cfg):
    q = cfg.state(l_default=1)
    if cfg.n_max < q.n:
        raise UsageError(f"--n-max must be at least n={q.n}")
    rows = matrix_rows(q.n, q.l, cfg.params(), cfg.n_max, cfg.grid_nodes)
    _emit(cfg, rows, {"symmetry_residual": 1e-10}, "ok")
    return EXIT_OK


COMMANDS = {
    "varsigma": cmd_varsigma,
    "figure1": cmd_figure1,
    "flux-check": cmd_flux_check,
    "compare": cmd_compare,
    "matrix": cmd_matrix,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"minlen {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"minlen {args.command}: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
