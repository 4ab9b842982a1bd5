"""Command-line front end: analyze | generate | scan | verify.

State files are JSON ({"schema": 1, "dims": [m, n], "matrix": [[[re, im], ...], ...],
"metadata": {...}}); reports are JSON; scans are CSV with a fixed column set.
Exit codes report tool health (0 ran, 2 bad input); physics verdicts live in
the payload only.  `verify` exits 0 iff every selected check passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__, acceptance, criteria, oracle, states
from .errors import SepmapsError
from .linalg import DEFAULT_TOL, BipartiteOperator, Dims, ToleranceConfig, herm_defect

STATE_SCHEMA = 1
REPORT_SCHEMA = 1
CSV_COLUMNS = (
    "family", "m", "n", "alpha", "beta", "gamma", "delta", "k",
    "n_samples", "seed", "worst_psd_margin", "worst_ppt_margin",
)


class StateFileError(SepmapsError):
    pass


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sepmaps-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, path: str | None):
    if path:
        _atomic_write(path, text)
    else:
        sys.stdout.write(text)


# -- state file I/O -----------------------------------------------------------


def state_to_json(op: BipartiteOperator, metadata: dict | None = None) -> str:
    rows = [[[float(v.real), float(v.imag)] for v in row] for row in op.matrix]
    doc = {"schema": STATE_SCHEMA, "dims": [op.dims.m, op.dims.n], "matrix": rows}
    if metadata:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=1) + "\n"


def state_from_json(text: str, tol: ToleranceConfig = DEFAULT_TOL):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise StateFileError(f"not valid JSON: line {err.lineno} column {err.colno}: {err.msg}")
    if not isinstance(doc, dict) or doc.get("schema") != STATE_SCHEMA:
        raise StateFileError(f"missing or unsupported 'schema' field (expected {STATE_SCHEMA})")
    dims = doc.get("dims")
    if (not isinstance(dims, list) or len(dims) != 2
            or not all(isinstance(v, int) and v >= 1 for v in dims)):
        raise StateFileError("'dims' must be a list of two positive integers")
    size = dims[0] * dims[1]
    rows = doc.get("matrix")
    if not isinstance(rows, list) or len(rows) != size:
        raise StateFileError(f"'matrix' must have {size} rows for dims {dims}")
    matrix = np.zeros((size, size), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise StateFileError(f"matrix row {i} must have {size} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise StateFileError(f"matrix entry ({i}, {j}) must be a [re, im] pair")
            matrix[i, j] = complex(float(pair[0]), float(pair[1]))
    defect = herm_defect(matrix)
    if defect > tol.herm_tol:
        raise StateFileError(f"matrix is not Hermitian (defect {defect:.3e} > {tol.herm_tol:.1e})")
    op = BipartiteOperator(Dims(*dims), matrix)
    return op, doc.get("metadata") or {}


# -- report serialization ------------------------------------------------------


def report_to_json(report, tol: ToleranceConfig, label: str | None = None) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "tolerances": {
            "psd_tol": tol.psd_tol,
            "herm_tol": tol.herm_tol,
            "inverse_singularity_tol": tol.inverse_singularity_tol,
        },
        "input": {
            "dims": [report.digest.dims.m, report.digest.dims.n],
            "trace": report.digest.trace,
            "purity": report.digest.purity,
            "min_eigenvalue": report.digest.min_eigenvalue,
            **({"label": label} if label else {}),
        },
        "verdicts": [
            {
                "criterion": v.criterion,
                "kind": v.kind,
                "margin": v.margin,
                "params": v.params,
                **({"schmidt_n": v.schmidt_n} if v.schmidt_n is not None else {}),
            }
            for v in report.verdicts
        ],
        "failures": [{"criterion": c, "error": e} for c, e in report.failures],
        "summary": {
            "kind": report.summary.kind,
            "schmidt_n": report.summary.schmidt_n,
            "supporting_criteria": list(report.summary.supporting_criteria),
        },
    }
    return json.dumps(doc, indent=1) + "\n"


# -- scan serialization ---------------------------------------------------------


def scan_to_csv(results, dims: Dims, overlay: bool) -> str:
    columns = CSV_COLUMNS + (("theorem_inside",) if overlay else ())
    lines = [",".join(columns)]
    for r in results:
        row = {
            "family": r.family,
            "m": str(dims.m),
            "n": str(dims.n),
            "n_samples": str(r.n_samples),
            "seed": str(r.seed),
            "worst_psd_margin": repr(r.worst_psd_margin),
            "worst_ppt_margin": repr(r.worst_ppt_margin),
        }
        for key in ("alpha", "beta", "gamma", "delta", "k"):
            row[key] = repr(r.params[key]) if key in r.params else ""
        if overlay:
            row["theorem_inside"] = str(int(oracle.theorem_region_inside(r.family, dims, r.params)))
        lines.append(",".join(row[c] for c in columns))
    return "\n".join(lines) + "\n"


def _parse_axis(text: str) -> np.ndarray:
    """'start:stop:step' (inclusive), 'a,b,c', or a single value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("range step must be positive")
        return np.round(np.arange(start, stop + step / 2, step), 12)
    if "," in text:
        return np.array([float(p) for p in text.split(",") if p])
    return np.array([float(text)])


# -- subcommands -----------------------------------------------------------------


def _tol_from_args(args) -> ToleranceConfig:
    return ToleranceConfig(
        psd_tol=args.psd_tol,
        herm_tol=args.herm_tol,
        inverse_singularity_tol=args.singularity_tol,
    )


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else 0
    try:
        if args.family == "maximally_entangled":
            op = states.maximally_entangled(args.d)
            label = f"maximally_entangled(d={args.d})"
        elif args.family == "schmidt":
            if not args.coeffs:
                raise ValueError("schmidt needs --coeffs")
            coeffs = tuple(float(c) for c in args.coeffs.split(","))
            op = states.schmidt_pure(states.SchmidtVector(coeffs, Dims(*args.dims)))
            label = f"schmidt(coeffs={args.coeffs},dims={tuple(args.dims)})"
        elif args.family == "horodecki2x4":
            op = states.horodecki_2x4(args.a)
            label = f"horodecki2x4(a={args.a:g})"
        elif args.family == "horodecki_smoothed":
            op = states.horodecki_smoothed(args.a, args.p)
            label = f"horodecki_smoothed(a={args.a:g},p={args.p:g})"
        elif args.family == "rho_beta":
            op = states.three_by_three_family(args.beta)
            label = f"rho_beta(beta={args.beta:g})"
        elif args.family == "random_pure":
            op = states.random_pure(Dims(*args.dims), seed)
            label = f"random_pure(dims={tuple(args.dims)},seed={seed})"
        else:
            op = states.random_density(Dims(*args.dims), seed)
            label = f"random_density(dims={tuple(args.dims)},seed={seed})"
    except (SepmapsError, ValueError) as err:
        print(f"generate: {err}", file=sys.stderr)
        return 2
    _emit(state_to_json(op, {"label": label, "source": f"sepmaps {__version__}"}), args.output)
    return 0


def _parse_sweeps(args) -> dict:
    """Collect per-criterion parameter overrides from CLI flags."""
    sweeps = {}
    if args.criterion1_alphas:
        sweeps["criterion1"] = [float(v) for v in args.criterion1_alphas.split(",") if v]
    if args.criterion2_points:
        sweeps["criterion2"] = [
            tuple(float(p) for p in pair.split(":")) for pair in args.criterion2_points.split(",") if pair
        ]
    if args.criterion3_values:
        sweeps["criterion3"] = [float(v) for v in args.criterion3_values.split(",") if v]
    if args.criterion5_alphas:
        sweeps["criterion5"] = [float(v) for v in args.criterion5_alphas.split(",") if v]
    if args.schmidt_pairs:
        sweeps["schmidt"] = [
            (int(pair.split(":")[0]), float(pair.split(":")[1]))
            for pair in args.schmidt_pairs.split(",") if pair
        ]
    return sweeps


def cmd_analyze(args) -> int:
    tol = _tol_from_args(args)
    try:
        with open(args.state) as handle:
            op, metadata = state_from_json(handle.read(), tol)
    except OSError as err:
        print(f"analyze: cannot read {args.state}: {err}", file=sys.stderr)
        return 2
    except StateFileError as err:
        print(f"analyze: invalid state file {args.state}: {err}", file=sys.stderr)
        return 2
    try:
        sweeps = _parse_sweeps(args)
    except ValueError as err:
        print(f"analyze: bad sweep override: {err}", file=sys.stderr)
        return 2
    try:
        report = criteria.aggregate_report(
            op, tol,
            criteria=args.criteria.split(",") if args.criteria else None,
            sweeps=sweeps or None,
        )
    except SepmapsError as err:
        print(f"analyze: {err}", file=sys.stderr)
        return 2
    _emit(report_to_json(report, tol, label=metadata.get("label")), args.output)
    return 0


def cmd_scan(args) -> int:
    dims = Dims(*args.dims)
    grid = {}
    for name in oracle.SCAN_FAMILIES[args.family]:
        if name == "k":
            grid["k"] = np.array([args.k])
            continue
        text = getattr(args, name)
        if text is None and args.grid is not None:
            text = f"-2:4:{args.grid}"  # default window for the --grid shorthand
        if text is None:
            print(f"scan: {args.family} needs --{name} (or --grid)", file=sys.stderr)
            return 2
        try:
            grid[name] = _parse_axis(text)
        except ValueError as err:
            print(f"scan: bad --{name}: {err}", file=sys.stderr)
            return 2
    try:
        results = oracle.region_boundary_scan(
            args.family, dims, grid, n_samples=args.samples, seed=args.seed, tol=_tol_from_args(args)
        )
    except (SepmapsError, ValueError) as err:
        print(f"scan: {err}", file=sys.stderr)
        return 2
    _emit(scan_to_csv(results, dims, args.theorem_overlay), args.output)
    return 0


def cmd_verify(args) -> int:
    selection = args.suite or ["all"]
    try:
        results = acceptance.run_checks(selection, seed=args.seed)
    except ValueError as err:
        print(f"verify: {err}", file=sys.stderr)
        return 2
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name} ({res.seconds:.2f}s) {res.detail}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 0 if n_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepmaps", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sepmaps {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tolerances(p):
        p.add_argument("--psd-tol", type=float, default=DEFAULT_TOL.psd_tol)
        p.add_argument("--herm-tol", type=float, default=DEFAULT_TOL.herm_tol)
        p.add_argument("--singularity-tol", type=float, default=DEFAULT_TOL.inverse_singularity_tol)

    gen = sub.add_parser("generate", help="write an example or random state file")
    gen.add_argument("family", choices=[
        "maximally_entangled", "schmidt", "horodecki2x4", "horodecki_smoothed",
        "rho_beta", "random_pure", "random_density",
    ])
    gen.add_argument("--d", type=int, default=2, help="local dimension for maximally_entangled")
    gen.add_argument("--a", type=float, default=0.5)
    gen.add_argument("--p", type=float, default=0.5)
    gen.add_argument("--beta", type=float, default=2.5)
    gen.add_argument("--coeffs", help="comma-separated Schmidt coefficients")
    gen.add_argument("--dims", type=int, nargs=2, default=[2, 2], metavar=("M", "N"))
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="run all applicable criteria on a state file")
    ana.add_argument("state")
    ana.add_argument("--criteria", help="comma-separated criterion label prefixes to run")
    ana.add_argument("--criterion1-alphas", help="override sweep, e.g. 2,-1")
    ana.add_argument("--criterion2-points", help="override sweep as alpha:beta pairs, e.g. 2:0,6:2")
    ana.add_argument("--criterion3-values", help="override sweep, e.g. 2,6,20")
    ana.add_argument("--criterion5-alphas", help="override sweep, e.g. -0.5,1")
    ana.add_argument("--schmidt-pairs", help="override sweep as n:alpha pairs, e.g. 2:10")
    ana.add_argument("-o", "--output")
    add_tolerances(ana)
    ana.set_defaults(func=cmd_analyze)

    scan = sub.add_parser("scan", help="worst-case margins of a map family over a parameter grid")
    scan.add_argument("family", choices=sorted(oracle.SCAN_FAMILIES))
    scan.add_argument("--dims", type=int, nargs=2, required=True, metavar=("M", "N"))
    for name in ("alpha", "beta", "gamma", "delta"):
        scan.add_argument(f"--{name}", help="grid: start:stop:step, comma list, or value")
    scan.add_argument("--grid", type=float,
                      help="step for every unset parameter axis over [-2, 4]")
    scan.add_argument("--k", type=int, default=-1, help="Alice-shift count for ando2xN")
    scan.add_argument("--samples", type=int, default=50)
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--theorem-overlay", action="store_true",
                      help="append the proven-region predicate per point")
    scan.add_argument("-o", "--output")
    add_tolerances(scan)
    scan.set_defaults(func=cmd_scan)

    ver = sub.add_parser("verify", help="run the built-in verification suite")
    ver.add_argument("suite", nargs="*",
                     help=f"suites or check names (default all): {', '.join(acceptance.SUITE_NAMES)}")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)
    return parser


_AXIS_FLAGS = ("--alpha", "--beta", "--gamma", "--delta")


def _merge_axis_values(argv):
    # lets grids starting with '-' (e.g. --alpha -1.5:2.5:0.1) survive argparse
    merged = []
    i = 0
    while i < len(argv):
        if argv[i] in _AXIS_FLAGS and i + 1 < len(argv):
            merged.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    return merged


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(_merge_axis_values(argv))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
