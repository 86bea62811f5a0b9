"""Command-line entry point: verification suites, scans, and data export.

Subcommands
-----------
verify        run the full invariant suite for small rings (N <= 5)
gap-scan      gaps / minimum energies of invariant-subspace walk operators
entropy-scan  ground-state entanglement entropy next to its bounds
effective     diagonalize one (N, p, bad_set) graph operator
necklaces     enumerate invariant-subspace signatures
fermion       free-fermion propagation amplitude A(x, t)

Every command accepts a flat `key = value` config file; command-line flags
override file values.  Output is CSV (header row) or a JSON envelope
{config, rows, versions}.  Exit codes: 0 all checks pass, 1 check failure,
2 usage or capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np
import scipy

from . import __version__
from .entanglement import (
    entropies,
    ground_state_exact,
    locc_reduction_check,
    reduced_density,
    schmidt,
)
from .errors import CapacityError, ConvergenceError
from .hamiltonian import (
    ModelParams,
    assemble,
    brick_site_map,
    max_chain_span,
    permute_full_operator,
)
from .hilbert import sector_basis, sector_dim, trit_table
from .nullspace import ring_lower_bound
from .spectral import (
    DENSE_CAP,
    eig_lowest,
    fermion_amplitude,
    hastings_bound_log2,
    HastingsBoundParams,
)
from .symmetry import build_effective, embed_node, necklace_classes

FULL_SPACE_CAP_N = 5  # largest ring for which full-space solves are attempted


# --- config and argument plumbing -----------------------------------------


def parse_n_values(text: str) -> list[int]:
    """Ring sizes from '8', '3..5', '8..64..8', or '8,16,32,64'."""
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            parts = chunk.split("..")
            if len(parts) == 2:
                lo, hi, step = int(parts[0]), int(parts[1]), 1
            elif len(parts) == 3:
                lo, hi, step = int(parts[0]), int(parts[1]), int(parts[2])
            else:
                raise ValueError(f"bad range {chunk!r}")
            values.extend(range(lo, hi + 1, step))
        else:
            values.append(int(chunk))
    if not values:
        raise ValueError("empty N selection")
    return values


def load_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key = value config file (flags win)")
    sub.add_argument("--v1", type=float, default=None, help="hole bonus (default 1/N^4)")
    sub.add_argument("--v2", type=float, default=1.0, help="adjacency penalty")
    sub.add_argument("--tol", type=float, default=1e-10)
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--maxiter", type=int, default=1000)
    sub.add_argument("--dense-cap", type=int, default=DENSE_CAP)
    sub.add_argument("--format", choices=("csv", "json"), default="json")
    sub.add_argument("--output", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringgap",
        description="Spectral-gap and entanglement toolkit for the two-ring hole model.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="invariant suite for small rings")
    p.add_argument("--n", default="3..4", help="ring sizes, e.g. 3..5")
    add_common_flags(p)

    p = subs.add_parser("gap-scan", help="invariant-subspace gap scan")
    p.add_argument("--n", default="8,16,32,64")
    p.add_argument(
        "--classes",
        default="singlet,worst",
        help="comma list from {singlet, worst}",
    )
    add_common_flags(p)

    p = subs.add_parser("entropy-scan", help="ground-state entropy table")
    p.add_argument("--n", default="3..5")
    p.add_argument(
        "--measure-gap",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="also solve the full space for the gap column (N <= 5)",
    )
    add_common_flags(p)

    p = subs.add_parser("effective", help="diagonalize one graph operator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bad", default="", help="comma list of penalized shifts")
    p.add_argument("--k", type=int, default=2, help="eigenvalues to compute")
    p.add_argument("--save", default=None, help="write the operator in COO text form")
    add_common_flags(p)

    p = subs.add_parser("necklaces", help="enumerate invariant subspaces")
    p.add_argument("--n", type=int, required=True)
    add_common_flags(p)

    p = subs.add_parser("fermion", help="free-fermion amplitude A(x, t)")
    p.add_argument("--x", default="0", help="site offsets, e.g. 3 or 0..20")
    p.add_argument("--t", type=float, default=1.0)
    add_common_flags(p)
    return parser


def apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
        # flags win: re-parse with file values as defaults for this subcommand
        fresh = build_parser()
        for action in fresh._subparsers._group_actions[0].choices[args.command]._actions:  # noqa: SLF001
            if action.dest in file_values:
                raw = file_values.pop(action.dest)
                value = raw if action.type is None else action.type(raw)
                action.default = value
        if file_values:
            unknown = ", ".join(sorted(file_values))
            raise ValueError(f"unknown config keys: {unknown}")
        args = fresh.parse_args(argv)
    return args


# --- output ----------------------------------------------------------------


def _jsonify(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonify(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, (dict,)):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    return value


def emit(args: argparse.Namespace, rows: list[dict]) -> None:
    rows = [_jsonify(row) for row in rows]
    if args.format == "json":
        config = {
            k: _jsonify(v)
            for k, v in sorted(vars(args).items())
            if k not in ("format", "output")
        }
        envelope = {
            "config": config,
            "rows": rows,
            "versions": {
                "ringgap": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
        }
        text = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        fields: list[str] = []
        for row in rows:
            fields.extend(k for k in row if k not in fields)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(
                {k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()}
            )
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- verify ----------------------------------------------------------------


def _check(rows, n, name, passed, measured, threshold):
    rows.append(
        {
            "n": n,
            "check": name,
            "passed": bool(passed),
            "measured": measured,
            "threshold": threshold,
        }
    )
    return bool(passed)


def run_verify(args) -> tuple[list[dict], bool]:
    rows: list[dict] = []
    ok = True
    for n in parse_n_values(args.n):
        if n > FULL_SPACE_CAP_N:
            raise CapacityError(
                f"full-space verification is capped at N <= {FULL_SPACE_CAP_N} "
                f"(dim 3^{2 * n}); use `gap-scan`/`effective` for invariant "
                "subspaces or the nullspace bounds for other sectors"
            )
        params = ModelParams(n=n, v1=args.v1, v2=args.v2)
        ham = assemble(params)

        # ground energy, gap, and exact-state overlap
        spec = eig_lowest(
            ham, k=2, tol=args.tol, seed=args.seed, maxiter=args.maxiter,
            dense_crossover=min(args.dense_cap, 3 ** (2 * 4)),
        )
        ok &= _check(rows, n, "ground_energy_zero", abs(spec.ground_energy) <= 1e-10,
                     spec.ground_energy, 1e-10)
        ok &= _check(rows, n, "gap_nondegenerate", spec.gap > 10 * args.tol,
                     spec.gap, 10 * args.tol)
        overlap = abs(float(ground_state_exact(n) @ spec.ground_vector))
        ok &= _check(rows, n, "exact_state_overlap", overlap >= 1 - 1e-9, overlap, 1 - 1e-9)

        # sector block audit: no stored entry crosses hole sectors
        holes_row = (trit_table(ham.row, 2 * n) == 2).reshape(-1, 2, n).sum(axis=2)
        holes_col = (trit_table(ham.col, 2 * n) == 2).reshape(-1, 2, n).sum(axis=2)
        crossings = int(np.count_nonzero((holes_row != holes_col).any(axis=1)))
        ok &= _check(rows, n, "sector_block_audit", crossings == 0, crossings, 0)

        # entropy bounds across the ring cut
        state = ground_state_exact(n)
        dec = schmidt(state, n)
        s_left = entropies(dec).von_neumann_bits
        s_right = entropies(reduced_density(state, n, "R")).von_neumann_bits
        ok &= _check(rows, n, "entropy_lower_bound", s_left >= n - 1 - 1e-9, s_left, n - 1)
        ok &= _check(rows, n, "entropy_sides_equal", abs(s_left - s_right) <= 1e-9,
                     abs(s_left - s_right), 1e-9)
        ok &= _check(rows, n, "entropy_ceiling", s_left <= n * math.log2(3) + 1e-9,
                     s_left, n * math.log2(3))

        if n <= 4:
            # embedding isometry, class by class
            basis = sector_basis(n, 1, 1)
            worst = 0.0
            total_dim = 0
            for cls in necklace_classes(n):
                vecs = np.stack([
                    embed_node(cls, a, b, r, basis)
                    for r in range(cls.p)
                    for a in range(1, n + 1)
                    for b in range(1, n + 1)
                ])
                gram = vecs @ vecs.T
                worst = max(worst, float(np.abs(gram - np.eye(cls.dim)).max()))
                total_dim += cls.dim
            ok &= _check(rows, n, "embedding_isometry", worst <= 1e-12, worst, 1e-12)
            ok &= _check(rows, n, "class_dims_complete", total_dim == sector_dim(n, 1, 1),
                         total_dim, sector_dim(n, 1, 1))

            locc = locc_reduction_check(n)
            ok &= _check(rows, n, "locc_uniform_outcomes",
                         locc.max_probability_deviation <= 1e-12,
                         locc.max_probability_deviation, 1e-12)
            ok &= _check(rows, n, "locc_fidelity_one", abs(locc.min_fidelity - 1) <= 1e-12,
                         locc.min_fidelity, 1.0)

        if n % 2 == 0:
            span = max_chain_span(n)
            ok &= _check(rows, n, "brick_terms_nearest_neighbor", span <= 1, span, 1)
            permuted = permute_full_operator(ham, n, brick_site_map(n))
            spec_p = eig_lowest(
                permuted, k=2, tol=args.tol, seed=args.seed, maxiter=args.maxiter,
                dense_crossover=min(args.dense_cap, 3 ** (2 * 4)),
            )
            dev = float(np.abs(spec.eigenvalues[:2] - spec_p.eigenvalues[:2]).max())
            ok &= _check(rows, n, "brick_spectrum_match", dev <= 1e-10, dev, 1e-10)
    return rows, ok


# --- scans -----------------------------------------------------------------


def _solve_row(op, k, args):
    try:
        spec = eig_lowest(op, k=k, tol=args.tol, seed=args.seed, maxiter=args.maxiter)
        return spec, "ok"
    except ConvergenceError as exc:
        return None, f"no-convergence: {exc}"


def run_gap_scan(args) -> tuple[list[dict], bool]:
    classes = [c.strip() for c in args.classes.split(",") if c.strip()]
    unknown = set(classes) - {"singlet", "worst"}
    if unknown:
        raise ValueError(f"unknown class selectors: {sorted(unknown)}")
    rows: list[dict] = []
    ok = True
    for n in parse_n_values(args.n):
        params = ModelParams(n=n, v1=args.v1, v2=args.v2)
        log_n = math.log(n)
        per_class: dict[str, float] = {}
        for cls_name in classes:
            if cls_name == "singlet":
                p, bad = 1, frozenset()
            else:
                p, bad = n - 1, frozenset({0})
            op = build_effective(n, p, bad)
            spec, status = _solve_row(op, 2, args)
            row = {
                "n": n,
                "class": cls_name,
                "p": p,
                "bad_size": len(bad),
                "dim": op.dim,
                "status": status,
            }
            if spec is not None:
                energy = spec.gap if cls_name == "singlet" else spec.ground_energy
                row.update(
                    {
                        "value": energy,
                        "kind": "gap" if cls_name == "singlet" else "e_min",
                        "scaled_p2n2logn": energy * p**2 * n**2 * log_n,
                        "scaled_n4logn": energy * n**4 * log_n,
                        "residual": max(spec.residuals),
                        "method": spec.method,
                    }
                )
                per_class[cls_name] = energy
            else:
                ok = False
            rows.append(row)
        # headline: other-sector floor from the per-ring bounds
        floors = {}
        for a in range(n + 1):
            floors[a], _ = ring_lower_bound(n, a, params, args.dense_cap)
        sector_floor = min(
            floors[a] + floors[b]
            for a in range(n + 1)
            for b in range(n + 1)
            if (a, b) != (1, 1)
        )
        candidates = [sector_floor] + [per_class[c] for c in classes if c in per_class]
        rows.append(
            {
                "n": n,
                "class": "headline",
                "value": min(candidates),
                "kind": "delta_lower",
                "sector_floor": sector_floor,
                "status": "ok" if len(per_class) == len(classes) else "partial",
            }
        )
    return rows, ok


def run_entropy_scan(args) -> tuple[list[dict], bool]:
    rows: list[dict] = []
    ok = True
    for n in parse_n_values(args.n):
        state = ground_state_exact(n)
        report = entropies(schmidt(state, n))
        row = {
            "n": n,
            "s_vn_bits": report.von_neumann_bits,
            "schmidt_rank": report.schmidt_rank,
            "lower_bound_bits": n - 1,
            "ceiling_bits": n * math.log2(3),
        }
        if args.measure_gap and n <= FULL_SPACE_CAP_N:
            params = ModelParams(n=n, v1=args.v1, v2=args.v2)
            spec, status = _solve_row(assemble(params), 2, args)
            row["gap_status"] = status
            if spec is not None:
                delta = spec.gap
                log2_s, xi = hastings_bound_log2(HastingsBoundParams(delta=delta, site_dim=9))
                row.update(
                    {
                        "gap": delta,
                        "gap_residual": max(spec.residuals),
                        "hastings_log2_s_max": log2_s,
                        "xi_prime": xi,
                        "delta_scale": (-delta * math.log(delta)) ** -0.25,
                    }
                )
            else:
                ok = False
        rows.append(row)
        if not (report.von_neumann_bits >= n - 1 - 1e-9):
            ok = False
    return rows, ok


def run_effective(args) -> tuple[list[dict], bool]:
    bad = frozenset(int(r) for r in args.bad.split(",") if r.strip() != "")
    op = build_effective(args.n, args.p, bad)
    if args.save:
        op.save(args.save)
    spec, status = _solve_row(op, args.k, args)
    row = {
        "n": args.n,
        "p": args.p,
        "bad_set": sorted(bad),
        "dim": op.dim,
        "nnz": op.nnz,
        "status": status,
    }
    if spec is not None:
        row.update(spec.to_record())
    return [row], spec is not None


def run_necklaces(args) -> tuple[list[dict], bool]:
    classes = necklace_classes(args.n)
    rows = [cls.to_record() for cls in classes]
    rows.append(
        {
            "n": args.n,
            "summary": "totals",
            "class_count": len(classes),
            "dim_sum": sum(cls.dim for cls in classes),
            "sector_dim": sector_dim(args.n, 1, 1) if args.n >= 3 else None,
        }
    )
    return rows, True


def run_fermion(args) -> tuple[list[dict], bool]:
    rows = []
    for x in parse_n_values(args.x):
        amp = fermion_amplitude(x, args.t, tol=min(args.tol, 1e-10))
        rows.append(
            {
                "x": x,
                "t": args.t,
                "re": amp.real,
                "im": amp.imag,
                "abs": abs(amp),
            }
        )
    return rows, True


COMMANDS = {
    "verify": run_verify,
    "gap-scan": run_gap_scan,
    "entropy-scan": run_entropy_scan,
    "effective": run_effective,
    "necklaces": run_necklaces,
    "fermion": run_fermion,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = apply_config_file(parser, sys.argv[1:] if argv is None else argv)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        rows, ok = COMMANDS[args.command](args)
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit(args, rows)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
