"""Command-line front end: ``trapredund {bounds,construct,audit,sample,break}``.

Exit codes: 0 success, 1 sampling exhausted its attempts, 2 precondition or
budget refusal, 3 precision failure, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, bounds, codes, gf2core, trapping
from .geometry import SearchBudgetError, build_geometry, enumerate_arcs, incidence_matrix, unisecant_formula

EXIT_OK, EXIT_SAMPLE_FAILED, EXIT_REFUSED, EXIT_PRECISION, EXIT_IO = 0, 1, 2, 3, 4

JSON_SAFE_INT = 2**53
CSV_SCI_THRESHOLD = 10**15

HP_EPSILONS = ("0.01", "1e-20")

# grids of the three reference tables; reference_m holds the tabulated m per (a, variant, epsilon)
PRESETS = {
    "margulis-table1": {
        "code": "margulis-p11", "n": 2640, "k": 1320, "d": 40, "elementary": False,
        "cells": [(6, 5), (8, 5), (12, 5), (14, 5)],
        "reference_m": {
            6: (75, 87, 150), 8: (94, 105, 167), 12: (129, 138, 200), 14: (145, 154, 216),
        },
    },
    "margulis-table2": {
        "code": "margulis-p11", "n": 2640, "k": 1320, "d": 40, "elementary": True,
        "cells": [(6, 5), (8, 5), (12, 5), (14, 5)],
        "reference_m": {
            6: (32, 39, 70), 8: (26, 29, 49), 12: (19, 20, 31), 14: (17, 18, 26),
        },
    },
    "pg-table3": {
        "elementary": True,
        "codes": {
            "pg-2-16": {"n": 273, "k": 191, "d": 18, "cells": [(3, 45), (8, 80)]},
            "pg-2-32": {"n": 1057, "k": 813, "d": 34, "cells": [(3, 93), (16, 288)]},
        },
        "reference_m": {
            ("pg-2-16", 3): (94, 125, 228), ("pg-2-16", 8): (80, 80, 80),
            ("pg-2-32", 3): (115, 178, 338), ("pg-2-32", 16): (288, 288, 288),
        },
    },
}

ROW_FIELDS = (
    "code", "n", "k", "a", "b", "variant", "elementary", "epsilon",
    "m", "m_hat", "exact", "reference_m", "delta", "anomalies", "certificate",
)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- shared helpers ------------------------------------------------------------------


def _threads(args) -> int:
    value = args.threads
    if value is None:
        env = os.environ.get("TRAPREDUND_THREADS")
        value = int(env) if env else 1
    if value < 1:
        raise CliError("thread count must be positive", EXIT_REFUSED)
    return value


def _sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read_input(path: str) -> tuple[str, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    return data.decode("utf-8"), _sha256_bytes(data)


def _json_safe(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= JSON_SAFE_INT else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.integer):
        return _json_safe(int(obj))
    return obj


def _config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _meta(args, inputs: dict[str, str], seed=None) -> dict:
    return {
        "tool": "trapredund",
        "version": __version__,
        "command": args.command,
        "config": _config(args),
        "seed": seed,
        "inputs": dict(sorted(inputs.items())),
    }


def _dump_json(payload) -> str:
    return json.dumps(_json_safe(payload), indent=2, sort_keys=False) + "\n"


def _csv_cell(value, exact: bool) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int) and not exact and abs(value) >= CSV_SCI_THRESHOLD:
        return f"{value:.6e}"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def _dump_csv(meta: dict, fields, rows, exact: bool) -> str:
    buf = io.StringIO()
    buf.write(f"# tool={meta['tool']} version={meta['version']} command={meta['command']}\n")
    buf.write(f"# seed={meta['seed']}\n")
    buf.write("# config=" + json.dumps(_json_safe(meta["config"]), sort_keys=True) + "\n")
    buf.write("# inputs=" + json.dumps(meta["inputs"], sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row.get(f), exact) for f in fields])
    return buf.getvalue()


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc


def _parse_ints(spec: str) -> list[int]:
    """'3', '3,5,7' or '3-6'."""
    out: list[int] = []
    try:
        for part in spec.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise CliError(f"cannot parse integer list {spec!r}", EXIT_REFUSED) from exc
    if not out:
        raise CliError(f"empty integer list {spec!r}", EXIT_REFUSED)
    return out


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise CliError(f"{name} must be positive", EXIT_REFUSED)
    return value


# -- bounds ---------------------------------------------------------------------------


def _eval_cell(cell: dict) -> dict:
    q = bounds.BoundQuery(
        cell["n"], cell["a"], cell["b"], cell["k"], cell["variant"], cell["elementary"],
        None if cell["epsilon"] is None else Fraction(cell["epsilon"]), cell["d"],
    )
    start = time.perf_counter()
    result = bounds.min_m(q, enforce_a_range=cell["enforce_a_range"])
    out = result.to_json()
    out["seconds"] = time.perf_counter() - start
    return out


def _bound_cells(args) -> list[dict]:
    columns = [("std", None)] + [("hp", eps) for eps in HP_EPSILONS]
    cells = []
    if args.preset:
        if args.preset not in PRESETS:
            raise CliError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}", EXIT_REFUSED)
        p = PRESETS[args.preset]
        groups = p["codes"].items() if "codes" in p else [(p["code"], p)]
        for name, g in groups:
            for a, b in g["cells"]:
                key = (name, a) if "codes" in p else a
                refs = p["reference_m"][key]
                for (variant, eps), ref in zip(columns, refs):
                    cells.append({
                        "code": name, "n": g["n"], "k": g["k"], "d": g["d"], "a": a, "b": b,
                        "variant": variant, "elementary": p["elementary"], "epsilon": eps,
                        "reference_m": ref, "enforce_a_range": True,
                    })
        return cells
    if args.n is None or args.a is None or args.b is None:
        raise CliError("explicit bounds need --n, --a and --b (or use --preset)", EXIT_REFUSED)
    variants = ["std", "hp"] if args.variant == "all" else [args.variant]
    eps_list = args.eps.split(",") if args.eps else list(HP_EPSILONS)
    for a, b in itertools.product(_parse_ints(args.a), _parse_ints(args.b)):
        for variant in variants:
            for eps in (eps_list if variant == "hp" else [None]):
                if eps is not None:
                    try:
                        Fraction(eps)
                    except ValueError as exc:
                        raise CliError(f"bad epsilon {eps!r}", EXIT_REFUSED) from exc
                cells.append({
                    "code": args.code_label, "n": args.n, "k": args.k, "d": args.d, "a": a, "b": b,
                    "variant": variant, "elementary": args.elementary, "epsilon": eps,
                    "reference_m": None, "enforce_a_range": not args.no_a_range,
                })
    return cells


def cmd_bounds(args) -> int:
    cells = _bound_cells(args)
    workers = _threads(args)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_eval_cell, cells))
    else:
        results = [_eval_cell(c) for c in cells]
    rows, certs = [], []
    for i, (cell, res) in enumerate(zip(cells, results)):
        ref = cell["reference_m"]
        delta = None if ref is None else res["m"] - ref
        row = {
            "code": cell["code"], "n": cell["n"], "k": cell["k"], "a": cell["a"], "b": cell["b"],
            "variant": cell["variant"], "elementary": cell["elementary"], "epsilon": cell["epsilon"],
            "m": res["m"], "m_hat": res["m_hat"], "exact": res["exact"], "reference_m": ref,
            "delta": delta, "anomalies": res["anomalies"], "certificate": i,
        }
        if args.timing:
            row["seconds"] = round(res["seconds"], 6)
        if delta:
            print(
                f"discrepancy: {cell['code']} a={cell['a']} b={cell['b']} {cell['variant']} "
                f"eps={cell['epsilon']}: m={res['m']} vs reference {ref}",
                file=sys.stderr,
            )
        rows.append(row)
        certs.append({"id": i, "query": res["query"], "certificate": res["certificate"]})
    meta = _meta(args, {})
    fields = list(ROW_FIELDS) + (["seconds"] if args.timing else [])
    if args.format == "csv":
        _write(_dump_csv(meta, fields, rows, args.exact), args.output)
        if args.output and args.output != "-":
            _write(_dump_json({"meta": meta, "certificates": certs}), str(Path(args.output).with_suffix(".certs.json")))
    else:
        _write(_dump_json({"meta": meta, "rows": rows, "certificates": certs}), args.output)
    return EXIT_OK


# -- construct ------------------------------------------------------------------------


def _build_named(kind: str, args) -> tuple[codes.LinearCode, str]:
    if kind == "pg":
        return codes.build_pg_code(args.pg_m, args.q), f"pg-{args.pg_m}-{args.q}"
    if kind == "margulis":
        return codes.build_margulis(args.p), f"margulis-p{args.p}"
    if kind == "golay24":
        return codes.build_reference_code("golay24"), "golay24"
    if kind == "hamming7":
        return codes.build_reference_code("hamming7"), "hamming7"
    if kind == "repetition":
        return codes.build_reference_code("repetition", n=args.n), f"repetition-{args.n}"
    raise CliError(f"unknown code {kind!r}", EXIT_REFUSED)


def describe(code: codes.LinearCode, alist_text: str, girth: int | None = None) -> dict:
    H = code.H
    return {
        "n": code.n,
        "k": code.k,
        "rows": H.rows,
        "rank": code.n - code.k,
        "d": code.d,
        "d_kind": code.d_kind,
        "dual_distance": code.dual_distance,
        "row_weights": sorted(set(int(w) for w in H.row_weights())),
        "col_weights": sorted(set(int(w) for w in H.col_weights())),
        "girth": girth,
        "provenance": code.provenance,
        "alist_sha256": _sha256_bytes(alist_text.encode()),
    }


def cmd_construct(args) -> int:
    code, slug = _build_named(args.code, args)
    text = gf2core.to_alist(code.H)
    out = args.output or f"{slug}.alist"
    g = codes.girth(code.H, cap=args.girth_cap) if args.girth else None
    desc = describe(code, text, g)
    meta = _meta(args, {})
    _write(text, out)
    desc_path = args.descriptor or (str(Path(out).with_suffix(".json")) if out != "-" else None)
    payload = _dump_json({"meta": meta, "code": desc})
    if desc_path:
        _write(payload, desc_path)
    else:
        sys.stderr.write(payload)
    return EXIT_OK


# -- loading matrices for audit / sample / break -----------------------------------------


def _load_code(args) -> tuple[codes.LinearCode, dict[str, str]]:
    if getattr(args, "alist", None):
        text, digest = _read_input(args.alist)
        try:
            H = gf2core.from_alist(text)
        except gf2core.AlistError as exc:
            raise CliError(f"{args.alist}: {exc}", EXIT_IO) from exc
        code = codes.make_code(H, {"construction": "alist", "path": args.alist})
        if getattr(args, "d", None) is not None:
            code.d, code.d_kind = args.d, "estimated"
        return code, {args.alist: digest}
    kind = getattr(args, "code", None)
    if kind is None:
        raise CliError("give a matrix with --alist or a built-in --code", EXIT_REFUSED)
    code, slug = _build_named(kind, args)
    return code, {f"builtin:{slug}": _sha256_bytes(gf2core.to_alist(code.H).encode())}


# -- audit ----------------------------------------------------------------------------------


def _arc_check(H: gf2core.BitMatrix, M: int, q: int, sizes, budget: int) -> list[dict]:
    geo = build_geometry(M, q)
    ref = incidence_matrix(geo)
    if ref.shape != H.shape or not np.array_equal(ref.data, H.data):
        raise CliError(f"matrix is not the PG({M},{q}) incidence matrix in canonical order", EXIT_REFUSED)
    out = []
    for s in sizes:
        formula = unisecant_formula(M, q, s)
        enum = enumerate_arcs(geo, s, budget=budget)
        observed = set()
        all_match = True
        for arc in enum.arcs:
            rep = trapping.measure(H, arc.point_indices)
            observed.add(rep.b)
            all_match &= rep.elementary and rep.b == formula
        out.append({
            "s": s, "arcs": len(enum.arcs), "formula_b": formula,
            "observed_b": sorted(observed), "all_match": all_match,
        })
    return out


def cmd_audit(args) -> int:
    budget = _positive("budget", args.budget)
    code, inputs = _load_code(args)
    H = code.H
    sizes = _parse_ints(args.a)
    # refuse before doing any work
    for a in sizes:
        trapping._guard(H, a, budget)
    workers = _threads(args)
    rows = []
    for a in sizes:
        res = trapping.exhaustive_min_b(H, a, args.elementary, budget, workers)
        w = res.witness
        rows.append({
            "a": a, "elementary": args.elementary, "min_b": res.min_b,
            "witness": list(w.columns) if w else None,
            "witness_elementary": w.elementary if w else None,
            "subsets_scanned": res.subsets_scanned,
        })
    arcs = None
    if args.arcs:
        geom = args.geometry
        if geom is None:
            raise CliError("--arcs needs --geometry M,q", EXIT_REFUSED)
        M, q = _parse_ints(geom)
        arcs = _arc_check(H, M, q, sizes, budget)
    meta = _meta(args, inputs)
    if args.format == "csv":
        fields = ["a", "elementary", "min_b", "witness", "witness_elementary", "subsets_scanned"]
        text = _dump_csv(meta, fields, rows, args.exact)
        if arcs:
            text += "\n" + _dump_csv(meta, ["s", "arcs", "formula_b", "observed_b", "all_match"], arcs, args.exact)
        _write(text, args.output)
    else:
        _write(_dump_json({"meta": meta, "matrix": {"rows": H.rows, "cols": H.cols}, "audit": rows, "arcs": arcs}), args.output)
    return EXIT_OK


# -- sample -----------------------------------------------------------------------------------


def cmd_sample(args) -> int:
    budget = _positive("budget", args.budget)
    code, inputs = _load_code(args)
    m = args.m
    if m is None:
        fn = bounds.min_m_std_elementary if args.elementary else bounds.min_m_std
        m = fn(code.n, args.a, args.b, k=code.k, d=code.d, enforce_a_range=not args.no_a_range).m
    out = trapping.sample_lll_matrix(
        code, m, args.a, args.b, args.elementary, _positive("max-attempts", args.max_attempts), args.seed, budget
    )
    meta = _meta(args, inputs, seed=args.seed)
    report = {
        "meta": meta,
        "m": m,
        "success": out.success,
        "attempts": out.attempts,
        "best_min_b": out.best_min_b,
        "log": out.log,
    }
    if out.success:
        full = out.matrix
        text = gf2core.to_alist(full)
        check = trapping.verify_free(full, args.a, args.b, args.elementary, budget)
        report.update({
            "rows": full.rows,
            "rank": gf2core.rank(full),
            "verified": check.passed,
            "alist_sha256": _sha256_bytes(text.encode()),
        })
        if args.output:
            _write(text, args.output)
    log_path = args.log or (str(Path(args.output).with_suffix(".json")) if args.output and args.output != "-" else None)
    payload = _dump_json(report)
    if log_path:
        _write(payload, log_path)
    else:
        sys.stdout.write(payload)
    return EXIT_OK if out.success else EXIT_SAMPLE_FAILED


# -- break --------------------------------------------------------------------------------------


def cmd_break(args) -> int:
    expansion = None
    if args.fixture:
        config = {"expansion-a": "a", "expansion-b": "b"}[args.fixture]
        H, basic, _ = trapping.expansion_fixture(config)
        text = gf2core.to_alist(H)
        inputs = {f"fixture:{args.fixture}": _sha256_bytes(text.encode())}
        exp = trapping.margulis_expansion(H, basic)
        expansion = {
            "config": exp.config,
            "labels": exp.labels,
            "extended_columns": list(exp.extended_columns),
            "rows": [r.to_json() for r in exp.rows],
            "note": exp.note,
        }
        default_cols = list(exp.extended_columns)
    else:
        code, inputs = _load_code(args)
        H = code.H
        default_cols = None
    if args.columns:
        cols = _parse_ints(args.columns)
    elif args.random is not None:
        rng = np.random.default_rng(args.seed)
        cols = sorted(int(c) for c in rng.choice(H.cols, size=args.random, replace=False))
    elif default_cols is not None:
        cols = default_cols
    else:
        raise CliError("give --columns or --random", EXIT_REFUSED)
    if len(set(cols)) != len(cols) or any(not 0 <= c < H.cols for c in cols):
        raise CliError("columns must be distinct indices inside the matrix", EXIT_REFUSED)
    before = trapping.measure(H, cols)
    res = trapping.break_trapping_set(H, cols, _positive("max-combo", args.max_combo))
    rows = [
        {"rank": i, "size": len(c.combo), "combo": list(c.combo),
         "restriction_weight": c.restriction_weight, "full_weight": c.full_weight}
        for i, c in enumerate(res.candidates)
    ]
    applied = None
    if args.apply and res.candidates:
        top = res.candidates[0]
        H2 = H.append_row(top.row)
        after = trapping.measure(H2, cols)
        applied = {"combo": list(top.combo), "b_before": before.b, "b_after": after.b}
        if args.write_matrix:
            _write(gf2core.to_alist(H2), args.write_matrix)
    meta = _meta(args, inputs, seed=args.seed if args.random is not None else None)
    if args.format == "csv":
        fields = ["rank", "size", "combo", "restriction_weight", "full_weight"]
        _write(_dump_csv(meta, fields, rows, args.exact), args.output)
    else:
        _write(_dump_json({
            "meta": meta,
            "columns": cols,
            "before": before.to_json(),
            "candidates": rows,
            "applied": applied,
            "expansion": expansion,
        }), args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------


def _code_options(p: argparse.ArgumentParser, with_alist: bool = True) -> None:
    src = p.add_mutually_exclusive_group()
    if with_alist:
        src.add_argument("--alist", help="parity-check matrix in alist format")
    src.add_argument("--code", choices=["pg", "margulis", "golay24", "hamming7", "repetition"], help="built-in code")
    p.add_argument("--pg-m", dest="pg_m", type=int, default=2, help="PG dimension (pg)")
    p.add_argument("--q", type=int, default=4, help="PG field size (pg)")
    p.add_argument("--p", type=int, default=11, help="SL2 prime (margulis)")
    p.add_argument("--n", type=int, default=5, help="length (repetition)")
    p.add_argument("--d", type=int, default=None, help="distance to tag an alist code with")


def _common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: $TRAPREDUND_THREADS or 1)")
    if fmt:
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--exact", action="store_true", help="never use scientific notation in CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trapredund", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"trapredund {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="minimal m for the LLL bounds")
    p.add_argument("--preset", help=f"one of {', '.join(PRESETS)}")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, help="minimum distance used for the a-range check")
    p.add_argument("--a", help="set sizes, e.g. 6 or 6,8 or 3-6")
    p.add_argument("--b", help="odd-check thresholds, same syntax")
    p.add_argument("--variant", choices=["std", "hp", "all"], default="std")
    p.add_argument("--eps", help="comma-separated epsilons for hp (default 0.01,1e-20)")
    p.add_argument("--elementary", action="store_true")
    p.add_argument("--no-a-range", action="store_true", help="skip the a <= (d-1)/2 check")
    p.add_argument("--code-label", default="custom")
    p.add_argument("--timing", action="store_true", help="add wall time per cell (breaks byte-identical reruns)")
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build a code and write its alist and descriptor")
    p.add_argument("code", choices=["pg", "margulis", "golay24", "hamming7", "repetition"])
    p.add_argument("--m", dest="pg_m", type=int, default=2, help="PG dimension")
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--p", type=int, default=11)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--descriptor", help="descriptor path (default: output with .json suffix)")
    p.add_argument("--girth", action="store_true", help="compute the Tanner-graph girth")
    p.add_argument("--girth-cap", type=int, default=None)
    _common(p, fmt=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("audit", help="exhaustive minimum-b scan per set size")
    p.add_argument("matrix", nargs="?", help="alist file (same as --alist)")
    _code_options(p)
    p.add_argument("--a", required=True, help="set sizes, e.g. 3-6")
    p.add_argument("--elementary", action="store_true")
    p.add_argument("--budget", type=int, default=trapping.DEFAULT_BUDGET)
    p.add_argument("--arcs", action="store_true", help="cross-check arcs of a PG incidence matrix")
    p.add_argument("--geometry", help="M,q of the PG input for --arcs")
    _common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("sample", help="sample a matrix free of small (a, s) sets")
    _code_options(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--rows", dest="m", type=int, default=None, help="sampled rows m (default: the std LLL bound)")
    p.add_argument("--elementary", action="store_true")
    p.add_argument("--no-a-range", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=100)
    p.add_argument("--budget", type=int, default=trapping.DEFAULT_BUDGET)
    p.add_argument("--log", help="report path (default: output with .json suffix, else stdout)")
    _common(p, fmt=False)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("break", help="rank row combinations that raise b of a column set")
    _code_options(p)
    p.add_argument("--fixture", choices=["expansion-a", "expansion-b"], help="synthetic (12,4)->(14,4) expansion matrix")
    p.add_argument("--columns", help="column indices, e.g. 0,5,9")
    p.add_argument("--random", type=int, help="pick this many random columns")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-combo", type=int, default=3)
    p.add_argument("--apply", action="store_true", help="append the top candidate and re-measure")
    p.add_argument("--write-matrix", help="write the matrix with the appended row")
    _common(p)
    p.set_defaults(func=cmd_break)
    return parser


def _normalize(args) -> None:
    # audit's positional matrix doubles as --alist
    if getattr(args, "matrix", None):
        if args.alist:
            raise CliError("give the matrix once", EXIT_REFUSED)
        args.alist = args.matrix


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _normalize(args)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SearchBudgetError as exc:
        print(f"refused: {exc} (estimate {exc.estimate})", file=sys.stderr)
        return EXIT_REFUSED
    except bounds.PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except gf2core.AlistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, gf2core.SpanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
