"""Command-line interface.

Every command builds a report ``{command, inputs, result, version}``. The
report is printed as text, or as JSON with ``--format json``; ``--out PATH``
also writes the JSON form to a file. Integers are serialised as decimal
strings so 64-bit codes survive any JSON consumer.

Exit codes: 0 success, 1 verification failure or exhausted budget,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .classify import classify_op
from .compat import Method, are_compatible, dual_set, hat_op
from .duality import (
    are_isomorphic,
    automorphisms,
    conjugate,
    count_group_structures,
    group_ops_with_identity,
    iso_classes,
    parse_permutation,
    partition_group_ops,
    phi,
)
from .enumerate import ClassFilter, enumerate_ops
from .errors import BudgetError, MagmaError, VerificationError
from .explorer import scan_question
from .golden import DEFAULT_SAMPLES, ITEMS, run_checklist
from .table import CayleyTable, LabelMap, has_codes, read_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# operand layouts: T = table (file or --table), L = element label
LAYOUTS = {
    "classify": ("T",),
    "dual": ("T",),
    "hat": ("T", "L", "T"),
    "compatible": ("T", "T"),
    "phi": ("T", "L"),
    "conjugate": ("T",),
    "iso": ("T", "T"),
    "aut": ("T",),
}
SYNOPSIS = {
    "classify": "FILE",
    "dual": "FILE",
    "hat": "FILE1 LABEL FILE2",
    "compatible": "FILE1 FILE2",
    "phi": "FILE LABEL",
    "conjugate": "FILE",
    "iso": "FILE1 FILE2",
    "aut": "FILE",
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report documents


def _doc(value):
    """Normalise to JSON-ready data: ints become decimal strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _doc(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_doc(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def table_doc(t: CayleyTable, lm: LabelMap) -> dict:
    out = {"n": t.n}
    if has_codes(t.n):
        out["code"] = t.code
    out["rows"] = [" ".join(lm[x] for x in row) for row in t.rows()]
    return out


def render_text(report: dict) -> str:
    lines = [f"{report['command']}"]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, dict) and set(v) <= {"n", "code", "rows"}:
                    head = f"{pad}- code {v['code']}" if "code" in v else f"{pad}-"
                    lines.append(head)
                    for r in v["rows"]:
                        lines.append(f"{pad}    {r}")
                elif isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(v)}")

    walk(report["result"], 1)
    return "\n".join(lines) + "\n"


def _scalar(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


# ---------------------------------------------------------------------------
# operands


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return read_table(text)


def _operands(args):
    layout = LAYOUTS[args.command]
    inline = list(args.table or [])
    positional = list(args.operands)
    tables, labels = [], []
    for slot in layout:
        if slot == "T":
            if inline:
                tables.append(read_table(inline.pop(0)))
            elif positional:
                tables.append(_load(positional.pop(0)))
            else:
                raise UsageError(f"missing table operand; usage: {args.command} {SYNOPSIS[args.command]}")
        else:
            if not positional:
                raise UsageError(f"missing LABEL operand; usage: {args.command} {SYNOPSIS[args.command]}")
            labels.append(positional.pop(0))
    if inline or positional:
        raise UsageError(f"too many operands; usage: {args.command} {SYNOPSIS[args.command]}")
    orders = {t.n for t, _ in tables}
    if len(orders) > 1:
        raise UsageError(f"tables have different orders {sorted(orders)}")
    return tables, labels


def _label_or_none(lm, x):
    return None if x is None else lm[x]


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args):
    (t, lm), = _operands(args)[0]
    rec = classify_op(t)
    return EXIT_OK, {
        "table": table_doc(t, lm),
        "nd": rec.nd,
        "sg": rec.sg,
        "mn": rec.mn,
        "gr": rec.gr,
        "commutative": rec.commutative,
        "identity": _label_or_none(lm, rec.identity),
        "assoc_counterexample": None if rec.assoc_counterexample is None
        else [lm[x] for x in rec.assoc_counterexample],
        "missing_image": _label_or_none(lm, rec.missing_image),
        "non_invertible": _label_or_none(lm, rec.non_invertible),
    }


def cmd_dual(args):
    (t, lm), = _operands(args)[0]
    d = dual_set(t, args.method, budget=args.budget)
    return EXIT_OK, {
        "table": table_doc(t, lm),
        "method": d.method.value,
        "size": len(d),
        "members": [table_doc(m, lm) for m in d.tables()],
    }


def cmd_hat(args):
    tables, labels = _operands(args)
    (z1, lm), (z2, _) = tables
    a = lm.index(labels[0])
    return EXIT_OK, {"label": labels[0], "table": table_doc(hat_op(z1, a, z2), lm)}


def cmd_compatible(args):
    (z1, lm), (z2, _) = _operands(args)[0]
    rep = are_compatible(z1, z2)
    return EXIT_OK, {
        "compatible": rep.compatible,
        "failing_equation": None if rep.failing_equation is None else rep.failing_equation.value,
        "witness": None if rep.witness is None else [lm[x] for x in rep.witness],
    }


def cmd_phi(args):
    tables, labels = _operands(args)
    (z0, lm), = tables
    a = lm.index(labels[0])
    return EXIT_OK, {"label": labels[0], "table": table_doc(phi(z0, a), lm)}


def cmd_conjugate(args):
    (z, lm), = _operands(args)[0]
    sigma = parse_permutation(args.perm, lm)
    return EXIT_OK, {
        "permutation": sigma.to_cycle_string(lm),
        "table": table_doc(conjugate(z, sigma), lm),
    }


def cmd_iso(args):
    (z1, lm), (z2, _) = _operands(args)[0]
    sigma = are_isomorphic(z1, z2)
    return EXIT_OK, {
        "isomorphic": sigma is not None,
        "map": None if sigma is None else sigma.to_cycle_string(lm),
    }


def cmd_aut(args):
    (z, lm), = _operands(args)[0]
    aut = automorphisms(z)
    return EXIT_OK, {"size": len(aut), "automorphisms": [s.to_cycle_string(lm) for s in aut]}


def _order_labels(n, label):
    lm = LabelMap.default(n)
    e = 0 if label is None else lm.index(label)
    return lm, e


def cmd_groups(args):
    lm, e = _order_labels(args.n, args.identity)
    tables = group_ops_with_identity(args.n, e)
    return EXIT_OK, {
        "identity": lm[e],
        "count": len(tables),
        "tables": [table_doc(t, lm) for t in tables],
    }


def cmd_partition(args):
    lm = LabelMap.default(args.n)
    rep = partition_group_ops(args.n)
    blocks = []
    for b in rep.blocks:
        blocks.append({
            "base": table_doc(b.base.table(), lm),
            "size": len(b),
            "members": [str(c) for c in b.members],
        })
    return EXIT_OK, {"identity": lm[rep.identity], "total": rep.total, "blocks": blocks}


def cmd_classes(args):
    lm = LabelMap.default(args.n)
    out = []
    for c in iso_classes(args.n, 0):
        out.append({
            "representative": table_doc(c.representative, lm),
            "size": c.size,
            "aut_size": c.aut_size,
        })
    return EXIT_OK, {"identity": lm[0], "count": len(out), "classes": out}


def cmd_count_groups(args):
    return EXIT_OK, {"count": count_group_structures(args.n)}


def cmd_enumerate(args):
    if args.n == 4 and args.filter not in ("gr", "mn") and not args.opt_in_large:
        raise UsageError("a full order-4 scan visits 4**16 tables; pass --opt-in-large")
    codes: Optional[list] = None if args.count_only else []
    census = enumerate_ops(
        args.n,
        args.filter,
        None if codes is None else codes.append,
        workers=args.workers,
        opt_in_large=args.opt_in_large,
        checkpoint=args.checkpoint,
    )
    result = {"filter": census.filter.value, "count": census.count}
    if codes is not None:
        result["codes"] = [str(c) for c in sorted(codes)]
    return EXIT_OK, result


def cmd_explore_question(args):
    if args.n > 3 and args.budget is None:
        raise UsageError("orders above 3 need --budget SECONDS")
    rep = scan_question(args.n, args.budget)
    result = {
        "status": rep.status,
        "part1_holds": rep.part1_holds,
        "part1_missing": [str(c) for c in rep.part1_missing],
        "part2_holds": rep.part2_holds,
        "part2_failures": [str(c) for c in rep.part2_failures],
        "scanned": rep.scanned,
        "scanned_ranges": [[str(lo), str(hi)] for lo, hi in rep.scanned_ranges],
    }
    return EXIT_OK, result


def cmd_verify_paper(args):
    def progress(r):
        if args.format == "text" and not args.quiet:
            print(r.line(), file=args._stdout, flush=True)
            for d in r.details:
                print(f"       {d}", file=args._stdout)

    results = run_checklist(args.corpus, samples=args.samples, only=args.only, progress=progress)
    items = [{"item": r.item, "title": r.title, "passed": r.passed, "details": r.details} for r in results]
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_FAIL), {"passed": ok, "items": items}


# ---------------------------------------------------------------------------
# parser


def _positive(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return n


def _seconds(value):
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected seconds, got {value!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError(f"expected positive seconds, got {value!r}")
    return x


def _items(value):
    known = [key for key, _, _ in ITEMS]
    items = [v.strip().upper() for v in value.split(",") if v.strip()]
    bad = [v for v in items if v not in known]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown checklist items {bad}; choose from {','.join(known)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="also write the JSON report here")

    parser = argparse.ArgumentParser(prog="magmadual", description="Binary operations on finite sets and their duals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def table_cmd(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, usage=f"%(prog)s {SYNOPSIS[name]} [options]")
        p.add_argument("operands", nargs="*", metavar="OPERAND")
        p.add_argument("--table", action="append", metavar="ROWS",
                       help='inline table such as "a b c / b c a / c a b"; fills table operands in order')
        p.set_defaults(func=func)
        return p

    table_cmd("classify", cmd_classify, "classify a table")
    p = table_cmd("dual", cmd_dual, "all tables compatible with a table")
    p.add_argument("--method", choices=[m.value for m in Method] + ["auto"], default="auto")
    p.add_argument("--budget", type=_positive, default=10**9, help="node budget for backtracking")
    table_cmd("hat", cmd_hat, "hat product of two tables at a label")
    table_cmd("compatible", cmd_compatible, "test two tables for compatibility")
    table_cmd("phi", cmd_phi, "sandwich image of a label under a monoid")
    p = table_cmd("conjugate", cmd_conjugate, "transport a table along a permutation")
    p.add_argument("--perm", required=True, metavar="SPEC", help='e.g. "b<->c" or "(b c d)"')
    table_cmd("iso", cmd_iso, "find an isomorphism between two tables")
    table_cmd("aut", cmd_aut, "automorphism group of a table")

    def order_cmd(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("n", type=_positive, metavar="N")
        p.set_defaults(func=func)
        return p

    p = order_cmd("groups", cmd_groups, "group tables with a given identity")
    p.add_argument("--identity", metavar="LABEL")
    order_cmd("partition", cmd_partition, "partition of the group tables into duals")
    order_cmd("classes", cmd_classes, "isomorphism classes of group tables")
    order_cmd("count-groups", cmd_count_groups, "number of group structures")
    p = order_cmd("enumerate", cmd_enumerate, "census of tables by class")
    p.add_argument("--filter", choices=[f.value for f in ClassFilter], default="all")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--workers", type=_positive, default=None, help="default: $MAGMA_WORKERS or 1")
    p.add_argument("--opt-in-large", action="store_true", help="allow the 4**16 scan at order 4")
    p.add_argument("--checkpoint", metavar="PATH", help="progress file for resumable scans")
    p = order_cmd("explore-question", cmd_explore_question, "scan the covering question")
    p.add_argument("--budget", type=_seconds, metavar="SECONDS")

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction checklist A1-A10")
    p.add_argument("--corpus", metavar="DIR", help="directory holding n3/ and n4/ table files")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random order-4 samples for A9")
    p.add_argument("--only", type=_items, metavar="ITEMS", help="comma-separated subset such as A1,A6")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify_paper)
    return parser


_HIDDEN = {"func", "format", "out", "quiet", "command"}


def run(argv, stdout=None, stderr=None) -> tuple[int, Optional[dict]]:
    """Execute one command; returns the exit code and the report document."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), None
    args._stdout = stdout
    inputs = {k: v for k, v in vars(args).items() if k not in _HIDDEN and not k.startswith("_")}

    try:
        code, result = args.func(args)
    except UsageError as exc:
        print(f"magmadual {args.command}: {exc}", file=stderr)
        return EXIT_USAGE, None
    except (VerificationError, BudgetError) as exc:
        print(f"magmadual {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAIL, None
    except (MagmaError, ValueError) as exc:
        print(f"magmadual {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE, None

    report = _doc({"command": args.command, "inputs": inputs, "result": result, "version": __version__})
    text = dumps(report)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"magmadual: cannot write {args.out}: {exc.strerror}", file=stderr)
            return EXIT_USAGE, report
    if args.format == "json":
        stdout.write(text)
    elif args.command == "verify-paper":
        status = "all items pass" if code == EXIT_OK else "some items FAIL"
        print(status, file=stdout)
    else:
        stdout.write(render_text(report))
    return code, report


def main(argv=None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
