"""Command-line front end: load documents, run checks, write JSON verdict reports.

Exit status is 0 when every check passes, 1 when one fails and 2 on input
or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence

from . import __version__
from .algebra import CHECKS, GradedAlgebra
from .classical import (
    check_super_products,
    compute_osp,
    compute_sl,
    sl_closure_check,
    osp_closure_check,
    superize,
    verify_thm26,
)
from .documents import ClassicalSetup, DocumentError, GmSetup, parse_document
from .field import FieldElement, FieldSpec
from .gm import gm_grade
from .quiver import dimension_table
from .rep import Representation, check_module, check_rep
from .report import CheckReport

DEFAULT_CHECKS = ("graded", "assoc", "bas", "bji", "strict")


class InputError(Exception):
    pass


def render(value):
    """Turn defects and witnesses into JSON values, scalars in literal syntax."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, FieldElement):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    return str(value)


def _name_witness(witness, names: Sequence[Sequence[str]] | None):
    if witness is None:
        return None
    out = []
    for pos, w in enumerate(witness):
        if names is not None and isinstance(w, int) and not isinstance(w, bool):
            pool = names[min(pos, len(names) - 1)]
            out.append(pool[w] if 0 <= w < len(pool) else w)
        else:
            out.append(render(w))
    return out


class Session:
    def __init__(self, args):
        self.args = args
        self.checks: list[dict] = []
        self.results: dict = {}

    def run_check(self, fn: Callable[[], CheckReport], names=None, label: str | None = None) -> CheckReport:
        start = time.perf_counter()
        report = fn()
        elapsed = time.perf_counter() - start
        self.checks.append(
            {
                "name": label or report.name,
                "verdict": "pass" if report.passed else "fail",
                "witness": _name_witness(report.witness, names),
                "defect": render(report.defect),
                "detail": report.detail,
                "seconds": round(elapsed, 6),
            }
        )
        return report

    @property
    def passed(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)

    def document(self) -> dict:
        return {
            "tool": "braided-mlie",
            "version": __version__,
            "command": self.args.command,
            "inputs": [self.args.file],
            "passed": self.passed,
            "checks": self.checks,
            "results": self.results,
        }


# ---------------------------------------------------------------------------
# loading helpers
# ---------------------------------------------------------------------------

def _load(args):
    field = FieldSpec.parse(args.field) if args.field else None
    return parse_document(args.file, field=field, max_len=args.max_len)


def _graded(obj) -> GradedAlgebra:
    if isinstance(obj, GradedAlgebra):
        return obj
    if isinstance(obj, GmSetup):
        return obj.graded()
    if isinstance(obj, ClassicalSetup):
        return obj.setup.graded()
    if isinstance(obj, Representation) and isinstance(obj.source, GradedAlgebra):
        return obj.source
    raise InputError("document does not describe an algebra")


def _gm(obj) -> GmSetup:
    if isinstance(obj, GmSetup):
        return obj
    if isinstance(obj, ClassicalSetup):
        return obj.setup
    raise InputError("document does not describe a gm algebra")


def _classical(obj, need: str) -> ClassicalSetup:
    if not isinstance(obj, ClassicalSetup):
        raise InputError("expected a classical document")
    if need == "trace" and obj.trace is None:
        raise InputError("classical document has no trace")
    if need == "osp" and (obj.transpose is None or obj.M is None):
        raise InputError("classical document needs both transpose and M")
    return obj


def _subalgebra_result(S) -> dict:
    return {
        "dim": S.dim,
        "dims_by_degree": {str(g): n for g, n in sorted(S.dims_by_degree().items())},
        "basis": [str(e) for e in S.elements()],
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(sess: Session, obj):
    A = _graded(obj)
    names = sess.args.checks or list(DEFAULT_CHECKS)
    sess.results["dim"] = A.dim
    for name in names:
        sess.run_check(lambda fn=CHECKS[name]: fn(A), [A.basis], label=name)


def cmd_path_algebra(sess: Session, obj):
    setup = _gm(obj)
    if setup.quiver is None:
        raise InputError("path-algebra expects a quiver document")
    A = setup.algebra
    sess.results["dim"] = A.dim
    sess.results["blocks"] = [
        {"row": str(i), "col": str(j), "dim": n, "basis": [A.basis[k] for k in A.blocks[(i, j)]]}
        for (i, j), n in dimension_table(A).items()
    ]
    G = setup.graded()
    sess.run_check(lambda: CHECKS["graded"](G), [G.basis], label="graded")
    sess.run_check(lambda: CHECKS["assoc"](G), [G.basis], label="assoc")


def cmd_grade(sess: Session, obj):
    G = _gm(obj).graded()
    by_degree: dict = {}
    for name, d in zip(G.basis, G.degrees):
        by_degree.setdefault(d, []).append(name)
    sess.results["dim"] = G.dim
    sess.results["degrees"] = {name: str(d) for name, d in zip(G.basis, G.degrees)}
    sess.results["components"] = {str(d): names for d, names in sorted(by_degree.items())}
    sess.run_check(lambda: CHECKS["graded"](G), [G.basis], label="graded")
    sess.run_check(lambda: CHECKS["assoc"](G), [G.basis], label="assoc")


def cmd_sl(sess: Session, obj):
    setup = _classical(obj, "trace")
    S = compute_sl(setup.trace)
    sess.results.update(_subalgebra_result(S))
    sess.run_check(S.closed_under_bracket, [S.basis], label="closed")
    sess.run_check(lambda: sl_closure_check(setup.trace), [setup.algebra.basis], label="closure-defect")


def cmd_osp(sess: Session, obj):
    setup = _classical(obj, "osp")
    S = compute_osp(setup.transpose, setup.M, setup.braiding)
    sess.results.update(_subalgebra_result(S))
    sess.run_check(S.closed_under_bracket, [S.basis], label="closed")
    sess.run_check(
        lambda: osp_closure_check(setup.transpose, setup.M, setup.braiding, S), [S.basis], label="closure-defect"
    )


def cmd_superize(sess: Session, obj):
    setup = _gm(obj)
    Sz = superize(setup.algebra, setup.braiding)
    B = Sz.algebra
    sess.results["parity"] = {str(g): p for g, p in sorted(Sz.parity.items())}
    sess.results["blocks"] = [
        {"row": str(i), "col": str(j), "basis": [B.basis[k] for k in ks]} for (i, j), ks in B.blocks.items()
    ]
    sess.run_check(lambda: check_super_products(Sz), [setup.algebra.basis], label="super-products")
    graded = gm_grade(B, Sz.super_braiding)
    sess.run_check(lambda: CHECKS["graded"](graded), [graded.basis], label="graded")


def cmd_verify_thm26(sess: Session, obj):
    setup = _classical(obj, "trace")
    for rep in verify_thm26(setup.trace, setup.transpose, setup.M):
        sess.run_check(lambda rep=rep: rep, None)


def cmd_rep_check(sess: Session, obj):
    if not isinstance(obj, Representation):
        raise InputError("rep-check expects a representation document")
    L = obj.source
    sess.results["dim"] = L.dim
    sess.results["carrier_dim"] = obj.dim
    sess.results["faithful"] = obj.is_faithful()
    sess.run_check(lambda: check_rep(obj), [L.basis], label="rep")
    sess.run_check(lambda: check_module(obj), [L.basis, L.basis, obj.carrier_basis], label="module")


COMMANDS = {
    "check": cmd_check,
    "path-algebra": cmd_path_algebra,
    "grade": cmd_grade,
    "sl": cmd_sl,
    "osp": cmd_osp,
    "superize": cmd_superize,
    "verify-thm26": cmd_verify_thm26,
    "rep-check": cmd_rep_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="rational | cyclotomic:N | generic (overrides the document)")
    common.add_argument("--max-len", type=int, default=None, help="path length bound for cyclic quivers")
    common.add_argument("--report", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    common.add_argument("--witnesses", action="store_true", help="print witnesses and defects of failed checks")

    parser = argparse.ArgumentParser(prog="braided-mlie", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="run named algebra checks")
    p.add_argument("file")
    p.add_argument("checks", nargs="*", metavar="CHECK", help=f"any of {', '.join(sorted(CHECKS))} (default: {' '.join(DEFAULT_CHECKS)})")
    for name, text in [
        ("path-algebra", "build a quiver's path algebra and its dimension table"),
        ("grade", "show the gm gradation of a gm algebra"),
        ("sl", "compute the trace-zero subalgebra"),
        ("osp", "compute the transpose-compatible subalgebra"),
        ("superize", "regroup a skew-braided gm algebra into super blocks"),
        ("verify-thm26", "compare classical subalgebras with their superized versions"),
        ("rep-check", "check a representation and its module form"),
    ]:
        sub.add_parser(name, parents=[common], help=text).add_argument("file")
    return parser


def _print_summary(sess: Session, out):
    for c in sess.checks:
        line = f"{c['name']}: {c['verdict'].upper()}"
        if c["detail"]:
            line += f" ({c['detail']})"
        print(line, file=out)
        if sess.args.witnesses and c["verdict"] == "fail":
            print(f"  witness: {c['witness']}", file=out)
            print(f"  defect: {c['defect']}", file=out)
    for key, value in sess.results.items():
        print(f"{key}: {json.dumps(value)}", file=out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "checks", None) is None:
        args.checks = []
    unknown = [c for c in args.checks if c not in CHECKS]
    if unknown:
        parser.error(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(sorted(CHECKS))}")
    sess = Session(args)
    try:
        obj = _load(args)
        COMMANDS[args.command](sess, obj)
    except (DocumentError, InputError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(sess.document(), indent=2)
    if args.report == "-":
        print(text)
    else:
        _print_summary(sess, sys.stdout)
        if args.report:
            with open(args.report, "w") as fh:
                fh.write(text + "\n")
    return 0 if sess.passed else 1


if __name__ == "__main__":
    sys.exit(main())
