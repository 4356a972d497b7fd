"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage,
input or resource errors.  JSON output is a single document on stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .enumeration import kernel_dim, wm_count
from .gf import Field, FieldError, field_new
from .interp import NotSymmetricError, interpolate_symmetric
from .relations import (
    build_matrix,
    canonical_form,
    coeffs_in_prime_field,
    default_guard,
    relation_basis,
    verify_relation,
)
from .symfun import EPoly, FunctionTable, ScaleError


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None
    k: int
    modulus: list[int] | None
    n: int | None
    format: str = "text"
    mode: str = "wm"
    guard: int | None = None
    output: str | None = None

    def field(self) -> Field:
        if self.p is None:
            raise UsageError("--p is required")
        return field_new(self.p, self.k, self.modulus)

    def require_n(self) -> int:
        if self.n is None:
            raise UsageError("--n is required")
        if self.n < 1:
            raise UsageError(f"--n must be >= 1, got {self.n}")
        return self.n


def _modulus(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad modulus {text!r}; expected 'c0,c1,...,ck'")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="field characteristic")
    common.add_argument("--k", type=int, default=1, help="extension degree (default 1)")
    common.add_argument("--modulus", type=_modulus, help="irreducible modulus 'c0,c1,...,ck'")
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--guard", type=int, help="matrix entry limit (default: SYMREL_GUARD or 1e7)")
    common.add_argument("-o", "--output", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="symrel",
        description="Relations among elementary symmetric functions over GF(p^k).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dim", parents=[common], help="print q^n, wm(q,n) and the relation count")
    sub.add_parser("matrix", parents=[common], help="dump the evaluation matrix M(q,n)")
    b = sub.add_parser("basis", parents=[common], help="compute a basis of the relations")
    b.add_argument("--check", action="store_true",
                   help="verify every relation and its prime-field coefficients")
    b.add_argument("--mode", choices=("wm", "full"), default="wm")
    b.add_argument("--oplog", help="write the elimination log (JSON) to this path")
    v = sub.add_parser("verify", parents=[common], help="test whether an E-polynomial is a relation")
    v.add_argument("file")
    v.add_argument("--mode", choices=("wm", "full"), default="wm")
    i = sub.add_parser("interp", parents=[common], help="E-polynomial for a symmetric function table")
    i.add_argument("file")
    i.add_argument("--canonical", action="store_true", help="reduce to the pivot-supported form")
    c = sub.add_parser("canon", parents=[common], help="canonical form of an E-polynomial")
    c.add_argument("file")
    return parser


def _read_poly(path: str, cfg: RunConfig) -> EPoly:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON ({exc})") from None
    if "field" not in obj and cfg.p is None:
        raise UsageError("polynomial file has no field; pass --p/--k")
    field = cfg.field() if cfg.p is not None else None
    try:
        P = EPoly.from_json(obj, field)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: malformed polynomial ({exc})") from None
    if cfg.n is not None and cfg.n != P.n:
        raise UsageError(f"--n {cfg.n} does not match the file's n={P.n}")
    return P


def _emit_poly(P: EPoly, cfg: RunConfig, out: TextIO) -> None:
    if cfg.format == "json":
        out.write(P.dumps() + "\n")
    else:
        out.write(P.to_text() + "\n")


def _run(cfg: RunConfig, args: argparse.Namespace, out: TextIO) -> int:
    guard = cfg.guard if cfg.guard is not None else default_guard()
    if cfg.command == "dim":
        F, n = cfg.field(), cfg.require_n()
        q = F.q
        qn, wm, d = q**n, wm_count(q, n), kernel_dim(q, n)
        if cfg.format == "json":
            out.write(json.dumps({"q": q, "n": n, "q^n": qn, "wm": wm, "dim": d}) + "\n")
        else:
            out.write(f"q^n={qn} wm={wm} dim={d}\n")
        return 0

    if cfg.command == "matrix":
        M = build_matrix(cfg.field(), cfg.require_n(), guard)
        if cfg.format == "json":
            out.write(json.dumps({"rows": M.rows, "cols": M.cols, "q": M.field.q,
                                  "entries": M.entries.tolist()}) + "\n")
        else:
            M.dump(out)
        return 0

    if cfg.command == "basis":
        B = relation_basis(cfg.field(), cfg.require_n(), guard)
        if args.oplog:
            with open(args.oplog, "w") as fh:
                fh.write(B.elimination.oplog_json() + "\n")
        status = 0
        report = None
        if args.check:
            bad_rel = [i for i, P in enumerate(B.basis) if not verify_relation(P, cfg.mode)]
            bad_fp = [i for i, P in enumerate(B.basis) if not coeffs_in_prime_field(P)]
            report = {"mode": cfg.mode, "relations_ok": not bad_rel,
                      "prime_field_ok": not bad_fp, "failed_relations": bad_rel,
                      "failed_prime_field": bad_fp}
            if bad_rel or bad_fp:
                status = 1
        if cfg.format == "json":
            doc = B.to_json()
            if report is not None:
                doc["check"] = report
            out.write(json.dumps(doc) + "\n")
        else:
            out.write(B.to_text())
            if report is not None:
                out.write(
                    f"# check ({cfg.mode}): {B.dim} relations, "
                    f"vanishing {'ok' if report['relations_ok'] else 'FAILED'}, "
                    f"prime-field coefficients {'ok' if report['prime_field_ok'] else 'FAILED'}\n"
                )
        return status

    if cfg.command == "verify":
        P = _read_poly(args.file, cfg)
        ok = verify_relation(P, cfg.mode)
        if cfg.format == "json":
            out.write(json.dumps({"relation": ok, "mode": cfg.mode}) + "\n")
        else:
            out.write("relation\n" if ok else "not a relation\n")
        return 0 if ok else 1

    if cfg.command == "interp":
        F, n = cfg.field(), cfg.require_n()
        with open(args.file) as fh:
            table = FunctionTable.load(fh, F, n)
        B = relation_basis(F, n, guard) if args.canonical else None
        _emit_poly(interpolate_symmetric(table, B), cfg, out)
        return 0

    if cfg.command == "canon":
        P = _read_poly(args.file, cfg)
        B = relation_basis(P.field, P.n, guard)
        _emit_poly(canonical_form(P, B), cfg, out)
        return 0

    raise UsageError(f"unknown command {cfg.command!r}")  # argparse prevents this


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    cfg = RunConfig(
        command=args.command, p=args.p, k=args.k, modulus=args.modulus, n=args.n,
        format=args.format, mode=getattr(args, "mode", "wm"), guard=args.guard,
        output=args.output,
    )
    try:
        if cfg.output:
            with open(cfg.output, "w") as out:
                return _run(cfg, args, out)
        return _run(cfg, args, stdout)
    except UsageError as exc:
        print(f"symrel: usage error: {exc}", file=stderr)
    except FieldError as exc:
        print(f"symrel: invalid field: {exc}", file=stderr)
    except ScaleError as exc:
        print(f"symrel: resource limit: {exc}", file=stderr)
    except NotSymmetricError as exc:
        print(f"symrel: input error: {exc}", file=stderr)
    except OSError as exc:
        print(f"symrel: cannot open file: {exc}", file=stderr)
    except ValueError as exc:
        print(f"symrel: malformed input: {exc}", file=stderr)
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
