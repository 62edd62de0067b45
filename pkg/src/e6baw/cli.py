"""Command-line front end: ``e6baw validate|scan|report|verify``.

Exit codes: 0 success, 1 verification failure or validation violations,
2 bad input or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .blocks import ALL_CASES, BlockTable, CaseKey, DatasetMissing
from .cyclopoly import ValuationContext, render
from .degrees import context_for_linear, default_prime, scan_A, scan_D
from .groupdata import CONDITIONS, DataError, load_default, validate
from .weights import WeightReport, regimes_for, resolve_l, weight_report

MAX_N = 20


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    eps: int | None = None
    condition: str | None = None
    l: int | None = None
    regime: str | None = None
    data: str | None = None
    e6: str | None = None
    fmt: str = "table"
    verbose: int = 0

    def case(self) -> CaseKey:
        if self.eps is None or self.condition is None:
            raise UsageError("--eps and --case are required")
        return CaseKey(self.eps, self.condition)

    def regime_value(self):
        return self.l if self.l is not None else (self.regime or "ge7")


def _eps(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="e6baw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, data=True):
        if data:
            sp.add_argument("--data", help="structure data file (default: $E6BAW_DATA or shipped file)")
            sp.add_argument("--e6-degrees", dest="e6", help="E6 unipotent degree file")
        sp.add_argument("--format", dest="fmt", choices=("table", "jsonl"), default="table")
        sp.add_argument("-v", "--verbose", action="count", default=0)

    sp = sub.add_parser("validate", help="check a data file against the record invariants")
    common(sp)

    sp = sub.add_parser("scan", help="list unipotent degrees and defect-zero hits")
    sp.add_argument("--type", dest="family", choices=("A", "D"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps", type=_eps, default=1, help="type A: SL (+1) or SU (-1)")
    sp.add_argument("--twist", type=_eps, default=1, help="type D: Spin+ or Spin-")
    sp.add_argument("--e", type=int, default=None, help="type D: order of q mod l")
    sp.add_argument("--l", type=int, default=None)
    common(sp, data=False)

    for name, helptext in (("report", "block table and weight report"), ("verify", "check |W(B)| = |IBr(B)|")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--eps", type=_eps)
        sp.add_argument("--case", dest="condition", choices=CONDITIONS)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--l", type=int)
        g.add_argument("--l-regime", dest="regime", choices=("5", "ge7"))
        if name == "verify":
            sp.add_argument("--all", action="store_true", help="every case and applicable regime")
        common(sp)
    return p


def _emit_jsonl(out: TextIO, objs) -> None:
    for obj in objs:
        out.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_table(out: TextIO, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def cmd_validate(cfg: RunConfig, out: TextIO) -> int:
    ds = load_default(cfg.data, cfg.e6)
    violations = validate(ds)
    if cfg.fmt == "jsonl":
        _emit_jsonl(out, ({"label": v.label, "rule": v.rule, "detail": v.detail} for v in violations))
    else:
        for v in violations:
            out.write(f"{v}\n")
        if not violations:
            out.write("ok\n")
    return 1 if violations else 0


def cmd_scan(cfg: RunConfig, args, out: TextIO) -> int:
    n = args.n
    if not 1 <= n <= MAX_N or (args.family == "A" and n < 2):
        raise UsageError(f"n must lie in {'2' if args.family == 'A' else '1'}..{MAX_N}")
    if args.family == "A":
        ctx = context_for_linear(args.eps, args.l, n)
        records = [(str(a), d, g) for a, d, g in scan_A(n, args.eps, ctx)]
    else:
        e = args.e or 1
        l = args.l or default_prime(e)
        try:
            ctx = ValuationContext(l, e)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        records = [(str(s), d, g) for s, d, g in scan_D(n, args.twist, ctx)]
    hits = [r for r in records if r[2].is_zero()]
    if cfg.fmt == "jsonl":
        _emit_jsonl(out, (
            {"label": lab, "degree": render(d), "alpha": g.alpha, "beta": g.beta, "dz": g.is_zero()}
            for lab, d, g in records
        ))
    else:
        for lab, d, g in records:
            out.write(f"{lab}\t{render(d)}\tgap{g}\n")
        out.write(f"# l={ctx.l} e={ctx.e} hits={len(hits)}\n")
        for lab, d, _ in hits:
            out.write(f"# dz\t{lab}\t{render(d)}\n")
    return 0


def _block_objs(table: BlockTable):
    for r in table.rows:
        yield {"kind": "block", **r.as_dict()}


def _report_objs(rep: WeightReport):
    for r in rep.rows:
        yield {"kind": "weight", **r.as_dict()}
    for b in rep.blocks.positive:
        yield {"kind": "total", "blockId": b.block_id, "weights": rep.totals.get(b.block_id, 0), "ibr": b.size}
    yield {"kind": "summary", "eps": rep.case.eps, "case": rep.case.condition, "l": rep.l,
           "verified": rep.verified}


def _write_report(rep: WeightReport, cfg: RunConfig, out: TextIO) -> None:
    if cfg.fmt == "jsonl":
        _emit_jsonl(out, _block_objs(rep.blocks))
        _emit_jsonl(out, _report_objs(rep))
        return
    t = rep.blocks
    out.write(f"case {rep.case}  e={rep.case.e}  l={rep.l}\n\n")
    rows = [(r.block_id, r.pair, r.size, "yes" if r.dz else "no", "yes" if r.principal else "no") for r in t.rows]
    _emit_table(out, ("blockId", "pair", "size", "dz", "principal"), rows)
    if cfg.verbose:
        for r in t.positive:
            out.write(f"{r.block_id}: {', '.join(r.members)}\n")
    out.write(f"\npositive defect: {'/'.join(map(str, t.sizes()))}  defect zero: {t.dz_count}\n\n")
    shown = [r for r in rep.rows if r.count or cfg.verbose]
    _emit_table(out, ("radical", "blockId", "weights"), [(r.radical, r.block_id, r.count) for r in shown])
    out.write("\n")
    for b in t.positive:
        parts = [str(r.count) for r in rep.rows if r.block_id == b.block_id and r.count]
        split = " = " + "+".join(parts) if len(parts) > 1 else ""
        out.write(f"{b.block_id}: weights {rep.totals.get(b.block_id, 0)}{split}  ibr {b.size}\n")
    out.write(f"total weights {rep.total}\nverified {'yes' if rep.verified else 'no'}\n")


def cmd_report(cfg: RunConfig, out: TextIO) -> int:
    case = cfg.case()
    ds = load_default(cfg.data, cfg.e6)
    rep = weight_report(case, _regime(case, cfg), ds)
    _write_report(rep, cfg, out)
    return 0 if rep.verified else 1


def _regime(case: CaseKey, cfg: RunConfig):
    try:
        resolve_l(case, cfg.regime_value())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg.regime_value()


def cmd_verify(cfg: RunConfig, args, out: TextIO) -> int:
    ds = load_default(cfg.data, cfg.e6)
    if args.all:
        runs = [(c, r) for c in ALL_CASES for r in regimes_for(c)]
    else:
        case = cfg.case()
        runs = [(case, _regime(case, cfg))]
    ok = True
    results = []
    for case, regime in runs:
        rep = weight_report(case, regime, ds)
        ok &= rep.verified
        results.append(rep)
    if cfg.fmt == "jsonl":
        _emit_jsonl(out, (
            {"eps": r.case.eps, "case": r.case.condition, "l": r.l, "verified": r.verified,
             "weights": [r.totals.get(b.block_id, 0) for b in r.blocks.positive],
             "ibr": r.blocks.sizes()}
            for r in results
        ))
    else:
        for r in results:
            w = "/".join(str(r.totals.get(b.block_id, 0)) for b in r.blocks.positive)
            out.write(f"{'ok  ' if r.verified else 'FAIL'} {r.case}  l={r.l}  weights {w}  ibr {'/'.join(map(str, r.blocks.sizes()))}\n")
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = RunConfig(
        command=args.command,
        eps=getattr(args, "eps", None),
        condition=getattr(args, "condition", None),
        l=getattr(args, "l", None),
        regime=getattr(args, "regime", None),
        data=getattr(args, "data", None),
        e6=getattr(args, "e6", None),
        fmt=args.fmt,
        verbose=args.verbose,
    )
    try:
        if cfg.command == "validate":
            return cmd_validate(cfg, out)
        if cfg.command == "scan":
            return cmd_scan(cfg, args, out)
        if cfg.command == "report":
            return cmd_report(cfg, out)
        return cmd_verify(cfg, args, out)
    except DatasetMissing as exc:
        print(f"e6baw: {exc}", file=sys.stderr)
        return 2
    except (DataError, UsageError, ValueError) as exc:
        print(f"e6baw: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
