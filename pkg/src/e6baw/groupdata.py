"""Stanza-format records for the finite groups, radical classes, tori,
e-cuspidal pairs and E6 unipotent degrees used by the block and weight counts.

File grammar (one record per stanza, ``key = value`` lines, ``#`` comments)::

    group <name>            order, nirr, dz[<l>], dz[coprime], abelian, note
    radical R<i>            ldomain, abelian, liepart, ncq, sylow_in_rc,
                            extends, block, note
    torus T<i>              order(+1), order(-1), note
    pair <label>            case, eps, weyl, principal, note
    e6char <label>          degree

Values: ``order`` is an integer or a CycloProduct string; ``ldomain`` is one
of ``ge5``, ``ge7``, ``eq5``; ``liepart`` is ``torus`` or
``A|D,<rank>,<twist-rule>`` with twist rule ``eps``, ``-eps``, ``+`` or ``-``;
``sylow_in_rc`` is ``yes``, ``no`` or ``scan``; ``block`` is ``principal``,
``nonprincipal`` or ``none``; ``case`` is a condition key such as ``q-e``;
``eps`` is ``+1``, ``-1`` or ``any``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Union

from .cyclopoly import (
    CycloProduct,
    ParseError as CycloParseError,
    ValuationContext,
    div_exact,
    evaluate,
    is_polynomial,
    parse as parse_cyclo,
    render as render_cyclo,
    valuation,
)
from .degrees import e6_order

__all__ = [
    "DataError",
    "DataParseError",
    "MissingDataError",
    "GroupRecord",
    "LiePart",
    "RadicalClassRecord",
    "TorusRecord",
    "ECuspidalPairRecord",
    "E6Char",
    "Dataset",
    "Violation",
    "parse_text",
    "render_text",
    "load",
    "load_default",
    "validate",
    "dz_count",
    "nu_torus_check",
    "CONDITIONS",
    "condition_factor",
    "case_e",
    "is_prime",
]


class DataError(Exception):
    """Base class for dataset problems."""


class DataParseError(DataError):
    pass


class MissingDataError(DataError):
    pass


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


CONDITIONS = ("q-e", "q+e", "q2+eq+1", "q2+1", "q2-eq+1")


def case_e(eps: int, condition: str) -> int:
    """Order of q mod l when l divides the named factor of |E6^eps(q)|."""
    table = {
        "q-e": (1, 2),
        "q+e": (2, 1),
        "q2+eq+1": (3, 6),
        "q2+1": (4, 4),
        "q2-eq+1": (6, 3),
    }
    if condition not in table:
        raise ValueError(f"unknown case condition {condition!r}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    return table[condition][0 if eps == 1 else 1]


def condition_factor(eps: int, condition: str) -> CycloProduct:
    return CycloProduct.phi(case_e(eps, condition))


@dataclass
class GroupRecord:
    name: str
    order: Union[int, CycloProduct, None] = None
    nirr: int | None = None
    dz: dict = field(default_factory=dict)
    abelian: bool = False
    note: str = ""


@dataclass(frozen=True)
class LiePart:
    family: str  # "A", "D" or "torus"
    rank: int = 0
    twist_rule: str = "eps"

    def twist(self, eps: int) -> int:
        return {"eps": eps, "-eps": -eps, "+": 1, "-": -1}[self.twist_rule]

    def __str__(self) -> str:
        if self.family == "torus":
            return "torus"
        return f"{self.family},{self.rank},{self.twist_rule}"


@dataclass
class RadicalClassRecord:
    label: str
    ldomain: str = "ge5"
    abelian: bool = True
    liepart: LiePart | None = None
    ncq: str | None = None
    sylow_in_rc: str = "scan"
    extends: bool = False
    block: str = "none"
    note: str = ""

    @property
    def index(self) -> int:
        return int(self.label[1:])

    def in_domain(self, l: int) -> bool:
        return {
            "ge5": l >= 5,
            "ge7": l >= 7,
            "eq5": l == 5,
        }[self.ldomain]


@dataclass
class TorusRecord:
    label: str
    orders: dict = field(default_factory=dict)  # eps -> CycloProduct
    note: str = ""

    def order(self, eps: int) -> CycloProduct:
        return self.orders[eps]


@dataclass
class ECuspidalPairRecord:
    label: str
    case: str = ""
    eps: str = "any"
    weyl: str = ""
    principal: bool = False
    note: str = ""

    def applies(self, eps: int, condition: str) -> bool:
        return self.case == condition and self.eps in ("any", f"{eps:+d}")


@dataclass
class E6Char:
    label: str
    degree: CycloProduct


@dataclass
class Dataset:
    groups: dict = field(default_factory=dict)
    radicals: dict = field(default_factory=dict)
    tori: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    e6: list = field(default_factory=list)
    order: list = field(default_factory=list)  # (kind, key) in file order

    @property
    def has_e6(self) -> bool:
        return bool(self.e6)

    def merge(self, other: "Dataset") -> "Dataset":
        out = Dataset(
            {**self.groups, **other.groups},
            {**self.radicals, **other.radicals},
            {**self.tori, **other.tori},
            {**self.pairs, **other.pairs},
            self.e6 + other.e6,
            self.order + other.order,
        )
        return out

    def group(self, name: str) -> GroupRecord:
        try:
            return self.groups[name]
        except KeyError:
            raise MissingDataError(f"no group record named {name!r}") from None

    def radicals_sorted(self) -> list[RadicalClassRecord]:
        return sorted(self.radicals.values(), key=lambda r: r.index)

    def pairs_for(self, eps: int, condition: str) -> list[ECuspidalPairRecord]:
        return [p for p in self.pairs.values() if p.applies(eps, condition)]


_HEADER = re.compile(r"^(group|radical|torus|pair|e6char)\s+(\S.*)$")
_KV = re.compile(r"^([A-Za-z_]+(?:\[[^\]]+\]|\([+-]1\))?)\s*=\s*(.*)$")
_BOOL = {"true": True, "yes": True, "false": False, "no": False}

_KEYS = {
    "group": {"order", "nirr", "abelian", "note"},
    "radical": {"ldomain", "abelian", "liepart", "ncq", "sylow_in_rc", "extends", "block", "note"},
    "torus": {"order(+1)", "order(-1)", "note"},
    "pair": {"case", "eps", "weyl", "principal", "note"},
    "e6char": {"degree"},
}


def _bool(value: str, where: str) -> bool:
    try:
        return _BOOL[value.lower()]
    except KeyError:
        raise DataParseError(f"{where}: expected a boolean, got {value!r}") from None


def _int(value: str, where: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise DataParseError(f"{where}: expected an integer, got {value!r}") from None


def _cyclo(value: str, where: str) -> CycloProduct:
    try:
        return parse_cyclo(value)
    except CycloParseError as exc:
        raise DataParseError(f"{where}: {exc}") from None


def _liepart(value: str, where: str) -> LiePart:
    if value == "torus":
        return LiePart("torus")
    bits = [b.strip() for b in value.split(",")]
    if len(bits) != 3 or bits[0] not in ("A", "D") or bits[2] not in ("eps", "-eps", "+", "-"):
        raise DataParseError(f"{where}: bad liepart {value!r}")
    return LiePart(bits[0], _int(bits[1], where), bits[2])


def _apply(kind: str, rec, key: str, value: str, where: str) -> None:
    if kind == "group":
        if key.startswith("dz[") and key.endswith("]"):
            arg = key[3:-1]
            if arg == "coprime":
                rec.dz["coprime"] = _int(value, where)
            else:
                rec.dz[_int(arg, where)] = _int(value, where)
            return
        if key not in _KEYS[kind]:
            raise DataParseError(f"{where}: unknown key {key!r} for {kind}")
        if key == "order":
            rec.order = int(value) if re.fullmatch(r"\d+", value) else _cyclo(value, where)
        elif key == "nirr":
            rec.nirr = _int(value, where)
        elif key == "abelian":
            rec.abelian = _bool(value, where)
        else:
            rec.note = value
        return
    if key not in _KEYS[kind]:
        raise DataParseError(f"{where}: unknown key {key!r} for {kind}")
    if kind == "radical":
        if key == "ldomain":
            if value not in ("ge5", "ge7", "eq5"):
                raise DataParseError(f"{where}: bad ldomain {value!r}")
            rec.ldomain = value
        elif key == "abelian":
            rec.abelian = _bool(value, where)
        elif key == "liepart":
            rec.liepart = _liepart(value, where)
        elif key == "ncq":
            rec.ncq = value
        elif key == "sylow_in_rc":
            if value not in ("yes", "no", "scan"):
                raise DataParseError(f"{where}: bad sylow_in_rc {value!r}")
            rec.sylow_in_rc = value
        elif key == "extends":
            rec.extends = _bool(value, where)
        elif key == "block":
            if value not in ("principal", "nonprincipal", "none"):
                raise DataParseError(f"{where}: bad block {value!r}")
            rec.block = value
        else:
            rec.note = value
    elif kind == "torus":
        if key == "note":
            rec.note = value
        else:
            rec.orders[1 if "+" in key else -1] = _cyclo(value, where)
    elif kind == "pair":
        if key == "case":
            if value not in CONDITIONS:
                raise DataParseError(f"{where}: bad case {value!r}")
            rec.case = value
        elif key == "eps":
            if value not in ("+1", "-1", "any"):
                raise DataParseError(f"{where}: bad eps {value!r}")
            rec.eps = value
        elif key == "weyl":
            rec.weyl = value
        elif key == "principal":
            rec.principal = _bool(value, where)
        else:
            rec.note = value
    elif kind == "e6char":
        rec.degree = _cyclo(value, where)


def parse_text(text: str, source: str = "<string>") -> Dataset:
    ds = Dataset()
    kind = rec = None
    seen_keys: set[str] = set()

    def close():
        if rec is None:
            return
        if kind == "e6char" and rec.degree is None:
            raise DataParseError(f"{source}: e6char {rec.label} has no degree")
        if kind == "radical" and not re.fullmatch(r"R\d+", rec.label):
            raise DataParseError(f"{source}: radical label must look like R<i>, got {rec.label!r}")

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        m = _HEADER.match(line)
        if m:
            close()
            kind, key = m.group(1), m.group(2).strip()
            seen_keys = set()
            table = {
                "group": ds.groups,
                "radical": ds.radicals,
                "torus": ds.tori,
                "pair": ds.pairs,
            }.get(kind)
            if table is not None and key in table:
                raise DataParseError(f"{where}: duplicate {kind} {key!r}")
            if kind == "group":
                rec = GroupRecord(key)
            elif kind == "radical":
                rec = RadicalClassRecord(key)
            elif kind == "torus":
                rec = TorusRecord(key)
            elif kind == "pair":
                rec = ECuspidalPairRecord(key)
            else:
                if any(c.label == key for c in ds.e6):
                    raise DataParseError(f"{where}: duplicate e6char {key!r}")
                rec = E6Char(key, None)
            if table is not None:
                table[key] = rec
            else:
                ds.e6.append(rec)
            ds.order.append((kind, key))
            continue
        m = _KV.match(line)
        if not m:
            raise DataParseError(f"{where}: malformed line {raw!r}")
        if rec is None:
            raise DataParseError(f"{where}: key outside a stanza")
        key, value = m.group(1), m.group(2).strip()
        if key in seen_keys:
            raise DataParseError(f"{where}: repeated key {key!r}")
        seen_keys.add(key)
        _apply(kind, rec, key, value, where)
    close()
    return ds


def _fmt_bool(v: bool) -> str:
    return "true" if v else "false"


def render_text(ds: Dataset) -> str:
    blocks = []
    for kind, key in ds.order:
        lines = [f"{kind} {key}"]
        if kind == "group":
            g = ds.groups[key]
            if g.order is not None:
                lines.append(f"order = {g.order if isinstance(g.order, int) else render_cyclo(g.order)}")
            if g.nirr is not None:
                lines.append(f"nirr = {g.nirr}")
            for l, v in g.dz.items():
                lines.append(f"dz[{l}] = {v}")
            lines.append(f"abelian = {_fmt_bool(g.abelian)}")
            if g.note:
                lines.append(f"note = {g.note}")
        elif kind == "radical":
            r = ds.radicals[key]
            lines.append(f"ldomain = {r.ldomain}")
            lines.append(f"abelian = {_fmt_bool(r.abelian)}")
            if r.liepart is not None:
                lines.append(f"liepart = {r.liepart}")
            if r.ncq:
                lines.append(f"ncq = {r.ncq}")
            lines.append(f"sylow_in_rc = {r.sylow_in_rc}")
            lines.append(f"extends = {_fmt_bool(r.extends)}")
            lines.append(f"block = {r.block}")
            if r.note:
                lines.append(f"note = {r.note}")
        elif kind == "torus":
            t = ds.tori[key]
            for eps in (1, -1):
                if eps in t.orders:
                    lines.append(f"order({eps:+d}) = {render_cyclo(t.orders[eps])}")
            if t.note:
                lines.append(f"note = {t.note}")
        elif kind == "pair":
            p = ds.pairs[key]
            lines += [f"case = {p.case}", f"eps = {p.eps}", f"weyl = {p.weyl}",
                      f"principal = {_fmt_bool(p.principal)}"]
            if p.note:
                lines.append(f"note = {p.note}")
        else:
            c = next(c for c in ds.e6 if c.label == key)
            lines.append(f"degree = {render_cyclo(c.degree)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load(path: str | os.PathLike) -> Dataset:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataParseError(f"cannot read {p}: {exc}") from None
    return parse_text(text, str(p))


DEFAULT_DATA = "groups.dat"
DEFAULT_E6 = "e6_unipotent_degrees.dat"


def default_path(name: str) -> Path:
    return Path(str(resources.files("e6baw") / "data" / name))


def load_default(data: str | os.PathLike | None = None, e6: str | os.PathLike | None = None,
                 with_e6: bool = True) -> Dataset:
    """Load the structure records and (optionally) the E6 degree table.

    ``data`` falls back to the ``E6BAW_DATA`` environment variable, then to
    the shipped file.
    """
    data = data or os.environ.get("E6BAW_DATA") or default_path(DEFAULT_DATA)
    ds = load(data)
    if with_e6 and not ds.has_e6:
        e6path = Path(e6) if e6 else default_path(DEFAULT_E6)
        if e6 or e6path.exists():
            ds = ds.merge(load(e6path))
    return ds


@dataclass(frozen=True)
class Violation:
    label: str
    rule: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.label}\t{self.rule}\t{self.detail}".rstrip()


_SAMPLE_Q = (2, 3, 4, 5, 7, 8, 9)
_CASE_PRIMES = {1: (7, 5), 2: (7, 5), 3: (7, 13), 4: (13, 5), 6: (7, 13)}


def _validate_group(g: GroupRecord) -> Iterable[Violation]:
    if g.nirr is None:
        yield Violation(g.name, "missing_nirr")
        return
    for l, v in g.dz.items():
        if l == "coprime":
            if v != g.nirr:
                yield Violation(g.name, "coprime_dz_mismatch", f"dz[coprime]={v} nirr={g.nirr}")
            continue
        if not is_prime(l):
            yield Violation(g.name, "dz_not_prime", f"dz[{l}]")
        if v > g.nirr:
            yield Violation(g.name, "dz_exceeds_nirr", f"dz[{l}]={v} > nirr={g.nirr}")
        if isinstance(g.order, int):
            if g.order % l and v != g.nirr:
                yield Violation(g.name, "coprime_dz_mismatch", f"dz[{l}]={v} nirr={g.nirr}")
            if g.abelian and g.order % l == 0 and v != 0:
                yield Violation(g.name, "abelian_dz_nonzero", f"dz[{l}]={v}")
    if g.abelian and isinstance(g.order, int) and g.nirr != g.order:
        yield Violation(g.name, "abelian_nirr_mismatch", f"nirr={g.nirr} order={g.order}")


def validate(ds: Dataset) -> list[Violation]:
    out: list[Violation] = []
    for g in ds.groups.values():
        out.extend(_validate_group(g))
    for r in ds.radicals.values():
        if r.ncq and r.ncq not in ds.groups:
            out.append(Violation(r.label, "unresolved_ncq", r.ncq))
        if r.sylow_in_rc == "scan" and r.liepart is None:
            out.append(Violation(r.label, "missing_liepart"))
        if r.block != "none" and not r.ncq:
            out.append(Violation(r.label, "missing_ncq"))
    seen_principal: dict = {}
    for p in ds.pairs.values():
        if p.weyl not in ds.groups:
            out.append(Violation(p.label, "unresolved_weyl", p.weyl))
        if p.principal:
            for eps in (1, -1):
                if p.applies(eps, p.case):
                    key = (eps, p.case)
                    if key in seen_principal:
                        out.append(Violation(p.label, "multiple_principal", f"{p.case} eps={eps:+d}"))
                    seen_principal[key] = p.label
    for t in ds.tori.values():
        for eps, order in t.orders.items():
            if not is_polynomial(div_exact(e6_order(eps), order)):
                out.append(Violation(t.label, "torus_not_dividing", f"eps={eps:+d}"))
    if ds.e6:
        if len(ds.e6) != 30:
            out.append(Violation("e6", "e6_count", f"{len(ds.e6)} != 30"))
        for c in ds.e6:
            if not is_polynomial(c.degree):
                out.append(Violation(c.label, "e6_not_polynomial"))
                continue
            for q0 in _SAMPLE_Q:
                v = evaluate(c.degree, q0)
                if v.denominator != 1 or v <= 0:
                    out.append(Violation(c.label, "e6_nonintegral", f"q={q0}"))
                    break
            for eps in (1, -1):
                deg = c.degree if eps == 1 else _ennola_degree(c.degree)
                for cond in CONDITIONS:
                    e = case_e(eps, cond)
                    for l in _CASE_PRIMES[e]:
                        ctx = ValuationContext(l, e)
                        gap = valuation(e6_order(eps), ctx) - valuation(deg, ctx)
                        if gap.alpha < 0 or gap.beta < 0:
                            out.append(Violation(c.label, "e6_gap_negative", f"eps={eps:+d} {cond} l={l}"))
    return out


def _ennola_degree(deg: CycloProduct) -> CycloProduct:
    from .cyclopoly import ennola

    return abs(ennola(deg))


def dz_count(g: GroupRecord, l: int) -> int:
    """Number of l-defect-zero irreducible characters of g."""
    if g.nirr is None:
        raise MissingDataError(f"{g.name}: nirr unknown")
    divides = isinstance(g.order, int) and g.order % l == 0
    if g.abelian:
        if not isinstance(g.order, int):
            raise MissingDataError(f"{g.name}: abelian record needs an integer order")
        return 0 if divides else g.nirr
    if l in g.dz:
        return g.dz[l]
    if isinstance(g.order, int) and not divides:
        return g.dz.get("coprime", g.nirr)
    raise MissingDataError(f"{g.name}: no defect-zero count for l={l}")


def nu_torus_check(t: TorusRecord, eps: int, ctx: ValuationContext) -> bool:
    """True when the torus carries the full l-part of |E6^eps(q)|."""
    return valuation(t.order(eps), ctx) == valuation(e6_order(eps), ctx)
