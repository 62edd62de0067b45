"""Unipotent weight counts for E6^eps(q) and the comparison |W(B)| = |IBr(B)|.

Two routes.  When l | q - eps the count runs over radical subgroup classes:
a class contributes only if its centralizer has a unipotent block with the
class as defect group, and then the number of weights is the number of
defect-zero characters of the normalizer quotient (the canonical character
extends in every case recorded).  For the other conditions the Sylow
l-subgroups are abelian and each block has as many weights as its relative
Weyl group has irreducible characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import BlockTable, CaseKey, classify, ibr_count
from .degrees import default_prime, scan_dz_A, scan_dz_D
from .groupdata import DataError, Dataset, MissingDataError, RadicalClassRecord, dz_count, is_prime
from .cyclopoly import ValuationContext

__all__ = [
    "UnsupportedCase",
    "WeightRow",
    "WeightReport",
    "resolve_l",
    "regimes_for",
    "unipotent_block_test",
    "clifford_weight_count",
    "weight_report_linear",
    "weight_report_abelian",
    "weight_report",
    "verify_baw",
]


class UnsupportedCase(DataError):
    pass


def resolve_l(case: CaseKey, regime) -> int:
    """Map a regime (``"5"``, ``5``, ``"ge7"`` or an explicit prime) to a prime l."""
    if regime in ("ge7", None):
        return default_prime(case.e, 7)
    l = int(regime)
    if not is_prime(l) or l < 5:
        raise ValueError(f"l = {l} must be a prime >= 5")
    if (l - 1) % case.e:
        raise ValueError(f"l = {l} is incompatible with {case} (needs {case.e} | l - 1)")
    return l


def regimes_for(case: CaseKey) -> list[str]:
    """Regimes that can occur for the case: l = 5 needs e | 4."""
    return (["5"] if 4 % case.e == 0 else []) + ["ge7"]


@dataclass(frozen=True)
class WeightRow:
    radical: str
    block_id: str
    count: int

    def as_dict(self) -> dict:
        return {"radical": self.radical, "blockId": self.block_id, "weights": self.count}


@dataclass(frozen=True)
class WeightReport:
    case: CaseKey
    l: int
    rows: tuple[WeightRow, ...]
    blocks: BlockTable
    totals: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.totals.get(r.block_id, 0) == ibr_count(r) for r in self.blocks.positive)

    @property
    def total(self) -> int:
        return sum(self.totals.values())

    def contribution(self, radical: str) -> int:
        return sum(r.count for r in self.rows if r.radical == radical)


def _totals(rows, table: BlockTable) -> dict:
    totals = {r.block_id: 0 for r in table.positive}
    for row in rows:
        if row.block_id == "-":
            continue
        totals[row.block_id] = totals.get(row.block_id, 0) + row.count
    return totals


def unipotent_block_test(r: RadicalClassRecord, case: CaseKey, data: Dataset | None = None,
                         l: int | None = None) -> int:
    """Number of unipotent blocks of C_G(R) with defect group R.

    Counts unipotent defect-zero characters of the semisimple core recorded in
    ``liepart``; the full torus class has exactly one (its principal block).
    """
    if r.liepart is None:
        raise MissingDataError(f"{r.label}: no liepart recorded")
    if r.liepart.family == "torus":
        return 1
    ctx = ValuationContext(l or default_prime(case.e), case.e)
    twist = r.liepart.twist(case.eps)
    if r.liepart.family == "A":
        return len(scan_dz_A(r.liepart.rank, twist, ctx))
    return len(scan_dz_D(r.liepart.rank, twist, ctx))


def clifford_weight_count(r: RadicalClassRecord, l: int, data: Dataset) -> int:
    """Weights afforded by R: defect-zero characters of the normalizer quotient."""
    if not r.ncq:
        raise MissingDataError(f"{r.label}: normalizer quotient not recorded")
    if not r.extends:
        raise UnsupportedCase(f"{r.label}: canonical character not known to extend")
    return dz_count(data.group(r.ncq), l)


def _affords(r: RadicalClassRecord, case: CaseKey, l: int, data: Dataset) -> bool:
    if r.sylow_in_rc == "yes":
        return True
    if r.sylow_in_rc == "no":
        return False
    return unipotent_block_test(r, case, data, l) > 0


def weight_report_linear(case: CaseKey, regime, data: Dataset) -> WeightReport:
    if not case.linear:
        raise ValueError(f"{case}: the radical-class count applies to l | q - eps only")
    l = resolve_l(case, regime)
    table = classify(case, data, l)
    nonprincipal = [b.block_id for b in table.positive if not b.principal]
    rows = []
    for r in data.radicals_sorted():
        if not r.in_domain(l):
            continue
        count = clifford_weight_count(r, l, data) if _affords(r, case, l, data) else 0
        if r.block == "principal":
            block_id = table.principal.block_id
        elif r.block == "nonprincipal":
            if len(nonprincipal) != 1:
                raise UnsupportedCase(f"{case}: cannot attribute {r.label} to a unique non-principal block")
            block_id = nonprincipal[0]
        elif count:
            raise MissingDataError(f"{r.label}: affords {count} weights but has no block attribution")
        else:
            block_id = "-"
        rows.append(WeightRow(r.label, block_id, count))
    rows = tuple(rows)
    return WeightReport(case, l, rows, table, _totals(rows, table))


def weight_report_abelian(case: CaseKey, data: Dataset, regime="ge7") -> WeightReport:
    if case.linear:
        raise ValueError(f"{case}: Sylow l-subgroups are not abelian here")
    l = resolve_l(case, regime)
    table = classify(case, data, l)
    rows = []
    for b in table.positive:
        pair = data.pairs[b.pair]
        rows.append(WeightRow(f"D({b.block_id})", b.block_id, data.group(pair.weyl).nirr))
    rows = tuple(rows)
    return WeightReport(case, l, rows, table, _totals(rows, table))


def weight_report(case: CaseKey, regime, data: Dataset) -> WeightReport:
    if case.linear:
        return weight_report_linear(case, regime, data)
    return weight_report_abelian(case, data, regime)


def verify_baw(case: CaseKey, regime, data: Dataset) -> bool:
    return weight_report(case, regime, data).verified
