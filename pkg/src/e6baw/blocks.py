"""Unipotent l-blocks of E6^eps(q) from the degree table and e-cuspidal pair data.

The unipotent characters are grouped by the Phi_e part of their defect gap
(the ``alpha`` component of nu_l(|G|) - nu_l(chi(1))).  The group whose gap
equals the full Phi_e multiplicity of |G| (the one containing the trivial
character) is the principal block; gap zero gives the defect-zero blocks,
one character each; every other group is a non-principal block whose size
must match the class count of a relative Weyl group in the pair records.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .cyclopoly import ONE, ValuationContext, ennola, valuation
from .degrees import default_prime, defect_gap, e6_order
from .groupdata import CONDITIONS, DataError, Dataset, case_e, is_prime

__all__ = [
    "CaseKey",
    "BlockRow",
    "BlockTable",
    "DatasetMissing",
    "Inconsistency",
    "ALL_CASES",
    "classify",
    "ibr_count",
    "e6_degrees",
]


class DatasetMissing(DataError):
    """The E6 unipotent degree table was not loaded."""


class Inconsistency(DataError):
    """Computed block sizes do not match the pair records."""


@dataclass(frozen=True)
class CaseKey:
    eps: int
    condition: str

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}; expected one of {', '.join(CONDITIONS)}")

    @property
    def e(self) -> int:
        return case_e(self.eps, self.condition)

    @property
    def linear(self) -> bool:
        return self.condition == "q-e"

    def context(self, l: int | None = None) -> ValuationContext:
        if l is None:
            l = default_prime(self.e)
        if not is_prime(l):
            raise ValueError(f"l = {l} is not prime")
        return ValuationContext(l, self.e)

    def __str__(self) -> str:
        return f"eps={self.eps:+d} {self.condition}"


ALL_CASES = tuple(CaseKey(eps, c) for eps in (1, -1) for c in CONDITIONS)


@dataclass(frozen=True)
class BlockRow:
    block_id: str
    pair: str
    size: int
    dz: bool
    principal: bool
    members: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "blockId": self.block_id,
            "pair": self.pair,
            "size": self.size,
            "dz": self.dz,
            "principal": self.principal,
        }


@dataclass(frozen=True)
class BlockTable:
    case: CaseKey
    l: int
    rows: tuple[BlockRow, ...]

    @property
    def positive(self) -> list[BlockRow]:
        return [r for r in self.rows if not r.dz]

    @property
    def dz_count(self) -> int:
        return sum(1 for r in self.rows if r.dz)

    @property
    def principal(self) -> BlockRow:
        return next(r for r in self.rows if r.principal)

    def sizes(self) -> list[int]:
        """Positive-defect block sizes, principal first."""
        return [r.size for r in self.positive]

    def row(self, block_id: str) -> BlockRow:
        for r in self.rows:
            if r.block_id == block_id:
                return r
        raise KeyError(block_id)


def e6_degrees(data: Dataset, eps: int):
    """(label, degree) pairs for E6^eps; the twisted table comes from q -> -q."""
    if not data.has_e6:
        raise DatasetMissing("dataset required: E6 unipotent degrees not loaded")
    if eps == 1:
        return [(c.label, c.degree) for c in data.e6]
    return [(c.label, abs(ennola(c.degree))) for c in data.e6]


def classify(case: CaseKey, data: Dataset, l: int | None = None) -> BlockTable:
    ctx = case.context(l)
    order = e6_order(case.eps)
    full = valuation(order, ctx).alpha
    groups: dict[int, list[str]] = defaultdict(list)
    for label, deg in e6_degrees(data, case.eps):
        gap = defect_gap(deg, order, ctx)
        if gap.alpha < 0 or gap.beta < 0:
            raise Inconsistency(f"{label}: negative defect gap {gap} in {case}")
        groups[0 if gap.is_zero() else gap.alpha].append(label)

    pairs = data.pairs_for(case.eps, case.condition)
    principal_pairs = [p for p in pairs if p.principal]
    if len(principal_pairs) != 1:
        raise Inconsistency(f"{case}: expected one principal pair, found {len(principal_pairs)}")
    others = [p for p in pairs if not p.principal]

    rows: list[BlockRow] = []
    trivial = next((c.label for c in data.e6 if c.degree == ONE), None)
    if trivial is None or trivial not in groups.get(full, ()):
        raise Inconsistency(f"{case}: trivial character is not in the top-defect group")
    p0 = principal_pairs[0]
    size0 = len(groups[full])
    if data.group(p0.weyl).nirr != size0:
        raise Inconsistency(
            f"{case}: principal block has {size0} characters but {p0.weyl} has {data.group(p0.weyl).nirr} classes"
        )
    rows.append(BlockRow("B1", p0.label, size0, False, True, tuple(groups[full])))

    unused = list(others)
    for k, alpha in enumerate(sorted((a for a in groups if a not in (0, full)), reverse=True), start=2):
        members = groups[alpha]
        match = next((p for p in unused if data.group(p.weyl).nirr == len(members)), None)
        if match is None:
            raise Inconsistency(f"{case}: no pair record accounts for a block of size {len(members)}")
        unused.remove(match)
        rows.append(BlockRow(f"B{k}", match.label, len(members), False, False, tuple(members)))
    if unused:
        raise Inconsistency(f"{case}: pair records without a block: {', '.join(p.label for p in unused)}")

    positive_total = sum(r.size for r in rows)
    dz_labels = groups.get(0, [])
    if 30 - positive_total != len(dz_labels):
        raise Inconsistency(f"{case}: residual {30 - positive_total} != {len(dz_labels)} defect-zero characters")
    start = len(rows) + 1
    for k, label in enumerate(dz_labels, start=start):
        rows.append(BlockRow(f"B{k}", f"dz:{label}", 1, True, False, (label,)))
    return BlockTable(case, ctx.l, tuple(rows))


def ibr_count(row: BlockRow) -> int:
    """Irreducible Brauer characters: the unipotent characters form a basic set."""
    if row.dz:
        return 1
    return row.size
