"""Unipotent character degrees for types A, 2A, D, 2D and related orders.

Degrees are returned as :class:`~e6baw.cyclopoly.CycloProduct` values and the
defect of a character is measured through :func:`defect_gap`, the l-adic
valuation of ``|G| / chi(1)`` as a linear form in ``a = nu_l(PHI_e(q))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

from .cyclopoly import (
    CycloProduct,
    ValuationContext,
    ValuationForm,
    is_polynomial,
    signed_qpow_minus,
    valuation,
)
from .symbols import LusztigSymbol, Partition, enumerate_partitions, enumerate_symbols

__all__ = [
    "GroupOrderDescriptor",
    "DegreeRecord",
    "TranscriptionError",
    "gl_order",
    "sl_order",
    "spin_order",
    "e6_order",
    "degree_A",
    "degree_A_beta",
    "hook_degree_A",
    "degree_D",
    "defect_gap",
    "scan_dz_A",
    "scan_dz_D",
    "symbol_identity_check",
    "sl_gap_identity",
    "default_prime",
    "context_for_linear",
]

ONE = CycloProduct()


class TranscriptionError(ArithmeticError):
    """A degree formula produced a non-polynomial result."""


def _prod(factors) -> CycloProduct:
    out = ONE
    for f in factors:
        out = out * f
    return out


def _check_sign(s: int) -> int:
    if s not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {s}")
    return s


def gl_order(n: int, eps: int = 1) -> CycloProduct:
    _check_sign(eps)
    return CycloProduct.q(n * (n - 1) // 2) * _prod(
        signed_qpow_minus(k, eps**k) for k in range(1, n + 1)
    )


def sl_order(n: int, eps: int = 1) -> CycloProduct:
    return gl_order(n, eps) / signed_qpow_minus(1, eps)


def spin_order(n: int, eta: int = 1) -> CycloProduct:
    """Order of Spin_{2n}^eta(q)."""
    _check_sign(eta)
    return (
        CycloProduct.q(n * (n - 1))
        * signed_qpow_minus(n, eta)
        * _prod(signed_qpow_minus(2 * k, 1) for k in range(1, n))
    )


E6_DEGREES = (2, 5, 6, 8, 9, 12)


def e6_order(eps: int = 1) -> CycloProduct:
    """|E6^eps(q)| = q^36 (q^2-1)(q^5-eps)(q^6-1)(q^8-1)(q^9-eps)(q^12-1)."""
    _check_sign(eps)
    return CycloProduct.q(36) * _prod(
        signed_qpow_minus(d, eps**d) for d in E6_DEGREES
    )


@dataclass(frozen=True)
class GroupOrderDescriptor:
    family: str
    rank: int
    twist: int = 1

    @property
    def value(self) -> CycloProduct:
        if self.family == "A":
            return gl_order(self.rank, self.twist)
        if self.family == "SL":
            return sl_order(self.rank, self.twist)
        if self.family == "D":
            return spin_order(self.rank, self.twist)
        if self.family == "E6":
            return e6_order(self.twist)
        raise ValueError(f"unknown family {self.family!r}")


Label = Union[Partition, LusztigSymbol, str]


@dataclass(frozen=True)
class DegreeRecord:
    label: Label
    degree: CycloProduct
    owner: GroupOrderDescriptor
    multiplicity: int = 1


def _q_binomial_sum(m: int) -> int:
    # C(m-1,2) + C(m-2,2) + ... = C(m,3)
    return comb(m, 3)


def degree_A_beta(lams: tuple[int, ...], eps: int = 1) -> CycloProduct:
    """Unipotent degree of GL_n^eps / SL_n^eps from a strictly increasing beta-set.

    The cross factor for i' < i is ``q^lam_i' * (q^(lam_i - lam_i') - eps^(lam_i + lam_i'))``;
    for eps = -1 this is exactly the q -> -q image of the untwisted factor.
    """
    _check_sign(eps)
    m = len(lams)
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError(f"beta-set must be strictly increasing: {lams}")
    n = sum(lams) - comb(m, 2)
    num = _prod(signed_qpow_minus(k, eps**k) for k in range(1, n + 1))
    for i in range(m):
        for j in range(i):
            lo, hi = lams[j], lams[i]
            num = num * CycloProduct.q(lo) * signed_qpow_minus(hi - lo, eps ** (hi + lo))
    den = CycloProduct.q(_q_binomial_sum(m))
    for lam in lams:
        den = den * _prod(signed_qpow_minus(k, eps**k) for k in range(1, lam + 1))
    deg = abs(num / den)
    if not is_polynomial(deg):
        raise TranscriptionError(f"non-polynomial type A degree for beta-set {lams}")
    return deg


def degree_A(alpha: Partition, eps: int = 1) -> CycloProduct:
    if not alpha.parts:
        raise ValueError("partition must be nonempty")
    return degree_A_beta(alpha.beta(), eps)


def hook_degree_A(alpha: Partition) -> CycloProduct:
    """q^{n(alpha)} prod_{k<=n}(q^k-1) / prod_hooks(q^h-1)."""
    if not alpha.parts:
        raise ValueError("partition must be nonempty")
    n_alpha = sum(i * p for i, p in enumerate(alpha.descending()))
    num = _prod(signed_qpow_minus(k, 1) for k in range(1, alpha.n + 1))
    den = _prod(signed_qpow_minus(h, 1) for h in alpha.hooks())
    return CycloProduct.q(n_alpha) * num / den


def degree_D(s: LusztigSymbol) -> CycloProduct:
    """Unipotent degree of Spin_{2n}^{+} (defect 0 mod 4) or ^2D_n (defect 2 mod 4).

    The power of two is ``2^c`` with ``c = (a+b-2)/2``, one more for a
    degenerate symbol; the value returned is the degree of each of the two
    characters a degenerate symbol labels.
    """
    n = s.rank
    if n < 1:
        raise ValueError("symbol rank must be at least 1")
    a, b = s.a, s.b
    eta = -1 if s.twisted else 1
    num = signed_qpow_minus(n, eta) * _prod(
        signed_qpow_minus(2 * k, 1) for k in range(1, n)
    )
    for row in (s.x, s.y):
        for i in range(len(row)):
            for j in range(i):
                num = num * CycloProduct.q(row[j]) * signed_qpow_minus(row[i] - row[j], 1)
    for lam in s.x:
        for mu in s.y:
            lo, hi = min(lam, mu), max(lam, mu)
            if lo == hi:
                num = num * CycloProduct.q(lo) * 2
            else:
                num = num * CycloProduct.q(lo) * signed_qpow_minus(hi - lo, -1)
    c = (a + b - 2) // 2 + (1 if s.degenerate else 0)
    qpow = sum(comb(a + b - 2 * k, 2) for k in range(1, (a + b) // 2 + 1))
    den = CycloProduct(Fraction(2) ** c, qpow)
    for row in (s.x, s.y):
        for lam in row:
            den = den * _prod(signed_qpow_minus(2 * k, 1) for k in range(1, lam + 1))
    deg = num / den
    if not is_polynomial(deg):
        raise TranscriptionError(f"non-polynomial type D degree for {s}")
    return deg


def defect_gap(
    degree: CycloProduct, order: CycloProduct, ctx: ValuationContext
) -> ValuationForm:
    """nu(|G|) - nu(chi(1)); the character has defect zero iff this is (0, 0)."""
    return valuation(order, ctx) - valuation(degree, ctx)


def default_prime(e: int, at_least: int = 5) -> int:
    """Smallest prime l >= at_least with e | l - 1."""
    l = max(at_least, 5)
    while True:
        if (l - 1) % e == 0 and all(l % p for p in range(2, int(l**0.5) + 1)):
            return l
        l += 1


def context_for_linear(eps: int, l: int | None = None, n: int = 0) -> ValuationContext:
    """Context for l | q - eps: e = 1 when eps = +1, e = 2 when eps = -1."""
    e = 1 if _check_sign(eps) == 1 else 2
    return ValuationContext(l if l is not None else default_prime(e, n), e)


def scan_A(n: int, eps: int, ctx: ValuationContext | None = None) -> list[tuple[Partition, CycloProduct, ValuationForm]]:
    ctx = ctx or context_for_linear(eps, n=n)
    order = sl_order(n, eps)
    out = []
    for alpha in enumerate_partitions(n):
        deg = degree_A(alpha, eps)
        out.append((alpha, deg, defect_gap(deg, order, ctx)))
    return out


def scan_dz_A(n: int, eps: int, ctx: ValuationContext | None = None) -> list[Partition]:
    """Partitions of n labelling defect-zero unipotent characters of SL_n^eps(q).

    The default context has l | q - eps with l the smallest admissible prime
    that is at least n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    return [alpha for alpha, _, gap in scan_A(n, eps, ctx) if gap.is_zero()]


def scan_D(n: int, twist: int, ctx: ValuationContext) -> list[tuple[LusztigSymbol, CycloProduct, ValuationForm]]:
    _check_sign(twist)
    order = spin_order(n, twist)
    out = []
    for s in enumerate_symbols(n, 0 if twist == 1 else 2):
        deg = degree_D(s)
        out.append((s, deg, defect_gap(deg, order, ctx)))
    return out


def scan_dz_D(n: int, twist: int, ctx: ValuationContext) -> list[LusztigSymbol]:
    if n < 1:
        raise ValueError("n must be at least 1")
    return [s for s, _, gap in scan_D(n, twist, ctx) if gap.is_zero()]


def symbol_identity_check(a: int, b: int) -> bool:
    """C(a,2) + C(b,2) == floor(((a+b-1)/2)^2) + floor(((a-b)/2)^2)."""
    lhs = comb(a, 2) + comb(b, 2)
    return lhs == ((a + b - 1) ** 2) // 4 + ((a - b) ** 2) // 4


def sl_gap_identity(alpha: Partition, eps: int, ctx: ValuationContext) -> ValuationForm:
    """Right-hand side of the SL_n^eps gap identity, computed factor by factor.

    nu(prod_i prod_{k<=lam_i}(q^k - eps^k)) - nu(prod_{i'<i}(q^{lam_i-lam_i'} - eps^{lam_i+lam_i'})) - nu(q - eps)
    """
    lams = alpha.beta()
    first = _prod(
        signed_qpow_minus(k, eps**k) for lam in lams for k in range(1, lam + 1)
    )
    cross = _prod(
        signed_qpow_minus(lams[i] - lams[j], eps ** (lams[i] + lams[j]))
        for i in range(len(lams))
        for j in range(i)
    )
    return (
        valuation(first, ctx)
        - valuation(cross, ctx)
        - valuation(signed_qpow_minus(1, eps), ctx)
    )
