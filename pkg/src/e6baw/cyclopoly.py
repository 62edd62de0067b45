"""Exact products of cyclotomic polynomials in an indeterminate q.

A :class:`CycloProduct` stores ``c * q^a * prod_d PHI(d)^m_d`` with a reduced
rational constant ``c``.  Group orders and unipotent degrees of finite groups
of Lie type all have this shape, so multiplication, exact division and l-adic
valuation reduce to bookkeeping on the exponent map.

Text form::

    1/2*q^3*PHI(2)^4*PHI(6)

The parser also accepts the sugared factors ``(q^k-1)``, ``(q^k+1)``,
``(q-1)`` and ``(q+1)``, each optionally raised to an integer power.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "CycloProduct",
    "ValuationContext",
    "ValuationForm",
    "phi_poly",
    "signed_qpow_minus",
    "mul",
    "div_exact",
    "is_polynomial",
    "evaluate",
    "valuation",
    "positive_for_all_a",
    "ennola",
    "nu",
    "parse",
    "render",
    "ParseError",
]


class ParseError(ValueError):
    """Raised for text that does not follow the CycloProduct grammar."""


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def phi_poly(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, constant term first."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be positive, got {d}")
    # q^d - 1 divided by every PHI(k) with k | d, k < d
    num = [-1] + [0] * (d - 1) + [1]
    for k in divisors(d)[:-1]:
        num = _exact_polydiv(num, list(phi_poly(k)))
    return tuple(num)


def _exact_polydiv(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = c
        for j, b in enumerate(den):
            num[i + j] -= c * b
    assert not any(num[: len(den) - 1])
    return out


def _poly_at(coeffs: Iterable[int], x: int) -> int:
    acc = 0
    for c in reversed(tuple(coeffs)):
        acc = acc * x + c
    return acc


def nu(n: int | Fraction, l: int) -> int:
    """l-adic valuation of a nonzero rational number."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    a, b = abs(n.numerator), n.denominator
    while a % l == 0:
        a //= l
        v += 1
    while b % l == 0:
        b //= l
        v -= 1
    return v


@dataclass(frozen=True)
class CycloProduct:
    """``constant * q^qexp * prod PHI(d)^m`` in canonical form.

    ``factors`` is a sorted tuple of ``(d, m)`` with ``m != 0``.  Negative
    multiplicities and a negative ``qexp`` are allowed for intermediate
    quotients; see :func:`is_polynomial`.
    """

    constant: Fraction = Fraction(1)
    qexp: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        c = Fraction(self.constant)
        if c == 0:
            raise ValueError("CycloProduct constant must be nonzero")
        merged: dict[int, int] = {}
        for d, m in self.factors:
            if d < 1:
                raise ValueError(f"cyclotomic index must be positive, got {d}")
            merged[d] = merged.get(d, 0) + m
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "qexp", int(self.qexp))
        object.__setattr__(
            self, "factors", tuple(sorted((d, m) for d, m in merged.items() if m))
        )

    @classmethod
    def make(
        cls, constant=1, qexp: int = 0, factors: Mapping[int, int] | None = None
    ) -> "CycloProduct":
        return cls(Fraction(constant), qexp, tuple((factors or {}).items()))

    @classmethod
    def phi(cls, d: int, m: int = 1) -> "CycloProduct":
        return cls(Fraction(1), 0, ((d, m),))

    @classmethod
    def q(cls, a: int = 1) -> "CycloProduct":
        return cls(Fraction(1), a)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self.factors)

    def mult(self, d: int) -> int:
        return self.multiplicities.get(d, 0)

    def __mul__(self, other):
        if not isinstance(other, CycloProduct):
            if isinstance(other, (int, Fraction)):
                return CycloProduct(self.constant * other, self.qexp, self.factors)
            return NotImplemented
        return CycloProduct(
            self.constant * other.constant,
            self.qexp + other.qexp,
            self.factors + other.factors,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycloProduct):
            if isinstance(other, (int, Fraction)):
                return CycloProduct(self.constant / other, self.qexp, self.factors)
            return NotImplemented
        return CycloProduct(
            self.constant / other.constant,
            self.qexp - other.qexp,
            self.factors + tuple((d, -m) for d, m in other.factors),
        )

    def __pow__(self, k: int) -> "CycloProduct":
        return CycloProduct(
            self.constant**k, self.qexp * k, tuple((d, m * k) for d, m in self.factors)
        )

    def __abs__(self) -> "CycloProduct":
        return CycloProduct(abs(self.constant), self.qexp, self.factors)

    def __call__(self, q0: int) -> Fraction:
        return evaluate(self, q0)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"CycloProduct({render(self)!r})"

    def poly_degree(self) -> int:
        """Degree in q (for polynomials; a rational function's net degree)."""
        return self.qexp + sum(m * (len(phi_poly(d)) - 1) for d, m in self.factors)


ONE = CycloProduct()


def signed_qpow_minus(k: int, s: int) -> CycloProduct:
    """``q^k - s`` for ``s = +1`` or ``-1`` as a product of PHI(d)."""
    if k < 1:
        raise ValueError("k must be positive")
    if s == 1:
        return CycloProduct.make(factors={d: 1 for d in divisors(k)})
    if s == -1:
        return CycloProduct.make(
            factors={d: 1 for d in divisors(2 * k) if k % d != 0}
        )
    raise ValueError(f"sign must be +1 or -1, got {s}")


def mul(f: CycloProduct, g: CycloProduct) -> CycloProduct:
    return f * g


def div_exact(f: CycloProduct, g: CycloProduct) -> CycloProduct:
    return f / g


def is_polynomial(f: CycloProduct) -> bool:
    return f.qexp >= 0 and all(m >= 0 for _, m in f.factors)


def evaluate(f: CycloProduct, q0: int) -> Fraction:
    """Exact value at an integer ``q0`` (negative values are allowed)."""
    if q0 == 0:
        if f.qexp < 0:
            raise ZeroDivisionError("q^a with a < 0 at q = 0")
    val = f.constant * Fraction(q0) ** f.qexp
    for d, m in f.factors:
        val *= Fraction(_poly_at(phi_poly(d), q0)) ** m
    return val


@dataclass(frozen=True)
class ValuationContext:
    """A prime ``l >= 5`` and the multiplicative order ``e`` of q mod l.

    ``e`` is trusted, not checked against any q.
    """

    l: int
    e: int

    def __post_init__(self):
        if self.l < 5:
            raise ValueError("primes 2 and 3 are not supported (l >= 5)")
        if any(self.l % p == 0 for p in range(2, int(self.l**0.5) + 1)):
            raise ValueError(f"l={self.l} is not prime")
        if self.e < 1:
            raise ValueError("e must be a positive integer")
        if (self.l - 1) % self.e:
            raise ValueError(f"e={self.e} cannot be the order of q mod {self.l}")


@dataclass(frozen=True, order=True)
class ValuationForm:
    """``alpha * a + beta`` where ``a`` stands for nu_l(PHI_e(q)) >= 1."""

    alpha: int = 0
    beta: int = 0

    def __add__(self, other: "ValuationForm") -> "ValuationForm":
        return ValuationForm(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "ValuationForm") -> "ValuationForm":
        return ValuationForm(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> "ValuationForm":
        return ValuationForm(-self.alpha, -self.beta)

    def at(self, a: int) -> int:
        return self.alpha * a + self.beta

    def is_zero(self) -> bool:
        return self.alpha == 0 and self.beta == 0

    def is_nonnegative(self) -> bool:
        """True when the form is >= 0 for every a >= 1."""
        return self.alpha >= 0 and self.alpha + self.beta >= 0

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


def valuation(f: CycloProduct, ctx: ValuationContext) -> ValuationForm:
    """nu_l(f(q)) for every q with ord_l(q) = ctx.e, as a form in a = nu_l(PHI_e(q)).

    Uses nu_l(PHI_d(q)) = a for d = e, 1 for d = e*l^j (j >= 1), 0 otherwise.
    """
    mults = f.multiplicities
    alpha = mults.get(ctx.e, 0)
    beta = nu(f.constant, ctx.l)
    d = ctx.e * ctx.l
    top = max(mults, default=0)
    while d <= top:
        beta += mults.get(d, 0)
        d *= ctx.l
    return ValuationForm(alpha, beta)


def positive_for_all_a(v: ValuationForm) -> bool:
    return v.alpha >= 0 and v.alpha + v.beta >= 1


def _ennola_index(d: int) -> tuple[int, int]:
    """(d', sign) with PHI_d(-q) = sign * PHI_d'(q)."""
    if d == 1:
        return 2, -1
    if d == 2:
        return 1, -1
    if d % 2:
        return 2 * d, 1
    if d % 4 == 2:
        return d // 2, 1
    return d, 1


def ennola(f: CycloProduct) -> CycloProduct:
    """Substitute q -> -q exactly: ``ennola(f)(q0) == f(-q0)``.

    Signs from odd powers of q and from PHI(1), PHI(2) are folded into the
    constant, so the map is an exact involution.  Use ``abs()`` on the result
    to get a positive leading constant.
    """
    sign = -1 if f.qexp % 2 else 1
    out: dict[int, int] = {}
    for d, m in f.factors:
        d2, s = _ennola_index(d)
        if s < 0 and m % 2:
            sign = -sign
        out[d2] = out.get(d2, 0) + m
    return CycloProduct.make(sign * f.constant, f.qexp, out)


def render(f: CycloProduct) -> str:
    parts = []
    if f.constant != 1 or (f.qexp == 0 and not f.factors):
        parts.append(str(f.constant))
    if f.qexp == 1:
        parts.append("q")
    elif f.qexp:
        parts.append(f"q^{f.qexp}")
    for d, m in f.factors:
        parts.append(f"PHI({d})" if m == 1 else f"PHI({d})^{m}")
    return "*".join(parts)


_TOKEN = re.compile(
    r"""
    (?P<phi>PHI\((?P<d>\d+)\))
  | (?P<sugar>\(q(?:\^(?P<k>\d+))?(?P<sgn>[+-])1\))
  | (?P<q>q)
  | (?P<num>-?\d+(?:/\d+)?)
    """,
    re.VERBOSE,
)
_EXP = re.compile(r"\^(-?\d+)")


def parse(text: str) -> CycloProduct:
    """Parse the ``c*q^a*PHI(d)^m*...`` grammar (whitespace is ignored)."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty CycloProduct")
    result = ONE
    pos = 0
    first = True
    while pos < len(s):
        if not first:
            if s[pos] != "*":
                raise ParseError(f"expected '*' at {pos} in {text!r}")
            pos += 1
        first = False
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"bad factor at {pos} in {text!r}")
        pos = m.end()
        exp = 1
        e = _EXP.match(s, pos)
        if e:
            exp = int(e.group(1))
            pos = e.end()
        if m.group("phi"):
            d = int(m.group("d"))
            if d < 1:
                raise ParseError(f"PHI index must be positive in {text!r}")
            term = CycloProduct.phi(d)
        elif m.group("sugar"):
            k = int(m.group("k") or 1)
            if k < 1:
                raise ParseError(f"exponent must be positive in {text!r}")
            term = signed_qpow_minus(k, 1 if m.group("sgn") == "-" else -1)
        elif m.group("q"):
            term = CycloProduct.q()
        else:
            try:
                c = Fraction(m.group("num"))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc)) from None
            if c == 0:
                raise ParseError(f"zero constant in {text!r}")
            term = CycloProduct(c)
        result = result * term**exp
    return result
