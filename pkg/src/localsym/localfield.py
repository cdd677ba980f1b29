"""Square classes, Hilbert symbols and norm groups over p-adic completions of Q.

A nonzero rational number determines a class in Qp*/Qp*^2, a group of order
4 for odd p and of order 8 for p = 2.  Everything downstream (Hasse
invariants, norm-group membership, quadratic characters) factors through
these finite groups, so all computations here are exact and finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = "int | Fraction"

_ORACLE_MODULUS_CAP = 50_000_000


class LocalFieldError(ValueError):
    """Invalid local-field data: bad prime, zero input, mismatched primes."""


def is_prime(n):
    """Deterministic Miller-Rabin, good far beyond any desk-scale input."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class Prime:
    """A rational prime, p = 2 allowed."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise LocalFieldError(f"{self.p!r} is not a prime")

    @property
    def odd(self):
        return self.p != 2

    def legendre(self, a) -> int:
        """Legendre symbol (a|p) for odd p and a prime to p."""
        if not self.odd:
            raise LocalFieldError("Legendre symbol needs an odd prime")
        a %= self.p
        if a == 0:
            raise LocalFieldError("Legendre symbol of 0")
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    @property
    def nonresidue(self) -> int:
        """Smallest positive quadratic non-residue mod p (odd p)."""
        return _nonresidue(self.p)

    def __repr__(self):
        return f"Prime({self.p})"


@lru_cache(maxsize=None)
def _nonresidue(p):
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise LocalFieldError(f"no non-residue mod {p}")


def _as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


def valuation(x, p) -> int:
    """p-adic valuation of a nonzero rational."""
    p = _as_prime(p).p
    x = Fraction(x)
    if x == 0:
        raise LocalFieldError("valuation of 0")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class SquareClass:
    """An element of Qp*/Qp*^2.

    `val` is the valuation mod 2 and `unit` a canonical label for the unit
    part: 1 or the smallest non-residue for odd p, a residue in {1,3,5,7}
    mod 8 for p = 2.
    """

    prime: Prime
    val: int
    unit: int

    def __post_init__(self):
        if self.val not in (0, 1):
            raise LocalFieldError("val must be 0 or 1")
        if self.prime.odd:
            if self.unit not in (1, self.prime.nonresidue):
                raise LocalFieldError(
                    f"unit label must be 1 or {self.prime.nonresidue} for p={self.prime.p}"
                )
        elif self.unit not in (1, 3, 5, 7):
            raise LocalFieldError("unit label must be in {1,3,5,7} for p=2")

    def __mul__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        if other.prime != self.prime:
            raise LocalFieldError("mismatched primes")
        p = self.prime
        if p.odd:
            u = 1 if p.legendre(self.unit * other.unit) == 1 else p.nonresidue
        else:
            u = self.unit * other.unit % 8
        return SquareClass(p, (self.val + other.val) % 2, u)

    @property
    def is_trivial(self):
        return self.val == 0 and self.unit == 1

    @property
    def rep(self) -> int:
        """Canonical integer representative."""
        return self.unit * self.prime.p ** self.val

    def to_json(self):
        return {"p": self.prime.p, "val": self.val, "unit": self.unit}

    @classmethod
    def from_json(cls, d):
        return cls(Prime(d["p"]), d["val"], d["unit"])

    def __repr__(self):
        return f"SquareClass({self.rep} @ {self.prime.p})"


def reduce(x, p) -> SquareClass:
    """Canonicalize a nonzero rational into Qp*/Qp*^2."""
    p = _as_prime(p)
    x = Fraction(x)
    if x == 0:
        raise LocalFieldError("0 has no square class")
    v = valuation(x, p)
    u = x / Fraction(p.p) ** v
    num, den = u.numerator, u.denominator
    if p.odd:
        r = num * pow(den, -1, p.p) % p.p
        unit = 1 if p.legendre(r) == 1 else p.nonresidue
    else:
        unit = num * pow(den, -1, 8) % 8
    return SquareClass(p, v % 2, unit)


def square_classes(p):
    """All square classes of Qp, via canonical integer representatives."""
    p = _as_prime(p)
    units = (1, p.nonresidue) if p.odd else (1, 3, 5, 7)
    return tuple(
        SquareClass(p, v, u) for v in (0, 1) for u in units
    )


def square_class_reps(p):
    return tuple(c.rep for c in square_classes(p))


def hilbert(a: SquareClass, b: SquareClass) -> int:
    """Quadratic Hilbert symbol (a,b)_p by the closed formulas."""
    if a.prime != b.prime:
        raise LocalFieldError("mismatched primes")
    p = a.prime
    alpha, beta = a.val, b.val
    u, w = a.unit, b.unit
    if p.odd:
        e = alpha * beta * ((p.p - 1) // 2)
        s = (-1) ** e
        if beta:
            s *= p.legendre(u)
        if alpha:
            s *= p.legendre(w)
        return s
    eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
    om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
    return (-1) ** (eps_u * eps_w + alpha * om_w + beta * om_u)


def hilbert_rational(a, b, p) -> int:
    p = _as_prime(p)
    return hilbert(reduce(a, p), reduce(b, p))


def hilbert_real(a, b) -> int:
    """Hilbert symbol at the real place."""
    if a == 0 or b == 0:
        raise LocalFieldError("zero input")
    return -1 if a < 0 and b < 0 else 1


@lru_cache(maxsize=None)
def _squares_mod(pm):
    return frozenset(x * x % pm for x in range(pm))


@lru_cache(maxsize=None)
def hilbert_oracle(a: int, b: int, p) -> int:
    """Brute-force symbol: decide z^2 = a x^2 + b y^2 over Qp by searching a
    primitive solution mod p^m with the Hensel-sufficient exponent
    m = 2 val_p(4ab) + 3.

    Independent of `hilbert`; used as its ground truth in tests.
    """
    p = _as_prime(p)
    if a == 0 or b == 0:
        raise LocalFieldError("zero input")
    m = 2 * valuation(4 * a * b, p) + 3
    pm = p.p ** m
    if pm > _ORACLE_MODULUS_CAP:
        raise LocalFieldError(f"oracle modulus {p.p}^{m} too large for desk scale")
    sq = _squares_mod(pm)
    # A primitive solution can be scaled so that some coordinate equals 1.
    for s in sq:  # x = 1: z^2 - b y^2 = a
        if (a + b * s) % pm in sq:
            return 1
    for s in sq:  # y = 1: z^2 - a x^2 = b
        if (b + a * s) % pm in sq:
            return 1
    bset = frozenset(b * s % pm for s in sq)
    for s in sq:  # z = 1: a x^2 + b y^2 = 1
        if (1 - a * s) % pm in bset:
            return 1
    return -1


@dataclass(frozen=True)
class QuadExtension:
    """A quadratic extension E = F(sqrt(d)) of F = Qp, given by a nontrivial
    square class d.  The norm group N(E/F) has index two in F*."""

    base: Prime
    d: SquareClass

    def __post_init__(self):
        if self.d.prime != self.base:
            raise LocalFieldError("d lives over the wrong prime")
        if self.d.is_trivial:
            raise LocalFieldError("d must be a non-square")

    @classmethod
    def of(cls, d, p):
        p = _as_prime(p)
        return cls(p, reduce(d, p))

    def to_json(self):
        return {"p": self.base.p, "d": self.d.to_json()}


def eta(ext: QuadExtension, a) -> int:
    """Quadratic character of F* with kernel N(E/F), evaluated as (a, d)_F."""
    cls = a if isinstance(a, SquareClass) else reduce(a, ext.base)
    return hilbert(cls, ext.d)


@dataclass(frozen=True)
class KleinExtension:
    """A biquadratic extension of Qp, given by two independent nontrivial
    square classes.  Its three quadratic subextensions have pairwise
    distinct norm groups."""

    base: Prime
    d1: SquareClass
    d2: SquareClass

    def __post_init__(self):
        if self.d1.prime != self.base or self.d2.prime != self.base:
            raise LocalFieldError("classes live over the wrong prime")
        if self.d1.is_trivial or self.d2.is_trivial:
            raise LocalFieldError("both classes must be non-squares")
        if (self.d1 * self.d2).is_trivial:
            raise LocalFieldError("classes must be independent")

    @property
    def subextensions(self):
        return (
            QuadExtension(self.base, self.d1),
            QuadExtension(self.base, self.d2),
            QuadExtension(self.base, self.d1 * self.d2),
        )


@dataclass(frozen=True)
class ReciprocityReport:
    ok: bool
    product: int
    symbols: tuple  # ((place, symbol), ...) with place an int prime or "inf"

    def to_json(self):
        return {
            "ok": self.ok,
            "product": self.product,
            "symbols": [[str(pl), s] for pl, s in self.symbols],
        }


def _prime_divisors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def reciprocity_check(a, b) -> ReciprocityReport:
    """Check the product formula prod_v (a,b)_v = 1 over all places of Q.

    Only places dividing 2ab and the real place can contribute a sign.  A
    failing product signals an implementation bug in the symbol formulas.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise LocalFieldError("zero input")
    support = {2}
    for x in (a, b):
        support.update(_prime_divisors(x.numerator))
        support.update(_prime_divisors(x.denominator))
    symbols = [(p, hilbert_rational(a, b, p)) for p in sorted(support)]
    symbols.append(("inf", hilbert_real(a, b)))
    prod = 1
    for _, s in symbols:
        prod *= s
    return ReciprocityReport(prod == 1, prod, tuple(symbols))
