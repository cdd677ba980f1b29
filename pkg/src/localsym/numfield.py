"""Exact arithmetic in biquadratic fields Q(sqrt(a), sqrt(b)) with the two
commuting involutions sigma (negates sqrt(a)) and tau (negates sqrt(b)),
and matrices over them.

The degenerate quadratic model Q(sqrt(a)) with tau = id is served by the
same interface (pass b = None), so symplectic and orthogonal pairs run
through the same code path as unitary ones.

Identities checked here are polynomial identities over a global field and
therefore hold in every completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NumFieldError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class BiquadField:
    """Q(sqrt(a), sqrt(b)); pass b = None for the quadratic model Q(sqrt(a)).

    sigma negates sqrt(a) and fixes sqrt(b); tau negates sqrt(b) and fixes
    sqrt(a) (tau = id on the quadratic model).  The four subfields are
    Q (fixed field of both), Q(sqrt(a)) = fix(tau), Q(sqrt(b)) = fix(sigma)
    and Q(sqrt(ab)) = fix(sigma tau).
    """

    a: int
    b: int | None = None

    def __post_init__(self):
        if self.a in (0, 1) or not _squarefree(self.a):
            raise NumFieldError(f"a={self.a} must be squarefree and != 0, 1")
        if self.b is not None:
            if self.b in (0, 1) or not _squarefree(self.b):
                raise NumFieldError(f"b={self.b} must be squarefree and != 0, 1")
            if self.b == self.a:
                raise NumFieldError("a and b must be distinct")

    @property
    def is_quadratic(self):
        return self.b is None

    def element(self, c0, c1=0, c2=0, c3=0) -> "Bq":
        return Bq(self, (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3)))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def sqrt_a(self):
        return self.element(0, 1)

    @property
    def sqrt_b(self):
        return self.element(0, 0, 1)

    @property
    def sqrt_ab(self):
        return self.element(0, 0, 0, 1)


@dataclass(frozen=True)
class Bq:
    """c0 + c1 sqrt(a) + c2 sqrt(b) + c3 sqrt(ab), exact rational coefficients."""

    field: BiquadField
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise NumFieldError("need 4 coefficients")
        if self.field.is_quadratic and (self.coeffs[2] or self.coeffs[3]):
            raise NumFieldError("quadratic model has no sqrt(b) component")

    def _lift(self, other):
        if isinstance(other, Bq):
            if other.field != self.field:
                raise NumFieldError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Bq(self.field, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Bq(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        x0, x1, x2, x3 = self.coeffs
        y0, y1, y2, y3 = o.coeffs
        a = self.field.a
        b = self.field.b if self.field.b is not None else 0
        ab = a * b
        return Bq(
            self.field,
            (
                x0 * y0 + a * x1 * y1 + b * x2 * y2 + ab * x3 * y3,
                x0 * y1 + x1 * y0 + b * (x2 * y3 + x3 * y2),
                x0 * y2 + x2 * y0 + a * (x1 * y3 + x3 * y1),
                x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1,
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @property
    def is_zero(self):
        return not any(self.coeffs)

    @property
    def is_rational(self):
        return not (self.coeffs[1] or self.coeffs[2] or self.coeffs[3])

    @property
    def rational(self) -> Fraction:
        if not self.is_rational:
            raise NumFieldError(f"{self} is not rational")
        return self.coeffs[0]

    def sigma(self):
        c0, c1, c2, c3 = self.coeffs
        return Bq(self.field, (c0, -c1, c2, -c3))

    def tau(self):
        if self.field.is_quadratic:
            return self
        c0, c1, c2, c3 = self.coeffs
        return Bq(self.field, (c0, c1, -c2, -c3))

    def sigma_tau(self):
        return self.sigma().tau()

    def apply(self, which: str):
        """Apply an involution by name: 'sigma', 'tau' or 'sigma_tau'."""
        try:
            return getattr(self, which)()
        except AttributeError:
            raise NumFieldError(f"unknown involution {which!r}")

    def norm_to_E(self):
        """Norm to the subfield fixed by tau."""
        return self * self.tau()

    def norm_to_Fp(self):
        """Norm to the subfield fixed by sigma."""
        return self * self.sigma()

    def norm_to_Q(self) -> Fraction:
        n = self * self.sigma() * self.tau() * self.sigma_tau()
        return n.rational

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of 0")
        cof = self.sigma() * self.tau() * self.sigma_tau()
        n = (self * cof).rational
        return Bq(self.field, tuple(c / n for c in cof.coeffs))

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field, data):
        return Bq(field, tuple(Fraction(s) for s in data))

    def __repr__(self):
        names = ("", "*ra", "*rb", "*rab")
        parts = [f"{c}{n}" for c, n in zip(self.coeffs, names) if c]
        return "Bq(" + (" + ".join(parts) if parts else "0") + ")"


def apply_involution(x: Bq, which: str) -> Bq:
    return x.apply(which)


def recover_hilbert90(x: Bq, which: str = "tau") -> Bq:
    """Given x with x * inv(x) = 1, return c with c / inv(c) = x.

    c = 1 + x works unless x = -1, where the generator negated by the
    involution does (sqrt(b) for tau, sqrt(a) for sigma, sqrt(ab) for
    sigma_tau).
    """
    if not (x * x.apply(which) - 1).is_zero:
        raise NumFieldError("x is not of norm one")
    c = x + 1
    if c.is_zero:
        f = x.field
        gens = {"sigma": f.sqrt_a}
        if not f.is_quadratic:
            gens["tau"] = f.sqrt_b
            gens["sigma_tau"] = f.sqrt_ab
        try:
            c = gens[which]
        except KeyError:
            raise NumFieldError(f"no generator is negated by {which!r} here")
    assert (c / c.apply(which) - x).is_zero
    return c


class Mat:
    """An immutable matrix over a biquadratic field."""

    __slots__ = ("field", "rows", "n", "m")

    def __init__(self, field: BiquadField, rows: Sequence[Sequence[Bq]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.m:
                raise NumFieldError("ragged rows")

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_rational(cls, field, rows):
        return cls(field, [[field.element(x) for x in r] for r in rows])

    @classmethod
    def from_json(cls, field, data):
        return cls(field, [[Bq.from_json(field, e) for e in r] for r in data])

    @classmethod
    def diagonal(cls, field, entries):
        entries = [e if isinstance(e, Bq) else field.element(e) for e in entries]
        zero = field.zero
        n = len(entries)
        return cls(field, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, field, blocks):
        mats = [b if isinstance(b, Mat) else b for b in blocks]
        n = sum(b.n for b in mats)
        zero = field.zero
        rows = [[zero] * n for _ in range(n)]
        off = 0
        for b in mats:
            for i in range(b.n):
                for j in range(b.m):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return cls(field, rows)

    @classmethod
    def antidiag_ones(cls, field, n):
        """The matrix w_n with ones on the antidiagonal."""
        one, zero = field.one, field.zero
        return cls(field, [[one if i + j == n - 1 else zero for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Bq)):
            s = other if isinstance(other, Bq) else self.field.element(other)
            return Mat(self.field, [[e * s for e in r] for r in self.rows])
        if not isinstance(other, Mat):
            return NotImplemented
        if self.m != other.n:
            raise NumFieldError("dimension mismatch")
        zero = self.field.zero
        ocols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for j in range(other.m):
                acc = zero
                col = ocols[j]
                for k in range(self.m):
                    e = r[k]
                    if e.is_zero:
                        continue
                    acc = acc + e * col[k]
                row.append(acc)
            out.append(row)
        return Mat(self.field, out)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Mat) or (self.n, self.m) != (other.n, other.m):
            raise NumFieldError("dimension mismatch")
        return Mat(
            self.field,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        return self + (other * (-1))

    def __neg__(self):
        return self * (-1)

    @property
    def T(self):
        return Mat(self.field, list(zip(*self.rows)) if self.rows else [])

    def map(self, fn: Callable[[Bq], Bq]):
        return Mat(self.field, [[fn(e) for e in r] for r in self.rows])

    def sigma(self):
        return self.map(lambda e: e.sigma())

    def tau(self):
        return self.map(lambda e: e.tau())

    def sigma_tau(self):
        return self.map(lambda e: e.sigma_tau())

    @property
    def is_identity(self):
        if self.n != self.m:
            return False
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if e != (self.field.one if i == j else self.field.zero):
                    return False
        return True

    @property
    def is_rational(self):
        return all(e.is_rational for r in self.rows for e in r)

    def det(self) -> Bq:
        if self.n != self.m:
            raise NumFieldError("determinant of non-square matrix")
        n = self.n
        if n == 0:
            return self.field.one
        rows = [list(r) for r in self.rows]
        det = self.field.one
        for col in range(n):
            piv = next((i for i in range(col, n) if not rows[i][col].is_zero), None)
            if piv is None:
                return self.field.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = -det
            pivot = rows[col][col]
            det = det * pivot
            inv = pivot.inverse()
            for i in range(col + 1, n):
                if rows[i][col].is_zero:
                    continue
                f = rows[i][col] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
        return det

    def inv(self):
        if self.n != self.m:
            raise NumFieldError("inverse of non-square matrix")
        n = self.n
        field = self.field
        aug = [list(r) + list(Mat.identity(field, n).rows[i]) for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if not aug[i][col].is_zero), None)
            if piv is None:
                raise NumFieldError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for i in range(n):
                if i == col or aug[i][col].is_zero:
                    continue
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return Mat(field, [r[n:] for r in aug])

    def to_json(self):
        return [[e.to_json() for e in r] for r in self.rows]

    def __repr__(self):
        return f"Mat({self.n}x{self.m} over {self.field})"


def conj_transpose(g: Mat, which: str = "tau") -> Mat:
    return g.T.map(lambda e: e.apply(which))


def is_eps_hermitian(j: Mat, eps: int) -> bool:
    """t(j)^tau = eps * j."""
    return conj_transpose(j, "tau") == j * eps


def in_isometry_group(g: Mat, j: Mat, eps: int | None = None) -> bool:
    """Exact test of t(g)^tau j g = j."""
    if g.n != g.m or j.n != j.m or g.n != j.n:
        raise NumFieldError("dimension mismatch")
    if eps is not None and not is_eps_hermitian(j, eps):
        raise NumFieldError("form is not eps-hermitian")
    return conj_transpose(g, "tau") * j * g == j


def in_symmetric_space(x: Mat, j: Mat, eps: int | None = None) -> bool:
    """Isometry test plus the twisted-symmetry condition x sigma(x) = I."""
    return in_isometry_group(x, j, eps) and (x * x.sigma()).is_identity


def recover_hilbert90_matrix(x: Mat) -> Mat:
    """Given x with x sigma(x) = I, return invertible z with z sigma(z)^-1 = x.

    z = c + x sigma(c) works for any c making it invertible; c = I, then
    c = sqrt(a) I, then a few deterministic diagonal perturbations.
    """
    if not (x * x.sigma()).is_identity:
        raise NumFieldError("x sigma(x) != I")
    import random as _random

    field = x.field
    n = x.n
    candidates = [Mat.identity(field, n), Mat.identity(field, n) * field.sqrt_a]
    for k in range(2, 2 + n):
        candidates.append(
            Mat.diagonal(field, [field.element(1 + (i * k) % (n + k)) + field.sqrt_a * (i % 2) for i in range(n)])
        )
    rng = _random.Random(20240810)
    for _ in range(40):
        candidates.append(
            Mat(
                field,
                [
                    [field.element(rng.randint(-3, 3)) + field.sqrt_a * rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(n)
                ],
            )
        )
    for c in candidates:
        z = c + x * c.sigma()
        if not z.det().is_zero:
            assert z * z.sigma().inv() == x
            return z
    raise NumFieldError("no splitting found; matrix too degenerate for the candidate list")
