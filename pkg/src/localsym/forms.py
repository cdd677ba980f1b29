"""Classification of epsilon-hermitian spaces over a p-adic base by their
complete invariants: rank, discriminant and Hasse sign in the orthogonal
case, rank and the determinant norm-class bit in the unitary case, rank
alone in the symplectic case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .localfield import (
    LocalFieldError,
    Prime,
    QuadExtension,
    SquareClass,
    eta,
    hilbert,
    hilbert_rational,
    reduce,
)
from . import numfield
from .numfield import Mat


class FormsError(ValueError):
    pass


class Case(enum.Enum):
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"
    UNITARY = "unitary"

    @property
    def eps(self) -> int:
        return -1 if self is Case.SYMPLECTIC else 1


@dataclass(frozen=True)
class DiagForm:
    """A diagonalized form: nonzero rational entries for the orthogonal and
    unitary cases (unitary diagonal entries lie in the base field), rank
    only for the symplectic case."""

    case: Case
    prime: Prime
    entries: tuple = ()
    ext: QuadExtension | None = None
    symplectic_rank: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))
        if any(e == 0 for e in self.entries):
            raise FormsError("zero diagonal entry")
        if self.case is Case.SYMPLECTIC:
            if self.entries:
                raise FormsError("symplectic forms carry no diagonal entries")
            if self.symplectic_rank is None or self.symplectic_rank % 2:
                raise FormsError("symplectic rank must be given and even")
        elif self.case is Case.UNITARY:
            if self.ext is None or self.ext.base != self.prime:
                raise FormsError("unitary case needs a quadratic extension over the same prime")
        elif self.ext is not None:
            raise FormsError("orthogonal case takes no extension")

    @property
    def rank(self) -> int:
        if self.case is Case.SYMPLECTIC:
            return self.symplectic_rank
        return len(self.entries)

    def to_json(self):
        return {
            "case": self.case.value,
            "p": self.prime.p,
            "entries": [str(e) for e in self.entries],
            "ext_d": self.ext.d.to_json() if self.ext else None,
            "rank": self.rank,
        }


@dataclass(frozen=True)
class FormInvariants:
    case: Case
    rank: int
    disc: SquareClass | None = None
    hasse: int | None = None
    det_norm_bit: int | None = None

    def to_json(self):
        out = {"case": self.case.value, "rank": self.rank}
        if self.disc is not None:
            out["disc"] = self.disc.to_json()
        if self.hasse is not None:
            out["hasse"] = self.hasse
        if self.det_norm_bit is not None:
            out["det_norm_bit"] = self.det_norm_bit
        return out


def disc_class(entries, p) -> SquareClass:
    d = Fraction(1)
    for e in entries:
        d *= Fraction(e)
    return reduce(d, p)


def hasse_invariant(entries, p) -> int:
    """Product of Hilbert symbols over pairs i < j of diagonal entries."""
    classes = [reduce(e, p) for e in entries]
    h = 1
    for x, y in combinations(classes, 2):
        h *= hilbert(x, y)
    return h


def congruent_diagonal(gram):
    """Symmetric congruence diagonalization over Q.

    Returns (entries, P) with t(P) G P = diag(entries), P invertible
    rational.  A vanishing pivot is repaired by a basis swap when some
    later diagonal entry is nonzero, else by adding the column of a
    nonzero off-diagonal entry (its doubled value is a valid pivot in
    characteristic zero).
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if len(gram[i]) != n:
            raise FormsError("non-square matrix")
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise FormsError("matrix is not symmetric")
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def add_col(dst, src, c):
        # column operation plus the mirroring row operation on g
        for i in range(n):
            g[i][dst] += c * g[i][src]
        for j in range(n):
            g[dst][j] += c * g[src][j]
        for i in range(n):
            p[i][dst] += c * p[i][src]

    def swap_cols(i, j):
        for r in range(n):
            g[r][i], g[r][j] = g[r][j], g[r][i]
        g[i], g[j] = g[j], g[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if g[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if g[i][i] != 0), None)
            if swap is not None:
                swap_cols(k, swap)
            else:
                j = next((j for j in range(k + 1, n) if g[k][j] != 0), None)
                if j is None:
                    raise FormsError("singular matrix")
                add_col(k, j, 1)
        piv = g[k][k]
        for j in range(k + 1, n):
            if g[k][j] != 0:
                add_col(j, k, -g[k][j] / piv)
    entries = tuple(g[i][i] for i in range(n))
    if any(e == 0 for e in entries):
        raise FormsError("singular matrix")
    return entries, p


def diagonalize(gram, p, case: Case = Case.ORTHOGONAL, ext=None):
    """Diagonalize a symmetric rational Gram matrix into a DiagForm.

    Returns (form, P) with t(P) gram P diagonal."""
    if case is Case.SYMPLECTIC:
        raise FormsError("symplectic forms are not diagonalizable")
    entries, pmat = congruent_diagonal(gram)
    p = p if isinstance(p, Prime) else Prime(p)
    return DiagForm(case, p, entries, ext=ext), pmat


def invariants(f: DiagForm) -> FormInvariants:
    if f.case is Case.SYMPLECTIC:
        raise FormsError("rank is the only symplectic invariant")
    if f.case is Case.ORTHOGONAL:
        return FormInvariants(
            f.case,
            f.rank,
            disc=disc_class(f.entries, f.prime),
            hasse=hasse_invariant(f.entries, f.prime),
        )
    det = Fraction(1)
    for e in f.entries:
        det *= e
    bit = 0 if eta(f.ext, det) == 1 else 1
    return FormInvariants(f.case, f.rank, det_norm_bit=bit)


def equivalent(f: DiagForm, g: DiagForm) -> bool:
    if f.case is not g.case or f.prime != g.prime or f.ext != g.ext:
        raise FormsError("mixed cases")
    if f.rank != g.rank:
        return False
    if f.case is Case.SYMPLECTIC:
        return True
    return invariants(f) == invariants(g)


def orbit_count(case: Case, rank: int, disc: SquareClass | None = None) -> int:
    """Number of equivalence classes with the given rank (and, in the
    orthogonal case, the given discriminant class)."""
    if rank < 1:
        raise FormsError("rank must be positive")
    if case is Case.SYMPLECTIC:
        if rank % 2:
            raise FormsError("symplectic spaces have even rank")
        return 1
    if case is Case.UNITARY:
        return 2
    if disc is None:
        raise FormsError("orthogonal count needs a discriminant class")
    if rank == 1:
        return 1
    if rank == 2:
        return 1 if disc == reduce(-1, disc.prime) else 2
    return 2


def det_image_witness(f: DiagForm, a, change_of_basis=None):
    """An isometry h of the form with det h = a, namely
    g diag(a, 1, ..., 1) g^{-1} for g the diagonalizing change of basis.

    Orthogonal case: a = +-1, h rational with h^2 = I.  Unitary case: a is
    a norm-one element of the modelled extension (a Bq over a quadratic
    model) and h is a matrix over that model.
    """
    n = f.rank
    if f.case is Case.SYMPLECTIC:
        raise FormsError("symplectic isometries all have determinant one")
    if f.case is Case.ORTHOGONAL:
        if a not in (1, -1):
            raise FormsError("orthogonal determinants are +-1")
        if change_of_basis is None:
            return [[Fraction(a if i == 0 else 1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        g = [[Fraction(x) for x in row] for row in change_of_basis]
        d = [[Fraction(a if i == 0 else 1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        gi = _rat_inv(g)
        return _rat_mul(_rat_mul(g, d), gi)
    if not isinstance(a, numfield.Bq):
        raise FormsError("unitary determinant target must be a field element")
    if not (a * a.sigma_tau() - 1).is_zero and not (a * a.tau() - 1).is_zero:
        raise FormsError("determinant target must have norm one")
    field = a.field
    h = Mat.diagonal(field, [a] + [field.one] * (n - 1))
    if change_of_basis is None:
        return h
    g = Mat.from_rational(field, change_of_basis)
    return g * h * g.inv()


def _rat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _rat_inv(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise FormsError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def sum_invariants(inv1: FormInvariants, inv2: FormInvariants) -> FormInvariants:
    """Invariants of an orthogonal direct sum from those of the summands:
    disc multiplies, hasse multiplies times the cross symbol."""
    if inv1.case is not Case.ORTHOGONAL or inv2.case is not Case.ORTHOGONAL:
        raise FormsError("direct-sum rule implemented for the orthogonal case")
    return FormInvariants(
        Case.ORTHOGONAL,
        inv1.rank + inv2.rank,
        disc=inv1.disc * inv2.disc,
        hasse=inv1.hasse * inv2.hasse * hilbert(inv1.disc, inv2.disc),
    )


def is_anisotropic(entries, p) -> bool:
    """Anisotropy of a rational diagonal quadratic form over Qp, by the
    standard rank-by-rank criteria."""
    p = p if isinstance(p, Prime) else Prime(p)
    n = len(entries)
    if any(Fraction(e) == 0 for e in entries):
        raise FormsError("zero diagonal entry")
    if n == 0 or n == 1:
        return True
    if n == 2:
        return not reduce(-Fraction(entries[0]) * Fraction(entries[1]), p).is_trivial
    d = disc_class(entries, p)
    h = hasse_invariant(entries, p)
    if n == 3:
        return h != hilbert(reduce(-1, p), reduce(-1, p) * d)
    if n == 4:
        return d.is_trivial and h != hilbert_rational(-1, -1, p)
    return False


def is_anisotropic_hermitian(entries, ext: QuadExtension) -> bool:
    """Anisotropy of a diagonal hermitian form (entries in the base field)
    relative to a quadratic extension."""
    n = len(entries)
    if n <= 1:
        return True
    if n == 2:
        return eta(ext, -Fraction(entries[0]) * Fraction(entries[1])) == -1
    return False
