"""Twisted-conjugation orbits in X = {x in G(E) : x sigma(x) = I} for a
classical pair, classified by exact invariants: nothing for the symplectic
case (one orbit), a norm-coset bit for the unitary case, a discriminant
component plus a Hasse sign for the orthogonal case.

Matrices live over a global (bi)quadratic model of the relevant extension
tower; invariants are then read off at the working prime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .forms import (
    Case,
    DiagForm,
    congruent_diagonal,
    disc_class,
    hasse_invariant,
    is_anisotropic,
    is_anisotropic_hermitian,
)
from .localfield import (
    Prime,
    QuadExtension,
    SquareClass,
    hilbert_rational,
    reduce,
)
from .numfield import (
    BiquadField,
    Bq,
    Mat,
    conj_transpose,
    in_symmetric_space,
    recover_hilbert90,
)


class SymspaceError(ValueError):
    pass


class Component(enum.Enum):
    FULL = "full"
    IDENTITY = "SX"
    COMPLEMENT = "X-SX"


@dataclass(frozen=True)
class SymplecticOrbit:
    def to_json(self):
        return {"case": "symplectic"}


@dataclass(frozen=True)
class UnitaryOrbit:
    gamma_bit: int

    def to_json(self):
        return {"case": "unitary", "gamma_bit": self.gamma_bit}


@dataclass(frozen=True)
class OrthogonalOrbit:
    component: int  # 0 on SX, 1 off it
    partial: SquareClass
    hasse: int

    def to_json(self):
        return {
            "case": "orthogonal",
            "component": "SX" if self.component == 0 else "X-SX",
            "partial": self.partial.to_json(),
            "hasse": self.hasse,
        }


@dataclass(frozen=True)
class ClassicalPair:
    """An anisotropic kernel of size n0 together with a Witt-index increment
    n over the bundled field model; N = n0 + 2n is the matrix size.

    The model field is quadratic (sigma-conjugation, tau = id) for the
    symplectic and orthogonal cases and fully biquadratic for the unitary
    case, where sqrt(a) generates the upstairs extension and sqrt(b) the
    sideways one."""

    case: Case
    n0: int
    j_entries: tuple
    n: int
    prime: Prime
    field: BiquadField

    def __post_init__(self):
        object.__setattr__(self, "j_entries", tuple(Fraction(e) for e in self.j_entries))
        p = self.prime
        if self.n < 1:
            raise SymspaceError("need a positive Witt-index increment")
        if reduce(self.field.a, p).is_trivial:
            raise SymspaceError("sqrt(a) must generate a quadratic extension locally")
        if self.case is Case.UNITARY:
            if self.field.is_quadratic:
                raise SymspaceError("unitary case needs the biquadratic model")
            if reduce(self.field.b, p).is_trivial or reduce(self.field.a * self.field.b, p).is_trivial:
                raise SymspaceError("model is not locally biquadratic")
        else:
            if not self.field.is_quadratic:
                raise SymspaceError("symplectic/orthogonal cases use the quadratic model")
        if self.case is Case.SYMPLECTIC:
            if self.n0 != 0 or self.j_entries:
                raise SymspaceError("symplectic kernels are trivial")
        elif self.case is Case.ORTHOGONAL:
            if not 0 <= self.n0 <= 4 or len(self.j_entries) != self.n0:
                raise SymspaceError("orthogonal kernel size out of range")
            if self.n0 and not is_anisotropic(self.j_entries, p):
                raise SymspaceError("kernel form is isotropic at p")
        else:
            if not 0 <= self.n0 <= 2 or len(self.j_entries) != self.n0:
                raise SymspaceError("unitary kernel size out of range")
            if self.n0 and not is_anisotropic_hermitian(self.j_entries, self.ext_fp):
                raise SymspaceError("kernel form is isotropic at p")

    @property
    def eps(self):
        return self.case.eps

    @property
    def N(self):
        return self.n0 + 2 * self.n

    @property
    def ext_e(self) -> QuadExtension:
        """E/F, generated by sqrt(a)."""
        return QuadExtension.of(self.field.a, self.prime)

    @property
    def ext_fp(self) -> QuadExtension:
        """F'/F, generated by sqrt(b) (unitary case)."""
        if self.field.is_quadratic:
            raise SymspaceError("no sideways extension in the quadratic model")
        return QuadExtension.of(self.field.b, self.prime)

    @property
    def split_even_orthogonal(self):
        return self.case is Case.ORTHOGONAL and self.n0 == 0

    def sub_pair(self, r: int) -> "ClassicalPair | None":
        """The pair of the inner r-block; None when n0 = r = 0."""
        if r == 0 and self.n0 == 0:
            return None
        if r == 0:
            # same data with no hyperbolic part: model it as n = 0 by hand
            return _KernelOnly(self)
        return ClassicalPair(self.case, self.n0, self.j_entries, r, self.prime, self.field)

    def to_json(self):
        return {
            "case": self.case.value,
            "n0": self.n0,
            "j": [str(e) for e in self.j_entries],
            "n": self.n,
            "p": self.prime.p,
            "a": self.field.a,
            "b": self.field.b,
        }

    @classmethod
    def from_json(cls, d):
        field = BiquadField(d["a"], d.get("b"))
        return cls(
            Case(d["case"]), d["n0"], tuple(Fraction(e) for e in d["j"]),
            d["n"], Prime(d["p"]), field,
        )


class _KernelOnly:
    """Stand-in pair for an r = 0 block: just the anisotropic kernel."""

    def __init__(self, parent: ClassicalPair):
        self.case = parent.case
        self.n0 = parent.n0
        self.j_entries = parent.j_entries
        self.n = 0
        self.prime = parent.prime
        self.field = parent.field
        self.eps = parent.eps
        self.N = parent.n0
        self.ext_e = parent.ext_e
        self.split_even_orthogonal = parent.split_even_orthogonal

    def __eq__(self, other):
        return isinstance(other, _KernelOnly) and (
            self.case, self.n0, self.j_entries, self.prime, self.field
        ) == (other.case, other.n0, other.j_entries, other.prime, other.field)

    def __hash__(self):
        return hash((self.case, self.n0, self.j_entries, self.prime, self.field))


def j_mat(pair) -> Mat:
    return Mat.diagonal(pair.field, [pair.field.element(e) for e in pair.j_entries])


def jn_mat(pair) -> Mat:
    """The split form with anisotropic kernel: antidiagonal one-blocks of
    size n around the kernel, the lower one scaled by eps."""
    field = pair.field
    n, n0, N = pair.n, pair.n0, pair.N
    zero = field.zero
    rows = [[zero] * N for _ in range(N)]
    for i in range(n):
        rows[i][N - n + (n - 1 - i)] = field.one
        rows[N - n + i][n - 1 - i] = field.element(pair.eps)
    for i in range(n0):
        rows[n + i][n + i] = field.element(pair.j_entries[i])
    return Mat(field, rows)


def det_jn(pair) -> Fraction:
    d = Fraction(1)
    for e in pair.j_entries:
        d *= e
    # det of the split block form is (-eps)^n times the kernel determinant
    return (-pair.eps) ** pair.n * d


@lru_cache(maxsize=None)
def jn_invariants(pair):
    """(disc class, Hasse sign) of the full orthogonal form at p, computed
    by direct diagonalization of the block matrix."""
    if pair.case is not Case.ORTHOGONAL:
        raise SymspaceError("orthogonal-only invariants")
    gram = [[e.rational for e in row] for row in jn_mat(pair).rows] if pair.n else [
        [Fraction(pair.j_entries[i]) if i == j else Fraction(0) for j in range(pair.n0)]
        for i in range(pair.n0)
    ]
    if not gram:
        return (reduce(1, pair.prime), 1)
    entries, _ = congruent_diagonal(gram)
    return (disc_class(entries, pair.prime), hasse_invariant(entries, pair.prime))


def eta0_mat(pair) -> Mat:
    """The chosen kernel involution: determinant -1 in the orthogonal case,
    the identity in the unitary case."""
    field = pair.field
    if pair.n0 == 0:
        return Mat.identity(field, 0)
    if pair.case is Case.UNITARY:
        return Mat.identity(field, pair.n0)
    return Mat.diagonal(field, [field.element(-1)] + [field.one] * (pair.n0 - 1))


def eta_m_mat(pair, m: int, split_even_r0: bool = False) -> Mat:
    """The involution eta_m of the inner block of size n0 + 2m."""
    field = pair.field
    size = pair.n0 + 2 * m
    if split_even_r0 and pair.split_even_orthogonal:
        return Mat.identity(field, size)
    if pair.n0 > 0:
        return Mat.block_diag(field, [Mat.identity(field, m), eta0_mat(pair), Mat.identity(field, m)])
    if pair.case is Case.ORTHOGONAL:
        if m == 0:
            return Mat.identity(field, 0)
        return Mat.block_diag(
            field,
            [Mat.identity(field, m - 1), Mat.antidiag_ones(field, 2), Mat.identity(field, m - 1)],
        )
    return Mat.identity(field, size)


def classify_x(x: Mat, z: Mat, pair):
    """Orbit invariant of x in X, using z with x = z sigma(z)^{-1}.

    The form y = t(z)^tau J z must descend to the base field; its
    classification data is the orbit invariant."""
    jn = jn_mat(pair)
    if not in_symmetric_space(x, jn, pair.eps):
        raise SymspaceError("x is not in the symmetric space")
    if z.det().is_zero or z * z.sigma().inv() != x:
        raise SymspaceError("z does not split x")
    y = conj_transpose(z, "tau") * jn * z
    if y.sigma() != y:
        raise SymspaceError("twisted form does not descend; z inconsistent with x")
    if pair.case is Case.SYMPLECTIC:
        return SymplecticOrbit()
    if pair.case is Case.UNITARY:
        dy = y.det()
        if not dy.is_rational:
            raise SymspaceError("hermitian determinant should be rational")
        sign = hilbert_rational(dy.rational * det_jn(pair), pair.field.b, pair.prime)
        return UnitaryOrbit(0 if sign == 1 else 1)
    if not y.is_rational:
        raise SymspaceError("orthogonal form should be rational")
    gram = [[e.rational for e in row] for row in y.rows]
    entries, _ = congruent_diagonal(gram)
    disc = disc_class(entries, pair.prime)
    hasse = hasse_invariant(entries, pair.prime)
    base_disc = reduce(det_jn(pair), pair.prime)
    if disc == base_disc:
        component = 0
    elif disc == base_disc * reduce(pair.field.a, pair.prime):
        component = 1
    else:
        raise SymspaceError("discriminant outside the two admissible classes")
    return OrthogonalOrbit(component, disc, hasse)


def same_G0_orbit(i1, i2) -> bool:
    """Equality of complete orbit invariants (pairs must match)."""
    if type(i1) is not type(i2):
        raise SymspaceError("mixed invariant kinds")
    return i1 == i2


def orbit_count_X(pair, component: Component = Component.FULL) -> int:
    if pair.case is Case.SYMPLECTIC:
        if component is not Component.FULL:
            raise SymspaceError("components are an orthogonal notion")
        return 1
    if pair.case is Case.UNITARY:
        if component is not Component.FULL:
            raise SymspaceError("components are an orthogonal notion")
        return 2
    N = pair.N
    base = reduce(det_jn(pair), pair.prime)
    minus_one = reduce(-1, pair.prime)
    a_cls = reduce(pair.field.a, pair.prime)

    def comp_count(disc):
        if N == 1:
            return 1
        if N == 2 and disc == minus_one:
            return 1
        return 2

    if component is Component.IDENTITY:
        return comp_count(base)
    if component is Component.COMPLEMENT:
        return comp_count(base * a_cls)
    return comp_count(base) + comp_count(base * a_cls)


def hasse_values(pair, component: Component):
    """Realizable Hasse signs of the descended forms in one component."""
    if pair.case is not Case.ORTHOGONAL:
        raise SymspaceError("orthogonal-only")
    N = pair.N
    if N == 0:
        return (1,)
    base = reduce(det_jn(pair), pair.prime)
    disc = base if component is Component.IDENTITY else base * reduce(pair.field.a, pair.prime)
    if N == 1 or (N == 2 and disc == reduce(-1, pair.prime)):
        if component is Component.IDENTITY:
            return (jn_invariants(pair)[1],)
        # rank <= 2 forms in the other class have a forced Hasse sign too
        if N == 1:
            return (1,)
        return (1,)
    return (1, -1)


def realizable_targets(pair):
    """Invariants of the orbits meeting the identity component X-circ."""
    if pair.case is Case.SYMPLECTIC:
        return (SymplecticOrbit(),)
    if pair.case is Case.UNITARY:
        return (UnitaryOrbit(0), UnitaryOrbit(1))
    disc = reduce(det_jn(pair), pair.prime)
    return tuple(OrthogonalOrbit(0, disc, h) for h in hasse_values(pair, Component.IDENTITY))


# ---------------------------------------------------------------------------
# Gamma: the index-two subgroup of norm-one classes in the unitary case


@dataclass(frozen=True)
class GammaData:
    size: int
    identity_bit: int
    minus_one_bit: int
    certificate: tuple | None
    search_bound: int

    def to_json(self):
        return {
            "size": self.size,
            "identity_bit": self.identity_bit,
            "minus_one_bit": self.minus_one_bit,
            "certificate": list(self.certificate) if self.certificate else None,
            "search_bound": self.search_bound,
        }


def gamma_product(c: Bq) -> Bq:
    """c^((1-sigma)(1-tau)), always a member of the index-two subgroup."""
    return (c * c.sigma_tau()) / (c.sigma() * c.tau())


def minus_one_gamma_certificate(field: BiquadField, bound: int = 3):
    """Box search for c with c^((1-sigma)(1-tau)) = -1; None if exhausted."""
    rng = range(-bound, bound + 1)
    minus_one = field.element(-1)
    for c0, c1, c2, c3 in product(rng, repeat=4):
        if not (c0 or c1 or c2 or c3):
            continue
        c = field.element(c0, c1, c2, c3)
        if (c * c.sigma() * c.tau() * c.sigma_tau()).rational == 0:
            continue
        if gamma_product(c) == minus_one:
            return (c0, c1, c2, c3)
    return None


def gamma_index_data(pair, bound: int = 3) -> GammaData:
    """The two-element quotient of the norm-one group by the gamma products,
    with the class of -1 settled by the desk-scale box oracle."""
    if pair.case is not Case.UNITARY:
        raise SymspaceError("gamma data is a unitary notion")
    cert = minus_one_gamma_certificate(pair.field, bound)
    return GammaData(2, 0, 0 if cert else 1, cert, bound)


def gamma_bit(pair, gamma: Bq) -> int:
    """Coset bit of a norm-one element (fixed by sigma tau, norm one to both
    intermediate fields), via the rank-one orbit correspondence: split
    gamma = c^(1-sigma) and classify the descended 1x1 form at p."""
    if pair.case is not Case.UNITARY:
        raise SymspaceError("gamma bits are a unitary notion")
    if gamma.field != pair.field:
        raise SymspaceError("element from the wrong model")
    if not (gamma * gamma.sigma() - 1).is_zero or not (gamma * gamma.tau() - 1).is_zero:
        raise SymspaceError("element is not of norm one both ways")
    c = recover_hilbert90(gamma, "sigma")
    y = (c.tau() * c).rational
    return 0 if hilbert_rational(y, pair.field.b, pair.prime) == 1 else 1


# ---------------------------------------------------------------------------
# Representatives of the inner-block orbits


def _diag_frame(pair):
    """Rational congruence frame: entries D and g0 with t(g0) J g0 = D."""
    gram = [[e.rational for e in row] for row in jn_mat(pair).rows]
    entries, p = congruent_diagonal(gram)
    return entries, Mat.from_rational(pair.field, p)


def _orth_candidates(pair, entries):
    """Candidate diagonal-frame twists, described by closed-form data:
    (resulting diagonal entries, determinant sign of x, builder)."""
    field = pair.field
    a = field.a
    N = len(entries)
    ra = field.sqrt_a

    def twist_builder(subset):
        def build():
            return Mat.diagonal(field, [ra if i in subset else field.one for i in range(N)])
        return build

    for size in range(0, N + 1):
        for subset in combinations(range(N), size):
            new_entries = [e * a if i in subset else e for i, e in enumerate(entries)]
            yield new_entries, (-1) ** size, twist_builder(frozenset(subset))

    box = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    for i, jj in combinations(range(N), 2):
        alpha, beta = entries[i], entries[jj]
        for u0, u1, v0, v1 in product(box, repeat=4):
            if alpha * u0 * u1 + beta * v0 * v1 != 0:
                continue
            usq = u0 * u0 + a * u1 * u1
            vsq = v0 * v0 + a * v1 * v1
            gamma = alpha * usq + beta * vsq
            if gamma == 0:
                continue
            for s_is_ra in (False, True):
                ssq = Fraction(a) if s_is_ra else Fraction(1)
                delta = ssq * alpha * beta * gamma
                new_entries = list(entries)
                new_entries[i], new_entries[jj] = gamma, delta
                detx = -1 if s_is_ra else 1

                def block_builder(i=i, jj=jj, u0=u0, u1=u1, v0=v0, v1=v1, s_is_ra=s_is_ra,
                                  alpha=alpha, beta=beta):
                    def build():
                        u = field.element(u0, u1)
                        v = field.element(v0, v1)
                        s = ra if s_is_ra else field.one
                        rows = [[field.one if r == c else field.zero for c in range(N)] for r in range(N)]
                        rows[i][i] = u
                        rows[i][jj] = -s * beta * v
                        rows[jj][i] = v
                        rows[jj][jj] = s * alpha * u
                        return Mat(field, rows)
                    return build
                yield new_entries, detx, block_builder()


def _z_reps_orthogonal(pair, component: Component):
    entries, g0 = _diag_frame(pair)
    p = pair.prime
    want = orbit_count_X(pair, component)
    want_det = 1 if component is Component.IDENTITY else -1
    found = {}
    for new_entries, detx, builder in _orth_candidates(pair, entries):
        if detx != want_det:
            continue
        disc = disc_class(new_entries, p)
        hasse = hasse_invariant(new_entries, p)
        base = reduce(det_jn(pair), p)
        comp = 0 if disc == base else 1
        if (comp == 0) != (component is Component.IDENTITY):
            continue  # candidate descriptor inconsistent; skip defensively
        inv = OrthogonalOrbit(comp, disc, hasse)
        if inv in found:
            continue
        z_d = builder()
        z = g0 * z_d * g0.inv()
        x = z * z.sigma().inv()
        check = classify_x(x, z, pair)
        assert check == inv, "closed-form candidate disagrees with exact classification"
        found[inv] = (x, z)
        if len(found) == want:
            return tuple((i, x, z) for i, (x, z) in found.items())
    raise SymspaceError(
        f"only {len(found)} of {want} representatives found for {component}; widen the search box"
    )


def _z_reps_unitary(pair):
    field = pair.field
    entries, g0 = _diag_frame(pair)
    N = pair.N
    i_n = Mat.identity(field, N)
    reps = [(UnitaryOrbit(0), i_n, i_n)]
    candidates = [field.sqrt_a]
    for s, t in product(range(-4, 5), repeat=2):
        if t == 0:
            continue
        u = field.element(s, 0, 0, t)
        if u.norm_to_Q() == 0:
            continue
        gamma = u.sigma() / u
        c = gamma + 1
        if not c.is_zero:
            candidates.append(c)
    for c in candidates:
        y1 = c.tau() * c
        if not y1.is_rational or y1.rational == 0:
            continue
        if hilbert_rational(y1.rational, field.b, pair.prime) != -1:
            continue
        z_d = Mat.diagonal(field, [c] + [field.one] * (N - 1))
        z = g0 * z_d * g0.inv()
        x = z * z.sigma().inv()
        inv = classify_x(x, z, pair)
        assert inv == UnitaryOrbit(1)
        reps.append((inv, x, z))
        return tuple(reps)
    raise SymspaceError("no representative of the nontrivial coset found; widen the search box")


@lru_cache(maxsize=None)
def z_orbit_representatives(pair, component: Component = Component.IDENTITY):
    """Triples (invariant, x, z) with x in the symmetric space of the pair,
    one per orbit of the requested component, and z a splitting with
    x = z sigma(z)^{-1}.  The identity component always starts with x = I."""
    field = pair.field
    N = pair.N
    if N == 0:
        raise SymspaceError("empty block has no representatives; handle upstream")
    if pair.case is Case.SYMPLECTIC:
        if component is not Component.IDENTITY:
            raise SymspaceError("symplectic space is connected")
        i_n = Mat.identity(field, N)
        return ((SymplecticOrbit(), i_n, i_n),)
    if pair.case is Case.UNITARY:
        if component is not Component.IDENTITY:
            raise SymspaceError("unitary group is connected")
        return _z_reps_unitary(pair)
    if component is Component.FULL:
        raise SymspaceError("pick a component")
    return _z_reps_orthogonal(pair, component)


def random_isometry(pair, rng, steps: int = 3) -> Mat:
    """A pseudo-random element of the isometry group of the split form,
    assembled from diagonal-block embeddings and permutation pieces."""
    field = pair.field
    n, N = pair.n, pair.N
    g = Mat.identity(field, N)
    for _ in range(steps):
        blocks = []
        for _ in range(n):
            while True:
                e = field.element(
                    Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-2, 2)),
                    0 if field.is_quadratic else Fraction(rng.randint(-2, 2)),
                    0 if field.is_quadratic else Fraction(rng.randint(-1, 1)),
                )
                if not e.is_zero:
                    break
            blocks.append(e)
        upper = Mat.diagonal(field, blocks)
        star = _gl_star(upper, field)
        mid = Mat.identity(field, pair.n0)
        g = g * Mat.block_diag(field, [upper, mid, star])
    return g


def _gl_star(g: Mat, field) -> Mat:
    w = Mat.antidiag_ones(field, g.n)
    return w * conj_transpose(g, "tau").inv() * w
