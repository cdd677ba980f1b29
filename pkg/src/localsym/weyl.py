"""Signed-permutation combinatorics for a classical pair: involutions
compatible with a block composition, explicit block-matrix representatives
t_w and x_w, admissible-orbit counts and stabilizer shapes.

Indices are 0-based internally; JSON encodings are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .forms import Case
from .localfield import hilbert_rational, reduce
from .numfield import Mat, conj_transpose
from .symspace import (
    ClassicalPair,
    Component,
    OrthogonalOrbit,
    SymplecticOrbit,
    SymspaceError,
    UnitaryOrbit,
    classify_x,
    det_jn,
    eta_m_mat,
    gamma_bit,
    jn_invariants,
    z_orbit_representatives,
)


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class Composition:
    """Block sizes (n_1, ..., n_k) plus the inner rank r; the optional sign
    picks one of the two conjugate parabolic classes in the split even
    orthogonal case with r = 0 and n_k != 1."""

    parts: tuple
    r: int = 0
    split_even_sign: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise WeylError("parts must be positive")
        if self.r < 0:
            raise WeylError("r must be nonnegative")
        if self.split_even_sign not in (None, 1, -1):
            raise WeylError("sign must be +-1")

    @property
    def k(self):
        return len(self.parts)

    @property
    def n(self):
        return sum(self.parts) + self.r

    def to_json(self):
        out = {"parts": list(self.parts), "r": self.r}
        if self.split_even_sign is not None:
            out["sign"] = self.split_even_sign
        return out

    @classmethod
    def from_json(cls, d):
        return cls(tuple(d["parts"]), d.get("r", 0), d.get("sign"))


@dataclass(frozen=True)
class SignedPerm:
    """rho . c in the signed permutation group, with rho a permutation of
    [0, k) and c a subset; conjugation satisfies rho c rho^{-1} = rho(c)."""

    rho: tuple
    c: frozenset

    def __post_init__(self):
        k = len(self.rho)
        if sorted(self.rho) != list(range(k)):
            raise WeylError("rho is not a permutation")
        if not set(self.c) <= set(range(k)):
            raise WeylError("c out of range")

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(k)), frozenset())

    @property
    def k(self):
        return len(self.rho)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        if self.k != other.k:
            raise WeylError("mixed ranks")
        rho = tuple(self.rho[other.rho[i]] for i in range(self.k))
        inv2 = _inv_perm(other.rho)
        moved = frozenset(inv2[i] for i in self.c)
        return SignedPerm(rho, moved ^ other.c)

    def inv(self) -> "SignedPerm":
        return SignedPerm(_inv_perm(self.rho), frozenset(self.rho[i] for i in self.c))

    @property
    def is_identity(self):
        return self.rho == tuple(range(self.k)) and not self.c


def _inv_perm(rho):
    out = [0] * len(rho)
    for i, v in enumerate(rho):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class SignedInvolution:
    """An involution rho . c: rho^2 = id and rho(c) = c."""

    rho: tuple
    c: frozenset

    def __post_init__(self):
        perm = SignedPerm(self.rho, self.c)
        if not (perm * perm).is_identity:
            raise WeylError("not an involution")

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(k)), frozenset())

    @property
    def k(self):
        return len(self.rho)

    @property
    def fixed_in_c(self) -> frozenset:
        """I(w): sign-set indices fixed by the permutation."""
        return frozenset(i for i in self.c if self.rho[i] == i)

    def o(self, comp: Composition) -> int:
        """Number of sign-set indices with odd block size."""
        return sum(1 for i in self.c if comp.parts[i] % 2)

    def n_weight(self, comp: Composition) -> int:
        """Total size of the blocks at indices in I(w)."""
        return sum(comp.parts[i] for i in self.fixed_in_c)

    def compatible(self, comp: Composition) -> bool:
        return self.k == comp.k and all(
            comp.parts[self.rho[i]] == comp.parts[i] for i in range(self.k)
        )

    @property
    def sort_key(self):
        return (len(self.c), self.rho, tuple(sorted(self.c)))

    def conjugate_by(self, s: SignedPerm) -> "SignedInvolution":
        w = s * SignedPerm(self.rho, self.c) * s.inv()
        return SignedInvolution(w.rho, w.c)

    def to_json(self):
        return {"rho": [i + 1 for i in self.rho], "c": sorted(i + 1 for i in self.c)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(i - 1 for i in d["rho"]), frozenset(i - 1 for i in d.get("c", [])))


def _involutions_sk(k):
    """All involutions of S_k as image tuples."""
    out = []

    def rec(remaining, rho):
        if not remaining:
            out.append(tuple(rho))
            return
        i = remaining[0]
        rho[i] = i
        rec(remaining[1:], rho)
        for j in remaining[1:]:
            rho[i], rho[j] = j, i
            rec([x for x in remaining[1:] if x != j], rho)
            rho[i], rho[j] = i, j

    rec(list(range(k)), list(range(k)))
    return out


def enumerate_involutions(comp: Composition, circ: bool = False):
    """Involutions rho . c with rho(c) = c and matching block sizes; `circ`
    additionally keeps only those with an even number of odd-size sign
    blocks (the identity-component restriction for split even orthogonal
    parabolic data with r = 0)."""
    k = comp.k
    found = []
    for rho in _involutions_sk(k):
        if any(comp.parts[rho[i]] != comp.parts[i] for i in range(k)):
            continue
        orbits = []
        seen = set()
        for i in range(k):
            if i in seen:
                continue
            orb = frozenset({i, rho[i]})
            seen |= orb
            orbits.append(orb)
        for pick in itertools.product((False, True), repeat=len(orbits)):
            c = frozenset().union(*(o for o, take in zip(orbits, pick) if take)) if any(pick) else frozenset()
            w = SignedInvolution(rho, c)
            if circ and w.o(comp) % 2:
                continue
            found.append(w)
    return tuple(sorted(found, key=lambda w: w.sort_key))


# ---------------------------------------------------------------------------
# fixed non-norm scalars and hermitian representatives


@lru_cache(maxsize=None)
def u_star_rational(pair) -> int:
    """Smallest positive integer that is not a local norm from the upstairs
    quadratic extension."""
    for u in range(2, 200):
        if hilbert_rational(u, pair.field.a, pair.prime) == -1:
            return u
    raise WeylError("no small non-norm found")


@lru_cache(maxsize=None)
def u_star_sideways(pair):
    """A fixed element of the sigma-tau-fixed subfield that is not a local
    norm from the full model field (unitary case)."""
    field = pair.field
    a, b = field.a, field.b
    for s, t in sorted(itertools.product(range(-4, 5), repeat=2), key=lambda st: (abs(st[0]) + abs(st[1]), st)):
        if t == 0:
            continue
        norm = Fraction(s * s - a * b * t * t)
        if norm == 0:
            continue
        if hilbert_rational(norm, a, pair.prime) == -1:
            return field.element(s, 0, 0, t)
    raise WeylError("no small sideways non-norm found")


def y_representative(pair, size: int, bit: int) -> Mat:
    """Diagonal representative of one of the two hermitian classes relative
    to the sigma-tau involution; bit 1 twists the first entry by the fixed
    non-norm (scaled into the anti-hermitian line for the symplectic case)."""
    field = pair.field
    if bit not in (0, 1):
        raise WeylError("bit must be 0 or 1")
    if pair.case is Case.UNITARY:
        lead = u_star_sideways(pair) if bit else field.one
    else:
        lead = field.element(u_star_rational(pair)) if bit else field.one
    entries = [lead] + [field.one] * (size - 1)
    if pair.case is Case.SYMPLECTIC:
        entries = [field.sqrt_a * e for e in entries]
    return Mat.diagonal(field, entries)


def y_det(pair, size: int, bit: int):
    return y_representative(pair, size, bit).det()


# ---------------------------------------------------------------------------
# block-matrix representatives


def gl_star(g: Mat) -> Mat:
    """g* = w t(g)^{-tau} w on a square block."""
    w = Mat.antidiag_ones(g.field, g.n)
    return w * conj_transpose(g, "tau").inv() * w


def iota(pair, comp: Composition, blocks, h: Mat) -> Mat:
    """The Levi embedding diag(g_1, ..., g_k, h, g_k*, ..., g_1*)."""
    field = pair.field
    if len(blocks) != comp.k:
        raise WeylError("block count mismatch")
    for g, size in zip(blocks, comp.parts):
        if g.n != size or g.m != size:
            raise WeylError("block size mismatch")
    if h.n != pair.n0 + 2 * comp.r:
        raise WeylError("inner block size mismatch")
    mats = list(blocks) + [h] + [gl_star(g) for g in reversed(blocks)]
    return Mat.block_diag(field, mats)


def _check_comp(comp: Composition, pair):
    if comp.n != pair.n:
        raise WeylError("composition does not sum to the pair rank")
    if pair.split_even_orthogonal:
        if comp.r == 1:
            raise WeylError("r = 1 is a repeated parabolic class here; fold it into the parts")
        if comp.r == 0 and comp.parts and comp.parts[-1] != 1:
            if comp.split_even_sign is None:
                raise WeylError("this parabolic class needs the +-1 sign")
        elif comp.split_even_sign is not None:
            raise WeylError("sign is only meaningful for r = 0 with n_k != 1")
    elif comp.split_even_sign is not None:
        raise WeylError("sign is a split even orthogonal notion")


def _split_even_r0(comp, pair):
    return pair.split_even_orthogonal and comp.r == 0


def kappa_mat(pair) -> Mat:
    field = pair.field
    n = pair.n
    return Mat.block_diag(
        field,
        [Mat.identity(field, n - 1), Mat.antidiag_ones(field, 2), Mat.identity(field, n - 1)],
    )


def _w_rho_mat(pair, comp, w) -> Mat:
    field = pair.field
    sizes = comp.parts
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    total = offs[-1]
    zero, one = field.zero, field.one
    rows = [[zero] * total for _ in range(total)]
    for j in range(comp.k):
        i = w.rho[j]
        for t in range(sizes[j]):
            rows[offs[i] + t][offs[j] + t] = one
    return Mat(field, rows)


def t_rho_mat(comp, w, pair) -> Mat:
    field = pair.field
    wr = _w_rho_mat(pair, comp, w)
    total = wr.n
    wtot = Mat.antidiag_ones(field, total)
    star = wtot * wr * wtot  # t(w_rho)^{-tau} = w_rho for a permutation block
    mid = Mat.identity(field, pair.n0 + 2 * comp.r)
    return Mat.block_diag(field, [wr, mid, star])


def t_i_mat(comp, i, pair) -> Mat:
    field = pair.field
    N = pair.N
    pre = sum(comp.parts[:i])
    ni = comp.parts[i]
    suffix = sum(comp.parts[i + 1:]) + comp.r
    eta = eta_m_mat(pair, suffix, split_even_r0=_split_even_r0(comp, pair))
    mid = eta if ni % 2 else Mat.identity(field, eta.n)
    zero, one = field.zero, field.one
    rows = [[zero] * N for _ in range(N)]
    for t in range(pre):
        rows[t][t] = one
        rows[N - 1 - t][N - 1 - t] = one
    for t in range(ni):
        rows[pre + t][N - pre - ni + t] = one
        rows[N - pre - ni + t][pre + t] = field.element(pair.eps)
    for r in range(mid.n):
        for c in range(mid.m):
            rows[pre + ni + r][pre + ni + c] = mid.rows[r][c]
    return Mat(field, rows)


def t_c_mat(comp, w, pair) -> Mat:
    field = pair.field
    out = Mat.identity(field, pair.N)
    for i in sorted(w.c):
        out = out * t_i_mat(comp, i, pair)
    return out


def build_tw(comp: Composition, w: SignedInvolution, pair) -> Mat:
    """The representative t_w = t_rho t_c, kappa-conjugated when the
    composition carries the -1 sign."""
    _check_comp(comp, pair)
    if not w.compatible(comp):
        raise WeylError("involution incompatible with the composition")
    t = t_rho_mat(comp, w, pair) * t_c_mat(comp, w, pair)
    if comp.split_even_sign == -1:
        k = kappa_mat(pair)
        t = k * t * k.inv()
    return t


def t_w_square_pattern(comp, w, pair) -> Mat:
    """iota(u_1, ..., u_k; I) with u_i = eps on the sign set."""
    field = pair.field
    blocks = [
        Mat.identity(field, s) * (field.element(pair.eps) if i in w.c else field.one)
        for i, s in enumerate(comp.parts)
    ]
    m = iota(pair, comp, blocks, Mat.identity(field, pair.n0 + 2 * comp.r))
    if comp.split_even_sign == -1:
        k = kappa_mat(pair)
        m = k * m * k.inv()
    return m


def trivial_z_invariant(pair):
    if pair.case is Case.SYMPLECTIC:
        return SymplecticOrbit()
    if pair.case is Case.UNITARY:
        return UnitaryOrbit(0)
    return OrthogonalOrbit(0, reduce(1, pair.prime), 1)


def z_component_for(comp, w, pair) -> Component:
    """Which component of the inner space the z block must come from."""
    o_odd = w.o(comp) % 2 == 1
    if pair.case is Case.ORTHOGONAL and o_odd and (pair.n0 > 0 or comp.r > 1):
        return Component.COMPLEMENT
    return Component.IDENTITY


def inner_z_choices(comp, w, pair):
    """(invariant, element-of-X) pairs for the admissible inner blocks."""
    sub = pair.sub_pair(comp.r)
    if sub is None:
        empty = Mat.identity(pair.field, 0)
        return ((trivial_z_invariant(pair), empty),)
    return tuple(
        (inv, x) for inv, x, _ in z_orbit_representatives(sub, z_component_for(comp, w, pair))
    )


def build_xw(comp: Composition, w: SignedInvolution, y_bits, z_inv, pair, return_z=False):
    """The admissible-orbit representative x_w({y_i}, z) and its exact
    component-group orbit invariant.

    y_bits maps each index of I(w) to the orbit bit of the hermitian block;
    z_inv selects the inner-block orbit, which must be admissible for the
    sign parity of w."""
    _check_comp(comp, pair)
    if not w.compatible(comp):
        raise WeylError("involution incompatible with the composition")
    iw = sorted(w.fixed_in_c)
    if set(y_bits) != set(iw):
        raise WeylError("y_bits must be indexed exactly by I(w)")
    field = pair.field
    choices = dict(inner_z_choices(comp, w, pair))
    if z_inv not in choices:
        raise WeylError(
            f"inner orbit {z_inv} is not realizable for this sign parity"
        )
    z = choices[z_inv]
    blocks = []
    for i, size in enumerate(comp.parts):
        if i in w.c and w.rho[i] == i:
            y = y_representative(pair, size, y_bits[i])
            blocks.append(Mat.antidiag_ones(field, size) * y.sigma())
        elif i in w.c and i > w.rho[i]:
            blocks.append(Mat.identity(field, size) * field.element(pair.eps))
        else:
            blocks.append(Mat.identity(field, size))
    o_c = w.o(comp) % 2
    eta_r = eta_m_mat(pair, comp.r, split_even_r0=_split_even_r0(comp, pair))
    inner = (eta_r * z) if o_c else z
    m = iota(pair, comp, blocks, inner)
    t = t_rho_mat(comp, w, pair) * t_c_mat(comp, w, pair)
    x = t * m
    if comp.split_even_sign == -1:
        k = kappa_mat(pair)
        x = k * x * k.inv()
    inv = predicted_orbit_invariant(comp, w, y_bits, z_inv, pair)
    if return_z:
        from .numfield import recover_hilbert90_matrix

        return x, inv, recover_hilbert90_matrix(x)
    return x, inv


@lru_cache(maxsize=None)
def unitary_parity_bits(pair):
    """Coset bits feeding the unitary orbit formula: the class of -1 and the
    class contributed by a nontrivial hermitian block."""
    minus_one = gamma_bit(pair, pair.field.element(-1))
    u = u_star_sideways(pair)
    contrib = gamma_bit(pair, u.sigma() / u)
    return minus_one, contrib


def predicted_orbit_invariant(comp, w, y_bits, z_inv, pair):
    """Closed-form orbit invariant of x_w from the inner-orbit data."""
    iw = sorted(w.fixed_in_c)
    o_c = w.o(comp) % 2
    if pair.case is Case.SYMPLECTIC:
        return SymplecticOrbit()
    if pair.case is Case.UNITARY:
        minus_one, contrib = unitary_parity_bits(pair)
        bit = o_c * minus_one + sum(contrib * y_bits[i] for i in iw) + z_inv.gamma_bit
        return UnitaryOrbit(bit % 2)
    # orthogonal: Hasse transfer formula
    p = pair.prime
    a = pair.field.a
    nw = w.n_weight(comp)
    det_y = Fraction(1)
    for i in iw:
        if y_bits[i]:
            det_y *= u_star_rational(pair)
    det_kernel = Fraction(1)
    for e in pair.j_entries:
        det_kernel *= e
    two_detj = Fraction(2) * (det_kernel if pair.n0 > 0 else 1)
    arg = Fraction((-1) ** (comp.r * o_c + nw * (nw - 1) // 2)) * two_detj ** o_c * det_y
    transfer = hilbert_rational(arg, a, p)
    sub = pair.sub_pair(comp.r)
    if sub is None:
        ratio = 1
    else:
        ratio = z_inv.hasse * jn_invariants(sub)[1]
    base_disc, base_hasse = jn_invariants(pair)
    return OrthogonalOrbit(0, base_disc, base_hasse * transfer * ratio)


def admissible_orbit_count(comp: Composition, w: SignedInvolution, pair) -> int:
    """2^(|I(w)| + delta) with delta the inner-orbit exponent."""
    _check_comp(comp, pair)
    if not w.compatible(comp):
        raise WeylError("involution incompatible with the composition")
    if pair.case is Case.SYMPLECTIC:
        delta = 0
    elif pair.case is Case.UNITARY:
        delta = 1 if pair.n0 + 2 * comp.r > 0 else 0
    else:
        delta = 1
        if comp.r == 0 and pair.n0 in (0, 1):
            delta = 0
        elif comp.r == 0 and pair.n0 == 2:
            det_kernel = Fraction(1)
            for e in pair.j_entries:
                det_kernel *= e
            target = Fraction(-1) if w.o(comp) % 2 == 0 else Fraction(-pair.field.a)
            if reduce(det_kernel, pair.prime) == reduce(target, pair.prime):
                delta = 0
    return 2 ** (len(w.fixed_in_c) + delta)


@dataclass(frozen=True)
class GLFactor:
    size: int
    over: str  # "E'" or "F'"

    def to_json(self):
        return {"kind": "GL", "size": self.size, "over": self.over}


@dataclass(frozen=True)
class UnitaryFactor:
    size: int
    bit: int

    def to_json(self):
        return {"kind": "U", "size": self.size, "bit": self.bit}


@dataclass(frozen=True)
class InnerFactor:
    z_inv: object

    def to_json(self):
        return {"kind": "fixed-inner", "orbit": self.z_inv.to_json()}


@dataclass(frozen=True)
class StabilizerShape:
    factors: tuple

    def to_json(self):
        return {"factors": [f.to_json() for f in self.factors]}


def stabilizer_shape(comp, w, y_bits, z_inv, pair=None) -> StabilizerShape:
    """One factor per rho-orbit plus the inner block: paired indices give a
    general linear factor over the big field, fixed indices off the sign set
    one over the sideways-fixed field, fixed indices in the sign set a
    unitary factor."""
    factors = []
    for i in range(comp.k):
        if w.rho[i] == i and i not in w.c:
            factors.append(GLFactor(comp.parts[i], "F'"))
        elif w.rho[i] == i:
            factors.append(UnitaryFactor(comp.parts[i], y_bits[i]))
        elif i < w.rho[i]:
            factors.append(GLFactor(comp.parts[i], "E'"))
    factors.append(InnerFactor(z_inv))
    return StabilizerShape(tuple(factors))
