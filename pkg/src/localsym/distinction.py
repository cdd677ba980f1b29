"""The decision procedure for distinction of representations induced from
cuspidal data, at the combinatorial level: representation-theoretic facts
enter only through a finite relation/flag oracle, and the arithmetic side
is settled by the exact orbit formulas.

A verdict is a witness (involution, hermitian bits, inner orbit) or a
complete per-candidate failure log.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .forms import Case
from .symspace import (
    Component,
    OrthogonalOrbit,
    SymplecticOrbit,
    UnitaryOrbit,
    hasse_values,
    realizable_targets,
    reduce,
)
from .weyl import (
    Composition,
    SignedInvolution,
    WeylError,
    admissible_orbit_count,
    enumerate_involutions,
    predicted_orbit_invariant,
    trivial_z_invariant,
    z_component_for,
)


class DistinctionError(ValueError):
    pass


def gamma_defaults():
    """Shipped coset bits for the bundled unitary field models, as computed
    by the desk-scale box oracle and recorded in a versioned data file."""
    import json
    from importlib import resources

    with resources.files("localsym.data").joinpath("gamma_defaults.json").open() as fh:
        return json.load(fh)


def _pairs(items):
    out = set()
    for it in items:
        pair = frozenset(it)
        if not pair or len(pair) > 2:
            raise DistinctionError(f"bad relation pair {it!r}")
        out.add(pair)
    return frozenset(out)


@dataclass(frozen=True)
class CuspidalDatum:
    """Opaque labels with a finite oracle of relations and distinction flags.

    conj_dual pairs {i, j} assert that label j is the conjugate dual of
    label i (an involutive relation, so unordered pairs suffice);
    sigma_tau pairs assert the sigma-tau twist relation.  linear_dist
    flags a label as distinguished by the sideways-rational block,
    unitary_dist(i, bit) by the hermitian block of the given orbit bit,
    and pi0_dist lists the inner orbits whose fixed group distinguishes
    the inner representation."""

    labels: tuple
    conj_dual: frozenset = frozenset()
    sigma_tau: frozenset = frozenset()
    linear_dist: frozenset = frozenset()
    unitary_dist: frozenset = frozenset()
    pi0_dist: tuple = ()

    @classmethod
    def build(cls, labels, conj_dual=(), sigma_tau=(), linear_dist=(), unitary_dist=(), pi0_dist=()):
        return cls(
            tuple(labels),
            _pairs(conj_dual),
            _pairs(sigma_tau),
            frozenset(linear_dist),
            frozenset((i, b) for i, b in unitary_dist),
            tuple(pi0_dist),
        )

    @property
    def k(self):
        return len(self.labels)

    def validate(self, comp: Composition):
        if self.k != comp.k:
            raise DistinctionError("label count does not match the composition")
        for rel in self.conj_dual | self.sigma_tau:
            idx = sorted(rel)
            if any(i not in range(self.k) for i in idx):
                raise DistinctionError("relation index out of range")
            if len(idx) == 2 and comp.parts[idx[0]] != comp.parts[idx[1]]:
                raise DistinctionError(
                    f"relation {tuple(i + 1 for i in idx)} asserted with mismatched block sizes"
                )
        for i in self.linear_dist:
            if i not in range(self.k):
                raise DistinctionError("flag index out of range")
        for i, b in self.unitary_dist:
            if i not in range(self.k) or b not in (0, 1):
                raise DistinctionError("bad hermitian flag")

    # -- derived facts ------------------------------------------------
    def selfdual_bar(self, i):
        """pi_i is isomorphic to its conjugate dual."""
        return frozenset({i}) in self.conj_dual or i in self.linear_dist

    def selfdual_sigma_tau(self, i):
        return frozenset({i}) in self.sigma_tau or any(j == i for j, _ in self.unitary_dist)

    def unitary_bits(self, i):
        return tuple(sorted(b for j, b in self.unitary_dist if j == i))

    def permuted(self, perm):
        """Relabelled datum: index i becomes perm[i]."""
        return CuspidalDatum(
            tuple(self.labels[perm.index(i)] for i in range(self.k)),
            frozenset(frozenset(perm[i] for i in rel) for rel in self.conj_dual),
            frozenset(frozenset(perm[i] for i in rel) for rel in self.sigma_tau),
            frozenset(perm[i] for i in self.linear_dist),
            frozenset((perm[i], b) for i, b in self.unitary_dist),
            self.pi0_dist,
        )

    def to_json(self):
        return {
            "labels": list(self.labels),
            "conj_dual": sorted(sorted(i + 1 for i in rel) for rel in self.conj_dual),
            "sigma_tau": sorted(sorted(i + 1 for i in rel) for rel in self.sigma_tau),
            "linear_dist": sorted(i + 1 for i in self.linear_dist),
            "unitary_dist": sorted([i + 1, b] for i, b in self.unitary_dist),
            "pi0_dist": [inv.to_json() for inv in self.pi0_dist],
        }

    @classmethod
    def from_json(cls, d, pair=None):
        return cls.build(
            d["labels"],
            [tuple(i - 1 for i in rel) for rel in d.get("conj_dual", [])],
            [tuple(i - 1 for i in rel) for rel in d.get("sigma_tau", [])],
            [i - 1 for i in d.get("linear_dist", [])],
            [(i - 1, b) for i, b in d.get("unitary_dist", [])],
            [orbit_from_json(o) for o in d.get("pi0_dist", [])],
        )


def orbit_from_json(d):
    case = d["case"]
    if case == "symplectic":
        return SymplecticOrbit()
    if case == "unitary":
        return UnitaryOrbit(d["gamma_bit"])
    from .localfield import SquareClass

    return OrthogonalOrbit(
        0 if d["component"] == "SX" else 1,
        SquareClass.from_json(d["partial"]),
        d["hasse"],
    )


@dataclass(frozen=True)
class Witness:
    w: SignedInvolution
    y_bits: tuple  # sorted ((index, bit), ...)
    z_orbit: object

    def to_json(self):
        return {
            "w": self.w.to_json(),
            "y_bits": {str(i + 1): b for i, b in self.y_bits},
            "z_orbit": self.z_orbit.to_json(),
        }


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    witness: Witness | None
    failure_log: tuple

    def __post_init__(self):
        assert self.distinguished == (self.witness is not None)

    def to_json(self):
        return {
            "distinguished": self.distinguished,
            "witness": self.witness.to_json() if self.witness else None,
            "failure_log": list(self.failure_log),
        }


def inner_orbit_invariants(comp, w, pair):
    """Invariant descriptors of the admissible inner orbits, with no matrix
    construction (decide works on invariants alone)."""
    sub = pair.sub_pair(comp.r)
    if sub is None:
        return (trivial_z_invariant(pair),)
    if pair.case is Case.SYMPLECTIC:
        return (SymplecticOrbit(),)
    if pair.case is Case.UNITARY:
        return (UnitaryOrbit(0), UnitaryOrbit(1))
    component = z_component_for(comp, w, pair)
    from .symspace import det_jn

    base = reduce(det_jn(sub), pair.prime)
    disc = base if component is Component.IDENTITY else base * reduce(pair.field.a, pair.prime)
    comp_bit = 0 if component is Component.IDENTITY else 1
    return tuple(OrthogonalOrbit(comp_bit, disc, h) for h in hasse_values(sub, component))


def _check_rows(comp, w, data):
    """The representation-theoretic condition rows; returns None or the
    first failing row description."""
    for i in range(comp.k):
        j = w.rho[i]
        if i in w.c and j != i:
            if frozenset({i, j}) not in data.sigma_tau:
                return f"rows: no sigma-tau relation between {i + 1} and {j + 1}"
        elif i in w.c:
            if not data.unitary_bits(i):
                return f"rows: label {i + 1} has no hermitian-distinction flag"
        elif j != i:
            if frozenset({i, j}) not in data.conj_dual:
                return f"rows: no conjugate-dual relation between {i + 1} and {j + 1}"
        else:
            if i not in data.linear_dist:
                return f"rows: label {i + 1} is not flagged linearly distinguished"
    return None


def decide(pair, comp: Composition, data: CuspidalDatum, target) -> Verdict:
    """Search for a witness (w, {y_i bits}, inner orbit) passing the five
    condition rows and the case arithmetic for the requested orbit.

    Enumeration order is deterministic: involutions by (|c|, rho, c), then
    hermitian bits in increasing binary order, then inner orbits."""
    data.validate(comp)
    if comp.n != pair.n:
        raise DistinctionError("composition does not match the pair")
    if target not in realizable_targets(pair):
        raise DistinctionError(f"target {target} is not realizable for this pair")
    circ = pair.split_even_orthogonal and comp.r == 0
    log = []
    for w in enumerate_involutions(comp, circ):
        tag = f"w={w.to_json()}"
        fail = _check_rows(comp, w, data)
        if fail:
            log.append(f"{tag}: {fail}")
            continue
        iw = sorted(w.fixed_in_c)
        bit_ranges = [data.unitary_bits(i) for i in iw]
        inner = inner_orbit_invariants(comp, w, pair)
        sub = pair.sub_pair(comp.r)
        found_arith = False
        for bits in itertools.product(*bit_ranges):
            y_bits = dict(zip(iw, bits))
            for z_inv in inner:
                if sub is not None and z_inv not in data.pi0_dist:
                    log.append(f"{tag}: inner orbit {z_inv.to_json()} not flagged for pi0")
                    continue
                predicted = predicted_orbit_invariant(comp, w, y_bits, z_inv, pair)
                if predicted == target:
                    witness = Witness(w, tuple(sorted(y_bits.items())), z_inv)
                    return Verdict(True, witness, tuple(log))
                found_arith = True
                log.append(
                    f"{tag}: bits {bits} with inner orbit {z_inv.to_json()} lands in another orbit"
                )
        if not found_arith and not iw and not inner:
            log.append(f"{tag}: no admissible inner orbit")
    return Verdict(False, None, tuple(log))


def necessary_condition(data: CuspidalDatum, w: SignedInvolution) -> bool:
    """The tuple identity w(pi_1, ..., pi_k; pi_0) = (conjugate duals; pi_0),
    verified symbolically: each slot must be derivably isomorphic to the
    conjugate dual of the original entry."""
    if data.k != w.k:
        raise DistinctionError("rank mismatch")
    for i in range(w.k):
        j = w.rho[i]
        if i not in w.c:
            ok = data.selfdual_bar(i) if j == i else frozenset({i, j}) in data.conj_dual
        else:
            ok = data.selfdual_sigma_tau(i) if j == i else frozenset({i, j}) in data.sigma_tau
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# the symbolic product check for the big linear group


@dataclass(frozen=True)
class GlBlocks:
    """A palindromic product pi_1 x ... x pi_k x Pi_0 x dual(pi_k) x ... x
    dual(pi_1) with relation and flag data on the pi_i and on Pi_0.

    chi_dist maps a character tag ("trivial" or "eta") to the flagged
    indices; center_chi_dist lists the tags for which the center block is
    distinguished."""

    blocks: tuple
    sizes: tuple
    center_size: int = 0
    conj_dual: frozenset = frozenset()
    sigma_tau: frozenset = frozenset()
    chi_dist: tuple = ()  # ((tag, frozenset of indices), ...)
    unitary_dist: frozenset = frozenset()
    center_chi_dist: frozenset = frozenset()

    @classmethod
    def build(cls, k, sizes, center_size=0, conj_dual=(), sigma_tau=(), chi_dist=(),
              unitary_dist=(), center_chi_dist=()):
        blocks = tuple(
            [("pi", i) for i in range(k)]
            + ([("center", None)] if center_size else [])
            + [("dual", i) for i in reversed(range(k))]
        )
        return cls(
            blocks,
            tuple(sizes),
            center_size,
            _pairs(conj_dual),
            _pairs(sigma_tau),
            tuple((tag, frozenset(idx)) for tag, idx in chi_dist),
            frozenset(unitary_dist),
            frozenset(center_chi_dist),
        )

    @property
    def k(self):
        return len(self.sizes)

    def chi_flags(self, chi):
        for tag, idx in self.chi_dist:
            if tag == chi:
                return idx
        return frozenset()

    def validate(self):
        k = self.k
        expected = (
            [("pi", i) for i in range(k)]
            + ([("center", None)] if self.center_size else [])
            + [("dual", i) for i in reversed(range(k))]
        )
        if list(self.blocks) != expected:
            raise DistinctionError("malformed palindrome")


def gl_product_check(blocks: GlBlocks, chi: str = "trivial"):
    """Decide the twisted distinction of the palindromic product by pairing
    blocks into distinguished units: flagged singles by the closed-orbit
    argument, dual pairs by the open-orbit one.

    Returns (ok, decomposition, pairing) where decomposition lists the
    units by block positions."""
    if chi not in ("trivial", "eta"):
        raise DistinctionError("chi must be 'trivial' or 'eta'")
    blocks.validate()
    k = blocks.k
    if blocks.center_size and chi not in blocks.center_chi_dist:
        return False, None, None
    pos_pi = {i: p for p, (kind, i) in enumerate(blocks.blocks) if kind == "pi"}
    pos_dual = {i: p for p, (kind, i) in enumerate(blocks.blocks) if kind == "dual"}
    pos_center = next((p for p, (kind, _) in enumerate(blocks.blocks) if kind == "center"), None)
    flags = blocks.chi_flags(chi)
    if k == 0:
        units = [{"type": "closed", "blocks": [pos_center]}] if pos_center is not None else []
        return True, units, ((), frozenset())
    for w in enumerate_involutions(Composition(blocks.sizes, 0)):
        rho, c = w.rho, w.c
        ok = True
        for i in range(k):
            j = rho[i]
            if i in c and j != i:
                ok = frozenset({i, j}) in blocks.sigma_tau
            elif i in c:
                ok = i in blocks.unitary_dist
            elif j != i:
                ok = frozenset({i, j}) in blocks.conj_dual
            else:
                ok = i in flags
            if not ok:
                break
        if not ok:
            continue
        units = []
        for i in range(k):
            j = rho[i]
            if j == i and i not in c:
                units.append({"type": "closed", "blocks": [pos_pi[i]]})
                units.append({"type": "closed", "blocks": [pos_dual[i]]})
            elif j == i:
                units.append({"type": "open", "blocks": [pos_pi[i], pos_dual[i]]})
            elif i < j and i not in c:
                units.append({"type": "open", "blocks": [pos_pi[i], pos_pi[j]]})
                units.append({"type": "open", "blocks": [pos_dual[i], pos_dual[j]]})
            elif i < j:
                units.append({"type": "open", "blocks": [pos_pi[i], pos_dual[j]]})
                units.append({"type": "open", "blocks": [pos_pi[j], pos_dual[i]]})
        if pos_center is not None:
            units.append({"type": "closed", "blocks": [pos_center]})
        return True, units, (rho, c)
    return False, None, None
