"""Deciding distinction from a symbolic cuspidal datum.

Representation-theoretic inputs are oracle facts (relations between
labels, distinction flags); the decision procedure searches signed
involutions, checks the condition rows against the oracle and settles
the arithmetic side with the exact orbit formulas.
"""

from localsym.distinction import CuspidalDatum, GlBlocks, decide, gl_product_check, necessary_condition
from localsym.forms import Case
from localsym.localfield import Prime
from localsym.numfield import BiquadField
from localsym.symspace import ClassicalPair, UnitaryOrbit, realizable_targets

pair = ClassicalPair(Case.UNITARY, 1, (1,), 2, Prime(3), BiquadField(-1, 3))
from localsym.weyl import Composition

comp = Composition((1, 1), 0)
data = CuspidalDatum.build(
    ["pi1", "pi2"],
    sigma_tau=[(0, 1)],
    pi0_dist=(UnitaryOrbit(0), UnitaryOrbit(1)),
)
print("datum: two labels related by the sigma-tau twist; both inner orbits flagged")
for target in realizable_targets(pair):
    verdict = decide(pair, comp, data, target)
    print(f"\ntarget {target.to_json()}: distinguished = {verdict.distinguished}")
    if verdict.distinguished:
        wt = verdict.witness
        print(f"  witness: w = {wt.w.to_json()}, inner orbit {wt.z_orbit.to_json()}")
        print(f"  necessary condition holds: {necessary_condition(data, wt.w)}")
    else:
        print("  failure log:")
        for line in verdict.failure_log[:4]:
            print(f"    {line}")

print("\nthe symbolic product check for the big linear group:")
blocks = GlBlocks.build(2, (1, 1), 2,
                        conj_dual=[(0, 1)],
                        center_chi_dist=["trivial"])
ok, units, pairing = gl_product_check(blocks, "trivial")
print(f"  palindrome with a dual pair and a flagged center: distinguished = {ok}")
print(f"  decomposition into units: {units}")

empty = GlBlocks.build(2, (1, 1), 0)
print(f"  with an empty oracle: {gl_product_check(empty, 'trivial')[0]}")
