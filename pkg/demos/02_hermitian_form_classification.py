"""Classifying forms by complete invariants.

Over a p-adic field a symmetric form is pinned down by its rank,
discriminant class and Hasse sign; a hermitian form by rank and the
norm class of its determinant; an alternating form by rank alone.
"""

from localsym.forms import Case, DiagForm, diagonalize, equivalent, invariants, orbit_count
from localsym.localfield import Prime, QuadExtension, reduce

p = Prime(3)

print("congruence diagonalization of the hyperbolic plane [[0,1],[1,0]]:")
form, change = diagonalize([[0, 1], [1, 0]], p)
print(f"  diagonal entries {form.entries}")
inv = invariants(form)
print(f"  disc = {inv.disc}, hasse = {inv.hasse:+d}")
print()

print("two rank-3 forms with the same discriminant but different Hasse sign:")
f = DiagForm(Case.ORTHOGONAL, p, (1, 1, -1))
g = DiagForm(Case.ORTHOGONAL, p, (-1, 3, 3))
print(f"  diag(1,1,-1):   {invariants(f)}")
print(f"  diag(-1,3,3):   {invariants(g)}")
print(f"  equivalent? {equivalent(f, g)}")
print()

print("orbit counts:")
print(f"  symplectic rank 4:                 {orbit_count(Case.SYMPLECTIC, 4)}")
print(f"  orthogonal rank 2, disc = -1:      {orbit_count(Case.ORTHOGONAL, 2, reduce(-1, p))}")
print(f"  orthogonal rank 2, disc =  3:      {orbit_count(Case.ORTHOGONAL, 2, reduce(3, p))}")
print(f"  orthogonal rank 3, any disc:       {orbit_count(Case.ORTHOGONAL, 3, reduce(1, p))}")
print(f"  unitary, any rank:                 {orbit_count(Case.UNITARY, 5)}")
print()

ext = QuadExtension.of(-1, p)
u = DiagForm(Case.UNITARY, p, (1, 3), ext=ext)
print(f"unitary diag(1,3) relative to Q_3(i): det_norm_bit = {invariants(u).det_norm_bit}")
