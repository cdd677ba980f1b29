"""Square classes and Hilbert symbols: the finite arithmetic everything
else is built on.

A nonzero rational determines a class in Qp*/Qp*^2 -- a group of order 4
(odd p) or 8 (p = 2).  The Hilbert symbol is computed by closed formulas
and double-checked by a brute-force Hensel search.
"""

from localsym.localfield import (
    Prime,
    QuadExtension,
    eta,
    hilbert_oracle,
    hilbert_rational,
    reciprocity_check,
    reduce,
    square_class_reps,
)

p = Prime(5)
print(f"square classes of Q_{p.p}: {square_class_reps(p)}")
print(f"reduce(50, 5)  -> {reduce(50, p)}   (50 = 2 * 5^2, and 2 is a non-residue mod 5)")
print(f"reduce(9, 5)   -> {reduce(9, p)}   (a square)")
print()

print("Hilbert symbols at p = 3:")
for a, b in [(3, 2), (3, 3), (-1, -1), (2, 5)]:
    s = hilbert_rational(a, b, 3)
    o = hilbert_oracle(a, b, 3)
    print(f"  ({a:>2},{b:>2})_3 = {s:+d}   brute-force Hensel search agrees: {o == s}")
print()

E = QuadExtension.of(3, Prime(3))
print("the quadratic character of Q_3* attached to Q_3(sqrt 3):")
for a in (1, -3, 2, 3):
    print(f"  eta({a:>2}) = {eta(E, a):+d}")
print()

print("Hilbert reciprocity: the product of (a,b)_v over all places is 1.")
report = reciprocity_check(-1, -1)
print(f"  (a,b) = (-1,-1): symbols {dict((str(k), v) for k, v in report.symbols)}")
print(f"  product = {report.product} -> {'pass' if report.ok else 'FAIL'}")
