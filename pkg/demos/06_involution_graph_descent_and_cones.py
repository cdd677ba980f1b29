"""The involution graph: vertices carry a composition and an involution
class, edges cross simple roots made negative by the twisted action,
descent reaches a terminal vertex, and cone membership is an exact
rational predicate obeying a one-step recursion along each edge.
"""

import random
from fractions import Fraction

from localsym.invgraph import (
    Convention,
    ThetaAction,
    Vertex,
    cone_contains,
    cone_recursion_holds,
    descend,
    eligible_simple_roots,
    is_terminal,
)
from localsym.weyl import Composition, SignedInvolution

conv = Convention(wall_double=False)
comp = Composition((1, 1, 1), 1)
w = SignedInvolution((1, 0, 2), frozenset({2}))
v = Vertex(comp, w)

print(f"start: parts {comp.parts}, r = {comp.r}, rho = {tuple(i+1 for i in w.rho)}, "
      f"sign set {sorted(i+1 for i in w.c)}")
print(f"eligible simple roots: {[alpha for _, alpha in eligible_simple_roots(v, conv)]}")
path, terminal = descend(v, conv)
for step in path:
    print(f"  step {step.step}: cross {step.alpha} -> parts {step.vertex.comp.parts}, "
          f"sign set {sorted(i+1 for i in step.vertex.w.c)}")
print(f"terminal (no eligible roots remain): {is_terminal(terminal, conv)}")
print()

theta = ThetaAction.from_involution(SignedInvolution((0, 1), frozenset({0, 1})))
print("cone membership for the all-negative action on R^2 (c = 1):")
for lam in [(5, 3), (3, 5), (1, 1)]:
    print(f"  lambda = {lam}: {cone_contains(theta, lam, 1, conv)}")
print()

rng = random.Random(7)
v2 = Vertex(Composition((1, 1), 0), SignedInvolution((0, 1), frozenset({0})))
idx, alpha = eligible_simple_roots(v2, conv)[0]
checks = sum(
    cone_recursion_holds(
        v2, idx,
        tuple(Fraction(rng.randint(-9, 9), rng.choice([1, 2])) for _ in range(2)),
        rng.choice([0, 1]), conv,
    )
    for _ in range(500)
)
print(f"one-step cone recursion along the edge at {alpha}: {checks}/500 random points agree")
