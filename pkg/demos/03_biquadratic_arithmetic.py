"""Exact arithmetic in Q(sqrt a, sqrt b) with its two commuting
involutions, and the constructive Hilbert-90 splittings used everywhere
downstream.

All matrix identities later in the pipeline are polynomial identities
over this global model, hence valid in every completion.
"""

from localsym.numfield import BiquadField, Mat, recover_hilbert90, recover_hilbert90_matrix

F = BiquadField(-1, 3)  # Q(i, sqrt 3)
ra, rb, rab = F.sqrt_a, F.sqrt_b, F.sqrt_ab

print("the two involutions:")
print(f"  sigma(sqrt a) = {ra.sigma()},  tau(sqrt a) = {ra.tau()}")
print(f"  sigma(sqrt b) = {rb.sigma()},  tau(sqrt b) = {rb.tau()}")
print(f"  sigma tau fixes sqrt(ab): {rab.sigma_tau() == rab}")
print()

x = F.element(2, 1, 0, 1)  # 2 + i + sqrt(-3)
print(f"x = {x}")
print(f"  norm to Q(sqrt a): {x.norm_to_E()}")
print(f"  norm to Q:         {x.norm_to_Q()}")
print(f"  x * x^-1 = 1:      {(x * x.inverse()).rational == 1}")
print()

print("Hilbert 90, element version: any tau-norm-one x splits as c / tau(c).")
t = F.element(1, 2, 1, 0)
x = t / t.tau()
c = recover_hilbert90(x, "tau")
print(f"  x = t/tau(t) for t = {t}")
print(f"  recovered c with c/tau(c) = x: {c}")
print()

print("matrix version: x with x sigma(x) = I splits as z sigma(z)^{-1}.")
z0 = Mat(F, [[F.element(1, 1), F.element(0, 0, 1)], [F.zero, F.element(2)]])
x = z0 * z0.sigma().inv()
z = recover_hilbert90_matrix(x)
print(f"  z sigma(z)^-1 == x: {z * z.sigma().inv() == x}")
print()

Q = BiquadField(2)  # the degenerate quadratic model: tau = id
print(f"quadratic model Q(sqrt 2): tau acts trivially: {Q.sqrt_a.tau() == Q.sqrt_a}")
