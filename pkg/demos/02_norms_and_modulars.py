"""Luxemburg-type norms, the modular, and the inequalities linking them.

Shows the defining property rho(u / |u|) = 1, the two-sided power bounds
between norm and modular on both sides of norm 1, the three equivalent
Sobolev-level norms, and the Young/Holder pair.
"""

import numpy as np

import orliczkit as ok
from orliczkit.spaces import conjugate_norm

grid = ok.make_grid(1, [(0.0, 1.0)], [101])
fam = ok.power_family(ok.ExponentField.affine(2.0, 1.0))   # Phi = |t|^{2+x}

print("constant field sanity: u = 2 on (0,1) with Phi = |t|^{2+x}")
u2 = ok.GridFunction.constant(grid, 2.0)
print(f"  modular(u)        = {ok.modular(fam, u2):.12g}")
print(f"  luxemburg_norm(u) = {ok.luxemburg_norm(fam, u2):.12g}  "
      "(the scale at which the modular hits 1)")
print(f"  modular(u/norm)   = {ok.modular(fam, (1/ok.luxemburg_norm(fam, u2))*u2):.12g}")

print("\nnorm vs modular on random fields (both branches of the power bounds):")
print(f"{'amplitude':>10} {'|u|':>12} {'rho(u)':>12} {'lower':>12} {'upper':>12}")
for k, amp in enumerate((0.1, 1.0, 10.0)):
    u = ok.random_function(grid, 100 + k, amp, 2)
    N = ok.luxemburg_norm(fam, u)
    rho = ok.modular(fam, u)
    if N > 1:
        lower, upper = N ** fam.phi0, N ** fam.phi_sup
    else:
        lower, upper = N ** fam.phi_sup, N ** fam.phi0
    print(f"{amp:10.2f} {N:12.6g} {rho:12.6g} {lower:12.6g} {upper:12.6g}")
    assert lower - 1e-8 <= rho <= upper + 1e-8

print("\nthree equivalent Sobolev-level norms (n1 = sum, n2 = max, n = joint):")
for k in range(3):
    u = ok.random_function(grid, 200 + k, 1.0, k)
    n1, n2, n = ok.sobolev_norms(fam, u)
    print(f"  n1 = {n1:10.6g}  n2 = {n2:10.6g}  n = {n:10.6g}   "
          f"chain 2*n2 >= n1 >= n2, 2n >= n1, 2*n2 >= n: "
          f"{2*n2 >= n1 >= n2 and 2*n >= n1 and 2*n2 >= n}")

print("\nYoung and Holder:")
t, s = 3.0, 2.0
print(f"  t*s = {t*s:g} <= Phi(x,t) + conj(x,s) = "
      f"{fam.Phi(0.5, t) + fam.conjugate(0.5, s):.6g}")
u = ok.random_function(grid, 300, 1.0, 2)
v = ok.random_function(grid, 301, 1.0, 2)
pairing = abs(ok.integrate(ok.GridFunction(grid, u.values * v.values)))
bound = 2.0 * ok.luxemburg_norm(fam, u) * conjugate_norm(fam, v)
print(f"  |int u v| = {pairing:.6g} <= 2 |u| |v|_conj = {bound:.6g}")
