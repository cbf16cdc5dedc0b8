"""Sweeping the bifurcation parameter across both existence regimes.

Small lam: below the explicit threshold (built from the embedding-constant
estimate) a scaled bump already has negative energy and descent certifies a
nontrivial critical point.  Large lam: the energy of the constant seed
crosses zero at a computable root, above which minimizers are nontrivial.
The probes illustrate the exponent competition that drives both regimes.
"""

import numpy as np

import orliczkit as ok

grid = ok.make_grid(1, [(0.0, 1.0)], [101])
fam = ok.power_family(ok.ExponentField.constant(4.0))     # phi0 = phi_sup = 4
react = ok.power_reaction(ok.ExponentField.constant(2.0))  # q = 2 < phi0

print("probes for the exponent competition (q below the Phi exponents):")
config1 = ok.EnergyConfig(fam, react, 1.0)
theta = ok.bump_function(grid)
probe = ok.small_t_probe(config1, theta, np.geomspace(1e-4, 0.1, 15))
print(f"  small-multiple energies go negative: {probe.any_negative} "
      f"(first at t = {probe.first_negative_t:.4g})")
dirs = [ok.GridFunction.constant(grid, 1.0), theta]
print(f"  rays are coercive: {ok.coercivity_probe(config1, dirs).passed}")

control = ok.EnergyConfig(ok.power_family(ok.ExponentField.constant(2.0)),
                          ok.power_reaction(ok.ExponentField.constant(4.0)), 1.0)
cprobe = ok.small_t_probe(control, theta, np.geomspace(1e-4, 0.1, 15))
print(f"  reversed exponents control: small-t negative = {cprobe.any_negative}, "
      f"coercive = {ok.coercivity_probe(control, dirs).passed}")

print("\nsweep:")
report = ok.sweep_lambda(fam, react, grid, [0.05, 0.5, 2.0, 4.4, 8.0], seed=0)
print(f"  c1 lower estimate        = {report.c1_lower_estimate:.4f}")
print(f"  rho used                 = {report.rho_used:.4f}")
print(f"  lambda_star (formula)    = {report.lambda_star_formula_value:.6g}")
print(f"  lambda_star (empirical)  = {report.lambda_star_empirical:.6g}")
print(f"  lambda_upper (root)      = {report.lambda_upper_root:.6g}"
      "   <- energy of the constant seed crosses zero here")
print(f"  lambda_upper (empirical) = {report.lambda_upper_empirical:.6g}")
print()
print(report.csv_text())
