"""Tour of the built-in Young-function families.

Evaluates phi / Phi / the conjugate function pointwise, samples the exponent
ratio t*phi/Phi whose bounds drive every inequality downstream, and prints a
structure-certification report per family.
"""

import numpy as np

import orliczkit as ok

families = [
    ok.power_family(ok.ExponentField.affine(2.0, 1.0)),
    ok.log_quotient_family(ok.ExponentField.affine(3.0, 1.0)),
    ok.log_weight_family(ok.ExponentField.affine(2.0, 1.0), alpha=1.0),
]

ts = np.array([0.1, 0.5, 1.0, 2.0, 10.0])

for fam in families:
    print("=" * 70)
    print(f"family {fam.label!r}: phi0 = {fam.phi0:.6g}, phi_sup = {fam.phi_sup:.6g}"
          f"{' (estimated)' if 'phi_sup' in fam.estimated else ''}, "
          f"M_lower = {fam.M_lower:.4g}")
    print(f"{'t':>8} {'phi(0.5,t)':>14} {'Phi(0.5,t)':>14} {'conj(0.5,phi)':>14}")
    for t in ts:
        phi = fam.phi(0.5, t)
        Phi = fam.Phi(0.5, t)
        conj = fam.conjugate(0.5, phi)
        print(f"{t:8.2f} {phi:14.6g} {Phi:14.6g} {conj:14.6g}")
        # the conjugate at phi(t) never exceeds phi_sup * Phi(t)
        assert conj <= fam.phi_sup * Phi + 1e-8

    lo, hi = ok.exponent_bounds(fam, np.geomspace(1e-4, 1e4, 200))
    print(f"sampled ratio bounds: [{lo:.6f}, {hi:.6f}] "
          f"(declared [{fam.phi0:.6f}, {fam.phi_sup:.6f}])")

    report = ok.check_structure(fam)
    print("structure checks:")
    for check in report.checks:
        flag = "ok " if check.passed else "FAIL"
        print(f"  {flag} {check.name:28s} worst margin {check.worst_margin:+.3e}")
    print(f"all passed: {report.all_passed}")

print("=" * 70)
print("descriptor round trip (text serialization):")
text = ok.family_to_text(families[2])
print(text)
back = ok.family_from_text(text)
print(f"reloaded: phi_sup = {back.phi_sup!r} (identical: "
      f"{back.phi_sup == families[2].phi_sup})")
