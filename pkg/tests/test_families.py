"""Pointwise family operations against closed-form and quadrature oracles."""

import numpy as np
import pytest
import scipy.integrate as si

import orliczkit as ok
from orliczkit.errors import DomainError, InputError
from orliczkit.families import check_structure, exponent_bounds

# frozen oracle values
PHI_II_P3_AT_1 = 4.328085122666891          # 3 / log(2)
G3_AT_1 = 1.7456241416655579                # 1 + sin(sin(1)), used in test_energy


def test_phi_power_example(family_power_p2):
    assert family_power_p2.phi(0.3, 3.0) == pytest.approx(6.0, abs=0)


def test_phi_zero_any_family(all_families):
    for fam in all_families:
        assert fam.phi(0.5, 0.0) == 0.0


def test_phi_logquotient_example(family_logquot_p3):
    assert family_logquot_p3.phi(0.0, 1.0) == pytest.approx(3.0 / np.log(2.0), rel=1e-14)
    assert family_logquot_p3.phi(0.0, 1.0) == pytest.approx(PHI_II_P3_AT_1, rel=1e-12)


def test_phi_oddness_exact(all_families, rng):
    ts = np.exp(rng.uniform(np.log(1e-4), np.log(1e3), 200))
    xs = rng.uniform(0.0, 1.0, 200)
    for fam in all_families:
        plus = np.asarray(fam.phi(xs, ts))
        minus = np.asarray(fam.phi(xs, -ts))
        assert np.all(plus + minus == 0.0)


def test_Phi_power_examples(family_power_p2):
    assert family_power_p2.Phi(0.1, 3.0) == pytest.approx(9.0, abs=0)
    assert family_power_p2.Phi(0.1, 0.0) == 0.0


def test_Phi_logweight_quadrature_oracle(family_logweight_p2):
    # closed form: log(3) - integral_0^1 s^2/(2+s) ds, checked two ways
    corr, err = si.quad(lambda s: s * s / (2.0 + s), 0.0, 1.0, epsabs=1e-14)
    assert err < 1e-12
    analytic = 0.5 - 2.0 + 4.0 * np.log(1.5)
    assert corr == pytest.approx(analytic, abs=1e-13)
    expected = np.log(3.0) - corr
    assert family_logweight_p2.Phi(0.0, 1.0) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("t", [1e-3, 0.037, 0.9, 3.7, 19.0])
def test_Phi_matches_quadrature_of_phi(all_families, t):
    # fundamental-theorem consistency at 1e-10 absolute
    for fam in all_families:
        for x in (0.0, 0.37, 1.0):
            ref, _ = si.quad(lambda s: float(fam.phi(np.asarray(x), np.asarray(s))),
                             0.0, t, epsabs=1e-13, epsrel=1e-13, limit=200)
            assert float(fam.Phi(x, t)) == pytest.approx(ref, abs=1e-10)


def test_phi_inverse_examples(family_power_p2, family_logquot_p3):
    assert family_power_p2.phi_inv(0.0, 6.0) == pytest.approx(3.0, rel=1e-12)
    assert family_power_p2.phi_inv(0.7, 0.0) == 0.0
    assert family_logquot_p3.phi_inv(0.0, PHI_II_P3_AT_1) == pytest.approx(1.0, rel=1e-10)


def test_phi_inverse_round_trip(all_families):
    ts = np.geomspace(1e-3, 1e3, 40)
    xs = np.linspace(0.0, 1.0, 7)
    for fam in all_families:
        for x in xs:
            s = np.asarray(fam.phi(np.full_like(ts, x), ts))
            back = np.asarray(fam.phi_inv(np.full_like(ts, x), s))
            assert np.max(np.abs(back - ts) / ts) < 1e-10


def test_phi_inverse_monotone(family_logweight_p2):
    s = np.geomspace(1e-4, 1e4, 60)
    t = np.asarray(family_logweight_p2.phi_inv(np.zeros_like(s), s))
    assert np.all(np.diff(t) > 0)


def test_conjugate_power_closed_form(family_power_p2):
    # Phi = t^2 has conjugate s^2/4
    assert family_power_p2.conjugate(0.0, 2.0) == pytest.approx(1.0, rel=1e-12)
    assert family_power_p2.conjugate(0.0, 0.0) == 0.0
    s = np.linspace(0.1, 8.0, 23)
    vals = np.asarray(family_power_p2.conjugate(np.zeros_like(s), s))
    assert np.allclose(vals, s * s / 4.0, rtol=1e-12)


def test_young_inequality_spot(family_power_p2):
    # t*s = 6 <= Phi(3) + conj(2) = 9 + 1
    assert 2.0 * 3.0 <= family_power_p2.Phi(0.0, 3.0) + family_power_p2.conjugate(0.0, 2.0)


def test_young_inequality_sampled(all_families, rng):
    n = 500
    x = rng.uniform(0.0, 1.0, n)
    t = np.exp(rng.uniform(np.log(1e-3), np.log(1e2), n))
    s = np.exp(rng.uniform(np.log(1e-3), np.log(1e2), n))
    for fam in all_families:
        lhs = t * s
        rhs = np.asarray(fam.Phi(x, t)) + np.asarray(fam.conjugate(x, s))
        assert np.all(lhs <= rhs + 1e-8)


def test_conjugate_bound_sampled(all_families, rng):
    n = 300
    x = rng.uniform(0.0, 1.0, n)
    t = np.exp(rng.uniform(np.log(1e-3), np.log(1e2), n))
    for fam in all_families:
        phi = np.asarray(fam.phi(x, t))
        conj = np.asarray(fam.conjugate(x, phi))
        assert np.all(conj <= fam.phi_sup * np.asarray(fam.Phi(x, t)) + 1e-8)


def test_scaling_bounds(all_families, rng):
    n = 400
    x = rng.uniform(0.0, 1.0, n)
    t = np.exp(rng.uniform(np.log(1e-3), np.log(1e2), n))
    sigma = np.exp(rng.uniform(np.log(1.0 + 1e-9), np.log(50.0), n))
    tau = rng.uniform(1e-3, 1.0 - 1e-9, n)
    for fam in all_families:
        Pt = np.asarray(fam.Phi(x, t))
        Pst = np.asarray(fam.Phi(x, sigma * t))
        assert np.all(Pst <= sigma ** fam.phi_sup * Pt * (1.0 + 1e-9))
        assert np.all(Pst >= sigma ** fam.phi0 * Pt * (1.0 - 1e-9))
        Ptau = np.asarray(fam.Phi(x, t / tau))
        assert np.all(Pt <= tau ** fam.phi0 * Ptau * (1.0 + 1e-9))
        assert np.all(Pt >= tau ** fam.phi_sup * Ptau * (1.0 - 1e-9))


def test_exponent_bounds_power_affine(family_power_affine):
    lo, hi = exponent_bounds(family_power_affine, np.geomspace(1e-3, 1e3, 80))
    assert lo == pytest.approx(2.0, abs=1e-9)
    assert hi == pytest.approx(3.0, abs=1e-9)


def test_exponent_bounds_logquotient_floor():
    fam = ok.log_quotient_family(ok.ExponentField.constant(4.0))
    lo, hi = exponent_bounds(fam, np.geomspace(1e-4, 1e4, 160))
    assert lo >= 3.0 - 1e-9          # p- - 1
    assert lo < 3.3                  # approached as t -> 0
    assert hi <= 4.0 + 1e-9


def test_exponent_bounds_power_constant(family_power_p2):
    lo, hi = exponent_bounds(family_power_p2, np.geomspace(1e-2, 1e2, 30))
    assert lo == pytest.approx(2.0, abs=1e-12)
    assert hi == pytest.approx(2.0, abs=1e-12)


def test_exponent_bounds_bracket_declared(all_families):
    for fam in all_families:
        lo, hi = exponent_bounds(fam, np.geomspace(1e-4, 1e4, 200))
        assert lo >= fam.phi0 - 1e-9
        assert hi <= fam.phi_sup + 1e-9


def test_exponent_bounds_rejects_bad_grid(family_power_p2):
    with pytest.raises(InputError):
        exponent_bounds(family_power_p2, np.array([]))
    with pytest.raises(InputError):
        exponent_bounds(family_power_p2, np.array([0.0, 1.0]))


def test_check_structure_families_pass(all_families):
    for fam in all_families:
        report = check_structure(fam)
        assert report.all_passed, [c for c in report.checks if not c.passed]


def test_check_structure_sqrt_convexity_logweight(family_logweight_p2):
    report = check_structure(family_logweight_p2)
    assert report["sqrt_convexity"].passed


def test_check_structure_delta2_power_margin(family_power_affine):
    # Phi(x,2t)/Phi(x,t) = 2^{p(x)} <= 2^{p+} identically
    report = check_structure(family_power_affine)
    assert report["delta2_explicit_constant"].passed
    assert report["delta2_explicit_constant"].worst_margin >= 0.0


def test_check_structure_broken_monotone_negative_control():
    # phi decreasing on (1, 2): slope 2 outside, -0.5 inside
    def phi_fn(x, t):
        at = np.abs(t)
        ramp = np.clip(at - 1.0, 0.0, 1.0)
        return np.sign(t) * (2.0 * at - 2.5 * ramp)

    fam = ok.custom_family(phi_fn, phi0=1.5, phi_sup=3.0, label="broken-monotone")
    report = check_structure(fam, t_samples=np.geomspace(1e-2, 10.0, 120))
    mono = report["phi_monotone"]
    assert not mono.passed
    assert 0.9 < abs(mono.witness["t"]) < 2.1
    assert not report.all_passed


def test_custom_family_quadrature_backend():
    fam = ok.custom_family(lambda x, t: np.asarray(t) ** 3, p=None,
                           phi0=4.0, phi_sup=4.0, label="cubic")
    assert float(fam.Phi(0.0, 2.0)) == pytest.approx(4.0, rel=1e-10)


def test_domain_errors(all_families):
    for fam in all_families:
        with pytest.raises(DomainError):
            fam.phi(0.0, np.nan)
        with pytest.raises(DomainError):
            fam.Phi(np.inf, 1.0)
        with pytest.raises(InputError):
            fam.phi_inv(0.0, -1.0)


def test_constructor_guards():
    with pytest.raises(InputError):
        ok.power_family(ok.ExponentField.constant(1.5))
    with pytest.raises(InputError):
        ok.log_quotient_family(ok.ExponentField.constant(2.5))
    with pytest.raises(InputError):
        ok.log_weight_family(ok.ExponentField.constant(2.0), 0.0)
    with pytest.raises(InputError):
        ok.ExponentField.constant(1.0)
    with pytest.raises(InputError):
        ok.ExponentField.affine(1.0, -2.0)     # dips below 1 on [0, 1]


def test_exponent_field_kinds():
    const = ok.ExponentField.constant(2.5)
    assert const(np.array([0.0, 0.7])).tolist() == [2.5, 2.5]
    aff = ok.ExponentField.affine(2.0, 1.0)
    assert aff(0.25) == pytest.approx(2.25)
    assert (aff.p_minus, aff.p_plus) == (2.0, 3.0)
    tab = ok.ExponentField.tabulated(np.linspace(0, 1, 5), [2.0, 2.5, 3.0, 2.5, 2.0])
    assert tab(0.26) == pytest.approx(2.5)
    assert (tab.p_minus, tab.p_plus) == (2.0, 3.0)


def test_family_serialization_round_trip(all_families):
    for fam in all_families:
        text = ok.family_to_text(fam)
        back = ok.family_from_text(text)
        assert back.family_id == fam.family_id
        assert back.p == fam.p
        assert back.alpha == fam.alpha
        assert back.phi0 == pytest.approx(fam.phi0, rel=0, abs=0)
        assert back.phi_sup == pytest.approx(fam.phi_sup, rel=0, abs=0)
        assert back.M_lower == pytest.approx(fam.M_lower, rel=0, abs=0)


def test_family_serialization_rejects_custom():
    fam = ok.custom_family(lambda x, t: np.asarray(t) ** 3, phi0=4.0, phi_sup=4.0)
    with pytest.raises(InputError):
        ok.family_to_text(fam)


def test_logquotient_records_shifted_growth_bound(family_logquot_p3):
    report = check_structure(family_logquot_p3)
    assert report["growth_lower_shifted"].passed


def test_logweight_phi_sup_is_estimate(family_logweight):
    assert "phi_sup" in family_logweight.estimated
    assert family_logweight.phi_sup > family_logweight.p.p_plus
