"""Concrete Musielak-Orlicz function families and pointwise operations.

A family bundles a generating function phi(x,t) (odd and strictly increasing
in t) with its primitive Phi(x,t) = integral of phi(x,s) ds from 0 to t, the
exponent bounds

    1 < phi0 <= t*phi(x,t)/Phi(x,t) <= phi_sup < inf,

and a lower growth constant M_lower with M_lower*|t|^p(x) <= Phi(x,t) on the
sampling window.  Three named families are built in:

* ``power``        phi = p(x)|t|^{p(x)-2} t                 Phi = |t|^{p(x)}
* ``log-quotient`` phi = p(x)|t|^{p(x)-2} t / log(1+|t|)
                   Phi = |t|^{p(x)}/log(1+|t|)
                         + int_0^{|t|} s^{p(x)}/((1+s) log^2(1+s)) ds
* ``log-weight``   phi = p(x) log(1+alpha+|t|) |t|^{p(x)-2} t
                   Phi = log(1+alpha+|t|) |t|^{p(x)}
                         - int_0^{|t|} s^{p(x)}/(1+alpha+s) ds

For ``power`` the bounds are phi0 = p-, phi_sup = p+; for ``log-quotient``
phi0 = p- - 1, phi_sup = p+; for ``log-weight`` phi0 = p- is exact while
phi_sup exists but has no closed form and is estimated numerically (stored
with a small safe-side pad).  Custom families supply phi as a callable and
get Phi by adaptive quadrature.

The non-elementary correction integrals of the two log families are evaluated
with substitutions that remove the endpoint singularity followed by panel
Gauss-Legendre; see _quadrature.  Everything is vectorized over broadcastable
(x, t) arrays and free of mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate

from ._quadrature import gauss01, panel_gauss
from .errors import DomainError, InputError, NumericsError
from .exponents import ExponentField

__all__ = [
    "MusielakFamily", "power_family", "log_quotient_family", "log_weight_family",
    "custom_family", "exponent_bounds", "check_structure",
    "StructureReport", "ConditionCheck", "family_to_text", "family_from_text",
]

_FAMILY_IDS = ("power", "log-quotient", "log-weight", "custom")


def _check_finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")


def _as_array(v):
    return np.asarray(v, dtype=float)


def _maybe_scalar(out):
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# correction integrals
# ---------------------------------------------------------------------------

def _corr_log_quotient(V, p):
    """integral_0^V expm1(v)^p / v^2 dv for V = log(1+|t|), elementwise.

    Substituting v = c*y^2 on [0, c], c = min(V, 1), turns the fractional
    endpoint behaviour v^{p-2} into y^{2p-3} (analytic for integer p, mild
    otherwise); the remainder [c, V] is handled with enough plain panels to
    resolve the exp(p*v) growth.
    """
    V, p = np.broadcast_arrays(_as_array(V), _as_array(p))
    c = np.minimum(V, 1.0)
    cc = c[..., None]
    pp = p[..., None]

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        def head(y):
            return np.exp(pp * np.log(np.expm1(cc * y * y)) - 3.0 * np.log(y))

        part_a = np.where(c > 0.0, gauss01(head) * 2.0 / np.where(c > 0, c, 1.0), 0.0)

        v_max = float(np.max(V, initial=0.0))
        p_max = float(np.max(p, initial=1.0))
        if v_max > 1.0:
            panels = int(min(128, max(1, math.ceil(p_max * (v_max - 1.0) / 16.0))))

            def tail(v):
                return np.exp(pp * np.log(np.expm1(v)) - 2.0 * np.log(v))

            part_b = panel_gauss(tail, c, V, panels)
        else:
            part_b = 0.0
    return part_a + part_b


def _corr_log_weight(T, p, kappa):
    """integral_0^T s^p / (kappa + s) ds for T = |t|, elementwise.

    [0, c] with c = min(T, kappa) uses s = c*y^2; the tail [c, T] is
    integrated in log coordinates where the pole sits at fixed imaginary
    distance pi, panel count set by the longest log interval in the batch.
    """
    T, p = np.broadcast_arrays(_as_array(T), _as_array(p))
    c = np.minimum(T, kappa)
    cc = c[..., None]
    pp = p[..., None]

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        def head(y):
            s = cc * y * y
            return s ** pp / (kappa + s) * 2.0 * cc * y

        part_a = gauss01(head)

        t_max = float(np.max(T, initial=0.0))
        if t_max > kappa:
            span = math.log(t_max) - math.log(kappa)
            panels = int(min(128, max(1, math.ceil(span / 6.0))))
            log_lo = np.log(np.where(c > 0, c, 1.0))
            log_hi = np.log(np.where(T > c, T, np.where(c > 0, c, 1.0)))

            def tail(w):
                ew = np.exp(w)
                return ew ** (pp + 1.0) / (kappa + ew)

            part_b = np.where(T > c, panel_gauss(tail, log_lo, log_hi, panels), 0.0)
        else:
            part_b = 0.0
    return part_a + part_b


# ---------------------------------------------------------------------------
# the family type
# ---------------------------------------------------------------------------

class MusielakFamily:
    """A concrete Phi/phi pair with exponent field and structure constants.

    Instances are immutable in practice (nothing mutates them after
    construction) and all evaluation methods are pure, so they are safe to
    share across threads.
    """

    def __init__(self, family_id, p=None, alpha=None, phi0=None, phi_sup=None,
                 M_lower=0.0, estimated=(), phi_fn=None, Phi_fn=None, label=None):
        if family_id not in _FAMILY_IDS:
            raise InputError(f"unknown family id {family_id!r}")
        self.family_id = family_id
        self.p = p
        self.alpha = None if alpha is None else float(alpha)
        self.phi0 = float(phi0)
        self.phi_sup = float(phi_sup)
        self.M_lower = float(M_lower)
        self.estimated = frozenset(estimated)
        self._phi_fn = phi_fn
        self._Phi_fn = Phi_fn
        self.label = label or family_id
        if not (1.0 < self.phi0 <= self.phi_sup):
            raise InputError("need 1 < phi0 <= phi_sup")
        if self.M_lower < 0.0:
            raise InputError("M_lower must be >= 0")

    def __repr__(self):
        return (f"MusielakFamily({self.label!r}, phi0={self.phi0:g}, "
                f"phi_sup={self.phi_sup:g})")

    @property
    def kappa(self):
        """1 + alpha, the shift inside the log-weight family's logarithm."""
        return 1.0 + self.alpha if self.alpha is not None else None

    # -- pointwise operations ------------------------------------------

    def phi(self, x1, t):
        """phi(x,t); odd in t, phi(x,0) = 0."""
        x1, t = _as_array(x1), _as_array(t)
        _check_finite("x", x1)
        _check_finite("t", t)
        if self.family_id == "custom":
            return _maybe_scalar(self._phi_fn(x1, t))
        p = self.p(x1)
        at = np.abs(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family_id == "power":
                out = p * at ** (p - 2.0) * t
            elif self.family_id == "log-quotient":
                out = p * at ** (p - 2.0) * t / np.log1p(at)
                out = np.where(at == 0.0, 0.0, out)
            else:  # log-weight
                out = p * np.log(self.kappa + at) * at ** (p - 2.0) * t
        return _maybe_scalar(out)

    def Phi(self, x1, t):
        """Phi(x,t) = integral of phi from 0 to |t| (even extension)."""
        x1, t = _as_array(x1), _as_array(t)
        _check_finite("x", x1)
        _check_finite("t", t)
        if self.family_id == "custom":
            return _maybe_scalar(self._Phi_custom(x1, t))
        p = self.p(x1)
        at = np.abs(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.family_id == "power":
                out = at ** p
            elif self.family_id == "log-quotient":
                V = np.log1p(at)
                lead = np.where(at == 0.0, 0.0, at ** p / np.where(V > 0, V, 1.0))
                out = lead + _corr_log_quotient(V, p)
            else:
                out = np.log(self.kappa + at) * at ** p - _corr_log_weight(at, p, self.kappa)
        return _maybe_scalar(out)

    def _Phi_custom(self, x1, t):
        if self._Phi_fn is not None:
            return self._Phi_fn(x1, t)
        import warnings
        x1b, tb = np.broadcast_arrays(x1, np.abs(t))
        out = np.empty(x1b.shape)
        flat_x, flat_t, flat_o = x1b.ravel(), tb.ravel(), out.ravel()
        for i in range(flat_o.size):
            with warnings.catch_warnings():
                # the explicit error-estimate check below decides convergence
                warnings.simplefilter("ignore", scipy.integrate.IntegrationWarning)
                val, err = scipy.integrate.quad(
                    lambda s, xi=flat_x[i]: self._phi_fn(np.asarray(xi), np.asarray(s)),
                    0.0, flat_t[i], epsabs=1e-12, epsrel=1e-12, limit=200)
            if err > 1e-10 * (1.0 + abs(val)):
                raise NumericsError(
                    f"quadrature for Phi did not converge at t={flat_t[i]:g} "
                    f"(error estimate {err:g})")
            flat_o[i] = val
        return out

    def phi_inv(self, x1, s):
        """Inverse of phi(x,.) on [0,inf); monotone in s, phi_inv(x,0)=0."""
        x1, s = _as_array(x1), _as_array(s)
        _check_finite("x", x1)
        _check_finite("s", s)
        if np.any(s < 0.0):
            raise InputError("phi_inv expects s >= 0")
        if self.family_id == "power":
            p = self.p(x1)
            out = (s / p) ** (1.0 / (p - 1.0))
            return _maybe_scalar(np.broadcast_arrays(out, s)[0])
        x1b, sb = np.broadcast_arrays(x1, s)
        out = self._phi_inv_bisect(x1b, sb)
        return _maybe_scalar(out)

    def _phi_inv_bisect(self, x1, s):
        # log-space bisection; phi is a strictly increasing bijection of R+
        lo = np.full(s.shape, 1e-300)
        hi = np.full(s.shape, 1e30)
        for _ in range(10):
            need = self.phi(x1, hi) < s
            if not np.any(need):
                break
            hi = np.where(need, np.minimum(hi * 1e27, 1e300), hi)
        if np.any(self.phi(x1, hi) < s):
            raise NumericsError("phi_inv: s beyond representable range")
        llo, lhi = np.log(lo), np.log(hi)
        for _ in range(120):
            mid = 0.5 * (llo + lhi)
            low_side = self.phi(x1, np.exp(mid)) < s
            llo = np.where(low_side, mid, llo)
            lhi = np.where(low_side, lhi, mid)
        root = np.exp(0.5 * (llo + lhi))
        return np.where(s == 0.0, 0.0, root)

    def conjugate(self, x1, s):
        """Conjugate Young function: sup_{t>0} (s t - Phi(x,t)), attained
        at t = phi_inv(x,s) by strict monotonicity of phi."""
        x1, s = _as_array(x1), _as_array(s)
        if np.any(_as_array(s) < 0.0):
            raise InputError("conjugate expects s >= 0")
        t_star = np.asarray(self.phi_inv(x1, s))
        val = s * t_star - np.asarray(self.Phi(x1, t_star))
        return _maybe_scalar(np.maximum(val, 0.0))

    def conjugate_exponent_bounds(self):
        """Ratio bounds for the conjugate function (Young duality)."""
        return (self.phi_sup / (self.phi_sup - 1.0),
                self.phi0 / (self.phi0 - 1.0))


# ---------------------------------------------------------------------------
# factories
# ---------------------------------------------------------------------------

def power_family(p: ExponentField) -> MusielakFamily:
    """Family with Phi(x,t) = |t|^{p(x)}; needs p- >= 2."""
    if p.p_minus < 2.0:
        raise InputError("power family requires p(x) >= 2")
    return MusielakFamily("power", p=p, phi0=p.p_minus, phi_sup=p.p_plus,
                          M_lower=1.0, label="power")


def log_quotient_family(p: ExponentField) -> MusielakFamily:
    """Family with Phi ~ |t|^{p(x)}/log(1+|t|); needs p- >= 3.

    Ratio bounds phi0 = p- - 1 and phi_sup = p+ are exact (attained in the
    limits t->0 and t->inf).  M_lower is a window estimate only: the true
    inf of Phi/t^p over all t is 0 because of the 1/log factor at infinity.
    """
    if p.p_minus < 3.0:
        raise InputError("log-quotient family requires p(x) >= 3")
    fam = MusielakFamily("log-quotient", p=p, phi0=p.p_minus - 1.0,
                         phi_sup=p.p_plus, M_lower=0.0,
                         estimated=("M_lower",), label="log-quotient")
    fam.M_lower = _estimate_m_lower(fam)
    return fam


def log_weight_family(p: ExponentField, alpha: float) -> MusielakFamily:
    """Family with Phi = log(1+alpha+|t|)|t|^{p(x)} - correction; p- >= 2.

    phi0 = p- is exact; phi_sup is a refined numerical sup of t*phi/Phi
    (interior maximum), padded by a relative 1e-8 so inequalities tested
    against it stay on the safe side.
    """
    if p.p_minus < 2.0:
        raise InputError("log-weight family requires p(x) >= 2")
    if not alpha > 0.0:
        raise InputError("log-weight family requires alpha > 0")
    fam = MusielakFamily("log-weight", p=p, alpha=alpha, phi0=p.p_minus,
                         phi_sup=p.p_plus + 1.0,  # placeholder, refined below
                         M_lower=0.0, estimated=("phi_sup", "M_lower"),
                         label="log-weight")
    fam.phi_sup = _refine_sup_ratio(fam) * (1.0 + 1e-8)
    fam.M_lower = _estimate_m_lower(fam)
    return fam


def custom_family(phi_fn, Phi_fn=None, p: ExponentField | None = None,
                  phi0=None, phi_sup=None, M_lower=None, label="custom") -> MusielakFamily:
    """Family from a user-supplied vectorized phi(x1, t).

    Phi comes from Phi_fn if given, else adaptive quadrature of phi.  Ratio
    bounds are taken as declared or estimated by sampling t in [1e-4, 1e4];
    estimates are recorded as such.
    """
    estimated = []
    fam = MusielakFamily("custom", p=p, phi0=phi0 or 2.0, phi_sup=phi_sup or 2.0,
                         M_lower=0.0, phi_fn=phi_fn, Phi_fn=Phi_fn, label=label)
    if phi0 is None or phi_sup is None:
        lo, hi = _sampled_ratio_bounds(fam)
        if phi0 is None:
            fam.phi0, estimated = lo, estimated + ["phi0"]
        else:
            fam.phi0 = float(phi0)
        if phi_sup is None:
            fam.phi_sup, estimated = hi, estimated + ["phi_sup"]
        else:
            fam.phi_sup = float(phi_sup)
    else:
        fam.phi0, fam.phi_sup = float(phi0), float(phi_sup)
    if M_lower is None and p is not None:
        fam.M_lower = _estimate_m_lower(fam)
        estimated.append("M_lower")
    elif M_lower is not None:
        fam.M_lower = float(M_lower)
    fam.estimated = frozenset(estimated)
    if not (1.0 < fam.phi0 <= fam.phi_sup):
        raise InputError("custom family: need 1 < phi0 <= phi_sup "
                         "(declare them if the sampled estimates are unusable)")
    return fam


# ---------------------------------------------------------------------------
# estimation helpers
# ---------------------------------------------------------------------------

def _x_samples(family, n=33):
    if family.p is None:
        return np.array([0.0])
    return family.p.sample_points(n)


def _ratio(family, x1, t):
    phi = np.asarray(family.phi(x1, t))
    Phi = np.asarray(family.Phi(x1, t))
    if np.any(Phi <= 0.0):
        raise NumericsError("Phi(x,t) <= 0 encountered for t > 0")
    return t * phi / Phi


def _sampled_ratio_bounds(family, t_lo=1e-4, t_hi=1e4, nt=161):
    ts = np.geomspace(t_lo, t_hi, nt)
    xs = _x_samples(family)
    r = _ratio(family, xs[:, None], ts[None, :])
    return float(np.min(r)), float(np.max(r))


def _golden_max(f, a, b, iters=70):
    # golden-section search for the max of a unimodal-enough scalar function
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
    return max(fc, fd)


def _refine_sup_ratio(family):
    """Numerical sup of t*phi/Phi; coarse log grid plus golden polish."""
    ts = np.geomspace(1e-6, 1e8, 281)
    best = 0.0
    for x in _x_samples(family, n=21):
        r = _ratio(family, x, ts)
        k = int(np.argmax(r))
        best = max(best, float(r[k]))
        a = math.log(ts[max(k - 1, 0)])
        b = math.log(ts[min(k + 1, ts.size - 1)])
        best = max(best, _golden_max(lambda lt, xx=x: float(_ratio(family, xx, math.exp(lt))), a, b))
    return best


def _estimate_m_lower(family, t_lo=1e-4, t_hi=1e4, nt=181):
    """inf over the sampling window of Phi(x,t)/t^{p(x)}, shaved slightly."""
    ts = np.geomspace(t_lo, t_hi, nt)
    xs = _x_samples(family)
    p = family.p(xs)[:, None]
    Phi = np.asarray(family.Phi(xs[:, None], ts[None, :]))
    ratio = Phi / ts[None, :] ** p
    return max(0.0, float(np.min(ratio)) * (1.0 - 1e-6))


# ---------------------------------------------------------------------------
# structure certification
# ---------------------------------------------------------------------------

def exponent_bounds(family, t_grid, x_grid=None):
    """Sampled (min, max) of t*phi(x,t)/Phi(x,t) over positive t_grid."""
    ts = _as_array(t_grid)
    if ts.size == 0 or np.any(ts <= 0.0):
        raise InputError("t_grid must be nonempty with all t > 0")
    xs = _as_array(x_grid) if x_grid is not None else _x_samples(family)
    r = _ratio(family, xs[:, None], ts[None, :])
    return float(np.min(r)), float(np.max(r))


@dataclass
class ConditionCheck:
    name: str
    passed: bool
    worst_margin: float
    witness: dict = field(default_factory=dict)


@dataclass
class StructureReport:
    family: str
    checks: list
    all_passed: bool

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _worst(name, margins, xs, ts, tol):
    flat = np.argmin(margins)
    i, j = np.unravel_index(flat, margins.shape)
    m = float(margins[i, j])
    return ConditionCheck(name, m >= -tol, m,
                          {"x": float(xs[i]), "t": float(ts[j])})


def check_structure(family, x_samples=None, t_samples=None, tol=1e-8,
                    delta2_rel_tol=1e-9) -> StructureReport:
    """Sampled certification of the structural conditions.

    Checks monotone odd phi, Phi(x,0)=0 with Phi positive nondecreasing, the
    doubling bound Phi(x,2t) <= 2^{phi_sup} Phi(x,t) with the explicit
    constant, convexity of t -> Phi(x,sqrt(t)) through second differences,
    and the power-law lower bound M_lower |t|^{p(x)} <= Phi(x,t).  Failures
    populate the report with located witnesses; nothing raises.
    """
    xs = _as_array(x_samples) if x_samples is not None else _x_samples(family)
    ts = _as_array(t_samples) if t_samples is not None else np.geomspace(1e-4, 1e3, 160)
    checks = []

    # oddness: phi(x,-t) = -phi(x,t) exactly
    phi_p = np.asarray(family.phi(xs[:, None], ts[None, :]))
    phi_m = np.asarray(family.phi(xs[:, None], -ts[None, :]))
    checks.append(_worst("phi_odd", -np.abs(phi_p + phi_m), xs, ts, tol))

    # monotonicity of phi across a symmetric grid through 0
    t_sym = np.concatenate([-ts[::-1], [0.0], ts])
    phi_sym = np.asarray(family.phi(xs[:, None], t_sym[None, :]))
    diffs = np.diff(phi_sym, axis=1)
    checks.append(_worst("phi_monotone", diffs, xs, t_sym[:-1], tol))

    # Phi at zero, positivity, monotonicity
    Phi0 = np.asarray(family.Phi(xs, np.zeros_like(xs)))
    iz = int(np.argmax(np.abs(Phi0)))
    m0 = -float(np.abs(Phi0[iz]))
    checks.append(ConditionCheck("Phi_zero", m0 >= -tol, m0, {"x": float(xs[iz])}))

    Phi = np.asarray(family.Phi(xs[:, None], ts[None, :]))
    checks.append(_worst("Phi_positive", Phi, xs, ts, tol))
    checks.append(_worst("Phi_monotone", np.diff(Phi, axis=1), xs, ts[:-1], tol))

    # doubling condition with the explicit constant 2^{phi_sup}
    Phi2 = np.asarray(family.Phi(xs[:, None], 2.0 * ts[None, :]))
    bound = 2.0 ** family.phi_sup * Phi
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = (bound - Phi2) / np.where(bound > 0, bound, 1.0)
    checks.append(_worst("delta2_explicit_constant", rel, xs, ts, delta2_rel_tol))

    # convexity of tau -> Phi(x, sqrt(tau)): nonnegative second differences
    tau = np.linspace(0.0, float(np.max(ts)) ** 2, 201)
    psi = np.asarray(family.Phi(xs[:, None], np.sqrt(tau)[None, :]))
    d2 = psi[:, 2:] - 2.0 * psi[:, 1:-1] + psi[:, :-2]
    scale = 1.0 + np.abs(psi[:, 1:-1])
    checks.append(_worst("sqrt_convexity", d2 / scale, xs, tau[1:-1], tol))

    # growth bound M_lower * t^{p(x)} <= Phi(x,t)
    if family.p is not None:
        p = family.p(xs)[:, None]
        lower = family.M_lower * ts[None, :] ** p
        margin = (Phi - lower) / (1.0 + np.abs(Phi))
        checks.append(_worst("growth_lower", margin, xs, ts, tol))
        if family.family_id == "log-quotient":
            # the companion bound Phi >= t^{p(x)-1} printed for this family
            lower1 = ts[None, :] ** (p - 1.0)
            margin1 = (Phi - lower1) / (1.0 + np.abs(Phi))
            checks.append(_worst("growth_lower_shifted", margin1, xs, ts, tol))

    return StructureReport(family.label, checks, all(c.passed for c in checks))


# ---------------------------------------------------------------------------
# descriptor serialization
# ---------------------------------------------------------------------------

def _fmt_field(family, name):
    return "estimate" if name in family.estimated else repr(getattr(family, name))


def family_to_text(family: MusielakFamily) -> str:
    """Serialize a standard family descriptor to key-value text."""
    if family.family_id == "custom":
        raise InputError("custom families (callable-backed) are not serializable")
    lines = [f"family = {family.family_id}"]
    spec = family.p.to_spec()
    lines.append(f"p.kind = {spec['kind']}")
    if spec["kind"] == "tabulated":
        lines.append("p.x1 = " + " ".join(repr(v) for v in spec["x1"]))
        lines.append("p.values = " + " ".join(repr(v) for v in spec["values"]))
    else:
        lines.append("p.coeffs = " + " ".join(repr(v) for v in spec["coeffs"]))
        lines.append("p.x1_range = " + " ".join(repr(v) for v in spec["x1_range"]))
    if family.alpha is not None:
        lines.append(f"alpha = {family.alpha!r}")
    for name in ("phi0", "phi_sup", "M_lower"):
        lines.append(f"{name} = {_fmt_field(family, name)}")
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> MusielakFamily:
    """Rebuild a family from key-value text produced by family_to_text."""
    from .config import parse_kv_text  # local import; config also imports us
    kv = parse_kv_text(text)
    return family_from_kv(kv)


def family_from_kv(kv: dict, prefix: str = "") -> MusielakFamily:
    def get(key, default=None):
        return kv.get(prefix + key, default)

    fid = get("family")
    if fid is None:
        raise InputError("family descriptor missing 'family' key")
    kind = get("p.kind")
    if kind is None:
        raise InputError("family descriptor missing 'p.kind'")
    if kind == "tabulated":
        p = ExponentField.tabulated(
            np.array([float(v) for v in get("p.x1", "").split()]),
            np.array([float(v) for v in get("p.values", "").split()]))
    else:
        coeffs = [float(v) for v in get("p.coeffs", "").split()]
        if kind == "constant":
            p = ExponentField.constant(coeffs[0])
        elif kind == "affine":
            rng = [float(v) for v in get("p.x1_range", "0 1").split()]
            p = ExponentField.affine(coeffs[0], coeffs[1], tuple(rng))
        else:
            raise InputError(f"unknown exponent kind {kind!r}")

    if fid == "power":
        fam = power_family(p)
    elif fid == "log-quotient":
        fam = log_quotient_family(p)
    elif fid == "log-weight":
        alpha = get("alpha")
        if alpha is None:
            raise InputError("log-weight family needs 'alpha'")
        fam = log_weight_family(p, float(alpha))
    else:
        raise InputError(f"family id {fid!r} not loadable from text")

    # declared numeric values override; the word "estimate" keeps recomputed ones
    for name in ("phi0", "phi_sup", "M_lower"):
        raw = get(name)
        if raw is not None and raw != "estimate":
            setattr(fam, name, float(raw))
            fam.estimated = fam.estimated - {name}
    if not (1.0 < fam.phi0 <= fam.phi_sup):
        raise InputError("descriptor violates 1 < phi0 <= phi_sup")
    return fam
