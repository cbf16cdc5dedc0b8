"""Reaction nonlinearities, the energy functional, and its discrete gradient.

The energy of a nodal field u at parameter lam > 0 is

    J(u) = integral [ Phi(x,|grad u|) + Phi(x,|u|) ]  -  lam * integral G(x,u)

with directional derivative

    <J'(u), v> = integral a(x,|grad u|) grad u . grad v
               + integral a(x,|u|) u v  -  lam * integral g(x,u) v,

where a(x,s) s = phi(x,s) (and a(x,0)*0 := 0, the removable singularity).
All integrals use the grid module's trapezoid weights and the gradient uses
the reflected-ghost stencils, so ``directional_derivative`` is the *exact*
derivative of the discrete ``energy`` -- finite differences of J reproduce
it to rounding.  The nodal residual divides each partial derivative by its
quadrature weight, making the stationarity defect comparable across grids;
its zeros are the discrete weak solutions.

Three reaction families are built in (q = q(x) is an exponent field):

* ``power``      g = q|t|^{q-2} t                    G = |t|^q          (q >= 2)
* ``power-log``  G = |t|^q + log(1+t^2)|t|^{q-2},    g = dG/dt          (q >= 4)
* ``power-sin``  G = |t|^q + sin(sin t)|t|^{q-1},    g = dG/dt          (q >= 3)

Envelope constants C0, C1, C2 with |g| <= C0|t|^{q-1} and
C1|t|^q <= G <= C2|t|^q are analytic for ``power`` and certified by dense
sampling over |t| in [1e-3, 10] for the other two (recorded on the
descriptor; the sin family genuinely degenerates as t -> 0^- so a global
positive C1 does not exist for it).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .exponents import ExponentField
from .grid import GridFunction, gradient, gradient_adjoint, quad_weights

logger = logging.getLogger(__name__)

__all__ = [
    "ReactionFamily", "power_reaction", "power_log_reaction", "power_sin_reaction",
    "EnergyConfig", "energy", "directional_derivative", "residual",
    "CERTIFICATION_T_RANGE",
]

# |t| window over which the numeric envelope constants are certified
CERTIFICATION_T_RANGE = (1e-3, 10.0)


@dataclass
class ReactionFamily:
    """A nonlinearity g with primitive G and growth-envelope constants."""

    example_id: str
    q: ExponentField
    C0: float
    C1: float
    C2: float

    def g(self, x1, t):
        x1 = np.asarray(x1, dtype=float)
        t = np.asarray(t, dtype=float)
        q = self.q(x1)
        at = np.abs(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            lead = q * at ** (q - 2.0) * t
            if self.example_id == "power":
                out = lead
            elif self.example_id == "power-log":
                out = (lead
                       + (q - 2.0) * np.log1p(t * t) * at ** (q - 4.0) * t
                       + 2.0 * t / (1.0 + t * t) * at ** (q - 2.0))
            else:  # power-sin
                st = np.sin(np.sin(t))
                out = (lead
                       + (q - 1.0) * st * at ** (q - 3.0) * t
                       + np.cos(np.sin(t)) * np.cos(t) * at ** (q - 1.0))
        out = np.where(at == 0.0, 0.0, out)
        return float(out) if out.ndim == 0 else out

    def G(self, x1, t):
        x1 = np.asarray(x1, dtype=float)
        t = np.asarray(t, dtype=float)
        q = self.q(x1)
        at = np.abs(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = at ** q
            if self.example_id == "power-log":
                out = out + np.log1p(t * t) * at ** (q - 2.0)
            elif self.example_id == "power-sin":
                out = out + np.sin(np.sin(t)) * at ** (q - 1.0)
        out = np.where(at == 0.0, 0.0, out)
        return float(out) if out.ndim == 0 else out


def _certify_constants(reaction: ReactionFamily) -> ReactionFamily:
    """Envelope constants by dense sampling over the certification window."""
    lo, hi = CERTIFICATION_T_RANGE
    t = np.concatenate([-np.geomspace(lo, hi, 2500)[::-1], np.geomspace(lo, hi, 2500)])
    xs = reaction.q.sample_points(21)
    tt = t[None, :]
    qq = reaction.q(xs)[:, None]
    at = np.abs(tt)
    ratio_G = np.asarray(reaction.G(xs[:, None], tt)) / at ** qq
    ratio_g = np.abs(np.asarray(reaction.g(xs[:, None], tt))) / at ** (qq - 1.0)
    pad = 1e-3
    reaction.C0 = float(np.max(ratio_g)) * (1.0 + pad)
    reaction.C1 = max(float(np.min(ratio_G)) * (1.0 - pad), 0.0)
    reaction.C2 = float(np.max(ratio_G)) * (1.0 + pad)
    return reaction


def power_reaction(q: ExponentField) -> ReactionFamily:
    if q.p_minus < 2.0:
        raise InputError("power reaction requires q(x) >= 2")
    return ReactionFamily("power", q, C0=q.p_plus, C1=1.0, C2=1.0)


def power_log_reaction(q: ExponentField) -> ReactionFamily:
    if q.p_minus < 4.0:
        raise InputError("power-log reaction requires q(x) >= 4")
    return _certify_constants(ReactionFamily("power-log", q, 0.0, 0.0, 0.0))


def power_sin_reaction(q: ExponentField) -> ReactionFamily:
    if q.p_minus < 3.0:
        raise InputError("power-sin reaction requires q(x) >= 3")
    return _certify_constants(ReactionFamily("power-sin", q, 0.0, 0.0, 0.0))


# ---------------------------------------------------------------------------
# energy functional
# ---------------------------------------------------------------------------

@dataclass
class EnergyConfig:
    """(family, reaction, lam) triple defining the energy functional."""

    family: object
    reaction: ReactionFamily
    lam: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise InputError("lam must be positive")

    def check_subcritical(self, grid) -> None:
        # the q+ < N p- / (N - p-) restriction is embedding-driven and only
        # meaningful from dimension 3 on; desk-scale grids are 1d/2d
        if grid.dim < 3:
            logger.debug("subcritical exponent check skipped (dim=%d < 3)", grid.dim)


def _a_times(family, x1, mag, vec):
    """a(x,mag) * vec with a(x,s) = phi(x,s)/s and a(x,0)*0 := 0."""
    safe = np.where(mag > 0.0, mag, 1.0)
    coeff = np.where(mag > 0.0, np.asarray(family.phi(x1, safe)) / safe, 0.0)
    return coeff * vec


def energy(config: EnergyConfig, u: GridFunction) -> float:
    """J(u); equals 0 at u = 0."""
    from .spaces import sobolev_modular
    w = quad_weights(u.grid)
    x1 = u.grid.coords_first()
    reaction_term = float(np.sum(w * np.asarray(config.reaction.G(x1, u.values))))
    return sobolev_modular(config.family, u) - config.lam * reaction_term


def directional_derivative(config: EnergyConfig, u: GridFunction,
                           v: GridFunction) -> float:
    """<J'(u), v> with the same stencils and weights as `energy`."""
    fam = config.family
    grid = u.grid
    w = quad_weights(grid)
    x1 = grid.coords_first()
    gu = gradient(u)
    gv = gradient(v)
    gmag = np.sqrt(np.sum(gu * gu, axis=0))
    grad_term = np.sum(_a_times(fam, x1, gmag, gu) * gv, axis=0)
    # a(x,|u|) u = phi(x,u) by oddness
    mass_term = np.asarray(fam.phi(x1, u.values)) * v.values
    react_term = np.asarray(config.reaction.g(x1, u.values)) * v.values
    return float(np.sum(w * (grad_term + mass_term - config.lam * react_term)))


def residual(config: EnergyConfig, u: GridFunction) -> GridFunction:
    """Nodal weak-form defect r with r_i = <J'(u), e_i> / w_i.

    Assembled through the exact adjoint of the gradient stencils, so that
    the weighted pairing of r with any v reproduces directional_derivative.
    """
    fam = config.family
    grid = u.grid
    w = quad_weights(grid)
    x1 = grid.coords_first()
    gu = gradient(u)
    gmag = np.sqrt(np.sum(gu * gu, axis=0))
    flux = _a_times(fam, x1, gmag, gu)
    grad_part = gradient_adjoint(w * flux, grid) / w
    point_part = np.asarray(fam.phi(x1, u.values)) \
        - config.lam * np.asarray(config.reaction.g(x1, u.values))
    return GridFunction(grid, grad_part + point_part)
