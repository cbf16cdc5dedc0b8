"""Uniform grids on an interval or rectangle, nodal fields, and quadrature.

The domain is discretized with evenly spaced nodes including the endpoints.
Integrals use the trapezoid rule (exact for affine data in 1d).  The discrete
gradient uses central differences with reflected ghost nodes, so the normal
derivative vanishes identically at boundary nodes -- that is how the
zero-flux boundary condition enters every weak form built on top of this
module.  The adjoint of the gradient is provided explicitly so residual
assembly is an exact transpose of the same stencils.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "DomainGrid", "GridFunction", "make_grid", "quad_weights", "integrate",
    "gradient", "gradient_magnitude", "gradient_adjoint", "random_function",
    "bump_function", "save_function", "load_function",
]


@dataclass(frozen=True)
class DomainGrid:
    dim: int
    extents: tuple          # ((lo, hi), ...) per axis
    nodes: tuple            # node count per axis, each >= 3
    spacing: tuple
    measure: float

    @property
    def shape(self):
        return self.nodes

    @property
    def size(self):
        n = 1
        for k in self.nodes:
            n *= k
        return n

    def axis_coords(self, axis: int) -> np.ndarray:
        lo, hi = self.extents[axis]
        return np.linspace(lo, hi, self.nodes[axis])

    def coords_first(self) -> np.ndarray:
        """First-coordinate value at every node, shaped like nodal fields."""
        x1 = self.axis_coords(0)
        if self.dim == 1:
            return x1
        return np.broadcast_to(x1[:, None], self.shape).copy()


def make_grid(dim: int, extents, nodes) -> DomainGrid:
    """Build a grid; extents per axis as (lo, hi), nodes per axis >= 3."""
    if dim not in (1, 2):
        raise InputError("dim must be 1 or 2")
    ext = np.atleast_2d(np.asarray(extents, dtype=float))
    if ext.shape != (dim, 2):
        raise InputError(f"extents must be {dim} (lo, hi) pairs")
    nn = np.atleast_1d(np.asarray(nodes, dtype=int))
    if nn.shape != (dim,):
        raise InputError(f"nodes must give {dim} per-axis counts")
    if np.any(nn < 3):
        raise InputError("need at least 3 nodes per axis")
    if np.any(ext[:, 1] <= ext[:, 0]):
        raise InputError("degenerate extents: need hi > lo on every axis")
    spacing = tuple(float(ext[k, 1] - ext[k, 0]) / (nn[k] - 1) for k in range(dim))
    measure = float(np.prod(ext[:, 1] - ext[:, 0]))
    extents = tuple((float(lo), float(hi)) for lo, hi in ext)
    return DomainGrid(dim, extents, tuple(map(int, nn)), spacing, measure)


class GridFunction:
    """A real nodal field on a DomainGrid; values are frozen after creation."""

    def __init__(self, grid: DomainGrid, values):
        values = np.array(values, dtype=float)
        if values.shape != grid.shape:
            values = values.reshape(grid.shape)
        if not np.all(np.isfinite(values)):
            raise InputError("grid function values must be finite")
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    @staticmethod
    def constant(grid, c) -> "GridFunction":
        return GridFunction(grid, np.full(grid.shape, float(c)))

    @staticmethod
    def from_callable(grid, fn) -> "GridFunction":
        if grid.dim == 1:
            return GridFunction(grid, fn(grid.axis_coords(0)))
        x = grid.axis_coords(0)[:, None]
        y = grid.axis_coords(1)[None, :]
        return GridFunction(grid, fn(x, y))

    def copy_with(self, values) -> "GridFunction":
        return GridFunction(self.grid, values)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __add__(self, other):
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return GridFunction(self.grid, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_weights_cache: dict = {}


def quad_weights(grid: DomainGrid) -> np.ndarray:
    """Trapezoid weights per node (product form in 2d)."""
    key = (grid.extents, grid.nodes)
    w = _weights_cache.get(key)
    if w is None:
        per_axis = []
        for k in range(grid.dim):
            wk = np.full(grid.nodes[k], grid.spacing[k])
            wk[0] *= 0.5
            wk[-1] *= 0.5
            per_axis.append(wk)
        w = per_axis[0] if grid.dim == 1 else np.outer(per_axis[0], per_axis[1])
        w.setflags(write=False)
        _weights_cache[key] = w
    return w


def integrate(f: GridFunction) -> float:
    """Trapezoid-rule integral over the domain."""
    return float(np.sum(quad_weights(f.grid) * f.values))


# ---------------------------------------------------------------------------
# gradient with reflected ghosts and its exact adjoint
# ---------------------------------------------------------------------------

def _diff_axis(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    pad = [(0, 0)] * v.ndim
    pad[axis] = (1, 1)
    vp = np.pad(v, pad, mode="reflect")
    sl_hi = [slice(None)] * v.ndim
    sl_lo = [slice(None)] * v.ndim
    sl_hi[axis] = slice(2, None)
    sl_lo[axis] = slice(None, -2)
    return (vp[tuple(sl_hi)] - vp[tuple(sl_lo)]) / (2.0 * h)


def _diff_axis_adjoint(y: np.ndarray, h: float, axis: int) -> np.ndarray:
    # reflection makes the boundary rows of the difference operator zero,
    # so the adjoint zeroes them before applying the transposed stencil
    z = np.array(y)
    sl = [slice(None)] * z.ndim
    sl[axis] = 0
    z[tuple(sl)] = 0.0
    sl[axis] = -1
    z[tuple(sl)] = 0.0
    pad = [(0, 0)] * z.ndim
    pad[axis] = (1, 1)
    zp = np.pad(z, pad, mode="constant")
    sl_hi = [slice(None)] * z.ndim
    sl_lo = [slice(None)] * z.ndim
    sl_hi[axis] = slice(2, None)
    sl_lo[axis] = slice(None, -2)
    return (zp[tuple(sl_lo)] - zp[tuple(sl_hi)]) / (2.0 * h)


def gradient(u: GridFunction) -> np.ndarray:
    """Per-component discrete gradient, shape (dim,) + grid.shape.

    Central differences in the interior; at boundary nodes the ghost value is
    the reflected interior neighbour, so the normal component is exactly 0.
    """
    g = np.empty((u.grid.dim,) + u.grid.shape)
    for k in range(u.grid.dim):
        g[k] = _diff_axis(u.values, u.grid.spacing[k], k)
    return g


def gradient_magnitude(u: GridFunction) -> np.ndarray:
    g = gradient(u)
    return np.sqrt(np.sum(g * g, axis=0))


def gradient_adjoint(fields: np.ndarray, grid: DomainGrid) -> np.ndarray:
    """Adjoint of `gradient`: sum_k D_k^T fields[k], same stencils transposed."""
    out = np.zeros(grid.shape)
    for k in range(grid.dim):
        out += _diff_axis_adjoint(fields[k], grid.spacing[k], k)
    return out


# ---------------------------------------------------------------------------
# synthetic fields
# ---------------------------------------------------------------------------

def random_function(grid: DomainGrid, seed: int, amplitude: float,
                    smoothness: int = 2) -> GridFunction:
    """Deterministic smoothed noise with sup-norm exactly `amplitude`.

    `smoothness` counts the passes of a (1,2,1)/4 moving average applied
    along each axis (with reflected ends, keeping boundary flatness mild).
    """
    if not amplitude > 0.0:
        raise InputError("amplitude must be positive")
    if smoothness < 0:
        raise InputError("smoothness must be >= 0")
    rng = np.random.default_rng(seed)
    v = rng.uniform(-1.0, 1.0, size=grid.shape)
    for _ in range(smoothness):
        for ax in range(grid.dim):
            pad = [(0, 0)] * grid.dim
            pad[ax] = (1, 1)
            vp = np.pad(v, pad, mode="reflect")
            sl_hi = [slice(None)] * grid.dim
            sl_lo = [slice(None)] * grid.dim
            sl_hi[ax] = slice(2, None)
            sl_lo[ax] = slice(None, -2)
            v = 0.25 * (vp[tuple(sl_lo)] + 2.0 * v + vp[tuple(sl_hi)])
    v *= amplitude / np.max(np.abs(v))
    return GridFunction(grid, v)


def bump_function(grid: DomainGrid, amplitude: float = 1.0,
                  width_fraction: float = 0.8) -> GridFunction:
    """Nonnegative cos^2 bump supported strictly inside the domain."""
    if not 0.0 < width_fraction < 1.0:
        raise InputError("width_fraction must lie in (0, 1)")

    def bump1d(x, lo, hi):
        mid = 0.5 * (lo + hi)
        half = 0.5 * width_fraction * (hi - lo)
        xi = (x - mid) / (2.0 * half)
        return np.where(np.abs(xi) < 0.5, np.cos(np.pi * xi) ** 2, 0.0)

    if grid.dim == 1:
        lo, hi = grid.extents[0]
        vals = bump1d(grid.axis_coords(0), lo, hi)
    else:
        (lo1, hi1), (lo2, hi2) = grid.extents
        vals = (bump1d(grid.axis_coords(0), lo1, hi1)[:, None]
                * bump1d(grid.axis_coords(1), lo2, hi2)[None, :])
    return GridFunction(grid, amplitude * vals)


# ---------------------------------------------------------------------------
# solution files: "dim n1 [n2] lo1 hi1 [lo2 hi2]" then nodal values row-major
# ---------------------------------------------------------------------------

def save_function(u: GridFunction, path) -> None:
    g = u.grid
    header = [str(g.dim)] + [str(n) for n in g.nodes]
    for lo, hi in g.extents:
        header += [repr(lo), repr(hi)]
    with open(path, "w") as fh:
        fh.write(" ".join(header) + "\n")
        for v in u.values.ravel(order="C"):
            fh.write(repr(float(v)) + "\n")


def load_function(path) -> GridFunction:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise InputError(f"empty solution file: {path}")
    head = lines[0].split()
    try:
        dim = int(head[0])
        nodes = [int(v) for v in head[1:1 + dim]]
        rest = [float(v) for v in head[1 + dim:]]
        extents = [(rest[2 * k], rest[2 * k + 1]) for k in range(dim)]
        values = np.array([float(v) for v in lines[1:]])
    except (ValueError, IndexError) as exc:
        raise InputError(f"malformed solution file {path}: {exc}") from exc
    grid = make_grid(dim, extents, nodes)
    if values.size != grid.size:
        raise InputError(
            f"solution file {path} has {values.size} values, grid needs {grid.size}")
    return GridFunction(grid, values.reshape(grid.shape))
