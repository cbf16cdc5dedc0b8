"""Key-value text configs for families, reactions, grids, and energy setups.

The format is one ``key = value`` pair per line, ``#`` comments, whitespace
insensitive, locale-independent decimal numbers.  Nested objects use dotted
prefixes, e.g. an energy config contains ``family.family``, ``family.p.kind``,
``reaction.example``, ``grid.dim``, ``lambda``, ``u0.kind``.  A family block
may instead point at a standalone descriptor file via ``family.file``.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .exponents import ExponentField
from .grid import DomainGrid, GridFunction, bump_function, load_function, make_grid
from .energy import (EnergyConfig, power_log_reaction, power_reaction,
                     power_sin_reaction, ReactionFamily)

__all__ = [
    "parse_kv_text", "read_kv_file", "exponent_from_kv", "reaction_from_kv",
    "grid_from_kv", "load_energy_setup", "initial_guess_from_kv",
]


def parse_kv_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def read_kv_file(path) -> dict:
    try:
        with open(path) as fh:
            return parse_kv_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc


def exponent_from_kv(kv: dict, prefix: str) -> ExponentField:
    kind = kv.get(prefix + "kind")
    if kind is None:
        raise InputError(f"missing '{prefix}kind'")
    if kind == "tabulated":
        return ExponentField.tabulated(
            np.array([float(v) for v in kv.get(prefix + "x1", "").split()]),
            np.array([float(v) for v in kv.get(prefix + "values", "").split()]))
    coeffs = [float(v) for v in kv.get(prefix + "coeffs", "").split()]
    if not coeffs:
        raise InputError(f"missing '{prefix}coeffs'")
    if kind == "constant":
        return ExponentField.constant(coeffs[0])
    if kind == "affine":
        rng = [float(v) for v in kv.get(prefix + "x1_range", "0 1").split()]
        return ExponentField.affine(coeffs[0], coeffs[1], tuple(rng))
    raise InputError(f"unknown exponent kind {kind!r}")


def reaction_from_kv(kv: dict, prefix: str = "reaction.") -> ReactionFamily:
    example = kv.get(prefix + "example")
    if example is None:
        raise InputError(f"missing '{prefix}example'")
    q = exponent_from_kv(kv, prefix + "q.")
    makers = {"power": power_reaction, "power-log": power_log_reaction,
              "power-sin": power_sin_reaction}
    if example not in makers:
        raise InputError(f"unknown reaction example {example!r}")
    return makers[example](q)


def grid_from_kv(kv: dict, prefix: str = "grid.") -> DomainGrid:
    try:
        dim = int(kv[prefix + "dim"])
        ext = [float(v) for v in kv[prefix + "extents"].split()]
        nodes = [int(v) for v in kv[prefix + "nodes"].split()]
    except KeyError as exc:
        raise InputError(f"missing grid key {exc}") from exc
    except ValueError as exc:
        raise InputError(f"malformed grid values: {exc}") from exc
    if len(ext) != 2 * dim:
        raise InputError("grid.extents must list lo hi per axis")
    extents = [(ext[2 * k], ext[2 * k + 1]) for k in range(dim)]
    return make_grid(dim, extents, nodes)


def family_from_kv_or_file(kv: dict, prefix: str = "family."):
    from .families import family_from_kv
    path = kv.get(prefix + "file")
    if path is not None:
        return family_from_kv(read_kv_file(path))
    return family_from_kv(kv, prefix=prefix)


def initial_guess_from_kv(kv: dict, grid: DomainGrid,
                          prefix: str = "u0.") -> GridFunction:
    kind = kv.get(prefix + "kind", "zero")
    if kind == "zero":
        return GridFunction.constant(grid, 0.0)
    if kind == "constant":
        return GridFunction.constant(grid, float(kv.get(prefix + "value", "1")))
    if kind == "bump":
        return float(kv.get(prefix + "value", "1")) * bump_function(grid)
    if kind == "file":
        path = kv.get(prefix + "path")
        if path is None:
            raise InputError("u0.kind = file needs 'u0.path'")
        u = load_function(path)
        if u.grid.shape != grid.shape or u.grid.extents != grid.extents:
            raise InputError("u0 file grid does not match the configured grid")
        return u
    raise InputError(f"unknown u0 kind {kind!r}")


def load_energy_setup(path):
    """Read an energy config file -> (EnergyConfig, grid, initial guess)."""
    kv = read_kv_file(path)
    family = family_from_kv_or_file(kv)
    reaction = reaction_from_kv(kv)
    if "lambda" not in kv:
        raise InputError("energy config missing 'lambda'")
    lam = float(kv["lambda"])
    grid = grid_from_kv(kv)
    u0 = initial_guess_from_kv(kv, grid)
    return EnergyConfig(family, reaction, lam), grid, u0, kv
