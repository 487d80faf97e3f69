"""Piecewise closed form of the snowflake inner parallel volume.

For a filled snowflake with unit base chord, vol2 of the inner parallel
set at distance eps follows five regimes: saturation, two transition
windows with elementary closed forms (one of them through the corner
area gamma), and below 1/9 a lattice-periodic form

    u(alpha) * eps**(2 - delta) + v(alpha) * eps**2      (alpha < 1/2)
    utilde(alpha) * eps**(2 - delta) + v(alpha) * eps**2 (alpha >= 1/2)

where alpha is the fractional part of -log3(eps) and delta = log3(4).
The only non-elementary ingredient is gamma(eps) = vol2(K_-eps ∩ T) for
the corner triangle T, supplied by the certified engine in
kochspray.gamma, normally through a precomputed interpolation table.

Scaling note: gamma(eps) = gamma(3 eps)/9 holds for eps <= 1/27 (copies
of the corner geometry repeat at scale 1/3 only from there down), so
arguments at or below 1/27 are folded up into the table's core interval
(1/27, sqrt(3)/9] and arguments in (1/27, 1/9] are read directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gamma import (
    GAMMA_CORE_LO,
    GAMMA_MAX_AREA,
    GAMMA_SATURATION,
    TABLE_INTERP_SLACK,
    default_table_path,
    gamma_region_area,
    load_gamma_table,
)
from .ifs import CURVE_DIMENSION, SNOWFLAKE_AREA_FACTOR, SprayConfig

_SQRT3 = math.sqrt(3.0)
_LOG3 = math.log(3.0)

#: Case boundaries of the piecewise volume formula (unit base chord).
BREAKPOINTS = (1.0 / 3.0, GAMMA_SATURATION, 1.0 / 9.0)


@dataclass(frozen=True)
class FractionalPart:
    """-log3(eps) split into integer level and fractional part alpha."""

    alpha: float
    level: int

    @classmethod
    def from_radius(cls, eps: float) -> "FractionalPart":
        if eps <= 0.0:
            raise ValueError("radius must be positive, got %r" % (eps,))
        x = -math.log(eps) / _LOG3
        n = math.floor(x)
        a = x - n
        if a >= 1.0:
            n += 1
            a -= 1.0
        return cls(alpha=a, level=int(n))


class SnowflakeVolumeModel:
    """Evaluator for gamma and the piecewise parallel-volume formula.

    The default mode reads gamma off a certified interpolation table
    shipped with the package (monotone cubic through engine nodes, with
    a flat per-evaluation error bound tau_gamma = worst node bound plus
    a dense-audit slack for between-node interpolation error).
    mode="direct" re-runs the certified subdivision engine on every
    call instead; it is two to four orders of magnitude slower and
    exists for cross-validation.
    """

    breakpoints = BREAKPOINTS

    def __init__(self, gamma_table=None, table_path=None, mode="table",
                 direct_tol=1e-9):
        if mode not in ("table", "direct"):
            raise ValueError("mode must be 'table' or 'direct'")
        self.mode = mode
        self.direct_tol = float(direct_tol)
        if gamma_table is None and mode == "table":
            gamma_table = load_gamma_table(table_path or default_table_path())
        if gamma_table is None:
            self.gamma_table = ()
            self._interp = None
            self.tau_gamma = self.direct_tol
            return
        self.gamma_table = tuple(gamma_table)
        eps = np.array([row[0] for row in self.gamma_table])
        vals = np.array([row[1] for row in self.gamma_table])
        errs = np.array([row[2] for row in self.gamma_table])
        if eps.shape[0] < 4:
            raise ValueError("gamma table needs at least 4 nodes")
        if np.any(np.diff(eps) <= 0.0):
            raise ValueError("gamma table abscissae must be increasing")
        if eps[0] > GAMMA_CORE_LO * (1.0 + 1e-12):
            raise ValueError("gamma table must reach down to 1/27")
        if abs(eps[-1] - GAMMA_SATURATION) > 1e-14:
            raise ValueError("gamma table must end at sqrt(3)/9")
        if np.any(vals <= 0.0) or np.any(vals > GAMMA_MAX_AREA * (1 + 1e-12)):
            raise ValueError("gamma table values outside (0, sqrt(3)/108]")
        if abs(vals[-1] - GAMMA_MAX_AREA) > max(errs[-1], 1e-13):
            raise ValueError("gamma table endpoint disagrees with saturation")
        from scipy.interpolate import PchipInterpolator

        self._interp = PchipInterpolator(eps, vals)
        self.tau_gamma = float(errs.max()) + TABLE_INTERP_SLACK

    def gamma(self, eps: float) -> tuple[float, float]:
        """Certified (value, error_bound) for the corner area at eps."""
        if eps <= 0.0:
            raise ValueError("radius must be positive, got %r" % (eps,))
        if eps >= GAMMA_SATURATION:
            return (GAMMA_MAX_AREA, 0.0)
        factor = 1.0
        e = eps
        while e <= GAMMA_CORE_LO:
            e *= 3.0
            factor /= 9.0
        if self.mode == "direct":
            val, err = gamma_region_area(e, tol=self.direct_tol)
        else:
            val = float(self._interp(e))
            err = self.tau_gamma
        return (val * factor, err * factor)

    def uv(self, t: float):
        """((u, utilde, v), (their error bounds)) at t in [0, 1).

        u is only real for t <= log3(2) (its square root and arcsine
        leave their domains beyond that); outside it is returned as nan.
        The piecewise volume only ever uses u on [0, 1/2).
        """
        if not 0.0 <= t < 1.0:
            raise ValueError("t must lie in [0, 1), got %r" % (t,))
        g2, e2 = self.gamma(3.0 ** (-t - 2.0))
        g1, e1 = self.gamma(3.0 ** (-t - 1.0))
        p94 = 2.25 ** t
        p14 = 0.25 ** t
        radicand = 3.0 ** (-2.0 * t) - 0.25
        if radicand >= 0.0:
            u = p94 * (
                21.0 * _SQRT3 / 40.0 + 0.75 * math.sqrt(radicand) + 81.0 * g2
            ) + p14 * (1.5 * math.asin(0.5 * 3.0 ** t) - math.pi / 6.0)
            u_err = p94 * 81.0 * e2
        else:
            u = math.nan
            u_err = math.nan
        utilde = p94 * (
            2.0 * _SQRT3 / 5.0 + 27.0 * g1 + 81.0 * g2
        ) + p14 * (math.pi / 3.0)
        utilde_err = p94 * (27.0 * e1 + 81.0 * e2)
        v = -math.pi / 3.0 - 324.0 * 9.0 ** t * g2
        v_err = 324.0 * 9.0 ** t * e2
        return (u, utilde, v), (u_err, utilde_err, v_err)

    def parallel_volume(self, eps: float, base_length: float = 1.0):
        """(vol2 of the inner parallel set, error bound), scaled by b**2."""
        if eps <= 0.0 or base_length <= 0.0:
            raise ValueError("radius and base length must be positive")
        e = eps / base_length
        s = base_length * base_length
        if e > 1.0 / 3.0:
            return (s * SNOWFLAKE_AREA_FACTOR, 0.0)
        if e > GAMMA_SATURATION:
            val = (
                7.0 * _SQRT3 / 30.0
                + math.sqrt(e * e - 1.0 / 36.0)
                + 6.0 * e * e * math.asin(1.0 / (6.0 * e))
                - math.pi * e * e
            )
            return (s * val, 0.0)
        if e > 1.0 / 9.0:
            g, ge = self.gamma(e)
            val = 8.0 * _SQRT3 / 45.0 + math.pi * e * e + 12.0 * g
            return (s * val, s * 12.0 * ge)
        alpha = FractionalPart.from_radius(e).alpha
        (u, utilde, v), (ue, ute, ve) = self.uv(alpha)
        lead = e ** (2.0 - CURVE_DIMENSION)
        quad = e * e
        if alpha < 0.5:
            return (s * (u * lead + v * quad), s * (ue * lead + ve * quad))
        return (s * (utilde * lead + v * quad), s * (ute * lead + ve * quad))


_DEFAULT_MODEL: SnowflakeVolumeModel | None = None


def default_model() -> SnowflakeVolumeModel:
    """The shared table-backed model (built lazily from packaged data)."""
    global _DEFAULT_MODEL
    if _DEFAULT_MODEL is None:
        _DEFAULT_MODEL = SnowflakeVolumeModel()
    return _DEFAULT_MODEL


def gamma_volume(eps: float, model: SnowflakeVolumeModel | None = None):
    """Certified (area, error_bound) of the eroded corner triangle."""
    return (model or default_model()).gamma(eps)


def uv_functions(t: float, model: SnowflakeVolumeModel | None = None):
    """The triple (u(t), utilde(t), v(t)); see SnowflakeVolumeModel.uv."""
    return (model or default_model()).uv(t)[0]


def uv_function_bounds(t: float, model: SnowflakeVolumeModel | None = None):
    """Error bounds matching uv_functions, propagated from gamma."""
    return (model or default_model()).uv(t)[1]


def snowflake_parallel_volume(
    eps: float,
    base_length: float = 1.0,
    model: SnowflakeVolumeModel | None = None,
):
    """(vol2 of the snowflake inner parallel set, error bound)."""
    return (model or default_model()).parallel_volume(eps, base_length)


def generator_parallel_volume(
    config,
    eps: float,
    model: SnowflakeVolumeModel | None = None,
):
    """Inner parallel volume of the whole generator (all components).

    The generator is one unit snowflake plus k1 + k2 smaller ones; its
    inner parallel set decomposes disjointly, so values and bounds add.
    """
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    if eps <= 0.0:
        raise ValueError("radius must be positive, got %r" % (eps,))
    m = model or default_model()
    total = 0.0
    bound = 0.0
    for b in cfg.component_base_lengths:
        val, err = m.parallel_volume(eps, base_length=b)
        total += val
        bound += err
    return (total, bound)
