"""Asymptotic expansions for spray volumes and eigenvalue counts.

Volume side: for radii e**-(a*ell + beta) the inner parallel volume of
the spray expands into lattice-periodic terms at exponents 2, 2 - delta
(delta = log3(4)) and one term per pole z of the volume zeta function
(the kind-"P" zero set).  The two named coefficients come from the u/v
functions of the snowflake volume; the pole coefficients factor through
a transform L(z) of the single-generator volume.

Counting side: the eigenvalue counting function of the spray has Weyl
leading term vol2(spray)/(4*pi) * e**t and oscillatory corrections
indexed by the kind-"C" zero set; computable upper bounds for their
coefficients are assembled from a Faber-Krahn floor on the first
generator eigenvalue plus an explicit remainder envelope.

Sign conventions, the extra component factor at exponent 2, and the
Weyl-area/ell0/beta-supremum choices inside counting_bound are written
up in the repository's design notes and exercised by the test suite.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .ifs import (
    CURVE_DIMENSION,
    LATTICE_A,
    SNOWFLAKE_AREA_FACTOR,
    SprayConfig,
    build_ifs,
    exponent_histogram,
    generator_volume,
    spray_volume,
    word_multiplicities,
)
from .snowflake import SnowflakeVolumeModel, default_model
from .zeros import ZeroSet, zero_set

_A = LATTICE_A
_DELTA = CURVE_DIMENSION
_SQRT3 = math.sqrt(3.0)
_LOG3 = math.log(3.0)

#: Remainder envelope constants for the unit-snowflake counting function.
C_MINUS = -1481.0
C_PLUS = 281.5e3

#: First zero of the Bessel function J0, for the Faber-Krahn bound.
BESSEL_J01 = 2.404825557695773

#: Grid size for the beta supremum in counting-bound reports.
BETA_GRID = 64


def faber_krahn_ell0() -> int:
    """Largest integer ell with 3**ell below the eigenvalue floor.

    Faber-Krahn gives lambda_1 >= pi * j01**2 / area for any planar
    domain; applied to the largest generator component (the unit
    snowflake) it certifies that the generator counting function
    vanishes at e**(2*a*ell) for every ell up to the returned value.
    """
    lam_floor = math.pi * BESSEL_J01 ** 2 / SNOWFLAKE_AREA_FACTOR
    return int(math.floor(math.log(lam_floor) / _LOG3))


@dataclass(frozen=True)
class VolumeCoefficients:
    """All expansion coefficients at one lattice phase beta.

    poles holds (z, coefficient, error_bound) triples for the kind-"P"
    strip zeros; r2 and r2_delta are the coefficients at exponents 2
    and 2 - delta with gamma-propagated error bounds.

    r2_alt and r2_delta_alt multiply the alternating-in-ell companions
    (-1)**ell * e**(-2 a ell) and (-1)**ell * e**(-a ell (2 - delta)).
    They come from the source roots -1 and -1/2 of the geometric tails
    and are proportional to the difference of the two lattice phases,
    so they are numerically small; the headline expansion omits them
    (they decay faster than every retained pole term), but including
    them reconstructs the renewal sum exactly.
    """

    beta: float
    r2: float
    r2_error: float
    r2_delta: float
    r2_delta_error: float
    poles: tuple[tuple[complex, complex, float], ...]
    r2_alt: float = 0.0
    r2_alt_error: float = 0.0
    r2_delta_alt: float = 0.0
    r2_delta_alt_error: float = 0.0


class ExpansionModel:
    """Expansion data for one configuration.

    Bundles the zero sets, the snowflake volume model, the counting
    constants and the Faber-Krahn ell0 so the coefficient formulas can
    be evaluated repeatedly without re-deriving shared pieces.
    """

    def __init__(
        self,
        config,
        volume_model: SnowflakeVolumeModel | None = None,
        ell0: int | None = None,
        zero_tol: float = 1e-12,
    ):
        self.config = (
            config if isinstance(config, SprayConfig) else SprayConfig(*config)
        )
        self.volume_model = volume_model if volume_model is not None else default_model()
        k1, k2 = self.config.k1, self.config.k2
        self.histogram = exponent_histogram(k1, k2)
        self.zeros_c = zero_set(k1, k2, "C", tol=zero_tol)
        self.zeros_p = zero_set(k1, k2, "P", tol=zero_tol)
        self.delta = _DELTA
        self.c_minus = C_MINUS
        self.c_plus = C_PLUS
        # Component scaling multiplies the envelope by 4**-2 per k1 copy
        # and 4**-2.5 per k2 copy (the envelope constants scale with the
        # component similarity ratio to the power delta... the exponents
        # reduce to the exact dyadic factors 1/16 and 1/32).
        self.m_generator = max(abs(C_MINUS), C_PLUS) * (
            1.0 + k1 / 16.0 + k2 / 32.0
        )
        self.ell0 = faber_krahn_ell0() if ell0 is None else int(ell0)
        self.weyl_coefficient = spray_volume(self.config) / (4.0 * math.pi)

    # -- volume side --------------------------------------------------

    def l_transform(self, z: complex, beta: float) -> tuple[complex, float]:
        """The generator-volume transform L(z) at lattice phase beta.

        Returns (value, error bound); the error comes from the three
        gamma-backed ingredients (the direct corner term and the u/v
        tails).  Raises for resonant arguments where one of the
        geometric tails has a pole at z itself.
        """
        if not 0.0 <= beta < _A:
            raise ValueError("beta must lie in [0, a)")
        m = self.volume_model
        (u0, _ut0, v0), (u0e, _ut0e, v0e) = m.uv(beta / (2.0 * _A))
        (_u1, ut1, v1), (_u1e, ut1e, v1e) = m.uv((_A + beta) / (2.0 * _A))
        g3, g3e = m.gamma(math.exp(-beta) * 3.0 ** -1.5)

        eaz = cmath.exp(_A * z)
        e2az = eaz * eaz
        e3az = e2az * eaz
        em2b = math.exp(-2.0 * beta)
        q = cmath.exp(2.0 * _A * (z - 2.0))
        qd = cmath.exp(2.0 * _A * (z - 2.0 + _DELTA))
        sat = 1.0 - cmath.exp(-_A * z)
        if min(abs(1.0 - q), abs(1.0 - qd), abs(sat)) < 1e-9:
            raise ValueError(
                "resonant argument: a geometric tail of L has a pole at z=%r"
                % (z,)
            )

        block2 = (
            7.0 * _SQRT3 / 10.0
            + math.sqrt(em2b - 0.25)
            + 2.0 * em2b * math.asin(0.5 * math.exp(beta))
            - math.pi * em2b / 3.0
        )
        block3 = 8.0 * _SQRT3 / 45.0 + math.pi * em2b / 27.0 + 12.0 * g3
        ebd = math.exp(-beta * (2.0 - _DELTA))

        t4d = cmath.exp(4.0 * _A * (z - 2.0 + _DELTA)) / (1.0 - qd)
        t4 = cmath.exp(4.0 * _A * (z - 2.0)) / (1.0 - q)
        t5d = cmath.exp(5.0 * _A * (z - 2.0 + _DELTA)) / (1.0 - qd)
        t5 = cmath.exp(5.0 * _A * (z - 2.0)) / (1.0 - q)

        value = (
            (2.0 * _SQRT3 / 5.0) * eaz / sat
            + (e2az / 3.0) * block2
            + e3az * block3
            + u0 * ebd * t4d
            + v0 * em2b * t4
            + ut1 * ebd * t5d
            + v1 * em2b * t5
        )
        error = (
            abs(e3az) * 12.0 * g3e
            + u0e * ebd * abs(t4d)
            + v0e * em2b * abs(t4)
            + ut1e * ebd * abs(t5d)
            + v1e * em2b * abs(t5)
        )
        return value, error

    def volume_coefficients(self, beta: float) -> VolumeCoefficients:
        """Evaluate every expansion coefficient at lattice phase beta."""
        if not 0.0 <= beta < _A:
            raise ValueError("beta must lie in [0, a)")
        k1, k2 = self.config.k1, self.config.k2
        if 2 * k1 - k2 == 4:
            raise ValueError(
                "resonant configuration (%d, %d): the source root -1/2 of the"
                " oscillatory tail is also a volume zero, so the simple-pole"
                " coefficient formulas do not apply" % (k1, k2)
            )
        m = self.volume_model
        (u0, _ut0, v0), (u0e, _ut0e, v0e) = m.uv(beta / (2.0 * _A))
        (_u1, ut1, v1), (_u1e, ut1e, v1e) = m.uv((_A + beta) / (2.0 * _A))

        nmaps = 12 + 5 * (k1 + k2)
        comp2 = 1.0 + k1 + k2
        den2 = 2.0 * (1.0 - nmaps)
        r2 = comp2 * math.exp(-2.0 * beta) * (v0 + v1) / den2
        r2_err = comp2 * math.exp(-2.0 * beta) * (v0e + v1e) / abs(den2)

        s2nu = sum(cnt * 0.5 ** nu for nu, cnt in self.histogram.items())
        comp2d = 1.0 + k1 / 2.0 + k2 / 4.0
        den2d = 2.0 * (1.0 - s2nu)
        r2d = comp2d * math.exp(-beta * (2.0 - _DELTA)) * (u0 + ut1) / den2d
        r2d_err = (
            comp2d * math.exp(-beta * (2.0 - _DELTA)) * (u0e + ut1e) / abs(den2d)
        )

        # Alternating companions from the source roots -1 and -1/2.
        comp2a = 1.0 - k1 + k2
        den2a = 2.0 * (1.0 - 5.0 * (k1 - k2))
        r2a = comp2a * math.exp(-2.0 * beta) * (v0 - v1) / den2a
        r2a_err = abs(comp2a) * math.exp(-2.0 * beta) * (v0e + v1e) / abs(den2a)

        s2alt = sum(cnt * (-0.5) ** nu for nu, cnt in self.histogram.items())
        comp2da = 1.0 - k1 / 2.0 + k2 / 4.0
        den2da = 2.0 * (1.0 - s2alt)
        r2da = comp2da * math.exp(-beta * (2.0 - _DELTA)) * (u0 - ut1) / den2da
        r2da_err = (
            abs(comp2da)
            * math.exp(-beta * (2.0 - _DELTA))
            * (u0e + ut1e)
            / abs(den2da)
        )

        poles = []
        for rec in self.zeros_p:
            y = rec.source_root
            lval, lerr = self.l_transform(rec.z, beta)
            dsum = sum(
                cnt * nu * y ** nu for nu, cnt in self.histogram.items()
            )
            comp = 1.0 + k1 * y + k2 * y * y
            poles.append(
                (rec.z, comp * lval / dsum, abs(comp) * lerr / abs(dsum))
            )
        return VolumeCoefficients(
            beta=beta,
            r2=r2,
            r2_error=r2_err,
            r2_delta=r2d,
            r2_delta_error=r2d_err,
            poles=tuple(poles),
            r2_alt=r2a,
            r2_alt_error=r2a_err,
            r2_delta_alt=r2da,
            r2_delta_alt_error=r2da_err,
        )

    def volume_expansion_terms(
        self, ell: int, beta: float, include_alternating: bool = False
    ):
        """Individual expansion terms as (exponent z, complex value)."""
        if ell != int(ell) or ell < 0:
            raise ValueError("ell must be a nonnegative integer")
        ell = int(ell)
        co = self.volume_coefficients(beta)
        terms = [
            (complex(2.0), complex(co.r2 * math.exp(-2.0 * _A * ell))),
            (
                complex(2.0 - _DELTA),
                complex(co.r2_delta * math.exp(-_A * ell * (2.0 - _DELTA))),
            ),
        ]
        for z, r, _err in co.poles:
            terms.append((z, r * cmath.exp(-_A * ell * z)))
        if include_alternating:
            sign = -1.0 if ell % 2 else 1.0
            period = math.pi / _A
            terms.append(
                (
                    complex(2.0, period),
                    complex(sign * co.r2_alt * math.exp(-2.0 * _A * ell)),
                )
            )
            terms.append(
                (
                    complex(2.0 - _DELTA, period),
                    complex(
                        sign
                        * co.r2_delta_alt
                        * math.exp(-_A * ell * (2.0 - _DELTA))
                    ),
                )
            )
        return terms

    def volume_expansion(
        self, ell: int, beta: float, include_alternating: bool = False
    ) -> float:
        """Predicted inner parallel volume at radius e**-(a*ell+beta).

        The default sums the headline expansion (exponents 2, 2-delta
        and the volume zeros).  include_alternating adds the two
        fast-decaying alternating companions, after which the result
        reproduces the exact renewal sum for every ell >= 2.
        """
        terms = self.volume_expansion_terms(ell, beta, include_alternating)
        total = sum(t for _z, t in terms)
        return total.real

    # -- counting side ------------------------------------------------

    def counting_bound(self, z: complex, beta: float | None = None) -> float:
        """Upper bound for the counting coefficient magnitude at z.

        z must be a kind-"C" strip zero with Re z < -delta/2.  With
        beta None the supremum over a BETA_GRID-point grid on [0, 2a)
        is returned, which is the convention used for table reports.
        """
        x = cmath.exp(2.0 * _A * z)
        residual = abs(
            sum(cnt * x ** nu for nu, cnt in self.histogram.items()) - 1.0
        )
        if residual > 1e-8:
            raise ValueError(
                "z is not a counting zero (residual %.3g)" % residual
            )
        if z.real >= -self.delta / 2.0:
            raise ValueError(
                "bound undefined for Re z >= -delta/2 (envelope diverges)"
            )
        if beta is None:
            grid = [2.0 * _A * i / BETA_GRID for i in range(BETA_GRID)]
            return max(self.counting_bound(z, b) for b in grid)
        if not 0.0 <= beta < 2.0 * _A:
            raise ValueError("beta must lie in [0, 2a)")

        denom = abs(
            sum(cnt * nu * x ** nu for nu, cnt in self.histogram.items())
        )
        area = generator_volume(self.config)
        weyl = (
            area
            / (4.0 * math.pi)
            * math.exp(beta)
            * abs(cmath.exp(2.0 * _A * self.ell0 * (z + 1.0)))
            / abs(1.0 - cmath.exp(2.0 * _A * (z + 1.0)))
        )
        envelope = (
            self.m_generator
            * math.exp(beta * self.delta / 2.0)
            / abs(1.0 - cmath.exp(2.0 * _A * (z + self.delta / 2.0)))
        )
        return (weyl + envelope) / denom

    def counting_bound_table(self) -> tuple[tuple[complex, float], ...]:
        """(zero, beta-supremum bound) for each admissible strip zero."""
        out = []
        for rec in self.zeros_c:
            if rec.z.real < -self.delta / 2.0 and rec.z.imag >= 0.0:
                out.append((rec.z, self.counting_bound(rec.z)))
        return tuple(out)


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def weyl_term(config) -> float:
    """Leading counting coefficient vol2(spray)/(4*pi)."""
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    return spray_volume(cfg) / (4.0 * math.pi)


def volume_coefficients(
    config, beta: float, model: SnowflakeVolumeModel | None = None
) -> VolumeCoefficients:
    return ExpansionModel(config, volume_model=model).volume_coefficients(beta)


def volume_expansion(
    config,
    ell: int,
    beta: float,
    model: SnowflakeVolumeModel | None = None,
    include_alternating: bool = False,
) -> float:
    return ExpansionModel(config, volume_model=model).volume_expansion(
        ell, beta, include_alternating
    )


def counting_bound(
    config, z: complex, beta: float | None = None, ell0: int | None = None
) -> float:
    em = ExpansionModel(config, volume_model=_BoundOnlyModel(), ell0=ell0)
    return em.counting_bound(z, beta)


class _BoundOnlyModel:
    """Placeholder volume model for counting-only expansion models.

    counting_bound never evaluates gamma, so constructing the real
    table-backed model would be wasted work; any attribute access that
    does need volume data fails loudly.
    """

    def __getattr__(self, name):
        raise AttributeError(
            "volume data requested from a counting-only model (%s)" % name
        )


def table_prefactors(config):
    """The two rational coefficient prefactors, via two routes each.

    Returns {"z2": (float_route, exact), "z2_delta": (float_route, exact)}
    where the float route evaluates 1/(2(1 - map count)) and
    (1 + k1/2 + k2/4)/(2(1 - sum_i r_i**delta)) from the actual map
    data, and the exact route re-derives them as Fractions from the
    exponent histogram (r_i**delta = 2**-nu_i exactly on the lattice).
    """
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    k1, k2 = cfg.k1, cfg.k2
    ifs = build_ifs(k1, k2)
    nmaps = len(ifs.maps)
    sd = sum(mp.ratio ** _DELTA for mp in ifs.maps)
    float2 = 1.0 / (2.0 * (1.0 - nmaps))
    float2d = (1.0 + k1 / 2.0 + k2 / 4.0) / (2.0 * (1.0 - sd))

    hist = exponent_histogram(k1, k2)
    exact2 = Fraction(1, 2 * (1 - (12 + 5 * (k1 + k2))))
    s_exact = sum(Fraction(cnt, 2 ** nu) for nu, cnt in hist.items())
    exact2d = (1 + Fraction(k1, 2) + Fraction(k2, 4)) / (2 * (1 - s_exact))
    return {"z2": (float2, exact2), "z2_delta": (float2d, exact2d)}


def spray_parallel_volume_closed(
    config,
    eps: float,
    model: SnowflakeVolumeModel | None = None,
) -> tuple[float, float]:
    """Exact renewal sum of the spray's inner parallel volume.

    Sums the closed-form generator volume over all copy scales; once
    every component of a scale is saturated the remaining tail is a
    geometric series summed exactly (in rational arithmetic for the
    copy-mass weights).  This is the reference the asymptotic expansion
    is measured against at high precision.
    """
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    if eps <= 0.0:
        raise ValueError("radius must be positive, got %r" % (eps,))
    m = model if model is not None else default_model()
    comps = cfg.component_base_lengths
    bmax = max(comps)

    # First scale at which every component is saturated; the largest
    # component (smallest eps-to-size ratio) saturates last.
    n_sat = 0
    while eps / (bmax * 3.0 ** (-0.5 * n_sat)) <= 1.0 / 3.0:
        n_sat += 1
    mult = word_multiplicities(cfg, n_sat)

    total = 0.0
    bound = 0.0
    for nu in range(n_sat):
        c = mult[nu]
        if c == 0:
            continue
        r = 3.0 ** (-0.5 * nu)
        for b in comps:
            val, err = m.parallel_volume(eps, base_length=b * r)
            total += c * val
            bound += c * err

    # Exact tail: sum_{nu >= n_sat} c_nu 3**-nu times the generator area.
    hist = exponent_histogram(cfg.k1, cfg.k2)
    s = sum(Fraction(cnt, 3 ** nu) for nu, cnt in hist.items())
    full = 1 / (1 - s)
    partial = sum(Fraction(mult[nu], 3 ** nu) for nu in range(n_sat))
    tail = full - partial
    total += float(tail) * generator_volume(cfg)
    return total, bound


# ---------------------------------------------------------------------------
# Renewal counting with pluggable generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorCounting:
    """A generator's eigenvalue counting data for renewal sums.

    count(t) is the number of Dirichlet eigenvalues <= e**t of the
    generator; it vanishes for t < log_lambda_min.  weyl_area is the
    generator area driving the leading term; remainder_bound, when
    known, bounds the normalized remainder envelope.
    """

    count: Callable[[float], float]
    weyl_area: float
    log_lambda_min: float
    remainder_bound: float | None = None


def square_generator_counting(side: float, lam: float) -> int:
    """Dirichlet count #{(m,n) >= 1 : pi^2 (m^2+n^2)/side^2 <= lam}."""
    if side <= 0.0:
        raise ValueError("side must be positive, got %r" % (side,))
    cap = lam * side * side / math.pi ** 2
    if cap < 2.0:
        return 0
    total = 0
    mmax = int(math.floor(math.sqrt(cap - 1.0)))
    for mm in range(1, mmax + 1):
        rem = cap - mm * mm
        if rem < 1.0:
            break
        total += int(math.floor(math.sqrt(rem)))
    return total


def square_generator(side: float = 1.0) -> GeneratorCounting:
    """GeneratorCounting for a single square of the given side."""
    return GeneratorCounting(
        count=lambda t: float(square_generator_counting(side, math.exp(t))),
        weyl_area=side * side,
        log_lambda_min=math.log(2.0 * math.pi ** 2 / (side * side)),
    )


def spray_counting(
    g: GeneratorCounting, config, t: float, nu_max: int | None = None
) -> float:
    """Renewal sum sum_nu c_nu g(t - 2 a nu) over copy scales.

    With nu_max None the truncation level is derived from the
    generator's vanishing threshold, making the finite sum exact.  A
    user-supplied nu_max that cuts off nonvanishing terms triggers a
    truncation warning.
    """
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    if nu_max is None:
        nu_max = max(0, int(math.floor((t - g.log_lambda_min) / (2.0 * _A))))
    mult = word_multiplicities(cfg, nu_max)
    total = 0.0
    for nu in range(nu_max + 1):
        c = mult[nu]
        if c:
            total += c * g.count(t - 2.0 * _A * nu)
    if t - 2.0 * _A * (nu_max + 1) >= g.log_lambda_min:
        warnings.warn(
            "renewal sum truncated at nu_max=%d with nonvanishing tail"
            % nu_max,
            RuntimeWarning,
            stacklevel=2,
        )
    return total


def spray_counting_brute(
    g: GeneratorCounting, config, t: float
) -> float:
    """Word-by-word enumeration of the same count, for validation.

    Walks the composition tree map by map instead of grouping words by
    total lattice exponent, so it exercises none of the multiplicity
    bookkeeping used by spray_counting.
    """
    cfg = config if isinstance(config, SprayConfig) else SprayConfig(*config)
    ifs = build_ifs(cfg.k1, cfg.k2)
    steps = [mp.lattice_exponent for mp in ifs.maps]
    limit = t - g.log_lambda_min

    total = 0.0
    stack = [0]
    while stack:
        nu = stack.pop()
        total += g.count(t - 2.0 * _A * nu)
        for s in steps:
            child = nu + s
            if 2.0 * _A * child <= limit:
                stack.append(child)
    return total
