"""Tests for the two-sided expansion engine and renewal counting."""

import math
import warnings
from fractions import Fraction

import pytest

from kochspray.expansion import (
    ExpansionModel,
    counting_bound,
    faber_krahn_ell0,
    spray_counting,
    spray_counting_brute,
    spray_parallel_volume_closed,
    square_generator,
    square_generator_counting,
    table_prefactors,
    volume_coefficients,
    volume_expansion,
    weyl_term,
)
from kochspray.ifs import LATTICE_A, SprayConfig, spray_volume
from kochspray.zeros import similarity_dimension, zero_set

SQRT3 = math.sqrt(3.0)
DELTA = math.log(4.0) / math.log(3.0)
ALL_CONFIGS = [(k1, k2) for k1 in range(7) for k2 in range(7)]
RESONANT = [(2, 0), (3, 2), (4, 4), (5, 6)]

# Published rational prefactors for the three reference configurations.
TABLE2 = {
    (0, 0): (Fraction(-1, 22), Fraction(-2, 5)),
    (0, 6): (Fraction(-1, 82), Fraction(-10, 13)),
    (6, 6): (Fraction(-1, 142), Fraction(-22, 19)),
}


# ---------------------------------------------------------------------------
# Coefficient prefactors
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("cfg,expected", sorted(TABLE2.items()))
def test_table2_prefactors(cfg, expected):
    out = table_prefactors(cfg)
    exp2, exp2d = expected
    float2, exact2 = out["z2"]
    float2d, exact2d = out["z2_delta"]
    assert exact2 == exp2
    assert exact2d == exp2d
    assert abs(float2 - float(exp2)) <= 1e-12
    assert abs(float2d - float(exp2d)) <= 1e-12


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_prefactor_routes_agree_everywhere(k1, k2):
    out = table_prefactors((k1, k2))
    for key in ("z2", "z2_delta"):
        approx, exact = out[key]
        assert abs(approx - float(exact)) <= 1e-12, f"{key} at ({k1},{k2})"


# ---------------------------------------------------------------------------
# Volume coefficients and the expansion
# ---------------------------------------------------------------------------


def test_coefficients_basic_shape():
    co = volume_coefficients((6, 6), beta=0.0)
    assert co.beta == 0.0
    assert math.isfinite(co.r2) and co.r2_error >= 0.0
    assert math.isfinite(co.r2_delta) and co.r2_delta_error >= 0.0
    assert len(co.poles) >= 1
    for z, r, err in co.poles:
        assert z.real < 2.0
        assert err >= 0.0
        assert abs(r) > 0.0


@pytest.mark.parametrize("cfg", RESONANT)
def test_resonant_configs_are_rejected(cfg):
    # 2*k1 - k2 = 4 puts a geometric-tail pole on top of a strip pole;
    # the coefficient formula must refuse rather than return garbage.
    with pytest.raises(ValueError):
        volume_coefficients(cfg, beta=0.0)


def test_beta_domain_validation():
    with pytest.raises(ValueError):
        volume_coefficients((0, 0), beta=-0.01)
    with pytest.raises(ValueError):
        volume_coefficients((0, 0), beta=LATTICE_A)


@pytest.mark.parametrize("cfg", [(0, 0), (6, 6)])
@pytest.mark.parametrize("beta", [0.0, 0.5 * LATTICE_A])
def test_expansion_reconstructs_renewal_sum(cfg, beta):
    # With the alternating companions included the expansion is an
    # exact resummation; compare against the closed-form renewal sum.
    for ell in (2, 4, 7):
        eps = math.exp(-LATTICE_A * ell - beta)
        closed, closed_err = spray_parallel_volume_closed(cfg, eps)
        predicted = volume_expansion(cfg, ell, beta, include_alternating=True)
        assert abs(predicted - closed) <= closed_err + 1e-9, (
            f"cfg={cfg} ell={ell} beta={beta}"
        )


def test_headline_expansion_defect_is_the_alternating_term():
    # The headline sum omits only the alternating companions, so its
    # defect decays like e^(-a ell (2 - delta)) and the normalized
    # defect approaches the alternating 2 - delta coefficient.
    cfg = (0, 0)
    co = volume_coefficients(cfg, beta=0.0)
    target = abs(co.r2_delta_alt)
    assert target > 0.0
    defects = []
    for ell in (3, 5, 7, 9, 11):
        eps = math.exp(-LATTICE_A * ell)
        closed, _ = spray_parallel_volume_closed(cfg, eps)
        predicted = volume_expansion(cfg, ell, 0.0)
        scale = math.exp(-LATTICE_A * ell * (2.0 - DELTA))
        defects.append(abs(predicted - closed) / scale)
    assert all(d2 < d1 for d1, d2 in zip(defects, defects[1:]))
    assert defects[-1] == pytest.approx(target, rel=0.05)


def test_closed_spray_volume_small_radius_limit():
    # As eps grows past bmax/3 every copy is saturated and the closed
    # sum must equal the full spray volume exactly.
    cfg = SprayConfig(3, 1)
    val, err = spray_parallel_volume_closed(cfg, 1.0)
    assert val == pytest.approx(spray_volume(cfg), rel=1e-12)
    assert err == 0.0


def test_closed_spray_volume_monotone():
    # Strictly increasing until every copy saturates (eps >= bmax/3),
    # constant at the full spray volume beyond.
    cfg = SprayConfig(0, 0)
    prev = 0.0
    for ell in range(8, 2, -1):
        eps = math.exp(-LATTICE_A * ell)
        val, _ = spray_parallel_volume_closed(cfg, eps)
        assert val > prev
        prev = val
    for ell in (2, 1, 0):
        eps = math.exp(-LATTICE_A * ell)
        val, _ = spray_parallel_volume_closed(cfg, eps)
        assert val == pytest.approx(spray_volume(cfg), rel=1e-12)


def test_closed_spray_volume_validation():
    with pytest.raises(ValueError):
        spray_parallel_volume_closed((0, 0), 0.0)


# ---------------------------------------------------------------------------
# Counting bounds
# ---------------------------------------------------------------------------


def test_faber_krahn_floor():
    assert faber_krahn_ell0() == 2


_FROZEN_BOUNDS = {
    (0, 0): [828133.549636222],
    (0, 6): [892438.5069422664, 120782.10967465532],
    (6, 6): [826900.2391318416, 171061.88289644613, 144321.65866833556],
}

_PUBLISHED_BOUNDS = {
    (0, 0): [1.68e6],
    (0, 6): [1.81e6, 2.45e5],
    (6, 6): [1.68e6, 3.46e5, 2.92e5],
}


@pytest.mark.parametrize("cfg", sorted(_FROZEN_BOUNDS))
def test_counting_bound_table_regression(cfg):
    em = ExpansionModel(cfg)
    table = em.counting_bound_table()
    got = sorted(b for _z, b in table)
    frozen = sorted(_FROZEN_BOUNDS[cfg])
    assert len(got) == len(frozen)
    for g, f in zip(got, frozen):
        assert g == pytest.approx(f, rel=1e-9)


@pytest.mark.parametrize("cfg", sorted(_PUBLISHED_BOUNDS))
def test_counting_bounds_match_published_within_factor(cfg):
    em = ExpansionModel(cfg)
    got = sorted(b for _z, b in em.counting_bound_table())
    pub = sorted(_PUBLISHED_BOUNDS[cfg])
    assert len(got) == len(pub)
    for g, p in zip(got, pub):
        assert p / 3.0 <= g <= p * 3.0


def test_counting_bound_validation():
    zs = zero_set(6, 6, kind="C")
    ok = next(rec.z for rec in zs if rec.z.real < -DELTA / 2.0)
    bad = next(rec.z for rec in zs if rec.z.real >= -DELTA / 2.0)
    with pytest.raises(ValueError):
        counting_bound((6, 6), bad)  # right of the critical line
    with pytest.raises(ValueError):
        counting_bound((6, 6), ok + 0.05)  # not a pole at all
    with pytest.raises(ValueError):
        counting_bound((6, 6), ok, beta=-0.1)


def test_counting_bound_grows_with_ell0():
    zs = zero_set(0, 0, kind="C")
    z = next(rec.z for rec in zs if rec.z.real < -DELTA / 2.0)
    b2 = counting_bound((0, 0), z, ell0=2)
    b3 = counting_bound((0, 0), z, ell0=3)
    assert b3 > b2


def test_weyl_term_is_configuration_independent():
    expected = (18.0 * SQRT3 / 5.0) / (4.0 * math.pi)
    for cfg in ((0, 0), (4, 2), (6, 6)):
        assert weyl_term(cfg) == pytest.approx(expected, rel=1e-13)


# ---------------------------------------------------------------------------
# Renewal counting with the square generator
# ---------------------------------------------------------------------------


def test_square_counting_small_eigenvalues():
    pi2 = math.pi**2
    assert square_generator_counting(1.0, 2.0 * pi2) == 1
    assert square_generator_counting(1.0, 4.99 * pi2) == 1
    assert square_generator_counting(1.0, 5.0 * pi2) == 3
    assert square_generator_counting(1.0, 8.0 * pi2) == 4
    assert square_generator_counting(1.0, 10.0 * pi2) == 6
    assert square_generator_counting(1.0, 1.9 * pi2) == 0


def test_square_counting_scales_with_side():
    # Halving the side multiplies every eigenvalue by 4.
    for lam in (25.0, 77.0, 300.0):
        assert square_generator_counting(0.5, 4.0 * lam) == (
            square_generator_counting(1.0, lam)
        )


def test_square_counting_validation():
    with pytest.raises(ValueError):
        square_generator_counting(0.0, 10.0)


@pytest.mark.parametrize("cfg", [(0, 0), (2, 1)])
def test_spray_counting_matches_brute_force(cfg):
    g = square_generator(1.0)
    for t in (3.0, 6.5, 9.0, 11.0):
        grouped = spray_counting(g, cfg, t)
        brute = spray_counting_brute(g, cfg, t)
        assert grouped == brute, f"t={t}"
        assert grouped == int(grouped)


def test_spray_counting_truncation_warning():
    g = square_generator(1.0)
    with pytest.warns(RuntimeWarning):
        short = spray_counting(g, (0, 0), 9.0, nu_max=2)
    full = spray_counting(g, (0, 0), 9.0)
    assert short < full


def test_spray_counting_zero_below_floor():
    g = square_generator(1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert spray_counting(g, (3, 3), 1.0) == 0.0


def test_normalized_remainder_stays_bounded():
    # (N(t) - lead(t)) e^(-t D / 2) over a t grid; the lead term is the
    # generator Weyl area times the copy-mass series at e^t / (4 pi).
    cfg = (0, 0)
    g = square_generator(1.0)
    d = similarity_dimension(*cfg)
    from kochspray.ifs import exponent_histogram

    hist = exponent_histogram(*cfg)
    mass = 1.0 / (1.0 - sum(cnt * 3.0**-nu for nu, cnt in hist.items()))
    worst = 0.0
    t = 2.0
    while t <= 12.0:
        n = spray_counting(g, cfg, t)
        lead = g.weyl_area / (4.0 * math.pi) * math.exp(t) * mass
        worst = max(worst, abs(n - lead) * math.exp(-t * d / 2.0))
        t += 0.125
    assert worst <= 1.5


def test_generator_counting_record():
    g = square_generator(2.0)
    assert g.weyl_area == pytest.approx(4.0)
    assert g.log_lambda_min == pytest.approx(math.log(2.0 * math.pi**2 / 4.0))
    assert g.count(g.log_lambda_min - 1e-9) == 0.0
    assert g.count(g.log_lambda_min + 1e-9) == 1.0
