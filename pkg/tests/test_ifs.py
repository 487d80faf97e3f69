"""Tests for the lattice IFS layer: maps, histograms, volumes, prefractals."""

import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from kochspray.ifs import (
    LATTICE_A,
    SNOWFLAKE_AREA_FACTOR,
    SprayConfig,
    build_ifs,
    copy_mass_generating_value,
    exponent_histogram,
    generator_volume,
    prefractal_area_deficit,
    prefractal_boundary,
    spray_volume,
    word_multiplicities,
)

SQRT3 = math.sqrt(3.0)
ALL_CONFIGS = [(k1, k2) for k1 in range(7) for k2 in range(7)]


def test_lattice_constant_value():
    assert LATTICE_A == pytest.approx(math.log(3.0) / 2.0, abs=0.0)


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_map_count_and_histogram(k1, k2):
    ifs = build_ifs(k1, k2)
    assert len(ifs.maps) == 12 + 5 * (k1 + k2)
    hist = exponent_histogram(k1, k2)
    expected = {2: 6 - k1, 3: 6 - k2, 4: 6 * k1, 5: 6 * k2}
    assert hist == {nu: cnt for nu, cnt in expected.items() if cnt}
    assert sum(hist.values()) == len(ifs.maps)
    # Histogram must agree with the actual map exponents.
    counted = Counter(mp.lattice_exponent for mp in ifs.maps)
    assert dict(counted) == {nu: cnt for nu, cnt in hist.items() if cnt}
    assert ifs.exponent_histogram == counted


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_map_ratios_are_lattice_powers(k1, k2):
    ifs = build_ifs(k1, k2)
    for mp in ifs.maps:
        expected = math.exp(-LATTICE_A * mp.lattice_exponent)
        assert mp.ratio == pytest.approx(expected, rel=1e-15)
        assert 0.0 < mp.ratio < 1.0


def test_component_base_lengths():
    cfg = SprayConfig(2, 3, base_length=5.0)
    comps = cfg.component_base_lengths
    assert len(comps) == 1 + 2 + 3
    assert comps[0] == pytest.approx(5.0)
    for b in comps[1:3]:
        assert b == pytest.approx(5.0 * SQRT3 / 3.0)
    for b in comps[3:]:
        assert b == pytest.approx(5.0 / 3.0)


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_generator_volume_formula(k1, k2):
    cfg = SprayConfig(k1, k2, base_length=1.0)
    expected = SNOWFLAKE_AREA_FACTOR * (1.0 + k1 / 3.0 + k2 / 9.0)
    assert generator_volume(cfg) == pytest.approx(expected, rel=1e-14)
    # The generator volume is also the sum of the component areas.
    direct = sum(SNOWFLAKE_AREA_FACTOR * b * b for b in cfg.component_base_lengths)
    assert generator_volume(cfg) == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_spray_volume_invariance(k1, k2):
    # Total spray area is configuration independent: replacing a copy
    # by smaller ones changes the generator but not the spray mass.
    cfg = SprayConfig(k1, k2, base_length=1.0)
    assert abs(spray_volume(cfg) - 18.0 * SQRT3 / 5.0) <= 1e-12


def test_spray_volume_scales_with_base_length():
    v1 = spray_volume(SprayConfig(3, 4, base_length=1.0))
    v2 = spray_volume(SprayConfig(3, 4, base_length=2.0))
    assert v2 == pytest.approx(4.0 * v1, rel=1e-14)


@pytest.mark.parametrize("k1,k2", [(0, 0), (1, 4), (6, 6)])
def test_copy_mass_ties_generator_to_spray(k1, k2):
    # Areas scale by 3**-nu per lattice step, so the spray volume is
    # the generator volume times the copy-mass series at x = 1/3.
    cfg = SprayConfig(k1, k2)
    series = copy_mass_generating_value(k1, k2, 1.0 / 3.0)
    assert generator_volume(cfg) * series == pytest.approx(
        spray_volume(cfg), rel=1e-12
    )


def test_copy_mass_divergence_guard():
    with pytest.raises(ValueError):
        copy_mass_generating_value(0, 0, 0.9)


def _brute_multiplicities(k1, k2, nu_max):
    """Count composition words by total exponent via explicit DFS."""
    steps = sorted(
        nu for nu, cnt in exponent_histogram(k1, k2).items() for _ in range(cnt)
    )
    counts = [0] * (nu_max + 1)
    stack = [0]
    while stack:
        nu = stack.pop()
        counts[nu] += 1
        for s in steps:
            if nu + s <= nu_max:
                stack.append(nu + s)
    return counts


@pytest.mark.parametrize("k1,k2", [(0, 0), (1, 0), (0, 1), (2, 3), (6, 6)])
def test_word_multiplicities_match_enumeration(k1, k2):
    nu_max = 12
    mult = word_multiplicities((k1, k2), nu_max)
    brute = _brute_multiplicities(k1, k2, nu_max)
    for nu in range(nu_max + 1):
        assert mult[nu] == brute[nu], f"nu={nu}"


def test_word_multiplicities_partial_sums():
    # sum_nu c_nu x^nu converges to 1/(1 - sum_i x^{nu_i}); check a long
    # partial sum at x = 1/3 against the exact rational limit.
    k1, k2 = 2, 1
    hist = exponent_histogram(k1, k2)
    x = Fraction(1, 3)
    limit = 1 / (1 - sum(cnt * x**nu for nu, cnt in hist.items()))
    # The tail decays like 3**(nu (D/2 - 1)) which is slow (D is close
    # to 2), so a deep partial sum is needed for a tight comparison.
    nu_max = 400
    mult = word_multiplicities((k1, k2), nu_max)
    partial = sum(Fraction(mult[nu], 3**nu) for nu in range(nu_max + 1))
    assert partial < limit
    assert float(limit - partial) < 1e-8
    assert float(limit) == pytest.approx(
        copy_mass_generating_value(k1, k2, 1.0 / 3.0), rel=1e-14
    )


@pytest.mark.parametrize("depth", [0, 1, 2, 3])
def test_prefractal_vertex_count(depth):
    pb = prefractal_boundary(1.0, depth)
    # Closed chain without a duplicated endpoint: 3 * 4^depth segments.
    assert pb.segment_count == 3 * 4**depth
    assert pb.vertices.shape == (pb.segment_count, 2)
    starts, ends = pb.segments()
    assert np.allclose(ends[-1], starts[0])


@pytest.mark.parametrize("depth", [0, 1, 2, 4])
def test_prefractal_area_matches_deficit(depth):
    pb = prefractal_boundary(1.0, depth)
    # Independent shoelace over the closed chain.
    x, y = pb.vertices[:, 0], pb.vertices[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    area = 0.5 * abs(float(np.sum(x * yn - xn * y)))
    assert area == pytest.approx(pb.area(), rel=1e-13)
    expected = SNOWFLAKE_AREA_FACTOR - prefractal_area_deficit(1.0, depth)
    assert area == pytest.approx(expected, rel=1e-12)


def test_prefractal_depth_zero_is_base_triangle():
    pb = prefractal_boundary(2.0, 0)
    assert pb.segment_count == 3
    assert pb.area() == pytest.approx(SQRT3 / 4.0 * 4.0, rel=1e-14)
    # Deficit formula at depth 0: full area minus the triangle.
    assert prefractal_area_deficit(2.0, 0) == pytest.approx(
        (SNOWFLAKE_AREA_FACTOR - SQRT3 / 4.0) * 4.0, rel=1e-13
    )


def test_prefractal_deficit_decay():
    for depth in range(5):
        ratio = prefractal_area_deficit(1.0, depth + 1) / prefractal_area_deficit(
            1.0, depth
        )
        assert ratio == pytest.approx(4.0 / 9.0, rel=1e-13)


def test_prefractal_hausdorff_scaling():
    for depth in range(5):
        pb = prefractal_boundary(1.0, depth)
        assert pb.hausdorff_bound == pytest.approx(
            (SQRT3 / 6.0) * 3.0**-depth, rel=1e-13
        )


def test_prefractal_monotone_nesting():
    # Each subdivision only adds outward bumps, so the polygon areas
    # increase with depth and every coarse vertex stays on the curve.
    prev = prefractal_boundary(1.0, 0)
    for depth in range(1, 5):
        cur = prefractal_boundary(1.0, depth)
        assert cur.area() > prev.area()
        # Coarse vertices appear among the finer ones (every 4th point).
        assert np.allclose(cur.vertices[:: 4], prev.vertices, atol=1e-12)
        prev = cur


def test_prefractal_scales_with_base_length():
    a = prefractal_boundary(1.0, 2).vertices
    b = prefractal_boundary(2.5, 2).vertices
    assert np.allclose(b, 2.5 * a, atol=1e-14)


def test_config_validation():
    with pytest.raises(ValueError):
        SprayConfig(-1, 0)
    with pytest.raises(ValueError):
        SprayConfig(0, 7)
    with pytest.raises(ValueError):
        SprayConfig(2, 2, base_length=0.0)
    with pytest.raises(ValueError):
        prefractal_boundary(1.0, -1)
