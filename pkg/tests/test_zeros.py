"""Tests for the pole sets of the two spray zeta functions."""

import cmath
import math

import pytest

from kochspray.ifs import LATTICE_A, exponent_histogram
from kochspray.zeros import (
    correspondence_check,
    lattice_polynomial,
    similarity_dimension,
    zero_set,
)

ALL_CONFIGS = [(k1, k2) for k1 in range(7) for k2 in range(7)]
DELTA = math.log(4.0) / math.log(3.0)

# Published strip-pole table for the three reference configurations.
# Values are quoted to 6 significant figures; conjugates are implied.
TABLE1 = {
    (0, 0): [complex(-0.952455, 0.0)],
    (0, 6): [complex(-0.928326, 0.0), complex(-0.71134, 2.58082)],
    (6, 6): [
        complex(-0.888243, 0.0),
        complex(-0.839089, 1.34671),
        complex(-0.666227, 2.8596),
    ],
}


def _closest(records, target):
    return min(
        min(abs(rec.z - target), abs(rec.z.conjugate() - target))
        for rec in records
    )


@pytest.mark.parametrize("cfg,expected", sorted(TABLE1.items()))
def test_table1_values(cfg, expected):
    zs = zero_set(*cfg, kind="C")
    for tgt in expected:
        gap = _closest(zs.zeros, tgt)
        assert gap <= 1e-5, f"{cfg}: no zero near {tgt} (gap {gap:.2e})"
        if tgt.imag:
            gap = _closest(zs.zeros, tgt.conjugate())
            assert gap <= 1e-5, f"{cfg}: conjugate of {tgt} missing"


@pytest.mark.parametrize("cfg", sorted(TABLE1))
def test_table1_admissible_counts(cfg):
    # The published table lists exactly the strip poles to the left of
    # the critical line Re z = -delta/2, one row per conjugate pair.
    zs = zero_set(*cfg, kind="C")
    admissible = [
        rec for rec in zs if rec.z.real < -DELTA / 2.0 and rec.z.imag >= 0.0
    ]
    assert len(admissible) == len(TABLE1[cfg])


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_defining_equation_residuals(k1, k2):
    hist = exponent_histogram(k1, k2)
    for kind, scale in (("C", 2.0 * LATTICE_A), ("P", LATTICE_A)):
        zs = zero_set(k1, k2, kind=kind)
        assert len(zs) >= 1
        for rec in zs:
            if kind == "C":
                x = cmath.exp(2.0 * LATTICE_A * rec.z)
            else:
                x = cmath.exp(LATTICE_A * (rec.z - 2.0))
            res = abs(sum(cnt * x**nu for nu, cnt in hist.items()) - 1.0)
            assert res <= 1e-10, f"({k1},{k2}) {kind} z={rec.z}: residual {res:.2e}"
            assert rec.residual <= 1e-10


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_records_are_consistent(k1, k2):
    for kind in ("C", "P"):
        zs = zero_set(k1, k2, kind=kind)
        period = 2.0 * math.pi / LATTICE_A if kind == "P" else math.pi / LATTICE_A
        assert zs.strip_height == pytest.approx(period, rel=1e-15)
        for rec in zs:
            # folded and z represent the same pole modulo i*period.
            diff = (rec.folded - rec.z) / complex(0.0, period)
            assert abs(diff.imag) <= 1e-9
            assert abs(diff.real - round(diff.real)) <= 1e-9
            assert 0.0 <= rec.folded.imag < period * (1.0 + 1e-12)
            assert rec.conjugate == (abs(rec.source_root.imag) > 1e-12)


def test_conjugate_pairs_come_in_pairs():
    zs = zero_set(0, 6, kind="C")
    complex_zeros = [rec.z for rec in zs if rec.conjugate]
    assert len(complex_zeros) % 2 == 0
    for z in complex_zeros:
        assert any(abs(w - z.conjugate()) < 1e-12 for w in complex_zeros)


@pytest.mark.parametrize("k1,k2", ALL_CONFIGS)
def test_correspondence_all_configs(k1, k2):
    # Volume poles are the counting poles pushed through z -> 2 + 2z,
    # taken modulo the doubled vertical period.
    zc = zero_set(k1, k2, kind="C")
    zp = zero_set(k1, k2, kind="P")
    assert len(zc) == len(zp)
    assert correspondence_check(zc, zp) <= 1e-9


def test_large_root_residual_regression():
    # (6,1) has a polynomial root near -5.86 whose absolute residual is
    # dominated by cancellation at magnitude ~|x|^5; the solver must
    # still deliver the defining-equation residual in z to 1e-10.
    zs = zero_set(6, 1, kind="C")
    hist = exponent_histogram(6, 1)
    roots = [rec.source_root for rec in zs]
    big = max(roots, key=abs)
    assert abs(big) > 3.0
    for rec in zs:
        x = cmath.exp(2.0 * LATTICE_A * rec.z)
        res = abs(sum(cnt * x**nu for nu, cnt in hist.items()) - 1.0)
        assert res <= 1e-10


def test_real_root_in_unit_interval():
    # Every configuration keeps one real root x in (0, 1); it carries
    # the similarity dimension via x = 3**(-D/2).
    for k1, k2 in ((0, 0), (3, 2), (6, 6)):
        poly = lattice_polynomial(k1, k2)
        d = similarity_dimension(k1, k2)
        x = 3.0 ** (-d / 2.0)
        assert 0.0 < x < 1.0
        assert abs(poly(x)) <= 1e-12


def test_similarity_dimension_values():
    assert similarity_dimension(0, 0) == pytest.approx(
        1.9049103127262104, abs=1e-13
    )
    assert similarity_dimension(6, 6) == pytest.approx(
        1.7764854047157432, abs=1e-13
    )


def test_similarity_dimension_monotone():
    # Replacing copies by smaller ones thins the system, so D decreases
    # in each of k1 and k2 separately.
    for k in range(6):
        assert similarity_dimension(k + 1, 0) < similarity_dimension(k, 0)
        assert similarity_dimension(0, k + 1) < similarity_dimension(0, k)
    for k1, k2 in ALL_CONFIGS:
        d = similarity_dimension(k1, k2)
        assert 1.0 < d < 2.0


def test_zero_set_carries_dimension():
    zs = zero_set(2, 5, kind="C")
    assert zs.similarity_dimension == pytest.approx(
        similarity_dimension(2, 5), abs=0.0
    )


def test_polynomial_shape():
    poly = lattice_polynomial(4, 1, kind="C")
    assert poly.coefficients[0] == -1
    assert poly.degree == 5
    hist = exponent_histogram(4, 1)
    for nu, cnt in hist.items():
        assert poly.coefficients[nu] == cnt
    # Degrees without histogram mass carry zero coefficients.
    assert poly.coefficients[1] == 0


def test_kind_validation():
    with pytest.raises(ValueError):
        zero_set(0, 0, kind="X")
    with pytest.raises(ValueError):
        lattice_polynomial(0, 0, kind="zeta")


def test_strip_heights_differ_by_factor_two():
    zc = zero_set(1, 1, kind="C")
    zp = zero_set(1, 1, kind="P")
    assert zp.strip_height == pytest.approx(2.0 * zc.strip_height, rel=1e-15)
