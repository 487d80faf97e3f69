"""Complex pole sets of the spray zeta functions.

Both pole families solve the same integer lattice polynomial

    sum_nu m_nu x^nu = 1,

where m_nu is the exponent histogram of the similarity system.  They
differ only in how a polynomial root x is lifted to the complex
variable z:

  kind "C" (counting):  x = exp(2*a*z),      z = Log(x)/(2a) + i*pi/a * Z
  kind "P" (volume):    x = exp(a*(z - 2)),  z = 2 + Log(x)/a + 2i*pi/a * Z

so the natural vertical periods are pi/a and 2*pi/a respectively.  Each
root is stored with two equivalent representatives: the principal one
(Log on its principal branch, so conjugate pairs appear as +-i pairs)
and the folded one with imaginary part normalized into [0, period).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .ifs import LATTICE_A, exponent_histogram

_LOG3 = math.log(3.0)


@dataclass(frozen=True)
class LatticePolynomial:
    """p(x) = sum_nu m_nu x^nu - 1 for one configuration.

    coefficients[nu] is the coefficient of x^nu, so coefficients[0] is
    always -1 and the histogram fills degrees 2..5.
    """

    k1: int
    k2: int
    kind: str
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0.0 * x
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self, x):
        acc = 0.0 * x
        n = self.degree
        for nu in range(n, 0, -1):
            acc = acc * x + nu * self.coefficients[nu]
        return acc


@dataclass(frozen=True)
class ZeroRecord:
    """One pole with its source polynomial root.

    z is the principal-branch representative (conjugate roots give +-i
    pairs, matching the usual table presentation); folded is the same
    pole with Im normalized into [0, period).  conjugate is True when
    the source root is strictly complex.
    """

    z: complex
    folded: complex
    source_root: complex
    residual: float
    conjugate: bool


@dataclass(frozen=True)
class ZeroSet:
    """All poles of one kind for one configuration."""

    k1: int
    k2: int
    kind: str
    zeros: tuple[ZeroRecord, ...]
    strip_height: float
    similarity_dimension: float

    def __iter__(self):
        return iter(self.zeros)

    def __len__(self) -> int:
        return len(self.zeros)


def lattice_polynomial(k1: int, k2: int, kind: str = "C") -> LatticePolynomial:
    """Build the lattice polynomial for configuration (k1, k2).

    kind is "C" or "P"; the coefficient vector is identical for both,
    only the z-lifting recorded alongside differs.
    """
    kind = _check_kind(kind)
    hist = exponent_histogram(k1, k2)
    degree = max(hist)
    coeffs = [0] * (degree + 1)
    coeffs[0] = -1
    for nu, count in hist.items():
        coeffs[nu] = count
    return LatticePolynomial(k1=k1, k2=k2, kind=kind, coefficients=tuple(coeffs))


def _check_kind(kind: str) -> str:
    k = kind.upper()
    if k not in ("C", "P"):
        raise ValueError("kind must be 'C' or 'P', got %r" % (kind,))
    return k


def _polynomial_roots(poly: LatticePolynomial, tol: float) -> list[complex]:
    """Companion-matrix roots polished by Newton to residual <= tol.

    Raises ValueError if a root fails to separate from the derivative's
    zero set, which would indicate a multiple root; the lattice
    polynomials of valid configurations all have simple roots.
    """
    coeffs_desc = list(reversed(poly.coefficients))
    roots = np.roots(np.array(coeffs_desc, dtype=float))
    abs_coeffs = [abs(c) for c in poly.coefficients]

    def floor_scale(x: complex) -> float:
        # Roundoff floor of |p(x)| in double precision; an absolute
        # residual target below this is unreachable for |x| > 1.
        ax = abs(x)
        return max(1.0, sum(c * ax ** n for n, c in enumerate(abs_coeffs)))

    polished = []
    for r in roots:
        x = complex(r)
        for _ in range(60):
            fx = poly(x)
            if abs(fx) <= tol * floor_scale(x):
                break
            dfx = poly.derivative(x)
            if dfx == 0:
                raise ValueError("zero derivative during polishing; multiple root?")
            x = x - fx / dfx
        fx = poly(x)
        dfx = poly.derivative(x)
        if abs(fx) > tol * floor_scale(x):
            raise ValueError(
                "root polishing stalled at residual %g (tol %g, scale %g)"
                % (abs(fx), tol, floor_scale(x))
            )
        # Simple-root guard: derivative should be well away from zero on
        # the scale of the coefficients.
        scale = max(abs(c) for c in poly.coefficients)
        if abs(dfx) < 1e-8 * scale:
            raise ValueError(
                "nearly multiple root detected at x=%r; unsupported" % (x,)
            )
        polished.append(x)
    # Pair check: two polished roots collapsing onto each other also
    # signals multiplicity trouble.
    for i in range(len(polished)):
        for j in range(i + 1, len(polished)):
            if abs(polished[i] - polished[j]) < 1e-9:
                raise ValueError("coincident roots detected; unsupported")
    return polished


def _positive_real_root(roots: list[complex]) -> float:
    cands = [x.real for x in roots if abs(x.imag) < 1e-12 and x.real > 0]
    if len(cands) != 1:
        raise ValueError("expected exactly one positive real root, found %d" % len(cands))
    return cands[0]


def similarity_dimension(k1: int, k2: int) -> float:
    """Solution D of sum_i r_i^D = 1, via the positive lattice root.

    With x* the positive real root of the lattice polynomial,
    D = -2*log(x*)/log(3).
    """
    poly = lattice_polynomial(k1, k2, "C")
    roots = _polynomial_roots(poly, tol=1e-13)
    xstar = _positive_real_root(roots)
    return -2.0 * math.log(xstar) / _LOG3


def zero_set(k1: int, k2: int, kind: str = "C", tol: float = 1e-12) -> ZeroSet:
    """Solve for all poles of the requested kind in the base strip.

    Every root x of the lattice polynomial produces one record.  The
    principal representative is Log(x)/(2a) for kind "C" and
    2 + Log(x)/a for kind "P"; the folded one normalizes Im(z) into
    [0, pi/a) respectively [0, 2*pi/a).
    """
    kind = _check_kind(kind)
    poly = lattice_polynomial(k1, k2, kind)
    roots = _polynomial_roots(poly, tol)
    xstar = _positive_real_root(roots)
    dim = -2.0 * math.log(xstar) / _LOG3

    period = math.pi / LATTICE_A if kind == "C" else 2.0 * math.pi / LATTICE_A
    records = []
    for x in roots:
        if kind == "C":
            z = cmath.log(x) / (2.0 * LATTICE_A)
        else:
            z = 2.0 + cmath.log(x) / LATTICE_A
        records.append(
            ZeroRecord(
                z=z,
                folded=complex(z.real, z.imag % period),
                source_root=x,
                residual=abs(poly(x)),
                conjugate=abs(x.imag) > 1e-12,
            )
        )
    records.sort(key=lambda rec: (rec.z.real, abs(rec.z.imag), rec.z.imag))
    return ZeroSet(
        k1=k1,
        k2=k2,
        kind=kind,
        zeros=tuple(records),
        strip_height=period,
        similarity_dimension=dim,
    )


def correspondence_check(zc: ZeroSet, zp: ZeroSet) -> float:
    """Largest mismatch under the affine pole correspondence.

    Kind-P poles are the image of kind-C poles under z -> 2 + 2z modulo
    the vertical period 2*pi/a.  Returns the maximum over kind-C poles
    of the distance from 2 + 2z (folded) to the nearest kind-P pole.
    Cardinalities must agree.
    """
    if zc.kind != "C" or zp.kind != "P":
        raise ValueError("expected a kind-C and a kind-P zero set")
    if len(zc) != len(zp):
        raise ValueError("zero sets have different cardinalities")
    period = 2.0 * math.pi / LATTICE_A
    worst = 0.0
    for rec in zc:
        mapped = 2.0 + 2.0 * rec.z
        mapped = complex(mapped.real, mapped.imag % period)
        best = math.inf
        for other in zp:
            d = abs(mapped - other.folded)
            # Compare across the strip seam as well.
            d = min(
                d,
                abs(mapped - other.folded - 1j * period),
                abs(mapped - other.folded + 1j * period),
            )
            best = min(best, d)
        worst = max(worst, best)
    return worst
