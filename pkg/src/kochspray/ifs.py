"""Self-similar map system for Koch snowflake sprays.

The spray is driven by a finite system of contracting similarities whose
ratios are all integer powers of 3**(-1/2).  Writing a = ln(3)/2, every
ratio is exp(-a*nu) for an integer exponent nu, so word combinatorics
reduce to integer lattice counting.

The base system has twelve maps: six of ratio 1/3 (exponent 2) arranged
hexagonally, and six of ratio 1/(3*sqrt(3)) (exponent 3) rotated by 30
degrees.  A family pair (k1, k2) replaces k1 of the ratio-1/3 maps and
k2 of the ratio-1/(3*sqrt(3)) maps; each replaced map is substituted by
six child maps, one third of the parent's size.  The leftover region of
each replaced map contributes an extra snowflake component to the
generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# Lattice unit: every contraction ratio is exp(-LATTICE_A * nu), nu integer.
LATTICE_A = 0.5 * math.log(3.0)

# Dimension of the snowflake curve, log 4 / log 3.
CURVE_DIMENSION = math.log(4.0) / math.log(3.0)

SNOWFLAKE_AREA_FACTOR = 2.0 * math.sqrt(3.0) / 5.0  # area of K over b**2

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SimilarityMap:
    """One contracting similarity x -> ratio * R(rotation) x + translation.

    lattice_exponent is the integer nu with ratio == exp(-a*nu).
    parent is None for the twelve base maps and the index of the
    replaced base map for replacement children.
    """

    ratio: float
    rotation: float
    translation: tuple[float, float]
    lattice_exponent: int
    parent: Optional[int] = None

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Apply the map to an (n, 2) array of points."""
        pts = np.asarray(points, dtype=float)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        rot = np.array([[c, -s], [s, c]])
        return self.ratio * pts @ rot.T + np.asarray(self.translation)


@dataclass(frozen=True)
class SprayConfig:
    """Replacement counts and generator scale for one spray.

    k1, k2 range over 0..6.  base_length is the base length b of the
    largest generator component; the replaced components have base
    lengths b*sqrt(3)/3 (k1 type) and b/3 (k2 type).
    """

    k1: int
    k2: int
    base_length: float = 1.0

    def __post_init__(self) -> None:
        if not (0 <= self.k1 <= 6 and 0 <= self.k2 <= 6):
            raise ValueError("k1 and k2 must lie in 0..6")
        if not self.base_length > 0:
            raise ValueError("base_length must be positive")

    @property
    def component_base_lengths(self) -> tuple[float, ...]:
        b = self.base_length
        return (b,) + (b * _SQRT3 / 3.0,) * self.k1 + (b / 3.0,) * self.k2


@dataclass(frozen=True)
class LatticeIFS:
    """The full similarity system for one configuration."""

    a: float
    k1: int
    k2: int
    maps: tuple[SimilarityMap, ...]

    @property
    def exponent_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for m in self.maps:
            hist[m.lattice_exponent] = hist.get(m.lattice_exponent, 0) + 1
        return hist


@dataclass(frozen=True)
class WordMultiplicities:
    """Counts c_nu of words with total lattice exponent nu.

    c_0 = 1 (empty word) and c_nu = sum over maps i of c_{nu - nu_i}.
    """

    k1: int
    k2: int
    counts: tuple[int, ...]

    def __getitem__(self, nu: int) -> int:
        return self.counts[nu]

    def __len__(self) -> int:
        return len(self.counts)


def exponent_histogram(k1: int, k2: int) -> dict[int, int]:
    """Multiset of lattice exponents for configuration (k1, k2).

    The histogram is {2: 6-k1, 3: 6-k2, 4: 6*k1, 5: 6*k2}; entries with
    count zero are dropped.
    """
    hist = {2: 6 - k1, 3: 6 - k2, 4: 6 * k1, 5: 6 * k2}
    return {nu: n for nu, n in hist.items() if n > 0}


def _base_maps() -> list[SimilarityMap]:
    """The twelve unreplaced maps."""
    maps = []
    for i in range(6):
        ang = i * math.pi / 3.0
        t = (2.0 * _SQRT3 / 3.0 * math.cos(ang), 2.0 * _SQRT3 / 3.0 * math.sin(ang))
        maps.append(SimilarityMap(1.0 / 3.0, 0.0, t, 2))
    for i in range(6):
        ang = math.pi / 6.0 + i * math.pi / 3.0
        t = (2.0 / 3.0 * math.cos(ang), 2.0 / 3.0 * math.sin(ang))
        maps.append(SimilarityMap(1.0 / (3.0 * _SQRT3), math.pi / 6.0, t, 3))
    return maps


def _compose(parent: SimilarityMap, child: SimilarityMap, parent_index: int) -> SimilarityMap:
    """Similarity composition parent o child."""
    c, s = math.cos(parent.rotation), math.sin(parent.rotation)
    tx, ty = child.translation
    rx = parent.ratio * (c * tx - s * ty) + parent.translation[0]
    ry = parent.ratio * (s * tx + c * ty) + parent.translation[1]
    return SimilarityMap(
        ratio=parent.ratio * child.ratio,
        rotation=parent.rotation + child.rotation,
        translation=(rx, ry),
        lattice_exponent=parent.lattice_exponent + child.lattice_exponent,
        parent=parent_index,
    )


def build_ifs(k1: int, k2: int) -> LatticeIFS:
    """Build the similarity system for configuration (k1, k2).

    The first k1 hexagonal maps and the first k2 rotated maps are each
    replaced by their compositions with the six hexagonal maps.  A
    replaced ratio-1/3 map yields six children of ratio 1/9 (exponent
    4); a replaced ratio-1/(3 sqrt 3) map yields six children of ratio
    1/(9 sqrt 3) (exponent 5).  Total map count is 12 + 5*(k1 + k2).
    """
    if not (0 <= k1 <= 6 and 0 <= k2 <= 6):
        raise ValueError("k1 and k2 must lie in 0..6")
    base = _base_maps()
    hex_children = base[:6]

    kept: list[SimilarityMap] = []
    children: list[SimilarityMap] = []
    for idx, m in enumerate(base):
        replaced = (m.lattice_exponent == 2 and idx < k1) or (
            m.lattice_exponent == 3 and idx - 6 < k2
        )
        if replaced:
            children.extend(_compose(m, ch, idx) for ch in hex_children)
        else:
            kept.append(m)
    return LatticeIFS(a=LATTICE_A, k1=k1, k2=k2, maps=tuple(kept + children))


def word_multiplicities(source, nu_max: int) -> WordMultiplicities:
    """Number of words of the system with each total exponent up to nu_max.

    source may be a LatticeIFS, a SprayConfig, or a (k1, k2) pair.  The
    counts satisfy the renewal recurrence c_nu = sum_i c_{nu - nu_i}
    with c_0 = 1, evaluated in exact integer arithmetic.
    """
    k1, k2 = _as_k1k2(source)
    hist = exponent_histogram(k1, k2)
    counts = [0] * (nu_max + 1)
    counts[0] = 1
    for nu in range(1, nu_max + 1):
        total = 0
        for step, mult in hist.items():
            if nu >= step:
                total += mult * counts[nu - step]
        counts[nu] = total
    return WordMultiplicities(k1=k1, k2=k2, counts=tuple(counts))


def _as_k1k2(source) -> tuple[int, int]:
    if isinstance(source, (LatticeIFS, SprayConfig, WordMultiplicities)):
        return source.k1, source.k2
    k1, k2 = source
    return int(k1), int(k2)


def generator_volume(config: SprayConfig) -> float:
    """Area of the generator, a disjoint union of 1 + k1 + k2 snowflakes.

    Component base lengths b, b*sqrt(3)/3, b/3 give
    (2*sqrt(3)/5) * (1 + k1/3 + k2/9) * b**2.
    """
    return (
        SNOWFLAKE_AREA_FACTOR
        * (1.0 + config.k1 / 3.0 + config.k2 / 9.0)
        * config.base_length**2
    )


def spray_volume(config: SprayConfig) -> float:
    """Total area of the spray, generator_volume / (1 - sum_i r_i^2).

    The replacement construction trades boundary complexity against
    copy masses in a way that keeps the total area at
    (18*sqrt(3)/5) * b**2 for every configuration.
    """
    hist = exponent_histogram(config.k1, config.k2)
    mass = sum(n * 3.0 ** (-nu) for nu, n in hist.items())
    return generator_volume(config) / (1.0 - mass)


def copy_mass_generating_value(k1: int, k2: int, x: float) -> float:
    """Evaluate sum_nu c_nu x^nu = 1 / (1 - sum_i x^{nu_i}) in closed form."""
    hist = exponent_histogram(k1, k2)
    inner = sum(n * x**nu for nu, n in hist.items())
    if inner >= 1.0:
        raise ValueError("series diverges at x = %r" % (x,))
    return 1.0 / (1.0 - inner)


# ---------------------------------------------------------------------------
# Prefractal boundary polylines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrefractalBoundary:
    """Closed polyline approximation of a snowflake boundary.

    vertices is an (m, 2) array of the chain in counterclockwise order
    with the interior on the left; the chain is closed implicitly
    (vertices[-1] connects back to vertices[0]).  The true curve
    deviates from the chain by at most hausdorff_bound, and the polygon
    region is contained in the filled snowflake.
    """

    vertices: np.ndarray
    depth: int
    base_length: float
    hausdorff_bound: float

    @property
    def segment_count(self) -> int:
        return len(self.vertices)

    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        """Segment endpoint arrays (starts, ends), each (m, 2)."""
        starts = self.vertices
        ends = np.roll(self.vertices, -1, axis=0)
        return starts, ends

    def area(self) -> float:
        """Shoelace area of the polygon region."""
        x = self.vertices[:, 0]
        y = self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _koch_subdivide(points: np.ndarray) -> np.ndarray:
    """One outward substitution round on every edge of a closed chain.

    For a counterclockwise chain the bump apex goes to the right of the
    edge direction, i.e. away from the enclosed region.
    """
    p = points
    q = np.roll(points, -1, axis=0)
    d = q - p
    third = p + d / 3.0
    two_third = p + 2.0 * d / 3.0
    # right normal of (dx, dy) is (dy, -dx)
    apex_off = np.empty_like(d)
    apex_off[:, 0] = d[:, 1]
    apex_off[:, 1] = -d[:, 0]
    apex = p + 0.5 * d + (_SQRT3 / 6.0) * apex_off
    out = np.empty((4 * len(p), 2))
    out[0::4] = p
    out[1::4] = third
    out[2::4] = apex
    out[3::4] = two_third
    return out


def prefractal_boundary(base_length: float = 1.0, depth: int = 0) -> PrefractalBoundary:
    """Depth-n polyline boundary of the snowflake with given base length.

    Depth 0 is the base triangle; each round replaces every segment by
    four, so the chain has 3 * 4**depth segments.  The Hausdorff
    distance to the limit curve is at most (sqrt(3)/6) * b * 3**(-depth)
    since each remaining substitution stays inside the bump triangle
    over its chord.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    b = float(base_length)
    pts = np.array([[0.0, 0.0], [b, 0.0], [0.5 * b, 0.5 * _SQRT3 * b]])
    for _ in range(depth):
        pts = _koch_subdivide(pts)
    bound = (_SQRT3 / 6.0) * b * 3.0 ** (-depth)
    return PrefractalBoundary(
        vertices=pts, depth=depth, base_length=b, hausdorff_bound=bound
    )


def prefractal_area_deficit(base_length: float, depth: int) -> float:
    """Exact area of the snowflake minus its depth-n prefractal polygon.

    Every edge of length L adds bumps of total area (3*sqrt(3)/20)*L**2
    over all later rounds, giving (3*sqrt(3)/20) * (4/9)**depth * b**2.
    """
    return (3.0 * _SQRT3 / 20.0) * (4.0 / 9.0) ** depth * base_length**2
