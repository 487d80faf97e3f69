"""Inner parallel volumes and spectral poles of Koch snowflake sprays.

The package is organized around one family of planar regions: a spray
whose generator is a Koch snowflake with k1 + k2 smaller companion
snowflakes, scaled copies of which accumulate along a geometric
lattice.  It provides

* ifs: the self-similar map system, word multiplicities, prefractal
  boundary polylines, and the exact region areas;
* zeros: the lattice polynomials whose roots are the complex poles of
  the volume and counting transforms, with residual certificates;
* snowflake: the exact piecewise closed form of the snowflake's inner
  parallel volume, including the certified corner-erosion table;
* expansion: two-term asymptotics of the spray volume, pole residues,
  exact expansion prefactors, counting-coefficient bounds, and
  renewal-equation counting for exactly countable generators;
* oracle: an independent brute-force geometric estimator with split
  deterministic/stochastic error bounds, used to test everything else;
* cli: the `kochspray` command wrapping all of the above.
"""

from .ifs import (
    CURVE_DIMENSION,
    LATTICE_A,
    SNOWFLAKE_AREA_FACTOR,
    LatticeIFS,
    PrefractalBoundary,
    SimilarityMap,
    SprayConfig,
    WordMultiplicities,
    build_ifs,
    copy_mass_generating_value,
    exponent_histogram,
    generator_volume,
    prefractal_area_deficit,
    prefractal_boundary,
    spray_volume,
    word_multiplicities,
)
from .zeros import (
    LatticePolynomial,
    ZeroRecord,
    ZeroSet,
    correspondence_check,
    lattice_polynomial,
    similarity_dimension,
    zero_set,
)
from .snowflake import (
    SnowflakeVolumeModel,
    default_model,
    gamma_volume,
    generator_parallel_volume,
    snowflake_parallel_volume,
    uv_function_bounds,
    uv_functions,
)
from .expansion import (
    ExpansionModel,
    GeneratorCounting,
    VolumeCoefficients,
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
from .oracle import (
    SNOWFLAKE_DIAMETER,
    OracleEstimate,
    OraclePrecisionError,
    clear_oracle_caches,
    default_depth,
    distance_to_boundary,
    parallel_volume_estimate,
    spray_parallel_volume_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_DIMENSION",
    "LATTICE_A",
    "SNOWFLAKE_AREA_FACTOR",
    "SNOWFLAKE_DIAMETER",
    "ExpansionModel",
    "GeneratorCounting",
    "LatticeIFS",
    "LatticePolynomial",
    "OracleEstimate",
    "OraclePrecisionError",
    "PrefractalBoundary",
    "SimilarityMap",
    "SnowflakeVolumeModel",
    "SprayConfig",
    "VolumeCoefficients",
    "WordMultiplicities",
    "ZeroRecord",
    "ZeroSet",
    "build_ifs",
    "clear_oracle_caches",
    "copy_mass_generating_value",
    "correspondence_check",
    "counting_bound",
    "default_depth",
    "default_model",
    "distance_to_boundary",
    "exponent_histogram",
    "faber_krahn_ell0",
    "gamma_volume",
    "generator_parallel_volume",
    "generator_volume",
    "lattice_polynomial",
    "parallel_volume_estimate",
    "prefractal_area_deficit",
    "prefractal_boundary",
    "similarity_dimension",
    "snowflake_parallel_volume",
    "spray_counting",
    "spray_counting_brute",
    "spray_parallel_volume_closed",
    "spray_parallel_volume_estimate",
    "spray_volume",
    "square_generator",
    "square_generator_counting",
    "table_prefactors",
    "uv_function_bounds",
    "uv_functions",
    "volume_coefficients",
    "volume_expansion",
    "weyl_term",
    "word_multiplicities",
    "zero_set",
]
