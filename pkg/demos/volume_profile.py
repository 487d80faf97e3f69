"""Profile the closed-form inner parallel volume across radii.

Sweeps eps over several decades, printing the volume, its certified
error bound, and the scaled content V(eps) / eps^(2 - delta).  The
scaled content does not converge: it oscillates log-periodically with
period sqrt(3) in eps, which is the signature of the lattice geometry.
The oscillation is made visible by comparing radii one half-period and
one full period apart.

Usage: python3 volume_profile.py [count] [csv_path]
"""

import csv
import math
import sys

from kochspray.ifs import CURVE_DIMENSION
from kochspray.snowflake import snowflake_parallel_volume


def main(argv):
    count = int(argv[1]) if len(argv) > 1 else 25
    csv_path = argv[2] if len(argv) > 2 else None

    lo, hi = 1e-5, 1.0 / 3.0
    rows = []
    print(f"{'eps':>12}  {'volume':>18}  {'bound':>9}  {'scaled content':>14}")
    for i in range(count):
        eps = lo * (hi / lo) ** (i / (count - 1.0))
        val, err = snowflake_parallel_volume(eps)
        scaled = val / eps ** (2.0 - CURVE_DIMENSION)
        rows.append((eps, val, err, scaled))
        print(f"{eps:12.5e}  {val:18.12f}  {err:9.2e}  {scaled:14.9f}")

    print()
    print("log-periodicity: the scaled content repeats under eps -> eps/3")
    for eps in (1e-3, 3e-4):
        a = snowflake_parallel_volume(eps)[0] / eps ** (2.0 - CURVE_DIMENSION)
        b = snowflake_parallel_volume(eps / 3.0)[0] / (eps / 3.0) ** (
            2.0 - CURVE_DIMENSION
        )
        print(f"  eps={eps:8.1e}: {a:.9f}   eps/3: {b:.9f}   gap {abs(a-b):.2e}")
    half = math.sqrt(3.0)
    a = snowflake_parallel_volume(1e-3)[0] / 1e-3 ** (2.0 - CURVE_DIMENSION)
    b = snowflake_parallel_volume(1e-3 / half)[0] / (1e-3 / half) ** (
        2.0 - CURVE_DIMENSION
    )
    print(f"  half a period apart the content differs: {a:.6f} vs {b:.6f}")

    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epsilon", "volume", "error_bound", "scaled_content"])
            writer.writerows(rows)
        print(f"\nwrote {len(rows)} rows to {csv_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
