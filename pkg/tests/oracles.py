"""Independent reference implementations used only by the tests.

These deliberately avoid the package's kernels and scan machinery so that
every dual-route check stays a genuine cross-check.
"""

import numpy as np


def brute_force_survivors(values) -> np.ndarray:
    """All-pairs O(n^2) dominance filter mask (maximization).

    One candidate row against the full matrix at a time; a dominator is a row
    that is componentwise >= with at least one strict >.
    """
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        ge = (values >= values[i]).all(axis=1)
        gt = (values > values[i]).any(axis=1)
        if (ge & gt).any():
            mask[i] = False
    return mask


# Frozen high-precision reference values for the case-study formulas,
# computed with 50-digit arithmetic from the default constants.
RATE_K100_N300_P1 = 20100918.813227392543       # bit/s
PTOTAL_K1_N2_P0 = 12.3000046875                 # W (exact rational)
PTOTAL_K100_N300_P0 = 347.03125                 # W (exact rational)
PRECODING_POWER_K100_N300 = 7.03125             # W (exact rational)
G2_K100_N300_P1 = 32161470101.163828068         # bit/s/km^2
G3_K100_N300_P1 = 5738904.7395264346181         # bit/J
