"""Pure-numpy implementations of the hot kernels.

Semantics match the compiled extension; inputs are assumed validated
(finite values, feasible points) by the callers.
"""

import numpy as np


def mimo_objective_table(K, N, P, B, sigma2, area, lam1, lam2, upsilon,
                         eta, c_n, c_k, c_0, l_eff):
    """Evaluate (user rate, area rate, energy efficiency) per point.

    K, N, P are parallel 1-D float64 arrays of feasible points
    (1 <= K <= N/2, P >= 0), so the SINR argument is never negative.
    Returns an (n, 3) C-contiguous array.
    """
    prelog = B * (1.0 - K / upsilon)
    sinr = (P / K) * (N - K) / (sigma2 * lam1 + P * lam2)
    g1 = prelog * np.log2(1.0 + sinr)
    ptot = P / eta + N * c_n + K * c_k + 3.0 * K * K * N * (B / upsilon) / l_eff + c_0
    g2 = (K / area) * g1
    g3 = K * g1 / ptot
    out = np.empty((len(K), 3), dtype=np.float64)
    out[:, 0] = g1
    out[:, 1] = g2
    out[:, 2] = g3
    return out


def pareto_survivor_mask(values):
    """Mask of rows of ``values`` not dominated by any other row.

    Dominance is componentwise >= with at least one strict >; exact ties
    survive. Points are processed in descending component-sum order so a
    candidate only ever needs to be checked against current survivors
    (any dominator has a strictly larger sum and is itself dominated only
    by earlier survivors).
    """
    n, m = values.shape
    order = np.argsort(-values.sum(axis=1), kind="stable")
    mask = np.ones(n, dtype=bool)
    surv = np.empty_like(values)
    count = 0
    for idx in order:
        p = values[idx]
        if count:
            s = surv[:count]
            ge = (s >= p).all(axis=1)
            if ge.any() and (s[ge] > p).any():
                mask[idx] = False
                continue
        surv[count] = p
        count += 1
    return mask
