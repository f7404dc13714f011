"""Pure-numpy fallback for the projection kernel.

Blocks the outer direction set so the (N x M) cosine matrix never
materializes in full.
"""

from __future__ import annotations

import numpy as np

_BLOCK = 512


def projection_parts(thetas, normals, weights, p):
    """One-sided boundary sums of the projection integrand.

    For each outer direction theta_j returns

        iplus[j]  = sum_i max(theta_j . nu_i, 0)^p * w_i
        iminus[j] = sum_i max(-theta_j . nu_i, 0)^p * w_i

    Every asymmetry parameter is a fixed linear combination of the two, so
    this single pass serves a whole tau grid.
    """
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    normals = np.ascontiguousarray(normals, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    m = thetas.shape[0]
    iplus = np.empty(m)
    iminus = np.empty(m)
    nt = normals.T
    for start in range(0, m, _BLOCK):
        sl = slice(start, min(start + _BLOCK, m))
        dots = thetas[sl] @ nt
        pos = np.maximum(dots, 0.0)
        neg = np.maximum(-dots, 0.0)
        if p == 1.0:
            pass
        elif p == 2.0:
            pos *= pos
            neg *= neg
        else:
            np.power(pos, p, out=pos)
            np.power(neg, p, out=neg)
        iplus[sl] = pos @ weights
        iminus[sl] = neg @ weights
    return iplus, iminus
