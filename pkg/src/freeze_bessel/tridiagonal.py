"""Eigenvalues of real symmetric tridiagonal matrices.

Implicit-shift QL iteration, eigenvalues only (no eigenvectors).  This is the
classic tql1 algorithm; it is kept self-contained because the Jacobi matrices
whose spectra we need (orthogonal-polynomial zero computation) are tiny and a
dependency-free routine makes the zero pipeline auditable end to end.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["tridiagonal_eigenvalues"]

_EPS = np.finfo(float).eps


def tridiagonal_eigenvalues(diag, offdiag, max_sweeps: int = 64) -> np.ndarray:
    """Eigenvalues (ascending) of the symmetric tridiagonal matrix.

    Parameters
    ----------
    diag : array_like, shape (n,)
        Main diagonal.
    offdiag : array_like, shape (n-1,)
        Sub/super diagonal (the matrix is symmetric).
    max_sweeps : int
        QL sweeps allowed per eigenvalue before giving up.
    """
    d = np.asarray(diag, dtype=float).copy()
    n = d.size
    if n == 0:
        return d
    off = np.asarray(offdiag, dtype=float)
    if off.shape != (n - 1,):
        raise ValueError(f"offdiag must have shape ({n - 1},), got {off.shape}")
    e = np.zeros(n)
    e[: n - 1] = off

    for l in range(n):
        sweeps = 0
        while True:
            # look for a negligible off-diagonal element to split at
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
            else:
                m = n - 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise RuntimeError("QL iteration failed to converge")
            # implicit shift from the 2x2 block at l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # recover from underflow and restart the sweep
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    d.sort()
    return d
