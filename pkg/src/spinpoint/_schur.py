"""Complex Schur decomposition by Householder Hessenberg reduction and
shifted QR iteration.

Internal engine operating on raw ndarrays; the public wrappers live in
:mod:`spinpoint.cmatrix`. The QR step is the explicit single-shift form
(Givens rotations on the Hessenberg matrix), which is ample for the
dimensions this package targets (n up to a few dozen).
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

_EPS = np.finfo(float).eps

# QR steps allowed per matrix dimension before giving up.
SWEEP_BUDGET_PER_DIM = 40

# After this many steps without a deflation, take an ad hoc shift to
# break potential cycles.
_STALL_LIMIT = 12


def hessenberg(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``a`` to upper Hessenberg form H = Q* A Q.

    Returns ``(H, Q)`` with Q unitary (accumulated Householder
    reflections) and H zero below the first subdiagonal.
    """
    n = a.shape[0]
    h = np.array(a, dtype=complex)
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        v = x.copy()
        pivot = v[0]
        phase = pivot / abs(pivot) if abs(pivot) > 0.0 else 1.0
        v[0] += phase * norm_x
        norm_v = np.linalg.norm(v)
        if norm_v == 0.0:
            continue
        v /= norm_v
        # Similarity by P = I - 2 v v* on the trailing block.
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closest to d."""
    half_gap = (a - d) / 2.0
    disc = np.sqrt(half_gap * half_gap + b * c)
    mid = (a + d) / 2.0
    lam1 = mid + disc
    lam2 = mid - disc
    return lam1 if abs(lam1 - d) <= abs(lam2 - d) else lam2


def schur_decompose(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Compute A = Q T Q* with Q unitary and T upper triangular.

    Raises
    ------
    ConvergenceError
        If the trailing active block has not deflated after
        ``SWEEP_BUDGET_PER_DIM * n`` QR steps. The error carries the
        block index.
    """
    n = a.shape[0]
    if n == 1:
        return np.array(a, dtype=complex), np.eye(1, dtype=complex)
    h, q = hessenberg(a)
    scale = np.linalg.norm(h)
    budget = SWEEP_BUDGET_PER_DIM * n
    steps = 0
    stall = 0
    hi = n - 1
    while hi > 0:
        # Deflate converged trailing 1x1 blocks.
        deflated = False
        while hi > 0:
            thresh = _EPS * (abs(h[hi - 1, hi - 1]) + abs(h[hi, hi]))
            if thresh == 0.0:
                thresh = _EPS * scale
            if abs(h[hi, hi - 1]) > thresh:
                break
            h[hi, hi - 1] = 0.0
            hi -= 1
            deflated = True
        if deflated:
            stall = 0
        if hi == 0:
            break
        # Active block [lo..hi]: walk up to the nearest negligible
        # subdiagonal entry.
        lo = hi
        while lo > 0:
            thresh = _EPS * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo]))
            if thresh == 0.0:
                thresh = _EPS * scale
            if abs(h[lo, lo - 1]) <= thresh:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1

        if steps >= budget:
            raise ConvergenceError(
                f"QR iteration did not converge within {budget} steps "
                f"(active block ending at index {hi})",
                block_index=hi,
            )
        steps += 1
        stall += 1

        if stall % _STALL_LIMIT == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi],
                                  h[hi, hi - 1], h[hi, hi])

        # Explicit shifted QR step on the active block: factor
        # H - mu I = G* R by Givens rotations, then form R G + mu I.
        m = hi - lo
        cos = np.empty(m, dtype=complex)
        sin = np.empty(m, dtype=complex)
        for i in range(lo, hi + 1):
            h[i, i] -= mu
        for i in range(lo, hi):
            x, y = h[i, i], h[i + 1, i]
            r = np.hypot(abs(x), abs(y))
            if r == 0.0:
                c, s = 1.0 + 0.0j, 0.0 + 0.0j
            else:
                c, s = x / r, y / r
            cos[i - lo], sin[i - lo] = c, s
            top = h[i, i:].copy()
            bot = h[i + 1, i:].copy()
            h[i, i:] = np.conj(c) * top + np.conj(s) * bot
            h[i + 1, i:] = -s * top + c * bot
            h[i + 1, i] = 0.0
        for i in range(lo, hi):
            c, s = cos[i - lo], sin[i - lo]
            left = h[:i + 2, i].copy()
            right = h[:i + 2, i + 1].copy()
            h[:i + 2, i] = left * c + right * s
            h[:i + 2, i + 1] = -left * np.conj(s) + right * np.conj(c)
            qleft = q[:, i].copy()
            qright = q[:, i + 1].copy()
            q[:, i] = qleft * c + qright * s
            q[:, i + 1] = -qleft * np.conj(s) + qright * np.conj(c)
        for i in range(lo, hi + 1):
            h[i, i] += mu
    # Enforce the triangular structure the iteration produced.
    h[np.tril_indices(n, -1)] = 0.0
    return h, q
