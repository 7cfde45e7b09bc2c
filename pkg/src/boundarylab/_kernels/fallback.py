"""Pure numpy batched Jacobi eigensolver for small Hermitian matrices.

Mirror of the compiled extension in _jacobi.pyx: cyclic-by-row complex
Jacobi rotations, vectorized across the batch axis so stacks of thousands
of 3x3 or 4x4 matrices diagonalize in a handful of array operations.

Both backends expose the same two entry points:

    eigh_many(a)     -> (w, v, converged)
    eigvalsh_many(a) -> (w, converged)

with a of shape (batch, n, n) complex128, w ascending along the last axis,
and v[b, :, k] the eigenvector of w[b, k].
"""
import numpy as np

SWEEP_CAP = 100
OFFDIAG_TOL = 1e-13
BACKEND = "python"


def _offdiag_norm(a, mask):
    return np.sqrt((np.abs(a[:, mask]) ** 2).sum(axis=1))


def _rotate_pair(a, v, p, q):
    # One batched Jacobi rotation zeroing a[:, p, q]; rotations where the
    # entry already vanishes collapse to the identity.
    apq = a[:, p, q].copy()
    m = np.abs(apq)
    active = m > 0.0
    safe_m = np.where(active, m, 1.0)
    # componentwise quotient: numpy's complex division overflows on
    # denormal denominators, while |re|, |im| <= m keeps these exact
    phase = (np.where(active, apq.real / safe_m, 1.0)
             + 1j * np.where(active, apq.imag / safe_m, 0.0))
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    with np.errstate(over="ignore"):
        # a denormal pivot beside an O(1) diagonal gap sends theta to
        # inf; t then underflows to 0 and the rotation degrades to a
        # pure phase, which is the right limit at that scale
        theta = np.where(active, (app - aqq) / (2.0 * safe_m), 0.0)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    # hypot keeps huge theta (nearly diagonal pairs) from overflowing
    t = sign / (np.abs(theta) + np.hypot(1.0, theta))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    c = np.where(active, c, 1.0)
    s = np.where(active, s, 0.0)
    cp = (c * phase)[:, None]
    cs = s[:, None]

    colp = a[:, :, p].copy()
    colq = a[:, :, q].copy()
    a[:, :, p] = cp * colp + cs * colq
    a[:, :, q] = -cs * phase[:, None] * colp + c[:, None] * colq
    rowp = a[:, p, :].copy()
    rowq = a[:, q, :].copy()
    cpc = (c * np.conj(phase))[:, None]
    a[:, p, :] = cpc * rowp + cs * rowq
    a[:, q, :] = -cs * np.conj(phase)[:, None] * rowp + c[:, None] * rowq
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q].copy()
        v[:, :, p] = cp * vp + cs * vq
        v[:, :, q] = -cs * phase[:, None] * vp + c[:, None] * vq


def _jacobi_batch(a, compute_v):
    a = np.array(a, dtype=np.complex128, order="C")
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected (batch, n, n) array, got shape {a.shape}")
    batch, n, _ = a.shape
    v = None
    if compute_v:
        v = np.zeros_like(a)
        v[:, range(n), range(n)] = 1.0
    if batch == 0 or n == 1:
        w = a[:, range(n), range(n)].real.copy()
        return w, v, True

    offmask = ~np.eye(n, dtype=bool)
    fro = np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2)))
    thresh = OFFDIAG_TOL * np.maximum(1.0, fro)
    converged = False
    for _ in range(SWEEP_CAP):
        if np.all(_offdiag_norm(a, offmask) <= thresh):
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate_pair(a, v, p, q)
    else:
        converged = bool(np.all(_offdiag_norm(a, offmask) <= thresh))

    w = a[:, range(n), range(n)].real.copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if compute_v:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v, converged


def eigh_many(a):
    """Ascending eigenvalues and eigenvectors for a stack of Hermitian matrices."""
    w, v, ok = _jacobi_batch(a, compute_v=True)
    return w, v, ok


def eigvalsh_many(a):
    """Ascending eigenvalues only; skips the eigenvector accumulation."""
    w, _, ok = _jacobi_batch(a, compute_v=False)
    return w, ok
