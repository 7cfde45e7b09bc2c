# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled cyclic Jacobi eigensolver for small Hermitian matrices.

Same contract as fallback.py: eigh_many / eigvalsh_many over a
(batch, n, n) complex128 stack, eigenvalues ascending. Scalar loops per
matrix beat the vectorized numpy lane once matrices are this small.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, sqrt

cnp.import_array()

BACKEND = "compiled"

# Iteration cap of 100 cyclic sweeps; off-diagonal Frobenius threshold
# 1e-13 relative to max(1, ||A||_F). Shared with the python fallback.
cdef double _OFF_TOL = 1e-13
cdef int _SWEEP_CAP = 100


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef bint _below_threshold(double complex[:, ::1] a, int n, double thresh) noexcept nogil:
    cdef double acc = 0.0
    cdef int i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += _abs2(a[i, j])
    return sqrt(acc) <= thresh


cdef int _jacobi_one(double complex[:, ::1] a, double complex[:, ::1] v,
                     int n, bint compute_v) noexcept nogil:
    """Diagonalize one matrix in place. Returns sweeps used, -1 on cap."""
    cdef double fro = 0.0
    cdef int i, p, q, sweep
    cdef double m, app, aqq, theta, sgn, t, c, s, thresh
    cdef double complex apq, phase, cphase, rphase, tp, tq
    for p in range(n):
        for q in range(n):
            fro += _abs2(a[p, q])
    fro = sqrt(fro)
    thresh = _OFF_TOL * (fro if fro > 1.0 else 1.0)

    for sweep in range(_SWEEP_CAP):
        if _below_threshold(a, n, thresh):
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                m = sqrt(_abs2(apq))
                if m == 0.0:
                    continue
                phase = apq / m
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (app - aqq) / (2.0 * m)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (fabs(theta) + hypot(1.0, theta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                cphase = c * phase
                rphase = c * phase.conjugate()
                for i in range(n):
                    tp = a[i, p]
                    tq = a[i, q]
                    a[i, p] = cphase * tp + s * tq
                    a[i, q] = -s * phase * tp + c * tq
                for i in range(n):
                    tp = a[p, i]
                    tq = a[q, i]
                    a[p, i] = rphase * tp + s * tq
                    a[q, i] = -s * phase.conjugate() * tp + c * tq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if compute_v:
                    for i in range(n):
                        tp = v[i, p]
                        tq = v[i, q]
                        v[i, p] = cphase * tp + s * tq
                        v[i, q] = -s * phase * tp + c * tq
    if _below_threshold(a, n, thresh):
        return _SWEEP_CAP
    return -1


cdef void _sort_one(double[:] w, double complex[:, ::1] v, int n, bint compute_v) noexcept nogil:
    # insertion sort, swapping eigenvector columns along with values
    cdef int i, j, k
    cdef double key
    cdef double complex tmp
    for i in range(1, n):
        key = w[i]
        j = i - 1
        while j >= 0 and w[j] > key:
            w[j + 1] = w[j]
            if compute_v:
                for k in range(n):
                    tmp = v[k, j + 1]
                    v[k, j + 1] = v[k, j]
                    v[k, j] = tmp
            j -= 1
        w[j + 1] = key


def _run(object a, bint compute_v):
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] work = np.array(
        a, dtype=np.complex128, order="C", copy=True)
    if work.ndim != 3 or work.shape[1] != work.shape[2]:
        raise ValueError(f"expected (batch, n, n) array, got shape {np.shape(a)}")
    cdef Py_ssize_t batch = work.shape[0]
    cdef int n = <int> work.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w = np.empty((batch, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] v = np.zeros(
        (batch if compute_v else 0, n, n), dtype=np.complex128)
    cdef double complex[:, :, ::1] av = work
    cdef double complex[:, :, ::1] vv = v
    cdef double[:, ::1] wv = w
    cdef double complex[:, ::1] vslice
    cdef Py_ssize_t b
    cdef int i, res
    cdef bint ok = True

    if batch == 0 or n == 1:
        for b in range(batch):
            wv[b, 0] = av[b, 0, 0].real
            if compute_v:
                vv[b, 0, 0] = 1.0
        return w, (v if compute_v else None), True

    for b in range(batch):
        vslice = vv[b] if compute_v else av[b]
        if compute_v:
            for i in range(n):
                vslice[i, i] = 1.0
        res = _jacobi_one(av[b], vslice, n, compute_v)
        if res < 0:
            ok = False
        for i in range(n):
            wv[b, i] = av[b, i, i].real
        _sort_one(wv[b], vslice, n, compute_v)
    return w, (v if compute_v else None), ok


def eigh_many(a):
    """Ascending eigenvalues and eigenvectors for a stack of Hermitian matrices."""
    return _run(a, True)


def eigvalsh_many(a):
    """Ascending eigenvalues only; skips the eigenvector accumulation."""
    w, _, ok = _run(a, False)
    return w, ok
