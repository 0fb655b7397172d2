# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled gate kernels for the dense statevector.

All kernels mutate the amplitude buffer in place. The pure-Python module
``_kernels_py`` implements the identical interface; selection happens in
``_backend``.

Diagonal phases are computed in three unit-stride passes (angles, cos, sin)
over scratch buffers so the compiler can vectorize the trig calls, followed
by one complex-rotation pass.
"""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc


cdef inline void _rotate(double* d, const double* c, const double* s,
                         Py_ssize_t m) noexcept:
    # amps[k] *= (c[k] + 1j*s[k]) on interleaved re/im storage
    cdef Py_ssize_t k
    cdef double re, im
    for k in range(m):
        re = d[2 * k]
        im = d[2 * k + 1]
        d[2 * k] = re * c[k] - im * s[k]
        d[2 * k + 1] = re * s[k] + im * c[k]


cdef int _phase_rotate(double* d, const double* ang, Py_ssize_t m) except -1:
    cdef double* c = <double*> malloc(2 * m * sizeof(double))
    if c == NULL:
        raise MemoryError()
    cdef double* s = c + m
    cdef Py_ssize_t k
    for k in range(m):
        c[k] = cos(ang[k])
    for k in range(m):
        s[k] = sin(ang[k])
    _rotate(d, c, s, m)
    free(c)
    return 0


def apply_phase(double complex[::1] amps, const double[::1] values, double scale):
    """amps[k] *= exp(1j * scale * values[k])."""
    cdef Py_ssize_t k, m = amps.shape[0]
    cdef double* ang = <double*> malloc(m * sizeof(double))
    if ang == NULL:
        raise MemoryError()
    for k in range(m):
        ang[k] = scale * values[k]
    _phase_rotate(<double*> &amps[0], ang, m)
    free(ang)


def apply_phase_pair(double complex[::1] amps,
                     const double[::1] v1, double s1,
                     const double[::1] v2, double s2):
    """amps[k] *= exp(1j * (s1 * v1[k] + s2 * v2[k])). Fused diagonal layer."""
    cdef Py_ssize_t k, m = amps.shape[0]
    cdef double* ang = <double*> malloc(m * sizeof(double))
    if ang == NULL:
        raise MemoryError()
    for k in range(m):
        ang[k] = s1 * v1[k] + s2 * v2[k]
    _phase_rotate(<double*> &amps[0], ang, m)
    free(ang)


cdef void _rx_one(double* d, Py_ssize_t m, Py_ssize_t stride,
                  double c, double s) noexcept:
    # single-qubit rotation at the given stride (in complex elements)
    cdef Py_ssize_t base, off, i2, j2
    cdef double r0, i0, r1, i1
    base = 0
    while base < m:
        for off in range(stride):
            i2 = 2 * (base + off)
            j2 = i2 + 2 * stride
            r0 = d[i2]
            i0 = d[i2 + 1]
            r1 = d[j2]
            i1 = d[j2 + 1]
            d[i2] = c * r0 - s * i1
            d[i2 + 1] = c * i0 + s * r1
            d[j2] = c * r1 - s * i0
            d[j2 + 1] = c * i1 + s * r0
        base += 2 * stride


cdef void _rx_two(double* d, Py_ssize_t m, Py_ssize_t s1, Py_ssize_t s2,
                  double c, double s) noexcept:
    # rotation on two qubits (strides s1 < s2) fused into one memory pass
    cdef double cc = c * c, ss = s * s, cs = c * s
    cdef Py_ssize_t b2, b1, off, k0, k1, k2, k3
    cdef double r0, i0, r1, i1, r2, i2, r3, i3
    b2 = 0
    while b2 < m:
        b1 = b2
        while b1 < b2 + s2:
            for off in range(s1):
                k0 = 2 * (b1 + off)
                k1 = k0 + 2 * s1
                k2 = k0 + 2 * s2
                k3 = k2 + 2 * s1
                r0 = d[k0]
                i0 = d[k0 + 1]
                r1 = d[k1]
                i1 = d[k1 + 1]
                r2 = d[k2]
                i2 = d[k2 + 1]
                r3 = d[k3]
                i3 = d[k3 + 1]
                d[k0] = cc * r0 - cs * i1 - cs * i2 - ss * r3
                d[k0 + 1] = cc * i0 + cs * r1 + cs * r2 - ss * i3
                d[k1] = -cs * i0 + cc * r1 - ss * r2 - cs * i3
                d[k1 + 1] = cs * r0 + cc * i1 - ss * i2 + cs * r3
                d[k2] = -cs * i0 - ss * r1 + cc * r2 - cs * i3
                d[k2 + 1] = cs * r0 - ss * i1 + cc * i2 + cs * r3
                d[k3] = -ss * r0 - cs * i1 - cs * i2 + cc * r3
                d[k3 + 1] = -ss * i0 + cs * r1 + cs * r2 + cc * i3
            b1 += 2 * s1
        b2 += 2 * s2


def apply_rx_all(double complex[::1] amps, int n_qubits, double beta):
    """Apply exp(1j * beta * X) to every qubit.

    Per qubit pair (a0, a1) -> (c*a0 + i*s*a1, i*s*a0 + c*a1) with
    c = cos(beta), s = sin(beta). Qubits are processed two per memory pass.
    """
    cdef double c = cos(beta), s = sin(beta)
    cdef double* d = <double*> &amps[0]
    cdef Py_ssize_t m = amps.shape[0]
    cdef int q
    q = 0
    while q + 1 < n_qubits:
        _rx_two(d, m, (<Py_ssize_t> 1) << q, (<Py_ssize_t> 1) << (q + 1), c, s)
        q += 2
    if q < n_qubits:
        _rx_one(d, m, (<Py_ssize_t> 1) << q, c, s)


def expect_diagonal(const double complex[::1] amps, const double[::1] values):
    """Return sum_k |amps[k]|^2 * values[k]."""
    cdef Py_ssize_t k, m = amps.shape[0]
    cdef const double* d = <const double*> &amps[0]
    cdef double acc = 0.0
    for k in range(m):
        acc += (d[2 * k] * d[2 * k] + d[2 * k + 1] * d[2 * k + 1]) * values[k]
    return acc
