# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of subgrid.kernels: same formulas, same operation order."""

from libc.math cimport cos, exp, floor

cdef double _PI = 3.141592653589793


cpdef double goldstein_price(double x1, double x2):
    cdef double a = x1 + x2 + 1.0
    cdef double b = 2.0 * x1 - 3.0 * x2
    cdef double p = 19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2
    cdef double q = 18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2
    return (1.0 + a * a * p) * (30.0 + b * b * q)


cpdef double easom(double x1, double x2):
    cdef double u = x1 - _PI
    cdef double v = x2 - _PI
    return -cos(x1) * cos(x2) * exp(-(u * u + v * v))


cpdef double sphere(xs):
    cdef double s = 0.0
    cdef double v
    for v in xs:
        s += v * v
    return s


cpdef double rosenbrock(double x1, double x2):
    cdef double u = x1 * x1 - x2
    cdef double v = 1.0 - x1
    return 100.0 * u * u + v * v


cpdef double step_floor(xs):
    cdef double s = 30.0
    cdef double v
    for v in xs:
        s += floor(v)
    return s


cpdef double quartic_noiseless(xs):
    cdef double s = 0.0
    cdef double v, v2
    cdef int i = 0
    for v in xs:
        i += 1
        v2 = v * v
        s += i * v2 * v2
    return s


cdef double[5] _FOXHOLE = [-32.0, -16.0, 0.0, 16.0, 32.0]


cpdef double shekel_foxholes(double x1, double x2):
    cdef double s = 0.002
    cdef double a0, a1, u, v, u3, v3
    cdef int i
    for i in range(25):
        a0 = _FOXHOLE[i % 5]
        a1 = _FOXHOLE[i // 5]
        u = x1 - a0
        v = x2 - a1
        u3 = u * u * u
        v3 = v * v * v
        s += 1.0 / ((i + 1) + u3 * u3 + v3 * v3)
    return 1.0 / s
