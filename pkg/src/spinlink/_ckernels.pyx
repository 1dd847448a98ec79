# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; mirrors spinlink._pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, cos, sin, ceil, floor, M_PI
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double _SLACK = 1e-9


cdef class _Walker


def q_table(orders, qnum, lnum, long long modulus):
    cdef int k = len(orders)
    cdef Py_ssize_t size = 1, idx
    cdef int i, j
    for d in orders:
        size *= d
    out = np.zeros(size, dtype=np.int64)
    if k == 0:
        return out
    cdef long long[::1] o = out
    cdef long long[::1] ords = np.asarray(orders, dtype=np.int64)
    cdef long long[::1] qn = np.asarray(qnum, dtype=np.int64) % modulus
    cdef long long[:, ::1] ln = np.ascontiguousarray(np.asarray(lnum, dtype=np.int64) % modulus)
    cdef long long[::1] x = np.zeros(k, dtype=np.int64)
    cdef long long val, xi
    idx = 0
    while True:
        val = 0
        for i in range(k):
            xi = x[i]
            if xi:
                val = (val + ((xi * xi) % modulus) * qn[i]) % modulus
                for j in range(i + 1, k):
                    if x[j]:
                        val = (val + ((xi * x[j]) % modulus) * ln[i, j]) % modulus
        o[idx] = val
        idx += 1
        i = k - 1
        while i >= 0:
            x[i] += 1
            if x[i] < ords[i]:
                break
            x[i] = 0
            i -= 1
        if i < 0:
            return out


cdef class _Sink:
    cdef int visit(self, _Walker w) except -1:
        return 0


cdef class _Walker:
    """Iterative Fincke-Pohst enumeration of a shifted ellipsoid."""
    cdef int n
    cdef double limit
    cdef double *diag
    cdef double *mu
    cdef double *center
    cdef double *rem
    cdef double *cen
    cdef long long *u
    cdef long long *hi
    cdef double *v

    def __cinit__(self, chol, center, double radius):
        cdef int i, j
        self.n = len(center)
        n = self.n
        self.diag = <double *> malloc(max(n, 1) * sizeof(double))
        self.mu = <double *> malloc(max(n * n, 1) * sizeof(double))
        self.center = <double *> malloc(max(n, 1) * sizeof(double))
        self.rem = <double *> malloc((n + 1) * sizeof(double))
        self.cen = <double *> malloc(max(n, 1) * sizeof(double))
        self.u = <long long *> malloc(max(n, 1) * sizeof(long long))
        self.hi = <long long *> malloc(max(n, 1) * sizeof(long long))
        self.v = <double *> malloc(max(n, 1) * sizeof(double))
        for i in range(n):
            self.diag[i] = chol[i][i] * chol[i][i]
            self.center[i] = center[i]
            for j in range(n):
                self.mu[i * n + j] = chol[i][j] / chol[i][i]
        self.limit = radius * (1 + _SLACK) + _SLACK

    def __dealloc__(self):
        free(self.diag); free(self.mu); free(self.center); free(self.rem)
        free(self.cen); free(self.u); free(self.hi); free(self.v)

    cdef void _bounds(self, int i):
        cdef double c = 0.0, half
        cdef int j
        for j in range(i + 1, self.n):
            c -= self.mu[i * self.n + j] * self.v[j]
        self.cen[i] = c
        half = sqrt(max(self.rem[i + 1], 0.0) / self.diag[i])
        self.u[i] = <long long> ceil(c - half - self.center[i] - _SLACK) - 1
        self.hi[i] = <long long> floor(c + half - self.center[i] + _SLACK)

    cdef int _advance(self, int i):
        # step coordinate i; return 1 if a valid value was set
        cdef double vi, rest
        while True:
            self.u[i] += 1
            if self.u[i] > self.hi[i]:
                return 0
            vi = self.u[i] + self.center[i]
            rest = self.rem[i + 1] - self.diag[i] * (vi - self.cen[i]) * (vi - self.cen[i])
            if rest < -_SLACK * (1 + self.limit):
                continue
            self.v[i] = vi
            self.rem[i] = rest
            return 1

    cdef int run(self, _Sink sink) except -1:
        cdef int n = self.n, i
        if n == 0:
            sink.visit(self)
            return 0
        self.rem[n] = self.limit
        i = n - 1
        self._bounds(i)
        while i < n:
            if self._advance(i):
                if i == 0:
                    sink.visit(self)
                else:
                    i -= 1
                    self._bounds(i)
            else:
                i += 1
        return 0


cdef double _form(double[:, ::1] m, double *v, int n):
    cdef double acc = 0.0
    cdef int i, j
    for i in range(n):
        for j in range(n):
            acc += m[i, j] * v[i] * v[j]
    return acc


cdef class _ThetaSink(_Sink):
    cdef double[:, ::1] hmat
    cdef double[:, ::1] kmat
    cdef double radius, x, y
    cdef public double re, im
    cdef double cre, cim
    cdef public long long count

    def __cinit__(self, hmat, kmat, double radius, double x, double y):
        self.hmat = np.ascontiguousarray(hmat, dtype=np.float64)
        self.kmat = np.ascontiguousarray(kmat, dtype=np.float64)
        self.radius = radius
        self.x = x
        self.y = y

    cdef int visit(self, _Walker w) except -1:
        cdef double h, kk, mag, ang, t, s
        cdef int n = w.n
        if n == 0:
            h = 0.0
            kk = 0.0
        else:
            h = _form(self.hmat, w.v, n)
            kk = _form(self.kmat, w.v, n)
        if h > self.radius * (1 + 1e-12) + 1e-12:
            return 0
        self.count += 1
        mag = exp(-M_PI * self.y * h)
        ang = M_PI * self.x * kk
        t = mag * cos(ang) - self.cre
        s = self.re + t
        self.cre = (s - self.re) - t
        self.re = s
        t = mag * sin(ang) - self.cim
        s = self.im + t
        self.cim = (s - self.im) - t
        self.im = s
        return 0


cdef class _PointSink(_Sink):
    cdef double[:, ::1] hmat
    cdef double radius
    cdef public list points

    def __cinit__(self, hmat, double radius):
        self.hmat = np.ascontiguousarray(hmat, dtype=np.float64)
        self.radius = radius
        self.points = []

    cdef int visit(self, _Walker w) except -1:
        cdef int n = w.n
        cdef double h = _form(self.hmat, w.v, n) if n else 0.0
        if h <= self.radius * (1 + 1e-12) + 1e-12:
            self.points.append(tuple([w.u[i] for i in range(n)]))
        return 0


def coset_points(chol, hmat, center, double radius):
    n = len(center)
    sink = _PointSink(np.asarray(hmat, dtype=np.float64).reshape(n, n), radius)
    cdef _Walker walker = _Walker(chol, center, radius)
    walker.run(sink)
    return np.array(sink.points, dtype=np.int64).reshape(len(sink.points), n)


def theta_coset(chol, hmat, kmat, center, double radius, double x, double y):
    n = len(center)
    sink = _ThetaSink(np.asarray(hmat, dtype=np.float64).reshape(n, n),
                      np.asarray(kmat, dtype=np.float64).reshape(n, n), radius, x, y)
    cdef _Walker walker = _Walker(chol, center, radius)
    walker.run(sink)
    return sink.re, sink.im, sink.count
