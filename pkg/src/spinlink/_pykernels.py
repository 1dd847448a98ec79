"""Pure-Python versions of the hot loops (used when the extension is absent)."""
from __future__ import annotations

import math

import numpy as np

_SLACK = 1e-9


def q_table(orders, qnum, lnum, modulus):
    """Numerators of q on every element (lexicographic order), mod ``modulus``."""
    k = len(orders)
    size = 1
    for d in orders:
        size *= d
    out = np.zeros(size, dtype=np.int64)
    if k == 0:
        return out
    x = [0] * k
    idx = 0
    while True:
        val = 0
        for i in range(k):
            xi = x[i]
            if xi:
                val += xi * xi * qnum[i]
                row = lnum[i]
                for j in range(i + 1, k):
                    if x[j]:
                        val += xi * x[j] * row[j]
        out[idx] = val % modulus
        idx += 1
        i = k - 1
        while i >= 0:
            x[i] += 1
            if x[i] < orders[i]:
                break
            x[i] = 0
            i -= 1
        if i < 0:
            return out


def _walk(chol, center, radius):
    """Yield integer ``u`` with ``(u + center)^T M (u + center) <= radius``, M = chol^T chol."""
    n = len(center)
    if n == 0:
        yield ()
        return
    diag = [chol[i][i] ** 2 for i in range(n)]
    mu = [[chol[i][j] / chol[i][i] for j in range(n)] for i in range(n)]
    limit = radius * (1 + _SLACK) + _SLACK
    u = [0] * n
    v = [0.0] * n

    def rec(i, remaining):
        c = -sum(mu[i][j] * v[j] for j in range(i + 1, n))
        half = math.sqrt(max(remaining, 0.0) / diag[i])
        lo = math.ceil(c - half - center[i] - _SLACK)
        hi = math.floor(c + half - center[i] + _SLACK)
        for ui in range(lo, hi + 1):
            vi = ui + center[i]
            rest = remaining - diag[i] * (vi - c) ** 2
            if rest < -_SLACK * (1 + limit):
                continue
            u[i] = ui
            v[i] = vi
            if i == 0:
                yield tuple(u)
            else:
                yield from rec(i - 1, rest)

    yield from rec(n - 1, limit)


def coset_points(chol, hmat, center, radius):
    """Integer offsets ``u`` with ``H(u + center) <= radius`` (H = hmat)."""
    n = len(center)
    out = []
    for u in _walk(chol, center, radius):
        vec = [u[i] + center[i] for i in range(n)]
        h = sum(vec[i] * hmat[i][j] * vec[j] for i in range(n) for j in range(n))
        if h <= radius * (1 + 1e-12) + 1e-12:
            out.append(u)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def theta_coset(chol, hmat, kmat, center, radius, x, y):
    """Compensated sum of ``exp(-pi y H(v) + pi i x K(v))`` over the truncated coset.

    Returns ``(real, imag, count)``.
    """
    n = len(center)
    re = im = 0.0
    cre = cim = 0.0
    count = 0
    for u in _walk(chol, center, radius):
        vec = [u[i] + center[i] for i in range(n)]
        h = 0.0
        kk = 0.0
        for i in range(n):
            for j in range(n):
                p = vec[i] * vec[j]
                h += hmat[i][j] * p
                kk += kmat[i][j] * p
        if h > radius * (1 + 1e-12) + 1e-12:
            continue
        count += 1
        mag = math.exp(-math.pi * y * h)
        ang = math.pi * x * kk
        t = mag * math.cos(ang) - cre
        s = re + t
        cre = (s - re) - t
        re = s
        t = mag * math.sin(ang) - cim
        s = im + t
        cim = (s - im) - t
        im = s
    return re, im, count
