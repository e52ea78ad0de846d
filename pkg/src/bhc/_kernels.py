"""Numba kernels for the per-prime hot loops.

The generic root-count kernel mirrors omega.omega_generic exactly
(deg gcd(f mod r, t^r - t)) but runs on int64 coefficient arrays for
whole segments of primes at once.  Only valid while r < 2^31 and every
coefficient fits int64; callers enforce both.
"""

import numpy as np
from numba import njit

INT64_COEFF_LIMIT = 1 << 62
MODULUS_LIMIT = 1 << 31


@njit(cache=True)
def _modpow(base, exp, m):
    result = 1
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


@njit(cache=True)
def _gcd_degree(u, du, v, dv, r):
    """Degree of gcd(u, v) over F_r; u, v are scratch arrays, modified."""
    while dv >= 0:
        inv = _modpow(v[dv], r - 2, r)
        for j in range(dv + 1):
            v[j] = v[j] * inv % r
        for i in range(du, dv - 1, -1):
            c = u[i]
            if c:
                for j in range(dv + 1):
                    u[i - dv + j] = (u[i - dv + j] - c * v[j]) % r
        du_new = dv - 1
        while du_new >= 0 and u[du_new] == 0:
            du_new -= 1
        for j in range(du_new + 1):
            tmp = u[j]
            u[j] = v[j]
            v[j] = tmp
        for j in range(du_new + 1, dv + 1):
            u[j] = v[j]
        du, dv = dv, du_new
        # after swap: u holds old (monic) v, v holds the remainder
    return du


@njit(cache=True)
def omega_generic_batch(coeffs, primes):
    """Distinct-root counts of the polynomial at each prime (int64 in/out)."""
    n_coeff = coeffs.shape[0]
    out = np.empty(primes.shape[0], np.int64)
    deg = n_coeff - 1
    a = np.empty(n_coeff, np.int64)
    h = np.empty(n_coeff, np.int64)       # t^r accumulator, deg < da
    sq = np.empty(2 * n_coeff, np.int64)  # squaring scratch
    u = np.empty(n_coeff, np.int64)
    v = np.empty(n_coeff, np.int64)
    for idx in range(primes.shape[0]):
        r = primes[idx]
        da = -1
        for i in range(n_coeff):
            c = coeffs[i] % r
            a[i] = c
            if c:
                da = i
        if da < 0:
            out[idx] = r  # vanishes identically
            continue
        if da == 0:
            out[idx] = 0
            continue
        inv = _modpow(a[da], r - 2, r)
        for i in range(da + 1):
            a[i] = a[i] * inv % r
        if da == 1:
            out[idx] = 1
            continue
        # h = t^r mod a, left-to-right on the bits of r
        for i in range(da):
            h[i] = 0
        h[1] = 1
        dh = 1
        bit = 1 << (64 - 2)
        while bit > r:
            bit >>= 1
        bit >>= 1  # skip the leading bit: h = t already
        while bit:
            # h = h^2 mod a
            for i in range(sq.shape[0]):
                sq[i] = 0
            for i in range(dh + 1):
                hi = h[i]
                if hi:
                    for j in range(dh + 1):
                        sq[i + j] = (sq[i + j] + hi * h[j]) % r
            top = 2 * dh
            for i in range(top, da - 1, -1):
                c = sq[i]
                if c:
                    sq[i] = 0
                    for j in range(da):
                        sq[i - da + j] = (sq[i - da + j] - c * a[j]) % r
            if r & bit:
                # multiply by t: shift up one, then reduce the overflow term
                c = sq[da - 1]
                for i in range(da - 1, 0, -1):
                    sq[i] = sq[i - 1]
                sq[0] = 0
                if c:
                    for j in range(da):
                        sq[j] = (sq[j] - c * a[j]) % r
            dh = da - 1
            for i in range(da):
                h[i] = sq[i]
            while dh > 0 and h[dh] == 0:
                dh -= 1
            bit >>= 1
        # g = h - t
        dg = -1
        for i in range(da):
            v[i] = h[i]
        v[1] = (v[1] - 1) % r
        for i in range(da):
            if v[i]:
                dg = i
        if dg < 0:
            out[idx] = da  # a divides t^r - t
            continue
        for i in range(da + 1):
            u[i] = a[i]
        out[idx] = _gcd_degree(u, da, v, dg, r)
    return out
