"""Word-size prime arithmetic: primes, modular echelon forms, CRT and
rational reconstruction.

Matrices are numpy ``int64`` arrays with entries in ``[0, p)``.  Callers pick
the prime size so that every dot product they form stays below 2**63.
"""

from fractions import Fraction
from math import isqrt

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit):
    """Primes in decreasing order, starting just below ``limit``."""
    q = limit - 1
    while q > 2:
        if is_prime(q):
            yield q
        q -= 1


def prime_bits_for(max_terms):
    """Largest prime size (in bits) for which sums of ``max_terms`` products fit in int64."""
    return max(16, min(31, (62 - max(1, max_terms).bit_length()) // 2))


def rref_mod(a, p):
    """Reduced row echelon form mod p.  Returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not nz.size:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_mod(a, p):
    """Basis of the right kernel mod p, one vector per row."""
    ncols = a.shape[1]
    red, pivots = rref_mod(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for k, c in enumerate(pivots):
            out[i, c] = (-red[k, f]) % p
    return out


def crt_pair(r1, m1, r2, m2):
    """Combine x = r1 mod m1 and x = r2 mod m2 (coprime moduli) into x mod m1*m2."""
    t = (r2 - r1) * pow(m1 % m2, -1, m2) % m2
    return r1 + m1 * t


def rational_reconstruction(a, m):
    """The fraction n/d with n = a*d mod m and |n|, d <= sqrt(m/2), or None."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    f = Fraction(r1, s1)
    if (f.numerator - a * f.denominator) % m:
        return None
    return f
