"""Pure-Python kernels, same algorithms as ``rk_kernels.h``.

Used when the compiled extension is unavailable, when arguments exceed
64-bit range, or when ``RECDIV_PURE_PYTHON`` is set.
"""

import numpy as np

MAXK = None
NAME = "python"
ITER_FACTOR = 64


def _term_iter(a, init, n, m):
    k = len(a)
    state = list(init)
    for _ in range(k, n + 1):
        nxt = 0
        for j in range(k):
            nxt += a[j] * state[-1 - j]
        state.append(nxt % m)
        del state[0]
    return state[-1]


def _polymulmod(a, r, s, m):
    k = len(a)
    t = [0] * (2 * k - 1)
    for i, ri in enumerate(r):
        if ri:
            for j, sj in enumerate(s):
                t[i + j] += ri * sj
    for i in range(2 * k - 2, k - 1, -1):
        c = t[i] % m
        if c:
            for j in range(1, k + 1):
                t[i - j] += c * a[j - 1]
    return [v % m for v in t[:k]]


def _polymulx(a, r, m):
    k = len(a)
    c = r[-1]
    out = [0] + r[:-1]
    if c:
        for j in range(1, k + 1):
            out[k - j] = (out[k - j] + c * a[j - 1]) % m
    return out


def _term_pow(a, init, n, m):
    k = len(a)
    r = [1 % m] + [0] * (k - 1)
    for bit in bin(n)[2:]:
        r = _polymulmod(a, r, r, m)
        if bit == "1":
            r = _polymulx(a, r, m)
    return sum(ri * ui for ri, ui in zip(r, init)) % m


def term_mod(coeffs, init, n, m):
    """u_n mod m; ``coeffs`` and ``init`` must already be residues mod m."""
    if m == 1:
        return 0
    k = len(coeffs)
    if n < k:
        return init[n]
    if n <= ITER_FACTOR * k:
        return _term_iter(coeffs, init, n, m)
    return _term_pow(coeffs, init, n, m)


def census_block(coeffs, init, lo, hi):
    """Membership flags for lo <= n < hi as a uint8 array."""
    out = np.zeros(max(hi - lo, 0), dtype=np.uint8)
    for n in range(lo, hi):
        a = [c % n for c in coeffs]
        u = [v % n for v in init]
        out[n - lo] = term_mod(a, u, n, n) == 0
    return out
