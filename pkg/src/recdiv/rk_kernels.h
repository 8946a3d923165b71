/* Hot kernels for u_n mod m of an order-k integer recurrence.
 *
 * Residues live in [0, m) with m < 2^63; products go through 128-bit
 * intermediates when m does not fit in 32 bits.
 */
#ifndef RK_KERNELS_H
#define RK_KERNELS_H

#include <stdint.h>
#include <string.h>

#define RK_MAXK 32
#define RK_ITER_FACTOR 64

static inline uint64_t rk_mulmod(uint64_t a, uint64_t b, uint64_t m)
{
    if (m <= 0xFFFFFFFFULL)
        return (a * b) % m;
    return (uint64_t)(((unsigned __int128)a * b) % m);
}

static inline uint64_t rk_addmod(uint64_t a, uint64_t b, uint64_t m)
{
    uint64_t s = a + b;
    return s >= m ? s - m : s;
}

static inline uint64_t rk_reduce_signed(int64_t v, uint64_t m)
{
    if (v >= 0)
        return (uint64_t)v % m;
    /* -(v+1) avoids overflow at INT64_MIN */
    uint64_t r = ((uint64_t)(-(v + 1))) % m;
    return r == m - 1 ? 0 : m - 1 - r;
}

/* Linear walk: O(n k). */
static uint64_t rk_term_iter(int k, const uint64_t *a, const uint64_t *init,
                             uint64_t n, uint64_t m)
{
    uint64_t buf[RK_MAXK];
    int head = 0;
    for (int i = 0; i < k; i++)
        buf[i] = init[i];
    for (uint64_t step = (uint64_t)k; step <= n; step++) {
        /* buf[(head + i) % k] holds u_{step-k+i} */
        uint64_t acc = 0;
        for (int j = 1; j <= k; j++) {
            int idx = (head + k - j) % k;
            acc = rk_addmod(acc, rk_mulmod(a[j - 1], buf[idx], m), m);
        }
        buf[head] = acc;
        head = (head + 1) % k;
    }
    /* u_n sits just before head */
    return buf[(head + k - 1) % k];
}

/* r <- r*s mod (X^k - a_1 X^{k-1} - ... - a_k) */
static void rk_polymulmod(int k, const uint64_t *a, uint64_t *r, const uint64_t *s,
                          uint64_t m)
{
    uint64_t t[2 * RK_MAXK];
    memset(t, 0, sizeof(uint64_t) * (2 * k - 1));
    for (int i = 0; i < k; i++) {
        if (r[i] == 0)
            continue;
        for (int j = 0; j < k; j++)
            t[i + j] = rk_addmod(t[i + j], rk_mulmod(r[i], s[j], m), m);
    }
    for (int i = 2 * k - 2; i >= k; i--) {
        uint64_t c = t[i];
        if (c == 0)
            continue;
        for (int j = 1; j <= k; j++)
            t[i - j] = rk_addmod(t[i - j], rk_mulmod(c, a[j - 1], m), m);
    }
    memcpy(r, t, sizeof(uint64_t) * k);
}

static void rk_polymulx(int k, const uint64_t *a, uint64_t *r, uint64_t m)
{
    uint64_t c = r[k - 1];
    for (int i = k - 1; i >= 1; i--)
        r[i] = r[i - 1];
    r[0] = 0;
    if (c == 0)
        return;
    for (int j = 1; j <= k; j++)
        r[k - j] = rk_addmod(r[k - j], rk_mulmod(c, a[j - 1], m), m);
}

/* X^n mod f, then u_n = sum r_i u_i: O(k^2 log n). */
static uint64_t rk_term_pow(int k, const uint64_t *a, const uint64_t *init,
                            uint64_t n, uint64_t m)
{
    uint64_t r[RK_MAXK];
    memset(r, 0, sizeof(uint64_t) * k);
    r[0] = 1 % m;
    int top = 63;
    while (top > 0 && !((n >> top) & 1ULL))
        top--;
    for (int b = top; b >= 0; b--) {
        rk_polymulmod(k, a, r, r, m);
        if ((n >> b) & 1ULL)
            rk_polymulx(k, a, r, m);
    }
    uint64_t acc = 0;
    for (int i = 0; i < k; i++)
        acc = rk_addmod(acc, rk_mulmod(r[i], init[i], m), m);
    return acc;
}

/* a, init already reduced into [0, m). */
static uint64_t rk_term_mod(int k, const uint64_t *a, const uint64_t *init,
                            uint64_t n, uint64_t m)
{
    if (m == 1)
        return 0;
    if (n < (uint64_t)k)
        return init[n];
    if (n <= (uint64_t)(RK_ITER_FACTOR * k))
        return rk_term_iter(k, a, init, n, m);
    return rk_term_pow(k, a, init, n, m);
}

/* out[n - lo] = (n | u_n) for lo <= n < hi, lo >= 1. */
static void rk_census(int k, const int64_t *coeffs, const int64_t *init,
                      uint64_t lo, uint64_t hi, uint8_t *out)
{
    uint64_t a[RK_MAXK], u[RK_MAXK];
    for (uint64_t n = lo; n < hi; n++) {
        for (int i = 0; i < k; i++) {
            a[i] = rk_reduce_signed(coeffs[i], n);
            u[i] = rk_reduce_signed(init[i], n);
        }
        out[n - lo] = rk_term_mod(k, a, u, n, n) == 0;
    }
}

#endif
