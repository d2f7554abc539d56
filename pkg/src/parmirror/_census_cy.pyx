# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel; mirrors parmirror._census_py row for row.

All stability arithmetic runs in int64 at scale 2*wden. The dispatcher in
parmirror.kernels routes here only when an a-priori bound keeps every
intermediate comfortably below 2^63.
"""

from libc.stdlib cimport calloc, free


cdef void _dfs(int n, int nm, long long* C, long long* Rbuf, int j, long long num,
               long long* m, object t, object s, list rows):
    cdef long long cap, c, val
    cdef int li, i
    cdef long long* R
    cdef long long* R2
    if j == nm:
        if num % n == 0:
            rows.append((t, tuple([m[i] for i in range(nm)]), s, num / n))
        return
    R = Rbuf + j * nm
    R2 = Rbuf + (j + 1) * nm
    cap = (R[0] - 1) / C[j]
    for li in range(1, nm):
        c = (R[li] - 1) / C[li * nm + j]
        if c < cap:
            cap = c
    for val in range(cap + 1):
        m[j] = val
        for li in range(nm):
            R2[li] = R[li] - C[li * nm + j] * val
        _dfs(n, nm, C, Rbuf, j + 1, num + (j + 1) * val, m, t, s, rows)
    m[j] = 0


def enumerate_census(int n, int g, int k, long long d, words, wnum, long long wden,
                     int t0_lo=0, t0_hi=None):
    """Census rows whose first word index lies in [t0_lo, t0_hi).

    Same contract and row order as parmirror._census_py.enumerate_census.
    """
    cdef int nw = len(words)
    cdef int ihi = nw if t0_hi is None else <int> t0_hi
    cdef int nm = n - 1
    cdef long long chi = 2 * g - 2 + k
    cdef long long dn_shift = (n * (n - 1) * chi) / 2
    cdef int wi, p, j, li, l, pos, limit
    cdef long long w2, r, base
    rows = []
    if t0_lo >= ihi:
        return rows

    cdef int* letters = <int*> calloc(nw * n, sizeof(int))
    cdef int* desc = <int*> calloc(nw * nm, sizeof(int))
    cdef long long* wn = <long long*> calloc(k * n, sizeof(long long))
    cdef long long* tot = <long long*> calloc(k, sizeof(long long))
    cdef long long* tails = <long long*> calloc(k * nw * nm, sizeof(long long))
    cdef long long* C = <long long*> calloc(nm * nm, sizeof(long long))
    cdef long long* Rbuf = <long long*> calloc((nm + 1) * nm, sizeof(long long))
    cdef long long* mwork = <long long*> calloc(nm, sizeof(long long))
    cdef long long* svec = <long long*> calloc(nm, sizeof(long long))
    cdef int* idx = <int*> calloc(k, sizeof(int))
    if (letters == NULL or desc == NULL or wn == NULL or tot == NULL or tails == NULL
            or C == NULL or Rbuf == NULL or mwork == NULL or svec == NULL or idx == NULL):
        free(letters); free(desc); free(wn); free(tot); free(tails)
        free(C); free(Rbuf); free(mwork); free(svec); free(idx)
        raise MemoryError()

    try:
        for wi in range(nw):
            w = words[wi]
            for j in range(n):
                letters[wi * n + j] = w[j]
            for j in range(nm):
                desc[wi * nm + j] = 1 if letters[wi * n + j] > letters[wi * n + j + 1] else 0
        for p in range(k):
            pw = wnum[p]
            tot[p] = 0
            for j in range(n):
                wn[p * n + j] = pw[j]
                tot[p] += wn[p * n + j]
            for wi in range(nw):
                r = 0
                for l in range(n, 1, -1):
                    r += wn[p * n + (letters[wi * n + l - 1] - 1)]
                    tails[(p * nw + wi) * nm + (l - 2)] = r
        for li in range(nm):
            l = li + 2
            for j in range(1, n):
                C[li * nm + j - 1] = 2 * wden * ((n - l + 1) * j if j <= l - 1 else (l - 1) * (n - j))

        idx[0] = t0_lo
        for p in range(1, k):
            idx[p] = 0
        while True:
            for j in range(nm):
                svec[j] = 0
            for p in range(k):
                for j in range(nm):
                    svec[j] += desc[idx[p] * nm + j]
            feasible = True
            for li in range(nm):
                l = li + 2
                w2 = 0
                for p in range(k):
                    w2 += (n - l + 1) * tot[p] - n * tails[(p * nw + idx[p]) * nm + li]
                r = 2 * w2 + (n - l + 1) * (l - 1) * n * chi * wden
                for j in range(nm):
                    r -= C[li * nm + j] * svec[j]
                if r <= 0:
                    feasible = False
                    break
                Rbuf[li] = r
            if feasible:
                base = d - dn_shift
                for j in range(nm):
                    base += (j + 1) * svec[j]
                t_obj = tuple([idx[p] for p in range(k)])
                s_obj = tuple([svec[j] for j in range(nm)])
                for j in range(nm):
                    mwork[j] = 0
                _dfs(n, nm, C, Rbuf, 0, base, mwork, t_obj, s_obj, rows)
            pos = k - 1
            while pos >= 0:
                idx[pos] += 1
                limit = ihi if pos == 0 else nw
                if idx[pos] < limit:
                    break
                idx[pos] = t0_lo if pos == 0 else 0
                pos -= 1
            if pos < 0:
                break
    finally:
        free(letters); free(desc); free(wn); free(tot); free(tails)
        free(C); free(Rbuf); free(mwork); free(svec); free(idx)
    return rows
