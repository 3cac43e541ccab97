# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled kernels: packed-series products and batched group statistics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef long SLOT_MASK = (1 << 24) - 1

STAT_NAMES = (
    "desA", "majA", "des", "stdes", "col", "neg", "c1", "ndes", "nmajor",
    "fdes", "fmajor", "ch",
)
STAT_NAMES_R2 = (
    "natdes", "natmaj", "natdesA", "natmajA", "natfmaj", "dnatdes", "dndes", "dnmajor",
)


def mul_trunc(dict a, dict b, int shift, long K):
    cdef dict out = {}
    cdef list bs
    cdef Py_ssize_t i, nb
    cdef long room, g
    cdef object ma, ca, mb, cb, m
    if K < 0:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = out.get(m, 0) + ca * cb
    else:
        bs = sorted([(((mb >> shift) & SLOT_MASK), mb, cb) for mb, cb in b.items()])
        nb = len(bs)
        for ma, ca in a.items():
            room = K - <long>((ma >> shift) & SLOT_MASK)
            if room < 0:
                continue
            for i in range(nb):
                g = bs[i][0]
                if g > room:
                    break
                mb = bs[i][1]
                m = ma + mb
                out[m] = out.get(m, 0) + ca * bs[i][2]
    return {m: c for m, c in out.items() if c}


def geom_expand(dict p, object m, int shift, long K):
    cdef long gm = <long>((m >> shift) & SLOT_MASK)
    cdef long g
    cdef dict out = {}
    cdef object e, c
    if gm < 1:
        raise ValueError("denominator monomial must involve the grading variable")
    for e, c in p.items():
        g = <long>((e >> shift) & SLOT_MASK)
        while g <= K:
            out[e] = out.get(e, 0) + c
            e = e + m
            g += gm
    return {k: v for k, v in out.items() if v}


def wreath_statistics(letters, colors, long r):
    cdef cnp.int64_t[:, :] L = np.ascontiguousarray(letters, dtype=np.int64)
    cdef cnp.int64_t[:, :] C = np.ascontiguousarray(colors, dtype=np.int64)
    cdef Py_ssize_t N = L.shape[0], n = L.shape[1], row, j
    names = STAT_NAMES + (STAT_NAMES_R2 if r == 2 else ())
    res = {k: np.zeros(N, dtype=np.int64) for k in names}
    cdef cnp.int64_t[:] o_desA = res["desA"], o_majA = res["majA"], o_des = res["des"]
    cdef cnp.int64_t[:] o_st = res["stdes"], o_col = res["col"], o_neg = res["neg"]
    cdef cnp.int64_t[:] o_c1 = res["c1"], o_ndes = res["ndes"], o_nmaj = res["nmajor"]
    cdef cnp.int64_t[:] o_fdes = res["fdes"], o_fmaj = res["fmajor"], o_ch = res["ch"]
    cdef cnp.int64_t[:] o_nd, o_nm, o_ndA, o_nmA, o_nf, o_dd, o_dnd, o_dnm
    cdef bint r2 = r == 2
    if r2:
        o_nd = res["natdes"]; o_nm = res["natmaj"]; o_ndA = res["natdesA"]
        o_nmA = res["natmajA"]; o_nf = res["natfmaj"]; o_dd = res["dnatdes"]
        o_dnd = res["dndes"]; o_dnm = res["dnmajor"]
    cdef long desA, majA, st, col, neg, nn, nnmaj, ch, nxt, x, a, ca, cb, la, lb
    cdef long nd, nm, ndA, nmA, dd, ex, exs, prev, cur, v0, v1
    for row in range(N):
        desA = 0; majA = 0; st = 0
        for j in range(1, n):
            ca = C[row, j - 1]; cb = C[row, j]
            la = L[row, j - 1]; lb = L[row, j]
            if ca < cb or (ca == cb and la > lb):
                desA += 1
                majA += j
            if ca > cb or (ca == cb and la > lb):
                st += 1
        if C[row, n - 1] != 0:
            st += 1
        col = 0; neg = 0; nn = 0; nnmaj = 0; ch = 0; ex = 0; exs = 0
        for j in range(n):
            x = C[row, j]
            a = L[row, j]
            col += x
            if x != 0:
                neg += 1
                nn += r - x
                nnmaj += a * (r - x)
                if a != 1:
                    ex += 1
                    exs += a - 1
            nxt = C[row, j + 1] if j + 1 < n else 0
            ch += (x - nxt + r) % r
        o_desA[row] = desA; o_majA[row] = majA
        o_des[row] = desA + (1 if C[row, 0] != 0 else 0)
        o_st[row] = st; o_col[row] = col; o_neg[row] = neg; o_c1[row] = C[row, 0]
        o_ndes[row] = desA + nn; o_nmaj[row] = majA + nnmaj
        o_fdes[row] = r * desA + C[row, 0]; o_fmaj[row] = r * majA + col
        o_ch[row] = ch
        if r2:
            nd = 0; nm = 0; ndA = 0; nmA = 0; dd = 0
            prev = 0
            for j in range(n):
                cur = -L[row, j] if C[row, j] != 0 else L[row, j]
                if prev > cur:
                    nd += 1
                    nm += j
                    if j > 0:
                        ndA += 1
                        nmA += j
                prev = cur
            if n >= 2:
                v0 = -L[row, 0] if C[row, 0] != 0 else L[row, 0]
                v1 = -L[row, 1] if C[row, 1] != 0 else L[row, 1]
                # left sentinel is -g(2); interior positions match natdes
                dd = nd - (1 if 0 > v0 else 0) + (1 if -v1 > v0 else 0)
            o_nd[row] = nd; o_nm[row] = nm; o_ndA[row] = ndA; o_nmA[row] = nmA
            o_nf[row] = 2 * nmA + neg; o_dd[row] = dd
            o_dnd[row] = desA + ex; o_dnm[row] = majA + exs
    return res
