"""Reference kernels in pure Python.

Same signatures as the compiled module; used whenever it is unavailable.
"""
import numpy as np

SLOT_MASK = (1 << 24) - 1

STAT_NAMES = (
    "desA", "majA", "des", "stdes", "col", "neg", "c1", "ndes", "nmajor",
    "fdes", "fmajor", "ch",
)
STAT_NAMES_R2 = (
    "natdes", "natmaj", "natdesA", "natmajA", "natfmaj", "dnatdes", "dndes", "dnmajor",
)


def mul_trunc(a, b, shift, K):
    """Product of packed-monomial dicts, dropping grade > K (K < 0: keep all)."""
    out = {}
    get = out.get
    if K < 0:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
    else:
        bs = sorted(((mb >> shift) & SLOT_MASK, mb, cb) for mb, cb in b.items())
        for ma, ca in a.items():
            room = K - ((ma >> shift) & SLOT_MASK)
            if room < 0:
                continue
            for g, mb, cb in bs:
                if g > room:
                    break
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def geom_expand(p, m, shift, K):
    """``p / (1 - m)`` truncated at grade K; ``m`` must have grade >= 1."""
    gm = (m >> shift) & SLOT_MASK
    if gm < 1:
        raise ValueError("denominator monomial must involve the grading variable")
    out = {}
    get = out.get
    for e, c in p.items():
        g = (e >> shift) & SLOT_MASK
        while g <= K:
            out[e] = get(e, 0) + c
            e += m
            g += gm
    return {k: c for k, c in out.items() if c}


def wreath_statistics(letters, colors, r):
    """Statistics of every row of ``(letters, colors)``; returns name -> int64 array."""
    letters = np.asarray(letters, dtype=np.int64)
    colors = np.asarray(colors, dtype=np.int64)
    N, n = letters.shape
    names = STAT_NAMES + (STAT_NAMES_R2 if r == 2 else ())
    res = {k: np.zeros(N, dtype=np.int64) for k in names}
    for row in range(N):
        w = [int(x) for x in letters[row]]
        c = [int(x) for x in colors[row]]
        desA = majA = 0
        for j in range(1, n):
            if (-c[j - 1], w[j - 1]) > (-c[j], w[j]):
                desA += 1
                majA += j
        des = desA + (1 if c[0] else 0)
        st = 0
        for j in range(1, n):
            if (c[j - 1], w[j - 1]) > (c[j], w[j]):
                st += 1
        if c[n - 1]:
            st += 1
        col = sum(c)
        neg = sum(1 for x in c if x)
        nn = sum((r - x) % r for x in c)
        nnmaj = sum(a * ((r - x) % r) for a, x in zip(w, c))
        ch = 0
        for j in range(n):
            nxt = c[j + 1] if j + 1 < n else 0
            ch += (c[j] - nxt) % r
        vals = {
            "desA": desA, "majA": majA, "des": des, "stdes": st, "col": col,
            "neg": neg, "c1": c[0], "ndes": desA + nn, "nmajor": majA + nnmaj,
            "fdes": r * desA + c[0], "fmajor": r * majA + col, "ch": ch,
        }
        if r == 2:
            v = [-a if x else a for a, x in zip(w, c)]
            seq = [0] + v
            nd = nm = 0
            for j in range(n):
                if seq[j] > seq[j + 1]:
                    nd += 1
                    nm += j
            ndA = nmA = 0
            for j in range(1, n):
                if v[j - 1] > v[j]:
                    ndA += 1
                    nmA += j
            dd = 0
            if n >= 2:
                seqd = [-v[1]] + v
                for j in range(n):
                    if seqd[j] > seqd[j + 1]:
                        dd += 1
            extra = [a - 1 for a, x in zip(w, c) if x and a != 1]
            vals.update(
                natdes=nd, natmaj=nm, natdesA=ndA, natmajA=nmA, natfmaj=2 * nmA + neg,
                dnatdes=dd, dndes=desA + len(extra), dnmajor=majA + sum(extra),
            )
        for k in names:
            res[k][row] = vals[k]
    return res
