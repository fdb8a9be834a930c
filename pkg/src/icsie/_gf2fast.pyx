# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled GF(2) kernels; interface identical to ``_gf2pure``.

Masks must fit in 64 bits (n <= 64), far beyond the enumeration
budgets anywhere these kernels are used.
"""

from libc.stdint cimport uint64_t

BACKEND = "compiled"


cdef inline int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def gf2_rank(rows):
    """Rank of the matrix whose rows are the given bitmasks."""
    cdef uint64_t piv[64]
    cdef int npiv = 0
    cdef int i
    cdef uint64_t row, low
    for obj in rows:
        row = <uint64_t> obj
        i = 0
        while i < npiv:
            if row & piv[i] & (~piv[i] + 1):
                row ^= piv[i]
            i += 1
        if row:
            low = row & (~row + 1)
            i = 0
            while i < npiv:
                if piv[i] & low:
                    piv[i] ^= row
                i += 1
            piv[npiv] = row
            npiv += 1
    return npiv


def gf2_mul_vec(z, cols):
    """Row vector z times the matrix with the given column masks."""
    cdef uint64_t zz = <uint64_t> z
    cdef uint64_t out = 0
    cdef int ncols = len(cols)
    cdef int k
    for k in range(ncols):
        if _popcount(zz & (<uint64_t> cols[k])) & 1:
            out |= (<uint64_t> 1) << (ncols - 1 - k)
    return out


def gf2_first_failing(zs, cols, need):
    """Index of the first z in zs with wt(z * G) < need, or -1."""
    cdef uint64_t ccols[64]
    cdef int ncols = len(cols)
    cdef int nneed = need
    cdef int k, w
    cdef Py_ssize_t idx, nz
    cdef uint64_t z
    if ncols > 64:
        raise ValueError("too many columns for the compiled kernel")
    for k in range(ncols):
        ccols[k] = <uint64_t> cols[k]
    nz = len(zs)
    for idx in range(nz):
        z = <uint64_t> zs[idx]
        w = 0
        for k in range(ncols):
            w += _popcount(z & ccols[k]) & 1
            if w >= nneed:
                break
        if w < nneed:
            return idx
    return -1


def gf2_span_intersects(basis, fmasks, xmasks, caps):
    """First nonzero span element that is an interference vector, or 0."""
    cdef uint64_t cbasis[32]
    cdef uint64_t cf[64]
    cdef uint64_t cx[64]
    cdef int ccap[64]
    cdef int d = len(basis)
    cdef int nrecv = len(fmasks)
    cdef int i, r
    cdef uint64_t z = 0, code, g, gprev, flip
    if d > 32 or nrecv > 64:
        raise ValueError("arguments too large for the compiled kernel")
    for i in range(d):
        cbasis[i] = <uint64_t> basis[i]
    for r in range(nrecv):
        cf[r] = <uint64_t> fmasks[r]
        cx[r] = <uint64_t> xmasks[r]
        ccap[r] = caps[r]
    gprev = 0
    for code in range(1, (<uint64_t> 1) << d):
        g = code ^ (code >> 1)
        flip = g ^ gprev
        gprev = g
        i = 0
        while flip > 1:
            flip >>= 1
            i += 1
        z ^= cbasis[i]
        for r in range(nrecv):
            if (z & cf[r]) != 0 and _popcount(z & cx[r]) <= ccap[r]:
                return z
    return 0
