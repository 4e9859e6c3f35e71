# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row reduction kernels.

Same contract and same pivot rule as fischerlab._kernels.pure; the two
backends must produce bit-identical output.  Entries are arbitrary-precision
Python ints, so the win here is loop and call overhead, not the bignum
arithmetic itself.
"""

from math import gcd


cdef inline tuple _red(object n, object d):
    if n == 0:
        return (0, 1)
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return (n, d)


cdef void _swap_rows(list num, list den, Py_ssize_t width, Py_ssize_t r1, Py_ssize_t r2):
    cdef Py_ssize_t o1 = r1 * width
    cdef Py_ssize_t o2 = r2 * width
    cdef Py_ssize_t c
    for c in range(width):
        num[o1 + c], num[o2 + c] = num[o2 + c], num[o1 + c]
        den[o1 + c], den[o2 + c] = den[o2 + c], den[o1 + c]


cdef void _scale_row(list num, list den, Py_ssize_t width, Py_ssize_t r, object sn, object sd):
    cdef Py_ssize_t base = r * width
    cdef Py_ssize_t c
    cdef object n, d
    for c in range(width):
        n = num[base + c]
        if n != 0:
            n, d = _red(n * sn, den[base + c] * sd)
            num[base + c] = n
            den[base + c] = d


cdef void _submul_row(list num, list den, Py_ssize_t width, Py_ssize_t r, Py_ssize_t pr,
                      object fn, object fd):
    cdef Py_ssize_t rb = r * width
    cdef Py_ssize_t pb = pr * width
    cdef Py_ssize_t c
    cdef object an, tn, td, bn, bd, rn, rd
    for c in range(width):
        an = num[pb + c]
        if an == 0:
            continue
        tn, td = _red(fn * an, fd * den[pb + c])
        bn = num[rb + c]
        bd = den[rb + c]
        rn, rd = _red(bn * td - tn * bd, bd * td)
        num[rb + c] = rn
        den[rb + c] = rd


def rref_q(num, den, rows, cols, want_transform=False):
    """Gauss-Jordan over the rationals; see the pure backend for the contract."""
    cdef list nnum = list(num)
    cdef list nden = list(den)
    cdef Py_ssize_t nrows = rows
    cdef Py_ssize_t ncols = cols
    cdef list tnum = None
    cdef list tden = None
    cdef bint with_t = bool(want_transform)
    cdef Py_ssize_t i, pc, pr, r, best
    cdef long best_size, size
    cdef object n, pn, pd, fn, fd
    if with_t:
        tnum = [0] * (nrows * nrows)
        tden = [1] * (nrows * nrows)
        for i in range(nrows):
            tnum[i * nrows + i] = 1
    pivots = []
    pr = 0
    for pc in range(ncols):
        if pr >= nrows:
            break
        best = -1
        best_size = 0
        for r in range(pr, nrows):
            n = nnum[r * ncols + pc]
            if n != 0:
                size = n.bit_length() + (<object>nden[r * ncols + pc]).bit_length()
                if best < 0 or size < best_size:
                    best = r
                    best_size = size
        if best < 0:
            continue
        if best != pr:
            _swap_rows(nnum, nden, ncols, pr, best)
            if with_t:
                _swap_rows(tnum, tden, nrows, pr, best)
        pn = nnum[pr * ncols + pc]
        pd = nden[pr * ncols + pc]
        if pn != pd:
            _scale_row(nnum, nden, ncols, pr, pd, pn)
            if with_t:
                _scale_row(tnum, tden, nrows, pr, pd, pn)
        for r in range(nrows):
            if r == pr:
                continue
            fn = nnum[r * ncols + pc]
            if fn == 0:
                continue
            fd = nden[r * ncols + pc]
            _submul_row(nnum, nden, ncols, r, pr, fn, fd)
            if with_t:
                _submul_row(tnum, tden, nrows, r, pr, fn, fd)
        pivots.append(pc)
        pr += 1
    return nnum, nden, pivots, tnum, tden


cdef inline tuple _qmul(object n1, object d1, object n2, object d2):
    cdef object n = n1 * n2
    if n == 0:
        return (0, 1)
    cdef object d = d1 * d2
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return (n, d)


cdef inline tuple _qsub(object n1, object d1, object n2, object d2):
    cdef object n = n1 * d2 - n2 * d1
    if n == 0:
        return (0, 1)
    cdef object d = d1 * d2
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return (n, d)


cdef inline tuple _qadd(object n1, object d1, object n2, object d2):
    cdef object n = n1 * d2 + n2 * d1
    if n == 0:
        return (0, 1)
    cdef object d = d1 * d2
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return (n, d)


cdef void _swap_rows4(list an, list ad, list bn, list bd, Py_ssize_t width,
                      Py_ssize_t r1, Py_ssize_t r2):
    cdef Py_ssize_t o1 = r1 * width
    cdef Py_ssize_t o2 = r2 * width
    cdef Py_ssize_t c
    for c in range(width):
        an[o1 + c], an[o2 + c] = an[o2 + c], an[o1 + c]
        ad[o1 + c], ad[o2 + c] = ad[o2 + c], ad[o1 + c]
        bn[o1 + c], bn[o2 + c] = bn[o2 + c], bn[o1 + c]
        bd[o1 + c], bd[o2 + c] = bd[o2 + c], bd[o1 + c]


cdef void _scale_row4(list an, list ad, list bn, list bd, Py_ssize_t width, Py_ssize_t r,
                      object srn, object srd, object sin_, object sid_):
    cdef Py_ssize_t base = r * width
    cdef Py_ssize_t c
    cdef object ern, erd, ein, eid, un, ud, vn, vd
    for c in range(width):
        ern = an[base + c]
        ein = bn[base + c]
        if ern == 0 and ein == 0:
            continue
        erd = ad[base + c]
        eid = bd[base + c]
        un, ud = _qmul(ern, erd, srn, srd)
        vn, vd = _qmul(ein, eid, sin_, sid_)
        an[base + c], ad[base + c] = _qsub(un, ud, vn, vd)
        un, ud = _qmul(ern, erd, sin_, sid_)
        vn, vd = _qmul(ein, eid, srn, srd)
        bn[base + c], bd[base + c] = _qadd(un, ud, vn, vd)


cdef void _submul_row4(list an, list ad, list bn, list bd, Py_ssize_t width,
                       Py_ssize_t r, Py_ssize_t pr,
                       object frn, object frd, object fin_, object fid_):
    cdef Py_ssize_t rb = r * width
    cdef Py_ssize_t pb = pr * width
    cdef Py_ssize_t c
    cdef object prn, prd, pin, pid, trn_, trd_, tin_, tid_, un, ud, vn, vd
    for c in range(width):
        prn = an[pb + c]
        pin = bn[pb + c]
        if prn == 0 and pin == 0:
            continue
        prd = ad[pb + c]
        pid = bd[pb + c]
        un, ud = _qmul(frn, frd, prn, prd)
        vn, vd = _qmul(fin_, fid_, pin, pid)
        trn_, trd_ = _qsub(un, ud, vn, vd)
        un, ud = _qmul(frn, frd, pin, pid)
        vn, vd = _qmul(fin_, fid_, prn, prd)
        tin_, tid_ = _qadd(un, ud, vn, vd)
        an[rb + c], ad[rb + c] = _qsub(an[rb + c], ad[rb + c], trn_, trd_)
        bn[rb + c], bd[rb + c] = _qsub(bn[rb + c], bd[rb + c], tin_, tid_)


def rref_qi(ren, red, imn, imd, rows, cols, want_transform=False):
    """Gauss-Jordan over the Gaussian rationals; same contract as the pure backend."""
    cdef list aren = list(ren)
    cdef list ared = list(red)
    cdef list aimn = list(imn)
    cdef list aimd = list(imd)
    cdef Py_ssize_t nrows = rows
    cdef Py_ssize_t ncols = cols
    cdef bint with_t = bool(want_transform)
    cdef list trn = None, trd = None, tin = None, tid = None
    cdef Py_ssize_t i, pc, pr, r, best, k
    cdef long best_size, size
    cdef object prn, prd, pin, pid, nn, nd, srn, srd, sin_, sid_, frn, frd, fin_, fid_
    cdef object un, ud, vn, vd
    if with_t:
        trn = [0] * (nrows * nrows)
        trd = [1] * (nrows * nrows)
        tin = [0] * (nrows * nrows)
        tid = [1] * (nrows * nrows)
        for i in range(nrows):
            trn[i * nrows + i] = 1
    pivots = []
    pr = 0
    for pc in range(ncols):
        if pr >= nrows:
            break
        best = -1
        best_size = 0
        for r in range(pr, nrows):
            k = r * ncols + pc
            if aren[k] != 0 or aimn[k] != 0:
                size = (
                    (<object>aren[k]).bit_length()
                    + (<object>ared[k]).bit_length()
                    + (<object>aimn[k]).bit_length()
                    + (<object>aimd[k]).bit_length()
                )
                if best < 0 or size < best_size:
                    best = r
                    best_size = size
        if best < 0:
            continue
        if best != pr:
            _swap_rows4(aren, ared, aimn, aimd, ncols, pr, best)
            if with_t:
                _swap_rows4(trn, trd, tin, tid, nrows, pr, best)
        k = pr * ncols + pc
        prn = aren[k]
        prd = ared[k]
        pin = aimn[k]
        pid = aimd[k]
        if prn != prd or pin != 0:
            un, ud = _qmul(prn, prd, prn, prd)
            vn, vd = _qmul(pin, pid, pin, pid)
            nn, nd = _qadd(un, ud, vn, vd)
            srn, srd = _qmul(prn, prd, nd, nn)
            sin_, sid_ = _qmul(-pin, pid, nd, nn)
            _scale_row4(aren, ared, aimn, aimd, ncols, pr, srn, srd, sin_, sid_)
            if with_t:
                _scale_row4(trn, trd, tin, tid, nrows, pr, srn, srd, sin_, sid_)
        for r in range(nrows):
            if r == pr:
                continue
            k = r * ncols + pc
            frn = aren[k]
            fin_ = aimn[k]
            if frn == 0 and fin_ == 0:
                continue
            frd = ared[k]
            fid_ = aimd[k]
            _submul_row4(aren, ared, aimn, aimd, ncols, r, pr, frn, frd, fin_, fid_)
            if with_t:
                _submul_row4(trn, trd, tin, tid, nrows, r, pr, frn, frd, fin_, fid_)
        pivots.append(pc)
        pr += 1
    return aren, ared, aimn, aimd, pivots, trn, trd, tin, tid
