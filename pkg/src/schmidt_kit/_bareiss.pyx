# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination over the Gaussian integers.

Same contract as ``_bareiss_py``. Entries are held in 128-bit integers and
every multiply/add is overflow-checked; on overflow the call is replayed on
the pure-Python big-integer path, so results are always exact.
"""

from libc.stdlib cimport malloc, free

from schmidt_kit import _bareiss_py

cdef extern from *:
    """
    typedef __int128 sk_i128;
    static inline int sk_mul(sk_i128 a, sk_i128 b, sk_i128 *o) { return __builtin_mul_overflow(a, b, o); }
    static inline int sk_add(sk_i128 a, sk_i128 b, sk_i128 *o) { return __builtin_add_overflow(a, b, o); }
    static inline int sk_sub(sk_i128 a, sk_i128 b, sk_i128 *o) { return __builtin_sub_overflow(a, b, o); }
    static inline long long sk_hi(sk_i128 v) { return (long long)(v >> 64); }
    static inline unsigned long long sk_lo(sk_i128 v) { return (unsigned long long)v; }
    static inline sk_i128 sk_from(long long v) { return (sk_i128)v; }
    static inline sk_i128 sk_div(sk_i128 a, sk_i128 b) { return a / b; }
    static inline sk_i128 sk_mod(sk_i128 a, sk_i128 b) { return a % b; }
    """
    # the C type is __int128; Cython only needs an integer-like name
    ctypedef long long sk_i128
    bint sk_mul(sk_i128 a, sk_i128 b, sk_i128 *o) nogil
    bint sk_add(sk_i128 a, sk_i128 b, sk_i128 *o) nogil
    bint sk_sub(sk_i128 a, sk_i128 b, sk_i128 *o) nogil
    long long sk_hi(sk_i128 v) nogil
    unsigned long long sk_lo(sk_i128 v) nogil
    sk_i128 sk_from(long long v) nogil
    sk_i128 sk_div(sk_i128 a, sk_i128 b) nogil
    sk_i128 sk_mod(sk_i128 a, sk_i128 b) nogil

cdef enum:
    OVERFLOW = -1
    INEXACT = -2


cdef inline bint _gmul_sub(sk_i128 pr, sk_i128 pi, sk_i128 xr, sk_i128 xi,
                           sk_i128 lr, sk_i128 li, sk_i128 ur, sk_i128 ui,
                           sk_i128 *outr, sk_i128 *outi) nogil:
    # out = p*x - l*u ; returns True on overflow
    cdef sk_i128 a, b, c, d, s, t
    if sk_mul(pr, xr, &a) or sk_mul(pi, xi, &b) or sk_sub(a, b, &s):
        return True
    if sk_mul(lr, ur, &c) or sk_mul(li, ui, &d) or sk_sub(c, d, &t):
        return True
    if sk_sub(s, t, outr):
        return True
    if sk_mul(pr, xi, &a) or sk_mul(pi, xr, &b) or sk_add(a, b, &s):
        return True
    if sk_mul(lr, ui, &c) or sk_mul(li, ur, &d) or sk_add(c, d, &t):
        return True
    return sk_sub(s, t, outi)


cdef inline int _gdiv(sk_i128 nr, sk_i128 ni, sk_i128 br, sk_i128 bi,
                      sk_i128 *outr, sk_i128 *outi) nogil:
    cdef sk_i128 nrm, a, b, c, d, s, t
    if sk_mul(br, br, &a) or sk_mul(bi, bi, &b) or sk_add(a, b, &nrm):
        return OVERFLOW
    # n * conj(b)
    if sk_mul(nr, br, &a) or sk_mul(ni, bi, &b) or sk_add(a, b, &s):
        return OVERFLOW
    if sk_mul(ni, br, &c) or sk_mul(nr, bi, &d) or sk_sub(c, d, &t):
        return OVERFLOW
    if sk_mod(s, nrm) != 0 or sk_mod(t, nrm) != 0:
        return INEXACT
    outr[0] = sk_div(s, nrm)
    outi[0] = sk_div(t, nrm)
    return 0


cdef int _eliminate(sk_i128 *re, sk_i128 *im, int rows, int cols, bint want_det,
                    sk_i128 *det_r, sk_i128 *det_i) nogil:
    cdef sk_i128 prev_r = 1, prev_i = 0
    cdef sk_i128 pr, pi, lr, li, nr, ni, tmp
    cdef int rank = 0, sign = 1
    cdef int c, r, j, piv, row, top, status
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if re[r * cols + c] != 0 or im[r * cols + c] != 0:
                piv = r
                break
        if piv < 0:
            if want_det:
                det_r[0] = 0
                det_i[0] = 0
                return 0
            continue
        if piv != rank:
            for j in range(c, cols):
                tmp = re[piv * cols + j]
                re[piv * cols + j] = re[rank * cols + j]
                re[rank * cols + j] = tmp
                tmp = im[piv * cols + j]
                im[piv * cols + j] = im[rank * cols + j]
                im[rank * cols + j] = tmp
            sign = -sign
        top = rank * cols
        pr = re[top + c]
        pi = im[top + c]
        for r in range(rank + 1, rows):
            row = r * cols
            lr = re[row + c]
            li = im[row + c]
            for j in range(c + 1, cols):
                if _gmul_sub(pr, pi, re[row + j], im[row + j],
                             lr, li, re[top + j], im[top + j], &nr, &ni):
                    return OVERFLOW
                if prev_r == 1 and prev_i == 0:
                    re[row + j] = nr
                    im[row + j] = ni
                else:
                    status = _gdiv(nr, ni, prev_r, prev_i, &re[row + j], &im[row + j])
                    if status != 0:
                        return status
            re[row + c] = 0
            im[row + c] = 0
        prev_r = pr
        prev_i = pi
        rank += 1
    if want_det:
        det_r[0] = prev_r * sign
        det_i[0] = prev_i * sign
    return rank


cdef object _to_py(sk_i128 v):
    return (<object>sk_hi(v) << 64) + <object>sk_lo(v)


cdef int _load(object re, object im, Py_ssize_t size, sk_i128 *bre, sk_i128 *bim) except -2:
    # 0 on success, -1 if some entry does not fit in 64 bits
    cdef Py_ssize_t k
    cdef long long a, b
    for k in range(size):
        try:
            a = re[k]
            b = im[k]
        except OverflowError:
            return -1
        bre[k] = sk_from(a)
        bim[k] = sk_from(b)
    return 0


def rank_gaussian_fast(re, im, int rows, int cols):
    """Compiled rank, or ``None`` if the 128-bit path overflowed."""
    cdef Py_ssize_t size = <Py_ssize_t>rows * cols
    cdef sk_i128 *bre
    cdef sk_i128 *bim
    cdef sk_i128 dr = 0, di = 0
    cdef int result
    if len(re) != size or len(im) != size:
        raise ValueError("entry lists do not match the matrix shape")
    if size == 0:
        return 0
    bre = <sk_i128 *>malloc(size * sizeof(sk_i128))
    bim = <sk_i128 *>malloc(size * sizeof(sk_i128))
    if bre == NULL or bim == NULL:
        free(bre)
        free(bim)
        raise MemoryError()
    try:
        if _load(re, im, size, bre, bim) < 0:
            return None
        with nogil:
            result = _eliminate(bre, bim, rows, cols, False, &dr, &di)
    finally:
        free(bre)
        free(bim)
    if result == INEXACT:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    if result == OVERFLOW:
        return None
    return result


def det_gaussian_fast(re, im, int n):
    """Compiled determinant as ``(real, imag)``, or ``None`` on overflow."""
    cdef Py_ssize_t size = <Py_ssize_t>n * n
    cdef sk_i128 *bre
    cdef sk_i128 *bim
    cdef sk_i128 dr = 0, di = 0
    cdef int result
    if len(re) != size or len(im) != size:
        raise ValueError("entry lists do not match the matrix shape")
    if n == 0:
        return 1, 0
    bre = <sk_i128 *>malloc(size * sizeof(sk_i128))
    bim = <sk_i128 *>malloc(size * sizeof(sk_i128))
    if bre == NULL or bim == NULL:
        free(bre)
        free(bim)
        raise MemoryError()
    try:
        if _load(re, im, size, bre, bim) < 0:
            return None
        with nogil:
            result = _eliminate(bre, bim, n, n, True, &dr, &di)
    finally:
        free(bre)
        free(bim)
    if result == INEXACT:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    if result == OVERFLOW:
        return None
    return _to_py(dr), _to_py(di)


def rank_gaussian(re, im, int rows, int cols):
    res = rank_gaussian_fast(re, im, rows, cols)
    if res is None:
        return _bareiss_py.rank_gaussian(re, im, rows, cols)
    return res


def det_gaussian(re, im, int n):
    res = det_gaussian_fast(re, im, n)
    if res is None:
        return _bareiss_py.det_gaussian(re, im, n)
    return res
