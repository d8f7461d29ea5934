"""Fraction-free elimination over the Gaussian integers, pure Python.

Matrices are passed as two flat row-major lists of Python ints holding the
real and imaginary parts. Every intermediate entry is a minor of the input,
so all divisions are exact and no fractions ever appear.
"""


def _gdiv_exact(ar, ai, br, bi):
    # (ar + ai i) / (br + bi i), known to be a Gaussian integer
    nrm = br * br + bi * bi
    qr, rr = divmod(ar * br + ai * bi, nrm)
    qi, ri = divmod(ai * br - ar * bi, nrm)
    if rr or ri:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    return qr, qi


def _eliminate(re, im, rows, cols, want_det):
    re = list(re)
    im = list(im)
    prev_r, prev_i = 1, 0
    rank = 0
    sign = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if re[r * cols + c] or im[r * cols + c]:
                piv = r
                break
        if piv < 0:
            if want_det:
                return 0, 0, 0
            continue
        if piv != rank:
            a, b = piv * cols, rank * cols
            for j in range(c, cols):
                re[a + j], re[b + j] = re[b + j], re[a + j]
                im[a + j], im[b + j] = im[b + j], im[a + j]
            sign = -sign
        top = rank * cols
        pr, pi = re[top + c], im[top + c]
        for r in range(rank + 1, rows):
            row = r * cols
            lr, li = re[row + c], im[row + c]
            for j in range(c + 1, cols):
                xr, xi = re[row + j], im[row + j]
                ur, ui = re[top + j], im[top + j]
                # pivot * x - lead * u
                nr = pr * xr - pi * xi - (lr * ur - li * ui)
                ni = pr * xi + pi * xr - (lr * ui + li * ur)
                if prev_r == 1 and prev_i == 0:
                    re[row + j], im[row + j] = nr, ni
                else:
                    re[row + j], im[row + j] = _gdiv_exact(nr, ni, prev_r, prev_i)
            re[row + c] = 0
            im[row + c] = 0
        prev_r, prev_i = pr, pi
        rank += 1
    if not want_det:
        return rank, 0, 0
    return rank, sign * prev_r, sign * prev_i


def rank_gaussian(re, im, rows, cols):
    """Rank of a Gaussian-integer matrix over the complex field."""
    return _eliminate(re, im, rows, cols, False)[0]


def det_gaussian(re, im, n):
    """Determinant of a square Gaussian-integer matrix as ``(real, imag)``."""
    if n == 0:
        return 1, 0
    _, dr, di = _eliminate(re, im, n, n, True)
    return dr, di
