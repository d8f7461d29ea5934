"""Brute-force reference computations, independent of the elimination kernel."""

from fractions import Fraction
from itertools import combinations, permutations


def _perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_det(rows):
    """Leibniz determinant of a square list-of-lists of complex-like exact values.

    Entries are (re, im) Fraction pairs; returns an (re, im) pair.
    """
    n = len(rows)
    tot_r, tot_i = Fraction(0), Fraction(0)
    for p in permutations(range(n)):
        pr, pi = Fraction(_perm_sign(p)), Fraction(0)
        for i in range(n):
            er, ei = rows[i][p[i]]
            pr, pi = pr * er - pi * ei, pr * ei + pi * er
        tot_r += pr
        tot_i += pi
    return tot_r, tot_i


def to_pairs(matrix):
    """ExactMatrix -> list of lists of (Fraction, Fraction)."""
    return [[(x.re, x.im) for x in row] for row in matrix.to_rows()]


def minor_scan_rank(matrix):
    """Largest r with a nonzero order-r minor, by exhaustive Leibniz evaluation."""
    rows = to_pairs(matrix)
    m, n = len(rows), len(rows[0])
    for r in range(min(m, n), 0, -1):
        for ri in combinations(range(m), r):
            for ci in combinations(range(n), r):
                d = perm_det([[rows[i][j] for j in ci] for i in ri])
                if d != (0, 0):
                    return r
    return 0
