"""
Exact linear algebra over the rationals.

Matrices are numpy arrays of dtype=object holding Fractions, so every entry
is an exact rational and numpy only provides the slicing.
"""

from fractions import Fraction

import numpy as np


def matrix(data, rows=None, cols=None):
    """
    Build an exact matrix
    :param data: {list} Nested lists (or an array) of ints/Fractions, may be empty
    :param rows: {int} Row count, required when data is empty
    :param cols: {int} Column count, required when data has no columns
    :return: {np.ndarray} rows x cols array of Fractions
    """
    data = [list(row) for row in data]
    rows = len(data) if rows is None else rows
    if cols is None:
        cols = len(data[0]) if data else 0
    m = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            m[i, j] = Fraction(data[i][j])
    return m


def zeros(rows, cols):
    m = np.empty((rows, cols), dtype=object)
    m.fill(Fraction(0))
    return m


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = Fraction(1)
    return m


def take(m, rows=None, cols=None):
    """
    Submatrix m[rows][:, cols]; either index list may be empty or None for all
    """
    rows = range(m.shape[0]) if rows is None else rows
    cols = range(m.shape[1]) if cols is None else cols
    return matrix([[m[r, c] for c in cols] for r in rows], len(rows), len(cols))


def hstack(*blocks):
    rows = blocks[0].shape[0]
    return np.concatenate([b.reshape(rows, b.shape[1]) for b in blocks], axis=1)


def vstack(*blocks):
    cols = blocks[0].shape[1]
    return np.concatenate([b.reshape(b.shape[0], cols) for b in blocks], axis=0)


def dot(a, b):
    """
    Exact matrix product; numpy object matmul breaks down on empty inner dimensions
    """
    out = zeros(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            total = Fraction(0)
            for k in range(a.shape[1]):
                total += a[i, k] * b[k, j]
            out[i, j] = total
    return out


def is_zero(m):
    return all(x == 0 for x in m.flat)


def rref(m):
    """
    Reduced row echelon form
    :param m: {np.ndarray} Exact matrix
    :return: {tuple} (reduced matrix, list of pivot column indices)
    """
    r = m.copy()
    rows, cols = r.shape
    pivots = []
    piv_r = 0
    for piv_c in range(cols):
        if piv_r == rows:
            break
        for i in range(piv_r, rows):
            if r[i, piv_c] != 0:
                break
        else:
            continue
        if i != piv_r:
            r[[piv_r, i]] = r[[i, piv_r]]
        r[piv_r] = r[piv_r] / r[piv_r, piv_c]
        for i in range(rows):
            if i != piv_r and r[i, piv_c] != 0:
                r[i] = r[i] - r[i, piv_c] * r[piv_r]
        pivots.append(piv_c)
        piv_r += 1
    return r, pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m):
    """
    Basis of the kernel, one vector per free column of the RREF
    :param m: {np.ndarray} Exact matrix
    :return: {np.ndarray} cols x k matrix whose columns span ker(m)
    """
    r, pivots = rref(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = Fraction(1)
        for i, p in enumerate(pivots):
            basis[p, k] = -r[i, f]
    return basis


def complement(m):
    """
    Indices of standard basis vectors that, taken in order, complete the column space of m
    :param m: {np.ndarray} Exact matrix with n rows
    :return: {list} Indices j such that im(m) + span(e_j) is the whole space
    """
    n = m.shape[0]
    _, pivots = rref(hstack(m, identity(n)))
    return [p - m.shape[1] for p in pivots if p >= m.shape[1]]


def independent_columns(m):
    return rref(m)[1]


def det(m):
    """
    Determinant by exact Gaussian elimination; the empty matrix has determinant 1
    """
    a = m.copy()
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError('Determinant of a non-square {}x{} matrix'.format(*a.shape))
    result = Fraction(1)
    for c in range(n):
        for i in range(c, n):
            if a[i, c] != 0:
                break
        else:
            return Fraction(0)
        if i != c:
            a[[c, i]] = a[[i, c]]
            result = -result
        result *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return result


def inverse(m):
    n = m.shape[0]
    r, pivots = rref(hstack(m, identity(n)))
    if pivots[:n] != list(range(n)):
        raise ValueError('Matrix is singular')
    return r[:, n:]


def coordinates(basis, vectors):
    """
    Express vectors in terms of a basis
    :param basis: {np.ndarray} n x k matrix with independent columns
    :param vectors: {np.ndarray} n x q matrix with columns in the span of basis
    :return: {np.ndarray} k x q matrix X with basis . X = vectors
    """
    k = basis.shape[1]
    r, pivots = rref(hstack(basis, vectors))
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ValueError('Vectors are not in the span of the basis')
    return r[:k, k:]


def leading_minors(rows):
    """
    Leading principal minors of an integer matrix, by fraction-free (Bareiss) elimination
    :param rows: {list} Square integer matrix as nested lists
    :return: {list} Minors of size 1..n; stops early (last entry 0) if a minor vanishes
    """
    a = [list(row) for row in rows]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors
