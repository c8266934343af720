"""
Definite integral lattices.

A lattice is stored as its positive definite Gram matrix together with a sign
flag recording the geometric convention. Every formula downstream only needs
|w^2| = w^T G w and parities of integers, so the negative definite lattices
of 4-manifold topology are handled without negative arithmetic.

Lattices built from ambient coordinates (the Gamma family, diagonal lattices
and their sums) also keep their basis in doubled ambient coordinates, so that
half-integral ambient vectors stay exact.
"""

import json
from fractions import Fraction
from functools import total_ordering, reduce

import numpy as np

from . import linalg
from .exceptions import NotSymmetricException, NotDefiniteException, BadRankException, \
    SignMismatchException, DimensionMismatchException, NotInLatticeException, LatticeException, \
    LatticeParseException


NEGATIVE = 'negative'
POSITIVE = 'positive'
SIGNS = (NEGATIVE, POSITIVE)


@total_ordering
class CoordinateVector(object):
    """
    Immutable integer vector, ordered lexicographically by its coordinates
    """
    def __init__(self, coords):
        self._coords = tuple(int(c) for c in coords)

    @property
    def coords(self):
        return self._coords

    def __len__(self):
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __getitem__(self, item):
        return self._coords[item]

    def __eq__(self, other):
        return type(self) is type(other) and self._coords == other._coords

    def __lt__(self, other):
        return self._coords < other._coords

    def __hash__(self):
        return hash((type(self).__name__, self._coords))

    def __neg__(self):
        return type(self)(-c for c in self._coords)

    def __add__(self, other):
        self._check_len(other)
        return type(self)(a + b for a, b in zip(self._coords, other))

    def __sub__(self, other):
        self._check_len(other)
        return type(self)(a - b for a, b in zip(self._coords, other))

    def __rmul__(self, scalar):
        return type(self)(scalar * c for c in self._coords)

    def __repr__(self):
        return "{}({})".format(type(self).__name__, list(self._coords))

    def _check_len(self, other):
        if len(self) != len(other):
            raise DimensionMismatchException('Vector lengths differ: {} and {}'.format(len(self), len(other)))

    def concat(self, other):
        return type(self)(self._coords + tuple(other))

    def is_zero(self):
        return not any(self._coords)


class LatticeVector(CoordinateVector):
    """
    A lattice point in coordinates of the lattice basis
    """


class DualVector(CoordinateVector):
    """
    A functional in Hom(L, Z), in coordinates dual to the lattice basis
    """

    def pairing(self, v):
        self._check_len(v)
        return sum(a * b for a, b in zip(self._coords, v))


class AmbientVector(CoordinateVector):
    """
    A point of R^n stored as twice its coordinates, so half-integers stay exact
    """

    @classmethod
    def from_ambient(cls, values):
        """
        :param values: {iterable} Ambient coordinates as ints, Fractions or strings like '1/2'
        :return: {AmbientVector}
        """
        doubled = []
        for value in values:
            d = 2 * Fraction(value)
            if d.denominator != 1:
                raise NotInLatticeException('Ambient coordinate {} is not a half-integer'.format(value))
            doubled.append(int(d))
        return cls(doubled)

    @property
    def doubled(self):
        return self._coords

    def ambient(self):
        return tuple(Fraction(c, 2) for c in self._coords)

    def dot(self, other):
        self._check_len(other)
        return Fraction(sum(a * b for a, b in zip(self._coords, other)), 4)


class Lattice(object):
    """
    An integral lattice given by a positive definite Gram matrix.

    Construct through from_gram or the named constructors, which validate input.
    """
    def __init__(self, gram, sign=NEGATIVE, name=None, basis=None):
        self.gram = gram
        self.rank = gram.shape[0]
        self.sign = sign
        self.name = name
        self.basis = basis
        self.rows = tuple(tuple(int(x) for x in row) for row in gram)
        self.determinant = int(linalg.det(linalg.matrix(self.rows)))
        self._basis_inverse = None

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.sign == other.sign and self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "Lattice(name={}, rank={}, sign={})".format(self.name, self.rank, self.sign)

    @property
    def is_unimodular(self):
        return abs(self.determinant) == 1

    @property
    def is_even(self):
        return all(self.rows[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def has_ambient(self):
        return self.basis is not None

    @property
    def label(self):
        return self.name or 'rank-{} lattice'.format(self.rank)

    def inner(self, u, v):
        u, v = tuple(u), tuple(v)
        if len(u) != self.rank or len(v) != self.rank:
            raise DimensionMismatchException('Expected vectors of length {}, got {} and {}'
                                             .format(self.rank, len(u), len(v)))
        return sum(u[i] * sum(g * x for g, x in zip(self.rows[i], v)) for i in range(self.rank) if u[i])

    def norm(self, v):
        return self.inner(v, v)

    def negated(self):
        other = NEGATIVE if self.sign == POSITIVE else POSITIVE
        return type(self)(self.gram, other, self.name, self.basis)

    def to_dict(self):
        return {
            'name': self.name,
            'gram': [list(row) for row in self.rows],
            'sign': self.sign
        }

    def ambient_to_basis(self, x):
        """
        :param x: {AmbientVector} A point given in doubled ambient coordinates
        :return: {LatticeVector} Its coordinates in the lattice basis
        """
        self._require_ambient()
        if len(x) != self.basis.shape[0]:
            raise DimensionMismatchException('Expected an ambient vector of length {}, got {}'
                                             .format(self.basis.shape[0], len(x)))
        if self._basis_inverse is None:
            self._basis_inverse = linalg.inverse(linalg.matrix(self.basis))
        coords = linalg.dot(self._basis_inverse, linalg.matrix([[c] for c in x.doubled]))
        if any(c.denominator != 1 for c in coords.flat):
            raise NotInLatticeException('{} is not a point of {}'.format(x.ambient(), self.label))
        return LatticeVector(int(c) for c in coords.flat)

    def basis_to_ambient(self, v):
        self._require_ambient()
        if len(v) != self.rank:
            raise DimensionMismatchException('Expected a vector of length {}, got {}'.format(self.rank, len(v)))
        return AmbientVector(sum(int(b) * c for b, c in zip(row, v)) for row in self.basis)

    def _require_ambient(self):
        if not self.has_ambient:
            raise LatticeException('{} has no ambient coordinates'.format(self.label))


class GammaLattice(Lattice):
    """
    The lattice of points of R^n (4 | n) with all coordinates in Z or all in Z + 1/2 and even coordinate sum
    """

    def ambient_to_basis(self, x):
        doubled = x.doubled
        if len(set(c % 2 for c in doubled)) > 1:
            raise NotInLatticeException('Coordinates of {} mix integers and half-integers'.format(x.ambient()))
        if sum(doubled) % 4:
            raise NotInLatticeException('Coordinate sum of {} is odd'.format(x.ambient()))
        return super(GammaLattice, self).ambient_to_basis(x)


def _as_int(value):
    if isinstance(value, bool) or int(value) != value:
        raise LatticeException('Gram entries must be integers, got {!r}'.format(value))
    return int(value)


def _gram_from_basis(basis):
    n, r = basis.shape
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            total = sum(int(basis[k, i]) * int(basis[k, j]) for k in range(n))
            if total % 4:
                raise LatticeException('Basis vectors {} and {} do not pair integrally'.format(i, j))
            row.append(total // 4)
        rows.append(row)
    return rows


def from_gram(gram, sign=NEGATIVE, name=None, basis=None, cls=Lattice):
    """
    Validate a Gram matrix and build a lattice from it
    :param gram: {list} Square integer matrix
    :param sign: {string} 'negative' or 'positive'
    :param name: {string} Optional label
    :return: {Lattice}
    """
    if sign not in SIGNS:
        raise LatticeException("Sign must be one of {}, got '{}'".format(', '.join(SIGNS), sign))
    rows = [[_as_int(x) for x in row] for row in gram]
    n = len(rows)
    if n == 0:
        raise BadRankException('A lattice must have rank at least 1')
    if any(len(row) != n for row in rows):
        raise NotSymmetricException('Gram matrix is not square')
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetricException('Gram matrix is not symmetric at ({}, {})'.format(i, j))
    for k, minor in enumerate(linalg.leading_minors(rows)):
        if minor <= 0:
            raise NotDefiniteException('Leading principal minor of size {} is {}'.format(k + 1, minor))
    return cls(np.array(rows, dtype=object), sign, name, basis)


def diagonal(n):
    """
    The standard lattice Z^n, written n<1> or diag:n
    """
    if n < 1:
        raise BadRankException('diag needs n >= 1, got {}'.format(n))
    basis = np.array([[2 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return from_gram(rows, NEGATIVE, 'diag:{}'.format(n), basis)


def gamma_basis(n):
    """
    Basis {s, e1+e2, e2-e1, e3-e2, ..., e_{n-1}-e_{n-2}} with s = (1/2, ..., 1/2), doubled, as columns
    """
    columns = [[1] * n, [2, 2] + [0] * (n - 2)]
    for k in range(2, n):
        col = [0] * n
        col[k - 2] = -2
        col[k - 1] = 2
        columns.append(col)
    return np.array(columns, dtype=object).T


def gamma(n):
    if n < 4 or n % 4:
        raise BadRankException('gamma needs a positive multiple of 4, got {}'.format(n))
    basis = gamma_basis(n)
    return from_gram(_gram_from_basis(basis), NEGATIVE, 'gamma:{}'.format(n), basis, cls=GammaLattice)


def e8():
    lattice = gamma(8)
    lattice.name = 'e8'
    return lattice


def direct_sum(first, second):
    """
    Orthogonal direct sum; ambient coordinates survive when both summands have them
    :param first: {Lattice}
    :param second: {Lattice}
    :return: {Lattice}
    """
    if first.sign != second.sign:
        raise SignMismatchException('Cannot add a {} lattice to a {} one'.format(first.sign, second.sign))
    r1, r2 = first.rank, second.rank
    rows = [list(row) + [0] * r2 for row in first.rows] + [[0] * r1 + list(row) for row in second.rows]
    basis = None
    if first.has_ambient and second.has_ambient:
        n1, n2 = first.basis.shape[0], second.basis.shape[0]
        basis = np.zeros((n1 + n2, r1 + r2), dtype=object)
        basis[:n1, :r1] = first.basis
        basis[n1:, r1:] = second.basis
    name = None
    if first.name and second.name:
        name = '{}+{}'.format(first.name, second.name)
    return from_gram(rows, first.sign, name, basis)


def direct_sum_many(lattices):
    return reduce(direct_sum, lattices)


def norm(lattice, v):
    return lattice.norm(v)


def inner(lattice, u, v):
    return lattice.inner(u, v)


def pairing(a, v):
    return a.pairing(v)


def ambient_to_basis(lattice, x):
    return lattice.ambient_to_basis(x)


def basis_to_ambient(lattice, v):
    return lattice.basis_to_ambient(v)


def load_lattice(path):
    """
    Read a lattice from a JSON document {"name": ..., "gram": [[...]], "sign": ...}
    :param path: {string} File location
    :return: {Lattice}
    """
    with open(path) as f:
        text = f.read()
    try:
        data = json.loads(text)
    except ValueError as e:
        raise LatticeParseException('Malformed lattice file {}: {}'.format(path, e.msg), getattr(e, 'pos', None)) from e
    if not isinstance(data, dict) or 'gram' not in data:
        raise LatticeParseException("Lattice file {} has no 'gram' entry".format(path))
    gram = data['gram']
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise LatticeParseException("'gram' in {} must be a list of rows".format(path))
    return from_gram(gram, data.get('sign', NEGATIVE), data.get('name'))


def save_lattice(lattice, path):
    with open(path, 'w') as f:
        f.write(json.dumps(lattice.to_dict(), indent=4, sort_keys=True))
