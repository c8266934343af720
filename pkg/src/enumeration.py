"""
Exact enumeration of lattice points in a coset w + 2L below a norm bound.

The search is Fincke-Pohst over z = w + 2u. With G = R^T D R (R unit upper
triangular, D diagonal) the norm splits as a sum of squares

    Q(z) = sum_i d_i (z_i + sum_{j>i} r_ij z_j)^2

and every r_ij, d_i is rational. Scaling by the common denominators (r_ij =
p_ij / delta, d_i = e_i / E) turns each partial sum into an integer, so
interval endpoints come from math.isqrt and no point is ever lost to
rounding.
"""

import itertools
from collections import namedtuple
from fractions import Fraction
from math import isqrt, gcd

import numpy as np

from . import linalg
from .lattice import LatticeVector
from .exceptions import NotDefiniteException, NotSymmetricException, BudgetExceededException, \
    RankTooLargeException, DimensionMismatchException, ConfigException


NAIVE_MAX_RANK = 6


Cholesky = namedtuple('Cholesky', ['r', 'd'])

CosetMinResult = namedtuple('CosetMinResult', ['min_norm', 'minimizers', 'nodes_visited'])


class EnumBudget(object):
    """
    Node budget shared by every enumeration that is handed the same instance.

    Each search may visit at most remaining() nodes; charging past max_nodes raises.
    """
    DEFAULT_MAX_NODES = 10 ** 8

    def __init__(self, max_nodes=DEFAULT_MAX_NODES):
        if max_nodes < 1:
            raise ConfigException('max_nodes must be positive, got {}'.format(max_nodes))
        self.max_nodes = max_nodes
        self.nodes_used = 0

    def remaining(self):
        return max(0, self.max_nodes - self.nodes_used)

    def charge(self, nodes):
        self.nodes_used += nodes
        if self.nodes_used > self.max_nodes:
            raise BudgetExceededException('Enumeration used {} nodes, over the budget of {}'
                                          .format(self.nodes_used, self.max_nodes), self.nodes_used)

    def __repr__(self):
        return "EnumBudget(max_nodes={}, nodes_used={})".format(self.max_nodes, self.nodes_used)


def _lcm(a, b):
    return a * b // gcd(a, b)


def exact_cholesky(gram):
    """
    Factor a positive definite matrix as G = R^T D R
    :param gram: {np.ndarray|list} Square symmetric integer matrix
    :return: {Cholesky} r: unit upper triangular Fractions, d: list of positive Fractions
    """
    g = np.array(gram, dtype=object)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NotSymmetricException('Gram matrix is not square')
    n = g.shape[0]
    r = np.empty((n, n), dtype=object)
    r.fill(Fraction(0))
    d = []
    for i in range(n):
        r[i, i] = Fraction(1)
        di = Fraction(g[i, i]) - sum(r[k, i] * r[k, i] * d[k] for k in range(i))
        if di <= 0:
            raise NotDefiniteException('Pivot {} of the factorization is {}'.format(i + 1, di))
        d.append(di)
        for j in range(i + 1, n):
            r[i, j] = (Fraction(g[i, j]) - sum(r[k, i] * r[k, j] * d[k] for k in range(i))) / di
    return Cholesky(r, d)


class CosetEnumerator(object):
    """
    Reusable search state for one lattice; the factorization is computed once
    """
    def __init__(self, lattice):
        self.lattice = lattice
        self.rank = lattice.rank
        factor = exact_cholesky(lattice.gram)
        n = self.rank
        delta = 1
        for i in range(n):
            for j in range(i + 1, n):
                delta = _lcm(delta, factor.r[i, j].denominator)
        scale = 1
        for di in factor.d:
            scale = _lcm(scale, di.denominator)
        self.delta = delta
        self.p = [[int(factor.r[i, j] * delta) for j in range(n)] for i in range(n)]
        self.e = [int(di * scale) for di in factor.d]
        self.scale = scale * delta * delta

    def search(self, bound, parity=None, shrink=False, budget=None):
        """
        Depth-first search over points of norm <= bound
        :param bound: {int} Norm bound
        :param parity: {tuple} Required residues mod 2 of the coordinates, or None for all of L
        :param shrink: {bool} Lower the bound to each new minimum, keeping only minimizers
        :param budget: {EnumBudget} Shared node budget; this call may use what remains of it
        :return: {tuple} (list of (norm, coords) pairs, nodes visited)
        """
        n = self.rank
        p, e, delta = self.p, self.e, self.delta
        limit = budget.remaining() if budget is not None else None
        state = {'bound': bound * self.scale, 'nodes': 0}
        found = []
        z = [0] * n

        def descend(i, partial):
            rem = state['bound'] - partial
            if rem < 0:
                return
            row = p[i]
            t = sum(row[j] * z[j] for j in range(i + 1, n))
            s = isqrt(rem // e[i])
            lo = -((s + t) // delta)
            hi = (s - t) // delta
            step = 1
            if parity is not None:
                lo += (lo - parity[i]) % 2
                step = 2
            for zi in range(lo, hi + 1, step):
                state['nodes'] += 1
                if limit is not None and state['nodes'] > limit:
                    budget.charge(state['nodes'])
                y = delta * zi + t
                value = partial + e[i] * y * y
                if value > state['bound']:
                    continue
                z[i] = zi
                if i == 0:
                    if shrink and value < state['bound']:
                        state['bound'] = value
                        del found[:]
                    found.append((value // self.scale, tuple(z)))
                else:
                    descend(i - 1, value)
            z[i] = 0

        if bound >= 0:
            descend(n - 1, 0)
        if budget is not None:
            budget.charge(state['nodes'])
        return found, state['nodes']

    def minimum(self, w, budget=None):
        w = self._coords(w)
        start = greedy_reduce(self.lattice, w)
        parity = tuple(c % 2 for c in w)
        found, nodes = self.search(self.lattice.norm(start), parity, shrink=True, budget=budget)
        minimizers = sorted(LatticeVector(coords) for _, coords in found)
        return CosetMinResult(found[0][0], minimizers, nodes)

    def below(self, w, bound, budget=None):
        w = self._coords(w)
        parity = tuple(c % 2 for c in w)
        found, _ = self.search(bound, parity, budget=budget)
        return sorted(LatticeVector(coords) for _, coords in found)

    def _coords(self, w):
        w = tuple(w)
        if len(w) != self.rank:
            raise DimensionMismatchException('Expected a vector of length {}, got {}'.format(self.rank, len(w)))
        return w


def greedy_reduce(lattice, w):
    """
    Shorten w inside its coset by coordinate moves z -> z + 2t e_i until no move helps
    :param lattice: {Lattice}
    :param w: {LatticeVector} Coset representative
    :return: {LatticeVector} A representative of w + 2L with norm <= norm(w)
    """
    rows = lattice.rows
    n = lattice.rank
    z = list(w)
    gz = [sum(g * x for g, x in zip(rows[i], z)) for i in range(n)]
    improved = True
    while improved:
        improved = False
        for i in range(n):
            gii = rows[i][i]
            # norm(z + 2t e_i) - norm(z) = 4t gz_i + 4t^2 g_ii, minimal at t = round(-gz_i / 2g_ii)
            t = -((gz[i] + gii) // (2 * gii))
            if t and t * gz[i] + t * t * gii < 0:
                z[i] += 2 * t
                for k in range(n):
                    gz[k] += 2 * t * rows[k][i]
                improved = True
    return LatticeVector(z)


def coset_min(lattice, w, budget=None):
    """
    Minimal norm in w + 2L with the complete, lexicographically sorted set of minimizers
    """
    return CosetEnumerator(lattice).minimum(w, budget)


def enumerate_coset_below(lattice, w, bound, budget=None):
    return CosetEnumerator(lattice).below(w, bound, budget)


def enumerate_lattice_below(lattice, bound, budget=None):
    """
    All lattice points of norm <= bound as (norm, LatticeVector) pairs
    """
    found, _ = CosetEnumerator(lattice).search(bound, budget=budget)
    return sorted((norm, LatticeVector(coords)) for norm, coords in found)


def naive_box_radius(lattice, w):
    """
    A box radius for naive_coset_min that is guaranteed to contain every minimizer of w + 2L
    """
    bound = lattice.norm(greedy_reduce(lattice, w))
    inverse = _inverse_diagonal(lattice)
    # |z_i|^2 <= norm(z) * (G^-1)_ii
    reach = max(isqrt(int(bound * g)) for g in inverse)
    return (reach + 1) // 2 + 1


def _inverse_diagonal(lattice):
    inverse = linalg.inverse(linalg.matrix(lattice.rows))
    return [inverse[i, i] for i in range(lattice.rank)]


def naive_coset_min(lattice, w, box_radius):
    """
    Exhaustive search of z = r + 2u, r the {0,1} representative of w and u in [-box_radius, box_radius]^n
    """
    if lattice.rank > NAIVE_MAX_RANK:
        raise RankTooLargeException('Naive search is limited to rank {}, got {}'
                                    .format(NAIVE_MAX_RANK, lattice.rank))
    base = [c % 2 for c in w]
    best = None
    minimizers = []
    nodes = 0
    steps = range(-box_radius, box_radius + 1)
    for u in itertools.product(steps, repeat=lattice.rank):
        nodes += 1
        z = [b + 2 * x for b, x in zip(base, u)]
        value = lattice.norm(z)
        if best is None or value < best:
            best = value
            minimizers = []
        if value == best:
            minimizers.append(LatticeVector(z))
    return CosetMinResult(best, sorted(minimizers), nodes)
