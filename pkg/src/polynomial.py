"""
Homogeneous integer polynomials in the coordinates of a dual vector a.

A polynomial is a dict from exponent tuples (one entry per lattice coordinate)
to nonzero integer coefficients; missing keys are zero.
"""

import functools


class MultinomialCoefficients(object):
    """
    Multinomial coefficients m! / (alpha_1! ... alpha_k!) for a fixed total degree m
    """
    def __init__(self, m):
        self.m = m
        self.pascal = self.precompute_pascal()

    def precompute_pascal(self):
        rows = [[1]]
        for _ in range(self.m):
            prev = rows[-1]
            rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
        return rows

    @functools.lru_cache(maxsize=None)
    def coef(self, alpha):
        ret = 1
        remaining = self.m
        for part in alpha:
            ret *= self.pascal[remaining][part]
            remaining -= part
        return ret

    @staticmethod
    def compositions(total, length):
        """
        All tuples of `length` nonnegative integers summing to `total`
        """
        if length == 1:
            yield (total,)
        elif length > 1:
            for value in range(total, -1, -1):
                for rest in MultinomialCoefficients.compositions(total - value, length - 1):
                    yield (value,) + rest


class EtaPolynomial(object):
    """
    Degree m form sum_alpha c_alpha a^alpha over `rank` variables
    """
    def __init__(self, m, rank, coeffs=None):
        self.m = m
        self.rank = rank
        self.coeffs = {alpha: c for alpha, c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, rank, value):
        return cls(0, rank, {(0,) * rank: value})

    def __eq__(self, other):
        return isinstance(other, EtaPolynomial) and (self.m, self.rank, self.coeffs) == \
            (other.m, other.rank, other.coeffs)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "EtaPolynomial(m={}, rank={}, terms={})".format(self.m, self.rank, len(self.coeffs))

    def __mul__(self, scalar):
        return EtaPolynomial(self.m, self.rank, {alpha: scalar * c for alpha, c in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs

    def evaluate(self, a):
        a = tuple(a)
        total = 0
        for alpha, c in self.coeffs.items():
            term = c
            for x, k in zip(a, alpha):
                if k:
                    term *= x ** k
            total += term
        return total

    def extend(self, rank):
        """
        The same polynomial viewed in rank variables, the extra ones absent
        """
        pad = (0,) * (rank - self.rank)
        return EtaPolynomial(self.m, rank, {alpha + pad: c for alpha, c in self.coeffs.items()})

    def embed(self, rank, positions):
        """
        The same polynomial with variable i renamed to positions[i] among rank variables
        """
        coeffs = {}
        for alpha, c in self.coeffs.items():
            spread = [0] * rank
            for k, pos in zip(alpha, positions):
                spread[pos] = k
            coeffs[tuple(spread)] = c
        return EtaPolynomial(self.m, rank, coeffs)

    def times(self, other):
        """
        Product of two forms over the same variables
        """
        if self.rank != other.rank:
            raise ValueError('Cannot multiply forms in {} and {} variables'.format(self.rank, other.rank))
        coeffs = {}
        for alpha, c in self.coeffs.items():
            for beta, d in other.coeffs.items():
                key = tuple(x + y for x, y in zip(alpha, beta))
                coeffs[key] = coeffs.get(key, 0) + c * d
        return EtaPolynomial(self.m + other.m, self.rank, coeffs)

    def value(self):
        """
        The constant term, meaningful when m = 0
        """
        return self.coeffs.get((0,) * self.rank, 0)

    def terms(self):
        return sorted(self.coeffs.items(), reverse=True)

    def to_dict(self):
        return {
            'm': self.m,
            'terms': [{'exponent': list(alpha), 'coeff': c} for alpha, c in self.terms()]
        }

    def __str__(self):
        if not self.coeffs:
            return '0'
        parts = []
        for alpha, c in self.terms():
            monomial = '*'.join('a{}^{}'.format(i + 1, k) if k > 1 else 'a{}'.format(i + 1)
                                for i, k in enumerate(alpha) if k)
            parts.append('{}*{}'.format(c, monomial) if monomial else str(c))
        return ' + '.join(parts).replace('+ -', '- ')


def expand_power_sum(terms, m, rank):
    """
    Expand sum_z weight(z) * (a . z)^m as a polynomial in a
    :param terms: {iterable} Pairs (weight, z) with z a coordinate tuple
    :param m: {int} Degree
    :param rank: {int} Number of variables
    :return: {EtaPolynomial}
    """
    multinomial = MultinomialCoefficients(m)
    sums = {}
    for weight, z in terms:
        support = [i for i, x in enumerate(z) if x]
        if not support:
            if m == 0:
                key = (0,) * rank
                sums[key] = sums.get(key, 0) + weight
            continue
        for parts in MultinomialCoefficients.compositions(m, len(support)):
            alpha = [0] * rank
            value = weight
            for i, k in zip(support, parts):
                alpha[i] = k
                value *= z[i] ** k
            key = tuple(alpha)
            sums[key] = sums.get(key, 0) + value
    return EtaPolynomial(m, rank, {alpha: multinomial.coef(alpha) * s for alpha, s in sums.items()})
