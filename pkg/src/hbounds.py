"""
Bounds on the instanton h-invariant of integral homology spheres.

Only the arithmetic of the inequalities lives here. For a negative definite
manifold X with boundary Y, b+ and a surface of genus g as in the main
inequality, any extremal w in the complementary lattice with a nonzero eta
polynomial in degree m gives

    h(Y) + ceil(g / 2) + b+ - 1 >= (|w^2| - m) / 4

and a genus g surface bounding a knot yields 0 <= h(Y') - h(Y) <= ceil(g / 2)
for -1 surgery Y' on that knot. Every lower bound is returned with the
certificate it was verified from.
"""

from fractions import Fraction
from math import ceil, gcd

from . import lattice as lat
from . import invariants
from .lattice import AmbientVector, DualVector, LatticeVector
from .exceptions import NotExtremalException, EtaVanishesException, CertificateFailedException, \
    KTooSmallException, NotUnimodularException


def half_up(g):
    return (g + 1) // 2


class HBoundInput(object):
    """
    Data of one application of the main inequality
    :param g: {int} Genus of the embedded surface
    :param b_plus: {int} b2+ of the 4-manifold, at least 1
    :param lattice: {Lattice} Orthogonal complement lattice
    """
    def __init__(self, g, b_plus, lattice, w=None, a=None, m=0):
        if g < 0:
            raise ValueError('Genus must be nonnegative, got {}'.format(g))
        if b_plus < 1:
            raise ValueError('b+ must be at least 1, got {}'.format(b_plus))
        self.g = g
        self.b_plus = b_plus
        self.lattice = lattice
        self.w = w
        self.a = a
        self.m = m

    def offset(self):
        return half_up(self.g) + self.b_plus - 1


class HBoundResult(object):
    def __init__(self, lower=None, upper=None, certificate=None):
        if lower is not None and upper is not None and lower > upper:
            raise CertificateFailedException('Lower bound {} exceeds upper bound {}'.format(lower, upper))
        self.lower = lower
        self.upper = upper
        self.certificate = certificate or {}

    @property
    def value(self):
        return self.lower if self.lower is not None and self.lower == self.upper else None

    def to_dict(self):
        return {
            'lower': self.lower,
            'upper': self.upper,
            'value': self.value,
            'certificate': self.certificate
        }


def _require_unimodular(lattice):
    if not lattice.is_unimodular:
        raise NotUnimodularException('{} has determinant {}'.format(lattice.label, lattice.determinant))


def certify_lower(inp, budget=None, m_max=invariants.DEFAULT_M_MAX):
    """
    Verify a certificate (w, m) and return the resulting lower bound on h(Y)
    :param inp: {HBoundInput} With w set
    :return: {HBoundResult}
    """
    _require_unimodular(inp.lattice)
    lattice, w, m = inp.lattice, inp.w, inp.m
    norm = lattice.norm(w)
    if not invariants.is_extremal(lattice, w, budget):
        raise NotExtremalException('w = {} is not of minimal norm in w + 2L'.format(list(w)))
    poly = invariants.eta_polynomial(lattice, w, m, budget, m_max)
    if poly.is_zero():
        raise EtaVanishesException('The eta polynomial of w = {} vanishes in degree {}'.format(list(w), m))
    lower = ceil(Fraction(norm - m, 4)) - inp.offset()
    certificate = {
        'w': list(w),
        'norm': norm,
        'm': m,
        'g': inp.g,
        'b_plus': inp.b_plus,
        'eta': poly.to_dict()
    }
    if inp.a is not None:
        certificate['eta_at_a'] = invariants.eta(lattice, w, inp.a, m, budget)
    return HBoundResult(lower, None, certificate)


def h_lower_from_certificate(inp, budget=None, m_max=invariants.DEFAULT_M_MAX):
    return certify_lower(inp, budget, m_max).lower


def h_lower_from_e(lattice, g, b_plus=1, budget=None, **sweep):
    """
    h(Y) >= e(L) - ceil(g / 2) - (b+ - 1)
    """
    inp = HBoundInput(g, b_plus, lattice)
    _require_unimodular(lattice)
    certificate = invariants.e_invariant(lattice, budget, **sweep)
    return certificate.value - inp.offset()


def surgery_upper(g_slice):
    """
    Bounds (0, ceil(g/2)) on h(Y') - h(Y) for -1 surgery along a knot of slice genus g
    """
    if g_slice < 0:
        raise ValueError('Genus must be nonnegative, got {}'.format(g_slice))
    return 0, half_up(g_slice)


def torus_knot_surgery_upper(p, q):
    """
    -1 surgery on the (p, q) torus knot in the 3-sphere is the Brieskorn sphere S(p, q, pq - 1)
    :return: {HBoundResult} Bounds on its h-invariant
    """
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError('Torus knot needs coprime p, q >= 2, got ({}, {})'.format(p, q))
    genus = (p - 1) * (q - 1) // 2
    lower, upper = surgery_upper(genus)
    return HBoundResult(lower, upper, {
        'knot': [p, q],
        'genus': genus,
        'sphere': [p, q, p * q - 1]
    })


def brieskorn_witness(k):
    """
    The lattice Gamma_4k and w = e_1 + ... + e_4l, l = floor(k / 2), in basis coordinates
    """
    ell = k // 2
    lattice = lat.gamma(4 * k)
    x = AmbientVector([2] * (4 * ell) + [0] * (4 * (k - ell)))
    return lattice, lattice.ambient_to_basis(x)


def brieskorn_h(k, budget=None):
    """
    Certified h(S(2, 2k - 1, 4k - 3)) = floor(k / 2)
    :param k: {int} At least 2
    :return: {HBoundResult}
    """
    if k < 2:
        raise KTooSmallException('The Brieskorn family starts at k = 2, got {}'.format(k))
    lattice, w = brieskorn_witness(k)
    if not invariants.is_extremal(lattice, w, budget):
        raise CertificateFailedException('Witness is not extremal in {}'.format(lattice.label))
    value = invariants.eta(lattice, w, None, 0, budget)
    if value == 0:
        raise CertificateFailedException('Eta of the witness vanishes in {}'.format(lattice.label))
    lower = ceil(Fraction(lattice.norm(w), 4))
    _, upper = surgery_upper(k - 1)
    if not lower == upper == k // 2:
        raise CertificateFailedException('Bounds {} and {} do not meet at {}'.format(lower, upper, k // 2))
    return HBoundResult(lower, upper, {
        'sphere': [2, 2 * k - 1, 4 * k - 3],
        'lattice': lattice.label,
        'w': list(w),
        'w_ambient': [str(c) for c in lattice.basis_to_ambient(w).ambient()],
        'norm': lattice.norm(w),
        'eta': value,
        'torus_knot_genus': k - 1
    })


def filling_bound(lattice, h_value=None, budget=None, **sweep):
    """
    A negative definite Z with boundary Y and form L gives h(Y) >= e(L).

    With h_value given, reports whether L is obstructed as such a form; for the 3-sphere (h = 0)
    this is diagonalization of definite forms.
    """
    _require_unimodular(lattice)
    certificate = invariants.e_invariant(lattice, budget, **sweep)
    result = HBoundResult(certificate.value, None, certificate.to_dict())
    if h_value is not None:
        result.certificate['h'] = h_value
        result.certificate['obstructed'] = certificate.value > h_value
    return result


def e8_witness():
    e8 = lat.e8()
    return e8, e8.ambient_to_basis(AmbientVector([2, 2, 2, 2, 0, 0, 0, 0]))


def redhn_factor_check(k, base, w, a, m, budget=None):
    """
    Check eta(base + k E8, w + q + ... + q, a + 0, m) = eta(base, w, a, m) * eta(E8, q)^k with |eta(E8, q)| = 16
    :param base: {Lattice} Or None for the rank 0 lattice
    :return: {bool}
    """
    e8, q = e8_witness()
    e8_eta = invariants.eta(e8, q, None, 0, budget)
    if abs(e8_eta) != 16:
        return False
    if base is None:
        base_eta = 1 if m == 0 else 0
    else:
        base_eta = invariants.eta(base, w, a, m, budget)
    if k == 0:
        return True
    parts = ([base] if base is not None else []) + [e8] * k
    total = lat.direct_sum_many(parts)
    w_total = LatticeVector(tuple(w or ()) + q.coords * k)
    a_total = DualVector(tuple(a or (0,) * len(w or ())) + (0,) * (8 * k))
    return invariants.eta(total, w_total, a_total, m, budget) == base_eta * e8_eta ** k
