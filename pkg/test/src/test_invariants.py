import unittest
from unittest import mock

from hypothesis import given, settings, assume, HealthCheck, strategies as st

from src import invariants
from src import enumeration
from src import lattice
from src.lattice import LatticeVector, DualVector, AmbientVector
from src import exceptions



def e8_frame():
    e8 = lattice.e8()
    return e8, e8.ambient_to_basis(AmbientVector.from_ambient([1, 1, 1, 1, 0, 0, 0, 0]))


@st.composite
def small_lattices(draw, max_rank=4):
    rank = draw(st.integers(1, max_rank))
    a = draw(st.lists(st.lists(st.integers(-1, 1), min_size=rank, max_size=rank), min_size=rank, max_size=rank))
    gram = [[sum(a[k][i] * a[k][j] for k in range(rank)) + (1 if i == j else 0) for j in range(rank)]
            for i in range(rank)]
    return lattice.from_gram(gram)


@st.composite
def cosets(draw, max_rank=4):
    lat = draw(small_lattices(max_rank))
    w = draw(st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank))
    a = draw(st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank))
    return lat, LatticeVector(w), DualVector(a)


PROPERTY_SETTINGS = settings(max_examples=1000, derandomize=True, deadline=None,
                             suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])


class TestEta(unittest.TestCase):
    def test_e8(self):
        e8, q = e8_frame()
        self.assertEqual(invariants.eta(e8, q, None, 0), 16)
        minimizers = enumeration.coset_min(e8, q).minimizers
        self.assertEqual(len(minimizers), 16)
        self.assertEqual({invariants.coset_sign(e8, z, q) for z in minimizers}, {1})

    def test_not_extremal(self):
        lat = lattice.diagonal(1)
        self.assertFalse(invariants.is_extremal(lat, LatticeVector([3])))
        self.assertEqual(invariants.eta_terms(lat, LatticeVector([3])), [])
        self.assertEqual(invariants.eta(lat, LatticeVector([3]), DualVector([1]), 1), 0)

    def test_diagonal_four(self):
        lat = lattice.diagonal(4)
        w = LatticeVector([1, 1, 1, 1])
        self.assertTrue(invariants.eta_polynomial(lat, w, 0).is_zero())
        self.assertTrue(invariants.eta_polynomial(lat, w, 2).is_zero())
        poly = invariants.eta_polynomial(lat, w, 4)
        self.assertEqual(poly.coeffs, {(1, 1, 1, 1): 384})
        self.assertEqual(invariants.eta(lat, w, DualVector([1, 2, 1, 1]), 4), 768)
        self.assertEqual(invariants.minimal_m(lat, w), 4)
        self.assertEqual(invariants.contribution(4, 4), 0)

    def test_odd_degree(self):
        lat = lattice.diagonal(1)
        # z = 1 and z = -1 both contribute -1
        self.assertEqual(invariants.eta(lat, LatticeVector([1]), DualVector([1]), 1), -2)
        self.assertEqual(invariants.minimal_m(lat, LatticeVector([1])), 1)

    def test_parity(self):
        lat = lattice.diagonal(4)
        with self.assertRaises(exceptions.ParityMismatchException):
            invariants.eta(lat, LatticeVector([1, 1, 1, 1]), None, 1)
        with self.assertRaises(exceptions.ParityMismatchException):
            invariants.eta(lat, LatticeVector([1, 1, 1, 1]), None, -2)

    def test_degree_limit(self):
        with self.assertRaises(exceptions.DegreeTooLargeException):
            invariants.eta_polynomial(lattice.diagonal(4), LatticeVector([1, 1, 1, 1]), 10)
        with self.assertRaises(exceptions.DegreeTooLargeException):
            invariants.minimal_m(lattice.diagonal(4), LatticeVector([1, 1, 1, 1]), m_max=2)

    def test_functional_length(self):
        with self.assertRaises(exceptions.DimensionMismatchException):
            invariants.eta(lattice.diagonal(2), LatticeVector([1, 1]), DualVector([1]), 2)

    def test_contribution(self):
        self.assertEqual(invariants.contribution(4, 0), 1)
        self.assertEqual(invariants.contribution(5, 1), 1)
        self.assertEqual(invariants.contribution(6, 0), 2)
        self.assertEqual(invariants.contribution(2, 0), 1)

    def test_theta(self):
        self.assertEqual(invariants.theta_counts(lattice.e8(), 4), {0: 1, 2: 240, 4: 2160})
        self.assertEqual(invariants.theta_counts(lattice.diagonal(2), 2), {0: 1, 1: 4, 2: 4})

    def test_classes(self):
        self.assertEqual(len(list(invariants.coset_classes(3))), 8)
        with self.assertRaises(exceptions.RankTooLargeException):
            invariants.coset_classes(21)


class TestEtaProperties(unittest.TestCase):
    @PROPERTY_SETTINGS
    @given(cosets())
    def test_representative_invariance(self, case):
        lat, w, _ = case
        minimizers = enumeration.coset_min(lat, w).minimizers
        first, last = minimizers[0], minimizers[-1]
        ell = LatticeVector((a - b) // 2 for a, b in zip(last, first))
        sign = -1 if lat.norm(ell) % 2 else 1
        m = lat.norm(first) % 2
        self.assertEqual(invariants.eta_polynomial(lat, last, m), sign * invariants.eta_polynomial(lat, first, m))

    @PROPERTY_SETTINGS
    @given(cosets())
    def test_even_at_degree_zero(self, case):
        lat, w, _ = case
        assume(any(c % 2 for c in w))
        assume(lat.norm(w) % 2 == 0)
        self.assertEqual(invariants.eta(lat, w, None, 0) % 2, 0)

    @PROPERTY_SETTINGS
    @given(cosets(3), cosets(3))
    def test_direct_sum(self, first, second):
        l1, w1, _ = first
        l2, w2, _ = second
        assume(l1.norm(w1) % 2 == 0 and l2.norm(w2) % 2 == 0)
        total = lattice.direct_sum(l1, l2)
        self.assertEqual(invariants.eta(total, w1.concat(w2), None, 0),
                         invariants.eta(l1, w1, None, 0) * invariants.eta(l2, w2, None, 0))

    @PROPERTY_SETTINGS
    @given(cosets(3), cosets(3), st.integers(0, 1))
    def test_direct_sum_with_functional(self, first, second, k):
        l1, w1, a1 = first
        l2, w2, _ = second
        m = l1.norm(w1) % 2 + 2 * k
        assume(m > 0)
        assume(l2.norm(w2) % 2 == 0)
        total = lattice.direct_sum(l1, l2)
        a = DualVector(tuple(a1) + (0,) * l2.rank)
        self.assertEqual(invariants.eta(total, w1.concat(w2), a, m),
                         invariants.eta(l1, w1, a1, m) * invariants.eta(l2, w2, None, 0))

    def test_direct_sum_odd_norm(self):
        e8, q = e8_frame()
        total = lattice.direct_sum(lattice.diagonal(1), e8)
        w = LatticeVector([1]).concat(q)
        self.assertEqual(invariants.eta(total, w, DualVector([1] + [0] * 8), 1), -32)

    @PROPERTY_SETTINGS
    @given(cosets(), st.integers(0, 2))
    def test_polynomial_agrees(self, case, k):
        lat, w, a = case
        m = lat.norm(w) % 2 + 2 * k
        self.assertEqual(invariants.eta(lat, w, a, m), invariants.eta_polynomial(lat, w, m).evaluate(a))


@st.composite
def orthogonal_sums(draw):
    return lattice.direct_sum(draw(small_lattices(2)), draw(small_lattices(2)))


class TestEInvariant(unittest.TestCase):
    def test_diagonal(self):
        for n in range(1, 9):
            certificate = invariants.e_invariant(lattice.diagonal(n))
            self.assertEqual(certificate.value, 0, 'diag:{}'.format(n))
            self.assertEqual(len(certificate.per_class_table), 2 ** n)

    def test_diagonal_rows_reach_their_norm(self):
        certificate = invariants.e_invariant(lattice.diagonal(3))
        for row in certificate.per_class_table:
            self.assertEqual(row.m, row.min_norm)
            self.assertEqual(row.contribution, 0)
        self.assertEqual(certificate.witness_w, LatticeVector([-1, -1, -1]))
        self.assertEqual(certificate.witness_eta.coeffs, {(1, 1, 1): 48})

    def test_large_diagonal(self):
        certificate = invariants.e_invariant(lattice.diagonal(12))
        self.assertEqual(certificate.value, 0)
        self.assertEqual(certificate.witness_m, 12)
        self.assertEqual(len(certificate.blocks), 12)

    def test_e8(self):
        certificate = invariants.e_invariant(lattice.e8())
        self.assertEqual(certificate.value, 1)
        self.assertEqual(certificate.witness_norm, 4)
        self.assertEqual(certificate.witness_m, 0)
        self.assertEqual(certificate.witness_eta.value(), 16)
        data = certificate.to_dict()
        self.assertEqual(data['value'], 1)
        self.assertEqual(data['blocks'], [list(range(8))])
        self.assertEqual(len(data['per_class_table']), 256)
        self.assertEqual(sum(1 for row in data['per_class_table'] if row['min_norm'] == 4), 135)

    def test_witness_tie_break(self):
        certificate = invariants.e_invariant(lattice.e8())
        top = max(row.contribution for row in certificate.per_class_table if row.contribution is not None)
        best = [row for row in certificate.per_class_table if row.contribution == top]
        longest = max(row.min_norm for row in best)
        self.assertEqual(certificate.witness_w, min(row.witness for row in best if row.min_norm == longest))

    def test_e8_plus_diagonal(self):
        for d in (1, 2, 3):
            total = lattice.direct_sum(lattice.e8(), lattice.diagonal(d))
            certificate = invariants.e_invariant(total)
            self.assertEqual(certificate.value, 1)
            self.assertEqual(certificate.witness_norm, 4 + d)
            a = DualVector(range(1, total.rank + 1))
            self.assertEqual(certificate.witness_eta.evaluate(a),
                             invariants.eta(total, certificate.witness_w, a, certificate.witness_m))

    def test_e8_plus_e8(self):
        total = lattice.direct_sum(lattice.e8(), lattice.e8())
        certificate = invariants.e_invariant(total)
        self.assertEqual(certificate.value, 2)
        self.assertEqual(certificate.witness_m, 0)
        self.assertEqual(certificate.witness_eta.value(), 256)
        self.assertEqual(len(certificate.per_class_table), 2 ** 16)

    def test_blocks(self):
        total = lattice.direct_sum(lattice.e8(), lattice.diagonal(2))
        self.assertEqual(invariants.orthogonal_blocks(total), [list(range(8)), [8], [9]])
        self.assertEqual(invariants.orthogonal_blocks(lattice.gamma(12)), [list(range(12))])
        self.assertEqual(invariants.block_lattice(total, [8]), lattice.diagonal(1))

    @settings(max_examples=50, derandomize=True, deadline=None)
    @given(orthogonal_sums())
    def test_blocks_match_direct_sweep(self, total):
        composed = invariants.e_invariant(total).per_class_table
        classes = [tuple(c) for c in invariants.coset_classes(total.rank)]
        direct = invariants._ClassSweeper(total, invariants.DEFAULT_M_MAX)(classes, enumeration.EnumBudget())
        self.assertEqual([(row.coset, row.min_norm, row.m, row.witness) for row in composed],
                         [(row.coset, row.min_norm, row.m, row.witness) for row in direct])

    def test_parallel_matches_sequential(self):
        lat = lattice.direct_sum(lattice.diagonal(2), lattice.gamma(8))
        with mock.patch.object(invariants.EInvariantSweep, 'CHUNK', 32):
            sequential = invariants.e_invariant(lat, workers=1).to_dict()
            parallel = invariants.e_invariant(lat, workers=2).to_dict()
        self.assertEqual(sequential, parallel)

    def test_rank_guard(self):
        with self.assertRaises(exceptions.RankTooLargeException):
            invariants.e_invariant(lattice.e8(), rank_guard=4)

    def test_budget(self):
        with self.assertRaises(exceptions.BudgetExceededException):
            invariants.e_invariant(lattice.e8(), enumeration.EnumBudget(3))

    def test_budget_covers_whole_sweep(self):
        total = lattice.direct_sum(lattice.e8(), lattice.diagonal(1))
        used = invariants.e_invariant(total).nodes_used
        exact = enumeration.EnumBudget(used)
        self.assertEqual(invariants.e_invariant(total, exact).value, 1)
        self.assertEqual(exact.nodes_used, used)
        with self.assertRaises(exceptions.BudgetExceededException):
            invariants.e_invariant(total, enumeration.EnumBudget(used // 4))

    def test_budget_shared_with_workers(self):
        total = lattice.direct_sum(lattice.e8(), lattice.diagonal(1))
        used = invariants.e_invariant(total).nodes_used
        with mock.patch.object(invariants.EInvariantSweep, 'CHUNK', 32):
            with self.assertRaises(exceptions.BudgetExceededException):
                invariants.e_invariant(total, enumeration.EnumBudget(used // 4), workers=2)


class TestMinimalDegreeScan(unittest.TestCase):
    def test_lenient_at_norm(self):
        lat = lattice.diagonal(4)
        terms = invariants.eta_terms(lat, LatticeVector([1, 1, 1, 1]))
        self.assertEqual(invariants.scan_minimal_m(terms, 4, 4, 4, 2, lenient=True), (None, None))
        with self.assertRaises(exceptions.DegreeTooLargeException):
            invariants.scan_minimal_m(terms, 4, 4, 4, 2)
        m, poly = invariants.scan_minimal_m(terms, 4, 4, 4, 4, lenient=True)
        self.assertEqual((m, poly.coeffs), (4, {(1, 1, 1, 1): 384}))

    def test_lenient_below_norm_still_raises(self):
        lat = lattice.diagonal(4)
        terms = invariants.eta_terms(lat, LatticeVector([1, 1, 1, 1]))
        with self.assertRaises(exceptions.DegreeTooLargeException):
            invariants.scan_minimal_m(terms, 4, 4, 4, 0, lenient=True)
