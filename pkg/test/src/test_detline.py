import random
import unittest
from fractions import Fraction

from src import detline
from src import linalg
from src import exceptions


class TestExactComplex(unittest.TestCase):
    def test_verify(self):
        rng = random.Random(3)
        for length in range(2, 6):
            self.assertTrue(detline.random_exact_complex(rng, length).verify())

    def test_not_exact(self):
        with self.assertRaises(exceptions.NotExactException):
            detline.ExactComplex([1, 1], [linalg.zeros(1, 1)]).verify()
        with self.assertRaises(exceptions.NotExactException):
            detline.ExactComplex([1, 1], [linalg.zeros(2, 1)]).verify()
        with self.assertRaises(exceptions.NotExactException):
            detline.ExactComplex([1, 1], [])

    def test_bad_order(self):
        with self.assertRaises(ValueError):
            detline.acyclic_iso(detline.ExactComplex([1, 1], [linalg.identity(1)]), order='sideways')


class TestAcyclicIso(unittest.TestCase):
    def test_isomorphism(self):
        complex_ = detline.ExactComplex([2, 2], [linalg.matrix([[2, 0], [0, 3]])])
        self.assertEqual(detline.acyclic_iso(complex_), 6)
        unimodular = detline.ExactComplex([2, 2], [linalg.matrix([[2, 1], [1, 1]])])
        self.assertEqual(detline.acyclic_iso(unimodular), 1)

    def test_rebased_is_invariant(self):
        rng = random.Random(11)
        for _ in range(100):
            complex_ = detline.random_exact_complex(rng, rng.randint(2, 5))
            changes = [detline.random_invertible(rng, d) for d in complex_.dims]
            for order in detline.ORDERS:
                self.assertEqual(detline.acyclic_iso(complex_.rebased(changes), order),
                                 detline.acyclic_iso(complex_, order))

    def test_basis_change(self):
        rng = random.Random(12)
        for _ in range(100):
            original = detline.random_exact_complex(rng, rng.randint(2, 5))
            standard = detline.ExactComplex(original.dims, original.maps)
            changes = [detline.random_invertible(rng, d) for d in standard.dims]
            moved = detline.ExactComplex(standard.dims, standard.rebased(changes).maps)
            factor = Fraction(1)
            for i, p in enumerate(changes):
                factor = factor / linalg.det(p) if i % 2 else factor * linalg.det(p)
            self.assertEqual(detline.acyclic_iso(moved), detline.acyclic_iso(standard) * factor)


class TestExact3(unittest.TestCase):
    def test_right_inverse_independence(self):
        rng = random.Random(5)
        for _ in range(500):
            complex_ = detline.random_exact3(rng)
            s = detline.random_right_inverse(complex_.maps[1], rng)
            for order in detline.ORDERS:
                self.assertEqual(detline.exact3_iso(complex_, s, order), detline.exact3_iso(complex_, order=order))
            self.assertEqual(detline.exact3_iso(complex_), detline.acyclic_iso(complex_))

    def test_determinant(self):
        rng = random.Random(6)
        for _ in range(50):
            a, c = rng.randint(0, 3), rng.randint(0, 3)
            p = detline.random_invertible(rng, a + c)
            complex_ = detline.ExactComplex([a, a + c, c], [linalg.take(p, cols=range(a)),
                                                            linalg.take(linalg.inverse(p), rows=range(a, a + c))])
            self.assertEqual(detline.exact3_iso(complex_), linalg.det(p))

    def test_inverse_determinant(self):
        m = linalg.matrix([[1, 2], [3, 4]])
        complex_ = detline.ExactComplex([0, 2, 2], [linalg.zeros(2, 0), m])
        self.assertEqual(detline.exact3_iso(complex_), Fraction(-1, 2))
        self.assertEqual(detline.acyclic_iso(complex_), Fraction(-1, 2))

    def test_split_sign(self):
        for a in range(4):
            for c in range(4):
                split = detline.ExactComplex([a, a + c, c], [linalg.take(linalg.identity(a + c), cols=range(a)),
                                                             linalg.take(linalg.identity(a + c), rows=range(a, a + c))])
                self.assertEqual(detline.exact3_iso(split), 1)
                self.assertEqual(detline.exact3_iso(split, order=detline.REVERSE), detline.sign(a * c))

    def test_not_right_inverse(self):
        complex_ = detline.ExactComplex([0, 1, 1], [linalg.zeros(1, 0), linalg.identity(1)])
        with self.assertRaises(ValueError):
            detline.exact3_iso(complex_, linalg.matrix([[2]]))


class TestStabilization(unittest.TestCase):
    def test_empty_stabilization(self):
        rng = random.Random(7)
        for _ in range(20):
            s = detline.random_matrix(rng, rng.randint(0, 4), rng.randint(0, 4))
            self.assertEqual(detline.stabilize(s, linalg.zeros(s.shape[0], 0), check=True), 1)

    def test_stabilized_shape(self):
        s = linalg.matrix([[1, 0]])
        f = linalg.matrix([[2]])
        self.assertEqual(detline.stabilized(s, f).tolist(), [[1, 0, 2], [0, 0, 0]])

    def test_sequence_is_exact(self):
        rng = random.Random(8)
        for _ in range(50):
            s, f, _ = detline.random_square_instance(rng)
            self.assertTrue(detline.stabilization_complex(s, f).verify())

    def test_square_sign(self):
        rng = random.Random(9)
        odd = 0
        for _ in range(1000):
            s, f1, f2 = detline.random_square_instance(rng)
            if detline.square_sign_exponent(s, f1, f2) % 2:
                odd += 1
            for order in detline.ORDERS:
                self.assertTrue(detline.verify_square_sign(s, f1, f2, order))
        self.assertGreaterEqual(odd, 50)

    def test_overlap_sign(self):
        rng = random.Random(10)
        for _ in range(200):
            t, _ = detline.random_gamma_instance(rng)
            w = t.shape[0]
            f1 = linalg.hstack(detline.auxiliary(t, 0), detline.random_matrix(rng, w, rng.randint(0, 2)))
            f2 = linalg.hstack(detline.auxiliary(t, 1), detline.random_matrix(rng, w, rng.randint(0, 2)))
            for order in detline.ORDERS:
                self.assertTrue(detline.verify_overlap_sign(t, f1, f2, order))

    def test_overlap_needs_surjective(self):
        t = linalg.zeros(2, 1)
        with self.assertRaises(ValueError):
            detline.verify_overlap_sign(t, linalg.zeros(2, 1), linalg.identity(2))


class TestGamma(unittest.TestCase):
    def test_gamma_sign(self):
        rng = random.Random(13)
        for trial in range(1000):
            t, g = detline.random_gamma_instance(rng)
            eps1, eps2 = trial % 2, (trial // 2) % 2
            order = detline.ORDERS[(trial // 4) % 2]
            self.assertTrue(detline.verify_gamma_sign(t, g, eps1, eps2, order, rng))

    def test_functorial(self):
        rng = random.Random(14)
        for _ in range(200):
            t, g1 = detline.random_gamma_instance(rng, 4, 2)
            g2 = detline.random_matrix(rng, t.shape[0], rng.randint(0, 2))
            eps = [rng.randint(0, 1) for _ in range(3)]
            self.assertTrue(detline.verify_gamma_functorial(t, g1, g2, *eps))

    def test_auxiliary_parity(self):
        t = linalg.matrix([[1, 0], [0, 0], [0, 0]])
        self.assertEqual(detline.auxiliary(t, 0).shape, (3, 2))
        self.assertEqual(detline.auxiliary(t, 1).shape, (3, 3))
        with self.assertRaises(ValueError):
            detline.gamma_iso(t, linalg.zeros(3, 0), 0, 0, f1=detline.auxiliary(t, 1))

    def test_parity_switch(self):
        self.assertEqual(detline.parity_switch_sign(linalg.zeros(2, 3)), -1)
        self.assertEqual(detline.parity_switch_sign(linalg.identity(2)), 1)


class TestDetLineCheck(unittest.TestCase):
    def test_run(self):
        counts = detline.run_checks(20, seed=1)
        self.assertEqual(sorted(counts), sorted(detline.DetLineCheck.CHECKS))
        for name, count in counts.items():
            self.assertEqual(count['failed'], 0, name)
            self.assertEqual(count['passed'], 20, name)

    def test_reproducible(self):
        self.assertEqual(detline.run_checks(10, seed=4), detline.run_checks(10, seed=4))
