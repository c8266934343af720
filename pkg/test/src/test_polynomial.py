import unittest

from hypothesis import given, settings, strategies as st

from src import polynomial
from src.polynomial import MultinomialCoefficients, EtaPolynomial


class TestMultinomialCoefficients(unittest.TestCase):
    def test_coef(self):
        self.assertEqual(MultinomialCoefficients(4).coef((2, 1, 1)), 12)
        self.assertEqual(MultinomialCoefficients(4).coef((4, 0)), 1)
        self.assertEqual(MultinomialCoefficients(0).coef((0, 0, 0)), 1)

    def test_compositions(self):
        self.assertEqual(list(MultinomialCoefficients.compositions(2, 2)), [(2, 0), (1, 1), (0, 2)])
        self.assertEqual(len(list(MultinomialCoefficients.compositions(3, 3))), 10)

    def test_sum(self):
        multinomial = MultinomialCoefficients(5)
        self.assertEqual(sum(multinomial.coef(alpha) for alpha in MultinomialCoefficients.compositions(5, 3)),
                         3 ** 5)


class TestEtaPolynomial(unittest.TestCase):
    def test_square(self):
        poly = polynomial.expand_power_sum([(1, (1, 1))], 2, 2)
        self.assertEqual(poly.coeffs, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        self.assertEqual(poly.evaluate((2, 3)), 25)

    def test_cancellation(self):
        poly = polynomial.expand_power_sum([(1, (1, 0)), (-1, (1, 0))], 3, 2)
        self.assertTrue(poly.is_zero())
        self.assertEqual(str(poly), '0')

    def test_constant(self):
        poly = polynomial.expand_power_sum([(1, (0, 0)), (2, (1, 1)), (-2, (1, -1))], 0, 2)
        self.assertEqual(poly, EtaPolynomial.constant(2, 1))
        self.assertEqual(poly.value(), 1)

    def test_zero_vector_needs_degree_zero(self):
        poly = polynomial.expand_power_sum([(1, (0, 0))], 2, 2)
        self.assertTrue(poly.is_zero())

    def test_zero_coefficients_dropped(self):
        self.assertTrue(EtaPolynomial(1, 1, {(1,): 0}).is_zero())

    def test_scalar(self):
        poly = EtaPolynomial(1, 2, {(1, 0): 3})
        self.assertEqual(-1 * poly, EtaPolynomial(1, 2, {(1, 0): -3}))
        self.assertEqual(poly * 2, EtaPolynomial(1, 2, {(1, 0): 6}))

    def test_extend(self):
        poly = EtaPolynomial(2, 1, {(2,): 5}).extend(3)
        self.assertEqual(poly.coeffs, {(2, 0, 0): 5})
        self.assertEqual(poly.rank, 3)

    def test_embed(self):
        poly = EtaPolynomial(3, 2, {(2, 1): 4, (0, 3): -1}).embed(4, [3, 1])
        self.assertEqual(poly.coeffs, {(0, 1, 0, 2): 4, (0, 3, 0, 0): -1})
        self.assertEqual((poly.m, poly.rank), (3, 4))

    def test_times(self):
        left = EtaPolynomial(1, 2, {(1, 0): 1, (0, 1): 1})
        right = EtaPolynomial(1, 2, {(1, 0): 1, (0, 1): -1})
        self.assertEqual(left.times(right), EtaPolynomial(2, 2, {(2, 0): 1, (0, 2): -1}))
        self.assertEqual(EtaPolynomial.constant(2, 3).times(left), left * 3)
        with self.assertRaises(ValueError):
            left.times(EtaPolynomial.constant(3, 1))

    def test_text(self):
        poly = EtaPolynomial(2, 2, {(2, 0): 1, (1, 1): -2})
        self.assertEqual(str(poly), '1*a1^2 - 2*a1*a2')
        self.assertEqual(poly.to_dict(), {
            'm': 2,
            'terms': [{'exponent': [2, 0], 'coeff': 1}, {'exponent': [1, 1], 'coeff': -2}]
        })

    @settings(max_examples=300, derandomize=True, deadline=None)
    @given(st.integers(1, 3).flatmap(lambda rank: st.tuples(
        st.lists(st.tuples(st.integers(-3, 3), st.lists(st.integers(-2, 2), min_size=rank, max_size=rank)),
                 max_size=5),
        st.integers(0, 4),
        st.lists(st.integers(-3, 3), min_size=rank, max_size=rank))))
    def test_expansion_evaluates_power_sum(self, case):
        terms, m, a = case
        rank = len(a)
        poly = polynomial.expand_power_sum([(weight, tuple(z)) for weight, z in terms], m, rank)
        direct = sum(weight * sum(x * y for x, y in zip(a, z)) ** m for weight, z in terms)
        self.assertEqual(poly.evaluate(a), direct)
