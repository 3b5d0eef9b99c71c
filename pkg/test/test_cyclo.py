import os
import random
import sys
import unittest
from fractions import Fraction

from sympy import QQ, Poly, Rational, cyclotomic_poly, symbols

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ellft.cyclo import (DEGREE, N, ONE, PHI60, ZERO, CycNum, cyc_matrix, determinant, format_coeff,
                         identity_matrix, inverse_matrix, matmul, matrices_equal, parse_coeff, rank,
                         root_of_unity)
from ellft.utils.error_handler import CoeffParseError, CycloError
from ellft.utils.logger import Logger, logger


class TestCycNum(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestCycNum class")
        cls.i = root_of_unity(4, 1)
        cls.w = root_of_unity(3, 1)

    def test_roots_of_unity(self):
        logger.info("\nTesting root orders and relations:")
        self.assertEqual(self.i * self.i, -1)
        self.assertEqual(self.w ** 3, 1)
        self.assertEqual(1 + self.w + self.w ** 2, ZERO)
        self.assertEqual(root_of_unity(2, 1), -1)
        self.assertEqual(root_of_unity(60, 1) ** 60, ONE)
        self.assertEqual(self.i.root_order(), 4)
        self.assertEqual((-self.w).root_order(), 6)
        self.assertIsNone(CycNum.rational(2).root_order())
        self.assertFalse((1 + self.i).is_root_of_unity())

    def test_bad_root_order(self):
        logger.info("\nTesting roots of order not dividing 60:")
        with self.assertRaises(CycloError) as ctx:
            root_of_unity(7, 1)
        self.assertEqual(ctx.exception.error_code, "BAD_ROOT_ORDER")

    def test_field_operations(self):
        logger.info("\nTesting inverses and division:")
        x = 1 + self.i
        self.assertEqual(x * x.inv(), ONE)
        self.assertEqual(x / x, ONE)
        self.assertEqual((x * x) / 2, self.i)
        self.assertEqual(CycNum.rational(Fraction(3, 4)).inv(), Fraction(4, 3))
        with self.assertRaises(CycloError):
            ZERO.inv()
        with self.assertRaises(CycloError):
            x / 0

    def test_conjugation(self):
        logger.info("\nTesting complex conjugation:")
        self.assertEqual(self.i.conj(), -self.i)
        self.assertEqual(self.w.conj(), self.w ** 2)
        z = 2 + 3 * self.i
        self.assertTrue((z * z.conj()).is_rational())
        self.assertEqual((z * z.conj()).to_fraction(), 13)

    def test_galois(self):
        logger.info("\nTesting Galois automorphisms:")
        self.assertEqual(self.i.galois(7), -self.i)
        self.assertEqual(self.w.galois(7), self.w)
        with self.assertRaises(CycloError):
            self.i.galois(2)

    def test_sqrt5(self):
        logger.info("\nTesting sqrt(5) from fifth roots:")
        z5 = root_of_unity(5, 1)
        s = z5 + z5 ** 4 - z5 ** 2 - z5 ** 3
        self.assertEqual(s * s, 5)

    def test_to_fraction_rejects_irrational(self):
        logger.info("\nTesting to_fraction on an irrational element:")
        with self.assertRaises(CycloError):
            self.i.to_fraction()

    def test_hash_matches_rationals(self):
        logger.info("\nTesting hashing:")
        self.assertEqual(hash(CycNum.rational(3)), hash(Fraction(3)))
        self.assertEqual(len({self.i, -self.i, parse_coeff("z4")}), 2)


class TestCoefficientGrammar(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestCoefficientGrammar class")

    def test_parse(self):
        logger.info("\nTesting parse_coeff:")
        i = root_of_unity(4, 1)
        self.assertEqual(parse_coeff("-z4"), -i)
        self.assertEqual(parse_coeff("1/2*(1+z4)"), (1 + i) / 2)
        self.assertEqual(parse_coeff("z3^2"), root_of_unity(3, 2))
        self.assertEqual(parse_coeff("z3^-1"), root_of_unity(3, 2))
        self.assertEqual(parse_coeff("--3"), 3)
        self.assertEqual(parse_coeff(" 2 - 3 "), -1)
        self.assertEqual(parse_coeff(-4), -4)

    def test_parse_errors(self):
        logger.info("\nTesting parse errors and positions:")
        with self.assertRaises(CoeffParseError) as ctx:
            parse_coeff("1 + x")
        self.assertEqual(ctx.exception.position, 4)
        self.assertEqual(ctx.exception.expr, "1 + x")
        with self.assertRaises(CoeffParseError) as ctx:
            parse_coeff("z7")
        self.assertEqual(ctx.exception.error_code, "BAD_ROOT_ORDER")
        with self.assertRaises(CoeffParseError):
            parse_coeff("(1+z4")
        with self.assertRaises(CoeffParseError):
            parse_coeff("1/0")
        with self.assertRaises(CoeffParseError):
            parse_coeff("")
        with self.assertRaises(CoeffParseError):
            parse_coeff("z3^")

    def test_canonical_printer(self):
        logger.info("\nTesting format_coeff:")
        self.assertEqual(format_coeff(CycNum.rational(Fraction(-1, 2))), "-1/2")
        self.assertEqual(format_coeff(root_of_unity(4, 1)), "z4")
        self.assertEqual(format_coeff(-root_of_unity(4, 1)), "-z4")
        self.assertEqual(format_coeff(root_of_unity(3, 2)), "z3^2")
        self.assertEqual(format_coeff(root_of_unity(3, 2) / 2), "1/2*z3^2")
        self.assertEqual(str(CycNum.rational(7)), "7")

    def test_printer_output_parses_back(self):
        logger.info("\nTesting that printed values parse to themselves:")
        values = [root_of_unity(5, 2) - 3, (1 + root_of_unity(4, 1)) / 3, root_of_unity(60, 7), -root_of_unity(12, 5)]
        for v in values:
            self.assertEqual(parse_coeff(format_coeff(v)), v)


class TestAgainstPolynomialRemainders(unittest.TestCase):
    """Random elements compared with sympy polynomial arithmetic modulo the 60th cyclotomic polynomial."""

    SAMPLES = 100

    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestAgainstPolynomialRemainders class")
        cls.x = symbols('x')
        cls.phi = Poly(cyclotomic_poly(N, cls.x), cls.x, domain=QQ)
        cls.rng = random.Random(20240601)

    def random_element(self, nonzero: bool = False) -> CycNum:
        while True:
            coeffs = [0] * DEGREE
            for d in self.rng.sample(range(DEGREE), self.rng.randint(1, 6)):
                coeffs[d] = Fraction(self.rng.randint(-9, 9), self.rng.randint(1, 4))
            value = CycNum(coeffs)
            if not nonzero or not value.is_zero():
                return value

    def to_poly(self, value: CycNum) -> Poly:
        return Poly([Rational(c.numerator, c.denominator) for c in reversed(value.coeffs)], self.x, domain=QQ)

    def reduce(self, p: Poly) -> Poly:
        return p.rem(self.phi)

    def test_modulus(self):
        logger.info("\nTesting the stored reduction polynomial:")
        self.assertEqual(self.phi.all_coeffs()[::-1], list(PHI60))
        self.assertEqual(self.to_poly(CycNum.zeta60(DEGREE)), self.reduce(Poly(self.x ** DEGREE, self.x, domain=QQ)))

    def test_multiplication(self):
        logger.info("\nTesting products, associativity and distributivity on random triples:")
        for _ in range(self.SAMPLES):
            a, b, c = self.random_element(), self.random_element(), self.random_element()
            pa, pb, pc = self.to_poly(a), self.to_poly(b), self.to_poly(c)
            self.assertEqual(self.to_poly(a * b), self.reduce(pa * pb))
            self.assertEqual(self.to_poly((a * b) * c), self.reduce(pa * pb * pc))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(self.to_poly(a * (b + c)), self.reduce(pa * (pb + pc)))
            self.assertEqual(a * (b + c), a * b + a * c)

    def test_inverse(self):
        logger.info("\nTesting a * inv(a) = 1 on random nonzero elements:")
        for _ in range(self.SAMPLES):
            a = self.random_element(nonzero=True)
            self.assertEqual(a * a.inv(), ONE)
            self.assertEqual(self.reduce(self.to_poly(a) * self.to_poly(a.inv())), Poly(1, self.x, domain=QQ))


class TestMatrices(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestMatrices class")

    def test_inverse(self):
        logger.info("\nTesting inverse_matrix:")
        a = cyc_matrix([["1", "z4"], ["z3", "2"]])
        self.assertTrue(matrices_equal(matmul(a, inverse_matrix(a)), identity_matrix(2)))
        with self.assertRaises(CycloError):
            inverse_matrix(cyc_matrix([[1, 2], [2, 4]]))

    def test_determinant_and_rank(self):
        logger.info("\nTesting determinant and rank:")
        self.assertEqual(determinant(cyc_matrix([[1, 2], [3, 4]])), -2)
        self.assertEqual(determinant(cyc_matrix([[0, 1], [1, 0]])), -1)
        self.assertEqual(rank(cyc_matrix([[1, 2, 3], [2, 4, 6]])), 1)
        self.assertEqual(rank(identity_matrix(3)), 3)


if __name__ == '__main__':
    unittest.main()
