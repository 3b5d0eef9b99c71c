"""
Exact arithmetic in the cyclotomic field Q(z60).

Elements are residues of Q[x] modulo the 60th cyclotomic polynomial, stored as
16 rational coefficients of the power basis 1, x, ..., x^15 with x = exp(2*pi*i/60).
The fixed embedding makes z3 = x^20, z4 = x^15 and z5 = x^12.

Coefficient expressions (the catalog and CLI wire format) follow the grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('+'|'-') unary | power
    power  := atom ['^' ['-'] INT]
    atom   := INT | 'z' INT | '(' expr ')'
"""
import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .utils.error_handler import CoeffParseError, CycloError

N = 60
DEGREE = 16

# Phi_60(x) = x^16 + x^14 - x^10 - x^8 - x^6 + x^2 + 1, low degree first
PHI60: Tuple[int, ...] = (1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1)

UNITS: Tuple[int, ...] = tuple(k for k in range(1, N) if gcd(k, N) == 1)
DIVISORS: Tuple[int, ...] = tuple(n for n in range(1, N + 1) if N % n == 0)

Rational = Union[int, Fraction]


def _reduced_powers(count: int) -> List[List[Tuple[int, int]]]:
    """Sparse reductions of x^k modulo Phi_60 for 0 <= k < count."""
    table = []
    vec = [0] * DEGREE
    vec[0] = 1
    for _ in range(count):
        table.append([(j, c) for j, c in enumerate(vec) if c])
        top = vec[DEGREE - 1]
        vec = [0] + vec[:DEGREE - 1]
        if top:
            for j in range(DEGREE):
                vec[j] -= top * PHI60[j]
    return table


# products of two reduced elements reach degree 30; root exponents reach 59
_POWERS = _reduced_powers(2 * N)


class CycNum:
    """An immutable element of Q(z60)."""

    __slots__ = ('_c',)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        """
        Build an element from power-basis coefficients of any length.

        Args:
            coeffs (Iterable[Rational]): Coefficients of 1, x, x^2, ...; degrees >= 16 are reduced.
        """
        out = [Fraction(0)] * DEGREE
        for d, c in enumerate(coeffs):
            if not c:
                continue
            c = Fraction(c)
            if d < DEGREE:
                out[d] += c
            else:
                for j, t in _POWERS[d % N]:
                    out[j] += c * t
        self._c: Tuple[Fraction, ...] = tuple(out)

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> 'CycNum':
        obj = cls.__new__(cls)
        obj._c = tuple(coeffs)
        return obj

    @classmethod
    def rational(cls, q: Rational) -> 'CycNum':
        return cls._raw((Fraction(q),) + (Fraction(0),) * (DEGREE - 1))

    @classmethod
    def zeta60(cls, k: int) -> 'CycNum':
        out = [Fraction(0)] * DEGREE
        for j, t in _POWERS[k % N]:
            out[j] += t
        return cls._raw(out)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._c

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CycloError(f"{self} is not rational", error_code="NOT_RATIONAL")
        return self._c[0]

    def is_zero(self) -> bool:
        return not any(self._c)

    def _nonzero(self) -> List[Tuple[int, Fraction]]:
        return [(j, c) for j, c in enumerate(self._c) if c]

    @staticmethod
    def _coerce(other) -> Optional['CycNum']:
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum._raw([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self) -> 'CycNum':
        return CycNum._raw([-a for a in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum._raw([a - b for a, b in zip(self._c, other._c)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        left, right = self._nonzero(), other._nonzero()
        if not left or not right:
            return ZERO
        if len(left) == 1 and left[0][0] == 0:
            q = left[0][1]
            return CycNum._raw([q * b for b in other._c])
        if len(right) == 1 and right[0][0] == 0:
            q = right[0][1]
            return CycNum._raw([a * q for a in self._c])
        acc: Dict[int, Fraction] = {}
        for i, a in left:
            for j, b in right:
                acc[i + j] = acc.get(i + j, 0) + a * b
        out = [Fraction(0)] * DEGREE
        for d, c in acc.items():
            if not c:
                continue
            if d < DEGREE:
                out[d] += c
            else:
                for j, t in _POWERS[d]:
                    out[j] += c * t
        return CycNum._raw(out)

    __rmul__ = __mul__

    def galois(self, k: int) -> 'CycNum':
        """
        Apply the field automorphism x -> x^k.

        Args:
            k (int): An exponent prime to 60.

        Returns:
            CycNum: The image of this element.
        """
        if gcd(k, N) != 1:
            raise CycloError(f"x -> x^{k} is not an automorphism of Q(z60)", error_code="BAD_GALOIS")
        out = [Fraction(0)] * DEGREE
        for d, c in self._nonzero():
            for j, t in _POWERS[(d * k) % N]:
                out[j] += c * t
        return CycNum._raw(out)

    def conj(self) -> 'CycNum':
        """Complex conjugation, the automorphism x -> x^-1."""
        return self.galois(N - 1)

    def inv(self) -> 'CycNum':
        """
        Multiplicative inverse via the product of the nontrivial Galois conjugates.

        Raises:
            CycloError: If the element is zero.
        """
        if self.is_zero():
            raise CycloError("Inversion of zero in Q(z60)", error_code="DIVISION_BY_ZERO")
        if self.is_rational():
            return CycNum.rational(1 / self._c[0])
        cofactor = ONE
        for k in UNITS[1:]:
            cofactor = cofactor * self.galois(k)
        norm = (self * cofactor).to_fraction()
        return cofactor / norm

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            q = other._c[0]
            if not q:
                raise CycloError("Inversion of zero in Q(z60)", error_code="DIVISION_BY_ZERO")
            return CycNum._raw([a / q for a in self._c])
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int) -> 'CycNum':
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self._c[0])
        return hash(self._c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def root_order(self) -> Optional[int]:
        """
        Return n when this element is a primitive n-th root of unity, else None.
        """
        for m in range(N):
            if self._c == _ROOTS[m]._c:
                return N // gcd(m, N)
        return None

    def is_root_of_unity(self) -> bool:
        return self.root_order() is not None

    def sort_key(self) -> Tuple:
        """Rationals first, then by descending power-basis coefficients."""
        return (0 if self.is_rational() else 1,) + tuple(-c for c in self._c)

    def __repr__(self) -> str:
        return f"CycNum({format_coeff(self)!r})"

    def __str__(self) -> str:
        return format_coeff(self)


ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)
_ROOTS: List[CycNum] = [CycNum.zeta60(m) for m in range(N)]


def root_of_unity(n: int, k: int) -> CycNum:
    """
    Return z_n^k inside Q(z60).

    Args:
        n (int): The root order, a divisor of 60.
        k (int): The exponent; any integer.

    Returns:
        CycNum: z60^((60/n)*k mod 60).

    Raises:
        CycloError: If n does not divide 60.
    """
    if n <= 0 or N % n:
        raise CycloError(f"Root order {n} does not divide {N}", error_code="BAD_ROOT_ORDER",
                         details={'n': n})
    return _ROOTS[((N // n) * k) % N]


def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _root_name(n: int, k: int) -> str:
    return f"z{n}" if k == 1 else f"z{n}^{k}"


# scalar-multiple patterns tried by the printer, smallest order first
_NAMED_ROOTS: List[Tuple[int, int, CycNum]] = [
    (n, k, root_of_unity(n, k))
    for n in DIVISORS if n > 2
    for k in range(1, n) if gcd(k, n) == 1
]


def _scaled(term: str, scale: Fraction) -> str:
    if scale == 1:
        return term
    if scale == -1:
        return "-" + term
    return f"{_format_fraction(scale)}*{term}"


def format_coeff(value: CycNum) -> str:
    """
    Canonical printer for the coefficient grammar.

    Rationals print as ``-3`` or ``1/2``; scalar multiples of a root of unity print as
    ``-1/2*z3^2`` using the smallest root order; anything else prints as a power-basis sum
    in ``z60``.
    """
    if value.is_rational():
        return _format_fraction(value.coeffs[0])
    lead = next(j for j, c in enumerate(value.coeffs) if c)
    for n, k, root in _NAMED_ROOTS:
        pivot = root.coeffs[lead]
        if not pivot:
            continue
        scale = value.coeffs[lead] / pivot
        if root * scale == value:
            return _scaled(_root_name(n, k), scale)
    parts = []
    for j, c in enumerate(value.coeffs):
        if not c:
            continue
        term = _format_fraction(abs(c)) if j == 0 else _scaled(_root_name(N, j), abs(c))
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<root>z\d+)|(?P<op>[-+*/^()]))")


class _CoeffParser:
    """Recursive-descent parser over the tokens of one coefficient expression."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                while stripped[pos].isspace():
                    pos += 1
                raise CoeffParseError(f"Unexpected character {stripped[pos]!r}", expr=text, position=pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.index = 0

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _position(self) -> int:
        tok = self._peek()
        return tok[2] if tok else len(self.text.rstrip())

    def _error(self, message: str) -> CoeffParseError:
        return CoeffParseError(message, expr=self.text, position=self._position())

    def _accept(self, op: str) -> bool:
        tok = self._peek()
        if tok and tok[0] == 'op' and tok[1] == op:
            self.index += 1
            return True
        return False

    def parse(self) -> CycNum:
        if not self.tokens:
            raise self._error("Empty coefficient expression")
        value = self._expr()
        if self._peek() is not None:
            raise self._error(f"Unexpected token {self._peek()[1]!r}")
        return value

    def _expr(self) -> CycNum:
        if self._accept('-'):
            value = -self._term()
        else:
            self._accept('+')
            value = self._term()
        while True:
            if self._accept('+'):
                value = value + self._term()
            elif self._accept('-'):
                value = value - self._term()
            else:
                return value

    def _term(self) -> CycNum:
        value = self._unary()
        while True:
            if self._accept('*'):
                value = value * self._unary()
            elif self._accept('/'):
                pos = self._position()
                divisor = self._unary()
                if divisor.is_zero():
                    raise CoeffParseError("Division by zero", expr=self.text, position=pos)
                value = value / divisor
            else:
                return value

    def _unary(self) -> CycNum:
        if self._accept('-'):
            return -self._unary()
        if self._accept('+'):
            return self._unary()
        return self._power()

    def _power(self) -> CycNum:
        base = self._atom()
        if not self._accept('^'):
            return base
        negative = self._accept('-')
        tok = self._peek()
        if not tok or tok[0] != 'int':
            raise self._error("Expected an integer exponent")
        self.index += 1
        k = int(tok[1])
        if negative and base.is_zero():
            raise CoeffParseError("Negative power of zero", expr=self.text, position=tok[2])
        return base ** (-k if negative else k)

    def _atom(self) -> CycNum:
        tok = self._peek()
        if tok is None:
            raise self._error("Unexpected end of expression")
        kind, text, pos = tok
        if kind == 'int':
            self.index += 1
            return CycNum.rational(int(text))
        if kind == 'root':
            self.index += 1
            n = int(text[1:])
            if n == 0 or N % n:
                raise CoeffParseError(f"Root order {n} does not divide {N}", expr=self.text,
                                      position=pos, error_code="BAD_ROOT_ORDER")
            return root_of_unity(n, 1)
        if self._accept('('):
            value = self._expr()
            if not self._accept(')'):
                raise self._error("Expected ')'")
            return value
        raise self._error(f"Unexpected token {text!r}")


def parse_coeff(expr: Union[str, int]) -> CycNum:
    """
    Parse a coefficient expression such as ``-z4``, ``1/2*(1+z2)`` or ``z3^2``.

    Args:
        expr (Union[str, int]): The expression; plain integers are accepted as a convenience.

    Returns:
        CycNum: The exact value.

    Raises:
        CoeffParseError: On a syntax error or a root order not dividing 60.
    """
    if isinstance(expr, int):
        return CycNum.rational(expr)
    if not isinstance(expr, str):
        raise CoeffParseError(f"Coefficient must be a string, got {type(expr).__name__}", expr=str(expr))
    return _CoeffParser(expr).parse()


def as_cyc(value: Union[CycNum, Rational, str]) -> CycNum:
    if isinstance(value, CycNum):
        return value
    if isinstance(value, str):
        return parse_coeff(value)
    return CycNum.rational(value)


# exact matrices over Q(z60) as numpy object arrays

def cyc_matrix(rows: Sequence[Sequence[Union[CycNum, Rational, str]]]) -> np.ndarray:
    """Build an object array of CycNum from nested rows of numbers or expressions."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    out = np.empty((n, m), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != m:
            raise CycloError("Ragged matrix rows", error_code="BAD_SHAPE")
        for j, x in enumerate(row):
            out[i, j] = as_cyc(x)
    return out


def zero_matrix(n: int, m: Optional[int] = None) -> np.ndarray:
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out[:, :] = ZERO
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = zero_matrix(n)
    for i in range(n):
        out[i, i] = ONE
    return out


def conj_transpose(a: np.ndarray) -> np.ndarray:
    out = np.empty((a.shape[1], a.shape[0]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[j, i] = a[i, j].conj()
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product; zero entries are skipped."""
    if a.shape[1] != b.shape[0]:
        raise CycloError(f"Shape mismatch {a.shape} x {b.shape}", error_code="BAD_SHAPE")
    out = zero_matrix(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        row = [(k, a[i, k]) for k in range(a.shape[1]) if not a[i, k].is_zero()]
        for j in range(b.shape[1]):
            acc = ZERO
            for k, x in row:
                y = b[k, j]
                if not y.is_zero():
                    acc = acc + x * y
            out[i, j] = acc
    return out


def matvec(a: np.ndarray, v: Sequence[CycNum]) -> List[CycNum]:
    out = []
    for i in range(a.shape[0]):
        acc = ZERO
        for j, y in enumerate(v):
            if not y.is_zero() and not a[i, j].is_zero():
                acc = acc + a[i, j] * y
        out.append(acc)
    return out


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(a[i, j] == b[i, j] for i in range(a.shape[0]) for j in range(a.shape[1]))


def inverse_matrix(x: np.ndarray) -> np.ndarray:
    """
    Gauss-Jordan inverse over Q(z60).

    Raises:
        CycloError: If the matrix is not square or not invertible.
    """
    if not ((len(x.shape) == 2) and (x.shape[0] == x.shape[1])):
        raise CycloError(f"matrix is not square (shape = {x.shape})", error_code="BAD_SHAPE")

    n = x.shape[0]
    x = x.copy()
    y = identity_matrix(n)

    for i in range(n):
        for j in range(i, n):
            if not x[j, i].is_zero():
                if i != j:
                    rows_ij = slice(i, j + 1, j - i)
                    x[rows_ij] = np.flipud(x[rows_ij])
                    y[rows_ij] = np.flipud(y[rows_ij])
                break
        else:
            raise CycloError("matrix is not invertible.", error_code="SINGULAR")

        pivot_inv = x[i, i].inv()
        y[i, :] = [v * pivot_inv for v in y[i, :]]
        x[i, :] = [v * pivot_inv for v in x[i, :]]

        for j in range(i + 1, n):
            factor = x[j, i]
            if factor.is_zero():
                continue
            y[j, :] = [a - factor * b for a, b in zip(y[j, :], y[i, :])]
            x[j, :] = [a - factor * b for a, b in zip(x[j, :], x[i, :])]

    for j in range(n - 2, -1, -1):
        for i in range(j + 1, n):
            factor = x[j, i]
            if factor.is_zero():
                continue
            y[j, :] = [a - factor * b for a, b in zip(y[j, :], y[i, :])]
            x[j, :] = [a - factor * b for a, b in zip(x[j, :], x[i, :])]

    return y


def _echelon(rows: List[List[CycNum]]) -> Tuple[int, CycNum]:
    """Row-reduce in place; return (rank, determinant factor of the square part)."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    det = ONE
    rank = 0
    for col in range(m):
        pivot = next((r for r in range(rank, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            det = ZERO
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            det = -det
        p = rows[rank][col]
        det = det * p
        p_inv = p.inv()
        for r in range(rank + 1, n):
            factor = rows[r][col] * p_inv
            if not factor.is_zero():
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == n:
            break
    return rank, det


def determinant(a: np.ndarray) -> CycNum:
    if a.shape[0] != a.shape[1]:
        raise CycloError(f"matrix is not square (shape = {a.shape})", error_code="BAD_SHAPE")
    if a.shape[0] == 0:
        return ONE
    rows = [list(a[i, :]) for i in range(a.shape[0])]
    rank, det = _echelon(rows)
    return det if rank == a.shape[0] else ZERO


def rank(a: np.ndarray) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    rows = [list(a[i, :]) for i in range(a.shape[0])]
    return _echelon(rows)[0]
