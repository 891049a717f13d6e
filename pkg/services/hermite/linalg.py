"""Exact symmetric matrices and division-free characteristic polynomials."""
from dataclasses import dataclass
from fractions import Fraction

from services.scalar import sign


def berkowitz(matrix, one):
    """Coefficients of det(lambda*I - M), highest degree first.

    Works over any commutative ring whose elements support +, - and *;
    `one` is the ring's unit.
    """
    n = len(matrix)
    vect = [one]
    for k in range(n - 1, -1, -1):
        a = matrix[k][k]
        row = matrix[k][k + 1:]
        col_vec = [matrix[i][k] for i in range(k + 1, n)]
        sub = [r[k + 1:] for r in matrix[k + 1:]]
        m = n - k
        toeplitz = [one, -a]
        v = col_vec
        for _ in range(2, m + 1):
            toeplitz.append(-_dot(row, v, one))
            v = [_dot(r, v, one) for r in sub]
        vect = [
            _sum((toeplitz[i - j] * vect[j] for j in range(min(i, m - 1) + 1)), one)
            for i in range(m + 1)
        ]
    return vect


def _sum(items, one):
    total = one - one
    for item in items:
        total = total + item
    return total


def _dot(a, b, one):
    return _sum((x * y for x, y in zip(a, b)), one)


def determinant(matrix, one):
    n = len(matrix)
    if n == 0:
        return one
    c0 = berkowitz(matrix, one)[-1]
    return c0 if n % 2 == 0 else -c0


def leading_minors(matrix, one):
    return [determinant([row[:k] for row in matrix[:k]], one) for k in range(1, len(matrix) + 1)]


def sign_variations(signs):
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def signature_rank_from_signs(signs):
    """(signature, rank) of a symmetric matrix from the signs of its charpoly coefficients.

    `signs` lists sign(c_n) ... sign(c_0), highest degree first; all roots are real,
    so Descartes' rule is exact on p(lambda) and p(-lambda).
    """
    n = len(signs) - 1
    trailing = 0
    for s in reversed(signs):
        if s:
            break
        trailing += 1
    positive = sign_variations(signs)
    alternated = [s if (n - i) % 2 == 0 else -s for i, s in enumerate(signs)]
    negative = sign_variations(alternated)
    return positive - negative, n - trailing


@dataclass(frozen=True)
class SymRatMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, 'entries', rows)
        for i, row in enumerate(rows):
            if len(row) != len(rows):
                raise ValueError('matrix is not square')
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise ValueError(f'matrix is not symmetric at ({i}, {j})')

    @property
    def dim(self):
        return len(self.entries)

    def charpoly(self):
        return berkowitz([list(r) for r in self.entries], Fraction(1))

    def determinant(self):
        return determinant([list(r) for r in self.entries], Fraction(1))

    def leading_minor_signs(self):
        return [sign(m) for m in leading_minors([list(r) for r in self.entries], Fraction(1))]

    def to_lists(self):
        return [[str(x) for x in row] for row in self.entries]


def signature_rank(matrix):
    """Exact (signature, rank) of a SymRatMatrix."""
    if matrix.dim == 0:
        return 0, 0
    return signature_rank_from_signs([sign(c) for c in matrix.charpoly()])
