"""Exact linear algebra over the rationals and odd prime fields.

Matrices are plain lists of rows; a row is a list of field elements.  The
rational field stores Fraction values, a prime field stores ints reduced
modulo p.  Everything is naive Gaussian elimination, which is enough for
the matrix sizes that arise in this package.
"""

from __future__ import annotations

import functools
from fractions import Fraction


class Rationals:
    """Field of rational numbers, elements are Fraction values."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """GF(p) for an odd prime p, elements are ints in range(p)."""

    char: int

    def __init__(self, p: int):
        if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.char = p
        self.zero = 0
        self.one = 1

    def of(self, n: int) -> int:
        return n % self.char

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return -a % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.char - 2, self.char)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("PrimeField", self.char))

    def __repr__(self) -> str:
        return f"GF({self.char})"


QQ = Rationals()


@functools.cache
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str):
    """Parse a field name: "rational" or "gfp:<p>"."""
    if spec == "rational":
        return QQ
    if spec.startswith("gfp:"):
        return GF(int(spec[4:]))
    raise ValueError(f"unknown field {spec!r}")


def zeros(field, rows: int, cols: int):
    return [[field.zero] * cols for _ in range(rows)]


def identity_matrix(field, n: int):
    mat = zeros(field, n, n)
    for i in range(n):
        mat[i][i] = field.one
    return mat


def transpose(mat):
    return [list(col) for col in zip(*mat)] if mat else []


def mat_add(field, a, b):
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(field, a, b):
    return [[field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(field, a):
    return [[field.neg(x) for x in row] for row in a]


def scalar_mul(field, c, a):
    return [[field.mul(c, x) for x in row] for row in a]


def mat_mul(field, a, b):
    if not a or not b:
        return [[] for _ in a]
    n = len(b)
    out = []
    for row in a:
        acc = [field.zero] * len(b[0])
        for k in range(n):
            x = row[k]
            if x == field.zero:
                continue
            bk = b[k]
            acc = [field.add(acc[j], field.mul(x, bk[j])) for j in range(len(acc))]
        out.append(acc)
    return out


def is_zero_matrix(mat) -> bool:
    return all(not any(row) for row in mat)


def rref(field, mat):
    """Row-reduce a copy of mat; return (reduced matrix, pivot column list)."""
    m = [list(row) for row in mat]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != field.zero), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != field.zero:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field, mat) -> int:
    return len(rref(field, mat)[1])


def null_space(field, mat):
    """Basis of {v : mat @ v = 0}, as a list of length-cols vectors."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(field, mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for r, p in enumerate(pivots):
            v[p] = field.neg(red[r][free])
        basis.append(v)
    return basis


def solve(field, mat, rhs):
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    if not mat:
        return None if any(rhs) else []
    cols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def inverse(field, mat):
    """Inverse matrix, or None if mat is singular."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        return None
    aug = [list(row) + ident for row, ident in zip(mat, identity_matrix(field, n))]
    red, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]
