import random
from fractions import Fraction

import pytest

from dtilt.linalg import (
    GF,
    QQ,
    identity_matrix,
    inverse,
    mat_mul,
    null_space,
    parse_field,
    rank,
    rref,
    solve,
)

FIELDS = [QQ, GF(5), GF(32003)]


@pytest.mark.parametrize("field", FIELDS)
def test_rref_idempotent_and_rank(field):
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        mat = [[field.of(rng.randrange(-4, 5)) for _ in range(cols)] for _ in range(rows)]
        red, pivots = rref(field, mat)
        again, pivots2 = rref(field, red)
        assert again == red and pivots2 == pivots
        assert rank(field, mat) == len(pivots)


@pytest.mark.parametrize("field", FIELDS)
def test_null_space_annihilates(field):
    rng = random.Random(11)
    for _ in range(25):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        mat = [[field.of(rng.randrange(-4, 5)) for _ in range(cols)] for _ in range(rows)]
        basis = null_space(field, mat)
        assert len(basis) == cols - rank(field, mat)
        for v in basis:
            image = mat_mul(field, mat, [[x] for x in v])
            assert all(not any(row) for row in image)


@pytest.mark.parametrize("field", FIELDS)
def test_solve_consistent_and_inconsistent(field):
    mat = [[field.of(1), field.of(2)], [field.of(2), field.of(4)]]
    assert solve(field, mat, [field.of(1), field.of(2)]) is not None
    assert solve(field, mat, [field.of(1), field.of(3)]) is None
    x = solve(field, mat, [field.of(3), field.of(6)])
    got = mat_mul(field, mat, [[v] for v in x])
    assert [row[0] for row in got] == [field.of(3), field.of(6)]


@pytest.mark.parametrize("field", FIELDS)
def test_inverse_roundtrip(field):
    rng = random.Random(13)
    found = 0
    while found < 10:
        n = rng.randrange(1, 5)
        mat = [[field.of(rng.randrange(-4, 5)) for _ in range(n)] for _ in range(n)]
        inv = inverse(field, mat)
        if inv is None:
            continue
        found += 1
        assert mat_mul(field, mat, inv) == identity_matrix(field, n)


def test_rationals_exact():
    mat = [[Fraction(1, 3), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert rank(QQ, mat) == 1
    assert len(null_space(QQ, mat)) == 1


def test_prime_field_rejects_non_prime_and_two():
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ValueError):
        GF(2)


def test_parse_field():
    assert parse_field("rational") is QQ
    assert parse_field("gfp:7") == GF(7)
    with pytest.raises(ValueError):
        parse_field("gfp:4")
