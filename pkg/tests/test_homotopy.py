import random

import pytest

from dtilt import homotopy as ho
from dtilt.algebra import line_algebra, star_algebra
from dtilt.linalg import GF


def two_term(alg, i, j, el, degree=0):
    """(P_i -> P_j) with P_i placed in the given degree."""
    return ho.make_complex(alg, degree, [(i,), (j,)], [[[el]]])


def arrow_path(alg, *names):
    el = alg.unit(0)
    el = {(): alg.field.one}
    for nm in names:
        el = alg.compose(el, alg.arrow_element(nm))
    return el


def test_shift_round_trip():
    alg = star_algebra(5)
    x = two_term(alg, 1, 5, alg.arrow_element("a1_5"))
    assert ho.shift(x, 0).key() == x.key()
    assert ho.shift(ho.shift(x, 1), -1).key() == x.key()
    assert ho.shift(x, 1).lo == x.lo - 1
    y = ho.shift(x, 1)
    assert y.diffs[0][0][0] == {p: -c for p, c in x.diffs[0][0][0].items()}


def test_stalk_hom_is_cartan():
    alg = star_algebra(5)
    cart = alg.cartan()
    for i in alg.vertices:
        for j in alg.vertices:
            d = ho.hom_dim(ho.stalk(alg, i), ho.stalk(alg, j))
            assert d == cart[i - 1][j - 1]
            for n in (-1, 1, 2):
                assert ho.hom_dim(ho.stalk(alg, i), ho.stalk(alg, j), n) == 0


def test_cone_of_zero_and_identity():
    alg = star_algebra(4)
    x = two_term(alg, 1, 4, alg.arrow_element("a1_4"))
    f = ho.ChainMap(x, ho.zero_complex(alg), {})
    assert ho.cone(f).key() == ho.shift(x, 1).key()
    ident = ho.ChainMap(x, x, {n: ho.identity_matrix_over(alg, x.layer(n)) for n in x.degrees()})
    assert ho.reduce(ho.cone(ident)).is_zero()


def test_reduce_drops_padded_square():
    alg = star_algebra(5)
    x = two_term(alg, 1, 5, alg.arrow_element("a1_5"))
    pad = ho.cone(
        ho.ChainMap(
            ho.stalk(alg, 3),
            ho.stalk(alg, 3),
            {0: ho.identity_matrix_over(alg, (3,))},
        )
    )
    noisy = ho.direct_sum([x, pad])
    red = ho.reduce(noisy)
    assert red.key() == x.key()
    assert ho.is_isomorphic(noisy, x).ok


def test_reduce_noop_on_radical_complex():
    alg = star_algebra(6)
    i = 5
    soc = {alg.soc(i - 1): alg.field.one}
    x = ho.make_complex(
        alg,
        -2,
        [(i,), (i - 1,), (i - 1,)],
        [[[alg.arrow_element(f"a{i}_{i-1}")]], [[soc]]],
    )
    assert ho.reduce(x).key() == x.key()


def test_case_two_dimension_drop():
    # mutation of the first sheet summand: (P_1 -> P_m)[1]
    for m in (4, 5, 6):
        alg = star_algebra(m)
        cart = alg.cartan()
        p1 = two_term(alg, 1, m, alg.arrow_element(f"a1_{m}"), degree=-1)
        assert ho.hom_dim(p1, p1) == 2
        for t in range(2, m + 1):
            stalk_t = ho.stalk(alg, t)
            for n in (-2, -1, 1, 2):
                assert ho.hom_dim(p1, stalk_t, n) == 0
            expect = cart[m - 1][t - 1] - cart[0][t - 1]
            assert ho.hom_dim(p1, stalk_t) == expect
            assert ho.happel_dim(p1, stalk_t) == expect


def test_happel_matches_hom_on_stalks():
    alg = line_algebra(5)
    cart = alg.cartan()
    for i in alg.vertices:
        for j in alg.vertices:
            assert (
                ho.happel_dim(ho.stalk(alg, i), ho.stalk(alg, j))
                == cart[i - 1][j - 1]
            )


def test_happel_is_alternating_hom_sum():
    alg = star_algebra(4)
    p1 = two_term(alg, 1, 4, alg.arrow_element("a1_4"), degree=-1)
    for t in alg.vertices:
        y = ho.stalk(alg, t)
        total = 0
        for n in range(p1.lo - y.hi - 2, p1.hi - y.lo + 3):
            total += (-1) ** (n % 2) * ho.hom_dim(p1, y, n)
        assert ho.happel_dim(p1, y) == total


def test_iso_reflexive_symmetric_and_sign_twist():
    alg = star_algebra(5)
    x = two_term(alg, 1, 5, alg.arrow_element("a1_5"))
    y = two_term(alg, 1, 5, alg.neg(alg.arrow_element("a1_5")))
    assert ho.is_isomorphic(x, x).ok
    r = ho.is_isomorphic(x, y)
    assert r.ok and not ho.validate_chain_map(r.chain_map)
    assert ho.is_isomorphic(y, x).ok
    z = two_term(alg, 3, 5, alg.reduce_path(("a3_1", "a1_5")))
    bad = ho.is_isomorphic(x, z)
    assert not bad.ok and "labels differ" in bad.witness


def test_iso_rejects_parallel_but_different_maps():
    # (P_2 -> P_3) vs (P_1 -> P_3): label multisets differ
    alg = line_algebra(5)
    x = two_term(alg, 2, 3, alg.arrow_element("a2_3"))
    y = two_term(alg, 1, 3, alg.arrow_element("a1_3"))
    assert not ho.is_isomorphic(x, y).ok


def test_iso_distinguishes_socle_twist():
    # (P_i -> P_i soc plus id) is contractible, the socle alone is not
    alg = star_algebra(4)
    i = 3
    soc = {alg.soc(i): alg.field.one}
    x = two_term(alg, i, i, soc)
    unit_plus = two_term(alg, i, i, alg.add({(): alg.field.one}, soc))
    assert ho.reduce(unit_plus).is_zero()
    assert not ho.is_isomorphic(x, unit_plus).ok


def test_tilting_checks():
    alg = star_algebra(5)
    stalks = [ho.stalk(alg, i) for i in alg.vertices]
    assert ho.is_tilting(stalks)
    broken = stalks[:4] + [ho.shift(stalks[0], 1)]
    assert not ho.is_tilting(broken)
    doubled = stalks[:4] + [stalks[0]]
    assert not ho.is_tilting(doubled)


def test_reduce_preserves_hom_dims():
    alg = star_algebra(5)
    rng = random.Random(3)
    x = two_term(alg, 1, 5, alg.arrow_element("a1_5"))
    pad = ho.cone(
        ho.ChainMap(
            ho.stalk(alg, 4),
            ho.stalk(alg, 4),
            {0: ho.identity_matrix_over(alg, (4,))},
        )
    )
    noisy = ho.direct_sum([x, ho.shift(pad, rng.randrange(-1, 2))])
    red = ho.reduce(noisy)
    for t in alg.vertices:
        for n in (-1, 0, 1):
            assert ho.hom_dim(noisy, ho.stalk(alg, t), n) == ho.hom_dim(
                red, ho.stalk(alg, t), n
            )
            assert ho.hom_dim(ho.stalk(alg, t), noisy, n) == ho.hom_dim(
                ho.stalk(alg, t), red, n
            )


def test_cone_hom_inequality():
    alg = star_algebra(4)
    x = ho.stalk(alg, 1)
    y = ho.stalk(alg, 4)
    f = ho.ChainMap(x, y, {0: [[alg.arrow_element("a1_4")]]})
    c = ho.cone(f)
    for t in alg.vertices:
        z = ho.stalk(alg, t)
        lhs = ho.hom_dim(c, z)
        rhs = ho.hom_dim(ho.shift(x, 1), z) + ho.hom_dim(y, z)
        assert lhs <= rhs


def test_gf_field_agrees_on_hom_dims():
    alg_q = star_algebra(5)
    alg_p = star_algebra(5, GF(32003))
    xq = two_term(alg_q, 1, 5, alg_q.arrow_element("a1_5"), degree=-1)
    xp = two_term(alg_p, 1, 5, alg_p.arrow_element("a1_5"), degree=-1)
    for t in alg_q.vertices:
        assert ho.hom_dim(xq, ho.stalk(alg_q, t)) == ho.hom_dim(
            xp, ho.stalk(alg_p, t)
        )


def test_text_format_round_trip():
    alg = star_algebra(5)
    soc = {alg.soc(4): alg.field.one}
    x = ho.make_complex(
        alg,
        -1,
        [(5,), (4,), (4,)],
        [[[alg.arrow_element("a5_4")]], [[soc]]],
    )
    text = ho.format_complex(x)
    back = ho.parse_complex(alg, text)
    assert back.key() == x.key()
    assert ho.parse_complex(alg, "zero\n").is_zero()


def test_invalid_chain_map_rejected():
    alg = star_algebra(4)
    x = two_term(alg, 1, 4, alg.arrow_element("a1_4"))
    # identity in degree 0 with zero in degree 1 does not commute with d
    bad = ho.ChainMap(x, x, {0: [[{(): alg.field.one}]]})
    assert ho.validate_chain_map(bad)
    with pytest.raises(ValueError):
        ho.cone(bad)
