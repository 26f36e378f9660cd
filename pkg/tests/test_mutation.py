"""Mutation engine tests: approximations, fixtures, tree cross-validation."""

import random

import pytest

from dtilt import algebra, homotopy as ho, mutation, trees
from dtilt.linalg import QQ
from dtilt.standardseq import _shortest_path
from dtilt.trees import MutationWord


def star_state(m):
    return mutation.projective_tilting(algebra.star_algebra(m))


def stalks(alg):
    return [ho.stalk(alg, i) for i in alg.vertices]


def arrow(alg, name):
    return alg.arrow_element(name)


# ---------------------------------------------------------------------------
# approximations


def test_left_approx_targets_of_stalks():
    """The minimal left approximation of P_j lands on the arrow targets."""
    alg = algebra.star_algebra(5)
    parts = stalks(alg)
    expected = {1: (5,), 2: (5,), 3: (1, 2), 4: (3,), 5: (4,)}
    for j, tgts in expected.items():
        others = [s for s in parts if s.layer(0) != (j,)]
        f = mutation.minimal_left_approx(parts[j - 1], others)
        assert f.y.layer(0) == tgts, j


def test_right_approx_sources_of_stalks():
    alg = algebra.star_algebra(5)
    parts = stalks(alg)
    expected = {3: (4,), 4: (5,), 5: (1, 2), 1: (3,), 2: (3,)}
    for j, srcs in expected.items():
        others = [s for s in parts if s.layer(0) != (j,)]
        g = mutation.minimal_right_approx(others, parts[j - 1])
        assert g.x.layer(0) == srcs, j


def test_empty_parts_zero_approximation():
    """With nothing to approximate into, the cone is just the shift."""
    alg = algebra.star_algebra(4)
    x = ho.stalk(alg, 1)
    f = mutation.minimal_left_approx(x, [])
    assert f.y.is_zero()
    assert ho.is_isomorphic(ho.reduce(ho.cone(f)), ho.shift(x, 1)).ok


def test_duplicate_parts_rejected():
    # duplicated summands make every map factor through the twin copy,
    # so the certificate must refuse the collection
    alg = algebra.star_algebra(5)
    parts = stalks(alg)
    with pytest.raises(mutation.ApproximationError):
        mutation.minimal_left_approx(parts[3], [parts[2], parts[2]])


def test_non_tilting_collection_rejected():
    alg = algebra.star_algebra(5)
    parts = stalks(alg)
    bad = [parts[0], ho.shift(parts[0], 1)] + parts[2:]
    with pytest.raises(ValueError):
        mutation.TiltingComplex(bad, check=True)


# ---------------------------------------------------------------------------
# single mutations against closed forms


def test_case2_summand_shape():
    t = star_state(5)
    out = mutation.silt_mutate(t, 1, "+")
    alg = t.algebra
    want = ho.make_complex(alg, -1, [(1,), (5,)], [[[arrow(alg, "a1_5")]]])
    assert ho.is_isomorphic(out.summand(1), want).ok
    for k in (2, 3, 4, 5):
        assert ho.is_isomorphic(out.summand(k), ho.stalk(alg, k)).ok


def test_hub_summand_lands_on_both_sheets():
    t = star_state(5)
    out = mutation.silt_mutate(t, 3, "+")
    got = out.summand(3)
    assert got.lo == -1
    assert got.layer(-1) == (3,)
    assert sorted(got.layer(0)) == [1, 2]


def test_double_plus_gives_three_term_summand():
    """Applying the same plus-mutation twice stacks a socle map on top."""
    t = star_state(5)
    out = mutation.silt_mutate(mutation.silt_mutate(t, 4, "+"), 4, "+")
    alg = t.algebra
    soc = {alg.soc(3): alg.field.one}
    want = ho.make_complex(
        alg, -2, [(4,), (3,), (3,)], [[[arrow(alg, "a4_3")]], [[soc]]]
    )
    assert ho.is_isomorphic(out.summand(4), want).ok


@pytest.mark.parametrize("m", [4, 5])
def test_minus_inverts_plus(m):
    t = star_state(m)
    for j in (1, 3, m):
        fwd = mutation.silt_mutate(t, j, "+")
        back = mutation.silt_mutate(fwd, j, "-")
        for k in range(1, m + 1):
            assert ho.is_isomorphic(back.summand(k), t.summand(k)).ok, (j, k)


def test_plus_inverts_minus():
    t = star_state(5)
    back = mutation.silt_mutate(mutation.silt_mutate(t, 2, "-"), 2, "+")
    for k in range(1, 6):
        assert ho.is_isomorphic(back.summand(k), t.summand(k)).ok


def test_mutations_stay_tilting():
    rng = random.Random(2)
    t = star_state(5)
    for _ in range(6):
        j = rng.randrange(1, 6)
        d = rng.choice(["+", "-"])
        t = mutation.silt_mutate(t, j, d, verify=True)
    assert len(t.summands) == 5


# ---------------------------------------------------------------------------
# the line-to-star mutation word


def lemma1_word(m):
    steps = []
    for i in range(m, 3, -1):
        steps.extend([(i, -1)] * (i - 3))
    return MutationWord(tuple(steps))


@pytest.mark.parametrize("m", [4, 5])
def test_line_word_summand_shapes(m):
    """The canonical minus-word turns line projectives into ascending chains."""
    alg = algebra.line_algebra(m)
    t = mutation.apply_mutation_word(
        mutation.projective_tilting(alg), lemma1_word(m)
    )
    for i in (1, 2, 3):
        assert ho.is_isomorphic(t.summand(i), ho.stalk(alg, i)).ok
    for i in range(4, m + 1):
        labels = [(k,) for k in range(3, i + 1)]
        diffs = [[[_shortest_path(alg, k, k + 1)]] for k in range(3, i)]
        want = ho.make_complex(alg, 0, labels, diffs)
        assert ho.is_isomorphic(t.summand(i), want).ok, i


@pytest.mark.parametrize("m", [4, 5])
def test_line_word_endo_is_star_algebra(m):
    alg = algebra.line_algebra(m)
    t = mutation.apply_mutation_word(
        mutation.projective_tilting(alg), lemma1_word(m)
    )
    endo = mutation.endo_data(t.summands)
    b = algebra.compute_basis(algebra.extract_presentation(endo), QQ)
    star = algebra.star_algebra(m)
    assert b.cartan() == star.cartan()
    assert sum(len(v) for v in b.basis.values()) == m * m + m - 2


# ---------------------------------------------------------------------------
# endomorphism data round trips


def test_endo_round_trip_star():
    """endo_data of the projectives recovers the algebra itself."""
    alg = algebra.star_algebra(5)
    endo = mutation.endo_data(tuple(stalks(alg)))
    assert endo.dims == {
        (i, j): len(alg.hom_basis(i, j))
        for i in alg.vertices
        for j in alg.vertices
    }
    b = algebra.compute_basis(algebra.extract_presentation(endo), QQ)
    assert b.cartan() == alg.cartan()


def test_mu2_plus_endo_cartan():
    t = star_state(5)
    out = mutation.silt_mutate(t, 2, "+")
    alg = t.algebra
    want = ho.make_complex(alg, -1, [(2,), (5,)], [[[arrow(alg, "a2_5")]]])
    assert ho.is_isomorphic(out.summand(2), want).ok
    t2 = trees.mutate_tree(trees.star_tree(5), 2, "+")
    assert mutation.endo_cartan(out.summands) == mutation.tree_algebra(t2).cartan()


# ---------------------------------------------------------------------------
# tree cross-validation


def test_star5_case_ids():
    s = mutation.state_from_tree(trees.star_tree(5))
    got = [mutation.cross_validate(s, j).case_id for j in range(1, 6)]
    assert got == ["case 2", "case 2", "case 3", "case 1", "case 1"]


def test_triple_star_case_ids():
    t = trees.mutate_tree(trees.star_tree(5), 1, "+")
    s = mutation.state_from_tree(t)
    got = [mutation.cross_validate(s, j).case_id for j in range(1, 6)]
    assert got == ["case 5", "case 5", "case 6", "case 1", "case 4"]


def test_case4_on_triple_tree_with_following_tree():
    t = trees.mutate_tree(trees.star_tree(6), 1, "+")
    s = mutation.state_from_tree(t)
    ids = {j: mutation.cross_validate(s, j).case_id for j in range(1, 7)}
    assert "case 4" in ids.values()


def test_line6_sweep_clean():
    s = mutation.state_from_tree(trees.line_tree(6))
    for j in range(1, 7):
        rep = mutation.cross_validate(s, j)
        assert rep.case_id in {"case 1", "case 2", "case 3"}


def test_cross_validate_report_fields():
    s = mutation.state_from_tree(trees.star_tree(5))
    rep = mutation.cross_validate(s, 4)
    assert rep.tree_after == trees.mutate_tree(trees.star_tree(5), 4, "+")
    n = len(rep.cartan)
    assert all(rep.cartan[i][j] == rep.cartan[j][i] for i in range(n) for j in range(n))


def test_random_walk_cross_validates():
    """A seeded walk over tree space stays consistent with the category."""
    rng = random.Random(17)
    t = trees.star_tree(6)
    checked = 0
    while checked < 6:
        j = rng.randrange(1, 7)
        t2 = trees.mutate_tree(t, j, "+")
        if t2.kind is trees.Kind.PLAIN:
            continue
        s = mutation.state_from_tree(t)
        mutation.cross_validate(s, j)
        t = t2
        checked += 1
