import random

import pytest

import oracles
from dtilt import algebra, trees
from dtilt.algebra import (
    build_presentation,
    compute_basis,
    check_associativity,
    extract_presentation,
    EndoData,
    apply_automorphism,
    identity_automorphism,
    is_inner_diagonal,
    line_algebra,
    line_out_scaling_automorphism,
    sheet_in_scaling_automorphism,
    sheet_swap_automorphism,
    star_algebra,
    validate_automorphism,
)
from dtilt.linalg import GF, QQ
from dtilt.trees import Kind, line_tree, star_tree


def pair_dims(alg):
    return {
        (i, j): len(alg.hom_basis(i, j))
        for i in alg.vertices
        for j in alg.vertices
    }


@pytest.mark.parametrize("m", [4, 5, 6])
def test_star_matches_brute_force(m):
    alg = star_algebra(m)
    assert pair_dims(alg) == oracles.star_dims(m)
    assert alg.cartan() == oracles.star_cartan(m)
    assert alg.dim == m * m + m - 2


@pytest.mark.parametrize("m", [4, 5, 6])
def test_line_matches_brute_force(m):
    alg = line_algebra(m)
    assert pair_dims(alg) == oracles.line_dims(m)
    assert alg.cartan() == oracles.line_cartan(m)
    assert alg.dim == 4 * m - 2


@pytest.mark.parametrize("m", [7, 8])
def test_larger_closed_forms(m):
    assert star_algebra(m).cartan() == oracles.star_cartan(m)
    assert line_algebra(m).cartan() == oracles.line_cartan(m)


def test_hom_space_fixtures():
    alg = star_algebra(5)
    assert alg.hom_basis(3, 1) == [("a3_1",)]
    assert alg.hom_basis(1, 2) == []
    diag = alg.hom_basis(1, 1)
    assert diag[0] == () and len(diag) == 2
    # unique path 1 -> 3 walks the whole hub cycle
    assert alg.hom_basis(1, 3) == [("a1_5", "a5_4", "a4_3")]


def test_socle_is_annihilated():
    for alg in (star_algebra(5), line_algebra(6)):
        for i in alg.vertices:
            soc = {alg.soc(i): alg.field.one}
            for a in alg.presentation.arrows:
                if a.src == i:
                    assert alg.compose(soc, alg.arrow_element(a.name)) == {}
                if a.tgt == i:
                    assert alg.compose(alg.arrow_element(a.name), soc) == {}


def test_associativity_exhaustive_small():
    check_associativity(star_algebra(4))
    check_associativity(line_algebra(4))


def test_associativity_sampled():
    rng = random.Random(7)
    check_associativity(star_algebra(7), samples=4000, rng=rng)
    check_associativity(line_algebra(8), samples=4000, rng=rng)


def test_random_trees_invariants():
    rng = random.Random(23)
    for _ in range(12):
        m = rng.choice([5, 6, 7])
        t = trees.random_double_edge_tree(m, rng)
        alg = compute_basis(build_presentation(t))
        cart = alg.cartan()
        assert cart == [list(col) for col in zip(*cart)]
        for i in alg.vertices:
            alg.soc(i)  # raises unless 2-dimensional
        assert cart == oracles.common_vertex_cartan(t)
        check_associativity(alg, samples=300, rng=rng)


def test_prime_field_agrees():
    alg_q = star_algebra(5)
    alg_p = star_algebra(5, GF(32003))
    assert pair_dims(alg_q) == pair_dims(alg_p)
    assert alg_p.cartan() == oracles.star_cartan(5)


def test_bound_fixed_point():
    pres = build_presentation(star_tree(5))
    base = algebra._compute(pres, QQ, algebra._initial_bound(pres))
    wider = algebra._compute(pres, QQ, algebra._initial_bound(pres) + 2)
    assert pair_dims(base) == pair_dims(wider)


def test_single_edge_plain_tree():
    t = trees.make_tree(Kind.PLAIN, 1, [[1], [1]])
    alg = compute_basis(build_presentation(t))
    assert alg.dim == 2
    assert alg.soc(1) == ("a1_1",)


def test_two_edge_plain_tree():
    t = trees.make_tree(Kind.PLAIN, 2, [[1], [1, 2], [2]])
    alg = compute_basis(build_presentation(t))
    assert alg.dim == 6
    assert alg.cartan() == [[2, 1], [1, 2]]


def test_sheet_swap_is_involution():
    t = star_tree(5)
    alg = star_algebra(5)
    tau = sheet_swap_automorphism(alg, t)
    validate_automorphism(alg, tau)
    for (i, j), paths in alg.basis.items():
        for p in paths:
            el = {p: alg.field.one}
            twice = apply_automorphism(alg, tau, apply_automorphism(alg, tau, el))
            assert twice == el


def test_scaling_automorphism_inner_criterion():
    t = star_tree(6)
    alg = star_algebra(6)
    ident = identity_automorphism(alg)
    validate_automorphism(alg, ident)
    assert is_inner_diagonal(alg, ident)

    scaled = sheet_in_scaling_automorphism(alg, t, QQ.of(7))
    validate_automorphism(alg, scaled)
    assert not is_inner_diagonal(alg, scaled)
    assert is_inner_diagonal(alg, sheet_in_scaling_automorphism(alg, t, QQ.one))

    tau = sheet_swap_automorphism(alg, t)
    assert not is_inner_diagonal(alg, tau)


def test_conjugation_scalings_are_inner():
    alg = star_algebra(5)
    rng = random.Random(11)
    d = {v: QQ.of(rng.randrange(1, 9)) for v in alg.vertices}
    arr = tuple(
        (a.name, (d[a.src] / d[a.tgt], a.name))
        for a in alg.presentation.arrows
    )
    aut = algebra.AlgebraAutomorphism(tuple(alg.vertices), arr)
    validate_automorphism(alg, aut)
    assert is_inner_diagonal(alg, aut)


def test_line_scaling_inner_criterion():
    t = line_tree(5)
    alg = line_algebra(5)
    g = line_out_scaling_automorphism(alg, t, QQ.of(3))
    validate_automorphism(alg, g)
    assert not is_inner_diagonal(alg, g)
    assert is_inner_diagonal(alg, line_out_scaling_automorphism(alg, t, QQ.one))


def endo_data_from_algebra(alg):
    labels = tuple(alg.vertices)
    dims = {}
    units = {}
    table = {}
    for i in labels:
        for j in labels:
            dims[(i, j)] = len(alg.hom_basis(i, j))
    for i in labels:
        units[i] = alg.element_vector(i, i, alg.unit(i))
    for i in labels:
        for j in labels:
            for k in labels:
                bi, bj = alg.hom_basis(i, j), alg.hom_basis(j, k)
                if not bi or not bj:
                    continue
                block = []
                for p in bi:
                    row = []
                    for q in bj:
                        prod = alg.compose(
                            {p: alg.field.one}, {q: alg.field.one}
                        )
                        row.append(alg.element_vector(i, k, prod))
                    block.append(row)
                table[(i, j, k)] = block
    return EndoData(labels, dims, units, table, alg.field)


@pytest.mark.parametrize("make,m", [(star_algebra, 4), (line_algebra, 5)])
def test_extract_presentation_round_trip(make, m):
    alg = make(m)
    endo = endo_data_from_algebra(alg)
    pres = extract_presentation(endo)
    assert len(pres.arrows) == len(alg.presentation.arrows)
    back = compute_basis(pres, alg.field)
    assert back.cartan() == alg.cartan()
    assert back.dim == alg.dim
