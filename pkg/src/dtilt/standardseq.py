"""Depth levels of standardly labeled trees and their canonical move words.

For a standardly labeled tree the level of an edge is its edge distance to
the root (the inner end of the doubled edge, or the block's cycle vertex).
Replaying the canonical word built from the levels on the star tree
reproduces the tree together with its standard labeling; the closed-form
complexes of ``standard_complex`` are the categorical counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import trees
from .trees import DOUBLED, Kind, MutationWord, Tree


@dataclass(frozen=True)
class LevelData:
    """Per-block depth maps: blocks[k] = (root vertex, phi, psi)."""

    blocks: tuple[tuple[int, dict[int, int], dict[int, int]], ...]

    @property
    def phi(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, phi, _ in self.blocks:
            out.update(phi)
        return out

    @property
    def psi(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, _, psi in self.blocks:
            out.update(psi)
        return out


def _block_levels(t: Tree, root: int, root_edges: list[int], ends) -> tuple[dict, dict]:
    phi: dict[int, int] = {}
    psi: dict[int, int] = {}
    queue = [(e, root, 0, None) for e in root_edges]
    while queue:
        e, near, depth, parent = queue.pop()
        phi[e] = depth
        if parent is not None:
            psi[e] = parent
        far = next(u for u in ends[e] if u != near)
        for child in t.rotations[far]:
            if child != e:
                queue.append((child, far, depth + 1, e))
    return phi, psi


def _check_standard(t: Tree) -> None:
    p = trees.standard_labeling(t)
    if not p.is_identity():
        raise ValueError("tree is not standardly labeled")


def triple_block_roots(t: Tree) -> tuple[int, int, int]:
    """Roots of the three blocks of a standardly labeled 3-cycle tree,
    ordered so their blocks carry the label ranges [3, m1+2],
    [m1+3, m1+m2+2], [m1+m2+3, m-1]."""
    by_pair = {t.rotations[r][:2]: r for r in t.roots}
    try:
        return (by_pair[(t.m, 2)], by_pair[(2, 1)], by_pair[(1, t.m)])
    except KeyError:
        raise ValueError("cycle labels are not in standard position") from None


def _levels_unchecked(t: Tree) -> LevelData:
    ends = trees._edge_map(t.rotations)
    if t.kind is Kind.DOUBLE_EDGE:
        root, _ = trees.doubled_root(t)
        root_edges = [e for e in t.rotations[root] if e != DOUBLED]
        phi, psi = _block_levels(t, root, root_edges, ends)
        phi[t.double[0]] = phi[t.double[1]] = 0
        return LevelData(((root, phi, psi),))
    if t.kind is Kind.TRIPLE_TREE:
        blocks = []
        for root in triple_block_roots(t):
            root_edges = list(t.rotations[root][2:])
            phi, psi = _block_levels(t, root, root_edges, ends)
            blocks.append((root, phi, psi))
        return LevelData(tuple(blocks))
    raise ValueError("level functions need a doubled edge or a 3-cycle")


def _word_unchecked(t: Tree) -> MutationWord:
    levels = _levels_unchecked(t)
    if t.kind is Kind.DOUBLE_EDGE:
        phi = levels.phi
        steps = []
        for i in range(4, t.m + 1):
            steps.extend([(i, +1)] * phi.get(i, 0))
        return MutationWord(tuple(steps))
    m1 = len(levels.blocks[0][1])
    m2 = len(levels.blocks[1][1])
    steps = [(2, +1)]
    for i in range(3, m1 + 3):
        steps.extend([(i, +1)] * 2)
    for i in range(m1 + 3, m1 + m2 + 3):
        steps.append((i, +1))
    for _, phi, _ in levels.blocks:
        for i in sorted(phi):
            steps.extend([(i, +1)] * phi[i])
    return MutationWord(tuple(steps))


def level_functions(t: Tree) -> LevelData:
    """Depth and parent maps of a standardly labeled tree."""
    _check_standard(t)
    return _levels_unchecked(t)


def standard_sequence(t: Tree) -> MutationWord:
    """Canonical mutation word reproducing t from the star tree."""
    _check_standard(t)
    return _word_unchecked(t)


def _shortest_path(alg, src: int, tgt: int) -> dict:
    """Composite of the unique shortest arrow path src -> tgt.

    The closed-form summands below are written with composite arrows
    between distinct vertices; in the star quiver that composite is
    always the unique path of minimal length, and it must survive in
    the quotient.  Both facts are checked rather than assumed.
    """
    if src == tgt:
        raise ValueError("entry between equal labels is not a composite arrow")
    by_src: dict[int, list] = {}
    for a in alg.presentation.arrows:
        by_src.setdefault(a.src, []).append(a)
    frontier: list[tuple[tuple[str, ...], int]] = [((), src)]
    hits: list[tuple[str, ...]] = []
    for _ in range(len(alg.presentation.arrows) + 1):
        nxt = []
        for path, at in frontier:
            for a in by_src.get(at, []):
                p2 = path + (a.name,)
                if a.tgt == tgt:
                    hits.append(p2)
                else:
                    nxt.append((p2, a.tgt))
        if hits:
            break
        frontier = nxt
    if len(hits) != 1:
        raise AssertionError(
            f"need a unique shortest path {src} -> {tgt}, found {len(hits)}"
        )
    el = alg.reduce_path(hits[0])
    if not el:
        raise AssertionError(f"shortest path {src} -> {tgt} vanishes in the algebra")
    return el


def standard_complex(t: Tree, alg=None) -> list:
    """Closed-form summands of the standard tilting complex of t over the
    star algebra on the same number of edges, in label order.

    Replaying ``standard_sequence(t)`` on the star projectives yields the
    same complex summand by summand; this construction skips the replay.
    Edges at depth ``phi`` away from their block root contribute two-term
    complexes (P_i -> P_parent) shifted by the depth, plus a block offset
    for the two cycle blocks that sit homologically deeper.
    """
    _check_standard(t)
    from . import algebra as algebra_mod
    from . import homotopy as ho

    if alg is None:
        alg = algebra_mod.star_algebra(t.m)
    m = t.m
    levels = _levels_unchecked(t)

    def two_term(i: int, j: int, entry: dict, s: int):
        return ho.make_complex(alg, -s, [(i,), (j,)], [[[entry]]])

    if t.kind is Kind.DOUBLE_EDGE:
        phi, psi = levels.phi, levels.psi
        return [
            ho.stalk(alg, i)
            if phi.get(i, 0) == 0
            else two_term(i, psi[i], _shortest_path(alg, i, psi[i]), phi[i])
            for i in range(1, m + 1)
        ]

    (_, phi1, psi1), (_, phi2, psi2), (_, phi3, psi3) = levels.blocks
    delta = {k: alg.arrow_element(f"a{k}_{m}") for k in (1, 2)}
    out = []
    for i in range(1, m + 1):
        if i == 1 or i == m:
            out.append(ho.stalk(alg, i))
        elif i == 2:
            out.append(two_term(2, m, delta[2], 1))
        elif i in phi1:
            if phi1[i] == 0:
                # three-term summand; the sign on the first leg makes the
                # squares against the two equal sheet cycles cancel
                out.append(
                    ho.make_complex(
                        alg,
                        -2,
                        [(i,), (1, 2), (m,)],
                        [
                            [[alg.neg(_shortest_path(alg, i, 1)),
                              _shortest_path(alg, i, 2)]],
                            [[delta[1]], [delta[2]]],
                        ],
                    )
                )
            else:
                out.append(
                    two_term(i, psi1[i], _shortest_path(alg, i, psi1[i]), phi1[i] + 2)
                )
        elif i in phi2:
            if phi2[i] == 0:
                out.append(two_term(i, 1, _shortest_path(alg, i, 1), 1))
            else:
                out.append(
                    two_term(i, psi2[i], _shortest_path(alg, i, psi2[i]), phi2[i] + 1)
                )
        else:
            if phi3[i] == 0:
                out.append(ho.stalk(alg, i))
            else:
                out.append(
                    two_term(i, psi3[i], _shortest_path(alg, i, psi3[i]), phi3[i])
                )
    return out
