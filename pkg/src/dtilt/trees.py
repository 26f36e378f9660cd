"""Plane trees with labeled edges and their slide moves.

A tree is stored as a rotation system: every vertex carries the clockwise
cyclic order of its incident edges.  Three kinds exist:

* PLAIN: an ordinary tree, one label per edge.
* DOUBLE_EDGE: one pendant edge is doubled and carries two labels; it
  appears in rotations as the sentinel token ``DOUBLED``.
* TRIPLE_TREE: three trees glued along a 3-cycle of labeled edges.  The
  cycle vertices are the roots; each root's rotation is normalized to start
  with its two cycle edges, ordered (edge to previous root, edge to next
  root) along the stored orientation of the cycle.

Labels are 1..m.  In a DOUBLE_EDGE tree the two labels of the doubled edge
live in the ``double`` field and never appear as rotation tokens.  Vertices
are 0..V-1.  All values are immutable; the slide moves return new trees.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

DOUBLED = 0


class Kind(str, enum.Enum):
    PLAIN = "plain"
    DOUBLE_EDGE = "double_edge"
    TRIPLE_TREE = "triple_tree"


@dataclass(frozen=True)
class Tree:
    kind: Kind
    m: int
    rotations: tuple[tuple[int, ...], ...]
    double: tuple[int, int] | None = None
    roots: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class Perm:
    """Bijection on labels 1..m, stored as an image tuple."""

    images: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, label: int) -> int:
        return self.images[label - 1]

    def after(self, other: "Perm") -> "Perm":
        """Composite permutation: first apply other, then self."""
        return Perm(tuple(self(other(i)) for i in range(1, self.m + 1)))

    def inv(self) -> "Perm":
        images = [0] * self.m
        for i, img in enumerate(self.images, start=1):
            images[img - 1] = i
        return Perm(tuple(images))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))


def identity_perm(m: int) -> Perm:
    return Perm(tuple(range(1, m + 1)))


def perm_from_map(m: int, mapping: dict[int, int]) -> Perm:
    return Perm(tuple(mapping.get(i, i) for i in range(1, m + 1)))


@dataclass(frozen=True)
class MutationWord:
    """Sequence of slide moves (label, direction) in application order."""

    steps: tuple[tuple[int, int], ...] = ()
    shift: int = 0

    def __mul__(self, other: "MutationWord") -> "MutationWord":
        """self * other applies other first, matching composition order."""
        return MutationWord(other.steps + self.steps, self.shift + other.shift)

    def inverse(self) -> "MutationWord":
        return MutationWord(
            tuple((j, -d) for j, d in reversed(self.steps)), -self.shift
        )

    def __str__(self) -> str:
        parts = [f"{j}{'+' if d > 0 else '-'}" for j, d in self.steps]
        if self.shift:
            parts.append(f"[{self.shift}]")
        return " ".join(parts) if parts else "(empty)"


def parse_mutation_word(text: str) -> MutationWord:
    steps = []
    shift = 0
    for token in text.split():
        if token == "(empty)":
            continue
        if token.startswith("["):
            shift += int(token.strip("[]"))
            continue
        if token[-1] not in "+-":
            raise ValueError(f"bad mutation token {token!r}")
        steps.append((int(token[:-1]), 1 if token[-1] == "+" else -1))
    return MutationWord(tuple(steps), shift)


# ---------------------------------------------------------------------------
# construction and validation


def _rotate_min(rot: Sequence[int]) -> tuple[int, ...]:
    rot = tuple(rot)
    if len(rot) <= 1:
        return rot
    best = min(range(len(rot)), key=lambda i: rot[i:] + rot[:i])
    return rot[best:] + rot[:best]


def _edge_map(rotations: Sequence[Sequence[int]]) -> dict[int, tuple[int, ...]]:
    """Token -> tuple of vertices where it occurs (with repetition)."""
    ends: dict[int, list[int]] = {}
    for v, rot in enumerate(rotations):
        for tok in rot:
            ends.setdefault(tok, []).append(v)
    return {tok: tuple(vs) for tok, vs in ends.items()}


def _strip_leaves(adj: dict[int, set[int]]) -> set[int]:
    """Vertices left after repeatedly deleting degree<=1 vertices."""
    deg = {v: len(ns) for v, ns in adj.items()}
    queue = [v for v, d in deg.items() if d <= 1]
    alive = set(adj)
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    return alive


def _derive_triple(rot_lists: Sequence[Sequence[int]]):
    """Find the 3-cycle and its orientation from rotations alone.

    Returns (roots oriented cycle, {root: (prev edge, next edge)}) or an
    error string.
    """
    ends = _edge_map(rot_lists)
    adj: dict[int, set[int]] = {v: set() for v in range(len(rot_lists))}
    for tok, vs in ends.items():
        if len(vs) != 2 or vs[0] == vs[1]:
            return f"edge {tok} does not join two distinct vertices"
        adj[vs[0]].add(vs[1])
        adj[vs[1]].add(vs[0])
    cycle = _strip_leaves(adj)
    if len(cycle) != 3:
        return f"expected a single 3-cycle, found {len(cycle)} cycle vertices"
    cyc = sorted(cycle)
    cycle_edges = {
        tok: vs for tok, vs in ends.items() if vs[0] in cycle and vs[1] in cycle
    }
    if len(cycle_edges) != 3:
        return "cycle vertices not joined by exactly three edges"
    # orient from a root of degree >= 3: its two cycle edges must be
    # clockwise-consecutive, read (to previous root, to next root)
    anchor = next((v for v in cyc if len(rot_lists[v]) >= 3), None)
    if anchor is None:
        return "no root of degree >= 3 to orient the cycle"
    orientation = None
    for v in cyc:
        rot = list(rot_lists[v])
        if len(rot) < 3:
            continue
        incident = [tok for tok in rot if tok in cycle_edges]
        if len(incident) != 2:
            return f"root {v} does not carry exactly two cycle edges"
        n = len(rot)
        consec = [
            (rot[i], rot[(i + 1) % n])
            for i in range(n)
            if rot[i] in cycle_edges and rot[(i + 1) % n] in cycle_edges
        ]
        if len(consec) != 1:
            return f"cycle edges not consecutive in rotation of root {v}"
        prev_e, next_e = consec[0]
        nxt = next(w for w in ends[next_e] if w != v)
        if orientation is None:
            orientation = {v: (prev_e, next_e)}
            start = v
            cur, cur_in = nxt, next_e
            while cur != start:
                others = [
                    tok
                    for tok, vs in cycle_edges.items()
                    if cur in vs and tok != cur_in
                ]
                out = others[0]
                orientation[cur] = (cur_in, out)
                cur_in = out
                cur = next(w for w in ends[out] if w != cur)
        elif orientation.get(v) != (prev_e, next_e):
            return "inconsistent cycle orientation between roots"
    order = [min(cyc)]
    while len(order) < 3:
        out = orientation[order[-1]][1]
        order.append(next(w for w in ends[out] if w != order[-1]))
    return tuple(order), orientation


def _normalize(kind, m, rot_lists, double, roots_hint=None):
    rotations = []
    derived = None
    if kind is Kind.TRIPLE_TREE:
        derived = _derive_triple(rot_lists)
        if isinstance(derived, str):
            raise ValueError(derived)
        roots, orientation = derived
    else:
        roots, orientation = None, {}
    for v, rot in enumerate(rot_lists):
        rot = tuple(rot)
        if orientation and v in orientation:
            prev_e = orientation[v][0]
            i = rot.index(prev_e)
            rot = rot[i:] + rot[:i]
        else:
            rot = _rotate_min(rot)
        rotations.append(rot)
    return Tree(
        kind,
        m,
        tuple(rotations),
        tuple(sorted(double)) if double else None,
        roots,
    )


def make_tree(kind, m, rot_lists, double=None, roots=None) -> Tree:
    kind = Kind(kind)
    t = _normalize(kind, m, rot_lists, double, roots)
    problems = validate_tree(t)
    if problems:
        raise ValueError("; ".join(problems))
    return t


def validate_tree(t: Tree) -> list[str]:
    """All violated structural invariants, empty when the tree is valid."""
    probs: list[str] = []
    v_count = len(t.rotations)
    ends = _edge_map(t.rotations)
    tokens = set(ends)
    if t.kind is Kind.DOUBLE_EDGE:
        if not t.double or len(set(t.double)) != 2:
            return ["double edge labels missing or not a pair"]
        expected_tokens = set(range(1, t.m + 1)) - set(t.double) | {DOUBLED}
        expected_vertices = t.m
    elif t.kind is Kind.TRIPLE_TREE:
        if t.double is not None:
            probs.append("triple tree carries double-edge labels")
        expected_tokens = set(range(1, t.m + 1))
        expected_vertices = t.m
    else:
        if t.double is not None or t.roots is not None:
            probs.append("plain tree carries double or triple data")
        expected_tokens = set(range(1, t.m + 1))
        expected_vertices = t.m + 1
    if tokens != expected_tokens:
        probs.append("labels not bijective onto the expected token set")
        return probs
    if v_count != expected_vertices:
        probs.append(f"expected {expected_vertices} vertices, found {v_count}")
    for tok, vs in ends.items():
        if len(vs) != 2:
            probs.append(f"edge {tok} occurs {len(vs)} times in rotations")
        elif vs[0] == vs[1]:
            probs.append(f"edge {tok} is a loop at vertex {vs[0]}")
    if probs:
        return probs
    # connectivity
    adj: dict[int, set[int]] = {v: set() for v in range(v_count)}
    for a, b in ends.values():
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != v_count:
        probs.append("underlying graph not connected")
        return probs
    edge_count = len(ends)
    if t.kind is Kind.TRIPLE_TREE:
        if edge_count != v_count:
            probs.append("triple tree must have exactly one cycle")
        derived = _derive_triple(t.rotations)
        if isinstance(derived, str):
            probs.append(derived)
        else:
            roots, orientation = derived
            if t.roots != roots:
                probs.append(f"stored roots {t.roots} != derived {roots}")
            for r in roots:
                rot = t.rotations[r]
                if rot[:2] != orientation[r]:
                    probs.append(f"root {r} rotation not anchored at its cycle pair")
    else:
        if edge_count != v_count - 1:
            probs.append("underlying graph is not a tree")
        if t.kind is Kind.DOUBLE_EDGE:
            a, b = ends[DOUBLED]
            if not (len(t.rotations[a]) == 1 or len(t.rotations[b]) == 1):
                probs.append("doubled edge is not pendant")
    return probs


# ---------------------------------------------------------------------------
# basic queries


def edge_endpoints(t: Tree) -> dict[int, tuple[int, int]]:
    return {tok: (vs[0], vs[1]) for tok, vs in _edge_map(t.rotations).items()}


def token_of(t: Tree, label: int) -> int:
    if not 1 <= label <= t.m:
        raise ValueError(f"unknown label {label}")
    if t.kind is Kind.DOUBLE_EDGE and label in t.double:
        return DOUBLED
    return label


def doubled_root(t: Tree) -> tuple[int, int]:
    """(inner vertex, pendant vertex) of the doubled edge."""
    a, b = edge_endpoints(t)[DOUBLED]
    return (a, b) if len(t.rotations[b]) == 1 else (b, a)


def _cw_next(rot: Sequence[int], tok: int) -> int:
    i = rot.index(tok)
    return rot[(i + 1) % len(rot)]


def _cw_prev(rot: Sequence[int], tok: int) -> int:
    i = rot.index(tok)
    return rot[i - 1]


def following_edges(t: Tree, j: int) -> set:
    """Edges adjacent to j in the rotations at its endpoints, both ways.

    The doubled edge is reported as the sorted tuple of its two labels.
    Leaf endpoints contribute nothing.
    """
    tok = token_of(t, j)
    out = set()
    for v in edge_endpoints(t)[tok]:
        rot = t.rotations[v]
        if len(rot) == 1:
            continue
        for nbr in (_cw_next(rot, tok), _cw_prev(rot, tok)):
            out.add(t.double if nbr == DOUBLED else nbr)
    return out


# ---------------------------------------------------------------------------
# slide moves


def _mirror(t: Tree) -> Tree:
    rots = [tuple(reversed(rot)) for rot in t.rotations]
    return _normalize(t.kind, t.m, rots, t.double)


def _root_pair_position(t: Tree, tok: int, v: int) -> int | None:
    """0 or 1 when tok is a cycle edge at root v, else None."""
    if t.kind is not Kind.TRIPLE_TREE or v not in t.roots:
        return None
    pair = t.rotations[v][:2]
    return pair.index(tok) if tok in pair else None


def _mutate_plus(t: Tree, j: int) -> Tree:
    tok = token_of(t, j)
    ends = edge_endpoints(t)
    if tok == DOUBLED:
        return _split_doubled(t, j)
    rot = {v: list(r) for v, r in enumerate(t.rotations)}
    moves = []
    for v in ends[tok]:
        r = t.rotations[v]
        if len(r) == 1:
            continue
        pos = _root_pair_position(t, tok, v)
        if pos == 1 and len(r) == 2:
            continue
        f = _cw_next(r, tok)
        if f == DOUBLED:
            moves.append(("around", v, f))
        else:
            w = next(u for u in ends[f] if u != v)
            moves.append(("slide", v, f, w))
    for move in moves:
        rot[move[1]].remove(tok)
    for move in moves:
        if move[0] == "around":
            _, v, f = move
            rot[v].insert(rot[v].index(f) + 1, tok)
        else:
            _, v, f, w = move
            rot[w].insert(rot[w].index(f) + 1, tok)
    return _classify(t, rot, j)


def _split_doubled(t: Tree, j: int) -> Tree:
    """Move one label of the doubled edge: the tree grows a 3-cycle."""
    other = t.double[0] if t.double[1] == j else t.double[1]
    inner, pendant = doubled_root(t)
    rot = {v: list(r) for v, r in enumerate(t.rotations)}
    k = _cw_next(rot[inner], DOUBLED)
    w = next(u for u in edge_endpoints(t)[k] if u != inner)
    rot[inner][rot[inner].index(DOUBLED)] = other
    rot[pendant] = [j, other]
    rot[w].insert(rot[w].index(k) + 1, j)
    return _normalize(Kind.TRIPLE_TREE, t.m, [rot[v] for v in sorted(rot)], None)


def _classify(t: Tree, rot: dict[int, list[int]], j: int) -> Tree:
    """Rebuild tree data after a raw slide of edge j."""
    rot_lists = [rot[v] for v in sorted(rot)]
    kind, double = t.kind, t.double
    if t.kind is Kind.TRIPLE_TREE:
        ends = _edge_map(rot_lists)
        partner = next(
            (
                tok
                for tok, vs in ends.items()
                if tok != j and set(vs) == set(ends[j]) and len(set(vs)) == 2
            ),
            None,
        )
        if partner is not None:
            # two parallel edges collapse to a doubled pendant edge
            a, b = ends[j]
            merged = []
            for v in sorted(rot):
                r = rot[v]
                if v in (a, b):
                    idx = [i for i, x in enumerate(r) if x in (j, partner)]
                    if len(r) == 2:
                        r = [DOUBLED]
                    else:
                        if (idx[0] + 1) % len(r) != idx[1] and (idx[1] + 1) % len(
                            r
                        ) != idx[0]:
                            raise ValueError("parallel edges not adjacent")
                        r = [x for x in r if x not in (j, partner)]
                        r.insert(min(idx), DOUBLED)
                merged.append(r)
            return _normalize(Kind.DOUBLE_EDGE, t.m, merged, (j, partner))
        return _normalize(Kind.TRIPLE_TREE, t.m, rot_lists, None)
    return _normalize(kind, t.m, rot_lists, double)


def mutate_tree(t: Tree, j: int, direction) -> Tree:
    """Slide edge j one step: direction +1 follows the clockwise order,
    -1 is the inverse move."""
    problems = validate_tree(t)
    if problems:
        raise ValueError("; ".join(problems))
    if direction in ("+", 1, +1):
        out = _mutate_plus(t, j)
    elif direction in ("-", -1):
        out = _mirror(_mutate_plus(_mirror(t), j))
    else:
        raise ValueError(f"direction must be + or -, got {direction!r}")
    problems = validate_tree(out)
    if problems:
        raise AssertionError(f"slide produced an invalid tree: {problems}")
    return out


def apply_word(t: Tree, word: MutationWord) -> Tree:
    for j, d in word.steps:
        t = mutate_tree(t, j, d)
    return t


# ---------------------------------------------------------------------------
# relabeling


def relabel(t: Tree, p: Perm) -> Tree:
    """Rename every label l to p(l); the shape is unchanged."""
    rots = [
        tuple(tok if tok == DOUBLED else p(tok) for tok in rot) for rot in t.rotations
    ]
    double = tuple(sorted(map(p, t.double))) if t.double else None
    return _normalize(t.kind, t.m, rots, double)


# ---------------------------------------------------------------------------
# depth-first standard labeling


def _ccw_from(rot: Sequence[int], tok: int) -> list[int]:
    """Rotation read counterclockwise starting at tok."""
    i = rot.index(tok)
    return [rot[(i - k) % len(rot)] for k in range(len(rot))]


def _dfs_block(t: Tree, start_edges: list[int], at_vertex: int, ends, order: list[int]):
    """Depth-first edge traversal, counterclockwise children first."""
    for e in start_edges:
        order.append(e)
        far = next(u for u in ends[e] if u != at_vertex)
        children = _ccw_from(t.rotations[far], e)[1:]
        _dfs_block(t, children, far, ends, order)


def standard_labeling(t: Tree) -> Perm:
    """Permutation p with p(standard label) = current label.

    relabel(t, p.inv()) carries the canonical depth-first labeling.  For a
    tree with a 3-cycle the three possible root assignments are tried and
    the one minimizing the standard word length is kept (ties broken by the
    serialized form).
    """
    if t.kind is Kind.DOUBLE_EDGE:
        return _standard_labeling_double(t)
    if t.kind is Kind.TRIPLE_TREE:
        cands = _triple_labelings(t)
        # a 3-cycle admits three standard labelings, one per cyclic
        # assignment of the branches; when the current labels already pick
        # one out (the cycle carries 1, 2 and m in standard positions) that
        # assignment must win, otherwise relabeling would silently rotate
        # the cycle under an already standard tree
        for cand in cands:
            if cand(1) == 1 and cand(2) == 2 and cand(t.m) == t.m:
                return cand
        best = None
        for cand in cands:
            key = (_word_length(relabel(t, cand.inv())), canonical_key(relabel(t, cand.inv())))
            if best is None or key < best[0]:
                best = (key, cand)
        return best[1]
    raise ValueError("standard labeling is defined only for trees with a doubled edge or a 3-cycle")


def _standard_labeling_double(t: Tree) -> Perm:
    ends = _edge_map(t.rotations)
    root, _ = doubled_root(t)
    rot = t.rotations[root]
    x0 = _cw_prev(rot, DOUBLED)
    root_edges = [e for e in _ccw_from(rot, x0) if e != DOUBLED]
    order: list[int] = []
    _dfs_block(t, root_edges, root, ends, order)
    mapping = {std: cur for std, cur in zip(range(3, t.m + 1), order)}
    mapping[1], mapping[2] = t.double
    return perm_from_map(t.m, mapping)


def _triple_labelings(t: Tree) -> list[Perm]:
    """The three candidate standard labelings of a 3-cycle tree."""
    ends = _edge_map(t.rotations)
    r0, r1, r2 = t.roots
    cands = []
    for a, b, c in ((r0, r1, r2), (r1, r2, r0), (r2, r0, r1)):
        prev_a, next_a = t.rotations[a][:2]
        next_b = t.rotations[b][1]
        mapping = {prev_a: t.m, next_a: 2, next_b: 1}
        std = 3
        for root in (a, b, c):
            rot = t.rotations[root]
            block = list(rot[2:])
            order: list[int] = []
            if block:
                x0 = block[-1]
                _dfs_block(t, _ccw_from(rot, x0)[: len(block)], root, ends, order)
            for cur in order:
                mapping[cur] = std
                std += 1
        cands.append(perm_from_map(t.m, {v: k for k, v in mapping.items()}))
    return cands


def _word_length(std_tree: Tree) -> int:
    """Length of the standard mutation word of a standardly labeled tree."""
    from . import standardseq

    return len(standardseq._word_unchecked(std_tree).steps)


# ---------------------------------------------------------------------------
# canonical forms


def canonical_key(t: Tree):
    """Hashable key equal for equal labeled trees regardless of vertex ids."""
    anchors: Iterable[int]
    if t.kind is Kind.DOUBLE_EDGE:
        anchors = [doubled_root(t)[0]]
    elif t.kind is Kind.TRIPLE_TREE:
        anchors = list(t.roots)
    else:
        anchors = range(len(t.rotations))
    return (t.kind.value, t.m, t.double, min(_serialize_from(t, a) for a in anchors))


def shape_key(t: Tree):
    """Like canonical_key but blind to the labels."""
    std = standard_labeling(t)
    return canonical_key(relabel(t, std.inv()))


def trees_equal(a: Tree, b: Tree) -> bool:
    return canonical_key(a) == canonical_key(b)


def same_shape(a: Tree, b: Tree) -> bool:
    return shape_key(a) == shape_key(b)


def _serialize_from(t: Tree, anchor: int):
    ends = _edge_map(t.rotations)
    number = {anchor: 0}
    queue = [anchor]
    rows = []
    while queue:
        v = queue.pop(0)
        rot = t.rotations[v]
        row = []
        for tok in rot:
            a, b = ends[tok]
            w = b if a == v else a
            if w not in number:
                number[w] = len(number)
                queue.append(w)
            row.append((tok, number[w]))
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# stock trees and random generation


def star_tree(m: int) -> Tree:
    """Doubled pendant edge {1,2} plus m-2 spokes at one hub."""
    if m < 4:
        raise ValueError("need m >= 4")
    hub_rot = [3, DOUBLED] + list(range(m, 3, -1))
    rots = [hub_rot, [DOUBLED]] + [[i] for i in range(3, m + 1)]
    return make_tree(Kind.DOUBLE_EDGE, m, rots, double=(1, 2))


def line_tree(m: int) -> Tree:
    """Doubled pendant edge {1,2} at the end of a path 3,4,...,m."""
    if m < 4:
        raise ValueError("need m >= 4")
    rots = [[DOUBLED, 3], [DOUBLED]]
    rots += [[i, i + 1] for i in range(3, m)]
    rots.append([m])
    return make_tree(Kind.DOUBLE_EDGE, m, rots, double=(1, 2))


def random_double_edge_tree(m: int, rng) -> Tree:
    """Random shape with a pendant doubled edge and random labels."""
    n = m - 1  # inner vertices
    parent = [0] * n
    for v in range(1, n):
        parent[v] = rng.randrange(v)
    labels = list(range(3, m + 1))
    rng.shuffle(labels)
    rots: list[list[int]] = [[] for _ in range(n + 1)]
    for v in range(1, n):
        lab = labels[v - 1]
        rots[v].append(lab)
        rots[parent[v]].append(lab)
    rots[0].append(DOUBLED)
    rots[n].append(DOUBLED)
    for rot in rots:
        rng.shuffle(rot)
    pair = rng.sample(range(1, m + 1), 2)
    rest = sorted(set(range(1, m + 1)) - set(pair))
    ren = {old: new for old, new in zip(sorted(labels), rest)}
    rots = [[DOUBLED if x == DOUBLED else ren[x] for x in rot] for rot in rots]
    return make_tree(Kind.DOUBLE_EDGE, m, rots, double=tuple(sorted(pair)))


def random_walk(t: Tree, steps: int, rng) -> Tree:
    for _ in range(steps):
        t = mutate_tree(t, rng.randrange(1, t.m + 1), rng.choice((1, -1)))
    return t


# ---------------------------------------------------------------------------
# text format and DOT export


def format_tree(t: Tree) -> str:
    lines = [f"kind: {t.kind.value}", f"m: {t.m}"]
    lines.append("rotations:")
    for v, rot in enumerate(t.rotations):
        toks = [
            f"D:{t.double[0]},{t.double[1]}" if tok == DOUBLED else str(tok)
            for tok in rot
        ]
        lines.append(f"  {v}: " + " ".join(toks))
    if t.kind is Kind.TRIPLE_TREE:
        r0, r1, r2 = t.roots
        e01 = t.rotations[r0][1]
        e12 = t.rotations[r1][1]
        e20 = t.rotations[r2][1]
        lines.append(
            f"triple: {{roots: [{r0}, {r1}, {r2}], central: [{e12}, {e20}, {e01}]}}"
        )
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> Tree:
    kind = None
    m = None
    double = None
    rots: dict[int, list[int]] = {}
    triple_line = None
    mode = None
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        if line.startswith("kind:"):
            kind = Kind(line.split(":", 1)[1].strip())
        elif line.startswith("m:"):
            m = int(line.split(":", 1)[1].strip())
        elif line.startswith("rotations:"):
            mode = "rot"
        elif line.startswith("triple:"):
            triple_line = line.split(":", 1)[1].strip()
        elif mode == "rot" and line.startswith(" "):
            name, _, rest = line.strip().partition(":")
            toks = []
            for piece in rest.split():
                if piece.startswith("D:"):
                    l1, l2 = piece[2:].split(",")
                    double = (int(l1), int(l2))
                    toks.append(DOUBLED)
                else:
                    toks.append(int(piece))
            rots[int(name)] = toks
        else:
            raise ValueError(f"unrecognized line {raw!r}")
    if kind is None or m is None:
        raise ValueError("missing kind or m")
    rot_lists = [rots[v] for v in sorted(rots)]
    if sorted(rots) != list(range(len(rots))):
        raise ValueError("vertex names must be 0..V-1")
    t = make_tree(kind, m, rot_lists, double=double)
    if triple_line is not None:
        nums = [int(x) for x in re.findall(r"-?\d+", triple_line)]
        if len(nums) != 6:
            raise ValueError(f"bad triple line {triple_line!r}")
        r0, r1, r2 = t.roots
        derived = [
            r0,
            r1,
            r2,
            t.rotations[r1][1],
            t.rotations[r2][1],
            t.rotations[r0][1],
        ]
        if nums != derived:
            raise ValueError(f"triple line {nums} inconsistent with rotations {derived}")
    return t


def to_dot(t: Tree) -> str:
    ends = edge_endpoints(t)
    lines = ["graph tree {"]
    cycle_edges = set()
    if t.kind is Kind.TRIPLE_TREE:
        cycle_edges = {t.rotations[r][0] for r in t.roots}
        for r in t.roots:
            lines.append(f'  v{r} [style=filled, fillcolor=lightgray];')
    for tok, (a, b) in sorted(ends.items()):
        if tok == DOUBLED:
            lab1, lab2 = t.double
            lines.append(f'  v{a} -- v{b} [label="{lab1}"];')
            lines.append(f'  v{a} -- v{b} [label="{lab2}"];')
        else:
            style = ", penwidth=2" if tok in cycle_edges else ""
            lines.append(f'  v{a} -- v{b} [label="{tok}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
