"""Path algebras of labeled plane trees.

A tree presentation has one quiver vertex per edge label.  Arrows come from
clockwise successions around tree vertices; a doubled edge contributes two
parallel sheet vertices, a fork of arrows through them, and the relations
making the two sheet passages equal and the cross-sheet round trips vanish.
Leaves contribute no arrows; their formal round trips are expressed through
the inner endpoint instead.

``compute_basis`` turns a presentation into a finite-dimensional algebra
with an explicit path basis by exact linear algebra: all paths up to a
nilpotency bound are enumerated, the two-sided span of the relations is
eliminated, and the surviving lexicographically smallest paths become the
normal forms.  Elements of Hom(P_i, P_j) are kept as ``{path: coeff}``
dicts of paths from i to j; composition is "first map then second map",
realized by path concatenation.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from . import linalg, trees
from .linalg import QQ
from .trees import DOUBLED, Kind, Tree


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths (tuples of arrow names)."""

    terms: tuple[tuple[object, tuple[str, ...]], ...]


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]

    def arrow_by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def check(self) -> list[str]:
        probs = []
        by_name = self.arrow_by_name()
        if len(by_name) != len(self.arrows):
            probs.append("duplicate arrow names")
        for a in self.arrows:
            if a.src not in self.vertices or a.tgt not in self.vertices:
                probs.append(f"arrow {a.name} endpoints unknown")
        for rel in self.relations:
            sig = set()
            for _, path in rel.terms:
                if not path:
                    probs.append("empty path in a relation")
                    continue
                for x, y in zip(path, path[1:]):
                    if by_name[x].tgt != by_name[y].src:
                        probs.append(f"path {path} not composable")
                sig.add((by_name[path[0]].src, by_name[path[-1]].tgt))
            if len(sig) > 1:
                probs.append(f"relation terms not parallel: {rel}")
        return probs


def _arrow_name(src: int, tgt: int) -> str:
    return f"a{src}_{tgt}"


def build_presentation(t: Tree) -> QuiverPresentation:
    """Quiver with relations presenting the algebra of the tree t."""
    problems = trees.validate_tree(t)
    if problems:
        raise ValueError("; ".join(problems))
    if t.kind is Kind.TRIPLE_TREE:
        return _triple_presentation(t)
    if t.kind is Kind.PLAIN and t.m == 1:
        loop = Arrow(_arrow_name(1, 1), 1, 1)
        rel = Relation(((1, (loop.name, loop.name)),))
        return QuiverPresentation((1,), (loop,), (rel,))

    sheets = t.double if t.kind is Kind.DOUBLE_EDGE else None
    arrows: dict[str, Arrow] = {}
    host: dict[str, int] = {}

    def expand(tok: int) -> tuple[int, ...]:
        return sheets if tok == DOUBLED else (tok,)

    def emit(src_tok: int, tgt_tok: int, v: int) -> None:
        for s in expand(src_tok):
            for g in expand(tgt_tok):
                name = _arrow_name(s, g)
                arrows[name] = Arrow(name, s, g)
                host[name] = v

    for v, rot in enumerate(t.rotations):
        if len(rot) < 2:
            continue
        for idx, tok in enumerate(rot):
            emit(tok, rot[(idx + 1) % len(rot)], v)

    def cycle_path(v: int, e: int) -> tuple[str, ...]:
        """Round trip at v starting from edge e, doubled slot read through
        the smaller sheet."""
        rot = t.rotations[v]
        i = rot.index(e)
        toks = [rot[(i + k) % len(rot)] for k in range(len(rot))] + [e]
        full: list[str] = []
        for a, b in zip(toks, toks[1:]):
            if b == DOUBLED:
                full.append(_arrow_name(a, sheets[0]))
            elif a == DOUBLED:
                full.append(_arrow_name(sheets[0], b))
            else:
                full.append(_arrow_name(a, b))
        return tuple(full)

    rels: list[Relation] = []
    ends = trees.edge_endpoints(t)

    if t.kind is Kind.DOUBLE_EDGE:
        s1, s2 = sheets
        inner, _ = trees.doubled_root(t)
        rot = t.rotations[inner]
        p = trees._cw_prev(rot, DOUBLED)
        n = trees._cw_next(rot, DOUBLED)
        rels.append(
            Relation(
                (
                    (1, (_arrow_name(p, s1), _arrow_name(s1, n))),
                    (-1, (_arrow_name(p, s2), _arrow_name(s2, n))),
                )
            )
        )
        arc: list[str] = []
        cur = n
        while cur != p:
            nxt = trees._cw_next(rot, cur)
            if nxt == DOUBLED:
                break
            arc.append(_arrow_name(cur, nxt))
            cur = nxt
        rels.append(Relation(((1, (_arrow_name(s1, n), *arc, _arrow_name(p, s2))),)))
        rels.append(Relation(((1, (_arrow_name(s2, n), *arc, _arrow_name(p, s1))),)))

    for e, (u, v) in sorted(ends.items()):
        if e == DOUBLED:
            continue
        du, dv = len(t.rotations[u]), len(t.rotations[v])
        if du < dv or (du == dv and v < u):
            u, v, du, dv = v, u, dv, du
        if dv >= 2:
            rels.append(Relation(((1, cycle_path(u, e)), (-1, cycle_path(v, e)))))
        else:
            cyc = cycle_path(u, e)
            rot = t.rotations[u]
            for nxt in expand(trees._cw_next(rot, e)):
                rels.append(Relation(((1, cyc + (_arrow_name(e, nxt),)),)))
            for prv in expand(trees._cw_prev(rot, e)):
                rels.append(Relation(((1, (_arrow_name(prv, e),) + cyc),)))

    for f, g in itertools.product(arrows.values(), repeat=2):
        if f.tgt == g.src and host[f.name] != host[g.name]:
            rels.append(Relation(((1, (f.name, g.name)),)))

    pres = QuiverPresentation(
        tuple(range(1, t.m + 1)), tuple(arrows.values()), tuple(rels)
    )
    problems = pres.check()
    if problems:
        raise AssertionError("; ".join(problems))
    return pres


# ---------------------------------------------------------------------------
# quotient engine


class BoundExceeded(Exception):
    pass


class PathAlgebra:
    """Finite-dimensional quotient of a path algebra with a path basis."""

    def __init__(self, presentation, field, basis, step, bound):
        self.presentation = presentation
        self.field = field
        self.basis = basis  # (src, tgt) -> ordered list of basis paths
        self._step = step  # (path, arrow name) -> {path: coeff}
        self.bound = bound
        self.vertices = presentation.vertices
        self._arrows = presentation.arrow_by_name()
        self.dim = sum(len(b) for b in basis.values())

    # -- queries ----------------------------------------------------------

    def hom_basis(self, i: int, j: int) -> list[tuple[str, ...]]:
        """Basis paths of Hom(P_i, P_j), the paths from i to j."""
        if i not in self.vertices or j not in self.vertices:
            raise ValueError(f"unknown vertex in ({i}, {j})")
        return self.basis.get((i, j), [])

    def cartan(self) -> list[list[int]]:
        vs = self.vertices
        return [[len(self.hom_basis(i, j)) for j in vs] for i in vs]

    def unit(self, i: int) -> dict:
        return {(): self.field.one}

    def soc(self, i: int) -> tuple[str, ...]:
        paths = self.hom_basis(i, i)
        if len(paths) != 2:
            raise ValueError(f"endomorphism space at {i} is not 2-dimensional")
        return paths[1]

    def arrow_element(self, name: str) -> dict:
        return {(name,): self.field.one}

    def path_src(self, path: tuple[str, ...], default: int | None = None) -> int:
        if path:
            return self._arrows[path[0]].src
        if default is None:
            raise ValueError("trivial path needs vertex context")
        return default

    # -- arithmetic --------------------------------------------------------

    def add(self, f: dict, g: dict) -> dict:
        out = dict(f)
        for p, c in g.items():
            s = self.field.add(out.get(p, self.field.zero), c)
            if s == self.field.zero:
                out.pop(p, None)
            else:
                out[p] = s
        return out

    def scale(self, c, f: dict) -> dict:
        if c == self.field.zero:
            return {}
        return {p: self.field.mul(c, x) for p, x in f.items()}

    def neg(self, f: dict) -> dict:
        return {p: self.field.neg(x) for p, x in f.items()}

    def _extend(self, f: dict, arrow: str) -> dict:
        out: dict = {}
        for p, c in f.items():
            combo = self._step.get((p, arrow))
            if combo is None:
                continue
            for q, d in combo.items():
                s = self.field.add(out.get(q, self.field.zero), self.field.mul(c, d))
                if s == self.field.zero:
                    out.pop(q, None)
                else:
                    out[q] = s
        return out

    def compose(self, f: dict, g: dict) -> dict:
        """First f then g, concatenating paths."""
        out: dict = {}
        for q, d in g.items():
            part = self.scale(d, f)
            for a in q:
                part = self._extend(part, a)
            out = self.add(out, part)
        return out

    def reduce_path(self, path: tuple[str, ...]) -> dict:
        el = {(): self.field.one}
        for a in path:
            el = self._extend(el, a)
        return el

    def element_vector(self, i: int, j: int, f: dict) -> list:
        paths = self.hom_basis(i, j)
        index = {p: k for k, p in enumerate(paths)}
        vec = [self.field.zero] * len(paths)
        for p, c in f.items():
            vec[index[p]] = c
        return vec

    def element_from_vector(self, i: int, j: int, vec) -> dict:
        paths = self.hom_basis(i, j)
        return {p: c for p, c in zip(paths, vec) if c != self.field.zero}

    def diag_parts(self, i: int, f: dict):
        """Split f in Hom(P_i, P_i) as c*id + s*socle."""
        c = f.get((), self.field.zero)
        s = f.get(self.soc(i), self.field.zero)
        return c, s

    def is_invertible_diag(self, i: int, f: dict) -> bool:
        return self.diag_parts(i, f)[0] != self.field.zero

    def inv_diag(self, i: int, f: dict) -> dict:
        c, s = self.diag_parts(i, f)
        ci = self.field.inv(c)
        out = {(): ci}
        if s != self.field.zero:
            out[self.soc(i)] = self.field.neg(self.field.mul(self.field.mul(ci, ci), s))
        return out

    def format_element(self, f: dict) -> str:
        if not f:
            return "0"
        bits = []
        for p, c in sorted(f.items()):
            name = "id" if not p else "*".join(p)
            bits.append(f"{c}{name}" if p else f"{c}·{name}")
        return " + ".join(bits)


def _initial_bound(pres: QuiverPresentation) -> int:
    longest = max((len(p) for r in pres.relations for _, p in r.terms), default=1)
    return longest + 2


def _enumerate_paths(pres, bound, zero_words):
    """All zero-word-free paths up to the bound, grouped by (src, tgt)."""
    by_src: dict[int, list[Arrow]] = {v: [] for v in pres.vertices}
    for a in pres.arrows:
        by_src[a.src].append(a)
    max_zero = max((len(w) for w in zero_words), default=0)

    def clean(path: tuple[str, ...]) -> bool:
        for k in range(max(0, len(path) - max_zero), len(path)):
            if path[k:] in zero_words:
                return False
        return True

    paths: dict[tuple[int, int], list[tuple[str, ...]]] = {}
    for v in pres.vertices:
        frontier = [((), v)]
        paths.setdefault((v, v), []).append(())
        for _ in range(bound):
            nxt = []
            for path, tgt in frontier:
                for a in by_src[tgt]:
                    cand = path + (a.name,)
                    if clean(cand):
                        paths.setdefault((v, a.tgt), []).append(cand)
                        nxt.append((cand, a.tgt))
            frontier = nxt
    return paths


def compute_basis(pres: QuiverPresentation, field=QQ) -> PathAlgebra:
    """Exact basis of the quotient algebra, or an error if the length
    bound cannot stabilize."""
    problems = pres.check()
    if problems:
        raise ValueError("; ".join(problems))
    bound = _initial_bound(pres)
    try:
        return _compute(pres, field, bound)
    except BoundExceeded:
        return _compute(pres, field, 2 * bound)


def _compute(pres, field, bound) -> PathAlgebra:
    arrows = pres.arrow_by_name()
    zero_words = set()
    binomials = []
    for rel in pres.relations:
        terms = [(field.of(c), p) for c, p in rel.terms]
        if len(terms) == 1:
            zero_words.add(terms[0][1])
        else:
            binomials.append(terms)
    paths = _enumerate_paths(pres, bound, zero_words)

    ends_of = {
        p: (s, t) for (s, t), plist in paths.items() for p in plist
    }
    expr: dict[tuple[str, ...], dict] = {}
    basis: dict[tuple[int, int], list] = {}

    by_pair_rows: dict[tuple[int, int], list[dict]] = {}
    for terms in binomials:
        rel_src = arrows[terms[0][1][0]].src
        rel_tgt = arrows[terms[0][1][-1]].tgt
        for (s, t_mid), xs in paths.items():
            if t_mid != rel_src:
                continue
            for (s_mid, t), ys in paths.items():
                if s_mid != rel_tgt:
                    continue
                for x in xs:
                    for y in ys:
                        row: dict = {}
                        for c, p in terms:
                            w = x + p + y
                            if len(w) > bound or not _clean_word(w, zero_words):
                                continue
                            row[w] = field.add(row.get(w, field.zero), c)
                        row = {w: c for w, c in row.items() if c != field.zero}
                        if row:
                            by_pair_rows.setdefault((s, t), []).append(row)

    max_len = 0
    for (s, t), plist in sorted(paths.items()):
        order = sorted(set(plist), key=lambda p: (len(p), p), reverse=True)
        index = {p: k for k, p in enumerate(order)}
        rows = []
        seen_rows = set()
        for row in by_pair_rows.get((s, t), []):
            vec = [field.zero] * len(order)
            for w, c in row.items():
                vec[index[w]] = c
            key = tuple(vec)
            if key not in seen_rows:
                seen_rows.add(key)
                rows.append(vec)
        red, pivots = linalg.rref(field, rows)
        pivot_set = set(pivots)
        nf = [order[k] for k in range(len(order)) if k not in pivot_set]
        nf.sort(key=lambda p: (len(p), p))
        basis[(s, t)] = nf
        if nf:
            max_len = max(max_len, max(len(p) for p in nf))
        for p in nf:
            expr[p] = {p: field.one}
        for r, k in zip(red, pivots):
            combo = {
                order[c]: field.neg(r[c])
                for c in range(k + 1, len(order))
                if r[c] != field.zero
            }
            expr[order[k]] = combo

    if max_len > bound - 2:
        raise BoundExceeded(f"basis paths of length {max_len} near bound {bound}")

    step: dict[tuple[tuple[str, ...], str], dict] = {}
    for (s, t), nf in basis.items():
        for p in nf:
            for a in pres.arrows:
                if a.src != t:
                    continue
                w = p + (a.name,)
                if not _clean_word(w, zero_words):
                    continue
                combo = expr.get(w)
                if combo is None:
                    raise BoundExceeded(f"extension {w} beyond bound {bound}")
                if combo:
                    step[(p, a.name)] = combo

    alg = PathAlgebra(pres, field, basis, step, bound)
    _check_algebra(alg)
    return alg


def _clean_word(word, zero_words) -> bool:
    for w in zero_words:
        n = len(w)
        if n > len(word):
            continue
        for i in range(len(word) - n + 1):
            if word[i : i + n] == w:
                return False
    return True


def _check_algebra(alg: PathAlgebra) -> None:
    field = alg.field
    for rel in alg.presentation.relations:
        img: dict = {}
        for c, p in rel.terms:
            img = alg.add(img, alg.scale(field.of(c), alg.reduce_path(p)))
        if img:
            raise AssertionError(f"relation does not vanish: {rel}")


def check_associativity(alg: PathAlgebra, samples=None, rng=None) -> None:
    """(xy)z = x(yz) on basis triples; exhaustive when samples is None."""
    triples = []
    items = [
        (s, t, p) for (s, t), paths in alg.basis.items() for p in paths
    ]
    if samples is None:
        for s, t, p in items:
            for t2, u, q in items:
                if t2 != t:
                    continue
                for u2, w, r in items:
                    if u2 == u:
                        triples.append(((s, t, p), (t, u, q), (u, w, r)))
    else:
        pool_by_src: dict[int, list] = {}
        for it in items:
            pool_by_src.setdefault(it[0], []).append(it)
        while len(triples) < samples:
            s, t, p = items[rng.randrange(len(items))]
            nxt = pool_by_src.get(t, [])
            if not nxt:
                continue
            t2, u, q = nxt[rng.randrange(len(nxt))]
            nxt2 = pool_by_src.get(u, [])
            if not nxt2:
                continue
            triples.append(((s, t, p), (t2, u, q), nxt2[rng.randrange(len(nxt2))]))
    one = alg.field.one
    for (s, t, p), (_, u, q), (_, w, r) in triples:
        x, y, z = {p: one}, {q: one}, {r: one}
        left = alg.compose(alg.compose(x, y), z)
        right = alg.compose(x, alg.compose(y, z))
        if left != right:
            raise AssertionError(f"associativity fails on {p}, {q}, {r}")


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class AlgebraAutomorphism:
    """Vertex permutation plus arrow -> scalar * arrow images."""

    vertex_images: tuple[int, ...]
    arrow_images: tuple[tuple[str, tuple[object, str]], ...]

    def vertex(self, i: int) -> int:
        return self.vertex_images[i - 1]

    @functools.cached_property
    def arrow_map(self) -> dict[str, tuple[object, str]]:
        return dict(self.arrow_images)


def apply_automorphism(alg: PathAlgebra, aut: AlgebraAutomorphism, el: dict) -> dict:
    out: dict = {}
    for path, c in el.items():
        coeff = c
        mapped = []
        for a in path:
            s, b = aut.arrow_map[a]
            coeff = alg.field.mul(coeff, alg.field.of(s))
            mapped.append(b)
        out = alg.add(out, alg.scale(coeff, alg.reduce_path(tuple(mapped))))
    return out


def validate_automorphism(alg: PathAlgebra, aut: AlgebraAutomorphism) -> None:
    if sorted(aut.vertex_images) != sorted(alg.vertices):
        raise ValueError("vertex images not a permutation")
    arrows = alg.presentation.arrow_by_name()
    for name, (s, b) in aut.arrow_map.items():
        a, img = arrows[name], arrows[b]
        if (aut.vertex(a.src), aut.vertex(a.tgt)) != (img.src, img.tgt):
            raise ValueError(f"arrow image {name} -> {b} misplaced")
        if alg.field.of(s) == alg.field.zero:
            raise ValueError("zero scalar in arrow image")
    for rel in alg.presentation.relations:
        img: dict = {}
        for c, p in rel.terms:
            img = alg.add(
                img,
                alg.scale(alg.field.of(c), apply_automorphism(alg, aut, {p: alg.field.one})),
            )
        if img:
            raise ValueError(f"relation image does not vanish: {rel}")


def identity_automorphism(alg: PathAlgebra) -> AlgebraAutomorphism:
    return AlgebraAutomorphism(
        tuple(alg.vertices),
        tuple((a.name, (1, a.name)) for a in alg.presentation.arrows),
    )


def sheet_swap_automorphism(alg: PathAlgebra, t: Tree) -> AlgebraAutomorphism:
    """Swap the two sheet labels and the arrows through them."""
    s1, s2 = t.double
    swap = {s1: s2, s2: s1}
    vimg = tuple(swap.get(i, i) for i in alg.vertices)
    arr = {}
    for a in alg.presentation.arrows:
        src, tgt = swap.get(a.src, a.src), swap.get(a.tgt, a.tgt)
        arr[a.name] = (1, _arrow_name(src, tgt))
    return AlgebraAutomorphism(vimg, tuple(sorted(arr.items())))


def sheet_in_scaling_automorphism(alg: PathAlgebra, t: Tree, c) -> AlgebraAutomorphism:
    """Scale the two arrows entering the sheets by c (the rest fixed)."""
    s1, s2 = t.double
    arr = {}
    for a in alg.presentation.arrows:
        scale = c if a.tgt in (s1, s2) else 1
        arr[a.name] = (scale, a.name)
    return AlgebraAutomorphism(tuple(alg.vertices), tuple(sorted(arr.items())))


def line_out_scaling_automorphism(alg: PathAlgebra, t: Tree, c) -> AlgebraAutomorphism:
    """Scale every arrow pointing away from the doubled end of a line tree
    by c: the two arrows leaving the sheets and each ascending arrow."""
    s1, s2 = t.double
    arr = {}
    for a in alg.presentation.arrows:
        outward = a.src in (s1, s2) or (a.src >= 3 and a.tgt == a.src + 1)
        arr[a.name] = (c if outward else 1, a.name)
    return AlgebraAutomorphism(tuple(alg.vertices), tuple(sorted(arr.items())))


def is_inner_diagonal(alg: PathAlgebra, aut: AlgebraAutomorphism) -> bool:
    """Whether an idempotent-fixing, arrow-scaling automorphism is inner.

    Units of the form sum d_i e_i conjugate the arrow x: i -> j by
    d_i / d_j, so the automorphism is inner exactly when the scalars are
    consistent around every quiver cycle.
    """
    if aut.vertex_images != tuple(alg.vertices):
        return False
    field = alg.field
    scales = {}
    for name, (c, img) in aut.arrow_map.items():
        if img != name:
            return False
        scales[name] = field.of(c)
    d = {alg.vertices[0]: field.one}
    pending = [alg.vertices[0]]
    arrows = list(alg.presentation.arrows)
    while pending:
        cur = pending.pop()
        for a in arrows:
            if a.src == cur and a.tgt not in d:
                d[a.tgt] = field.mul(d[a.src], field.inv(scales[a.name]))
                pending.append(a.tgt)
            elif a.tgt == cur and a.src not in d:
                d[a.src] = field.mul(d[a.tgt], scales[a.name])
                pending.append(a.src)
    return all(
        scales[a.name] == field.mul(d[a.src], field.inv(d[a.tgt])) for a in arrows
    )


# ---------------------------------------------------------------------------
# extraction of a presentation from endomorphism data


@dataclass
class EndoData:
    """Multiplication data of the endomorphism algebra of a complex:
    per-pair Hom bases with composition in coordinates."""

    labels: tuple[int, ...]
    dims: dict
    units: dict
    table: dict
    field: object


def extract_presentation(endo: EndoData) -> QuiverPresentation:
    field = endo.field
    labels = list(endo.labels)
    coords = []  # global basis: (i, j, a)
    for i in labels:
        for j in labels:
            for a in range(endo.dims.get((i, j), 0)):
                coords.append((i, j, a))
    index = {c: k for k, c in enumerate(coords)}
    n = len(coords)

    def sparse(vec):
        return [(coords[k], c) for k, c in enumerate(vec) if c != field.zero]

    def mult_vec(x, y):
        """Product of two global coordinate vectors."""
        out = [field.zero] * n
        for (i, j, a), cx in sparse(x):
            for (j2, l, b), cy in sparse(y):
                if j2 != j:
                    continue
                prod = endo.table.get((i, j, l))
                if prod is None:
                    continue
                for c2, val in enumerate(prod[a][b]):
                    if val != field.zero:
                        pos = index[(i, l, c2)]
                        out[pos] = field.add(out[pos], field.mul(field.mul(cx, cy), val))
        return out

    unit_vecs = {}
    for i in labels:
        v = [field.zero] * n
        for a, c in enumerate(endo.units[i]):
            v[index[(i, i, a)]] = c
        unit_vecs[i] = v

    def basis_vec(k):
        v = [field.zero] * n
        v[k] = field.one
        return v

    def trace_left(z):
        """Trace of left multiplication by z."""
        t = field.zero
        for k in range(n):
            t = field.add(t, mult_vec(z, basis_vec(k))[k])
        return t

    # radical via the trace form of left multiplication
    gram = []
    for a in range(n):
        row = []
        for b in range(n):
            row.append(trace_left(mult_vec(basis_vec(a), basis_vec(b))))
        gram.append(row)
    rad = linalg.null_space(field, gram)
    rad_sq = []
    for x in rad:
        for y in rad:
            rad_sq.append(mult_vec(x, y))

    def block(vecs, i, j):
        """Restrict vectors to the (i, j) component."""
        pos = [index[(i, j, a)] for a in range(endo.dims.get((i, j), 0))]
        return [[v[p] for p in pos] for v in vecs], pos

    arrows = []
    arrow_vecs = {}
    for i in labels:
        for j in labels:
            d = endo.dims.get((i, j), 0)
            if d == 0:
                continue
            rad_blk, pos = block(rad, i, j)
            radsq_blk, _ = block(rad_sq, i, j)
            red_sq, piv_sq = linalg.rref(field, radsq_blk) if radsq_blk else ([], [])
            stack = [r for r in red_sq[: len(piv_sq)]]
            chosen = []
            red_r, piv_r = linalg.rref(field, rad_blk) if rad_blk else ([], [])
            for cand in red_r[: len(piv_r)]:
                trial = stack + chosen + [cand]
                if linalg.rank(field, trial) > len(piv_sq) + len(chosen):
                    chosen.append(cand)
            for k, vec in enumerate(chosen):
                name = f"x{i}_{j}_{k}" if len(chosen) > 1 else f"x{i}_{j}"
                arrows.append(Arrow(name, i, j))
                full = [field.zero] * n
                for p, c in zip(pos, vec):
                    full[p] = c
                arrow_vecs[name] = full

    # Loewy length
    power = rad
    loewy = 1
    while power:
        nxt = []
        for x in power:
            for y in rad:
                nxt.append(mult_vec(x, y))
        red, piv = linalg.rref(field, nxt) if nxt else ([], [])
        power = red[: len(piv)]
        power = [r for r in power if any(c != field.zero for c in r)]
        loewy += 1
        if loewy > n + 2:
            raise ValueError("radical does not vanish; data is not nilpotent-finite")

    # relations: kernel of path evaluation up to the Loewy length
    by_src: dict[int, list[Arrow]] = {}
    for a in arrows:
        by_src.setdefault(a.src, []).append(a)
    rels = []
    for i in labels:
        frontier = [((), unit_vecs[i], i)]
        all_paths: dict[int, list] = {}
        for _ in range(loewy):
            nxt = []
            for path, vec, tgt in frontier:
                for a in by_src.get(tgt, []):
                    v2 = mult_vec(vec, arrow_vecs[a.name])
                    p2 = path + (a.name,)
                    all_paths.setdefault(a.tgt, []).append((p2, v2))
                    nxt.append((p2, v2, a.tgt))
            frontier = nxt
        for j, plist in all_paths.items():
            if not plist:
                continue
            mat = [list(vec) for _, vec in plist]
            for kervec in linalg.null_space(field, linalg.transpose(mat)):
                terms = tuple(
                    (c, plist[k][0]) for k, c in enumerate(kervec) if c != field.zero
                )
                if terms:
                    rels.append(Relation(_primitive_terms(field, terms)))
    return QuiverPresentation(tuple(labels), tuple(arrows), tuple(rels))


def _primitive_terms(field, terms):
    """Scale rational relation coefficients to a primitive integer vector,
    so the presentation can later be evaluated over any field."""
    if field.char != 0:
        return terms
    den = math.lcm(*(c.denominator for c, _ in terms))
    nums = [c.numerator * (den // c.denominator) for c, _ in terms]
    g = math.gcd(*nums)
    return tuple((n // g, p) for n, (_, p) in zip(nums, terms))


def _triple_presentation(t: Tree) -> QuiverPresentation:
    """Presentation of a 3-cycle tree, via the endomorphism algebra of its
    closed-form standard complex."""
    from . import mutation, standardseq

    p = trees.standard_labeling(t)
    std = trees.relabel(t, p.inv())
    summands = standardseq.standard_complex(std)
    endo = mutation.endo_data(summands)
    pres = extract_presentation(endo)
    back = {i: p(i) for i in pres.vertices}
    arrows = tuple(
        Arrow(a.name, back[a.src], back[a.tgt]) for a in pres.arrows
    )
    return QuiverPresentation(
        tuple(sorted(back[v] for v in pres.vertices)), arrows, pres.relations
    )


# ---------------------------------------------------------------------------
# stock algebras


@functools.cache
def star_algebra(m: int, field=QQ) -> PathAlgebra:
    return compute_basis(build_presentation(trees.star_tree(m)), field)


@functools.cache
def line_algebra(m: int, field=QQ) -> PathAlgebra:
    return compute_basis(build_presentation(trees.line_tree(m)), field)
