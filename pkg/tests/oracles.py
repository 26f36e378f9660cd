"""Brute-force reference computations, independent of the package engine.

The two stock algebras are rebuilt here from their classical presentations
with the traditional arrow names, all paths are enumerated dumbly, and the
two-sided relation span is eliminated with sympy.  Only dimensions come out
of this module; the package must reproduce them exactly.
"""

import itertools

import sympy


def star_reference(m):
    """Fork through the two sheets plus an (m-2)-spoke hub cycle."""
    arrows = {"al1": (3, 1), "al2": (3, 2), "d1": (1, m), "d2": (2, m)}
    for i in range(4, m + 1):
        arrows[f"b{i}"] = (i, i - 1)
    beta = tuple(f"b{i}" for i in range(m, 3, -1))
    rels = [
        [(1, ("al1", "d1")), (-1, ("al2", "d2"))],
        [(1, ("d1",) + beta + ("al2",))],
        [(1, ("d2",) + beta + ("al1",))],
    ]
    return arrows, rels, m


def line_reference(m):
    """Back-and-forth arrows along a line, fork at the doubled end."""
    arrows = {"g1": (3, 1), "G1": (1, 3), "g2": (3, 2), "G2": (2, 3)}
    for k in range(3, m):
        arrows[f"g{k}"] = (k + 1, k)
        arrows[f"G{k}"] = (k, k + 1)
    rels = []
    for x, y in itertools.product(arrows, repeat=2):
        if arrows[x][1] != arrows[y][0]:
            continue
        if x[0] == y[0]:  # both lowercase or both uppercase family
            rels.append([(1, (x, y))])
    for k in range(4, m):
        rels.append([(1, (f"G{k}", f"g{k}")), (-1, (f"g{k-1}", f"G{k-1}"))])
    rels.append([(1, ("g1", "G1")), (-1, ("G3", "g3"))])
    rels.append([(1, ("g2", "G2")), (-1, ("G3", "g3"))])
    rels.append([(1, ("G1", "g2"))])
    rels.append([(1, ("G2", "g1"))])
    return arrows, rels, None


def _all_paths(arrows, vertices, bound):
    by_src = {}
    for name, (s, t) in arrows.items():
        by_src.setdefault(s, []).append(name)
    paths = {}
    for v in vertices:
        frontier = [((), v)]
        paths.setdefault((v, v), []).append(())
        for _ in range(bound):
            nxt = []
            for p, tgt in frontier:
                for name in by_src.get(tgt, []):
                    q = p + (name,)
                    paths.setdefault((v, arrows[name][1]), []).append(q)
                    nxt.append((q, arrows[name][1]))
            frontier = nxt
    return paths


def brute_pair_dims(arrows, rels, vertices, bound, kill_length=None):
    """dim e_t A e_s for every pair, by Gaussian elimination over Q."""
    paths = _all_paths(arrows, vertices, bound)
    rels = list(rels)
    if kill_length is not None:
        for plist in paths.values():
            for p in plist:
                if len(p) == kill_length:
                    rels.append([(1, p)])
    dims = {}
    for (s, t), plist in paths.items():
        plist = sorted(set(plist))
        index = {p: k for k, p in enumerate(plist)}
        rows = []
        for rel in rels:
            src = arrows[rel[0][1][0]][0]
            tgt = arrows[rel[0][1][-1]][1]
            xs = [x for x in paths.get((s, src), []) if True]
            ys = [y for y in paths.get((tgt, t), []) if True]
            for x in xs:
                for y in ys:
                    row = [0] * len(plist)
                    touched = False
                    for c, p in rel:
                        w = x + p + y
                        if len(w) <= bound:
                            row[index[w]] += c
                            touched = True
                    if touched and any(row):
                        rows.append(row)
        rank = sympy.Matrix(rows).rank() if rows else 0
        dims[(s, t)] = len(plist) - rank
    for s, t in itertools.product(vertices, repeat=2):
        dims.setdefault((s, t), 0)
    return dims


def star_dims(m):
    arrows, rels, kill = star_reference(m)
    return brute_pair_dims(arrows, rels, range(1, m + 1), m + 2, kill)


def line_dims(m):
    arrows, rels, _ = line_reference(m)
    return brute_pair_dims(arrows, rels, range(1, m + 1), 4)


def star_cartan(m):
    """Closed form: diagonal 2, off-diagonal 1, sheet pair 0."""
    c = [[1] * m for _ in range(m)]
    for i in range(m):
        c[i][i] = 2
    c[0][1] = c[1][0] = 0
    return c


def line_cartan(m):
    """Closed form: twice the identity plus the branched-line adjacency."""
    c = [[0] * m for _ in range(m)]
    for i in range(m):
        c[i][i] = 2
    for a, b in [(1, 3), (2, 3)] + [(k, k + 1) for k in range(3, m)]:
        c[a - 1][b - 1] = c[b - 1][a - 1] = 1
    return c


def common_vertex_cartan(t):
    """Shared-endpoint count rule for doubled-edge trees: diagonal 2,
    sheet pair 0, otherwise the number of shared tree vertices."""
    import dtilt.trees as trees

    ends = trees.edge_endpoints(t)

    def verts(lbl):
        tok = trees.token_of(t, lbl)
        return set(ends[tok])

    m = t.m
    c = [[0] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                c[i - 1][j - 1] = 2
            elif set((i, j)) == set(t.double):
                c[i - 1][j - 1] = 0
            else:
                c[i - 1][j - 1] = len(verts(i) & verts(j))
    return c
