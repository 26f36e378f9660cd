"""Bounded complexes of projectives and their homotopy category.

A complex stores, per cohomological degree, an ordered tuple of projective
labels and a differential matrix.  Matrices put the source summands on the
rows, so composing first f then g is the product f*g, and d*d = 0 reads
diffs[n]*diffs[n+1] = 0.  Shifting by one lowers degrees and negates the
differential; the cone of f: X -> Y has X[1] on top of Y with the map f
glued into the differential.

Chain maps are degreewise matrices commuting with the differentials with
no extra signs.  Hom spaces in the homotopy category come from explicit
linear systems: a basis of chain maps, modulo the image of the homotopy
operator h -> dh + hd.
"""

from __future__ import annotations

import itertools
import random

from . import algebra as algebra_mod


class ProjComplex:
    """Bounded complex of projectives over a path algebra."""

    __slots__ = ("algebra", "lo", "labels", "diffs", "_key")

    def __init__(self, alg, lo, labels, diffs):
        self.algebra = alg
        self.lo = lo
        self.labels = tuple(tuple(layer) for layer in labels)
        self.diffs = tuple(
            tuple(tuple(dict(e) for e in row) for row in mat) for mat in diffs
        )
        self._key = None

    @property
    def hi(self):
        return self.lo + len(self.labels) - 1

    def is_zero(self):
        return not self.labels

    def degrees(self):
        return range(self.lo, self.lo + len(self.labels))

    def layer(self, n):
        k = n - self.lo
        if 0 <= k < len(self.labels):
            return self.labels[k]
        return ()

    def diff(self, n):
        """Differential leaving degree n, rows indexed by layer(n)."""
        k = n - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return zero_matrix(len(self.layer(n)), len(self.layer(n + 1)))

    def key(self):
        if self._key is None:
            self._key = (
                self.lo,
                self.labels,
                tuple(
                    tuple(tuple(sorted(e.items())) for e in row)
                    for mat in self.diffs
                    for row in mat
                ),
                tuple(len(mat) for mat in self.diffs),
            )
        return self._key

    def __repr__(self):
        if self.is_zero():
            return "ProjComplex(0)"
        bits = []
        for n in self.degrees():
            bits.append(f"{n}:(" + ",".join(f"P{i}" for i in self.layer(n)) + ")")
        return "ProjComplex(" + " ".join(bits) + ")"


def zero_matrix(rows, cols):
    return tuple(tuple({} for _ in range(cols)) for _ in range(rows))


def zero_complex(alg) -> ProjComplex:
    return ProjComplex(alg, 0, (), ())


def make_complex(alg, lo, labels, diffs, check=True) -> ProjComplex:
    labels = [tuple(layer) for layer in labels]
    diffs = [
        [[dict(e) for e in row] for row in mat] for mat in diffs
    ]
    if len(diffs) != max(len(labels) - 1, 0):
        raise ValueError("need one differential per adjacent degree pair")
    # trim empty layers at both ends
    while labels and not labels[0]:
        labels.pop(0)
        if diffs:
            diffs.pop(0)
        lo += 1
    while labels and not labels[-1]:
        labels.pop()
        if diffs:
            diffs.pop()
    if not labels:
        return zero_complex(alg)
    x = ProjComplex(alg, lo, labels, diffs)
    if check:
        problems = validate_complex(x)
        if problems:
            raise ValueError("; ".join(problems))
    return x


def stalk(alg, label, degree=0) -> ProjComplex:
    return make_complex(alg, degree, [(label,)], [])


def validate_complex(x: ProjComplex) -> list[str]:
    if x.is_zero():
        return []
    alg = x.algebra
    probs = []
    for k, mat in enumerate(x.diffs):
        src, tgt = x.labels[k], x.labels[k + 1]
        if len(mat) != len(src) or any(len(row) != len(tgt) for row in mat):
            probs.append(f"matrix {k} shape mismatch")
            continue
        for r, row in enumerate(mat):
            for c, e in enumerate(row):
                for p in e:
                    if p == ():
                        if src[r] != tgt[c]:
                            probs.append(f"identity entry at ({k},{r},{c}) not parallel")
                    else:
                        arrows = alg.presentation.arrow_by_name()
                        if arrows[p[0]].src != src[r] or arrows[p[-1]].tgt != tgt[c]:
                            probs.append(f"entry path at ({k},{r},{c}) not parallel")
    for k in range(len(x.diffs) - 1):
        prod = mat_compose(alg, x.diffs[k], x.diffs[k + 1])
        if any(e for row in prod for e in row):
            probs.append(f"d*d nonzero between degrees {x.lo + k} and {x.lo + k + 2}")
    return probs


# ---------------------------------------------------------------------------
# matrix helpers (entries are algebra elements, rows = source summands)


def mat_compose(alg, a, b, cols=None):
    rows, mid = len(a), len(b)
    if cols is None:
        cols = len(b[0]) if b else 0
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for r in range(rows):
        for k in range(mid):
            if not a[r][k]:
                continue
            for c in range(cols):
                if b[k][c]:
                    out[r][c] = alg.add(out[r][c], alg.compose(a[r][k], b[k][c]))
    return out

def mat_add(alg, a, b):
    return [
        [alg.add(a[r][c], b[r][c]) for c in range(len(a[0]) if a else 0)]
        for r in range(len(a))
    ]


def mat_neg(alg, a):
    return [[alg.neg(e) for e in row] for row in a]


def mat_scale(alg, c, a):
    return [[alg.scale(c, e) for e in row] for row in a]


def identity_matrix_over(alg, labels):
    n = len(labels)
    return [
        [({(): alg.field.one} if r == c else {}) for c in range(n)]
        for r in range(n)
    ]


# ---------------------------------------------------------------------------
# functors


def shift(x: ProjComplex, n: int) -> ProjComplex:
    """Degrees lowered by n, differential negated n times."""
    if x.is_zero() or n == 0:
        return x
    alg = x.algebra
    diffs = x.diffs if n % 2 == 0 else tuple(
        tuple(tuple(alg.neg(e) for e in row) for row in mat) for mat in x.diffs
    )
    return ProjComplex(alg, x.lo - n, x.labels, diffs)


class ChainMap:
    """Degreewise matrices from x to y commuting with the differentials."""

    __slots__ = ("x", "y", "mats")

    def __init__(self, x, y, mats):
        self.x = x
        self.y = y
        self.mats = {n: [[dict(e) for e in row] for row in m] for n, m in mats.items()}

    def mat(self, n):
        m = self.mats.get(n)
        if m is None:
            return [[{} for _ in range(len(self.y.layer(n)))] for _ in range(len(self.x.layer(n)))]
        return m


def validate_chain_map(f: ChainMap) -> list[str]:
    if f.x.is_zero() or f.y.is_zero():
        return []
    alg = f.x.algebra
    probs = []
    lo = min(f.x.lo, f.y.lo) - 1
    hi = max(f.x.hi, f.y.hi) + 1
    for n in range(lo, hi + 1):
        cols = len(f.y.layer(n + 1))
        left = mat_compose(alg, f.mat(n), f.y.diff(n), cols=cols)
        right = mat_compose(alg, f.x.diff(n), f.mat(n + 1), cols=cols)
        if len(left) != len(right) or (left and len(left[0]) != len(right[0])):
            probs.append(f"shape mismatch at degree {n}")
            continue
        for r in range(len(left)):
            for c in range(len(left[r])):
                if alg.add(left[r][c], alg.neg(right[r][c])):
                    probs.append(f"does not commute with d at degree {n}")
    return probs


def cone(f: ChainMap) -> ProjComplex:
    """X[1] stacked over Y, with f glued into the differential."""
    x, y, alg = f.x, f.y, f.x.algebra
    probs = validate_chain_map(f)
    if probs:
        raise ValueError("; ".join(probs))
    if x.is_zero():
        return y
    if y.is_zero():
        return shift(x, 1)
    lo = min(x.lo - 1, y.lo)
    hi = max(x.hi - 1, y.hi)
    labels = []
    for n in range(lo, hi + 1):
        labels.append(tuple(x.layer(n + 1)) + tuple(y.layer(n)))
    diffs = []
    for n in range(lo, hi):
        xs, ys = x.layer(n + 1), y.layer(n)
        xt, yt = x.layer(n + 2), y.layer(n + 1)
        rows = len(xs) + len(ys)
        cols = len(xt) + len(yt)
        mat = [[{} for _ in range(cols)] for _ in range(rows)]
        dx = x.diff(n + 1)
        fm = f.mat(n + 1)
        dy = y.diff(n)
        for r in range(len(xs)):
            for c in range(len(xt)):
                mat[r][c] = alg.neg(dx[r][c])
            for c in range(len(yt)):
                mat[r][len(xt) + c] = dict(fm[r][c])
        for r in range(len(ys)):
            for c in range(len(yt)):
                mat[len(xs) + r][len(xt) + c] = dict(dy[r][c])
        diffs.append(mat)
    return make_complex(alg, lo, labels, diffs)


def direct_sum(parts) -> ProjComplex:
    parts = [p for p in parts if not p.is_zero()]
    if not parts:
        raise ValueError("empty direct sum needs an algebra; use zero_complex")
    alg = parts[0].algebra
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    labels = []
    for n in range(lo, hi + 1):
        layer = []
        for p in parts:
            layer.extend(p.layer(n))
        labels.append(tuple(layer))
    diffs = []
    for n in range(lo, hi):
        rows = sum(len(p.layer(n)) for p in parts)
        cols = sum(len(p.layer(n + 1)) for p in parts)
        mat = [[{} for _ in range(cols)] for _ in range(rows)]
        r0 = c0 = 0
        for p in parts:
            d = p.diff(n)
            for r in range(len(p.layer(n))):
                for c in range(len(p.layer(n + 1))):
                    mat[r0 + r][c0 + c] = dict(d[r][c])
            r0 += len(p.layer(n))
            c0 += len(p.layer(n + 1))
        diffs.append(mat)
    return make_complex(alg, lo, labels, diffs)


# ---------------------------------------------------------------------------
# reduction


def reduce(x: ProjComplex) -> ProjComplex:
    """Homotopy-equivalent complex whose differential entries all lie in
    the radical, by eliminating invertible entries one at a time."""
    if x.is_zero():
        return x
    alg = x.algebra
    labels = [list(layer) for layer in x.labels]
    diffs = [[[dict(e) for e in row] for row in mat] for mat in x.diffs]
    lo = x.lo

    while True:
        spot = None
        for k, mat in enumerate(diffs):
            for r, row in enumerate(mat):
                for c, e in enumerate(row):
                    if (
                        labels[k][r] == labels[k + 1][c]
                        and e.get((), alg.field.zero) != alg.field.zero
                    ):
                        spot = (k, r, c)
                        break
                if spot:
                    break
            if spot:
                break
        if spot is None:
            break
        k, r, c = spot
        u_inv = alg.inv_diag(labels[k][r], diffs[k][r][c])
        src_rest = [i for i in range(len(labels[k])) if i != r]
        tgt_rest = [j for j in range(len(labels[k + 1])) if j != c]
        old = diffs[k]
        new_mat = []
        for i in src_rest:
            row = []
            for j in tgt_rest:
                corr = alg.compose(alg.compose(old[i][c], u_inv), old[r][j])
                row.append(alg.add(old[i][j], alg.neg(corr)))
            new_mat.append(row)
        diffs[k] = new_mat
        if k > 0:
            diffs[k - 1] = [
                [e for j, e in enumerate(row) if j != r] for row in diffs[k - 1]
            ]
        if k + 1 < len(diffs):
            diffs[k + 1] = [row for i, row in enumerate(diffs[k + 1]) if i != c]
        labels[k].pop(r)
        labels[k + 1].pop(c)

    return make_complex(alg, lo, labels, diffs)


# ---------------------------------------------------------------------------
# chain maps and homotopy hom spaces


def _pair_slots(x, y, off=0):
    """Unknown slots for degreewise maps x^n -> y^(n+off): one coordinate
    per hom-basis path of each matrix entry."""
    alg = x.algebra
    slots = []
    if x.is_zero() or y.is_zero():
        return slots
    for n in range(min(x.lo, y.lo + off) - 1, max(x.hi, y.hi + off) + 2):
        xs, ys = x.layer(n), y.layer(n + off)
        for r, c in itertools.product(range(len(xs)), range(len(ys))):
            for p in alg.hom_basis(xs[r], ys[c]):
                slots.append((n, r, c, p))
    return slots


def _mats_from_vector(alg, x, y, off, slots, vec):
    mats = {}
    for (n, r, c, p), coeff in zip(slots, vec):
        if coeff == alg.field.zero:
            continue
        m = mats.setdefault(
            n,
            [
                [{} for _ in range(len(y.layer(n + off)))]
                for _ in range(len(x.layer(n)))
            ],
        )
        m[r][c][p] = alg.field.add(m[r][c].get(p, alg.field.zero), coeff)
    return mats


def chain_map_space(x: ProjComplex, y: ProjComplex):
    """Basis of chain maps x -> y as coefficient vectors over the slots."""
    alg = x.algebra
    if x.algebra is not y.algebra:
        raise ValueError("complexes over different algebras")
    slots = _pair_slots(x, y)
    if not slots:
        return slots, []
    index = {s: k for k, s in enumerate(slots)}
    eqs = {}  # one equation per (degree, r, c, target hom path)

    def eq_key(n, r, c, p):
        return eqs.setdefault((n, r, c, p), len(eqs))

    def put(row, col, cf):
        cells = coeff_rows.setdefault(row, {})
        cells[col] = alg.field.add(cells.get(col, alg.field.zero), cf)

    coeff_rows: dict[int, dict[int, object]] = {}
    for (n, r, c, p), col in index.items():
        el = {p: alg.field.one}
        # term f_n * d_y lands in degree-(n, n+1) squares
        dy = y.diff(n)
        for c2 in range(len(y.layer(n + 1))):
            for q, cf in alg.compose(el, dy[c][c2]).items():
                put(eq_key(n, r, c2, q), col, cf)
        # term -d_x * f_n lands in degree-(n-1, n) squares
        dx = x.diff(n - 1)
        for r2 in range(len(x.layer(n - 1))):
            for q, cf in alg.compose(dx[r2][r], el).items():
                put(eq_key(n - 1, r2, c, q), col, alg.field.neg(cf))
    mat = [[alg.field.zero] * len(slots) for _ in range(len(eqs))]
    for rk, cols in coeff_rows.items():
        for col, cf in cols.items():
            mat[rk][col] = alg.field.add(mat[rk][col], cf)
    basis = algebra_linalg_null(alg.field, mat, len(slots))
    return slots, basis


def homotopy_image(x: ProjComplex, y: ProjComplex):
    """Spanning vectors (over the chain-map slots) of maps dh + hd."""
    alg = x.algebra
    slots = _pair_slots(x, y)
    if not slots:
        return slots, []
    index = {s: k for k, s in enumerate(slots)}
    h_slots = _pair_slots(x, y, off=-1)
    vecs = []
    for n, r, c, p in h_slots:
        el = {p: alg.field.one}
        vec = [alg.field.zero] * len(slots)
        touched = False
        # h_n * d_y contributes to f_n
        dy = y.diff(n - 1)
        for c2 in range(len(y.layer(n))):
            prod = alg.compose(el, dy[c][c2])
            for q, cf in prod.items():
                k = index.get((n, r, c2, q))
                if k is not None:
                    vec[k] = alg.field.add(vec[k], cf)
                    touched = True
        # d_x * h_(n+1) contributes to f_n with h in degree n
        dx = x.diff(n - 1)
        for r2 in range(len(x.layer(n - 1))):
            prod = alg.compose(dx[r2][r], el)
            for q, cf in prod.items():
                k = index.get((n - 1, r2, c, q))
                if k is not None:
                    vec[k] = alg.field.add(vec[k], cf)
                    touched = True
        if touched:
            vecs.append(vec)
    return slots, vecs


def algebra_linalg_null(field, mat, width):
    from . import linalg

    if not mat:
        return [
            [field.one if i == j else field.zero for j in range(width)]
            for i in range(width)
        ]
    return linalg.null_space(field, mat)


class HomData:
    """Hom space of (x, y[n]) in the homotopy category: chain-map slot
    list, echelon rows spanning the null-homotopic maps, and coefficient
    vectors of representatives completing them to all chain maps."""

    __slots__ = ("x", "ys", "slots", "himg", "rep_vecs", "reps")

    def __init__(self, x, ys, slots, himg, rep_vecs, reps):
        self.x = x
        self.ys = ys
        self.slots = slots
        self.himg = himg
        self.rep_vecs = rep_vecs
        self.reps = reps

    @property
    def dim(self):
        return len(self.reps)


def hom_data(x: ProjComplex, y: ProjComplex, n: int = 0) -> HomData:
    alg = x.algebra
    cache = getattr(alg, "_hom_cache", None)
    if cache is None:
        cache = alg._hom_cache = {}
    ck = (x.key(), y.key(), n)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    ys = shift(y, n)
    if x.is_zero() or ys.is_zero():
        out = HomData(x, ys, [], [], [], [])
        cache[ck] = out
        return out
    slots, cmaps = chain_map_space(x, ys)
    _, himg = homotopy_image(x, ys)
    from . import linalg

    red, piv = linalg.rref(alg.field, himg) if himg else ([], [])
    himg_rows = red[: len(piv)]
    rep_vecs = []
    reps = []
    stack = list(himg_rows)
    for v in cmaps:
        if linalg.rank(alg.field, stack + [v]) > len(stack):
            stack.append(v)
            rep_vecs.append(v)
            reps.append(ChainMap(x, ys, _mats_from_vector(alg, x, ys, 0, slots, v)))
    out = HomData(x, ys, slots, himg_rows, rep_vecs, reps)
    cache[ck] = out
    return out


def hom_K(x: ProjComplex, y: ProjComplex, n: int = 0):
    """(dimension, chain-map representatives) of Hom up to homotopy from
    x to the n-fold shift of y."""
    hd = hom_data(x, y, n)
    return (hd.dim, hd.reps)


def hom_dim(x, y, n=0) -> int:
    return hom_data(x, y, n).dim


def identity_chain_map(x: ProjComplex) -> ChainMap:
    alg = x.algebra
    return ChainMap(
        x, x, {n: identity_matrix_over(alg, x.layer(n)) for n in x.degrees()}
    )


def compose_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """First f, then g; g must start where f lands."""
    alg = f.x.algebra
    mats = {}
    for n in f.x.degrees():
        rows = len(f.x.layer(n))
        cols = len(g.y.layer(n))
        if rows == 0 or cols == 0:
            continue
        mid = len(f.y.layer(n))
        out = [[{} for _ in range(cols)] for _ in range(rows)]
        if mid:
            fm, gm = f.mat(n), g.mat(n)
            for r in range(rows):
                for k in range(mid):
                    if not fm[r][k]:
                        continue
                    for c in range(cols):
                        if gm[k][c]:
                            out[r][c] = alg.add(
                                out[r][c], alg.compose(fm[r][k], gm[k][c])
                            )
        mats[n] = out
    return ChainMap(f.x, g.y, mats)


def chain_map_vector(hd: HomData, f: ChainMap):
    field = hd.x.algebra.field
    vec = []
    for n, r, c, p in hd.slots:
        vec.append(f.mat(n)[r][c].get(p, field.zero))
    return vec


def express_mod_homotopy(hd: HomData, f: ChainMap):
    """Coefficients of the chain map f over the representatives of hd,
    discarding any null-homotopic part."""
    from . import linalg

    field = hd.x.algebra.field
    vec = chain_map_vector(hd, f)
    if not hd.himg and not hd.rep_vecs:
        if any(c != field.zero for c in vec):
            raise ValueError("nonzero map in a zero hom space")
        return []
    rows = hd.himg + hd.rep_vecs
    sol = linalg.solve(field, linalg.transpose(rows), vec)
    if sol is None:
        raise ValueError("map does not lie in the chain-map space")
    return sol[len(hd.himg) :]


def happel_dim(x: ProjComplex, y: ProjComplex) -> int:
    """Alternating sum of degreewise module Hom dimensions."""
    alg = x.algebra
    cart = {
        (i, j): len(alg.hom_basis(i, j))
        for i in alg.vertices
        for j in alg.vertices
    }
    total = 0
    for i in x.degrees():
        for j in y.degrees():
            s = sum(cart[(a, b)] for a in x.layer(i) for b in y.layer(j))
            total += s if (i - j) % 2 == 0 else -s
    return total


# ---------------------------------------------------------------------------
# isomorphism testing


class IsoResult:
    __slots__ = ("ok", "witness", "chain_map")

    def __init__(self, ok, witness=None, chain_map=None):
        self.ok = ok
        self.witness = witness
        self.chain_map = chain_map

    def __bool__(self):
        return self.ok


def _unit_blocks_invertible(alg, x, y, mats):
    """Invertibility of a chain map between reduced complexes with equal
    label multisets: each degreewise identity-coefficient block must be
    invertible over the field, per label."""
    from . import linalg

    for n in x.degrees():
        xs, ys = x.layer(n), y.layer(n)
        m = mats.get(n)
        for lbl in set(xs):
            rows = [r for r, a in enumerate(xs) if a == lbl]
            cols = [c for c, b in enumerate(ys) if b == lbl]
            if len(rows) != len(cols):
                return False
            if m is None:
                return False
            block = [
                [m[r][c].get((), alg.field.zero) for c in cols] for r in rows
            ]
            if linalg.inverse(alg.field, block) is None:
                return False
    return True


def is_isomorphic(x: ProjComplex, y: ProjComplex, seed: int = 0) -> IsoResult:
    """Homotopy equivalence of reduced complexes, with certificate."""
    alg = x.algebra
    x, y = reduce(x), reduce(y)
    if x.is_zero() or y.is_zero():
        ok = x.is_zero() and y.is_zero()
        return IsoResult(ok, witness=None if ok else "one side is zero")
    if x.lo != y.lo or len(x.labels) != len(y.labels):
        return IsoResult(False, witness="degree ranges differ")
    for n in x.degrees():
        if sorted(x.layer(n)) != sorted(y.layer(n)):
            return IsoResult(False, witness=f"labels differ in degree {n}")
    slots, cmaps = chain_map_space(x, y)
    if not cmaps:
        return IsoResult(False, witness="no chain maps at all")
    rng = random.Random(seed)
    field = alg.field
    for _ in range(8):
        vec = [field.zero] * len(slots)
        for b in cmaps:
            c = field.of(rng.randrange(-9, 10))
            for k, e in enumerate(b):
                vec[k] = field.add(vec[k], field.mul(c, e))
        mats = _mats_from_vector(alg, x, y, 0, slots, vec)
        if _unit_blocks_invertible(alg, x, y, mats):
            return IsoResult(True, chain_map=ChainMap(x, y, mats))
    # deterministic fallback: symbolic determinant of the generic combination
    import sympy

    ts = sympy.symbols(f"t0:{len(cmaps)}")
    prod = sympy.Integer(1)
    char = getattr(field, "char", 0)
    for n in x.degrees():
        xs, ys = x.layer(n), y.layer(n)
        for lbl in set(xs):
            rows = [r for r, a in enumerate(xs) if a == lbl]
            cols = [c for c, b in enumerate(ys) if b == lbl]
            block = sympy.zeros(len(rows), len(cols))
            for a, bvec in enumerate(cmaps):
                mats = _mats_from_vector(alg, x, y, 0, slots, bvec)
                m = mats.get(n)
                if m is None:
                    continue
                for ri, r in enumerate(rows):
                    for ci, c in enumerate(cols):
                        coeff = m[r][c].get((), field.zero)
                        if coeff != field.zero:
                            block[ri, ci] += ts[a] * int(coeff) if char else ts[a] * sympy.Rational(coeff)
            det = block.det()
            if char:
                det = sympy.Poly(det, *ts, modulus=char) if det != 0 else det
                if det == 0 or det.is_zero:
                    return IsoResult(False, witness=f"degree {n} block {lbl} singular")
                prod = prod * det.as_expr()
            else:
                if sympy.simplify(det) == 0:
                    return IsoResult(False, witness=f"degree {n} block {lbl} singular")
    # all blocks generically invertible; find an explicit point
    for trial in range(200):
        vec = [field.zero] * len(slots)
        for b in cmaps:
            c = field.of(rng.randrange(-30, 31) + trial)
            for k, e in enumerate(b):
                vec[k] = field.add(vec[k], field.mul(c, e))
        mats = _mats_from_vector(alg, x, y, 0, slots, vec)
        if _unit_blocks_invertible(alg, x, y, mats):
            return IsoResult(True, chain_map=ChainMap(x, y, mats))
    raise AssertionError("generic isomorphism exists but no explicit point found")


def is_tilting(summands) -> bool:
    """Tilting test: m pairwise non-isomorphic summands with no homotopy
    homs in nonzero degrees."""
    if not summands:
        return False
    alg = summands[0].algebra
    m = len(alg.vertices)
    red = [reduce(s) for s in summands]
    if len(red) != m or any(s.is_zero() for s in red):
        return False
    for i, j in itertools.combinations(range(m), 2):
        if is_isomorphic(red[i], red[j]).ok:
            return False
    for a in red:
        for b in red:
            # b[n] overlaps a only for n in [b.lo - a.hi, b.hi - a.lo]
            for n in range(b.lo - a.hi - 1, b.hi - a.lo + 2):
                if n != 0 and hom_dim(a, b, n):
                    return False
    return True


# ---------------------------------------------------------------------------
# automorphisms on complexes, text format


def apply_automorphism_complex(aut, x: ProjComplex) -> ProjComplex:
    alg = x.algebra
    if x.is_zero():
        return x
    labels = [tuple(aut.vertex(i) for i in layer) for layer in x.labels]
    diffs = [
        [
            [algebra_mod.apply_automorphism(alg, aut, e) for e in row]
            for row in mat
        ]
        for mat in x.diffs
    ]
    return make_complex(alg, x.lo, labels, diffs)


def format_complex(x: ProjComplex) -> str:
    if x.is_zero():
        return "zero\n"
    alg = x.algebra
    lines = []
    for n in x.degrees():
        lines.append(f"deg {n}: " + ", ".join(f"P{i}" for i in x.layer(n)))
    for k, n in enumerate(range(x.lo, x.hi)):
        rows = []
        src, tgt = x.labels[k], x.labels[k + 1]
        for r, row in enumerate(x.diffs[k]):
            cells = []
            for c, e in enumerate(row):
                vec = alg.element_vector(src[r], tgt[c], e)
                cells.append(" ".join(str(v) for v in vec) if vec else ".")
            rows.append(", ".join(cells))
        lines.append(f"d {n}: " + " ; ".join(rows))
    return "\n".join(lines) + "\n"


def parse_complex(alg, text: str) -> ProjComplex:
    layers = {}
    mats = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "zero":
            return zero_complex(alg)
        head, _, rest = line.partition(":")
        head = head.strip()
        if head.startswith("deg"):
            n = int(head.split()[1])
            labs = [s.strip() for s in rest.split(",") if s.strip()]
            layers[n] = tuple(int(s.lstrip("P")) for s in labs)
        elif head.startswith("d"):
            n = int(head.split()[1])
            mats[n] = rest.strip()
        else:
            raise ValueError(f"unrecognized line: {line}")
    if not layers:
        raise ValueError("no degrees given")
    lo, hi = min(layers), max(layers)
    labels = [layers.get(n, ()) for n in range(lo, hi + 1)]
    from fractions import Fraction

    def scalar(s):
        return alg.field.of(Fraction(s)) if alg.field.char == 0 else alg.field.of(int(s))

    diffs = []
    for n in range(lo, hi):
        src, tgt = labels[n - lo], labels[n - lo + 1]
        mat = [[{} for _ in tgt] for _ in src]
        if n in mats and mats[n]:
            rows = [r.strip() for r in mats[n].split(";")]
            if len(rows) != len(src):
                raise ValueError(f"d {n}: expected {len(src)} rows")
            for r, rowtxt in enumerate(rows):
                cells = [c.strip() for c in rowtxt.split(",")]
                if len(cells) != len(tgt):
                    raise ValueError(f"d {n}: expected {len(tgt)} entries per row")
                for c, cell in enumerate(cells):
                    if cell in (".", "", "0"):
                        continue
                    vec = [scalar(s) for s in cell.split()]
                    basis = alg.hom_basis(src[r], tgt[c])
                    if len(vec) != len(basis):
                        raise ValueError(
                            f"d {n}: entry ({r},{c}) needs {len(basis)} coordinates"
                        )
                    mat[r][c] = alg.element_from_vector(src[r], tgt[c], vec)
        diffs.append(mat)
    return make_complex(alg, lo, labels, diffs)
