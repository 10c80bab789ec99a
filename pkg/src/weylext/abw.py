"""Divided and exterior power modules, the symmetrizer ``d'`` and Weyl modules.

Every module here is a free Z-module with a weight-tagged basis on which the integral
Schur algebra acts.  The action is implemented once, through the basis elements
``xi_B`` of the Schur algebra: ``B`` is an ``n x n`` nonnegative integer matrix whose
column sums are the source weight and whose row sums are the target weight, and
``xi_B m`` is the coefficient of the monomial ``g^B`` in ``g . m`` for a generic matrix
``g``.  The raise/lower operators are particular ``xi_B``.

Basis labels:

* divided tensors ``D_a1 ⊗ D_a2 ⊗ ...``: a tuple of sorted letter tuples (one per factor);
* exterior tensors: a tuple of strictly increasing letter tuples;
* Weyl modules: the rows of a standard tableau;
* tensor products: a pair of labels.

Letters run over ``1..n``; matrices are indexed from 0 internally.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .combinatorics import (
    Partition,
    SkewShape,
    add_first_column_box,
    as_partition,
    nu_tensor_one,
    xi_shape,
    as_shape,
    compositions,
    conjugate,
    enumerate_standard_tableaux,
    parse_row,
    render_row,
)
from .zlinalg import IntMatrix, Lattice

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# sparse element helpers

def add_into(acc: dict, elem: dict, coef: int = 1) -> dict:
    if coef:
        for k, v in elem.items():
            nv = acc.get(k, 0) + coef * v
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
    return acc


def scale(elem: dict, c: int) -> dict:
    return {k: c * v for k, v in elem.items()} if c else {}


def content(elem: dict) -> int:
    """gcd of the coefficients (0 for the zero element)."""
    from math import gcd
    g = 0
    for v in elem.values():
        g = gcd(g, v)
    return g


def counts(letters, n: int) -> Weight:
    w = [0] * n
    for x in letters:
        w[x - 1] += 1
    return tuple(w)


def multinomial(parts) -> int:
    total, out = 0, 1
    for p in parts:
        total += p
        out *= comb(total, p)
    return out


def permutation_sign(seq) -> int:
    """Sign of the sorting permutation of distinct items, 0 if an item repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Schur algebra index matrices

def col_sums(B: Matrix) -> Weight:
    return tuple(sum(r[k] for r in B) for k in range(len(B)))


def row_sums(B: Matrix) -> Weight:
    return tuple(sum(r) for r in B)


def transpose(B: Matrix) -> Matrix:
    return tuple(zip(*B))


def diag(w: Weight) -> Matrix:
    n = len(w)
    return tuple(tuple(w[i] if i == j else 0 for j in range(n)) for i in range(n))


def lower_matrix(w: Weight, i: int, m: int) -> Matrix | None:
    """Index of ``E_{i+1,i}^(m)`` acting on weight ``w`` (``i`` is 1-based); None if ``w_i < m``."""
    if w[i - 1] < m:
        return None
    B = [list(r) for r in diag(w)]
    B[i - 1][i - 1] -= m
    B[i][i - 1] += m
    return tuple(tuple(r) for r in B)


def raise_matrix(w: Weight, i: int, m: int) -> Matrix | None:
    """Index of ``E_{i,i+1}^(m)`` acting on weight ``w``; None if ``w_{i+1} < m``."""
    if w[i] < m:
        return None
    B = [list(r) for r in diag(w)]
    B[i][i] -= m
    B[i - 1][i] += m
    return tuple(tuple(r) for r in B)


@lru_cache(maxsize=None)
def _bounded_compositions(total: int, caps: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if not caps:
        return ((),) if total == 0 else ()
    out = []
    rest_cap = sum(caps[1:])
    for x in range(max(0, total - rest_cap), min(total, caps[0]) + 1):
        for tail in _bounded_compositions(total - x, caps[1:]):
            out.append((x,) + tail)
    return tuple(out)


def matrices_with_margins(rows: Weight, cols: Weight) -> list[Matrix]:
    """All nonnegative integer matrices with the given row and column sums."""
    n = len(rows)
    if sum(rows) != sum(cols):
        return []
    out = []

    def rec(k, remaining, acc):
        if k == len(cols):
            if not any(remaining):
                out.append(tuple(tuple(acc[j][i] for j in range(len(cols))) for i in range(n)))
            return
        for col in _bounded_compositions(cols[k], tuple(remaining)):
            rec(k + 1, tuple(r - c for r, c in zip(remaining, col)), acc + [col])

    rec(0, tuple(rows), [])
    return out


def _splits(B: Matrix, colsum: Weight):
    """All ``B1 <= B`` (entrywise) with column sums ``colsum``; yields (B1, B - B1)."""
    n = len(B)
    cols_options = []
    for k in range(n):
        caps = tuple(B[i][k] for i in range(n))
        opts = _bounded_compositions(colsum[k], caps)
        if not opts:
            return
        cols_options.append(opts)
    for choice in itertools.product(*cols_options):
        B1 = tuple(tuple(choice[k][i] for k in range(n)) for i in range(n))
        B2 = tuple(tuple(B[i][k] - B1[i][k] for k in range(n)) for i in range(n))
        yield B1, B2


# ---------------------------------------------------------------------------
# modules

class BasedModule:
    """Free Z-module with weight basis and Schur algebra action (abstract)."""

    n: int
    degree: int
    descriptor: str

    def __init__(self):
        self._wb: dict[Weight, list] = {}
        self._act_cache: dict = {}

    # subclasses implement these
    def _weight_basis(self, w: Weight) -> list:
        raise NotImplementedError

    def weight_of(self, label) -> Weight:
        raise NotImplementedError

    def _act_label(self, B: Matrix, label) -> dict:
        raise NotImplementedError

    def max_weights(self) -> list[Weight]:
        """Dominant weights bounding every dominant weight of the module from above."""
        raise NotImplementedError

    def render(self, label) -> str:
        return str(label)

    # generic
    def weight_basis(self, w: Weight) -> list:
        w = tuple(w)
        if len(w) != self.n:
            raise ValueError(f"weight {w} has wrong length for n={self.n}")
        got = self._wb.get(w)
        if got is None:
            got = self._wb[w] = self._weight_basis(w) if sum(w) == self.degree and min(w, default=0) >= 0 else []
        return got

    def weights(self) -> list[Weight]:
        return [w for w in compositions(self.degree, self.n) if self.weight_basis(w)]

    @property
    def basis(self) -> list:
        return [b for w in self.weights() for b in self.weight_basis(w)]

    @property
    def rank(self) -> int:
        return sum(len(self.weight_basis(w)) for w in compositions(self.degree, self.n))

    def act_label(self, B: Matrix, label) -> dict:
        key = (B, label)
        got = self._act_cache.get(key)
        if got is None:
            if col_sums(B) != self.weight_of(label):
                got = {}
            else:
                got = self._act_label(B, label)
            self._act_cache[key] = got
        return got

    def act(self, B: Matrix, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            add_into(out, self.act_label(B, lab), c)
        return out

    def operator_on(self, direction: str, i: int, m: int, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            w = self.weight_of(lab)
            B = lower_matrix(w, i, m) if direction == "lower" else raise_matrix(w, i, m)
            if B is not None:
                add_into(out, self.act_label(B, lab), c)
        return out

    def operator(self, direction: str, i: int, m: int) -> IntMatrix:
        """Matrix of a divided raise/lower operator on the full basis (columns = sources)."""
        basis = self.basis
        index = {b: k for k, b in enumerate(basis)}
        cols = []
        for b in basis:
            img = self.operator_on(direction, i, m, {b: 1})
            cols.append({index[k]: v for k, v in img.items()})
        return IntMatrix.from_sparse_columns(cols, len(basis))

    def check_weights(self, elem: dict, w: Weight) -> bool:
        return all(self.weight_of(k) == tuple(w) for k in elem)


class DividedModule(BasedModule):
    """``D_{a_1} ⊗ ... ⊗ D_{a_s}`` on ``n`` letters."""

    def __init__(self, lengths, n: int):
        super().__init__()
        self.lengths = tuple(int(x) for x in lengths)
        if any(x < 0 for x in self.lengths):
            raise ValueError("negative length")
        self.n = n
        self.degree = sum(self.lengths)
        self.descriptor = "D(" + ",".join(map(str, self.lengths)) + ")"

    def weight_of(self, label) -> Weight:
        return counts((x for f in label for x in f), self.n)

    def _weight_basis(self, w):
        # columns of the margin matrix are the factor contents
        out = []
        for M in matrices_with_margins(w, self.lengths):
            out.append(tuple(tuple(i + 1 for i in range(self.n) for _ in range(M[i][j])) for j in range(len(self.lengths))))
        return sorted(out)

    def _act_label(self, B, label):
        n = self.n
        facs = [counts(f, n) for f in label]
        out: dict = {}
        rem = [list(r) for r in B]

        def rec(f, acc, coef):
            if f == len(facs):
                key = tuple(acc)
                nv = out.get(key, 0) + coef
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
                return
            c = facs[f]
            per_col = []
            for k in range(n):
                caps = tuple(rem[i][k] for i in range(n))
                opts = _bounded_compositions(c[k], caps)
                if not opts:
                    return
                if f == len(facs) - 1:
                    if c[k] != sum(caps):
                        return
                    opts = (caps,)
                per_col.append(opts)
            for choice in itertools.product(*per_col):
                d = [sum(choice[k][i] for k in range(n)) for i in range(n)]
                cf = coef
                for i in range(n):
                    if d[i]:
                        cf *= multinomial([choice[k][i] for k in range(n)])
                for k in range(n):
                    for i in range(n):
                        rem[i][k] -= choice[k][i]
                rec(f + 1, acc + [tuple(i + 1 for i in range(n) for _ in range(d[i]))], cf)
                for k in range(n):
                    for i in range(n):
                        rem[i][k] += choice[k][i]

        rec(0, [], 1)
        return out

    def max_weights(self):
        parts = sorted((x for x in self.lengths if x), reverse=True)
        if len(parts) > self.n:
            return []
        return [tuple(parts) + (0,) * (self.n - len(parts))]

    def render(self, label) -> str:
        return " | ".join(render_row(f) for f in label)

    def parse(self, text: str):
        rows = tuple(parse_row(t) for t in text.split("|"))
        if tuple(len(r) for r in rows) != self.lengths:
            raise ValueError(f"{text!r} does not fit {self.descriptor}")
        return rows

    def canonical(self) -> tuple:
        """Row ``j`` filled with letter ``j`` (needs ``n >= number of factors``)."""
        return tuple(tuple([j + 1] * a) for j, a in enumerate(self.lengths))

    def x_of(self, A: Matrix) -> tuple:
        """The basis element ``xi_A`` applied to the canonical element: factor ``j`` reads column ``j`` of ``A``."""
        return tuple(tuple(i + 1 for i in range(self.n) for _ in range(A[i][j])) for j in range(len(self.lengths)))

    def matrix_of(self, label) -> Matrix:
        cols = [counts(f, self.n) for f in label] + [(0,) * self.n] * (self.n - len(label))
        return tuple(tuple(cols[j][i] for j in range(self.n)) for i in range(self.n))


class ExteriorModule(BasedModule):
    """``Λ_{c_1} ⊗ ... ⊗ Λ_{c_s}`` on ``n`` letters."""

    def __init__(self, lengths, n: int):
        super().__init__()
        self.lengths = tuple(int(x) for x in lengths)
        self.n = n
        self.degree = sum(self.lengths)
        self.descriptor = "L(" + ",".join(map(str, self.lengths)) + ")"

    def weight_of(self, label) -> Weight:
        return counts((x for f in label for x in f), self.n)

    def _weight_basis(self, w):
        if any(x > len(self.lengths) for x in w):
            return []
        out = []

        def rec(j, remaining, acc):
            if j == len(self.lengths):
                if not any(remaining):
                    out.append(tuple(acc))
                return
            avail = [i + 1 for i in range(self.n) if remaining[i]]
            for sub in itertools.combinations(avail, self.lengths[j]):
                r2 = list(remaining)
                for x in sub:
                    r2[x - 1] -= 1
                rec(j + 1, r2, acc + [sub])

        rec(0, list(w), [])
        return sorted(out)

    def _act_label(self, B, label):
        n = self.n
        rem = [list(r) for r in B]
        out: dict = {}

        def rec(f, pos, cur, acc, sign):
            if f == len(label):
                key = tuple(acc)
                nv = out.get(key, 0) + sign
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
                return
            fac = label[f]
            if pos == len(fac):
                s = permutation_sign(cur)
                if s:
                    rec(f + 1, 0, [], acc + [tuple(sorted(cur))], sign * s)
                return
            k = fac[pos] - 1
            for i in range(n):
                if rem[i][k] and (i + 1) not in cur:
                    rem[i][k] -= 1
                    rec(f, pos + 1, cur + [i + 1], acc, sign)
                    rem[i][k] += 1

        rec(0, 0, [], [], 1)
        return out

    def max_weights(self):
        c = conjugate(sorted(self.lengths, reverse=True)).parts
        return [tuple(c) + (0,) * (self.n - len(c))] if len(c) <= self.n else []

    def render(self, label) -> str:
        return " | ".join("^".join(map(str, f)) if f else "-" for f in label)


class TensorModule(BasedModule):
    def __init__(self, left: BasedModule, right: BasedModule):
        super().__init__()
        if left.n != right.n:
            raise ValueError("letter counts differ")
        self.left, self.right = left, right
        self.n = left.n
        self.degree = left.degree + right.degree
        self.descriptor = f"({left.descriptor} ⊗ {right.descriptor})"

    def weight_of(self, label) -> Weight:
        a, b = self.left.weight_of(label[0]), self.right.weight_of(label[1])
        return tuple(x + y for x, y in zip(a, b))

    def _weight_basis(self, w):
        out = []
        for w1 in itertools.product(*[range(x + 1) for x in w]):
            if sum(w1) != self.left.degree:
                continue
            w2 = tuple(x - y for x, y in zip(w, w1))
            b1 = self.left.weight_basis(w1)
            if not b1:
                continue
            b2 = self.right.weight_basis(w2)
            out.extend((x, y) for x in b1 for y in b2)
        return out

    def _act_label(self, B, label):
        out: dict = {}
        w1 = self.left.weight_of(label[0])
        for B1, B2 in _splits(B, w1):
            e1 = self.left.act_label(B1, label[0])
            if not e1:
                continue
            e2 = self.right.act_label(B2, label[1])
            for k1, c1 in e1.items():
                for k2, c2 in e2.items():
                    key = (k1, k2)
                    nv = out.get(key, 0) + c1 * c2
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    def max_weights(self):
        out = []
        for a in self.left.max_weights():
            for b in self.right.max_weights():
                out.append(tuple(x + y for x, y in zip(a, b)))
        return out

    def render(self, label) -> str:
        return f"{self.left.render(label[0])} ⊗ {self.right.render(label[1])}"


class DualModule(BasedModule):
    """Contravariant dual: ``xi_B`` acts as the transpose of ``xi_{B^T}``."""

    def __init__(self, inner: BasedModule):
        super().__init__()
        self.inner = inner
        self.n = inner.n
        self.degree = inner.degree
        self.descriptor = f"dual({inner.descriptor})"

    def weight_of(self, label) -> Weight:
        return self.inner.weight_of(label)

    def _weight_basis(self, w):
        return self.inner.weight_basis(w)

    def _act_label(self, B, label):
        BT = transpose(B)
        out: dict = {}
        for a in self.inner.weight_basis(row_sums(B)):
            c = self.inner.act_label(BT, a).get(label, 0)
            if c:
                out[a] = c
        return out

    def max_weights(self):
        return self.inner.max_weights()

    def render(self, label) -> str:
        return self.inner.render(label) + "*"


def contravariant_dual(M: BasedModule) -> BasedModule:
    if isinstance(M, DualModule):
        return M.inner
    return DualModule(M)


def build_divided(row_lengths, n: int) -> DividedModule:
    return DividedModule(row_lengths, n)


def build_exterior(column_lengths, n: int) -> ExteriorModule:
    return ExteriorModule(column_lengths, n)


def tensor(m1: BasedModule, m2: BasedModule) -> TensorModule:
    return TensorModule(m1, m2)


# ---------------------------------------------------------------------------
# the symmetrizer and Weyl modules

def default_n(shape: SkewShape) -> int:
    return max(shape.num_rows, 1)


def shape_cells_by_row(shape: SkewShape) -> list[list[int]]:
    """Column index (0-based among nonempty columns) of each cell, row by row."""
    colnames = []
    ncols = shape.outer[1] if shape.num_rows else 0
    for c in range(1, ncols + 1):
        if any(shape.contains((r, c)) for r in range(1, shape.num_rows + 1)):
            colnames.append(c)
    pos = {c: k for k, c in enumerate(colnames)}
    return [[pos[c] for c in range(start, start + length)] for start, length in shape.rows]


class Symmetrizer:
    """``d'``: comultiply each row into single letters (left to right), then wedge each column top to bottom."""

    def __init__(self, shape, n: int | None = None):
        self.shape = as_shape(shape)
        self.n = default_n(self.shape) if n is None else n
        self.source = DividedModule(self.shape.row_lengths, self.n)
        self.target = ExteriorModule(self.shape.column_lengths(), self.n)
        self._cells = shape_cells_by_row(self.shape)
        self._cache: dict = {}

    def apply_label(self, label) -> dict:
        got = self._cache.get(label)
        if got is not None:
            return got
        ncols = len(self.target.lengths)
        columns: list[list[int]] = [[] for _ in range(ncols)]
        out: dict = {}
        rows = [list(r) for r in label]

        def rec(r, pos, remaining):
            if r == len(rows):
                sign = 1
                for col in columns:
                    sign *= permutation_sign(col)
                key = tuple(tuple(sorted(c)) for c in columns)
                nv = out.get(key, 0) + sign
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
                return
            if pos == len(rows[r]):
                nxt = r + 1
                rec(nxt, 0, dict(_multiset(rows[nxt])) if nxt < len(rows) else {})
                return
            col = columns[self._cells[r][pos]]
            for x in sorted(remaining):
                if remaining[x] and x not in col:
                    remaining[x] -= 1
                    col.append(x)
                    rec(r, pos + 1, remaining)
                    col.pop()
                    remaining[x] += 1

        if rows:
            rec(0, 0, dict(_multiset(rows[0])))
        else:
            out[()] = 1
        self._cache[label] = out
        return out

    def apply(self, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            add_into(out, self.apply_label(lab), c)
        return out

    def matrix(self, w: Weight) -> tuple[list, list, IntMatrix]:
        """``d'`` restricted to weight ``w``: (source labels, target labels, matrix)."""
        src = self.source.weight_basis(w)
        tgt = self.target.weight_basis(w)
        index = {t: i for i, t in enumerate(tgt)}
        cols = [{index[k]: v for k, v in self.apply_label(s).items()} for s in src]
        return src, tgt, IntMatrix.from_sparse_columns(cols, len(tgt))


def _multiset(letters):
    d: dict = {}
    for x in letters:
        d[x] = d.get(x, 0) + 1
    return d


def symmetrizer(shape, n: int | None = None) -> Symmetrizer:
    return Symmetrizer(shape, n)


class WeylModule(BasedModule):
    """``K_{λ/μ}``: the image of ``d'``, with basis ``d'(X_T)`` for standard ``T``."""

    def __init__(self, shape, n: int | None = None):
        super().__init__()
        self.shape = as_shape(shape)
        self.n = default_n(self.shape) if n is None else n
        if self.n < 1:
            raise ValueError("n must be >= 1")
        self.degree = self.shape.degree
        self.dprime = Symmetrizer(self.shape, self.n)
        self.exterior = self.dprime.target
        self.divided = self.dprime.source
        self.descriptor = f"K({self.shape})"
        self._lattices: dict[Weight, tuple[Lattice, list]] = {}

    def weight_of(self, label) -> Weight:
        return counts((x for r in label for x in r), self.n)

    def _weight_basis(self, w):
        return [t.rows for t in enumerate_standard_tableaux(self.shape, self.n, w)]

    def _lattice(self, w: Weight):
        got = self._lattices.get(w)
        if got is None:
            basis = self.weight_basis(w)
            lat = Lattice()
            for k, t in enumerate(basis):
                lat.insert(self.dprime.apply_label(t), {k: 1})
            if lat.relations:
                raise ArithmeticError(f"standard basis of {self.descriptor} dependent at weight {w}")
            got = self._lattices[w] = (lat, basis)
        return got

    def embed(self, elem: dict) -> dict:
        """Image in the exterior tensor."""
        out: dict = {}
        for t, c in elem.items():
            add_into(out, self.dprime.apply_label(t), c)
        return out

    def from_exterior(self, vec: dict, w: Weight | None = None) -> dict:
        """Standard-basis coordinates of an element of the image of ``d'``."""
        if not vec:
            return {}
        if w is None:
            w = self.exterior.weight_of(next(iter(vec)))
        lat, basis = self._lattice(tuple(w))
        combo = lat.express(vec)
        if combo is None:
            raise ArithmeticError(f"vector is not in the image of d' for {self.descriptor}")
        return {basis[k]: c for k, c in combo.items() if c}

    def straighten(self, elem: dict) -> dict:
        """Coordinates of ``d'(elem)`` in the standard basis (``elem`` a divided-tensor element)."""
        img = self.dprime.apply(elem)
        if not img:
            return {}
        return self.from_exterior(img)

    def _act_label(self, B, label):
        img = self.exterior.act(B, self.dprime.apply_label(label))
        if not img:
            return {}
        return self.from_exterior(img, row_sums(B))

    def max_weights(self):
        lengths = sorted(self.shape.row_lengths, reverse=True)
        lengths = [x for x in lengths if x]
        if len(lengths) > self.n:
            return []
        return [tuple(lengths) + (0,) * (self.n - len(lengths))]

    def canonical_weight(self) -> Weight:
        rl = self.shape.row_lengths
        if len(rl) > self.n:
            raise ValueError(f"n={self.n} is smaller than the number of rows of {self.shape}")
        return tuple(rl) + (0,) * (self.n - len(rl))

    def render(self, label) -> str:
        return " | ".join(render_row(r) for r in label)


def weyl_module(shape, n: int | None = None) -> WeylModule:
    return WeylModule(shape, n)


def schur_module(shape, n: int | None = None) -> BasedModule:
    """``L`` as the contravariant dual of ``K``."""
    return DualModule(WeylModule(shape, n))


def straighten(shape, element, n: int | None = None) -> dict:
    """Standard-basis coordinates of ``d'(element)``; ``element`` maps row tuples to integers."""
    return weyl_module(shape, n).straighten(element)


def relations_generators(shape, n: int | None = None) -> list[tuple]:
    """Generators of ``ker d'`` as divided-tensor labels (each with coefficient 1).

    For adjacent rows ``i, i+1`` of lengths ``p, q`` sharing ``r`` columns, the element
    with row ``i`` equal to ``i^p``, row ``i+1`` equal to ``i^t (i+1)^(q-t)`` and every other
    row canonical, for ``q - r + 1 <= t <= q``.
    """
    shape = as_shape(shape)
    rl = shape.row_lengths
    out = []
    for i in range(1, shape.num_rows):
        q, r = rl[i], shape.overlap(i)
        for t in range(q - r + 1, q + 1):
            rows = [tuple([j + 1] * a) for j, a in enumerate(rl)]
            rows[i] = tuple([i] * t + [i + 1] * (q - t))
            out.append(tuple(rows))
    return out


def relation_matrices(shape) -> list[tuple[int, int, int]]:
    """The relation generators as ``(i, t, q)``: move ``t`` letters ``i+1 -> i`` in row ``i+1`` of length ``q``."""
    shape = as_shape(shape)
    rl = shape.row_lengths
    out = []
    for i in range(1, shape.num_rows):
        q, r = rl[i], shape.overlap(i)
        for t in range(q - r + 1, q + 1):
            out.append((i, t, q))
    return out


def module_closure(M: BasedModule, seeds: list[dict], weights=None) -> dict[Weight, Lattice]:
    """Per weight, the lattice spanned by ``xi_B s`` over seeds ``s`` and all ``B``.

    This is the submodule generated by the seeds (no saturation is applied).
    """
    weights = M.weights() if weights is None else weights
    out: dict[Weight, Lattice] = {}
    for u in weights:
        lat = Lattice(track=False)
        index = {b: k for k, b in enumerate(M.weight_basis(u))}
        for s in seeds:
            if not s:
                continue
            w = M.weight_of(next(iter(s)))
            for B in matrices_with_margins(u, w):
                img = M.act(B, s)
                if img:
                    lat.insert({index[k]: v for k, v in img.items()})
        out[u] = lat
    return out


# ---------------------------------------------------------------------------
# maps

class ModuleMap:
    """Sparse matrix between two modules: ``images[source_label]`` is an element of the target."""

    def __init__(self, source: BasedModule, target: BasedModule, images: dict | None = None, rule=None):
        self.source, self.target = source, target
        self.images = dict(images or {})
        self._rule = rule
        self.equivariant: bool | None = None

    def image(self, label) -> dict:
        got = self.images.get(label)
        if got is None:
            got = self.images[label] = self._rule(label) if self._rule else {}
        return got

    def apply(self, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            add_into(out, self.image(lab), c)
        return out

    def matrix(self, w: Weight | None = None) -> IntMatrix:
        src = self.source.basis if w is None else self.source.weight_basis(w)
        tgt = self.target.basis if w is None else self.target.weight_basis(w)
        index = {t: i for i, t in enumerate(tgt)}
        return IntMatrix.from_sparse_columns([{index[k]: v for k, v in self.image(s).items()} for s in src], len(tgt))

    def check_equivariance(self, weights=None, orders=None) -> bool:
        """Commutation with every simple divided raise/lower operator on the given source weights."""
        weights = self.source.weights() if weights is None else weights
        ok = True
        for w in weights:
            for lab in self.source.weight_basis(w):
                if any(self.target.weight_of(k) != tuple(w) for k in self.image(lab)):
                    ok = False
                for i in range(1, self.source.n):
                    for m in (orders or range(1, self.source.degree + 1)):
                        for d in ("lower", "raise"):
                            lhs = self.apply(self.source.operator_on(d, i, m, {lab: 1}))
                            rhs = self.target.operator_on(d, i, m, self.image(lab))
                            if lhs != rhs:
                                ok = False
        self.equivariant = ok
        return ok


def weyl_projection(K: WeylModule) -> ModuleMap:
    """``D_shape -> K_shape`` induced by ``d'``."""
    return ModuleMap(K.divided, K, rule=lambda lab: K.straighten({lab: 1}))


def weyl_embedding(K: WeylModule) -> ModuleMap:
    return ModuleMap(K, K.exterior, rule=lambda lab: dict(K.dprime.apply_label(lab)))


def polarize(label: tuple, moves) -> dict:
    """Apply single-piece polarizations to a divided-tensor basis element.

    Each move ``(src, dst, letter)`` (rows 0-based) splits a degree one piece off row
    ``src`` by comultiplication (coefficient 1); ``letter=None`` sums over every letter
    present in that row.  Once all pieces are split off they are multiplied into their
    rows ``dst``, each contributing the new multiplicity of its letter there.
    """
    out: dict = {}

    def split(k, rows, pieces):
        if k == len(moves):
            rows2 = [list(r) for r in rows]
            coef = 1
            for (_, dst, _), x in zip(moves, pieces):
                rows2[dst].append(x)
                coef *= rows2[dst].count(x)
            key = tuple(tuple(sorted(r)) for r in rows2)
            add_into(out, {key: coef})
            return
        src, _, letter = moves[k]
        choices = sorted(set(rows[src])) if letter is None else ([letter] if letter in rows[src] else [])
        for x in choices:
            rows2 = [list(r) for r in rows]
            rows2[src].remove(x)
            split(k + 1, rows2, pieces + [x])

    split(0, [list(r) for r in label], [])
    return out


def polarization_map(source: DividedModule, target: DividedModule, moves) -> ModuleMap:
    """The divided-tensor map given by ``polarize`` with unspecified letters."""
    moves = [(s, d, None) for s, d, *_ in moves]
    return ModuleMap(source, target, rule=lambda lab: polarize(lab, moves))


def iota_label(lam) -> tuple:
    """Row 1 holds ``1^(lam_1 - 1)`` and row ``t >= 2`` holds ``(t-1) t^(lam_t - 1)``.

    Its image under ``d'`` in ``K_{lam/1}`` is where the canonical generator of ``K_nu``
    goes when every row hands one degree one piece to the next.
    """
    lam = as_partition(lam)
    rows = [(1,) * (lam[1] - 1)]
    for t in range(2, len(lam) + 1):
        rows.append((t - 1,) + (t,) * (lam[t] - 1))
    return tuple(rows)


def move_last_row_first(label) -> tuple:
    return (label[-1],) + tuple(label[:-1])


def move_first_row_last(label) -> tuple:
    return tuple(label[1:]) + (label[0],)


def pieri_maps(nu, n: int | None = None) -> dict:
    """The one-box maps around ``K_nu ⊗ F`` (realized as ``K_{nu ⊗ 1}``), with ``lam = nu + (1)``:

    * ``inj``: ``K_nu -> K_{lam/1}``, canonical generator to ``d'(iota_label(lam))``;
    * ``surj``: ``K_{nu ⊗ 1} -> K_lam``, the same divided tensor under the coarser ``d'``;
    * ``pi``: ``K_{nu ⊗ 1} -> K_xi``, the lone box moved above the end of the first row;
    * ``xi_to_lam``: ``K_xi -> K_lam``, the box moved back to the bottom.
    """
    nu = as_partition(nu)
    if not nu.parts:
        raise ValueError("nu must be nonempty")
    lam = add_first_column_box(nu)
    n = len(lam) if n is None else n
    Kn, KL = WeylModule(nu, n), WeylModule(SkewShape(lam, Partition((1,))), n)
    KS, Kl, Kx = WeylModule(nu_tensor_one(nu), n), WeylModule(lam, n), WeylModule(xi_shape(nu), n)
    iota = KL.straighten({iota_label(lam): 1})
    return {
        "inj": ModuleMap(Kn, KL, rule=lambda lab: KL.act(Kn.divided.matrix_of(lab), iota)),
        "surj": ModuleMap(KS, Kl, rule=lambda lab: Kl.straighten({lab: 1})),
        "pi": ModuleMap(KS, Kx, rule=lambda lab: Kx.straighten({move_last_row_first(lab): 1})),
        "xi_to_lam": ModuleMap(Kx, Kl, rule=lambda lab: Kl.straighten({move_first_row_last(lab): 1})),
    }
