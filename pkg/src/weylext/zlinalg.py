"""Exact linear algebra over the integers.

Everything is plain Python ``int``; no floating point anywhere.  Dense matrices are
lists of rows.  Sparse vectors are ``{index: value}`` dicts with no zero values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


class IntMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols: int | None = None):
        self.rows = [[int(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols, nrows: int) -> "IntMatrix":
        cols = [list(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def from_sparse_columns(cls, cols, nrows: int) -> "IntMatrix":
        m = cls.zeros(nrows, len(cols))
        for j, c in enumerate(cols):
            for i, x in c.items():
                m.rows[i][j] = x
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows!r}, ncols={self.ncols})"

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows], self.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)], self.nrows)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix([[sum(a * b for a, b in zip(r, c) if a) for c in cols] for r in self.rows], other.ncols)

    def apply(self, v) -> list[int]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(r, v) if a) for r in self.rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def dump(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows)

    @classmethod
    def load(cls, text: str) -> "IntMatrix":
        rows = [[int(x) for x in line.split()] for line in text.strip().splitlines() if line.strip()]
        return cls(rows)

    def sparse_rows(self) -> list[dict[int, int]]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]


def determinant(a: IntMatrix) -> int:
    """Fraction-free Bareiss elimination."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    m = [r[:] for r in a.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroupType:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion if x != 1)
        if any(x <= 1 for x in t):
            raise ValueError(f"bad invariant factor in {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_factors(cls, free_rank: int, factors) -> "AbelianGroupType":
        return cls(free_rank, tuple(sorted(x for x in factors if x > 1)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        o = 1
        for x in self.torsion:
            o *= x
        return o

    def p_rank(self, p: int) -> int:
        return sum(1 for x in self.torsion if x % p == 0)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}" if self.free_rank > 1 else "Z"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: list[int] = field(default_factory=list)


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms: ``U @ A @ V == S``.

    Pivot choice is the smallest nonzero absolute value, ties broken by the first
    position in row-major order, so the output is reproducible.
    """
    m, n = a.shape
    s = [r[:] for r in a.rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in s:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            rs, rd = s[src], s[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] += q * rs[k]
            us, ud = u[src], u[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        if q:
            for r in s:
                if r[src]:
                    r[dst] += q * r[src]
            for r in v:
                if r[src]:
                    r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        clean = False
            if clean:
                bad = None
                p = s[t][t]
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if s[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remaining entry of row/column t onto the diagonal
            best = (abs(s[t][t]), t, t)
            for i in range(t + 1, m):
                if s[i][t] and abs(s[i][t]) < best[0]:
                    best = (abs(s[i][t]), i, t)
            for j in range(t + 1, n):
                if s[t][j] and abs(s[t][j]) < best[0]:
                    best = (abs(s[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    factors = [s[i][i] for i in range(min(m, n)) if s[i][i]]
    return SmithDecomposition(IntMatrix(u, m), IntMatrix(s, n), IntMatrix(v, n), factors)


def _dense_invariant_factors(rows: list[list[int]], ncols: int) -> list[int]:
    if not rows or not ncols:
        return []
    return snf(IntMatrix(rows, ncols)).invariant_factors


def invariant_factors(rows, ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors of a matrix given as sparse dict rows (or an IntMatrix).

    Unit pivots are eliminated sparsely first; the remaining core goes through ``snf``.
    """
    if isinstance(rows, IntMatrix):
        rows = rows.sparse_rows()
    rows = [dict(r) for r in rows if r]
    units = 0
    # column -> set of row ids holding it
    live = {i: r for i, r in enumerate(rows)}
    cols: dict[int, set[int]] = {}
    for i, r in live.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    while True:
        pick = None
        for i, r in live.items():
            for j, x in r.items():
                if x in (1, -1):
                    cand = (len(cols[j]) * len(r), i, j)
                    if pick is None or cand < pick:
                        pick = cand
                    break
            if pick is not None and pick[0] <= 2:
                break
        if pick is None:
            break
        _, i, j = pick
        prow = live.pop(i)
        for k in prow:
            cols[k].discard(i)
        x = prow[j]
        for i2 in list(cols[j]):
            r2 = live[i2]
            q = r2[j] * x  # x = +-1 so x^-1 = x
            for k, y in prow.items():
                nv = r2.get(k, 0) - q * y
                if nv:
                    if k not in r2:
                        cols[k].add(i2)
                    r2[k] = nv
                elif k in r2:
                    del r2[k]
                    cols[k].discard(i2)
            if not r2:
                del live[i2]
        del cols[j]
        units += 1
    rest = [r for r in live.values() if r]
    if not rest:
        return [1] * units
    used = sorted({j for r in rest for j in r})
    pos = {j: k for k, j in enumerate(used)}
    dense = []
    for r in rest:
        row = [0] * len(used)
        for j, x in r.items():
            row[pos[j]] = x
        dense.append(row)
    return [1] * units + _dense_invariant_factors(dense, len(used))


def rank(rows, ncols: int | None = None) -> int:
    return len(invariant_factors(rows, ncols))


class Lattice:
    """Incrementally maintained echelon basis of a sublattice of Z^N.

    Rows are sparse dicts whose leading (smallest) index is the pivot; pivots are
    distinct and positive.  Each row carries a ``tag``: its expression as a sparse
    combination of the inserted generators.  Combining rows uses extended gcd steps,
    which are unimodular, so inserting vectors that reduce to zero yields a basis of
    the relation lattice among the generators.
    """

    __slots__ = ("rows", "relations", "count", "track")

    def __init__(self, track: bool = True):
        self.rows: dict[int, tuple[dict, dict]] = {}
        self.relations: list[dict] = []
        self.count = 0
        self.track = track

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec: dict, tag: dict | None = None) -> bool:
        """Add a generator; returns True if the rank increased."""
        v = {k: x for k, x in vec.items() if x}
        if tag is None:
            tag = {self.count: 1} if self.track else {}
        else:
            tag = dict(tag)
        self.count += 1
        rows = self.rows
        while v:
            p = min(v)
            b = v[p]
            row = rows.get(p)
            if row is None:
                if b < 0:
                    v = {k: -x for k, x in v.items()}
                    tag = {k: -x for k, x in tag.items()}
                rows[p] = (v, tag)
                return True
            r, rtag = row
            a = r[p]
            if b % a == 0:
                q = b // a
                _iaxpy(v, r, -q)
                if self.track:
                    _iaxpy(tag, rtag, -q)
                continue
            g, s, t = xgcd(a, b)
            new_r = _lin(r, s, v, t)
            v = _lin(r, -(b // g), v, a // g)
            if self.track:
                new_tag = _lin(rtag, s, tag, t)
                tag = _lin(rtag, -(b // g), tag, a // g)
            else:
                new_tag = {}
            rows[p] = (new_r, new_tag)
        if self.track and tag:
            self.relations.append(tag)
        return False

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Reduce by the echelon rows; returns (remainder, combination used).

        The remainder is zero exactly when ``vec`` lies in the lattice, and then
        ``vec = sum(coef * generator)`` with the returned combination (in tag space).
        """
        v = {k: x for k, x in vec.items() if x}
        combo: dict = {}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None or v[p] % row[0][p]:
                return v, combo
            q = v[p] // row[0][p]
            _iaxpy(v, row[0], -q)
            if self.track:
                _iaxpy(combo, row[1], q)
        return v, combo

    def coordinates(self, vec: dict) -> dict | None:
        """Coefficients of ``vec`` on the echelon rows, keyed by pivot; ``None`` if not in the lattice.

        Only meaningful once no more vectors will be inserted (inserting can rewrite rows).
        """
        v = {k: x for k, x in vec.items() if x}
        out: dict = {}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None or v[p] % row[0][p]:
                return None
            q = v[p] // row[0][p]
            out[p] = q
            _iaxpy(v, row[0], -q)
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: dict) -> dict | None:
        rem, combo = self.reduce(vec)
        return None if rem else combo

    def basis(self) -> list[dict]:
        return [self.rows[p][0] for p in sorted(self.rows)]

    def tagged_basis(self) -> list[tuple[dict, dict]]:
        return [self.rows[p] for p in sorted(self.rows)]


def _iaxpy(y: dict, x: dict, a: int) -> None:
    """``y += a x`` in place, dropping zeros."""
    if not a:
        return
    get = y.get
    for k, v in x.items():
        nv = get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            del y[k]


def _lin(x: dict, a: int, y: dict, b: int) -> dict:
    out: dict = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            nv = out.get(k, 0) + b * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return {k: v for k, v in out.items() if v}


def sparse_columns(a: IntMatrix) -> list[dict]:
    return [{i: a.rows[i][j] for i in range(a.nrows) if a.rows[i][j]} for j in range(a.ncols)]


def kernel_sparse(columns: list[dict]) -> list[dict]:
    """Basis of the integer relation lattice among the given sparse columns."""
    lat = Lattice()
    for j, c in enumerate(columns):
        lat.insert(c, {j: 1})
    return lat.relations


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x in Z^n : A x = 0}`` (automatically saturated)."""
    rel = kernel_sparse(sparse_columns(a))
    rel = hermite_reduce(rel)
    return IntMatrix.from_sparse_columns(rel, a.ncols)


def hermite_reduce(vectors: list[dict]) -> list[dict]:
    """Echelon basis of the lattice spanned by ``vectors`` (deterministic, leading entries positive)."""
    lat = Lattice(track=False)
    for v in vectors:
        lat.insert(v)
    return lat.basis()


def solve(a: IntMatrix, b) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    b = list(b)
    if len(b) != a.nrows:
        raise ValueError(f"rhs length {len(b)} != {a.nrows} rows")
    lat = Lattice()
    for j, c in enumerate(sparse_columns(a)):
        lat.insert(c, {j: 1})
    combo = lat.express({i: x for i, x in enumerate(b) if x})
    if combo is None:
        return None
    x = [0] * a.ncols
    for j, c in combo.items():
        x[j] = c
    return x


def cokernel(a: IntMatrix) -> AbelianGroupType:
    f = invariant_factors(a)
    return AbelianGroupType.from_factors(a.nrows - len(f), f)


def subquotient(ambient_rank: int, numerator: IntMatrix, denominator: IntMatrix) -> AbelianGroupType:
    """Isomorphism type of ``span(numerator) / span(denominator)`` (generators as columns)."""
    if numerator.nrows != ambient_rank or denominator.nrows != ambient_rank:
        raise ValueError("generator length does not match ambient rank")
    return subquotient_sparse(sparse_columns(numerator), sparse_columns(denominator))


def subquotient_sparse(numerator: list[dict], denominator: list[dict]) -> AbelianGroupType:
    num = Lattice()
    basis = hermite_reduce(numerator)
    for k, v in enumerate(basis):
        num.insert(v, {k: 1})
    rows = []
    for d in denominator:
        combo = num.express(d)
        if combo is None:
            raise ValueError("denominator is not contained in numerator")
        if combo:
            rows.append(combo)
    f = invariant_factors(rows, len(basis))
    return AbelianGroupType.from_factors(len(basis) - len(f), f)


def solution_group_mod(rows, ncols: int, modulus: int) -> list[int]:
    """Cyclic orders of ``{x in (Z/m)^ncols : A x = 0 mod m}``.

    With invariant factors ``d_i`` of ``A`` the group is the sum of ``Z/gcd(d_i, m)`` and
    ``(Z/m)^(ncols - rank)``; trivial summands are dropped.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    f = invariant_factors(rows, ncols)
    orders = [gcd(d, modulus) for d in f] + [modulus] * (ncols - len(f))
    return sorted(o for o in orders if o > 1)
