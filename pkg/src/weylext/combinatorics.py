"""Partitions, skew shapes, tableaux and the small combinatorial tools built on them.

Cells are addressed 1-based as ``(row, col)``.  A tableau stores its letters row by
row; within a row the letters sit in the cells of that row from left to right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod


def _strip(parts) -> tuple[int, ...]:
    parts = [int(x) for x in parts]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = _strip(self.parts)
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"`` or the exponent form ``"3^2,1"``; ``""``, ``"0"`` and ``"()"`` are empty."""
        text = text.strip().strip("()")
        if text in ("", "0", "-", "∅"):
            return cls(())
        parts: list[int] = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                raise ValueError(f"empty part in {text!r}")
            if "^" in tok:
                base, exp = tok.split("^", 1)
                parts.extend([int(base)] * int(exp))
            else:
                parts.append(int(tok))
        return cls(tuple(parts))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        # 1-based, zero beyond the last row
        if i < 1:
            raise IndexError(i)
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "0"

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ValueError(f"{self} has more than {n} rows")
        return self.parts + (0,) * (n - len(self.parts))

    def cells(self):
        for r, length in enumerate(self.parts, start=1):
            for c in range(1, length + 1):
                yield (r, c)


def as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return Partition.parse(p)
    return Partition(tuple(p))


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = field(default_factory=Partition)

    def __post_init__(self):
        outer, inner = as_partition(self.outer), as_partition(self.inner)
        if len(inner) > len(outer) or any(inner[i] > outer[i] for i in range(1, len(inner) + 1)):
            raise ValueError(f"{inner} is not contained in {outer}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    @classmethod
    def parse(cls, text: str) -> "SkewShape":
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(Partition.parse(a), Partition.parse(b))
        return cls(Partition.parse(text))

    @property
    def rows(self) -> tuple[tuple[int, int], ...]:
        """Per row ``(start_col, length)``; ``start_col`` is 1-based."""
        return tuple((self.inner[i] + 1, self.outer[i] - self.inner[i]) for i in range(1, len(self.outer) + 1))

    @property
    def row_lengths(self) -> tuple[int, ...]:
        return tuple(length for _, length in self.rows)

    @property
    def degree(self) -> int:
        return self.outer.degree - self.inner.degree

    @property
    def num_rows(self) -> int:
        return len(self.outer)

    @property
    def is_straight(self) -> bool:
        return self.inner.degree == 0

    def columns(self) -> list[list[int]]:
        """For each column (left to right) the rows containing it, top to bottom."""
        ncols = self.outer[1] if len(self.outer) else 0
        cols = []
        for c in range(1, ncols + 1):
            rows = [r for r in range(1, len(self.outer) + 1) if self.inner[r] < c <= self.outer[r]]
            if rows:
                cols.append(rows)
        return cols

    def column_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.columns())

    def contains(self, cell) -> bool:
        r, c = cell
        return 1 <= r <= len(self.outer) and self.inner[r] < c <= self.outer[r]

    def overlap(self, i: int) -> int:
        """Number of columns shared by rows ``i`` and ``i+1``."""
        lo = max(self.inner[i], self.inner[i + 1])
        hi = min(self.outer[i], self.outer[i + 1])
        return max(0, hi - lo)

    def __str__(self) -> str:
        if self.inner.degree == 0:
            return str(self.outer)
        return f"{self.outer}/{self.inner}"


def as_shape(s) -> SkewShape:
    if isinstance(s, SkewShape):
        return s
    if isinstance(s, str):
        return SkewShape.parse(s)
    return SkewShape(as_partition(s))


@dataclass(frozen=True)
class Tableau:
    shape: SkewShape
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if tuple(len(r) for r in rows) != self.shape.row_lengths:
            raise ValueError(f"row lengths {[len(r) for r in rows]} do not fit {self.shape}")
        object.__setattr__(self, "rows", rows)

    def weight(self, n: int) -> tuple[int, ...]:
        w = [0] * n
        for row in self.rows:
            for x in row:
                w[x - 1] += 1
        return tuple(w)

    def entry(self, cell) -> int:
        r, c = cell
        start = self.shape.inner[r] + 1
        return self.rows[r - 1][c - start]

    def is_standard(self) -> bool:
        for row in self.rows:
            if any(row[i] > row[i + 1] for i in range(len(row) - 1)):
                return False
        shape = self.shape
        for r in range(2, shape.num_rows + 1):
            start, length = shape.rows[r - 1]
            for c in range(start, start + length):
                if shape.contains((r - 1, c)) and self.entry((r - 1, c)) >= self.entry((r, c)):
                    return False
        return True

    def render(self) -> str:
        return " | ".join(render_row(r) for r in self.rows)


def render_row(letters) -> str:
    """Render a multiset of letters as ``1^2 2`` (empty row renders as ``-``)."""
    if not letters:
        return "-"
    out = []
    for x, grp in itertools.groupby(sorted(letters)):
        k = len(list(grp))
        out.append(f"{x}^{k}" if k > 1 else f"{x}")
    return " ".join(out)


def parse_row(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-"):
        return ()
    letters: list[int] = []
    for tok in text.split():
        if "^" in tok:
            x, k = tok.split("^", 1)
            letters.extend([int(x)] * int(k))
        else:
            letters.append(int(tok))
    return tuple(sorted(letters))


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, int], ...]   # (row length a_j, multiplicity p_j)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(b[1] for b in self.blocks)

    @property
    def ell(self) -> tuple[int, ...]:
        a, p = self.a, self.p
        return tuple(a[j] + sum(p[j + 1:]) for j in range(self.k))

    @property
    def hooks(self) -> tuple[int, ...]:
        return tuple(l + q for l, q in zip(self.ell, self.p))

    def block_start(self, j: int) -> int:
        """Number of rows above block ``j`` (0-based block index)."""
        return sum(self.p[:j])

    def partition(self) -> Partition:
        return Partition(tuple(x for a, q in self.blocks for x in [a] * q))


@dataclass(frozen=True)
class PositiveRoot:
    r: int
    s: int

    def __post_init__(self):
        if not 1 <= self.r < self.s:
            raise ValueError(f"need 1 <= r < s, got {self.r}, {self.s}")


def conjugate(p) -> Partition:
    p = as_partition(p)
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in p.parts if x >= c) for c in range(1, p.parts[0] + 1)))


def dominance_leq(p, q) -> bool:
    p, q = as_partition(p), as_partition(q)
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p} vs {q}")
    sp = sq = 0
    for i in range(1, max(len(p), len(q)) + 1):
        sp += p[i]
        sq += q[i]
        if sp > sq:
            return False
    return True


def dominance_leq_weights(u, v) -> bool:
    """Dominance on equal-length compositions via partial sums."""
    su = sv = 0
    for x, y in zip(u, v):
        su += x
        sv += y
        if su > sv:
            return False
    return True


def hook_length(p, cell) -> int:
    p = as_partition(p)
    r, c = cell
    if not (1 <= r <= len(p) and 1 <= c <= p[r]):
        raise ValueError(f"cell {cell} outside {p}")
    arm = p[r] - c
    leg = conjugate(p)[c] - r
    return arm + leg + 1


def block_decomposition(p) -> BlockDecomposition:
    p = as_partition(p)
    if not p.parts:
        raise ValueError("empty partition has no block decomposition")
    return BlockDecomposition(tuple((a, len(list(g))) for a, g in itertools.groupby(p.parts)))


def partitions(r: int, max_parts: int | None = None, max_part: int | None = None):
    """All partitions of ``r`` in reverse lexicographic order (a linear extension of dominance, largest first)."""
    max_part = r if max_part is None else max_part
    if r == 0:
        yield Partition(())
        return
    if max_parts == 0:
        return

    def rec(rem, bound, acc):
        if rem == 0:
            yield Partition(tuple(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for x in range(min(rem, bound), 0, -1):
            acc.append(x)
            yield from rec(rem - x, x, acc)
            acc.pop()

    yield from rec(r, max_part, [])


def skew_shapes(max_degree: int, max_rows: int) -> list[SkewShape]:
    """Skew shapes of degree ``1..max_degree`` with no empty row, one per column pattern.

    Shapes that differ only by empty columns or by sliding non-overlapping rows apart
    have the same columns (as sets of rows) and are listed once.
    """
    seen: dict = {}
    width = max_degree + max_rows - 1
    for size in range(1, max_rows * width + 1):
        for outer in partitions(size, max_parts=max_rows, max_part=width):
            for inner in _contained(outer):
                shape = SkewShape(outer, inner)
                if not 1 <= shape.degree <= max_degree or 0 in shape.row_lengths:
                    continue
                key = tuple(tuple(c) for c in shape.columns())
                seen.setdefault(key, shape)
    return sorted(seen.values(), key=lambda s: (s.degree, s.outer.parts, s.inner.parts))


def _contained(outer: Partition):
    def rec(i, bound, acc):
        if i > len(outer):
            yield Partition(tuple(acc))
            return
        for x in range(min(bound, outer[i]), -1, -1):
            yield from rec(i + 1, x, acc + [x])

    yield from rec(1, outer[1] if len(outer) else 0, [])


def compositions(r: int, n: int):
    """All weak compositions of ``r`` into ``n`` parts, lexicographically decreasing."""
    if n == 0:
        if r == 0:
            yield ()
        return
    for x in range(r, -1, -1):
        for rest in compositions(r - x, n - 1):
            yield (x,) + rest


def enumerate_standard_tableaux(shape, n: int, weight=None) -> list[Tableau]:
    """Fillings weakly increasing along rows and strictly increasing down columns.

    Order is lexicographic in the row tuples.  With ``weight`` only tableaux of that
    content are returned.
    """
    shape = as_shape(shape)
    if n < 1:
        raise ValueError("n must be >= 1")
    if weight is not None:
        weight = tuple(weight) + (0,) * (n - len(weight))
        if len(weight) != n or sum(weight) != shape.degree:
            return []
    rows_spec = shape.rows
    out: list[Tableau] = []
    counts = list(weight) if weight is not None else None

    def fill_row(r, rows):
        if r == len(rows_spec):
            out.append(Tableau(shape, tuple(rows)))
            return
        start, length = rows_spec[r]
        above = []
        for c in range(start, start + length):
            if r > 0 and shape.contains((r, c)):
                prev_start = shape.inner[r] + 1
                above.append(rows[r - 1][c - prev_start])
            else:
                above.append(0)
        row: list[int] = []

        def place(i, lo):
            if i == length:
                fill_row(r + 1, rows + [tuple(row)])
                return
            for x in range(max(lo, above[i] + 1), n + 1):
                if counts is not None:
                    if counts[x - 1] == 0:
                        continue
                    counts[x - 1] -= 1
                row.append(x)
                place(i + 1, x)
                row.pop()
                if counts is not None:
                    counts[x - 1] += 1

        place(0, 1)

    fill_row(0, [])
    return out


def kostka(shape, weight) -> int:
    shape = as_shape(shape)
    return len(enumerate_standard_tableaux(shape, max(len(weight), 1), weight))


def pieri_add_box(p) -> list[Partition]:
    p = as_partition(p)
    out = []
    parts = list(p.parts) + [0]
    for i in range(len(parts)):
        if i == 0 or parts[i - 1] > parts[i]:
            q = parts.copy()
            q[i] += 1
            out.append(Partition(tuple(q)))
    return out


def pieri_remove_box(p) -> list[Partition]:
    p = as_partition(p)
    out = []
    parts = list(p.parts)
    for i in range(len(parts)):
        if i == len(parts) - 1 or parts[i] > parts[i + 1]:
            q = parts.copy()
            q[i] -= 1
            out.append(Partition(tuple(q)))
    return out


def nu_tensor_one(nu) -> SkewShape:
    """The skew shape ``(nu_1+1, ..., nu_x+1, 1) / 1^x`` realizing ``K_nu ⊗ F``."""
    nu = as_partition(nu)
    x = len(nu)
    return SkewShape(Partition(tuple(a + 1 for a in nu.parts) + (1,)), Partition((1,) * x))


def add_first_column_box(nu) -> Partition:
    nu = as_partition(nu)
    return Partition(nu.parts + (1,))


def add_first_row_box(nu) -> Partition:
    nu = as_partition(nu)
    if not nu.parts:
        return Partition((1,))
    return Partition((nu.parts[0] + 1,) + nu.parts[1:])


def xi_shape(nu) -> SkewShape:
    """``a_1^(p_1+1) a_2^p_2 ... / (a_1 - 1)``: one box placed above the last box of the first row."""
    nu = as_partition(nu)
    a1 = nu.parts[0]
    return SkewShape(Partition((a1,) + nu.parts), Partition((a1 - 1,)))


def cyclic_sign(before: dict, after: dict) -> int:
    """Sign of the permutation of letters taking ``before[pos]`` to ``after[pos]``."""
    perm = {before[k]: after[k] for k in before}
    seen = set()
    sign = 1
    for start in perm:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def enumerate_Ti(blocks: BlockDecomposition) -> list[tuple[tuple[int, ...], Tableau, int]]:
    """Tableaux of shape ``nu ⊗ 1`` indexed by ``i`` with ``0 <= i_j <= p_j``, with their signs.

    The entries of the rightmost border strip of the canonical tableau are relocated
    cyclically: the ``i_j``-th entry of the last column of each block with ``i_j > 0``
    is removed and the entries below it move up; each removed entry fills the hole at
    the bottom of the previous such block, the entry of the lone box fills the last hole
    and the first removed entry goes to the lone box.
    """
    nu = blocks.partition()
    shape = nu_tensor_one(nu)
    x = len(nu)
    out = []
    for idx in itertools.product(*[range(q + 1) for q in blocks.p]):
        last = {r: r for r in range(1, x + 2)}    # row -> letter in its last cell
        hole = None
        first_removed = None
        for j, ij in enumerate(idx):
            if ij == 0:
                continue
            start = blocks.block_start(j)
            top, bottom = start + ij, start + blocks.p[j]
            removed = last[top]
            for r in range(top, bottom):
                last[r] = last[r + 1]
            if hole is None:
                first_removed = removed
            else:
                last[hole] = removed
            hole = bottom
        if hole is not None:
            last[hole] = x + 1
            last[x + 1] = first_removed
        rows = []
        for r in range(1, x + 1):
            rows.append(tuple(sorted((r,) * (nu[r] - 1) + (last[r],))))
        rows.append((last[x + 1],))
        sign = cyclic_sign({r: r for r in range(1, x + 2)}, last)
        out.append((tuple(idx), Tableau(shape, tuple(rows)), sign))
    return out


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % q for q in range(2, int(m ** 0.5) + 1))


def digit_tableau(p, prime: int) -> list[list[int]]:
    """Base-``prime`` digits of the rows of ``p``, most significant digit on the left."""
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    p = as_partition(p)

    def digits(x):
        d = []
        while x:
            d.append(x % prime)
            x //= prime
        return d[::-1]

    rows = [digits(x) for x in p.parts]
    width = max((len(r) for r in rows), default=0)
    return [[0] * (width - len(r)) + r for r in rows]


def hom_criterion(p, prime: int) -> bool:
    """Every digit strictly above and weakly right of a nonzero digit equals ``prime - 1``."""
    tab = digit_tableau(p, prime)
    for i, row in enumerate(tab):
        for c, d in enumerate(row):
            if d == 0:
                continue
            for i2 in range(i):
                if any(x != prime - 1 for x in tab[i2][c:]):
                    return False
    return True


def comp_factor_criterion(p, prime: int) -> bool:
    """Each digit column reads ``(prime-1), ..., (prime-1), d, 0, ..., 0`` from top to bottom."""
    tab = digit_tableau(p, prime)
    if not tab:
        return True
    for c in range(len(tab[0])):
        col = [row[c] for row in tab]
        k = 0
        while k < len(col) and col[k] == prime - 1:
            k += 1
        if any(x != 0 for x in col[k + 1:]):
            return False
    return True


def normalize_pair(w1, w2) -> tuple[Partition, Partition]:
    """Shift two dominant weights by the smallest common constant making both partitions."""
    w1, w2 = tuple(int(x) for x in w1), tuple(int(x) for x in w2)
    n = max(len(w1), len(w2))
    w1 = w1 + (0,) * (n - len(w1))
    w2 = w2 + (0,) * (n - len(w2))
    for w in (w1, w2):
        if any(w[i] < w[i + 1] for i in range(n - 1)):
            raise ValueError(f"weight {w} is not dominant")
    if sum(w1) != sum(w2):
        raise ValueError(f"degree mismatch: {w1} vs {w2}")
    c = max(0, -min(w1 + w2, default=0))
    return Partition(tuple(x + c for x in w1)), Partition(tuple(x + c for x in w2))


def root_of_pair(lam, mu) -> PositiveRoot | None:
    """The positive root ``mu - lam`` if it is one, else ``None``."""
    lam, mu = as_partition(lam), as_partition(mu)
    n = max(len(lam), len(mu))
    diff = [mu[i] - lam[i] for i in range(1, n + 1)]
    ups = [i + 1 for i, d in enumerate(diff) if d == 1]
    downs = [i + 1 for i, d in enumerate(diff) if d == -1]
    if len(ups) == 1 and len(downs) == 1 and sum(1 for d in diff if d) == 2 and ups[0] < downs[0]:
        return PositiveRoot(ups[0], downs[0])
    return None


def strip_common(lam, mu) -> tuple[Partition, Partition, int, int]:
    """Remove identical leading rows, then identical leading columns.

    Returns the stripped pair and the number of rows and columns removed.
    """
    lam, mu = as_partition(lam), as_partition(mu)
    rows = 0
    while len(lam) and len(mu) and lam.parts[0] == mu.parts[0]:
        lam, mu = Partition(lam.parts[1:]), Partition(mu.parts[1:])
        rows += 1
    cols = 0
    while len(lam) and len(mu) and len(lam) == len(mu):
        lam = Partition(tuple(x - 1 for x in lam.parts))
        mu = Partition(tuple(x - 1 for x in mu.parts))
        cols += 1
    return lam, mu, rows, cols


def product(xs) -> int:
    return prod(xs)
