"""Hom and Ext between polynomial GL_n modules over the integers.

Three independent Hom solvers are provided:

* ``hom_group``: maps commuting with every simple divided raise/lower operator,
  solved as an integer kernel over all weight spaces (small modules only);
* ``hom_presented``: for a Weyl module given by generators and relations,
  ``Hom(K, N)`` is the set of ``x`` in the canonical weight space of ``N`` killed by the
  relation elements;
* ``hom_from_weight_space``: the map ``D_v -> N`` determined by the image of the
  canonical generator.

Ext groups come from projective resolutions by truncated divided-power modules
(``ext_groups``) or, for exterior powers, from the explicit comultiplication
resolution (``exterior_ext_groups``).

Truncation.  Let ``Pi`` be the set of dominant weights below (in dominance) the highest
weights of source and target.  Both modules are modules for the quotient of the Schur
algebra by the ideal generated by weights outside ``Pi``, and Ext over that quotient
agrees with Ext over the Schur algebra.  The projective cover of weight ``v`` in the
quotient is ``D_v`` modulo the kernel of

    ``X_A  ->  (xi_A t)_t``,   ``t`` running over the ``v``-weight basis of ``Λ_{ν~}``

for every maximal ``ν`` in ``Pi``.  When the source is a Weyl module ``K_λ`` every
syzygy is filtered by Weyl modules with highest weight above ``λ``, so generators are
only searched for at dominant weights ``≥ λ``.  A rank identity with Kostka numbers is
checked on every truncated projective weight space that gets used.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field

from .abw import (
    BasedModule,
    DividedModule,
    ExteriorModule,
    ModuleMap,
    WeylModule,
    add_into,
    diag,
    matrices_with_margins,
)
from .combinatorics import (
    Partition,
    as_shape,
    conjugate,
    dominance_leq_weights,
    kostka,
    partitions,
)
from .zlinalg import (
    AbelianGroupType,
    Lattice,
    invariant_factors,
    kernel_sparse,
    solution_group_mod,
)

Weight = tuple[int, ...]


class ExtFinitenessError(ArithmeticError):
    """A higher Ext group came out with positive free rank."""


class TruncationError(ArithmeticError):
    """A truncated projective failed its Kostka rank check."""


@dataclass(frozen=True)
class ExtResult:
    source: str
    target: str
    i: int
    group: AbelianGroupType
    n: int
    length: int

    def to_dict(self) -> dict:
        return {"lambda": _bare(self.source), "mu": _bare(self.target), "n": self.n, "i": self.i,
                "free_rank": self.group.free_rank, "torsion": list(self.group.torsion)}


def _bare(descriptor: str) -> str:
    # "K(2,1)" -> "2,1"; other descriptors are kept whole
    if descriptor.startswith("K(") and descriptor.endswith(")"):
        return descriptor[2:-1]
    return descriptor


# ---------------------------------------------------------------------------
# Hom solvers

def hom_group(M: BasedModule, N: BasedModule, orders=None) -> list[ModuleMap]:
    """Lattice basis of maps commuting with all simple divided raise/lower operators."""
    if M.n != N.n or M.degree != N.degree:
        raise ValueError("modules differ in n or degree")
    orders = list(orders or range(1, M.degree + 1))
    unknowns = []
    for w in M.weights():
        tb = N.weight_basis(w)
        for b in M.weight_basis(w):
            for c in tb:
                unknowns.append((b, c))
    uindex = {u: k for k, u in enumerate(unknowns)}
    by_source: dict = {}
    for b, c in unknowns:
        by_source.setdefault(b, []).append(c)
    cols: list[dict] = [{} for _ in unknowns]
    eqs: dict = {}

    def eq(key):
        got = eqs.get(key)
        if got is None:
            got = eqs[key] = len(eqs)
        return got

    # every source element constrains f(op b), even when f(b) itself is forced to vanish
    for b in M.basis:
        for d in ("lower", "raise"):
            for i in range(1, M.n):
                for m in orders:
                    img = M.operator_on(d, i, m, {b: 1})
                    # f(op b)
                    for b2, coef in img.items():
                        for c in by_source.get(b2, []):
                            e = eq((b, d, i, m, c))
                            col = cols[uindex[(b2, c)]]
                            col[e] = col.get(e, 0) + coef
                    # op f(b)
                    for c in by_source.get(b, []):
                        for c2, coef in N.operator_on(d, i, m, {c: 1}).items():
                            e = eq((b, d, i, m, c2))
                            col = cols[uindex[(b, c)]]
                            col[e] = col.get(e, 0) - coef
    cols = [{k: v for k, v in c.items() if v} for c in cols]
    out = []
    for rel in _canonical_basis(kernel_sparse(cols)):
        images: dict = {}
        for k, v in rel.items():
            b, c = unknowns[k]
            images.setdefault(b, {})[c] = v
        out.append(ModuleMap(M, N, images))
    return out


def _canonical_basis(vectors: list[dict]) -> list[dict]:
    lat = Lattice(track=False)
    for v in vectors:
        lat.insert(v)
    return lat.basis()


def hom_from_weight_space(v: Weight, N: BasedModule, x: dict) -> ModuleMap:
    """The map ``D_v -> N`` sending the canonical generator to ``x`` (weight ``v``).

    It is ``X_A -> xi_A x``; the result is equivariant because ``X_A = xi_A C_v``.
    """
    v = tuple(v)
    if any(N.weight_of(k) != v for k in x):
        raise ValueError(f"element is not of weight {v}")
    D = DividedModule(v, N.n)
    return ModuleMap(D, N, rule=lambda lab: N.act(D.matrix_of(lab), x))


def relation_index_matrices(shape, n: int) -> list:
    """``A`` with ``X_A`` the relation generators of ``K_shape``, as Schur algebra indices."""
    shape = as_shape(shape)
    rl = shape.row_lengths
    alpha = tuple(rl) + (0,) * (n - len(rl))
    out = []
    for i in range(1, shape.num_rows):
        q, r = rl[i], shape.overlap(i)
        for t in range(q - r + 1, q + 1):
            A = [list(row) for row in diag(alpha)]
            A[i - 1][i] = t
            A[i][i] = q - t
            out.append(tuple(tuple(row) for row in A))
    return out


def _relation_system(shape, N: BasedModule):
    shape = as_shape(shape)
    if shape.num_rows > N.n:
        raise ValueError(f"n={N.n} too small for {shape}")
    rl = shape.row_lengths
    alpha = tuple(rl) + (0,) * (N.n - len(rl))
    basis = N.weight_basis(alpha)
    cols: list[dict] = [{} for _ in basis]
    eqs: dict = {}
    for ri, A in enumerate(relation_index_matrices(shape, N.n)):
        for k, b in enumerate(basis):
            for lab, c in N.act_label(A, b).items():
                key = eqs.setdefault((ri, lab), len(eqs))
                cols[k][key] = c
    return alpha, basis, cols, len(eqs)


def hom_presented(shape, N: BasedModule) -> list[dict]:
    """Basis of ``Hom(K_shape, N)``, each map given by the image of the canonical generator."""
    alpha, basis, cols, _ = _relation_system(shape, N)
    return [{basis[k]: v for k, v in rel.items()} for rel in _canonical_basis(kernel_sparse(cols))]


def hom_presented_mod(shape, N: BasedModule, modulus: int) -> list[int]:
    """Cyclic orders of ``Hom(K_shape, N ⊗ Z/m)`` (trivial summands dropped)."""
    alpha, basis, cols, neq = _relation_system(shape, N)
    rows: list[dict] = [{} for _ in range(neq)]
    for k, col in enumerate(cols):
        for e, c in col.items():
            rows[e][k] = c
    return solution_group_mod(rows, len(basis), modulus)


def hom_mod_m(source, N: BasedModule, modulus: int) -> int:
    """Number of ``Z/m`` summands of the mod-``m`` Hom group (the dimension when ``m`` is prime).

    ``source`` is a shape (or a Weyl module), whose presentation is used.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    shape = source.shape if isinstance(source, WeylModule) else as_shape(source)
    return sum(1 for o in hom_presented_mod(shape, N, modulus) if o == modulus)


@dataclass
class Presentation:
    shape: object
    n: int
    divided: DividedModule
    kernel: dict = field(default_factory=dict)     # weight -> list of D-elements (lattice basis)
    image_rank: dict = field(default_factory=dict)


def presentation(shape, n: int | None = None, weights=None) -> Presentation:
    """``0 -> R -> D_shape -> K_shape -> 0`` with ``R`` the saturated kernel of ``d'`` per weight."""
    K = WeylModule(shape, n)
    D = K.divided
    pres = Presentation(K.shape, K.n, D)
    for w in (weights if weights is not None else D.weights()):
        src = D.weight_basis(w)
        cols = [K.dprime.apply_label(s) for s in src]
        rel = _canonical_basis(kernel_sparse(cols))
        pres.kernel[w] = [{src[k]: v for k, v in r.items()} for r in rel]
        pres.image_rank[w] = len(src) - len(rel)
    return pres


# ---------------------------------------------------------------------------
# truncated projectives

def dominant_weights(r: int, n: int) -> list[Weight]:
    return [p.padded(n) for p in partitions(r, max_parts=n)]


def ideal_below(maxima, r: int, n: int) -> list[Weight]:
    return [w for w in dominant_weights(r, n) if any(dominance_leq_weights(w, m) for m in maxima)]


def maximal_elements(ws) -> list[Weight]:
    ws = sorted(set(ws), reverse=True)
    return [w for w in ws if not any(v != w and dominance_leq_weights(w, v) for v in ws)]


class TruncatedAlgebra:
    """Truncated projectives ``P(v)`` for the ideal of dominant weights below ``maxima``."""

    def __init__(self, n: int, r: int, maxima, check: bool = True):
        self.n, self.r = n, r
        self.maxima = maximal_elements(tuple(m) for m in maxima)
        self.pi = ideal_below(self.maxima, r, n)
        self.pi_set = set(self.pi)
        self.check = check
        self.test_modules = [ExteriorModule(conjugate(Partition(m)).parts, n) for m in self.maxima]
        self._divided: dict = {}
        self._phi: dict = {}
        self._images: dict = {}
        self._coords: dict = {}
        self._checked: set = set()

    def divided(self, v: Weight) -> DividedModule:
        got = self._divided.get(v)
        if got is None:
            got = self._divided[v] = DividedModule(v, self.n)
        return got

    def phi_label(self, v: Weight, label) -> dict:
        """Image of a ``D_v`` basis element under the faithful map."""
        key = (v, label)
        got = self._phi.get(key)
        if got is not None:
            return got
        A = self.divided(v).matrix_of(label)
        out: dict = {}
        for mi, T in enumerate(self.test_modules):
            for t in T.weight_basis(v):
                for lab, c in T.act_label(A, t).items():
                    out[(mi, t, lab)] = c
        self._phi[key] = out
        return out

    def phi(self, v: Weight, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            add_into(out, self.phi_label(v, lab), c)
        return out

    def image(self, v: Weight, u: Weight) -> Lattice:
        """Echelon basis of the image of ``(D_v)_u``: a lattice isomorphic to ``P(v)_u``."""
        got = self._images.get((v, u))
        if got is None:
            got = Lattice(track=False)
            for lab in self.divided(v).weight_basis(u):
                got.insert(self.phi_label(v, lab))
            self._images[(v, u)] = got
        return got

    def coords_label(self, v: Weight, label) -> dict:
        """Coordinates of a ``D_v`` basis element in ``P(v)``, keyed by echelon pivots."""
        key = (v, label)
        got = self._coords.get(key)
        if got is None:
            u = self.divided(v).weight_of(label)
            got = self.image(v, u).coordinates(self.phi_label(v, label))
            if got is None:
                raise ArithmeticError(f"image of {label} missing from P({v})")
            self._coords[key] = got
        return got

    def coords(self, v: Weight, elem: dict) -> dict:
        out: dict = {}
        for lab, c in elem.items():
            add_into(out, self.coords_label(v, lab), c)
        return out

    def expected_rank(self, v: Weight, u: Weight) -> int:
        return sum(kostka(Partition(k), u) * kostka(Partition(k), v) for k in self.pi)

    def verify(self, v: Weight, u: Weight):
        if not self.check or (v, u) in self._checked:
            return
        got = self.image(v, u).rank
        want = self.expected_rank(v, u)
        if got != want:
            raise TruncationError(f"P({v})_{u}: rank {got}, expected {want}")
        self._checked.add((v, u))


class TruncatedResolution:
    """Projective resolution of ``M`` by truncated ``P(v)``, built greedily weight by weight.

    ``levels[k]`` lists the weights of the summands of ``P_k``; ``gens[k][s]`` is the
    image of the generator of summand ``s`` of ``P_k``: an element of ``M`` for ``k = 0``
    and a dict ``summand -> D-element`` of ``P_{k-1}`` otherwise.
    """

    def __init__(self, M: BasedModule, alg: TruncatedAlgebra, search_weights: list[Weight],
                 seed: int | None = None):
        self.M = M
        self.alg = alg
        # with a seed, kernel bases are shuffled and mixed, giving a different resolution
        self.rng = random.Random(seed) if seed is not None else None
        self.search = sorted(search_weights, reverse=True)
        self.levels: list[list[Weight]] = []
        self.gens: list[list] = []
        self._add_level(self._augmentation_kernel())

    # element helpers for P_k
    def _act_P(self, k: int, B, z: dict) -> dict:
        out: dict = {}
        for s, Y in z.items():
            img = self.alg.divided(self.levels[k][s]).act(B, Y)
            if img:
                out[s] = img
        return out

    def _coords_P(self, k: int, z: dict) -> dict:
        out: dict = {}
        for s, Y in z.items():
            for key, c in self.alg.coords(self.levels[k][s], Y).items():
                out[(s, key)] = c
        return out

    def _augmentation_kernel(self):
        """Weight spaces of ``M`` at the search weights, as (vector, element) pairs."""
        out = {}
        for u in self.search:
            out[u] = [({lab: 1}, {lab: 1}) for lab in self.M.weight_basis(u)]
        return out

    def _differential_image(self, k: int, s: int, lab) -> dict:
        """``d`` of the basis element ``lab`` of the ``s``-th summand ``D`` of ``P_k``, in coordinates."""
        A = self.alg.divided(self.levels[k][s]).matrix_of(lab)
        g = self.gens[k][s]
        if k == 0:
            return self.M.act(A, g)
        return self._coords_P(k - 1, self._act_P(k - 1, A, g))

    def _kernel(self, k: int) -> dict:
        """Per search weight, generators of ``ker(P_k -> P_{k-1})`` as (coords, element) pairs."""
        out = {}
        for u in self.search:
            span = []
            images = []
            for s, v in enumerate(self.levels[k]):
                self.alg.verify(v, u)
                for lab in self.alg.divided(v).weight_basis(u):
                    span.append((s, lab))
                    images.append(self._differential_image(k, s, lab))
            rels = kernel_sparse(images)
            pairs = []
            for rel in rels:
                z: dict = {}
                for idx, c in rel.items():
                    s, lab = span[idx]
                    z.setdefault(s, {})
                    add_into(z[s], {lab: c})
                z = {s: Y for s, Y in z.items() if Y}
                coords = self._coords_P(k, z)
                if coords:
                    pairs.append((coords, z))
            out[u] = pairs
        return out

    def _add_level(self, kernel: dict) -> bool:
        """Choose generators of the submodule whose weight spaces are given; False if zero."""
        k = len(self.levels)
        weights: list[Weight] = []
        gens: list = []
        for u in self.search:
            pairs = kernel.get(u, [])
            if not pairs:
                continue
            if self.rng is not None:
                pairs = self._scramble(pairs, k)
            zlat = Lattice()
            for idx, (vec, _) in enumerate(pairs):
                zlat.insert(vec, {idx: 1})
            G = Lattice(track=False)
            for w, g in zip(weights, gens):
                for B in matrices_with_margins(u, w):
                    G.insert(self._coords_any(k, self._act_any(k, B, g)))
            for vec, tag in zlat.tagged_basis():
                if G.contains(vec):
                    continue
                elem: dict = {}
                for idx, c in tag.items():
                    _merge(elem, pairs[idx][1], c, k)
                weights.append(u)
                gens.append(elem)
                for B in matrices_with_margins(u, u):
                    G.insert(self._coords_any(k, self._act_any(k, B, elem)))
        if not weights:
            return False
        self.levels.append(weights)
        self.gens.append(gens)
        return True

    def _scramble(self, pairs: list, k: int) -> list:
        pairs = list(pairs)
        self.rng.shuffle(pairs)
        out = [pairs[0]]
        # add a multiple of the previous unmixed vector: a unit triangular change of basis
        for (pv, pe), (vec, elem) in zip(pairs, pairs[1:]):
            c = self.rng.choice((0, 0, 0, 1))
            vec2 = dict(vec)
            add_into(vec2, pv, c)
            elem2: dict = {}
            _merge(elem2, elem, 1, k)
            _merge(elem2, pe, c, k)
            out.append((vec2, elem2))
        return out

    # "any" = element of M (k == 0) or of P_{k-1}
    def _act_any(self, k, B, g):
        return self.M.act(B, g) if k == 0 else self._act_P(k - 1, B, g)

    def _coords_any(self, k, g):
        return g if k == 0 else self._coords_P(k - 1, g)

    def extend(self, length: int):
        """Make sure ``P_0 .. P_length`` exist (fewer if the resolution terminates)."""
        while len(self.levels) <= length:
            if self.levels and not self.levels[-1]:
                break
            if not self._add_level(self._kernel(len(self.levels) - 1)):
                self.levels.append([])
                self.gens.append([])
                break
        return self

    def check_complex(self) -> bool:
        """``d_{k} d_{k+1} = 0`` on the generators."""
        for k in range(1, len(self.levels)):
            for s, g in enumerate(self.gens[k]):
                total: dict = {}
                for s2, Y in g.items():
                    for lab, c in Y.items():
                        add_into(total, self._differential_image(k - 1, s2, lab), c)
                if total:
                    return False
        return True


def _merge(acc: dict, z: dict, c: int, k: int):
    if k == 0:
        add_into(acc, z, c)
        return
    for s, Y in z.items():
        acc.setdefault(s, {})
        add_into(acc[s], Y, c)
        if not acc[s]:
            del acc[s]


def _hom_complex_matrix(res: TruncatedResolution, k: int, N: BasedModule):
    """Columns of ``Hom(P_k, N) -> Hom(P_{k+1}, N)``; returns (columns, dim source)."""
    src = [(s, lab) for s, v in enumerate(res.levels[k]) for lab in N.weight_basis(v)]
    if k + 1 >= len(res.levels):
        return [{} for _ in src], len(src)
    tgt_index: dict = {}
    for s2, v in enumerate(res.levels[k + 1]):
        for lab in N.weight_basis(v):
            tgt_index[(s2, lab)] = len(tgt_index)
    # for each summand s of P_k: which generators of P_{k+1} touch it
    touching: dict = {}
    for s2, g in enumerate(res.gens[k + 1]):
        for s, Y in g.items():
            touching.setdefault(s, []).append((s2, Y))
    cols = []
    for s, lab in src:
        col: dict = {}
        for s2, Y in touching.get(s, []):
            Dv = res.alg.divided(res.levels[k][s])
            for ylab, c in Y.items():
                for nl, nc in N.act_label(Dv.matrix_of(ylab), lab).items():
                    key = tgt_index[(s2, nl)]
                    col[key] = col.get(key, 0) + c * nc
        cols.append({k2: v for k2, v in col.items() if v})
    return cols, len(src)


def _cohomology(cols_prev, dim_mid: int, cols_next) -> AbelianGroupType:
    """``ker(next) / im(prev)`` with ``prev`` given by columns into the middle term."""
    rank_next = len(invariant_factors(_rows_of(cols_next)))
    f = invariant_factors(_rows_of(cols_prev)) if cols_prev is not None else []
    return AbelianGroupType.from_factors(dim_mid - rank_next - len(f), f)


def _rows_of(cols: list[dict]) -> list[dict]:
    # invariant factors are transpose-invariant, so columns can serve as rows
    return [c for c in cols if c]


def search_weights_for(M: BasedModule, alg: TruncatedAlgebra, use_gamma: bool) -> list[Weight]:
    if use_gamma and isinstance(M, WeylModule) and M.shape.is_straight:
        lam = M.canonical_weight()
        return [w for w in alg.pi if dominance_leq_weights(lam, w)]
    return list(alg.pi)


def build_resolution(M: BasedModule, N: BasedModule | None = None, length: int = 3,
                     truncate: bool = True, use_gamma: bool = True, check: bool = True,
                     seed: int | None = None) -> TruncatedResolution:
    maxima = list(M.max_weights()) + (list(N.max_weights()) if N is not None else [])
    if not truncate:
        maxima = [(M.degree,) + (0,) * (M.n - 1)]
    alg = TruncatedAlgebra(M.n, M.degree, maxima, check=check)
    res = TruncatedResolution(M, alg, search_weights_for(M, alg, use_gamma), seed=seed)
    return res.extend(length)


def ext_from_resolution(res: TruncatedResolution, N: BasedModule, max_i: int) -> list[ExtResult]:
    res.extend(max_i + 1)
    out = []
    mats = {}
    for k in range(0, max_i + 1):
        if k < len(res.levels):
            mats[k] = _hom_complex_matrix(res, k, N)
    for i in range(0, max_i + 1):
        if i >= len(res.levels) or not res.levels[i]:
            g = AbelianGroupType()
        else:
            cols_i, dim_i = mats[i]
            prev = mats[i - 1][0] if i >= 1 else None
            g = _cohomology(prev, dim_i, cols_i)
        if i >= 1 and g.free_rank:
            raise ExtFinitenessError(f"Ext^{i}({res.M.descriptor}, {N.descriptor}) = {g} has free part")
        out.append(ExtResult(res.M.descriptor, N.descriptor, i, g, N.n, len(res.levels) - 1))
    return out


def _as_source(source, n: int | None):
    if isinstance(source, BasedModule):
        return source
    return WeylModule(source, n)


def _is_column(M: BasedModule) -> bool:
    shape = getattr(M, "shape", None)
    return (isinstance(M, WeylModule) and not shape.inner.parts
            and all(x == 1 for x in shape.outer.parts))


def ext_groups(source, N: BasedModule, max_i: int = 2, truncate: bool = True,
               use_gamma: bool = True, seed: int | None = None) -> list[ExtResult]:
    """``Ext^i(source, N)`` for ``0 <= i <= max_i``; ``source`` is a module or a shape."""
    M = _as_source(source, N.n)
    if M.n != N.n or M.degree != N.degree:
        raise ValueError("source and target differ in n or degree")
    if truncate and seed is None and _is_column(M) and N.n >= M.degree:
        # K_(1^r) is Λ_r, whose comultiplication resolution is far smaller
        return [dataclasses.replace(r, source=M.descriptor) for r in exterior_ext_groups(M.degree, N, max_i)]
    res = build_resolution(M, N, max_i + 1, truncate=truncate, use_gamma=use_gamma, seed=seed)
    return ext_from_resolution(res, N, max_i)


# ---------------------------------------------------------------------------
# exterior powers: the comultiplication resolution

def positive_compositions(r: int, parts: int):
    if parts == 0:
        if r == 0:
            yield ()
        return
    for x in range(1, r - parts + 2):
        for rest in positive_compositions(r - x, parts - 1):
            yield (x,) + rest


def merge_matrix(alpha: tuple, j: int, n: int):
    """Index ``A`` sending the weight of ``alpha`` to its merge at ``j, j+1`` (``j`` 0-based).

    Factor ``t < j`` goes to letter ``t``, factors ``j`` and ``j+1`` to letter ``j`` and
    factor ``t > j+1`` to letter ``t-1``.
    """
    A = [[0] * n for _ in range(n)]
    for t, a in enumerate(alpha):
        row = t if t <= j else t - 1
        A[row][t] = a
    return tuple(tuple(r) for r in A)


def exterior_resolution_terms(r: int, k: int) -> list[tuple]:
    """Summands ``D_alpha`` of the ``k``-th term: compositions of ``r`` with ``r - k`` parts."""
    return list(positive_compositions(r, r - k)) if 0 <= k < r else []


def exterior_resolution_differential(r: int, k: int, n: int) -> dict:
    """``P_k -> P_{k-1}``: for each ``beta`` in ``P_k`` the list of (sign, alpha, A) with ``d C_beta = sum sign X_A`` in ``D_alpha``."""
    out = {}
    for beta in exterior_resolution_terms(r, k):
        terms = []
        for j, b in enumerate(beta):
            for a in range(1, b):
                alpha = beta[:j] + (a, b - a) + beta[j + 1:]
                A = merge_matrix(alpha, j, n)
                terms.append(((-1) ** j, alpha, A))
        out[beta] = terms
    return out


def exterior_ext_groups(r: int, N: BasedModule, max_i: int = 2) -> list[ExtResult]:
    """``Ext^i(Λ_r, N)`` from the comultiplication resolution ``... -> ⊕ D_(a,b,..) -> F^{⊗r} -> Λ_r``."""
    n = N.n
    if N.degree != r:
        raise ValueError("degree mismatch")
    if n < r:
        raise ValueError("the comultiplication resolution needs n >= r")

    def pad(a):
        return tuple(a) + (0,) * (n - len(a))

    def cochain(k):
        return [(a, lab) for a in exterior_resolution_terms(r, k) for lab in N.weight_basis(pad(a))]

    def matrix(k):
        # Hom(P_k, N) -> Hom(P_{k+1}, N)
        src = cochain(k)
        tgt = {key: i for i, key in enumerate(cochain(k + 1))}
        diff = exterior_resolution_differential(r, k + 1, n)
        by_alpha: dict = {}
        for beta, terms in diff.items():
            for sign, alpha, A in terms:
                by_alpha.setdefault(alpha, []).append((sign, beta, A))
        cols = []
        for alpha, lab in src:
            col: dict = {}
            for sign, beta, A in by_alpha.get(alpha, []):
                for nl, c in N.act_label(A, lab).items():
                    key = tgt[(beta, nl)]
                    col[key] = col.get(key, 0) + sign * c
            cols.append({a: b for a, b in col.items() if b})
        return cols, len(src)

    mats = {k: matrix(k) for k in range(max_i + 1)}
    out = []
    for i in range(max_i + 1):
        cols_i, dim_i = mats[i]
        prev = mats[i - 1][0] if i >= 1 else None
        g = _cohomology(prev, dim_i, cols_i)
        if i >= 1 and g.free_rank:
            raise ExtFinitenessError(f"Ext^{i}(Λ_{r}, {N.descriptor}) = {g} has free part")
        out.append(ExtResult(f"Λ({r})", N.descriptor, i, g, n, max_i + 1))
    return out


def exterior_resolution_is_complex(r: int, n: int | None = None) -> bool:
    """``d d = 0`` on each generator, computed in the divided tensors."""
    n = r if n is None else n
    for k in range(2, r):
        for beta, terms in exterior_resolution_differential(r, k, n).items():
            lower = exterior_resolution_differential(r, k - 1, n)
            total: dict = {}
            for sign, alpha, A in terms:
                for sign2, gamma, A2 in lower[alpha]:
                    Dg = DividedModule(gamma + (0,) * (n - len(gamma)), n)
                    x = Dg.act(A, {Dg.x_of(A2): 1})
                    for lab, c in x.items():
                        key = (gamma, lab)
                        total[key] = total.get(key, 0) + sign * sign2 * c
            if any(total.values()):
                return False
    return True


# ---------------------------------------------------------------------------
# universal coefficients

def mod_p_dimensions(results: list[ExtResult], p: int, complete_through: int | None = None) -> dict:
    """Dimensions of ``Ext^i`` over ``F_p`` from the integral groups.

    ``dim Ext^i_p = free_rank(Ext^i) + #p-torsion(Ext^i) + #p-torsion(Ext^{i+1})``.
    The top degree is flagged as truncated unless ``complete_through`` covers ``i+1``.
    """
    by_i = {r.i: r.group for r in results}
    top = max(by_i)
    missing = [i for i in range(top + 1) if i not in by_i]
    if missing:
        raise ValueError(f"missing degrees {missing}")
    dims = {}
    truncated = []
    for i in range(top + 1):
        g = by_i[i]
        nxt = by_i.get(i + 1)
        if nxt is None and (complete_through is None or complete_through < i + 1):
            truncated.append(i)
        dims[i] = g.free_rank + g.p_rank(p) + (nxt.p_rank(p) if nxt is not None else 0)
    return {"dims": dims, "truncated": truncated}
