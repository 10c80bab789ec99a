from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partitions_st, skew_shapes_st
from weylext.abw import (
    DividedModule,
    ExteriorModule,
    ModuleMap,
    WeylModule,
    build_divided,
    build_exterior,
    contravariant_dual,
    iota_label,
    module_closure,
    pieri_maps,
    polarize,
    relations_generators,
    schur_module,
    straighten,
    symmetrizer,
    tensor,
)
from weylext.combinatorics import (
    Partition,
    SkewShape,
    add_first_row_box,
    enumerate_standard_tableaux,
    kostka,
    nu_tensor_one,
    partitions,
    xi_shape,
)
from weylext.zlinalg import IntMatrix, kernel_sparse

P = Partition


def F(n):
    return DividedModule((1,), n)


def weight_dims(M):
    return {w: len(M.weight_basis(w)) for w in M.weights()}


# --- divided and exterior powers ------------------------------------------

def test_divided_ranks():
    D2 = build_divided((2,), 2)
    assert D2.rank == 3
    assert D2.basis == [((1, 1),), ((1, 2),), ((2, 2),)]
    assert build_divided((2, 1), 2).rank == 6


def test_divided_lower_transfers_whole_power():
    D2 = build_divided((2,), 2)
    assert D2.operator_on("lower", 1, 2, {((1, 1),): 1}) == {((2, 2),): 1}
    # order one: e1^(2) -> e1 e2, and e1 e2 -> 2 e2^(2)
    assert D2.operator_on("lower", 1, 1, {((1, 1),): 1}) == {((1, 2),): 1}
    assert D2.operator_on("lower", 1, 1, {((1, 2),): 1}) == {((2, 2),): 2}


def test_exterior_ranks():
    assert build_exterior((2,), 2).rank == 1
    assert build_exterior((2,), 3).rank == 3
    assert build_exterior((1, 1), 2).rank == 4


def test_tensor_leibniz():
    FF = tensor(F(2), F(2))
    assert FF.rank == 4
    e1 = ((1,),)
    got = FF.operator_on("lower", 1, 1, {(e1, e1): 1})
    assert got == {(((2,),), e1): 1, (e1, ((2,),)): 1}


def test_tensor_weight_space():
    M = tensor(build_divided((2,), 2), F(2))
    assert sorted(M.weight_basis((2, 1))) == sorted([(((1, 1),), ((2,),)), (((1, 2),), ((1,),))])


def test_operators_vanish_above_degree():
    D = build_divided((2, 1), 3)
    for lab in D.basis:
        assert D.operator_on("lower", 1, 4, {lab: 1}) == {}


@given(partitions_st(max_degree=4, max_parts=3), st.integers(min_value=1, max_value=2))
@settings(max_examples=25, deadline=None)
def test_lower_moves_weight(lam, i):
    D = DividedModule(lam.parts, 3)
    for w in D.weights():
        for lab in D.weight_basis(w):
            for m in range(1, D.degree + 1):
                img = D.operator_on("lower", i, m, {lab: 1})
                want = list(w)
                want[i - 1] -= m
                want[i] += m
                assert all(D.weight_of(k) == tuple(want) for k in img)


# --- group-element consistency --------------------------------------------

def _exp_operator(M, direction, i, sign):
    """``sum_m sign^m op(i, m)`` as a matrix on the full basis."""
    N = len(M.basis)
    total = IntMatrix.identity(N)
    for m in range(1, M.degree + 1):
        op = M.operator(direction, i, m)
        c = sign ** m
        total = IntMatrix([[total[r, s] + c * op[r, s] for s in range(N)] for r in range(N)])
    return total


def _group_consistent(M):
    for i in range(1, M.n):
        for d in ("lower", "raise"):
            X = _exp_operator(M, d, i, 1)
            Y = _exp_operator(M, d, i, -1)
            if X @ Y != IntMatrix.identity(len(M.basis)):
                return False
    return True


def test_group_elements_are_unipotent():
    assert _group_consistent(DividedModule((2, 1), 3))
    assert _group_consistent(ExteriorModule((2, 1), 3))
    assert _group_consistent(WeylModule((2, 1), 3))
    assert _group_consistent(tensor(ExteriorModule((2,), 3), DividedModule((1,), 3)))
    assert _group_consistent(schur_module((2, 1), 3))


@given(skew_shapes_st(max_degree=4, max_rows=3))
@settings(max_examples=15, deadline=None)
def test_group_elements_on_weyl_modules(shape):
    assert _group_consistent(WeylModule(shape, 3))


# --- the symmetrizer ------------------------------------------------------

def test_column_shape_is_exterior_power():
    K = WeylModule((1, 1, 1), 4)
    assert K.rank == ExteriorModule((3,), 4).rank == 4
    sym = symmetrizer((1, 1, 1), 4)
    # one letter per row, all wedged in one column
    assert sym.apply_label(((1,), (2,), (3,))) == {((1, 2, 3),): 1}
    assert sym.apply_label(((2,), (1,), (3,))) == {((1, 2, 3),): -1}


def test_single_row_is_divided_power():
    sym = symmetrizer((2,), 2)
    images = [sym.apply_label(lab) for lab in sym.source.basis]
    assert images == [{((1,), (1,)): 1}, {((1,), (2,)): 1, ((2,), (1,)): 1}, {((2,), (2,)): 1}]
    assert WeylModule((2,), 2).rank == 3


@given(skew_shapes_st(max_degree=5, max_rows=3))
@settings(max_examples=30, deadline=None)
def test_relations_are_killed(shape):
    sym = symmetrizer(shape, 3)
    for R in relations_generators(shape):
        assert sym.apply_label(R) == {}


# --- Weyl modules ---------------------------------------------------------

def test_weyl_ranks():
    assert WeylModule((2, 1), 2).rank == 2
    assert WeylModule((2, 1), 3).rank == 8


@given(skew_shapes_st(max_degree=5, max_rows=3), st.integers(min_value=1, max_value=4))
@settings(max_examples=30, deadline=None)
def test_weyl_rank_is_image_rank(shape, n):
    # the span of d' over Q has the dimension of the standard tableau count
    K = WeylModule(shape, n)
    sym = K.dprime
    for w in K.weights():
        src = sym.source.weight_basis(w)
        ker = kernel_sparse([sym.apply_label(s) for s in src])
        assert len(src) - len(ker) == len(enumerate_standard_tableaux(shape, n, w))


def test_pieri_ranks_add():
    # K_(a) ⊗ F is filtered by K_(a+1) and K_(a,1)
    for a in range(1, 5):
        left = WeylModule((a,), 2).rank * 2
        assert left == WeylModule((a + 1,), 2).rank + WeylModule((a, 1), 2).rank


def test_operators_preserve_image():
    K = WeylModule((2, 2, 1), 3)
    emb = K.embed
    for lab in K.basis:
        for i in (1, 2):
            for m in (1, 2):
                for d in ("lower", "raise"):
                    inside = K.operator_on(d, i, m, {lab: 1})
                    outside = K.exterior.operator_on(d, i, m, emb({lab: 1}))
                    assert emb(inside) == outside


def test_stability_in_letters():
    # basis elements using only letters <= n, and their operators, agree in n and n+1
    shape = SkewShape(P((3, 2)), P((1,)))
    small, big = WeylModule(shape, 2), WeylModule(shape, 3)
    for w in small.weights():
        assert small.weight_basis(w) == big.weight_basis(w + (0,))
        for lab in small.weight_basis(w):
            for m in range(1, 4):
                a = small.operator_on("lower", 1, m, {lab: 1})
                b = big.operator_on("lower", 1, m, {lab: 1})
                assert a == b


# --- straightening --------------------------------------------------------

def test_straighten_two_row_hook():
    # e1 e2 ⊗ e1 is minus e1^(2) ⊗ e2 in K_(2,1)
    assert straighten((2, 1), {((1, 2), (1,)): 1}) == {((1, 1), (2,)): -1}


def test_straighten_hook_general_a():
    for a in range(2, 6):
        lab = ((1,) * (a - 1) + (2,), (1,))
        assert straighten((a, 1), {lab: 1}) == {((1,) * a, (2,)): -1}


def test_straighten_square_plus_box():
    a = 3
    shape = nu_tensor_one((a, a))
    elem = {((1,) * (a - 1) + (2,), (1,) + (2,) * (a - 2) + (3,), (1,)): 1}
    want = ((1,) * a, (2,) * (a - 1) + (3,), (1,))
    assert straighten(shape, elem, 3) == {want: -(a - 1)}


@given(skew_shapes_st(max_degree=5, max_rows=3))
@settings(max_examples=20, deadline=None)
def test_standard_tableaux_straighten_to_themselves(shape):
    K = WeylModule(shape, 3)
    for lab in K.basis:
        assert K.straighten({lab: 1}) == {lab: 1}


# --- relations and closure ------------------------------------------------

def test_relation_counts():
    for a in range(1, 5):
        assert relations_generators((a, 1)) == [((1,) * a, (1,))]
        gens = relations_generators((a, a, 1))
        assert len(gens) == a + 1
        assert gens[-1] == ((1,) * a, (2,) * a, (2,))
        for b in range(1, a):
            assert len(relations_generators((a, b, 1))) == b + 1


def test_closure_examples():
    D2 = DividedModule((2,), 2)
    full = module_closure(D2, [{((1, 1),): 1}])
    assert all(lat.rank == len(D2.weight_basis(w)) for w, lat in full.items())
    assert all(lat.rank == 0 for lat in module_closure(D2, []).values())


def test_closure_equals_kernel_small_hook():
    K = WeylModule((2, 1), 2)
    D, sym = K.divided, K.dprime
    closure = module_closure(D, [{R: 1} for R in relations_generators((2, 1))])
    total = 0
    for w, lat in closure.items():
        ker = kernel_sparse([sym.apply_label(s) for s in D.weight_basis(w)])
        assert lat.rank == len(ker)
        assert all(lat.contains(v) for v in ker)
        total += len(ker)
    assert total == D.rank - K.rank == 4


# --- duality --------------------------------------------------------------

def test_dual_of_F():
    Fd = contravariant_dual(F(3))
    assert weight_dims(Fd) == weight_dims(F(3))
    assert contravariant_dual(contravariant_dual(F(3))).basis == F(3).basis


def test_schur_rank():
    assert schur_module((2, 1), 3).rank == 8


@given(skew_shapes_st(max_degree=4, max_rows=3))
@settings(max_examples=15, deadline=None)
def test_dual_swaps_and_transposes(shape):
    K = WeylModule(shape, 3)
    L = contravariant_dual(K)
    assert weight_dims(L) == weight_dims(K)
    for i in (1, 2):
        for m in (1, 2):
            assert L.operator("lower", i, m) == K.operator("raise", i, m).transpose()


def test_character_of_dual_weyl():
    for lam in partitions(4, max_parts=3):
        K = WeylModule(lam, 3)
        assert weight_dims(schur_module(lam, 3)) == weight_dims(K)
        assert all(d == kostka(lam, w) for w, d in weight_dims(K).items())


# --- polarization and the Pieri maps --------------------------------------

def test_polarize_coefficients():
    # moving a 2 from row 2 into a row that already holds a 2 doubles it
    assert polarize(((1, 2), (2, 2)), [(1, 0, 2)]) == {((1, 2, 2), (2,)): 2}
    # unspecified letters sum over the row
    assert polarize(((1,), (1, 2)), [(1, 0, None)]) == {((1, 1), (2,)): 2, ((1, 2), (1,)): 1}


def test_iota_label():
    assert iota_label((3, 2, 2)) == ((1, 1), (1, 2), (2, 3))


def test_pieri_maps_equivariant():
    for nu in [P((2,)), P((2, 1)), P((2, 2)), P((3, 1))]:
        maps = pieri_maps(nu)
        for name, f in maps.items():
            assert f.check_equivariance(), (nu, name)


def test_pieri_sequence_for_one_row():
    # 0 -> K_(a+1) -> K_(a) ⊗ F -> K_xi -> 0 with xi = (a,a)/(a-1)
    for a in range(1, 5):
        xi = xi_shape((a,))
        assert xi == SkewShape(P((a, a)), P((a - 1,)))
        KS = WeylModule(nu_tensor_one((a,)), 2)
        assert KS.rank == WeylModule((a + 1,), 2).rank + WeylModule(xi, 2).rank


def test_pieri_maps_kill_row_one_box():
    for nu in [P((2,)), P((2, 1)), P((3, 2))]:
        maps = pieri_maps(nu)
        mu = add_first_row_box(nu)
        # the generator of K_mu inside K_nu ⊗ F: the lone box filled with 1
        rows = tuple((r,) * x for r, x in enumerate(nu.parts, start=1)) + ((1,),)
        KS = maps["surj"].source
        g = KS.straighten({rows: 1})
        assert g
        assert maps["surj"].apply(g) == {}
        assert maps["pi"].apply(g) == {}
        assert KS.weight_of(rows) == mu.padded(KS.n)


def test_pieri_inj_on_generator():
    nu = P((3, 2))
    maps = pieri_maps(nu)
    inj = maps["inj"]
    C = ((1, 1, 1), (2, 2))
    assert inj.image(C) == inj.target.straighten({iota_label((3, 2, 1)): 1})


def test_surj_onto():
    # the Weyl surjection hits every standard basis element of K_lam
    maps = pieri_maps(P((2, 1)))
    surj = maps["surj"]
    hit = set()
    for lab in surj.source.basis:
        hit.update(surj.image(lab))
    assert hit == set(surj.target.basis)


def test_module_map_matrix_roundtrip():
    D = DividedModule((2,), 2)
    ident = ModuleMap(D, D, {lab: {lab: 1} for lab in D.basis})
    assert ident.matrix() == IntMatrix.identity(3)
    assert ident.check_equivariance()
