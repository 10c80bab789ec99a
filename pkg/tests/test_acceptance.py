"""End-to-end acceptance sweeps. Every check is exact; each test records one PASS/FAIL line."""
import random

import pytest

from conftest import random_matrix
from weylext.abw import DividedModule
from weylext.combinatorics import block_decomposition, enumerate_Ti, partitions, skew_shapes
from weylext.homology import ext_groups
from weylext.theorems import (
    Thm21Case,
    digit_vs_modular,
    lemma_shapes,
    solve_constraints,
    thm21_pairs,
    thm22_shapes,
    verify_lemmaA,
    verify_lemmaB,
    verify_lemmaC,
    verify_relations,
    verify_removal,
    verify_skewrep,
    verify_stability,
    verify_standard_basis,
    verify_thm21,
    verify_thm22,
    verify_vanishing,
)
from weylext.zlinalg import IntMatrix, determinant, kernel_basis, rank, snf

pytestmark = pytest.mark.slow


def failures(reports):
    return [r.case_id for r in reports if not r.passed]


def summary(reports):
    bad = failures(reports)
    return f"{len(reports) - len(bad)}/{len(reports)} cases" + (f", failing {bad[:5]}" if bad else "")


def test_hook_length_ext_sweep(acceptance):
    reps = [verify_thm21(Thm21Case.from_pair(lam, mu)) for lam, mu in thm21_pairs(6)]
    acceptance(1, "root-pair Ext^1 is cyclic of hook order, Hom and Ext^2 vanish", not failures(reps),
               summary(reps))
    assert not failures(reps)


def test_gcd_ext_sweep(acceptance):
    reps = [verify_thm22(lam, via) for lam in thm22_shapes(7) for via in ("direct", "dual")]
    acceptance(2, "Ext^1(exterior power, K_lambda) has gcd order, direct and mod-m scan", not failures(reps),
               summary(reps))
    assert not failures(reps)


def _literal_values() -> list[str]:
    bad = []
    shape = lambda r: [(x.group.free_rank, list(x.group.torsion)) for x in r]
    want = [(0, []), (0, [2]), (0, []), (0, [])]
    for kw in ({}, {"truncate": False}):
        if shape(ext_groups((1, 1), DividedModule((2,), 2), max_i=3, **kw)) != want:
            bad.append(f"Ext(L2, D2) {kw}")
    for a in range(1, 5):
        for b in range(1, a + 1):
            cases = [((a,), a + 1), ((a, a), a + 2)] if b == a else []
            if b < a:
                cases.append(((a, b), (a + 2) * (b + 1)))
            for nu, mult in cases:
                rep = verify_lemmaC(nu)
                c = rep.computed
                if not (rep.passed and rep.predicted == mult and abs(c["certificate"]) == mult
                        and abs(c["solver"]) == mult):
                    bad.append(f"multiple {nu}")
            blocks = block_decomposition((a, b))
            got = solve_constraints(blocks, {i: e for i, _, e in enumerate_Ti(blocks)})
            if b == a:
                tup = {(0,): a, (1,): 1, (2,): -1}
            else:
                tup = {(0, 0): (a + 1) * b, (0, 1): -(a + 1), (1, 0): -b, (1, 1): 1}
            if got != tup:
                bad.append(f"coefficients {(a, b)}: {got}")
    return bad


def test_literal_values(acceptance):
    bad = _literal_values()
    acceptance(3, "literal Ext(L2, D2), intertwiner multiples and coefficient tuples", not bad,
               f"failing {bad}" if bad else "1 <= b <= a <= 4")
    assert not bad


def test_intertwiner_certificates(acceptance):
    reps, bad = [], []
    for nu in lemma_shapes(6):
        c, b, a = verify_lemmaC(nu), verify_lemmaB(nu), verify_lemmaA(nu)
        reps += [c, b, a]
        h1 = block_decomposition(nu).hooks[0]
        if abs(c.computed["certificate"]) != h1 * abs(b.computed["certificate"]):
            bad.append(str(nu))
        if c.computed["sum_abs_b"] != c.predicted:
            bad.append(str(nu))
    ok = not failures(reps) and not bad
    acceptance(4, "certificate and solver routes give the block products", ok,
               summary(reps) + (f", composite mismatch {bad}" if bad else ""))
    assert ok


def test_structural_invariants(acceptance):
    basis = [verify_standard_basis(s, n) for s in skew_shapes(6, 4) for n in range(1, 5)]
    rel = [verify_relations(s) for s in skew_shapes(5, 5)]
    van = [verify_vanishing(lam) for d in range(1, 7) for lam in partitions(d)]
    reps = basis + rel + van
    acceptance(5, "standard basis ranks, relation closure, self-Ext vanishing", not failures(reps),
               f"basis {summary(basis)}; relations {summary(rel)}; self-Ext {summary(van)}")
    assert not failures(reps)


def test_principle_checks(acceptance):
    pairs = thm21_pairs(6)
    removal = [verify_removal(lam, mu) for lam, mu in pairs]
    stable = [verify_stability(lam, mu) for lam, mu in random.Random(0).sample(pairs, 20)]
    skew = [verify_skewrep(lam, t) for d in range(1, 6) for lam in partitions(d) for t in (1, 2)
            if len(lam) >= t]
    reps = removal + stable + skew
    acceptance(6, "row/column removal, stability in n, skew representative", not failures(reps),
               f"removal {summary(removal)}; stability {summary(stable)}; skew {summary(skew)}")
    assert not failures(reps)


def test_digit_criterion(acceptance):
    reps = [digit_vs_modular(lam, p) for d in range(1, 7) for lam in partitions(d) for p in (2, 3)]
    acceptance(7, "digit-tableau criterion matches mod-p Hom", not failures(reps), summary(reps))
    assert not failures(reps)


def _snf_problems(a: IntMatrix) -> list[str]:
    d = snf(a)
    out = []
    if (d.U @ a @ d.V).rows != d.S.rows:
        out.append("UAV != S")
    if abs(determinant(d.U)) != 1 or abs(determinant(d.V)) != 1:
        out.append("not unimodular")
    f = d.invariant_factors
    if any(x <= 0 for x in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
        out.append("divisibility")
    off = [(i, j) for i in range(d.S.nrows) for j in range(d.S.ncols)
           if d.S.rows[i][j] and not (i == j and i < len(f) and d.S.rows[i][j] == f[i])]
    if off:
        out.append("S not diagonal with the invariant factors")
    k = kernel_basis(a)
    if not (a @ k).is_zero() or k.ncols != a.ncols - rank(a):
        out.append("kernel")
    elif k.ncols and any(x != 1 for x in snf(k).invariant_factors):
        out.append("kernel not saturated")
    return out


def test_integer_linear_algebra(acceptance):
    rng = random.Random(2024)
    bad = []
    for t in range(500):
        # sprinkle in low-rank products so kernels and nontrivial factors are common
        a = IntMatrix(random_matrix(rng))
        if t % 3 == 0:
            k = rng.randint(1, 8)
            a = a @ IntMatrix([[rng.randint(-3, 3) for _ in range(k)] for _ in range(a.ncols)])
        probs = _snf_problems(a)
        if probs:
            bad.append((t, probs))
    acceptance(8, "Smith decompositions and saturated kernels on 500 random matrices", not bad,
               f"failing {bad[:3]}" if bad else "500/500 matrices")
    assert not bad
