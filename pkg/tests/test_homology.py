import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from flaghom import (
    ComplexInvalid,
    HomologyGroup,
    IntegerMatrix,
    assemble,
    euler_characteristic,
    homology_groups,
    multiplicity_map,
    poincare_table,
    smith_normal_form,
    theta_subset,
)
from flaghom.boundary import ChainComplex, build_matrices
from flaghom.homology import rank_mod2
from conftest import group_of, split
from oracles import invariant_factors_by_minors


def random_dense(rng, rows, cols, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_snf_trivial_examples():
    z = smith_normal_form(IntegerMatrix.zeros(3, 2))
    assert z.diagonal == (0, 0) and z.rank == 0
    d = smith_normal_form(IntegerMatrix.from_dense([[-2, 0], [0, -2]]))
    assert d.diagonal == (2, 2) and d.rank == 2
    e = smith_normal_form(IntegerMatrix.zeros(0, 4))
    assert e.diagonal == () and e.rank == 0


def test_snf_against_minor_oracle_200():
    rng = random.Random(20240601)
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        dense = random_dense(rng, rows, cols)
        got = smith_normal_form(IntegerMatrix.from_dense(dense, cols))
        assert list(got.invariant_factors) == invariant_factors_by_minors(dense), dense
        assert got.rank == sympy.Matrix(dense).rank()


def test_snf_against_sympy_larger():
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randint(2, 8), rng.randint(2, 8)
        dense = random_dense(rng, rows, cols, -9, 9)
        want = sympy_snf(sympy.Matrix(dense), domain=sympy.ZZ)
        diag = sorted(abs(int(want[i, i])) for i in range(min(rows, cols)) if want[i, i])
        assert list(smith_normal_form(IntegerMatrix.from_dense(dense)).invariant_factors) == diag


def test_snf_divisibility_chain_and_growth():
    # entries that force several gcd steps
    m = IntegerMatrix.from_dense([[6, 10, 15], [10, 15, 6], [15, 6, 10]])
    d = smith_normal_form(m).invariant_factors
    assert all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))
    assert list(d) == invariant_factors_by_minors(m.to_dense())
    big = IntegerMatrix.from_dense([[2**70, 3**40], [5**30, 7**25]])
    assert list(smith_normal_form(big).invariant_factors) == invariant_factors_by_minors(big.to_dense())


def _unimodular_shuffle(dense, rng):
    rows = [list(r) for r in dense]
    for _ in range(6):
        i, j = rng.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        if i != j:
            k = rng.randint(-2, 2)
            rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    cols = list(range(len(rows[0])))
    rng.shuffle(cols)
    signs = [rng.choice((1, -1)) for _ in cols]
    return [[s * r[c] for c, s in zip(cols, signs)] for r in rows]


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ),
    st.integers(0, 2**32),
)
def test_snf_invariant_under_unimodular_moves(dense, seed):
    rng = random.Random(seed)
    base = smith_normal_form(IntegerMatrix.from_dense(dense))
    moved = smith_normal_form(IntegerMatrix.from_dense(_unimodular_shuffle(dense, rng)))
    assert base == moved
    m = IntegerMatrix.from_dense(dense)
    r2 = rank_mod2(m)
    assert r2 <= base.rank
    assert r2 == sum(1 for d in base.invariant_factors if d % 2)


def test_integer_matrix_validation():
    with pytest.raises(IndexError):
        IntegerMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(ValueError):
        IntegerMatrix.from_triplets(2, 2, [(0, 0, 1), (0, 0, 2)])
    m = IntegerMatrix.from_triplets(2, 3, [(1, 2, 5), (0, 0, 0)])
    assert m.triplets() == [(1, 2, 5)]
    with pytest.raises(ValueError):
        m @ m


def test_group_str_and_parse():
    g = HomologyGroup(1, 2, (2, 4))
    assert str(g) == "Z^2 + Z2 + Z4"
    assert HomologyGroup.parse(1, str(g)) == g
    assert str(HomologyGroup(0, 0)) == "0"
    assert str(HomologyGroup(3, 2, (), "Z2")) == "Z2^2"
    with pytest.raises(ValueError):
        HomologyGroup(0, 0, (4, 2))
    with pytest.raises(ValueError):
        HomologyGroup(0, 0, (1,))
    with pytest.raises(ValueError):
        HomologyGroup.parse(0, "Q^2")


@given(st.integers(0, 5), st.integers(0, 6), st.lists(st.integers(2, 30), max_size=4), st.sampled_from(["Z", "Z2"]))
def test_group_text_roundtrip(degree, betti, factors, ring):
    chain = []
    for f in sorted(factors):
        chain.append(f if not chain else chain[-1] * f)
    torsion = tuple(chain) if ring == "Z" else ()
    g = HomologyGroup(degree, betti, torsion, ring)
    assert HomologyGroup.parse(degree, str(g), ring) == g


def _strs(groups):
    return [str(h) for h in groups]


def test_reference_homology_lists():
    a2 = group_of("A", 2)
    assert _strs(homology_groups(assemble(a2, split(a2)))) == ["Z", "Z2 + Z2", "0", "Z"]
    g2 = group_of("G", 2)
    assert _strs(homology_groups(assemble(g2, split(g2)))) == ["Z", "Z2 + Z2", "0", "Z^2", "Z2 + Z2", "0", "Z"]
    cx = assemble(g2, split(g2), theta_subset(g2.rs, (1,)))
    assert _strs(homology_groups(cx)) == ["Z", "Z2", "0", "Z", "Z2", "0"]


def test_euler_and_poincare():
    a2 = group_of("A", 2)
    cx = assemble(a2, split(a2))
    assert euler_characteristic(cx) == 0
    assert poincare_table(cx) == [1, 2, 2, 1]
    g2 = group_of("G", 2)
    assert poincare_table(assemble(g2, split(g2))) == [1, 2, 2, 2, 2, 2, 1]
    assert poincare_table(assemble(g2, split(g2), theta_subset(g2.rs, (1,)))) == [1] * 6
    b3 = group_of("B", 3)
    assert euler_characteristic(assemble(b3, split(b3), theta_subset(b3.rs, (1, 2, 3)))) == 1
    a3 = group_of("A", 3)
    assert euler_characteristic(assemble(a3, multiplicity_map(a3.rs, "complex"))) == 24


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("A", 4)])
def test_homology_consistency(family, rank):
    group = group_of(family, rank)
    for theta in [()] + [(j,) for j in range(1, rank + 1)]:
        cx = assemble(group, split(group), theta_subset(group.rs, theta))
        z = homology_groups(cx, "Z")
        z2 = homology_groups(cx, "Z2")
        assert [h.betti for h in z2] == [len(c) for c in cx.cells]
        assert sum((-1) ** h.degree * h.betti for h in z) == euler_characteristic(cx)
        assert str(z[0]) == "Z"
        assert all(set(h.torsion) <= {2, 4, 8} for h in z)


def test_homology_rejects_bad_complex():
    a3 = group_of("A", 3)
    cx = assemble(a3, split(a3))
    coeffs = dict(cx.coefficients)
    key = next(k for k, c in coeffs.items() if c and k[0] in {e.w_prime.index for e in cx.edges if coeffs[e.key]})
    coeffs[key] = -coeffs[key]
    broken = ChainComplex(cx.theta, cx.cells, build_matrices(cx.cells, cx.edges, coeffs), cx.mult, cx.edges, coeffs)
    with pytest.raises(ComplexInvalid):
        homology_groups(broken)
    with pytest.raises(ValueError):
        homology_groups(cx, "Q")
