import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtorus import algebra, lattice, selftest
from qtorus.algebra import LaurentElement, QTorusPresentation, ScalarAutomorphismSpec, multiply
from qtorus.errors import LengthMismatch, NonUnitDiagonal, NotAntisymmetric, OverlappingGenerators
from qtorus.lattice import Sublattice
from qtorus.scalars import GeneratorBasis

from conftest import commutative_torus, one_relation_torus


def e(n, *idx):
    return tuple(sum(1 for k in idx if k == i) for i in range(n))


def test_validate_four_generator_torus(torus4):
    assert torus4.n == 4 and torus4.m == 3
    assert torus4.q(3, 0) == (-1, 0, 0)


def test_validate_commutative():
    Q = commutative_torus(5)
    assert all(not any(Q.q(i, j)) for i in range(5) for j in range(5))


def test_validate_rejects_symmetric_entry():
    b = GeneratorBasis.symbolic(["q1"])
    with pytest.raises(NotAntisymmetric):
        algebra.validate([[(0,), (1,)], [(1,), (0,)]], b)


def test_validate_rejects_diagonal_and_shape():
    b = GeneratorBasis.symbolic(["q1"])
    with pytest.raises(NonUnitDiagonal):
        algebra.validate([[(1,), (0,)], [(0,), (0,)]], b)
    with pytest.raises(LengthMismatch):
        algebra.validate([[(0,), (0,)], [(0,)]], b)


def test_pairing_values(torus4):
    forms = algebra.pairing(torus4)
    for k in range(3):
        C = forms.forms[k].rows
        nz = {(i, j): C[i][j] for i in range(4) for j in range(4) if C[i][j]}
        assert nz == {(k, 3): 1, (3, k): -1}
    assert all(C.is_zero() for C in algebra.pairing(commutative_torus(3)).forms)
    assert algebra.pairing(one_relation_torus(2, 0, 1, 3)).forms[0].rows == ((0, 3), (-3, 0))


def test_cocycle_values(torus4):
    Q = one_relation_torus(2, 0, 1)
    assert algebra.cocycle((1, 0), (0, 1), Q).exps == (0,)
    assert algebra.cocycle((0, 1), (1, 0), Q).exps == (-1,)
    assert algebra.cocycle(e(4, 3), e(4, 0), torus4).exps == (-1, 0, 0)


def test_multiply_values():
    Q = one_relation_torus(4, 0, 1)
    X1, X2 = LaurentElement.generator(Q, 0), LaurentElement.generator(Q, 1)
    assert multiply(X1, X2) == LaurentElement.monomial(Q, (1, 1, 0, 0))
    assert multiply(X2, X1) == LaurentElement.monomial(Q, (1, 1, 0, 0), scalar=(-1,))
    lhs = multiply(X1 + X2, X1 - X2)
    rhs = (
        LaurentElement.monomial(Q, (2, 0, 0, 0))
        - LaurentElement.monomial(Q, (1, 1, 0, 0))
        + LaurentElement.monomial(Q, (1, 1, 0, 0), scalar=(-1,))
        - LaurentElement.monomial(Q, (0, 2, 0, 0))
    )
    assert lhs == rhs


def test_product_of_sum_and_difference_collapses_when_commutative():
    Q = commutative_torus(2)
    X1, X2 = LaurentElement.generator(Q, 0), LaurentElement.generator(Q, 1)
    assert multiply(X1 + X2, X1 - X2) == LaurentElement.generator(Q, 0, 2) - LaurentElement.generator(Q, 1, 2)


def test_inverse_generator():
    Q = one_relation_torus(2, 0, 1)
    X1 = LaurentElement.generator(Q, 0)
    assert multiply(X1, LaurentElement.generator(Q, 0, -1)) == LaurentElement.one(Q)


def test_commutator_values(torus4):
    assert algebra.commutator_lambda(e(4, 0), e(4, 3), torus4) == (1, 0, 0)
    assert algebra.commutator_lambda(e(4, 3), e(4, 0), torus4) == (-1, 0, 0)
    assert algebra.commutator_lambda((1, 2, 3, 4), (1, 2, 3, 4), torus4) == (0, 0, 0)


def test_commutative_sublattice_values(torus4):
    assert algebra.is_commutative_sublattice(Sublattice.span([e(4, 0), e(4, 1), e(4, 2)], 4), torus4)
    assert not algebra.is_commutative_sublattice(Sublattice.span([e(4, 0), e(4, 3)], 4), torus4)
    assert algebra.is_commutative_sublattice(Sublattice.zero(4), torus4)


def test_skew_extension_matrix(torus4, sigma4):
    Qs = algebra.skew_extension(torus4, sigma4)
    b = Qs.basis
    assert b.labels == ("q1", "q2", "q3", "p1", "p2", "p3", "p4")
    for i in range(4):
        assert Qs.q(i, 4) == tuple(-int(k == 3 + i) for k in range(7))
        assert Qs.q(4, i) == b.unit(3 + i)
    assert Qs.q(0, 3) == b.unit(0)
    assert Qs.q(1, 2) == b.zero()


def test_skew_extension_identity_is_central(torus4):
    Qs = algebra.skew_extension(torus4, ScalarAutomorphismSpec.identity(4, torus4.basis))
    assert all(not any(Qs.q(i, 4)) for i in range(5))
    assert Qs.Q[:4] == tuple(row + ((0, 0, 0),) for row in torus4.Q)


def test_skew_extension_one_generator():
    Q = commutative_torus(1)
    sigma = ScalarAutomorphismSpec(((1,),), GeneratorBasis.symbolic(["g"]))
    Qs = algebra.skew_extension(Q, sigma)
    assert Qs.q(0, 1) == (-1,)


def test_skew_extension_rejects_shared_labels(torus4):
    sigma = ScalarAutomorphismSpec(((1,),) * 4, GeneratorBasis.symbolic(["q1"]))
    with pytest.raises(OverlappingGenerators):
        algebra.skew_extension(torus4, sigma)


def test_skew_extension_rational_unions_primes():
    Q = QTorusPresentation.from_upper(2, GeneratorBasis.rational([2]), {(0, 1): (1,)})
    sigma = ScalarAutomorphismSpec(((1, 0), (0, 1)), GeneratorBasis.rational([2, 3]))
    Qs = algebra.skew_extension(Q, sigma)
    assert Qs.basis.labels == (2, 3)
    assert Qs.q(0, 2) == (-1, 0) and Qs.q(2, 1) == (0, 1)


# -- properties ----------------------------------------------------------------

def test_cocycle_identity_1000_seeded():
    rng = random.Random(11)
    for _ in range(1000):
        assert selftest._cocycle_case(rng)


def test_defining_relations_and_commutator_seeded():
    rng = random.Random(12)
    for _ in range(100):
        assert selftest._relations_case(rng)


@st.composite
def presentations(draw, max_n=4, max_m=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return selftest.random_presentation(random.Random(seed), max_n, max_m)


def _elements(draw, Q):
    terms = draw(st.integers(1, 3))
    x = LaurentElement.zero(Q)
    for _ in range(terms):
        a = tuple(draw(st.integers(-2, 2)) for _ in range(Q.n))
        c = draw(st.integers(-3, 3).filter(bool))
        s = tuple(draw(st.integers(-2, 2)) for _ in range(Q.m))
        x = x + LaurentElement.monomial(Q, a, c, s)
    return x


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_multiply_associative(data):
    Q = data.draw(presentations(max_n=3))
    x, y, z = (_elements(data.draw, Q) for _ in range(3))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_lambda_bilinear_alternating(data):
    Q = data.draw(presentations())
    v = st.lists(st.integers(-4, 4), min_size=Q.n, max_size=Q.n).map(tuple)
    a, a2, b = data.draw(v), data.draw(v), data.draw(v)
    lam = lambda x, y: algebra.commutator_lambda(x, y, Q)  # noqa: E731
    s = tuple(p + q for p, q in zip(a, a2))
    assert lam(s, b) == tuple(p + q for p, q in zip(lam(a, b), lam(a2, b)))
    assert not any(lam(a, a))
    assert lam(a, b) == tuple(-x for x in lam(b, a))


@settings(max_examples=200, deadline=None)
@given(presentations(max_n=6))
def test_pairing_forms_have_even_rank(Q):
    for C in algebra.pairing(Q).forms:
        assert lattice.rank(C) % 2 == 0


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_commutative_sublattice_is_basis_independent(data):
    Q = data.draw(presentations())
    n = Q.n
    rows = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=n))
    B = Sublattice.span(rows, n)
    verdict = algebra.is_commutative_sublattice(B, Q)
    if B.rank:
        # random unimodular recombination of the basis
        rnd = data.draw(st.randoms(use_true_random=False))
        R = [list(r) for r in B.rows]
        for _ in range(4):
            i, j = rnd.sample(range(len(R)), 2) if len(R) > 1 else (0, 0)
            if i != j:
                c = rnd.randint(-3, 3)
                R[i] = [x + c * y for x, y in zip(R[i], R[j])]
        direct = all(not any(algebra.commutator_lambda(u, w, Q)) for u in R for w in R)
        assert direct == verdict
