import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confspace.errors import SpaceMismatch
from confspace.exactlin import (
    Certificate,
    IndexSpace,
    QMatrix,
    QVector,
    kernel,
    membership,
    quotient_rank,
    rank,
    row_reduce,
)
from oracles import solve_2x2

E2 = IndexSpace("e", ["e1", "e2"])


def vec(*coeffs, space=E2):
    return QVector(space, {i: Fraction(c) for i, c in enumerate(coeffs)})


def matrix(rows, dom=None, cod=None):
    m, n = len(rows), len(rows[0])
    cod = cod or IndexSpace(f"r{m}", range(m))
    dom = dom or IndexSpace(f"c{n}", range(n))
    cols = {j: QVector(cod, {i: Fraction(rows[i][j]) for i in range(m)}) for j in range(n)}
    return QMatrix(dom, cod, cols)


def test_vectors_drop_zero_entries():
    assert vec(0, 3).entries == {1: Fraction(3)}
    assert not (vec(1, 2) - vec(1, 2))


def test_row_reduce_identity():
    _, pivots, r = row_reduce(matrix([[1, 0], [0, 1]]))
    assert r == 2 and pivots == [(0, 0), (1, 1)]


def test_row_reduce_zero():
    _, pivots, r = row_reduce(matrix([[0, 0], [0, 0]]))
    assert r == 0 and pivots == []


def test_row_reduce_proportional():
    assert rank(matrix([[1, 2], [2, 4]])) == 1


def test_row_reduce_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[rng.choice([0, 0, 1, -2, 3]) for _ in range(6)] for _ in range(5)]
        red, piv, r = row_reduce(matrix(rows))
        again, piv2, r2 = row_reduce(red)
        assert again == red and piv2 == piv and r2 == r


def test_rank_of_transpose_on_random_sparse():
    rng = random.Random(11)
    for size in (5, 20, 50):
        rows = [[rng.choice([0] * 8 + [1, -1, 2, Fraction(1, 3)]) for _ in range(size)] for _ in range(size)]
        m = matrix(rows)
        assert rank(m) == rank(m.transpose())


def test_membership_examples():
    assert membership(QVector(E2), []) == (True, [])
    assert membership(vec(1, 0), [vec(0, 1)]) == (False, None)
    ok, coeffs = membership(vec(1, 1), [vec(1, -1), vec(1, 3)])
    assert ok and coeffs == solve_2x2([[1, 1], [-1, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 2)]


def test_membership_space_mismatch():
    other = IndexSpace("f", ["f1", "f2"])
    with pytest.raises(SpaceMismatch):
        membership(vec(1, 0), [vec(1, 0, space=other)])


def test_quotient_rank_examples():
    e1, e2 = vec(1, 0), vec(0, 1)
    assert quotient_rank([e1], [e1])[0] == 0
    assert quotient_rank([e1, e2], [])[0] == 2
    r, cert = quotient_rank([vec(1, 1), vec(1, -1)], [e2])
    assert r == 1 and cert.pivots == ["e1"]


def test_kernel_is_annihilated():
    m = matrix([[1, 2, 3, 0], [0, 1, 1, 1]])
    ker = kernel(m)
    assert len(ker) == 2
    assert all(not m.apply(v) for v in ker)


def test_certificate_json_is_canonical():
    cert = Certificate(rank=1, pivots=["b"], chart_dim=3, window=1, config_hash="h", extra={"mode": "x"})
    assert cert.to_json() == '{"chart_dim":3,"config_hash":"h","mode":"x","pivots":["b"],"rank":1,"window":1}'


SPACE6 = IndexSpace("six", range(6))
vectors6 = st.lists(st.integers(-3, 3), min_size=6, max_size=6).map(lambda cs: vec(*cs, space=SPACE6))


@settings(max_examples=60, deadline=None)
@given(vectors6, st.lists(vectors6, max_size=5))
def test_membership_coefficients_reconstruct(v, span):
    ok, coeffs = membership(v, span)
    if ok:
        total = QVector(SPACE6)
        for c, u in zip(coeffs, span):
            total = total + c * u
        assert total == v


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors6, max_size=5), st.lists(vectors6, max_size=4), st.randoms())
def test_quotient_rank_permutation_invariant(family, relations, rnd):
    r1, c1 = quotient_rank(family, relations) if family or relations else (0, None)
    fam2, rel2 = family[:], relations[:]
    rnd.shuffle(fam2)
    rnd.shuffle(rel2)
    r2, c2 = quotient_rank(fam2, rel2) if fam2 or rel2 else (0, None)
    assert r1 == r2
    if c1 is not None:
        assert c1.pivots == c2.pivots
