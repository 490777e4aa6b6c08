"""Exact simplex, dominated-hull membership, and hull reduction."""

import pytest
from hypothesis import given, settings, strategies as st

from treebound.errors import DimensionMismatch
from treebound.geometry import (
    LPProblem,
    hull_reduce,
    lp_solve,
    member_dominated_hull,
    )
from treebound.numeric import Q, sign_of


def lp(rows, senses, rhs, obj, direction):
    conv = lambda v: tuple(Q(x) for x in v)
    return LPProblem(tuple(conv(r) for r in rows), tuple(senses),
                     conv(rhs), conv(obj), direction)


def test_lp_simple_max():
    r = lp_solve(lp([[1]], ["<="], [1], [1], "max"))
    assert r.status == "optimal" and r.value == 1 and r.point == (Q(1),)


def test_lp_unbounded():
    # x1 >= 0 is implicit; an explicit redundant row keeps it unbounded
    r = lp_solve(lp([[1]], [">="], [0], [1], "max"))
    assert r.status == "unbounded"


def test_lp_infeasible_convex_combination():
    # lambda >= 0, sum = 1, lambda.{(1,0),(0,1)} >= (3/4, 3/4): coordinate
    # sums of any dominating combination reach only 1 < 3/2
    rows = [[1, 1], [1, 0], [0, 1]]
    r = lp_solve(lp(rows, ["=", ">=", ">="], [1, Q(3, 4), Q(3, 4)],
                    [0, 0], "min"))
    assert r.status == "infeasible"


def test_lp_min_with_equalities():
    r = lp_solve(lp([[1, 1], [1, -1]], ["=", "="], [2, 0], [1, 3], "min"))
    assert r.status == "optimal" and r.value == 4 and r.point == (Q(1), Q(1))


def test_lp_exactness_rational_vs_field(sqrt2_field):
    # same rational-data problem solved over Q and over Q(sqrt 2)
    prob_q = lp([[2, 1], [1, 3]], ["<=", "<="], [4, 6], [1, 1], "max")
    emb = lambda x: sqrt2_field.from_rational(x)
    prob_f = LPProblem(
        tuple(tuple(emb(c) for c in r) for r in prob_q.rows),
        prob_q.senses, tuple(emb(c) for c in prob_q.rhs),
        tuple(emb(c) for c in prob_q.objective), "max")
    rq, rf = lp_solve(prob_q), lp_solve(prob_f)
    assert rq.status == rf.status == "optimal"
    assert sign_of(rf.value - rq.value) == 0
    assert all(sign_of(a - b) == 0 for a, b in zip(rq.point, rf.point))


def test_degenerate_equalities_redundant_rows():
    r = lp_solve(lp([[1, 1], [2, 2]], ["=", "="], [1, 2], [1, 0], "max"))
    assert r.status == "optimal" and r.value == 1


# -- membership ------------------------------------------------------------------


def vecs(*rows):
    return [tuple(Q(x) for x in r) for r in rows]


def test_member_midpoint():
    X = vecs([1, 0], [0, 1])
    assert member_dominated_hull((Q(1, 2), Q(1, 2)), X)


def test_member_ones_fails():
    X = vecs([1, 0], [0, 1])
    assert not member_dominated_hull((Q(1), Q(1)), X)


def test_member_scaled_seed(sqrt2_field, indep_dom_cert):
    # V0/sqrt(2) lies in the dominated hull of the bundled 3-vector set
    a = sqrt2_field.alpha()
    half = a.inverse()
    x = (half, half, Q(0))
    assert member_dominated_hull(x, list(indep_dom_cert.vectors))


def test_member_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        member_dominated_hull((Q(1),), vecs([1, 0]))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1,
                max_size=5),
       st.tuples(st.integers(0, 6), st.integers(0, 6)),
       st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_membership_monotone(xs, x, delta):
    X = [tuple(Q(a) for a in v) for v in xs]
    x = tuple(Q(a) for a in x)
    smaller = tuple(max(Q(0), a - d) for a, d in zip(x, delta))
    if member_dominated_hull(x, X):
        assert member_dominated_hull(smaller, X)


# -- hull_reduce -----------------------------------------------------------------


def test_hull_reduce_midpoint():
    X = vecs([1, 0], [0, 1], [Q(1, 2), Q(1, 2)])
    assert hull_reduce(X) == vecs([1, 0], [0, 1])


def test_hull_reduce_dominated():
    assert hull_reduce(vecs([1, 0], [Q(1, 2), 0])) == vecs([1, 0])


def test_hull_reduce_keeps_earliest_duplicate():
    X = vecs([1, 1], [1, 1], [0, 0])
    out = hull_reduce(X)
    assert out == vecs([1, 1])
    assert out[0] is X[0]


def test_hull_reduce_empty_rejected():
    with pytest.raises(ValueError):
        hull_reduce([])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5),
                          st.integers(0, 5)), min_size=1, max_size=7))
def test_hull_reduce_contract(xs):
    X = [tuple(Q(a) for a in v) for v in xs]
    out = hull_reduce(X)
    # idempotent
    assert hull_reduce(out) == out
    # removed points are members of the survivors' hull
    for v in X:
        if v not in out:
            assert member_dominated_hull(v, out)
    # survivors are not members of the hull of the others
    for i, v in enumerate(out):
        others = out[:i] + out[i + 1:]
        if others:
            assert not member_dominated_hull(v, others)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                min_size=1, max_size=6))
def test_hull_reduce_order_insensitive(xs):
    X = [tuple(Q(a) for a in v) for v in xs]
    fwd = hull_reduce(X)
    rev = hull_reduce(list(reversed(X)))
    # same dominated hull either way (set equality of conv_<= via membership)
    assert all(member_dominated_hull(v, rev) for v in fwd)
    assert all(member_dominated_hull(v, fwd) for v in rev)


def test_bundled_tpd_set_already_minimal(fx):
    cert = fx.load_fixture_certificate(fx.BY_NAME["total_perfect_dom"])
    assert len(cert.vectors) == 21
    assert hull_reduce(list(cert.vectors)) == list(cert.vectors)
