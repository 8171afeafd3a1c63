import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radius_lab.bounds import (
    CATALOG,
    PRIMITIVES,
    RADIUS_BOUNDS,
    BoundContext,
    bound_label,
    evaluate_all,
    evaluate_primitive_check,
    evaluate_radius_bound,
    expand_all,
    parse_bound_label,
    verify_chain,
)
from radius_lab.errors import OperandError, SpecError
from radius_lab.linalg import ScalarFn, spectral_norm

from conftest import random_matrix

NILPOTENT = np.array([[0, 0], [3, 0]], dtype=complex)
TRIANGULAR = np.array([[2, 1], [0, 4]], dtype=complex)


def test_catalog_entries_are_unique_and_documented():
    assert len(set(CATALOG)) == len(CATALOG)
    for bid, (degree, kind, statement) in RADIUS_BOUNDS.items():
        assert degree in (1, 2, "r") and kind in (None, "r", "f") and statement
    assert all(PRIMITIVES.values())


@pytest.mark.parametrize("bid,param", expand_all())
def test_labels_round_trip(bid, param):
    label = bound_label(bid, param)
    assert parse_bound_label(label) == (bid, param)


@pytest.mark.parametrize("label", ["nope", "thm29(r=2)", "cor_power(f=identity)", "cor_power(q=1)", "thm24(f=exp)"])
def test_bad_labels(label):
    with pytest.raises(SpecError):
        parse_bound_label(label)


def test_linear_shift_bound_on_triangular():
    rep = evaluate_radius_bound(TRIANGULAR, "thm31_lin")
    assert rep.lhs == pytest.approx(2.968, abs=5e-3)
    assert rep.rhs == pytest.approx(4.118, abs=5e-3)
    assert rep.slack > 0


def test_squared_refinement_is_tight_on_nilpotent():
    rep = evaluate_radius_bound(NILPOTENT, "thm29")
    assert rep.rhs == pytest.approx(2.25, abs=1e-9)
    assert rep.lhs == pytest.approx(2.25, abs=1e-9)
    assert rep.witness["inf_lower"] == pytest.approx(4.5, abs=1e-9)
    assert not rep.violated()


def test_identity_upper_is_equality():
    rep = evaluate_radius_bound(np.eye(3), "eq7_upper")
    assert (rep.lhs, rep.rhs) == (pytest.approx(1.0), pytest.approx(1.0))
    assert rep.slack == pytest.approx(0.0, abs=1e-14)


def test_applicability_reasons():
    assert evaluate_radius_bound(NILPOTENT, "thm35").reason == "not-invertible"
    assert evaluate_radius_bound(NILPOTENT, "cor_power", 1.5).reason == "not-hyponormal"
    z = np.zeros((2, 2))
    assert evaluate_radius_bound(z, "thm31_sq").reason == "zero-matrix"
    assert evaluate_radius_bound(z, "cor_c1").reason == "zero-matrix"
    assert evaluate_radius_bound(z, "eq7_upper").slack == 0.0
    with pytest.raises(SpecError):
        evaluate_radius_bound(NILPOTENT, "cor_power", 2.5)


@pytest.mark.parametrize("i", range(8))
def test_reports_on_random_matrices(i):
    A = random_matrix("ginibre", 2 + i % 7, 50, i)
    for rep in evaluate_all(A):
        assert rep.slack == rep.rhs - rep.lhs
        if rep.applicable:
            assert not rep.violated(), rep
        else:
            assert rep.reason in ("not-hyponormal", "not-invertible", "zero-matrix")


@pytest.mark.parametrize("i", range(6))
def test_homogeneity(i):
    A = random_matrix("ginibre" if i % 2 else "normal", 2 + i, 51, i)
    one, two = evaluate_all(A), evaluate_all(2 * A)
    nrm = spectral_norm(2 * A)
    for a, b in zip(one, two):
        assert a.id == b.id
        tol = 1e-8 * max(1.0, nrm**a.degree)
        assert b.slack == pytest.approx(2**a.degree * a.slack, abs=tol), a.id


@pytest.mark.parametrize("i", range(6))
def test_normal_degeneracy(i):
    A = random_matrix("normal", 2 + i, 52, i)
    ctx = BoundContext(A)
    eq7 = evaluate_radius_bound(A, "eq7_upper", ctx=ctx)
    assert eq7.slack == pytest.approx(0.0, abs=1e-9 * ctx.norm)
    cor = evaluate_radius_bound(A, "cor_power", 1.0, ctx)
    half = evaluate_radius_bound(A, "half_abs_sum", ctx=ctx)
    assert cor.applicable
    assert abs(cor.rhs - half.rhs) <= 1e-10 * max(1.0, ctx.norm)
    for f in (ScalarFn(1.0), ScalarFn(1.5), ScalarFn(2.0)):
        assert not evaluate_radius_bound(A, "thm24", f, ctx).violated()


def test_chain_orderings_on_examples():
    _, checks = verify_chain(NILPOTENT)
    first = checks[0]
    assert first.holds and first.lhs == pytest.approx(2.25) and first.rhs == pytest.approx(4.5)
    _, checks = verify_chain(TRIANGULAR)
    lin = next(c for c in checks if c.name == "thm31_lin_refines_eq7_lower")
    assert lin.applicable and lin.holds
    assert lin.lhs == pytest.approx(2.079, abs=5e-3) and lin.rhs == pytest.approx(2.968, abs=5e-3)
    with pytest.raises(OperandError):
        verify_chain(np.zeros((2, 2)))


@pytest.mark.parametrize("i", range(5))
def test_chain_orderings_random(i):
    _, checks = verify_chain(random_matrix("normal" if i % 2 else "ginibre", 2 + i % 2, 53, i))
    assert all(c.holds for c in checks)


def test_primitive_examples():
    rep = evaluate_primitive_check("lem_log", alpha=1.0)
    assert (rep.lhs, rep.rhs, rep.slack) == (0.0, 0.0, 0.0)
    rep = evaluate_primitive_check("zou", a=math.e**2, b=1.0)
    assert rep.lhs == pytest.approx(1.5 * math.e) and rep.rhs == pytest.approx((math.e**2 + 1) / 2)
    assert rep.slack > 0
    assert evaluate_primitive_check("zou", a=2.0, b=2.0).slack == pytest.approx(0.0, abs=1e-15)
    x = np.array([0.6, 0.8j])
    rep = evaluate_primitive_check("vec_cs", x=x, y=x)
    assert rep.lhs == pytest.approx(1.0) and rep.rhs == pytest.approx(1.0)


def test_kian_lemma_equality_on_diagonal_pair():
    rep = evaluate_primitive_check("kian_lemma", As=[np.diag([3.0, 0.0]), np.diag([0.0, 3.0])], weights=[0.5, 0.5])
    assert rep.lhs == pytest.approx(2.25)
    assert rep.rhs == pytest.approx(2.25, abs=1e-9)
    assert rep.witness["certified"]


@pytest.mark.parametrize(
    "bid,ops",
    [
        ("lem_log", {"alpha": 0.5}),
        ("zou", {"a": 0.0, "b": 1.0}),
        ("norm_sum", {"A": -np.eye(2), "B": np.eye(2)}),
        ("norm_power", {"A": np.eye(2), "B": np.eye(2), "r": 1.5}),
        ("gram_lemma", {"x": [1, 0], "y": [1, 0], "zs": [[1, 0], [0, 1]]}),
        ("vec_cs", {"x": [0, 0], "y": [1, 0]}),
        ("mixed_schwarz", {"A": np.eye(2), "x": [1, 0]}),
        ("kian_lemma", {"As": [np.eye(2)], "weights": [1.0], "r": 1.0}),
    ],
)
def test_primitive_operand_errors(bid, ops):
    with pytest.raises(OperandError):
        evaluate_primitive_check(bid, **ops)


def complex_vectors(n):
    parts = st.floats(-10, 10, allow_nan=False)
    return st.lists(st.tuples(parts, parts), min_size=n, max_size=n).map(
        lambda v: np.array([complex(a, b) for a, b in v])
    )


@settings(max_examples=200, deadline=None)
@given(complex_vectors(3), complex_vectors(3))
def test_vec_cs_hypothesis(x, y):
    if np.linalg.norm(x) < 1e-6 or np.linalg.norm(y) < 1e-6:
        return
    assert not evaluate_primitive_check("vec_cs", x=x, y=y).violated()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 4))
def test_pointwise_vector_inequalities(seed, n):
    A = random_matrix("ginibre", n, seed, 0)
    x = random_matrix("ginibre", n, seed, 1)[0]
    assert not evaluate_primitive_check("vec_cs_op", A=A, x=x).violated()
    assert not evaluate_primitive_check("variance_vec", A=A, x=x).violated()
    assert not evaluate_primitive_check("mixed_schwarz", A=A, x=x, y=random_matrix("ginibre", n, seed, 2)[1]).violated()
