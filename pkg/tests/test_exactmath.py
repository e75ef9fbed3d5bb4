"""Scalar fields and exact linear algebra."""
import random
from fractions import Fraction

import pytest

from reescurve.fields import (
    DEFAULT_PRIME,
    BackendMismatch,
    PrimeField,
    QQ,
    field_from_spec,
    is_prime,
)
from reescurve.linalg import (
    ExactMatrix,
    RowReducer,
    ShapeMismatch,
    linear_algebra_kit,
)

FP = PrimeField(DEFAULT_PRIME)
FP_SMALL = PrimeField(10007)


def naive_cofactor_det(rows, field):
    """Independent determinant oracle (Laplace expansion)."""
    n = len(rows)
    if n == 0:
        return field.one
    if n == 1:
        return rows[0][0]
    acc = field.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = field.mul(rows[0][j], naive_cofactor_det(minor, field))
        acc = field.add(acc, term) if j % 2 == 0 else field.sub(acc, term)
    return acc


def test_field_spec_parsing():
    assert field_from_spec("q") == QQ
    assert field_from_spec("fp:10007") == FP_SMALL
    assert field_from_spec("fp") == FP
    with pytest.raises(ValueError):
        field_from_spec("fp:10006")  # composite
    with pytest.raises(ValueError):
        field_from_spec("weird")


def test_default_prime_is_62_bit():
    assert is_prime(DEFAULT_PRIME)
    assert DEFAULT_PRIME.bit_length() == 62


def test_scalar_coercion():
    assert QQ.coerce("3/4") == Fraction(3, 4)
    assert FP_SMALL.coerce(-1) == 10006
    assert FP_SMALL.coerce("1/2") == FP_SMALL.div(1, 2)
    assert FP_SMALL.mul(FP_SMALL.coerce("1/2"), 2) == 1


def test_identity_kit():
    m = ExactMatrix.identity(QQ, 2)
    kit = linear_algebra_kit(m)
    assert kit.rank == 2
    assert kit.det == 1
    assert kit.nullspace == []


def test_nullspace_normalization_1x2():
    # [1 1] -> nullspace basis {(1, -1)} after first-nonzero-to-1 scaling
    m = ExactMatrix(QQ, [[1, 1]])
    assert m.nullspace() == [[Fraction(1), Fraction(-1)]]


def test_sylvester_det_vs_cofactor_oracle():
    # Sylvester matrix of T0^2+T1^2 and T0^2-T1^2 (4x4), det = 4 over Q
    rows = [
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 0, -1, 0],
        [0, 1, 0, -1],
    ]
    m = ExactMatrix(QQ, rows)
    expected = naive_cofactor_det(m.rows, QQ)
    assert expected == 4
    assert m.det() == 4


@pytest.mark.parametrize("field", [QQ, FP_SMALL, FP])
def test_nullspace_vectors_annihilate(field):
    rng = random.Random(7)
    for _ in range(10):
        nr, nc = rng.randint(1, 6), rng.randint(1, 8)
        m = ExactMatrix(field, [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)])
        ns = m.nullspace()
        assert len(ns) == nc - m.rank()
        for v in ns:
            assert all(field.is_zero(x) for x in m.mul_vec(v))


@pytest.mark.parametrize("field", [QQ, FP_SMALL, FP])
def test_rank_invariant_under_row_permutation(field):
    rng = random.Random(11)
    for _ in range(10):
        rows = [[rng.randint(-5, 5) for _ in range(7)] for _ in range(5)]
        m1 = ExactMatrix(field, rows)
        perm = rows[:]
        rng.shuffle(perm)
        m2 = ExactMatrix(field, perm)
        assert m1.rank() == m2.rank()
        assert m1.rref() == m2.rref()


def test_fp_vs_q_rank_agreement():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[rng.randint(-50, 50) for _ in range(9)] for _ in range(6)]
        assert ExactMatrix(QQ, rows).rank() == ExactMatrix(FP, rows).rank()


@pytest.mark.parametrize("field", [QQ, FP_SMALL, FP])
def test_solve_particular_and_inconsistent(field):
    m = ExactMatrix(field, [[1, 2, 3], [2, 4, 6]])
    sol = m.solve([1, 2])
    assert sol is not None
    assert m.mul_vec(sol) == [field.coerce(1), field.coerce(2)]
    assert m.solve([1, 3]) is None


@pytest.mark.parametrize("field", [QQ, FP_SMALL, FP])
def test_solver_reuse_and_determinism(field):
    rng = random.Random(5)
    rows = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(4)]
    m = ExactMatrix(field, rows)
    solver = m.solver()
    for _ in range(5):
        x = [rng.randint(-3, 3) for _ in range(6)]
        b = m.mul_vec([field.coerce(v) for v in x])
        sol = solver.solve(b)
        assert sol is not None
        assert m.mul_vec(sol) == b
        assert sol == m.solve(b)


def test_det_matches_fp_and_q():
    rng = random.Random(3)
    for n in (1, 2, 3, 4, 5):
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        dq = ExactMatrix(QQ, rows).det()
        assert dq == naive_cofactor_det(ExactMatrix(QQ, rows).rows, QQ)
        assert ExactMatrix(FP, rows).det() == FP.coerce(dq)


def test_det_nonsquare_raises():
    with pytest.raises(ShapeMismatch):
        ExactMatrix(QQ, [[1, 2]]).det()


def test_backend_mismatch_detected():
    from reescurve.fields import ensure_same_field

    with pytest.raises(BackendMismatch):
        ensure_same_field(QQ, FP)


def test_row_reducer_matches_across_cores():
    """Native and packed cores produce the identical canonical RREF."""
    from reescurve.linalg import _FpNativeCore, _FpPackedCore

    rng = random.Random(42)
    rows = [[rng.randrange(FP.p) for _ in range(30)] for _ in range(20)]
    rows += [rows[0], [FP.add(a, b) for a, b in zip(rows[1], rows[2])]]

    red_native = RowReducer(FP, 30, size_hint=10**6)   # big hint -> native
    red_native.add_rows(rows)
    red_packed = RowReducer(FP, 30, size_hint=0)       # small hint -> packed
    red_packed.add_rows(rows)
    if isinstance(red_native._core, _FpNativeCore):
        assert isinstance(red_packed._core, _FpPackedCore)
    assert red_native.rref() == red_packed.rref()
    assert red_native.rank == red_packed.rank == 20  # 2 dependent rows added


def test_solver_agrees_across_cores():
    rng = random.Random(43)
    rows = [[rng.randrange(FP.p) for _ in range(8)] for _ in range(6)]
    m = ExactMatrix(FP, rows)
    x = [rng.randrange(FP.p) for _ in range(8)]
    b = m.mul_vec(x)
    big = RowReducer(FP, 8 + 6, pivot_limit=8, size_hint=10**6)
    small = RowReducer(FP, 8 + 6, pivot_limit=8, size_hint=0)
    aug = []
    for i, row in enumerate(rows):
        ext = list(row) + [0] * 6
        ext[8 + i] = 1
        aug.append([FP.coerce(v) for v in ext])
    big.add_rows(aug)
    small.add_rows(aug)
    assert big.rref() == small.rref()
    assert [list(r) for r in big.residual_rows] == [list(r) for r in small.residual_rows]


def test_row_reducer_early_stop():
    red = RowReducer(QQ, 4)
    red.add_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], stop_rank=2)
    assert red.rank == 2


def test_row_reducer_contains():
    red = RowReducer(QQ, 3)
    red.add_rows([[1, 1, 0], [0, 1, 1]])
    assert red.contains([1, 2, 1])
    assert not red.contains([0, 0, 1])
    assert red.rank == 2  # contains() must not mutate
