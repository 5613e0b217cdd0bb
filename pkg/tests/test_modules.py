import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettires.errors import DimensionError, RingMismatchError
from bettires.modules import GradedFreeModule, RingMatrix, tensor, wedge_power
from bettires.ring import PrimeField, Ring


@pytest.fixture
def R():
    return Ring(PrimeField(), ["x0", "x1", "x2", "x3"])


def test_wedge_square_of_rank_four(R):
    P = GradedFreeModule(R, (1, 1, 1, 1))
    W = wedge_power(P, 2)
    assert W.rank == 6
    assert set(W.twists) == {2}


def test_wedge_zero_is_ring(R):
    P = GradedFreeModule(R, (1, 1, 1))
    W = wedge_power(P, 0)
    assert W.rank == 1 and W.twists == (0,)


def test_wedge_top_of_koszul(R):
    # P = R^(n-1)(-1) with n = 4: wedge^(n-1) has rank one, twist n-1
    P = GradedFreeModule(R, (1, 1, 1))
    W = wedge_power(P, 3)
    assert W.rank == 1 and W.twists == (3,)
    assert wedge_power(P, 4).rank == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5))
def test_wedge_label_roundtrip(rank, i):
    R = Ring(PrimeField(), ["x0", "x1"])
    P = GradedFreeModule(R, (1,) * rank)
    W = wedge_power(P, i)
    assert W.rank == math.comb(rank, i)
    if W.labels:
        index = {s: pos for pos, s in enumerate(W.labels)}
        for pos, s in enumerate(W.labels):
            assert index[s] == pos


def test_tensor_ranks_and_twists(R):
    A = GradedFreeModule(R, (1, 1))
    B = GradedFreeModule(R, (1, 1))
    T = tensor(A, B)
    assert T.rank == 4 and set(T.twists) == {2}
    Z = GradedFreeModule(R, ())
    assert tensor(A, Z).rank == 0


def test_tensor_wedge_block_count(R):
    # wedge^2(R(-1)^4) (x) R(-2)^3 has rank 18, twists -4
    P = GradedFreeModule(R, (1, 1, 1, 1))
    Q = GradedFreeModule(R, (2, 2, 2))
    T = tensor(wedge_power(P, 2), Q)
    assert T.rank == 18 and set(T.twists) == {4}


def test_tensor_ring_mismatch(R):
    other = Ring(PrimeField(), ["y0"])
    with pytest.raises(RingMismatchError):
        tensor(GradedFreeModule(R, (0,)), GradedFreeModule(other, (0,)))


def test_compose_with_identity(R):
    F = GradedFreeModule(R, (0, 0))
    G = GradedFreeModule(R, (1, 1, 1))
    x0, x1, x2 = (R.variable(i) for i in range(3))
    M = RingMatrix.from_entries(G, F, [[x0, x1, x2], [x1, x2, x0]])
    assert M.compose(RingMatrix.identity(G)).columns == M.columns
    assert RingMatrix.identity(F).compose(M).columns == M.columns


def test_compose_dimension_error(R):
    F = GradedFreeModule(R, (0,))
    G = GradedFreeModule(R, (1, 1))
    M = RingMatrix.from_entries(G, F, [[R.variable(0), R.variable(1)]])
    with pytest.raises(DimensionError):
        M.compose(M)


def test_koszul_composition_is_zero(R):
    from bettires.ropes import koszul_complex

    res = koszul_complex(3, ring=R)
    for a, b in zip(res.differentials, res.differentials[1:]):
        assert a.compose(b).is_zero()


def test_homogeneity_validator_recomputes_degrees(R):
    F = GradedFreeModule(R, (1,))
    G = GradedFreeModule(R, (2,))
    x0 = R.variable(0)
    good = RingMatrix.from_entries(G, F, [[x0]])
    assert good.is_homogeneous()
    bad = RingMatrix.from_entries(G, F, [[x0 * x0]])
    assert not bad.is_homogeneous()


def test_printed_relation_matrices_compose_to_zero(R):
    """The two explicit matrices resolving a double line in P^3.

    Generators ordered (x0^2, x0*x1, x1^2, x0*F + x1*G) with F = t, G = u.
    """
    ring = Ring(PrimeField(), ["x0", "x1", "t", "u"])
    x0, x1, t, u = (ring.variable(i) for i in range(4))
    F, G = t, u
    zero = ring.zero()
    F1 = GradedFreeModule(ring, (2, 2, 2, 2))
    F2 = GradedFreeModule(ring, (3, 3, 3, 3))
    F3 = GradedFreeModule(ring, (4,))
    M1 = RingMatrix.from_entries(
        F2,
        F1,
        [
            [x1, zero, F, zero],
            [-x0, x1, G, F],
            [zero, -x0, zero, G],
            [zero, zero, -x0, -x1],
        ],
    )
    M2 = RingMatrix.from_entries(F3, F2, [[-F], [-G], [x1], [-x0]])
    assert M1.check_homogeneous() and M2.check_homogeneous()
    assert M1.compose(M2).is_zero()
    # and the columns of M1 are genuine relations on the ideal generators
    gens_mat = RingMatrix.from_entries(
        F1,
        GradedFreeModule(ring, (0,)),
        [[x0 * x0, x0 * x1, x1 * x1, x0 * F + x1 * G]],
    )
    assert gens_mat.compose(M1).is_zero()


def test_transpose_swaps_entries(R):
    F = GradedFreeModule(R, (0, 0))
    G = GradedFreeModule(R, (1, 1, 1))
    x = [R.variable(i) for i in range(4)]
    M = RingMatrix.from_entries(G, F, [[x[0], x[1], x[2]], [x[1], x[2], x[3]]])
    Mt = M.transpose()
    assert Mt.source.rank == 2 and Mt.target.rank == 3
    for i in range(2):
        for j in range(3):
            assert Mt.entry(j, i) == M.entry(i, j)
    assert Mt.is_homogeneous()
