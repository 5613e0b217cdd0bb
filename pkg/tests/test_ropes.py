import math

import pytest

from bettires.errors import RopeSpecError
from bettires.groebner import Ideal
from bettires.resolve import betti_table, hilbert_function, minimalize, scheme_report
from bettires.ropes import (
    RopeSpec,
    extra_generators,
    h1_presentation,
    is_degenerate,
    koszul_complex,
    line_ring,
    rope_complex,
    rope_ideal,
    rope_induction_sequence,
    rope_ring,
    split_complement,
    square_minimal_complex,
    square_resolution,
)


@pytest.fixture(scope="module")
def S():
    return line_ring()


def spec_p3(S, power=1):
    t, u = S.variable(0), S.variable(1)
    return RopeSpec(3, [[t**power], [u**power]])


def spec_p5_linear(S):
    t, u = S.variable(0), S.variable(1)
    z = S.zero()
    return RopeSpec(5, [[t, z, z], [-u, t, z], [z, -u, t], [z, z, -u]])


def spec_p5_split(S):
    t2, u2 = S.variable(0) ** 2, S.variable(1) ** 2
    z = S.zero()
    return RopeSpec(5, [[t2, z, z], [-u2, t2, z], [z, -u2, t2], [z, z, -u2]])


def test_rope_ideal_p3(S):
    spec = spec_p3(S)
    I = rope_ideal(spec)
    R = I.ring
    x0, x1, t, u = (R.variable(i) for i in range(4))
    want = Ideal(R, [x0 * x0, x0 * x1, x1 * x1, x0 * t + x1 * u])
    assert I == want


def test_rope_ideal_p5_printed_generators(S):
    spec = spec_p5_linear(S)
    extras = extra_generators(spec)
    R = extras[0].ring
    v = [R.variable(i) for i in range(6)]
    assert extras == [
        v[0] * v[4] - v[1] * v[5],
        v[1] * v[4] - v[2] * v[5],
        v[2] * v[4] - v[3] * v[5],
    ]


def test_rope_k0_is_squared_line_ideal(S):
    spec = RopeSpec(4, [[], [], []])
    I = rope_ideal(spec)
    R = I.ring
    xs = [R.variable(i) for i in range(3)]
    line2 = Ideal(R, [a * b for a in xs for b in xs])
    assert I == line2


def test_rope_between_line_ideal_and_its_square(S):
    spec = spec_p5_linear(S)
    I = rope_ideal(spec)
    R = I.ring
    xs = [R.variable(i) for i in range(4)]
    line = Ideal(R, xs)
    square = line.product(line)
    assert I.contains_ideal(square)
    assert line.contains_ideal(I)


def test_rope_degree_is_n_minus_k(S):
    assert scheme_report(rope_ideal(spec_p5_linear(S))).degree == 2
    assert scheme_report(rope_ideal(spec_p3(S))).degree == 2


def test_invalid_codim_rejected(S):
    t = S.variable(0)
    with pytest.raises(RopeSpecError):
        RopeSpec(4, [[t], [t], [S.zero()]])  # minors (t), codimension one
    with pytest.raises(RopeSpecError):
        RopeSpec(3, [[t], [S.zero()]])  # zero row makes the minor ideal principal
    with pytest.raises(RopeSpecError):
        RopeSpec(3, [[t + t * t], [S.one()]])  # inhomogeneous column


def test_full_width_matrix_cannot_reach_codim_two(S):
    # k = n-1 columns: the single maximal minor generates a principal ideal
    t, u = S.variable(0), S.variable(1)
    with pytest.raises(RopeSpecError):
        RopeSpec(3, [[t, u], [u, t]])


def test_koszul_complex_small():
    res = koszul_complex(2)
    assert [m.rank for m in res.modules] == [1, 2, 1]
    assert res.is_complex()
    d2 = res.differentials[1]
    col = d2.columns[0].components()
    R = d2.ring
    assert {str(col[0]), str(col[1])} == {str(-R.variable(1)), str(R.variable(0))}


def test_koszul_ranks_binomial():
    res = koszul_complex(4)
    assert [m.rank for m in res.modules] == [math.comb(4, i) for i in range(5)]


def test_koszul_resolves_line_ideal():
    res = koszul_complex(3)
    R = res.modules[0].ring
    I = Ideal(R, [R.variable(i) for i in range(3)])
    assert res.betti() == betti_table(I)


def test_square_resolution_terms_and_minimalization():
    sq = square_resolution(3)
    assert [m.rank for m in sq.modules] == [1, 4, 3]
    assert sq.is_complex()
    # d'_1 sends e_i (x) e_j to x_i x_j
    d1 = sq.differentials[0]
    R = d1.ring
    assert d1.entry(0, 0) == R.variable(0) * R.variable(0)
    small = minimalize(sq)
    assert [m.rank for m in small.modules] == [1, 3, 2]
    xs = [R.variable(i) for i in range(2)]
    I = Ideal(R, [a * b for a in xs for b in xs])
    assert small.betti() == betti_table(I)


def test_square_resolution_p5():
    sq = square_resolution(5)
    assert sq.is_complex()
    assert minimalize(sq).betti().entries == {
        (0, 0): 1,
        (1, 2): 10,
        (2, 3): 20,
        (3, 4): 15,
        (4, 5): 4,
    }


def test_split_complement_ranks_and_projections():
    sc = split_complement(5)
    kd = sc.koszul
    for i in range(1, 5):
        upper_rank = kd.wedge(i + 1).rank
        assert sc.module(i).rank == kd.tensors[i].rank - upper_rank
        proj, inc = sc.projection(i), sc.inclusion(i)
        composite = proj.compose(inc)
        assert composite.columns == RingMatrix_identity_columns(sc.module(i))
        if i + 1 <= 4:
            assert proj.compose(kd.partial(i + 1)).is_zero()
    assert sc.module(1).rank == 10 and sc.module(2).rank == 20


def RingMatrix_identity_columns(module):
    from bettires.modules import RingMatrix

    return RingMatrix.identity(module).columns


def test_split_complement_n3():
    sc = split_complement(3)
    assert [m.rank for m in sc.modules] == [3, 2]
    assert square_minimal_complex(3).is_complex()


def test_rope_complex_p3_printed_shape(S):
    # shape R(-b-1) + R(-2)^3 <- R(-b-2)^2 + R(-3)^2 <- R(-b-3)
    for power in (1, 2):
        spec = spec_p3(S, power)
        G = rope_complex(spec)
        assert G.is_complex()
        b = spec.beta[0]
        assert sorted(G.modules[1].twists) == sorted((b + 1, 2, 2, 2))
        assert sorted(G.modules[2].twists) == sorted((b + 2, b + 2, 3, 3))
        assert G.modules[3].twists == (b + 3,)
        assert G.betti() == betti_table(rope_ideal(spec))


def test_rope_complex_p5_split_matches_publication(S):
    spec = spec_p5_split(S)
    G = rope_complex(spec)
    assert G.is_complex()
    assert not G.has_constant_entries()
    assert [sorted(m.twists) for m in G.modules[1:]] == [
        [2] * 10 + [3] * 3,
        [3] * 20 + [4] * 12,
        [4] * 15 + [5] * 18,
        [5] * 4 + [6] * 12,
        [7] * 3,
    ]
    assert G.betti() == betti_table(rope_ideal(spec))
    assert not is_degenerate(spec)


def test_rope_complex_p5_linear_is_minimal_too(S):
    spec = spec_p5_linear(S)
    G = rope_complex(spec)
    assert G.is_complex() and not G.has_constant_entries()
    assert G.betti() == betti_table(rope_ideal(spec))


def test_degenerate_rope_gives_valid_nonminimal_complex(S):
    t, u = S.variable(0), S.variable(1)
    z = S.zero()
    spec = RopeSpec(4, [[S.one(), z], [z, t], [z, u]])
    assert is_degenerate(spec)
    G = rope_complex(spec)
    assert G.is_complex()
    assert G.has_constant_entries()
    small = minimalize(G)
    assert small.betti() == betti_table(rope_ideal(spec))
    assert sum(m.rank for m in small.modules) < sum(m.rank for m in G.modules)


def test_rank_bookkeeping_of_terms(S):
    spec = spec_p5_split(S)
    G = rope_complex(spec)
    sc_ranks = [m.rank for m in split_complement(5).modules]
    n, k = spec.n, spec.k
    for i in range(1, n):
        assert G.modules[i].rank == sc_ranks[i - 1] + math.comb(n - 1, i - 1) * k
    assert G.modules[n].rank == math.comb(n - 1, n - 1) * k


def test_rope_induction_sequence(S):
    spec = spec_p5_split(S)
    rep = rope_induction_sequence(spec)
    assert rep.identity_holds
    assert rep.degree_reduced == rep.degree_full + 1


def test_rope_induction_k1_leaves_squared_line(S):
    spec = spec_p3(S)
    rep = rope_induction_sequence(spec)
    R = rep.reduced_ideal.ring
    xs = [R.variable(i) for i in range(2)]
    assert rep.reduced_ideal == Ideal(R, [a * b for a in xs for b in xs])
    assert rep.identity_holds


def test_h1_presentation_linear_p5(S):
    spec = spec_p5_linear(S)
    pres = h1_presentation(spec)
    # hand-solved syzygy of the transposed matrix: (u^3, u^2 t, u t^2, t^3)
    assert pres.alphas == (3,)
    entries = sorted(str(pres.matrix.entry(0, j).monic()) for j in range(4))
    assert entries == sorted(["u^3", "t*u^2", "t^2*u", "t^3"])
    assert pres.identity_holds
    assert pres.minors_codim_ok
    assert {d: v for d, v in pres.coker_hilbert.items() if v} == {-2: 1, -1: 2, 0: 3}


def test_h1_presentation_split_p5(S):
    pres = h1_presentation(spec_p5_split(S))
    assert pres.identity_holds and pres.minors_codim_ok
    assert pres.alphas == (6,)


def test_h1_presentation_p3(S):
    pres = h1_presentation(spec_p3(S))
    assert pres.identity_holds
    assert {d: v for d, v in pres.coker_hilbert.items() if v} == {0: 1}
    # total length of the cohomology module
    assert sum(pres.coker_hilbert.values()) == 1


def test_h1_presentation_composition_vanishes(S):
    spec = spec_p5_linear(S)
    pres = h1_presentation(spec)
    # A is made of syzygies of the columns of B^t: A * B = 0 entrywise
    A = pres.matrix
    B_entries = spec.entries
    Sring = spec.s_ring
    for row in range(A.target.rank):
        for j in range(spec.k):
            total = Sring.zero()
            for i in range(spec.n - 1):
                total = total + A.entry(row, i) * B_entries[i][j]
            assert total.is_zero()
