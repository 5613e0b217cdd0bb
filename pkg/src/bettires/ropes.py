"""Ropes on a line: ideal construction, the non-minimal resolution of the
squared line ideal, its split minimal complex, the explicit rope resolution
and the degree-two cohomology presentation over the line's coordinate ring.

Coordinates follow a fixed convention: the supporting line is
x_0 = ... = x_{n-2} = 0 in P^n and the ambient ring is
K[x_0, ..., x_{n-2}, t, u], so the line's coordinate ring is S = K[t, u].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import RopeSpecError
from .groebner import Ideal, minimal_generators
from .linalg import mat_inv, rref, transpose
from .modules import GradedFreeModule, RingMatrix
from .resolve import (
    FreeResolution,
    hilbert_function,
    krull_dimension,
    scheme_report,
    schreyer_syzygies,
)
from .ring import Polynomial, PrimeField, Ring


def rope_ring(n, field=None) -> Ring:
    if field is None:
        field = PrimeField()
    names = [f"x{i}" for i in range(n - 1)] + ["t", "u"]
    return Ring(field, names)


def line_ring(field=None) -> Ring:
    if field is None:
        field = PrimeField()
    return Ring(field, ["t", "u"])


def _s_to_r(f: Polynomial, R: Ring) -> Polynomial:
    """Embed K[t,u] into the rope ring (t, u are the last two variables)."""
    pad = R.num_vars - 2
    return R.from_dict({(0,) * pad + e: c for e, c in f.terms})


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    total = ring.zero()
    for j in range(len(rows)):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


class RopeSpec:
    """The data (n, k, B) of a rope on the fixed line.

    ``entries`` is the (n-1) x k matrix B over S = K[t,u]; column j is
    homogeneous of degree beta_j and the maximal-minors ideal of B must
    have codimension two in S.
    """

    def __init__(self, n, entries, field=None):
        if n < 3:
            raise RopeSpecError("need ambient dimension n >= 3")
        if field is None:
            field = PrimeField()
        self.n = n
        self.field = field
        self.s_ring = line_ring(field)
        rows = [tuple(self.s_ring.convert(f) for f in row) for row in entries]
        if len(rows) != n - 1:
            raise RopeSpecError(f"B must have {n - 1} rows")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise RopeSpecError("ragged matrix")
        self.k = widths.pop()
        self.entries = tuple(rows)
        self.beta = self._column_degrees()
        self._check_codim()

    def _column_degrees(self):
        beta = []
        for j in range(self.k):
            degs = {f.degree() for f in (row[j] for row in self.entries) if not f.is_zero()}
            if not degs:
                raise RopeSpecError(f"column {j} of B is zero")
            if len(degs) > 1 or any(not (row[j].is_zero() or row[j].is_homogeneous()) for row in self.entries):
                raise RopeSpecError(f"column {j} of B is not homogeneous")
            beta.append(degs.pop())
        return tuple(beta)

    def _check_codim(self):
        if self.k == 0:
            return
        if self.k > self.n - 1:
            raise RopeSpecError("B has more columns than rows")
        minors = []
        for rows_idx in combinations(range(self.n - 1), self.k):
            sub = [list(self.entries[i]) for i in rows_idx]
            minors.append(_det(sub))
        I = Ideal(self.s_ring, minors)
        if I.is_zero() or krull_dimension(I) != 0:
            raise RopeSpecError("maximal minors of B do not have codimension two")

    def drop_last_column(self) -> "RopeSpec":
        if self.k == 0:
            raise RopeSpecError("no column to drop")
        return RopeSpec(self.n, [row[:-1] for row in self.entries], self.field)

    def __repr__(self):
        return f"RopeSpec(n={self.n}, k={self.k}, beta={self.beta})"


def rope_ideal(spec: RopeSpec) -> Ideal:
    """(I_L)^2 together with the entries of [x_0 .. x_r] B."""
    R = rope_ring(spec.n, spec.field)
    r = spec.n - 2
    xs = [R.variable(i) for i in range(r + 1)]
    gens = [xs[i] * xs[j] for i in range(r + 1) for j in range(i, r + 1)]
    for j in range(spec.k):
        g = R.zero()
        for i in range(r + 1):
            g = g + xs[i] * _s_to_r(spec.entries[i][j], R)
        gens.append(g)
    return Ideal(R, gens)


def extra_generators(spec: RopeSpec):
    """The k generators of the rope ideal beyond the squared line ideal."""
    return list(rope_ideal(spec).gens[-spec.k :]) if spec.k else []


# ---------------------------------------------------------------------------
# Koszul scaffolding for the line ideal


class _KoszulData:
    """Wedge powers of P = R^{n-1}(-1) and the standard maps between them.

    Sign conventions (S = {s_1 < ... < s_i}):
      contraction  delta_i(e_S) = sum_l (-1)^(i-l) x_{s_l} e_{S - s_l}
      comultiply   partial_i(e_S) = sum_l (-1)^(l+1) e_{S - s_l} (x) e_{s_l}
    chosen so that (delta_(i-1) (x) id) o partial_i = partial_(i-1) o delta_i,
    which makes all the block complexes below square to zero.
    """

    def __init__(self, ring: Ring, num_lin: int):
        self.ring = ring
        self.m = num_lin  # rank of P
        self.F0 = GradedFreeModule(ring, (0,))
        self.P = GradedFreeModule(ring, (1,) * num_lin)
        self.wedges = {}
        self.windex = {}
        for i in range(0, num_lin + 1):
            subsets = list(combinations(range(num_lin), i))
            self.wedges[i] = GradedFreeModule(ring, (i,) * len(subsets), labels=subsets)
            self.windex[i] = {s: pos for pos, s in enumerate(subsets)}
        self.tensors = {}
        self.tindex = {}
        for i in range(0, num_lin + 1):
            labels = [(pos, j) for pos in range(self.wedges[i].rank) for j in range(num_lin)]
            self.tensors[i] = GradedFreeModule(ring, (i + 1,) * len(labels), labels=labels)
            self.tindex[i] = {lab: pos for pos, lab in enumerate(labels)}

    def wedge(self, i):
        return self.wedges.get(i, GradedFreeModule(self.ring, ()))

    def delta(self, i) -> RingMatrix:
        """delta_i : wedge^i P -> wedge^(i-1) P (delta_1(e_j) = x_j)."""
        src = self.wedges[i]
        tgt = self.F0 if i == 1 else self.wedges[i - 1]
        cols = []
        for S in src.labels:
            d = {}
            for l, s in enumerate(S, start=1):
                rest = tuple(x for x in S if x != s)
                row = 0 if i == 1 else self.windex[i - 1][rest]
                sign = 1 if (i - l) % 2 == 0 else -1
                e = [0] * self.ring.num_vars
                e[s] = 1
                d[(row, tuple(e))] = sign % self.ring.field.p
            cols.append(tgt.element(d))
        return RingMatrix(src, tgt, cols)

    def partial(self, i) -> RingMatrix:
        """partial_i : wedge^i P -> wedge^(i-1) P (x) P, scalar entries."""
        src = self.wedges[i]
        tgt = self.tensors[i - 1]
        zero = (0,) * self.ring.num_vars
        cols = []
        for S in src.labels:
            d = {}
            for l, s in enumerate(S, start=1):
                rest = tuple(x for x in S if x != s)
                pos = self.tindex[i - 1][(self.windex[i - 1][rest], s)]
                sign = 1 if (l + 1) % 2 == 0 else -1
                d[(pos, zero)] = sign % self.ring.field.p
            cols.append(tgt.element(d))
        return RingMatrix(src, tgt, cols)

    def delta_tensor_id(self, i) -> RingMatrix:
        """delta_i (x) id_P : wedge^i P (x) P -> wedge^(i-1) P (x) P."""
        src = self.tensors[i]
        tgt = self.tensors[i - 1]
        delta = self.delta(i)
        cols = []
        for (wpos, j) in src.labels:
            d = {}
            for (row, e), c in delta.columns[wpos].terms:
                pos = self.tindex[i - 1][(row, j)]
                d[(pos, e)] = c
            cols.append(tgt.element(d))
        return RingMatrix(src, tgt, cols)

    def delta1_tensor_delta1(self) -> RingMatrix:
        """P (x) P -> R, e_i (x) e_j -> x_i x_j."""
        src = self.tensors[1]
        cols = []
        for (i, j) in src.labels:
            e = [0] * self.ring.num_vars
            e[i] += 1
            e[j] += 1
            cols.append(self.F0.element({(0, tuple(e)): 1}))
        return RingMatrix(src, self.F0, cols)


def koszul_complex(num_lin, ring=None, field=None) -> FreeResolution:
    """Koszul resolution of the ideal of num_lin coordinates."""
    if num_lin < 1:
        raise ValueError("need at least one linear form")
    if ring is None:
        ring = rope_ring(num_lin + 1, field)
    kd = _KoszulData(ring, num_lin)
    modules = [kd.F0] + [kd.wedges[i] for i in range(1, num_lin + 1)]
    diffs = [kd.delta(i) for i in range(1, num_lin + 1)]
    return FreeResolution(modules, diffs, minimal=True)


def _scale_matrix(M: RingMatrix, c) -> RingMatrix:
    return RingMatrix(M.source, M.target, [col.scale(c) for col in M.columns])


def _block_matrix(targets, sources, blocks, ring) -> RingMatrix:
    """Assemble a block matrix; blocks[t][s] maps sources[s] into targets[t]."""
    tgt = GradedFreeModule(ring, tuple(a for m in targets for a in m.twists))
    src = GradedFreeModule(ring, tuple(a for m in sources for a in m.twists))
    offsets = []
    acc = 0
    for m in targets:
        offsets.append(acc)
        acc += m.rank
    cols = []
    for si, smod in enumerate(sources):
        for j in range(smod.rank):
            d = {}
            for ti in range(len(targets)):
                M = blocks[ti][si]
                if M is None:
                    continue
                for (row, e), c in M.columns[j].terms:
                    d[(row + offsets[ti], e)] = c
            cols.append(tgt.element(d))
    return RingMatrix(src, tgt, cols)


def square_resolution(n, field=None) -> FreeResolution:
    """The block non-minimal resolution of (I_L)^2 in P^n."""
    if n < 3:
        raise ValueError("need n >= 3")
    ring = rope_ring(n, field)
    kd = _KoszulData(ring, n - 1)
    modules = [kd.F0, kd.tensors[1]]
    diffs = [kd.delta1_tensor_delta1()]
    for i in range(2, n):
        Fi_parts = [kd.tensors[i], kd.wedges[i]]
        if i == 2:
            M = _block_matrix(
                [kd.tensors[1]],
                Fi_parts,
                [[kd.delta_tensor_id(2), kd.partial(2)]],
                ring,
            )
        else:
            sign = 1 if i % 2 == 0 else -1
            M = _block_matrix(
                [kd.tensors[i - 1], kd.wedges[i - 1]],
                Fi_parts,
                [
                    [kd.delta_tensor_id(i), _scale_matrix(kd.partial(i), sign)],
                    [None, kd.delta(i)],
                ],
                ring,
            )
        modules.append(GradedFreeModule(ring, M.source.twists))
        diffs.append(M)
    return FreeResolution(modules, diffs, minimal=False)


@dataclass
class SplitComplement:
    """Explicit direct-summand data for D_i inside wedge^i P (x) P."""

    n: int
    ring: Ring
    koszul: _KoszulData
    modules: list  # D_1 .. D_{n-1}
    inclusions: list  # D_i -> T_i, scalar
    projections: list  # T_i -> D_i, scalar
    d_maps: list  # d_1: D_1 -> R, then d_i: D_i -> D_{i-1}

    def module(self, i):
        return self.modules[i - 1]

    def inclusion(self, i):
        return self.inclusions[i - 1]

    def projection(self, i):
        return self.projections[i - 1]

    def d(self, i):
        return self.d_maps[i - 1]


def split_complement(n, field=None) -> SplitComplement:
    """Split each comultiplication and read off the minimal complex of (I_L)^2.

    The image of partial_(i+1) has scalar entries, so a complement is
    found by row reduction over the field with smallest-index pivots.
    """
    ring = rope_ring(n, field)
    p = ring.field.p
    kd = _KoszulData(ring, n - 1)
    zero = (0,) * ring.num_vars
    modules, incs, projs = [], [], []
    for i in range(1, n):
        T = kd.tensors[i]
        upper = i + 1
        if upper > n - 1:
            D = GradedFreeModule(ring, T.twists)
            incs.append(RingMatrix.identity(T))
            projs.append(RingMatrix.identity(T))
            modules.append(D)
            continue
        part = kd.partial(upper)
        # scalar matrix of partial_(i+1), rows indexed by T's basis
        U = [[0] * part.source.rank for _ in range(T.rank)]
        for j, col in enumerate(part.columns):
            for (row, e), c in col.terms:
                U[row][j] = c
        _, pivot_rows = rref(transpose(U), p)
        free_rows = [r for r in range(T.rank) if r not in set(pivot_rows)]
        D = GradedFreeModule(ring, tuple(T.twists[r] for r in free_rows))
        # projection = bottom rows of [U | complement]^(-1)
        square = [
            [U[r][c] for c in range(part.source.rank)]
            + [1 if r == fr else 0 for fr in free_rows]
            for r in range(T.rank)
        ]
        inv = mat_inv(square, p)
        proj_rows = inv[part.source.rank :]
        inc_cols = []
        for fr in free_rows:
            inc_cols.append(T.element({(fr, zero): 1}))
        incs.append(RingMatrix(D, T, inc_cols))
        proj_cols = []
        for c in range(T.rank):
            proj_cols.append(D.element({(r, zero): proj_rows[r][c] for r in range(D.rank)}))
        projs.append(RingMatrix(T, D, proj_cols))
        modules.append(D)
    d_maps = [kd.delta1_tensor_delta1().compose(incs[0])]
    for i in range(2, n):
        d_maps.append(projs[i - 2].compose(kd.delta_tensor_id(i)).compose(incs[i - 1]))
    return SplitComplement(n, ring, kd, modules, incs, projs, d_maps)


def square_minimal_complex(n, field=None) -> FreeResolution:
    """The D-complex: minimal free resolution of (I_L)^2."""
    sc = split_complement(n, field)
    modules = [sc.koszul.F0] + sc.modules
    return FreeResolution(modules, sc.d_maps, minimal=True)


def _tensor_with_Q(kd: _KoszulData, i, Q: GradedFreeModule):
    """wedge^i P (x) Q with pair-indexed basis."""
    labels = [(pos, j) for pos in range(kd.wedges[i].rank) for j in range(Q.rank)]
    twists = tuple(i + Q.twists[j] for _, j in labels)
    return GradedFreeModule(kd.ring, twists, labels=labels)


def rope_complex(spec: RopeSpec) -> FreeResolution:
    """The explicit resolution G_* of the rope ideal.

    G_i = D_i + wedge^(i-1) P (x) Q with the block maps built from the
    split complement, the extension of B to the ambient ring and the
    Koszul contractions.  Minimal exactly when the rope is non-degenerate.
    """
    n, k = spec.n, spec.k
    sc = split_complement(n, spec.field)
    ring, kd = sc.ring, sc.koszul
    p = ring.field.p
    Q = GradedFreeModule(ring, tuple(b + 1 for b in spec.beta))
    tau_cols = []
    for j in range(k):
        d = {}
        for i in range(n - 1):
            f = _s_to_r(spec.entries[i][j], ring)
            for e, c in f.terms:
                d[(i, e)] = c
        tau_cols.append(kd.P.element(d))
    tau = RingMatrix(Q, kd.P, tau_cols)

    def id_tensor_tau(i):
        """wedge^i P (x) Q -> wedge^i P (x) P."""
        src = _tensor_with_Q(kd, i, Q)
        tgt = kd.tensors[i]
        cols = []
        for (wpos, j) in src.labels:
            d = {}
            for (prow, e), c in tau.columns[j].terms:
                d[(kd.tindex[i][(wpos, prow)], e)] = c
            cols.append(tgt.element(d))
        return RingMatrix(src, tgt, cols)

    def delta_tensor_idQ(i):
        """wedge^i P (x) Q -> wedge^(i-1) P (x) Q."""
        src = _tensor_with_Q(kd, i, Q)
        tgt = _tensor_with_Q(kd, i - 1, Q)
        delta = kd.delta(i)
        tindex = {lab: pos for pos, lab in enumerate(tgt.labels)}
        cols = []
        for (wpos, j) in src.labels:
            d = {}
            for (row, e), c in delta.columns[wpos].terms:
                d[(tindex[(row, j)], e)] = c
            cols.append(tgt.element(d))
        return RingMatrix(src, tgt, cols)

    def mu(i):
        """wedge^(i-1) P (x) Q -> D_(i-1), via the extension of B."""
        if i == 1:
            cols = []
            for j in range(k):
                f = ring.zero()
                for l in range(n - 1):
                    f = f + ring.variable(l) * _s_to_r(spec.entries[l][j], ring)
                cols.append(kd.F0.element({(0, e): c for e, c in f.terms}))
            return RingMatrix(Q, kd.F0, cols)
        return sc.projection(i - 1).compose(id_tensor_tau(i - 1))

    modules = [kd.F0]
    diffs = []
    # G_1 .. G_(n-1)
    for i in range(1, n):
        TQ = _tensor_with_Q(kd, i - 1, Q)
        G = GradedFreeModule(ring, sc.module(i).twists + TQ.twists)
        modules.append(G)
    modules.append(_tensor_with_Q(kd, n - 1, Q))

    # d'_1 = [d_1  -mu_1]
    diffs.append(
        _block_matrix(
            [kd.F0],
            [sc.module(1), _tensor_with_Q(kd, 0, Q)],
            [[sc.d(1), _scale_matrix(mu(1), p - 1)]],
            ring,
        )
    )
    for i in range(2, n):
        sign = 1 if i % 2 == 0 else p - 1
        diffs.append(
            _block_matrix(
                [sc.module(i - 1), _tensor_with_Q(kd, i - 2, Q)],
                [sc.module(i), _tensor_with_Q(kd, i - 1, Q)],
                [
                    [sc.d(i), _scale_matrix(mu(i), sign)],
                    [None, delta_tensor_idQ(i - 1)],
                ],
                ring,
            )
        )
    sign = 1 if n % 2 == 0 else p - 1
    diffs.append(
        _block_matrix(
            [sc.module(n - 1), _tensor_with_Q(kd, n - 2, Q)],
            [_tensor_with_Q(kd, n - 1, Q)],
            [[_scale_matrix(mu(n), sign)], [delta_tensor_idQ(n - 1)]],
            ring,
        )
    )
    # drop an empty top term (k = 0 reduces to the D-complex)
    while modules[-1].rank == 0:
        modules.pop()
        diffs.pop()
    return FreeResolution(modules, diffs, minimal=False)


def is_degenerate(spec: RopeSpec) -> bool:
    """A rope is degenerate exactly when its ideal contains a linear form."""
    from .resolve import betti_table

    return betti_table(rope_ideal(spec)).entry(1, 1) > 0


# ---------------------------------------------------------------------------
# induction sequence and cohomology presentation


@dataclass
class RopeInductionReport:
    full_ideal: Ideal
    reduced_ideal: Ideal
    dropped_generator: Polynomial
    identity_holds: bool
    window: int
    degree_full: int
    degree_reduced: int


def rope_induction_sequence(spec: RopeSpec, window=12) -> RopeInductionReport:
    """Drop the last column of B and certify the degree-shifted sequence
    relating the two rope ideals by a degreewise Hilbert identity."""
    if spec.k < 1:
        raise RopeSpecError("need at least one column")
    smaller = spec.drop_last_column()
    I_full = rope_ideal(spec)
    I_red = rope_ideal(smaller)
    R = I_full.ring
    n = spec.n
    F = I_full.gens[-1]
    shift = spec.beta[-1] + 1
    xs = [R.variable(i) for i in range(n - 1)]
    I_line = Ideal(R, xs)
    I_princ = Ideal(R, [F])

    def ideal_hf(I, d):
        if d < 0:
            return 0
        return math.comb(d + n, n) - hilbert_function(I, d)

    holds = all(
        ideal_hf(I_line, d - shift) + ideal_hf(I_full, d)
        == ideal_hf(I_red, d) + ideal_hf(I_princ, d)
        for d in range(window + 1)
    )
    return RopeInductionReport(
        full_ideal=I_full,
        reduced_ideal=I_red,
        dropped_generator=F,
        identity_holds=holds,
        window=window,
        degree_full=scheme_report(I_full).degree,
        degree_reduced=scheme_report(I_red).degree,
    )


@dataclass
class H1Presentation:
    matrix: RingMatrix  # A : S(-1)^(r+1) -> sum S(alpha_i - 1)
    alphas: tuple
    coker_hilbert: dict
    identity_holds: bool
    minors_codim_ok: bool | None


def h1_presentation(spec: RopeSpec, low=-2, high=10) -> H1Presentation:
    """Present the first cohomology module of the rope over S = K[t,u].

    The presentation matrix is the transpose of the syzygy matrix of the
    transpose of B; the four-term exact sequence is certified by an
    alternating Hilbert-function identity on the given degree window.
    """
    S = spec.s_ring
    r = spec.n - 2
    k = spec.k
    src = GradedFreeModule(S, (1,) * (r + 1))
    tgt = GradedFreeModule(S, tuple(1 - b for b in spec.beta))
    bt_cols = []
    for i in range(r + 1):
        d = {}
        for j in range(k):
            for e, c in spec.entries[i][j].terms:
                d[(j, e)] = c
        bt_cols.append(tgt.element(d))
    Bt = RingMatrix(src, tgt, bt_cols)
    syz = schreyer_syzygies(Bt)
    gens = minimal_generators(syz.columns)
    degrees = [g.degree() for g in gens]
    alphas = tuple(d - 1 for d in degrees)
    A_target = GradedFreeModule(S, tuple(2 - d for d in degrees))
    a_cols = []
    for i in range(r + 1):
        d = {}
        for row, g in enumerate(gens):
            f = g.component(i)
            for e, c in f.terms:
                d[(row, e)] = c
        a_cols.append(A_target.element(d))
    A = RingMatrix(GradedFreeModule(S, (1,) * (r + 1)), A_target, a_cols)

    from .groebner import module_groebner

    leads_by_row = {}
    if any(not c.is_zero() for c in A.columns):
        from .groebner import module_lead, default_module_order

        basis = module_groebner([c for c in A.columns if not c.is_zero()])
        order = default_module_order(A_target)
        for g in basis:
            row, exps = module_lead(g, order)
            leads_by_row.setdefault(row, []).append(exps)

    def dim_S(e):
        return e + 1 if e >= 0 else 0

    def coker_dim(j):
        total = 0
        for row in range(A_target.rank):
            e = j - A_target.twists[row]
            if e < 0:
                continue
            leads = leads_by_row.get(row, [])
            for a in range(e + 1):
                m = (a, e - a)
                if not any(all(x <= y for x, y in zip(le, m)) for le in leads):
                    total += 1
        return total

    coker = {j: coker_dim(j) for j in range(low, high + 1)}
    holds = True
    for j in range(low, high + 1):
        q_dim = sum(dim_S(j - (b + 1)) for b in spec.beta)
        p_dim = (r + 1) * dim_S(j - 1)
        a_dim = sum(dim_S(j - (2 - d)) for d in degrees)
        if q_dim - p_dim + a_dim - coker[j] != 0:
            holds = False
            break

    minors_ok = None
    size = r + 1 - k
    if size > 0 and len(gens) == size:
        rows = [[A.entry(i, j) for j in range(r + 1)] for i in range(size)]
        minors = [_det([[rows[i][c] for c in cols] for i in range(size)])
                  for cols in combinations(range(r + 1), size)]
        I = Ideal(S, minors)
        minors_ok = (not I.is_zero()) and krull_dimension(I) == 0
    elif size == 0:
        minors_ok = len(gens) == 0 or None
    return H1Presentation(
        matrix=A,
        alphas=alphas,
        coker_hilbert=coker,
        identity_holds=holds,
        minors_codim_ok=minors_ok,
    )
