"""Free resolutions, minimalization, Betti tables and numerical invariants.

Resolutions are built by iterated Schreyer syzygies on reduced Gröbner
bases (fast, structured, generally non-minimal) and then shrunk by
cancelling constant entries.  Hilbert series come from the lead-term
ideal by pivot splitting; dimension from independent variable subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import HomogeneityError, InternalLimitError
from .groebner import (
    Ideal,
    _Engine,
    _pack,
    default_module_order,
    module_groebner,
    module_lead,
    module_syzygy_basis,
    module_interreduce,
    saturate,
    sort_for_schreyer,
)
from .modules import GradedFreeModule, RingMatrix
from .ring import monomial_divides


class FreeResolution:
    """Chain  F_p -> ... -> F_1 -> F_0  with degree-tracked differentials."""

    def __init__(self, modules, differentials, minimal=False):
        self.modules = list(modules)
        self.differentials = list(differentials)
        self.minimal = minimal

    @property
    def length(self):
        return len(self.differentials)

    def module(self, i):
        return self.modules[i]

    def is_complex(self):
        for a, b in zip(self.differentials, self.differentials[1:]):
            if not a.compose(b).is_zero():
                return False
        return True

    def has_constant_entries(self):
        return any(m.constant_entries() for m in self.differentials)

    def betti(self) -> "BettiTable":
        """Twist counts of the terms; the Betti table when minimal."""
        entries = {}
        for i, mod in enumerate(self.modules):
            for a in mod.twists:
                entries[(i, a)] = entries.get((i, a), 0) + 1
        return BettiTable(entries)

    def __repr__(self):
        return " <- ".join(repr(m) for m in self.modules)


class BettiTable:
    """Graded Betti numbers beta_{i,j} with finite support."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in entries.items() if v}

    def entry(self, i, j) -> int:
        return self.entries.get((i, j), 0)

    @property
    def projective_dimension(self):
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self):
        return max((j - i for i, j in self.entries), default=0)

    def row_total(self, i):
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self):
        items = sorted(self.entries.items())
        return "BettiTable({" + ", ".join(f"({i},{j}): {v}" for (i, j), v in items) + "})"

    def euler_numerator(self) -> tuple:
        """Coefficients of sum_i (-1)^i sum_j beta_{i,j} T^j."""
        if not self.entries:
            return ()
        top = max(j for _, j in self.entries)
        out = [0] * (top + 1)
        for (i, j), v in self.entries.items():
            out[j] += v if i % 2 == 0 else -v
        return _trim(tuple(out))


def _trim(coeffs):
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# resolutions


def free_resolution(I: Ideal) -> FreeResolution:
    """Schreyer resolution of R/I; exact, usually non-minimal."""
    if "schreyer_resolution" in I.cache:
        return I.cache["schreyer_resolution"]
    ring = I.ring
    if not all(f.is_homogeneous() for f in I.gens):
        raise HomogeneityError("free resolutions require a homogeneous ideal")
    F0 = GradedFreeModule(ring, (0,))
    modules = [F0]
    diffs = []
    gens = [F0.element({(0, e): c for e, c in f.terms}) for f in I.gens]
    order = default_module_order(F0)
    current = sort_for_schreyer(module_groebner(gens), order) if gens else []
    while current:
        F = GradedFreeModule(ring, tuple(e.degree() for e in current))
        diffs.append(RingMatrix(F, modules[-1], current))
        modules.append(F)
        if len(diffs) > ring.num_vars + 1:
            raise InternalLimitError("resolution exceeded the syzygy-theorem bound")
        syz, syz_order = module_syzygy_basis(current, order)
        syz = module_interreduce(syz, syz_order)
        order = syz_order
        current = sort_for_schreyer(syz, order)
    res = FreeResolution(modules, diffs, minimal=False)
    I.cache["schreyer_resolution"] = res
    return res


def minimal_free_resolution(I: Ideal) -> FreeResolution:
    if "minimal_resolution" not in I.cache:
        I.cache["minimal_resolution"] = minimalize(free_resolution(I))
    return I.cache["minimal_resolution"]


def minimalize(res: FreeResolution) -> FreeResolution:
    """Cancel constant entries by Gaussian pivoting over the field.

    Quasi-isomorphic to the input; idempotent; never increases a rank.
    """
    if not res.differentials:
        return FreeResolution(res.modules, [], minimal=True)
    ring = res.modules[0].ring
    p = ring.field.p
    nv = ring.num_vars
    zero = (0,) * nv

    # mutable copy: diffs[l][j] = {row: {exps: coeff}}
    diffs = []
    for M in res.differentials:
        cols = {}
        for j, col in enumerate(M.columns):
            d = {}
            for (row, e), c in col.terms:
                d.setdefault(row, {})[e] = c
            cols[j] = d
        diffs.append(cols)
    alive = [set(range(m.rank)) for m in res.modules]

    def scan_column(l, j):
        found = []
        for row, poly in diffs[l][j].items():
            if set(poly) == {zero}:
                found.append((l, row, j))
        return found

    work = []
    for l in range(len(diffs)):
        for j in diffs[l]:
            work.extend(scan_column(l, j))

    while work:
        l, a, b = work.pop()
        if b not in diffs[l]:
            continue
        entry = diffs[l][b].get(a)
        if not entry or set(entry) != {zero}:
            continue
        uinv = pow(entry[zero], p - 2, p)
        pivot = diffs[l].pop(b)
        for j, col in diffs[l].items():
            q = col.get(a)
            if not q:
                continue
            factor = {e: (c * uinv) % p for e, c in q.items()}
            for row, poly in pivot.items():
                dst = col.setdefault(row, {})
                for e1, c1 in factor.items():
                    for e2, c2 in poly.items():
                        e = tuple(x + y for x, y in zip(e1, e2))
                        nc = (dst.get(e, 0) - c1 * c2) % p
                        if nc:
                            dst[e] = nc
                        else:
                            del dst[e]
                if not dst:
                    del col[row]
            work.extend(scan_column(l, j))
        if l + 1 < len(diffs):
            for col in diffs[l + 1].values():
                col.pop(b, None)
        if l >= 1:
            diffs[l - 1].pop(a, None)
        alive[l + 1].discard(b)
        alive[l].discard(a)

    # compact: rebuild modules and differentials on the surviving generators
    keep = [sorted(s) for s in alive]
    remap = [{old: new for new, old in enumerate(k)} for k in keep]
    modules = [
        GradedFreeModule(ring, tuple(res.modules[i].twists[g] for g in keep[i]))
        for i in range(len(res.modules))
    ]
    new_diffs = []
    for l, cols in enumerate(diffs):
        src, tgt = modules[l + 1], modules[l]
        columns = []
        for j in keep[l + 1]:
            d = {}
            for row, poly in cols.get(j, {}).items():
                for e, c in poly.items():
                    d[(remap[l][row], e)] = c
            columns.append(tgt.element(d))
        new_diffs.append(RingMatrix(src, tgt, columns))
    while modules and modules[-1].rank == 0:
        modules.pop()
        if new_diffs:
            new_diffs.pop()
    out = FreeResolution(modules, new_diffs, minimal=True)
    if out.has_constant_entries():
        raise InternalLimitError("minimalization left a constant entry")
    return out


def betti_table(I: Ideal) -> BettiTable:
    """Graded Betti numbers of R/I from the minimal resolution."""
    if "betti" not in I.cache:
        I.cache["betti"] = minimal_free_resolution(I).betti()
    return I.cache["betti"]


def schreyer_syzygies(M: RingMatrix) -> RingMatrix:
    """Generators of the full syzygy module of the columns of M.

    A Gröbner basis of the column span is computed with expression
    tracking; pair syzygies of the basis and the reduction syzygies of
    the original columns are mapped back to the original generators.
    """
    order = default_module_order(M.target)
    engine = _Engine(M.target, order)
    cols = list(M.columns)
    basis, reps = engine.buchberger(cols, with_reps=True)
    p = M.ring.field.p
    raw = engine.syzygies(basis) if basis else []
    vectors = []
    for syz in raw:
        acc = {}
        for (k, me), c in syz.items():
            _acc_addmul(acc, reps[k], me, c, p)
        vectors.append(acc)
    # reduction syzygies: original column j minus its division expression
    reducers = {}
    for idx, g in enumerate(basis):
        reducers.setdefault(g[0][1], []).append((g[0][2], g, idx))
    for j, col in enumerate(cols):
        if col.is_zero():
            acc = {(j, (0,) * M.ring.num_vars): 1}
            vectors.append(acc)
            continue
        quotients = {}
        rem = engine.reduce(_pack(col, order), reducers, quotients=quotients)
        if rem:
            raise InternalLimitError("column failed to reduce against its own basis")
        acc = {(j, (0,) * M.ring.num_vars): 1}
        for k, qd in quotients.items():
            for me, q in qd.items():
                _acc_addmul(acc, reps[k], me, -q, p)
        vectors.append(acc)
    elems = [M.source.element(acc) for acc in vectors]
    elems = [e for e in elems if not e.is_zero()]
    source = GradedFreeModule(M.ring, tuple(e.degree() for e in elems))
    return RingMatrix(source, M.source, [M.source.element(dict(e.terms)) for e in elems])


def _acc_addmul(acc, rep, exps, coeff, p):
    for j, d in rep.items():
        for e, c in d.items():
            key = (j, tuple(a + b for a, b in zip(e, exps)))
            nc = (acc.get(key, 0) + coeff * c) % p
            if nc:
                acc[key] = nc
            else:
                del acc[key]


# ---------------------------------------------------------------------------
# Hilbert series


class HilbertSeries:
    """numerator(T) / (1-T)^num_vars with integer numerator."""

    def __init__(self, numerator, num_vars):
        self.numerator = _trim(tuple(numerator))
        self.num_vars = num_vars

    def __eq__(self, other):
        return (
            isinstance(other, HilbertSeries)
            and self.numerator == other.numerator
            and self.num_vars == other.num_vars
        )

    def __repr__(self):
        poly = " + ".join(f"{c}*T^{i}" for i, c in enumerate(self.numerator) if c)
        return f"({poly or 0}) / (1-T)^{self.num_vars}"

    def value(self, d) -> int:
        """dim_K [R/I]_d."""
        if d < 0:
            return 0
        nv = self.num_vars
        total = 0
        for m, c in enumerate(self.numerator):
            if c and d >= m:
                total += c * math.comb(d - m + nv - 1, nv - 1)
        return total

    def h_polynomial(self, krull_dim) -> tuple:
        """Numerator after dividing by (1-T)^(num_vars - krull_dim)."""
        coeffs = list(self.numerator)
        for _ in range(self.num_vars - krull_dim):
            coeffs = _divide_one_minus_t(coeffs)
        return _trim(tuple(coeffs))


def _divide_one_minus_t(coeffs):
    out = []
    acc = 0
    for c in coeffs:
        acc += c
        out.append(acc)
    while out and out[-1] == 0:
        out.pop()
    if out and sum(coeffs) != 0:
        raise ArithmeticError("numerator not divisible by 1-T")
    return out


def _monomial_minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(monomial_divides(o, m) for o in out):
            out.append(m)
    return out


def _hilbert_numerator(gens, nv, memo):
    gens = tuple(sorted(gens))
    if gens in memo:
        return memo[gens]
    if not gens:
        result = (1,)
    elif any(sum(m) == 0 for m in gens):
        result = ()
    elif all(sum(m) == 1 for m in gens):
        result = (1,)
        for _ in gens:
            result = _poly_sub(result, (0,) + result)
    else:
        counts = [0] * nv
        for m in gens:
            if sum(m) >= 2:
                for i, e in enumerate(m):
                    if e:
                        counts[i] += 1
        v = max(range(nv), key=lambda i: counts[i])
        var = tuple(1 if i == v else 0 for i in range(nv))
        plus = _monomial_minimalize([m for m in gens if m[v] == 0] + [var])
        col = _monomial_minimalize(
            [m[:v] + (m[v] - 1,) + m[v + 1 :] if m[v] else m for m in gens]
        )
        a = _hilbert_numerator(tuple(plus), nv, memo)
        b = _hilbert_numerator(tuple(col), nv, memo)
        result = _poly_add(a, (0,) + b)
    memo[gens] = result
    return result


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _trim(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim(tuple((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)))


_HILBERT_MEMO = {}


def hilbert_series(I: Ideal) -> HilbertSeries:
    """Hilbert series of R/I, computed from the lead-term ideal."""
    if "hilbert" not in I.cache:
        nv = I.ring.num_vars
        leads = _monomial_minimalize(I.groebner().lead_exponents())
        memo = _HILBERT_MEMO.setdefault(nv, {})
        I.cache["hilbert"] = HilbertSeries(_hilbert_numerator(tuple(leads), nv, memo), nv)
    return I.cache["hilbert"]


def hilbert_function(I: Ideal, d: int) -> int:
    return hilbert_series(I).value(d)


def krull_dimension(I: Ideal) -> int:
    """Krull dimension of R/I via independent variable subsets."""
    nv = I.ring.num_vars
    leads = _monomial_minimalize(I.groebner().lead_exponents())
    if any(sum(m) == 0 for m in leads):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for size in range(nv, 0, -1):
        for S in combinations(range(nv), size):
            sset = set(S)
            if not any(sup <= sset for sup in supports):
                return size
    return 0


# ---------------------------------------------------------------------------
# scheme reports


@dataclass(frozen=True)
class SchemeReport:
    """Derived invariants of the projective scheme of a saturated ideal."""

    dim: int
    codim: int
    degree: int
    h_vector: tuple
    pd: int
    depth: int
    is_acm: bool
    regularity: int
    was_saturated: bool


def scheme_report(I: Ideal) -> SchemeReport:
    """Dimension, degree, depth and friends for Proj(R/I).

    A non-saturated input is replaced by its saturation (flagged in the
    result); the depth is read off the Auslander-Buchsbaum equality
    depth = (number of variables) - projective dimension.
    """
    if I.is_zero():
        raise ValueError("the zero ideal does not define a subscheme")
    if not I.is_homogeneous():
        raise HomogeneityError("scheme reports require homogeneous ideals")
    if any(f.is_constant() for f in I.gens) or I.contains(I.ring.one()):
        raise ValueError("the unit ideal does not define a subscheme")
    sat = saturate(I, I.maximal_ideal())
    was_saturated = sat == I
    work = I if was_saturated else sat
    if work.contains(work.ring.one()):
        raise ValueError("ideal defines the empty scheme")
    nv = I.ring.num_vars
    krull = krull_dimension(work)
    dim = krull - 1
    codim = (nv - 1) - dim
    table = betti_table(work)
    pd = table.projective_dimension
    series = hilbert_series(work)
    h = series.h_polynomial(krull)
    return SchemeReport(
        dim=dim,
        codim=codim,
        degree=sum(h),
        h_vector=h,
        pd=pd,
        depth=nv - pd,
        is_acm=(pd == codim),
        regularity=table.regularity,
        was_saturated=was_saturated,
    )
