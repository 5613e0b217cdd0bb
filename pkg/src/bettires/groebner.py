"""Buchberger's algorithm for submodules of free modules, plus the ideal
toolkit built on it: normal forms, elimination, colon, saturation and
parametrized-curve ideals.

The engine works on a packed representation: a vector is a list of
``(key, row, exps, coeff)`` tuples sorted descending by ``key``, where the
key is the flat additive tuple provided by a :class:`ModuleOrder`.
Multiplying by a monomial shifts every key by a constant pad, so sorted
order is preserved and all reductions are linear merges.
"""

from __future__ import annotations

import heapq
import threading

from .errors import DimensionError, InternalLimitError, RingMismatchError
from .modules import (
    GradedFreeModule,
    ModuleElement,
    ModuleOrder,
    PositionOverTerm,
    RingMatrix,
    SchreyerOrder,
)
from .ring import (
    ElimBlockOrder,
    Polynomial,
    PrimeField,
    Ring,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)

SATURATION_CAP = 50


def _pack(elem: ModuleElement, order: ModuleOrder):
    out = [(order.term_key(row, e), row, e, c) for (row, e), c in elem.terms]
    out.sort(reverse=True)
    return out


def _unpack(module: GradedFreeModule, packed) -> ModuleElement:
    return module.element({(row, e): c for _, row, e, c in packed})


def _shift(packed, pad, mexps, c, p):
    """c * x^mexps * packed, reusing cached keys."""
    out = []
    for key, row, e, a in packed:
        out.append(
            (
                tuple(x + y for x, y in zip(key, pad)),
                row,
                tuple(x + y for x, y in zip(e, mexps)),
                (a * c) % p,
            )
        )
    return out


def _merge_sub(v, w, p):
    """v - w for packed vectors (w's coefficients already multiplied)."""
    out = []
    i = j = 0
    nv, nw = len(v), len(w)
    while i < nv and j < nw:
        kv, kw = v[i][0], w[j][0]
        if kv > kw:
            out.append(v[i])
            i += 1
        elif kv < kw:
            t = w[j]
            out.append((t[0], t[1], t[2], (-t[3]) % p))
            j += 1
        else:
            c = (v[i][3] - w[j][3]) % p
            if c:
                out.append((kv, v[i][1], v[i][2], c))
            i += 1
            j += 1
    if i < nv:
        out.extend(v[i:])
    while j < nw:
        t = w[j]
        out.append((t[0], t[1], t[2], (-t[3]) % p))
        j += 1
    return out


class _Engine:
    """Gröbner machinery for one module and one module order."""

    def __init__(self, module: GradedFreeModule, order: ModuleOrder):
        self.module = module
        self.order = order
        self.p = module.ring.field.p

    # -- reduction ----------------------------------------------------

    def reduce(self, v, reducers, quotients=None, skip=None):
        """Full normal form of a packed vector.

        ``reducers`` maps a row index to a list of ``(lead_exps, packed,
        idx)``.  When ``quotients`` is a dict it accumulates the division
        coefficients as ``{idx: {exps: coeff}}``.
        """
        p = self.p
        out = []
        work = v
        pos = 0
        while pos < len(work):
            _, row, e, c = work[pos]
            hit = None
            for le, g, idx in reducers.get(row, ()):
                if idx != skip and monomial_divides(le, e):
                    hit = (le, g, idx)
                    break
            if hit is None:
                out.append(work[pos])
                pos += 1
                continue
            le, g, idx = hit
            me = monomial_div(e, le)
            pad = self.order.mul_pad(me)
            work = _merge_sub(work[pos:], _shift(g, pad, me, c, p), p)
            pos = 0
            if quotients is not None:
                bucket = quotients.setdefault(idx, {})
                bucket[me] = (bucket.get(me, 0) + c) % p
        return out

    # -- Buchberger ---------------------------------------------------

    def buchberger(self, elements, with_reps=False):
        """Reduced Gröbner basis of the span of ``elements``.

        Returns ``(basis, reps)`` where ``basis`` is a list of monic packed
        vectors and ``reps`` (when requested) expresses each basis element
        over the input generators as ``{orig_index: {exps: coeff}}``.
        """
        p = self.p
        rank1 = self.module.rank == 1
        G, leads, sugars, reps = [], [], [], []
        reducers = {}
        pairs = []
        counter = 0
        treated = set()

        def push_pairs(new_idx):
            nonlocal counter
            row, le = leads[new_idx]
            for k in range(new_idx):
                krow, kle = leads[k]
                if krow != row:
                    continue
                lcm = monomial_lcm(kle, le)
                if rank1 and all(a + b == m for a, b, m in zip(kle, le, lcm)):
                    treated.add((k, new_idx))  # coprime leads: s-pair reduces to zero
                    continue
                deg = sum(lcm) + self.module.twists[row]
                sugar = max(
                    sugars[k] + sum(lcm) - sum(kle), sugars[new_idx] + sum(lcm) - sum(le)
                )
                heapq.heappush(pairs, (deg, sugar, counter, k, new_idx))
                counter += 1

        def add(v, sugar, rep):
            lc = v[0][3]
            if lc != 1:
                inv = pow(lc, p - 2, p)
                v = [(k, r, e, (c * inv) % p) for k, r, e, c in v]
                if rep is not None:
                    rep = {j: {e: (c * inv) % p for e, c in d.items()} for j, d in rep.items()}
            idx = len(G)
            G.append(v)
            leads.append((v[0][1], v[0][2]))
            sugars.append(sugar)
            reps.append(rep)
            reducers.setdefault(v[0][1], []).append((v[0][2], v, idx))
            push_pairs(idx)

        for j, elem in enumerate(elements):
            packed = _pack(elem, self.order)
            if not packed:
                continue
            rep = {j: {(0,) * self.module.ring.num_vars: 1}} if with_reps else None
            sugar = max(sum(e) + self.module.twists[r] for _, r, e, _ in packed)
            add(packed, sugar, rep)

        while pairs:
            deg, sugar, _, i, j = heapq.heappop(pairs)
            if (i, j) in treated:
                continue
            row = leads[i][0]
            lcm = monomial_lcm(leads[i][1], leads[j][1])
            chain = False
            for k, (krow, kle) in enumerate(leads):
                if k in (i, j) or krow != row:
                    continue
                if monomial_divides(kle, lcm):
                    a, b = (i, k) if i < k else (k, i)
                    c, d = (j, k) if j < k else (k, j)
                    if (a, b) in treated and (c, d) in treated:
                        chain = True
                        break
            treated.add((i, j))
            if chain:
                continue
            spair, rep = self._spair(G, leads, reps, i, j, with_reps)
            quotients = {} if with_reps else None
            r = self.reduce(spair, reducers, quotients=quotients)
            if not r:
                continue
            if with_reps:
                for k, qd in quotients.items():
                    _rep_submul(rep, reps[k], qd, p)
            add(r, sugar, rep)

        return self._interreduce(G, reps if with_reps else None)

    def _spair(self, G, leads, reps, i, j, with_reps):
        p = self.p
        lcm = monomial_lcm(leads[i][1], leads[j][1])
        ui = monomial_div(lcm, leads[i][1])
        uj = monomial_div(lcm, leads[j][1])
        vi = _shift(G[i], self.order.mul_pad(ui), ui, 1, p)
        vj = _shift(G[j], self.order.mul_pad(uj), uj, 1, p)
        spair = _merge_sub(vi, vj, p)
        rep = None
        if with_reps:
            rep = {}
            _rep_addmul(rep, reps[i], ui, 1, p)
            _rep_addmul(rep, reps[j], uj, -1, p)
        return spair, rep

    def _interreduce(self, G, reps):
        """Minimalize leads, then tail-reduce; returns sorted reduced basis."""
        p = self.p
        order = [i for i in range(len(G)) if G[i]]
        order.sort(key=lambda i: G[i][0][0])
        kept = []
        for i in order:
            row, e = G[i][0][1], G[i][0][2]
            if any(G[k][0][1] == row and monomial_divides(G[k][0][2], e) for k in kept):
                continue
            kept.append(i)
        out, out_reps = [], []
        for i in kept:
            reducers = {}
            for k in kept:
                if k != i:
                    reducers.setdefault(G[k][0][1], []).append((G[k][0][2], G[k], k))
            quotients = {} if reps is not None else None
            r = self.reduce(G[i], reducers, quotients=quotients)
            rep = None
            if reps is not None:
                rep = {j: dict(d) for j, d in reps[i].items()}
                for k, qd in quotients.items():
                    _rep_submul(rep, reps[k], qd, p)
            out.append(r)
            out_reps.append(rep)
        return out, out_reps

    # -- syzygies -------------------------------------------------------

    def syzygies(self, G):
        """Syzygies of a Gröbner basis ``G`` (packed, monic), as dicts
        ``{(index, exps): coeff}``.  Every same-component pair is reduced;
        by Schreyer's theorem the result is a Gröbner basis of the syzygy
        module under the induced order."""
        p = self.p
        reducers = {}
        for idx, g in enumerate(G):
            reducers.setdefault(g[0][1], []).append((g[0][2], g, idx))
        out = []
        for i in range(len(G)):
            rowi, li = G[i][0][1], G[i][0][2]
            for j in range(i + 1, len(G)):
                if G[j][0][1] != rowi:
                    continue
                lj = G[j][0][2]
                lcm = monomial_lcm(li, lj)
                ui, uj = monomial_div(lcm, li), monomial_div(lcm, lj)
                spair = _merge_sub(
                    _shift(G[i], self.order.mul_pad(ui), ui, 1, p),
                    _shift(G[j], self.order.mul_pad(uj), uj, 1, p),
                    p,
                )
                quotients = {}
                r = self.reduce(spair, reducers, quotients=quotients)
                if r:
                    raise InternalLimitError("input to syzygy step was not a Gröbner basis")
                syz = {(i, ui): 1, (j, uj): p - 1}
                for k, qd in quotients.items():
                    for me, c in qd.items():
                        key = (k, me)
                        nc = (syz.get(key, 0) - c) % p
                        if nc:
                            syz[key] = nc
                        else:
                            del syz[key]
                out.append(syz)
        return out


def _rep_addmul(dst, src, exps, coeff, p):
    """dst += coeff * x^exps * src for representation dicts."""
    for j, d in src.items():
        bucket = dst.setdefault(j, {})
        for e, c in d.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            nc = (bucket.get(ne, 0) + coeff * c) % p
            if nc:
                bucket[ne] = nc
            else:
                del bucket[ne]
        if not bucket:
            del dst[j]


def _rep_submul(dst, src, qdict, p):
    for me, q in qdict.items():
        _rep_addmul(dst, src, me, -q, p)


# ---------------------------------------------------------------------------
# public module-level interface


def default_module_order(module: GradedFreeModule) -> ModuleOrder:
    return PositionOverTerm(module.ring.order, module.ring.num_vars)


def module_groebner(elements, order: ModuleOrder | None = None):
    """Reduced Gröbner basis of the submodule generated by ``elements``."""
    elements = list(elements)
    if not elements:
        return []
    module = elements[0].module
    if order is None:
        order = default_module_order(module)
    engine = _Engine(module, order)
    basis, _ = engine.buchberger(elements)
    return [_unpack(module, g) for g in basis]


def module_normal_form(v: ModuleElement, basis, order: ModuleOrder | None = None):
    if not basis:
        return v
    module = basis[0].module
    if v.module != module:
        raise RingMismatchError("element and basis live in different modules")
    if order is None:
        order = default_module_order(module)
    engine = _Engine(module, order)
    reducers = {}
    for idx, g in enumerate(basis):
        packed = _pack(g, order)
        reducers.setdefault(packed[0][1], []).append((packed[0][2], packed, idx))
    return _unpack(module, engine.reduce(_pack(v, order), reducers))


def module_syzygy_basis(basis, order: ModuleOrder | None = None):
    """Syzygies of a Gröbner basis, as elements of the free module on it.

    Returns ``(syzygies, schreyer_order)`` where the syzygies form a
    Gröbner basis under the returned induced order.
    """
    module = basis[0].module
    if order is None:
        order = default_module_order(module)
    engine = _Engine(module, order)
    packed = [_pack(g, order) for g in basis]
    leads = [(g[0][1], g[0][2]) for g in packed]
    raw = engine.syzygies(packed)
    source = GradedFreeModule(
        module.ring, tuple(g.degree() for g in basis)
    )
    syz_order = SchreyerOrder(order, leads)
    elems = [source.element(d) for d in raw]
    elems = [e for e in elems if not e.is_zero()]
    return elems, syz_order


def module_interreduce(elements, order: ModuleOrder):
    """Reduced form of a Gröbner basis: minimal monic leads, reduced tails."""
    elems = [e for e in elements if not e.is_zero()]
    if not elems:
        return []
    module = elems[0].module
    engine = _Engine(module, order)
    out, _ = engine._interreduce([_pack(e, order) for e in elems], None)
    return [_unpack(module, g) for g in out]


def module_lead(e: ModuleElement, order: ModuleOrder):
    """(row, exps) of the leading term under the given order."""
    best = max(e.terms, key=lambda t: order.term_key(t[0][0], t[0][1]))
    return best[0]


def sort_for_schreyer(elements, order: ModuleOrder):
    """Sort descending by lex on the lead monomial (ties by lead row).

    With this arrangement the lead terms of each round of Schreyer
    syzygies involve strictly later variables, which bounds the number of
    resolution steps by the variable count.
    """

    def k(e):
        row, exps = module_lead(e, order)
        return (tuple(-x for x in exps), row)

    return sorted(elements, key=k)


def minimal_generators(elements):
    """Subset of homogeneous generators forming a minimal generating set."""
    elems = [e for e in elements if not e.is_zero()]
    if not elems:
        return []
    elems.sort(key=lambda e: e.degree())
    kept = []
    gb = []
    for e in elems:
        if kept:
            if module_normal_form(e, gb).is_zero():
                continue
        kept.append(e)
        gb = module_groebner(kept)
    return kept


# ---------------------------------------------------------------------------
# ideals


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal (rank-one case)."""

    __slots__ = ("polynomials", "order_name", "reduced")

    def __init__(self, polynomials, order_name):
        self.polynomials = tuple(polynomials)
        self.order_name = order_name
        self.reduced = True

    def __iter__(self):
        return iter(self.polynomials)

    def __len__(self):
        return len(self.polynomials)

    def lead_exponents(self):
        return [g.lead_monomial() for g in self.polynomials]


class Ideal:
    """Homogeneous-capable ideal with cached Gröbner bases."""

    def __init__(self, ring: Ring, generators):
        gens = []
        for f in generators:
            if f.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if not f.is_zero():
                gens.append(f)
        self.ring = ring
        self.gens = tuple(gens)
        self._lock = threading.Lock()
        self._gb_cache = {}
        self.cache = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def is_zero(self):
        return not self.gens

    def is_homogeneous(self):
        return all(f.is_homogeneous() for f in self.gens)

    def _free_module(self):
        return GradedFreeModule(self.ring, (0,))

    def _as_elements(self, module):
        out = []
        for f in self.gens:
            out.append(module.element({(0, e): c for e, c in f.terms}))
        return out

    def groebner(self, order=None) -> GroebnerBasis:
        """Reduced Gröbner basis, cached per monomial order."""
        if order is None:
            order = self.ring.order
        key = order.name
        with self._lock:
            if key in self._gb_cache:
                return self._gb_cache[key]
        ring = self.ring if order.name == self.ring.order.name else self.ring.with_order(order)
        module = GradedFreeModule(ring, (0,))
        elems = [
            module.element({(0, e): c for e, c in f.terms}) for f in self.gens
        ]
        basis = module_groebner(elems)
        polys = [g.component(0) for g in basis]
        gb = GroebnerBasis(polys, order.name)
        with self._lock:
            self._gb_cache.setdefault(key, gb)
            return self._gb_cache[key]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            f = self.ring.convert(f)
        gb = self.groebner()
        module = self._free_module()
        elems = [
            module.element({(0, e): c for e, c in g.terms}) for g in gb.polynomials
        ]
        v = module.element({(0, e): c for e, c in f.terms})
        return module_normal_form(v, elems).component(0)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring != other.ring:
            return False
        return tuple(self.groebner()) == tuple(other.groebner())

    def __hash__(self):
        return hash((self.ring, self.gens))

    def sum(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def maximal_ideal(self) -> "Ideal":
        return Ideal(self.ring, [self.ring.variable(i) for i in range(self.ring.num_vars)])


def eliminate(I: Ideal, b: int) -> Ideal:
    """Generators of I ∩ K[x_b, ..., x_n] as an ideal of the smaller ring."""
    if b == 0:
        return I
    ring = I.ring
    if b >= ring.num_vars:
        raise DimensionError("cannot eliminate every variable")
    elim_ring = ring.with_order(ElimBlockOrder(b))
    J = Ideal(elim_ring, [elim_ring.convert(f) for f in I.gens])
    gb = J.groebner(elim_ring.order)
    small = Ring(ring.field, ring.names[b:], ring.order)
    kept = []
    for g in gb.polynomials:
        if all(not any(e[:b]) for e, _ in g.terms):
            kept.append(small.from_dict({e[b:]: c for e, c in g.terms}))
    return Ideal(small, kept)


def _tagged_colon(I: Ideal, tags) -> Ideal:
    """Common core of colon computations.

    ``tags`` is a list of polynomials h_1..h_s; computes
    {b : b*h_l ∈ I for all l} via one module Gröbner basis with the tag
    component last in a position-over-term order.
    """
    ring = I.ring
    s = len(tags)
    module = GradedFreeModule(ring, (0,) * (s + 1))
    gens = []
    col = {}
    for l, h in enumerate(tags):
        for e, c in h.terms:
            col[(l, e)] = c
    zero_exps = (0,) * ring.num_vars
    col[(s, zero_exps)] = 1
    gens.append(module.element(col))
    for f in I.gens:
        for l in range(s):
            gens.append(module.element({(l, e): c for e, c in f.terms}))
    basis = module_groebner(gens)
    out = []
    for g in basis:
        comps = g.components()
        if set(comps) <= {s}:
            out.append(comps.get(s, ring.zero()))
    return Ideal(ring, out)


def colon_poly(I: Ideal, f: Polynomial) -> Ideal:
    """I : (f)."""
    if f.is_zero():
        raise ValueError("colon by zero")
    return _tagged_colon(I, [f])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J for an ideal J."""
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    return _tagged_colon(I, list(J.gens))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via a rank-two module elimination."""
    ring = I.ring
    module = GradedFreeModule(ring, (0, 0))
    gens = []
    for f in I.gens:
        gens.append(module.element({(0, e): c for e, c in f.terms} | {(1, e): c for e, c in f.terms}))
    for g in J.gens:
        gens.append(module.element({(0, e): c for e, c in g.terms}))
    basis = module_groebner(gens)
    out = []
    for g in basis:
        comps = g.components()
        if set(comps) <= {1}:
            out.append(comps.get(1, ring.zero()))
    return Ideal(ring, out)


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """Stable value of the iterated colon I : J^k."""
    current = I
    for _ in range(SATURATION_CAP):
        nxt = colon(current, J)
        if nxt == current:
            return current
        current = nxt
    raise InternalLimitError("saturation did not stabilize")


def is_saturated(I: Ideal) -> bool:
    return saturate(I, I.maximal_ideal()) == I


def toric_curve_ideal(exponents, field: PrimeField | None = None, names=None) -> Ideal:
    """Homogeneous ideal of the monomial curve (s:t) -> (s^a_i t^(d-a_i))_i.

    ``exponents`` must be strictly decreasing from d down to 0; parameters
    are eliminated from the graph ideal, which yields a prime (hence
    saturated) ideal.
    """
    exps = list(exponents)
    n = len(exps) - 1
    d = exps[0]
    if exps[-1] != 0 or any(a <= b for a, b in zip(exps, exps[1:])):
        raise ValueError("exponents must strictly decrease from the degree to 0")
    if field is None:
        field = PrimeField()
    if names is None:
        names = [f"x{i}" for i in range(n + 1)]
    work = Ring(field, ["s", "t"] + list(names), ElimBlockOrder(2))
    gens = []
    for i, a in enumerate(exps):
        e = [0] * work.num_vars
        e[0] = a
        e[1] = d - a
        param = work.monomial(tuple(e))
        gens.append(work.variable(2 + i) - param)
    graph = Ideal(work, gens)
    eliminated = eliminate(graph, 2)
    target = Ring(field, names)
    return Ideal(target, [target.convert(f) for f in eliminated.gens])
