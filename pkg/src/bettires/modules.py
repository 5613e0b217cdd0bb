"""Graded free modules, degree-tracked matrices and module monomial orders."""

from __future__ import annotations

from itertools import combinations

from .errors import DimensionError, HomogeneityError, RingMismatchError
from .ring import Polynomial, Ring


class GradedFreeModule:
    """A free module  ⊕ R(-a_i)  stored via its generator degrees a_i."""

    __slots__ = ("ring", "twists", "labels")

    def __init__(self, ring: Ring, twists, labels=None):
        self.ring = ring
        self.twists = tuple(twists)
        self.labels = tuple(labels) if labels is not None else None

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        if not self.twists:
            return "0"
        parts = []
        for a in sorted(set(self.twists)):
            n = self.twists.count(a)
            parts.append(f"R({-a})" + (f"^{n}" if n > 1 else ""))
        return " + ".join(parts)

    def zero_element(self):
        return ModuleElement(self, ())

    def generator(self, i, coeff=1):
        if not 0 <= i < self.rank:
            raise DimensionError(f"generator index {i} out of range")
        exps = (0,) * self.ring.num_vars
        return ModuleElement(self, (((i, exps), coeff % self.ring.field.p),))

    def element(self, d):
        """Element from {(row, exps): coeff}; canonically sorted."""
        p = self.ring.field.p
        items = [(k, c % p) for k, c in d.items() if c % p]
        items.sort()
        return ModuleElement(self, tuple(items))


class ModuleElement:
    """Finite sum of scalar * monomial * generator, canonically sorted."""

    __slots__ = ("module", "terms")

    def __init__(self, module: GradedFreeModule, terms):
        self.module = module
        self.terms = terms  # tuple of ((row, exps), coeff), sorted by key

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.module == other.module
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.module, self.terms))

    def _check(self, other):
        if self.module != other.module:
            raise RingMismatchError("elements of different modules")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        p = self.module.ring.field.p
        for k, c in other.terms:
            nc = (d.get(k, 0) + c) % p
            if nc:
                d[k] = nc
            else:
                del d[k]
        return self.module.element(d)

    def __neg__(self):
        p = self.module.ring.field.p
        return ModuleElement(self.module, tuple((k, p - c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.module.ring.field.p
        c %= p
        if c == 0:
            return self.module.zero_element()
        return ModuleElement(self.module, tuple((k, (a * c) % p) for k, a in self.terms))

    def mul_term(self, exps, coeff=1):
        p = self.module.ring.field.p
        coeff %= p
        if coeff == 0:
            return self.module.zero_element()
        out = []
        for (row, e), c in self.terms:
            ne = tuple(a + b for a, b in zip(e, exps))
            out.append(((row, ne), (c * coeff) % p))
        out.sort()
        return ModuleElement(self.module, tuple(out))

    def mul_poly(self, f: Polynomial):
        total = self.module.zero_element()
        for e, c in f.terms:
            total = total + self.mul_term(e, c)
        return total

    def degree(self):
        """Degree of a homogeneous element; -1 for zero."""
        if not self.terms:
            return -1
        tw = self.module.twists
        (row, e), _ = self.terms[0]
        return sum(e) + tw[row]

    def is_homogeneous(self):
        if not self.terms:
            return True
        tw = self.module.twists
        degs = {sum(e) + tw[row] for (row, e), _ in self.terms}
        return len(degs) == 1

    def component(self, row) -> Polynomial:
        d = {e: c for (r, e), c in self.terms if r == row}
        return self.module.ring.from_dict(d)

    def components(self):
        """All components as {row: Polynomial}."""
        rows = {}
        for (r, e), c in self.terms:
            rows.setdefault(r, {})[e] = c
        return {r: self.module.ring.from_dict(d) for r, d in rows.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({f})*e{r}" for r, f in sorted(self.components().items()))


def element_from_polys(module: GradedFreeModule, polys) -> ModuleElement:
    d = {}
    p = module.ring.field.p
    for row, f in enumerate(polys):
        if f is None:
            continue
        for e, c in f.terms:
            d[(row, e)] = c % p
    return module.element(d)


# ---------------------------------------------------------------------------
# module monomial orders


class ModuleOrder:
    """Order on module terms (row, exps) via additive flat keys.

    ``term_key`` orders terms; ``mul_pad(exps)`` is the key shift caused
    by multiplying a term with the monomial ``exps``.
    """

    def term_key(self, row, exps):
        raise NotImplementedError

    def mul_pad(self, exps):
        raise NotImplementedError


class PositionOverTerm(ModuleOrder):
    """Lower row index wins first, ring order breaks ties."""

    def __init__(self, base_order, num_vars):
        self.base = base_order
        self._pad_zero = (0,)

    def term_key(self, row, exps):
        return (-row,) + self.base.key(exps)

    def mul_pad(self, exps):
        return self._pad_zero + self.base.key(exps)


class TermOverPosition(ModuleOrder):
    """Ring order wins first, lower row index breaks ties."""

    def __init__(self, base_order, num_vars):
        self.base = base_order

    def term_key(self, row, exps):
        return self.base.key(exps) + (-row,)

    def mul_pad(self, exps):
        return self.base.key(exps) + (0,)


class SchreyerOrder(ModuleOrder):
    """Order induced by the columns of a parent matrix: compare the images
    of lead terms under the parent order, break ties by position (lower
    index greater)."""

    def __init__(self, parent_order: ModuleOrder, parent_leads):
        self.parent = parent_order
        # parent_leads[i] = (row, exps) of the lead of parent column i
        self._lead_keys = [
            (row, exps, parent_order.term_key(row, exps)) for row, exps in parent_leads
        ]

    def term_key(self, row, exps):
        prow, pexps, _ = self._lead_keys[row]
        shifted = tuple(a + b for a, b in zip(self.parent.term_key(prow, exps), self.parent.mul_pad(pexps)))
        # image key = parent key of (prow, exps + pexps); additivity of the
        # parent key lets us add the two halves componentwise
        return shifted + (-row,)

    def mul_pad(self, exps):
        return self.parent.mul_pad(exps) + (0,)


# ---------------------------------------------------------------------------
# matrices


class RingMatrix:
    """Degree-tracked matrix; column j is the image of source generator j."""

    __slots__ = ("source", "target", "columns")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, columns):
        columns = tuple(columns)
        if len(columns) != source.rank:
            raise DimensionError("column count does not match source rank")
        for col in columns:
            if col.module != target:
                raise RingMismatchError("column lives in the wrong module")
        self.source = source
        self.target = target
        self.columns = columns

    @property
    def ring(self):
        return self.target.ring

    @classmethod
    def from_entries(cls, source, target, rows):
        """Build from a row-major grid of polynomials (or None for zero)."""
        if len(rows) != target.rank:
            raise DimensionError("row count does not match target rank")
        cols = []
        for j in range(source.rank):
            d = {}
            for i, row in enumerate(rows):
                f = row[j]
                if f is None:
                    continue
                for e, c in f.terms:
                    d[(i, e)] = c
            cols.append(target.element(d))
        return cls(source, target, cols)

    @classmethod
    def identity(cls, module):
        return cls(module, module, [module.generator(i) for i in range(module.rank)])

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [target.zero_element()] * source.rank)

    def entry(self, i, j) -> Polynomial:
        return self.columns[j].component(i)

    def is_zero(self):
        return all(col.is_zero() for col in self.columns)

    def apply(self, v: ModuleElement) -> ModuleElement:
        """Image of an element of the source module."""
        if v.module != self.source:
            raise RingMismatchError("element not in the source module")
        total = self.target.zero_element()
        for (row, e), c in v.terms:
            total = total + self.columns[row].mul_term(e, c)
        return total

    def compose(self, other: "RingMatrix") -> "RingMatrix":
        """self ∘ other, valid when source(self) == target(other)."""
        if self.source != other.target:
            raise DimensionError("modules do not match for composition")
        return RingMatrix(other.source, self.target, [self.apply(c) for c in other.columns])

    def transpose(self) -> "RingMatrix":
        """Formal transpose: dualizes the twists."""
        ring = self.ring
        src = GradedFreeModule(ring, tuple(-a for a in self.target.twists))
        tgt = GradedFreeModule(ring, tuple(-a for a in self.source.twists))
        grid = [[self.entry(j, i) for j in range(self.target.rank)] for i in range(self.source.rank)]
        return RingMatrix.from_entries(src, tgt, grid)

    def is_homogeneous(self):
        """Recompute entry degrees: entry (i,j) must be zero or homogeneous
        of degree src_deg(j) - tgt_deg(i)."""
        for j, col in enumerate(self.columns):
            want = self.source.twists[j]
            for (i, e), _ in col.terms:
                if sum(e) + self.target.twists[i] != want:
                    return False
        return True

    def check_homogeneous(self):
        if not self.is_homogeneous():
            raise HomogeneityError("matrix is not degree compatible")
        return self

    def constant_entries(self):
        """Positions (i, j) holding a nonzero scalar entry."""
        out = []
        for j, col in enumerate(self.columns):
            seen = set()
            for (i, e), _ in col.terms:
                if not any(e) and i not in seen:
                    seen.add(i)
                    out.append((i, j))
        return out

    def __repr__(self):
        return f"RingMatrix({self.target.rank}x{self.source.rank})"

    def pretty(self):
        grid = [[str(self.entry(i, j)) for j in range(self.source.rank)] for i in range(self.target.rank)]
        width = max((len(s) for row in grid for s in row), default=1)
        return "\n".join("[" + "  ".join(s.rjust(width) for s in row) + "]" for row in grid)


# ---------------------------------------------------------------------------
# multilinear constructions


def wedge_power(P: GradedFreeModule, i: int):
    """∧^i P with basis indexed by strictly increasing index subsets."""
    if i < 0 or i > P.rank:
        return GradedFreeModule(P.ring, (), labels=())
    subsets = list(combinations(range(P.rank), i))
    twists = tuple(sum(P.twists[k] for k in s) for s in subsets)
    return GradedFreeModule(P.ring, twists, labels=subsets)


def tensor(M: GradedFreeModule, N: GradedFreeModule):
    """M ⊗ N with basis indexed by pairs (i, j), i major."""
    if M.ring != N.ring:
        raise RingMismatchError("tensor factors over different rings")
    labels = [(i, j) for i in range(M.rank) for j in range(N.rank)]
    twists = tuple(M.twists[i] + N.twists[j] for i, j in labels)
    return GradedFreeModule(M.ring, twists, labels=labels)
