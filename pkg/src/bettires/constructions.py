"""Catalog of explicit ideals: scrolls, monomial curves, generic complete
intersections, unions of linear spaces, the projected Veronese surface and
the split double structures.

Every named catalog entry carries the invariants it is expected to have,
each tagged with where the expectation comes from: ``published-table``
(printed resolution reproduced exactly) or ``derived`` (computed from an
independent oracle such as a closed-form rank count).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from .errors import DimensionError
from .groebner import Ideal, eliminate, intersect, toric_curve_ideal
from .linalg import mat_rank
from .ring import ElimBlockOrder, PrimeField, Ring, monomials_of_degree


def standard_ring(n, field=None, order=None):
    """K[x0..xn] over F_char with grevlex by default."""
    if field is None:
        field = PrimeField()
    names = [f"x{i}" for i in range(n + 1)]
    return Ring(field, names) if order is None else Ring(field, names, order)


def linear_space(var_indices, ambient_n, field=None) -> Ideal:
    """Ideal of the linear subspace cut out by the listed coordinates."""
    idx = sorted(set(var_indices))
    if not idx or len(idx) > ambient_n:
        raise ValueError("need a nonempty proper coordinate subset")
    ring = standard_ring(ambient_n, field)
    return Ideal(ring, [ring.variable(i) for i in idx])


def scroll_matrix(degrees, ring):
    """The 2 x (sum of degrees) matrix of concatenated catalecticant blocks."""
    top, bottom = [], []
    offset = 0
    for a in degrees:
        for j in range(a):
            top.append(ring.variable(offset + j))
            bottom.append(ring.variable(offset + j + 1))
        offset += a + 1
    return [top, bottom]


def scroll(degrees, field=None) -> Ideal:
    """Rational normal scroll S(a_1,...,a_k): 2x2 minors of its matrix."""
    degrees = sorted(degrees)
    if not degrees or degrees[-1] <= 0 or any(a < 0 for a in degrees):
        raise ValueError("need a_1 <= ... <= a_k with a_k > 0")
    c = sum(degrees)
    k = len(degrees)
    n = k - 1 + c
    ring = standard_ring(n, field)
    top, bottom = scroll_matrix(degrees, ring)
    gens = []
    for i in range(c):
        for j in range(i + 1, c):
            gens.append(top[i] * bottom[j] - top[j] * bottom[i])
    return Ideal(ring, gens)


def monomial_curve(exponents, field=None) -> Ideal:
    return toric_curve_ideal(exponents, field=field)


def disjoint_linear_spaces(n, field=None) -> Ideal:
    """Union of two disjoint (n-1)/2-dimensional linear subspaces of P^n."""
    if n < 3 or n % 2 == 0:
        raise ValueError("need odd n >= 3")
    q = (n + 1) // 2
    ring = standard_ring(n, field)
    L = Ideal(ring, [ring.variable(i) for i in range(q)])
    M = Ideal(ring, [ring.variable(i) for i in range(q, n + 1)])
    product = L.product(M)
    # transversality makes the product equal the intersection; verified
    if product != intersect(L, M):
        raise ValueError("product and intersection disagree")
    return product


def ci_two_quadrics(n, seed=0, field=None) -> Ideal:
    """Complete intersection of two generic quadrics in P^n (seeded)."""
    if n < 3:
        raise ValueError("need n >= 3")
    if field is None:
        field = PrimeField()
    for attempt in range(5):
        rng = random.Random((seed, attempt))
        ring = standard_ring(n, field)
        gens = [ring.random_polynomial(2, rng) for _ in range(2)]
        I = Ideal(ring, gens)
        from .resolve import krull_dimension

        if krull_dimension(I) == n - 1:
            return I
    raise ValueError("failed to draw a regular sequence of quadrics")


def veronese_projection(seed=0, field=None) -> Ideal:
    """Generic projection to P^4 of the degree-2 embedding of P^2."""
    if field is None:
        field = PrimeField()
    mons = list(monomials_of_degree(3, 2))
    for attempt in range(5):
        rng = random.Random((seed, attempt))
        coeffs = [[rng.randrange(field.p) for _ in mons] for _ in range(5)]
        if mat_rank(coeffs, field.p) < 5:
            continue
        work = Ring(field, ["z0", "z1", "z2"] + [f"x{i}" for i in range(5)], ElimBlockOrder(3))
        gens = []
        for i in range(5):
            q = work.from_dict(
                {tuple(m) + (0,) * 5: coeffs[i][j] for j, m in enumerate(mons)}
            )
            gens.append(work.variable(3 + i) - q)
        eliminated = eliminate(Ideal(work, gens), 3)
        target = standard_ring(4, field)
        return Ideal(target, [target.convert(f) for f in eliminated.gens])
    raise ValueError("projection stayed degenerate for 5 seeds")


def manolache_double(c, n, field=None) -> Ideal:
    """Split double structure (x0^2, x1, ..., x_{c-1}) in P^n."""
    if not 2 <= c <= n - 1:
        raise ValueError("need 2 <= c <= n-1")
    ring = standard_ring(n, field)
    gens = [ring.variable(0) ** 2] + [ring.variable(i) for i in range(1, c)]
    return Ideal(ring, gens)


def buchsbaum_surface(field=None) -> Ideal:
    """The degree-two Buchsbaum surface in P^5: (x0,x1,x2)^2 plus minors."""
    ring = standard_ring(5, field)
    v = [ring.variable(i) for i in range(6)]
    gens = [v[i] * v[j] for i in range(3) for j in range(i, 3)]
    gens += [v[0] * v[4] - v[1] * v[3], v[0] * v[5] - v[2] * v[3], v[1] * v[5] - v[2] * v[4]]
    return Ideal(ring, gens)


# ---------------------------------------------------------------------------
# the named catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: object  # zero-argument callable -> Ideal
    provenance: str  # "published-table" or "derived"
    expected_report: dict = dc_field(default_factory=dict)
    expected_betti: dict | None = None
    note: str = ""


def _cm(i, j):
    return math.comb(i, j)


def _linear_table(deltas):
    t = {(0, 0): 1}
    for i, d in enumerate(deltas, start=1):
        if d:
            t[(i, i + 1)] = d
    return t


def _two_spaces_table(n):
    # convolution of two Koszul strands; equals C(n+1,i+1) - 2 C(q,i+1)
    q = (n + 1) // 2
    deltas = []
    for i in range(1, n + 1):
        total = sum(_cm(q, a) * _cm(q, i + 1 - a) for a in range(1, i + 1))
        deltas.append(total)
    return _linear_table(deltas)


def _min_degree_table(c):
    t = {(0, 0): 1}
    for i in range(1, c + 1):
        t[(i, i + 1)] = i * _cm(c + 1, i + 1)
    return t


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.name] = entry


_register(
    CatalogEntry(
        name="twisted-cubic",
        build=lambda: scroll([3]),
        provenance="derived",
        note="rank counts from the 2x3 catalecticant minors",
        expected_report={"dim": 1, "codim": 2, "degree": 3, "depth": 2, "is_acm": True},
        expected_betti={(0, 0): 1, (1, 2): 3, (2, 3): 2},
    )
)
_register(
    CatalogEntry(
        name="scroll-1-3",
        build=lambda: scroll([1, 3]),
        provenance="derived",
        note="minimal-degree rank formula at codimension 3",
        expected_report={"dim": 2, "codim": 3, "degree": 4, "depth": 3, "is_acm": True},
        expected_betti=_min_degree_table(3),
    )
)
_register(
    CatalogEntry(
        name="scroll-2-2",
        build=lambda: scroll([2, 2]),
        provenance="derived",
        note="minimal-degree rank formula at codimension 3",
        expected_report={"dim": 2, "codim": 3, "degree": 4, "depth": 3, "is_acm": True},
        expected_betti=_min_degree_table(3),
    )
)
_register(
    CatalogEntry(
        name="deg4-ci",
        build=lambda: ci_two_quadrics(3),
        provenance="published-table",
        note="Koszul complex on two quadrics",
        expected_report={"dim": 1, "codim": 2, "degree": 4, "depth": 2, "is_acm": True},
        expected_betti={(0, 0): 1, (1, 2): 2, (2, 4): 1},
    )
)
_register(
    CatalogEntry(
        name="deg4-curve",
        build=lambda: monomial_curve([4, 3, 1, 0]),
        provenance="published-table",
        expected_report={"dim": 1, "codim": 2, "degree": 4, "depth": 1, "is_acm": False},
        expected_betti={(0, 0): 1, (1, 2): 1, (1, 3): 3, (2, 4): 4, (3, 5): 1},
    )
)
_register(
    CatalogEntry(
        name="deg5-acm",
        build=lambda: monomial_curve([5, 4, 3, 2, 0]),
        provenance="published-table",
        note="arithmetically Gorenstein quintic of arithmetic genus one",
        expected_report={"dim": 1, "codim": 3, "degree": 5, "depth": 2, "is_acm": True},
        expected_betti={(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1},
    )
)
_register(
    CatalogEntry(
        name="deg5-curve",
        build=lambda: monomial_curve([5, 4, 3, 1, 0]),
        provenance="published-table",
        expected_report={"dim": 1, "codim": 3, "degree": 5, "depth": 1, "is_acm": False},
        expected_betti={
            (0, 0): 1,
            (1, 2): 4,
            (1, 3): 1,
            (2, 3): 2,
            (2, 4): 6,
            (3, 5): 5,
            (4, 6): 1,
        },
    )
)
_register(
    CatalogEntry(
        name="deg6-c1",
        build=lambda: monomial_curve([6, 5, 3, 2, 1, 0]),
        provenance="published-table",
        expected_report={"dim": 1, "codim": 4, "degree": 6, "depth": 1, "is_acm": False},
        expected_betti={
            (0, 0): 1,
            (1, 2): 8,
            (1, 3): 1,
            (2, 3): 12,
            (2, 4): 4,
            (3, 4): 3,
            (3, 5): 10,
            (4, 6): 6,
            (5, 7): 1,
        },
    )
)
_register(
    CatalogEntry(
        name="deg6-c2",
        build=lambda: monomial_curve([6, 5, 4, 2, 1, 0]),
        provenance="published-table",
        expected_report={"dim": 1, "codim": 4, "degree": 6, "depth": 1, "is_acm": False},
        expected_betti={
            (0, 0): 1,
            (1, 2): 8,
            (2, 3): 11,
            (2, 4): 4,
            (3, 4): 3,
            (3, 5): 10,
            (4, 6): 6,
            (5, 7): 1,
        },
    )
)
_register(
    CatalogEntry(
        name="veronese-projection",
        build=lambda: veronese_projection(),
        provenance="published-table",
        expected_report={"dim": 2, "codim": 2, "degree": 4, "depth": 1, "is_acm": False},
        expected_betti={(0, 0): 1, (1, 3): 7, (2, 4): 10, (3, 5): 5, (4, 6): 1},
    )
)
_register(
    CatalogEntry(
        name="two-lines",
        build=lambda: disjoint_linear_spaces(3),
        provenance="derived",
        note="tensor of two Koszul strands; disconnected, so depth one",
        expected_report={"dim": 1, "codim": 2, "degree": 2, "depth": 1, "is_acm": False},
        expected_betti=_two_spaces_table(3),
    )
)
_register(
    CatalogEntry(
        name="two-planes",
        build=lambda: disjoint_linear_spaces(5),
        provenance="derived",
        note="tensor of two Koszul strands; disconnected, so depth one",
        expected_report={"dim": 2, "codim": 3, "degree": 2, "depth": 1, "is_acm": False},
        expected_betti=_two_spaces_table(5),
    )
)
_register(
    CatalogEntry(
        name="two-3planes",
        build=lambda: disjoint_linear_spaces(7),
        provenance="derived",
        note="tensor of two Koszul strands; disconnected, so depth one",
        expected_report={"dim": 3, "codim": 4, "degree": 2, "depth": 1, "is_acm": False},
        expected_betti=_two_spaces_table(7),
    )
)
_register(
    CatalogEntry(
        name="buchsbaum-surface",
        build=buchsbaum_surface,
        provenance="published-table",
        note="table coincides with the disjoint union of two planes",
        expected_report={"dim": 2, "codim": 3, "degree": 2, "depth": 1, "is_acm": False},
        expected_betti=_two_spaces_table(5),
    )
)
_register(
    CatalogEntry(
        name="manolache-c2-n4",
        build=lambda: manolache_double(2, 4),
        provenance="derived",
        note="Koszul complex on degrees (2, 1)",
        expected_report={"dim": 2, "codim": 2, "degree": 2, "depth": 3, "is_acm": True},
        expected_betti={(0, 0): 1, (1, 1): 1, (1, 2): 1, (2, 3): 1},
    )
)


def build_catalog_ideal(name, seed=None, field=None, extra=()):
    """Resolve a catalog or parametric name from the CLI into an ideal."""
    if name in CATALOG:
        return CATALOG[name].build()
    args = [int(a) for a in extra]
    if name == "scroll":
        return scroll(args, field=field)
    if name == "monomial-curve":
        return monomial_curve(args, field=field)
    if name == "disjoint-linear":
        return disjoint_linear_spaces(args[0], field=field)
    if name == "ci-quadrics":
        return ci_two_quadrics(args[0], seed=seed or 0, field=field)
    if name == "manolache":
        return manolache_double(args[0], args[1], field=field)
    if name == "linear-space":
        return linear_space(args[:-1], args[-1], field=field)
    raise KeyError(f"unknown construction {name!r}")
