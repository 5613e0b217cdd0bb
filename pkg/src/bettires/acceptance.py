"""Named verification checks behind ``bettires verify-paper``.

Every published resolution and closed-form rank statement the library
reproduces is re-checked here from scratch, alongside cross-machinery
invariants (Euler characteristic against the Hilbert series, a
second, independent reducer re-verifying Buchberger's criterion, parser
fuzzing).  Checks are deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import formulas
from .cli import betti_from_json, betti_to_json, parse_ideal_file
from .constructions import CATALOG
from .errors import ParseError
from .groebner import Ideal, saturate
from .resolve import betti_table, hilbert_series, minimalize, scheme_report
from .reductions import first_reduction_check, second_reduction_check
from .ring import monomial_divides, monomial_div, monomial_lcm


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


_IDEALS = {}


def catalog_ideal(name):
    if name not in _IDEALS:
        _IDEALS[name] = CATALOG[name].build()
    return _IDEALS[name]


def _rope_specs():
    from .ropes import RopeSpec, line_ring

    S = line_ring()
    t, u = S.variable(0), S.variable(1)
    z = S.zero()
    return {
        "p3-beta1": RopeSpec(3, [[t], [u]]),
        "p3-beta2": RopeSpec(3, [[t * t], [u * u]]),
        "p5-split": RopeSpec(
            5,
            [
                [t * t, z, z],
                [-(u * u), t * t, z],
                [z, -(u * u), t * t],
                [z, z, -(u * u)],
            ],
        ),
        "p5-linear": RopeSpec(5, [[t, z, z], [-u, t, z], [z, -u, t], [z, z, -u]]),
        "p4-degenerate": RopeSpec(4, [[S.one(), z], [z, t], [z, u]]),
    }


# ---------------------------------------------------------------------------
# criterion 1: golden tables


GOLDEN_ROPE_P5 = {
    (0, 0): 1,
    (1, 2): 10,
    (1, 3): 3,
    (2, 3): 20,
    (2, 4): 12,
    (3, 4): 15,
    (3, 5): 18,
    (4, 5): 4,
    (4, 6): 12,
    (5, 7): 3,
}

GOLDEN_ROPE_P3_BETA1 = {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}


def _check_catalog_golden(name):
    entry = CATALOG[name]
    table = betti_table(catalog_ideal(name))
    if table.entries != entry.expected_betti:
        return False, f"expected {entry.expected_betti}, computed {table.entries}"
    report = scheme_report(catalog_ideal(name))
    for key, want in entry.expected_report.items():
        got = getattr(report, key)
        if got != want:
            return False, f"{key}: expected {want}, got {got}"
    return True, ""


def _check_rope_golden(which, expected):
    from .ropes import rope_ideal

    spec = _rope_specs()[which]
    table = betti_table(rope_ideal(spec))
    if table.entries != expected:
        return False, f"expected {expected}, computed {table.entries}"
    return True, ""


# ---------------------------------------------------------------------------
# criterion 2: the explicit rope complex


def _check_rope_complex_p5():
    from .ropes import rope_complex, rope_ideal

    spec = _rope_specs()["p5-split"]
    G = rope_complex(spec)
    if not G.is_complex():
        return False, "d'.d' is not zero"
    if G.has_constant_entries():
        return False, "complex is not minimal for a non-degenerate rope"
    if G.betti().entries != GOLDEN_ROPE_P5:
        return False, f"terms {G.betti().entries} differ from the published shape"
    gb = betti_table(rope_ideal(spec))
    if G.betti() != gb:
        return False, "explicit complex disagrees with the independent resolution"
    return True, ""


def _check_rope_complex_p3(which):
    from .ropes import rope_complex, rope_ideal

    spec = _rope_specs()[which]
    beta = spec.beta[0]
    expected = [
        ((0, 0), 1),
        ((1, beta + 1), 1),
        ((1, 2), 3),
        ((2, beta + 2), 2),
        ((2, 3), 2),
        ((3, beta + 3), 1),
    ]
    merged = {}
    for k, v in expected:
        merged[k] = merged.get(k, 0) + v
    G = rope_complex(spec)
    ok = G.is_complex() and G.betti().entries == merged
    ok = ok and G.betti() == betti_table(rope_ideal(spec))
    return ok, "" if ok else f"got {G.betti().entries}, expected {merged}"


def _check_rope_degenerate():
    from .ropes import is_degenerate, rope_complex, rope_ideal

    spec = _rope_specs()["p4-degenerate"]
    if not is_degenerate(spec):
        return False, "spec was expected to be degenerate"
    G = rope_complex(spec)
    if not G.is_complex():
        return False, "degenerate complex fails d'.d' = 0"
    if not G.has_constant_entries():
        return False, "degenerate rope should give a non-minimal complex"
    small = minimalize(G)
    gb = betti_table(rope_ideal(spec))
    if small.betti() != gb:
        return False, "minimalization does not reach the true table"
    if sum(m.rank for m in small.modules) >= sum(m.rank for m in G.modules):
        return False, "minimalization did not drop any rank"
    return True, ""


def _check_rope_nondegenerate_minimal():
    from .ropes import is_degenerate

    spec = _rope_specs()["p5-split"]
    if is_degenerate(spec):
        return False, "split rope should be non-degenerate"
    return True, ""


# ---------------------------------------------------------------------------
# criterion 3: reduction principles


FIRST_REDUCTION_ENTRIES = [
    "twisted-cubic",  # depth 2
    "scroll-1-3",  # depth 3
    "scroll-2-2",  # depth 3
    "deg4-ci",  # depth 2
    "deg6-c1",  # depth 1
    "veronese-projection",  # depth 1
    "buchsbaum-surface",  # depth 1
]


def _check_first_reduction(name):
    rep = first_reduction_check(catalog_ideal(name), seed=7)
    if not rep.equal:
        return False, f"tables differ: {rep.ambient_table} vs {rep.image_table}"
    return True, ""


def _check_second_reduction(name):
    rep = second_reduction_check(catalog_ideal(name), seed=7)
    if not rep.quotient_is_k_minus_2:
        return False, f"quotient Hilbert function is {rep.quotient_hilbert}, not (0,0,1,0,...)"
    if not rep.quadric_jump_is_one:
        return False, "section does not gain exactly one quadric"
    if not rep.strand_bounds_hold:
        return False, "strand bound violated"
    return True, ""


# ---------------------------------------------------------------------------
# criterion 4: formula suite


def _check_curve_formulas(name):
    table = betti_table(catalog_ideal(name))
    rep = formulas.curve_constraints(5, table)
    if not rep.passed:
        return False, "; ".join(c.name for c in rep.failures())
    gap = next(c for c in rep.constraints if c.name == "gamma[1] - beta[2]")
    if gap.expected != -3:
        return False, f"gap identity expected -3, formula gives {gap.expected}"
    return True, ""


def _check_general_formulas():
    for name, (n, c) in {
        "deg6-c1": (5, 4),
        "deg6-c2": (5, 4),
        "veronese-projection": (4, 2),
    }.items():
        table = betti_table(catalog_ideal(name))
        rep = formulas.general_constraints(n, c, 1, table)
        if not rep.passed:
            return False, f"{name}: " + "; ".join(c_.name for c_ in rep.failures())
        want = 8 if name.startswith("deg6") else 0
        quadrics = next(c_ for c_ in rep.constraints if c_.name == "quadric count delta[1]")
        if quadrics.got != want:
            return False, f"{name}: expected {want} quadrics, got {quadrics.got}"
    return True, ""


def _check_red2(n):
    key = {3: "two-lines", 5: "two-planes", 7: "two-3planes"}[n]
    table = betti_table(catalog_ideal(key))
    rep = formulas.red2_predict(n).check("disjoint spaces", table)
    return rep.passed, "" if rep.passed else "; ".join(c.name for c in rep.failures())


def _check_binomial():
    ok = formulas.binomial_identity_exhaustive(12)
    return ok, "" if ok else "identity failed"


def _check_classify():
    got = {
        "deg4-ci": formulas.codim2_classify(betti_table(catalog_ideal("deg4-ci"))),
        "deg4-curve": formulas.codim2_classify(betti_table(catalog_ideal("deg4-curve"))),
        "veronese-projection": formulas.codim2_classify(
            betti_table(catalog_ideal("veronese-projection"))
        ),
    }
    want = {"deg4-ci": "CI", "deg4-curve": "curve-type", "veronese-projection": "surface-type"}
    if got != want:
        return False, f"classified as {got}"
    return True, ""


# ---------------------------------------------------------------------------
# criterion 5: cross-machinery invariants


def _check_euler(name):
    I = catalog_ideal(name)
    lhs = betti_table(I).euler_numerator()
    rhs = hilbert_series(I).numerator
    if lhs != rhs:
        return False, f"betti numerator {lhs} != hilbert numerator {rhs}"
    return True, ""


def _check_h_vectors():
    for name, want in [("deg4-ci", (1, 2, 1)), ("deg5-acm", (1, 3, 1))]:
        h = scheme_report(catalog_ideal(name)).h_vector
        if h != want:
            return False, f"{name}: h-vector {h} != {want}"
    return True, ""


def _check_depth_pd():
    for name in CATALOG:
        I = catalog_ideal(name)
        r = scheme_report(I)
        if r.depth + r.pd != I.ring.num_vars:
            return False, f"{name}: depth {r.depth} + pd {r.pd} != {I.ring.num_vars}"
    return True, ""


def _check_saturate_idempotent():
    for name in ("deg6-c1", "two-planes", "buchsbaum-surface"):
        I = catalog_ideal(name)
        m = I.maximal_ideal()
        S1 = saturate(I, m)
        if saturate(S1, m) != S1:
            return False, f"{name}: saturation not idempotent"
        if not S1.contains_ideal(I):
            return False, f"{name}: saturation lost the ideal"
    return True, ""


def _naive_normal_form(f, basis, ring):
    """Straightforward dict-based reducer, independent of the engine."""
    key = ring.order.key
    p = ring.field.p
    work = dict(f.terms)
    remainder = {}
    while work:
        e = max(work, key=key)
        hit = next(
            (g for g in basis if monomial_divides(g.lead_monomial(), e)), None
        )
        if hit is None:
            remainder[e] = work.pop(e)
            continue
        q = (work[e] * pow(hit.lead_coeff(), p - 2, p)) % p
        shift = monomial_div(e, hit.lead_monomial())
        for ge, gc in hit.terms:
            ne = tuple(a + b for a, b in zip(ge, shift))
            cur = (work.get(ne, 0) - q * gc) % p
            if cur:
                work[ne] = cur
            else:
                work.pop(ne, None)
    return remainder


def _check_gb_postcondition(name):
    """Re-verify Buchberger's criterion with the independent reducer."""
    I = catalog_ideal(name)
    ring = I.ring
    basis = list(I.groebner())
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            f, g = basis[a], basis[b]
            lcm = monomial_lcm(f.lead_monomial(), g.lead_monomial())
            sf = f.mul_monomial(monomial_div(lcm, f.lead_monomial()))
            sg = g.mul_monomial(monomial_div(lcm, g.lead_monomial()))
            spair = sf.scale(ring.field.inv(sf.lead_coeff())) - sg.scale(
                ring.field.inv(sg.lead_coeff())
            )
            if _naive_normal_form(spair, basis, ring):
                return False, f"s-pair ({a},{b}) does not reduce to zero"
    # membership soundness
    for g in I.gens:
        if _naive_normal_form(g, basis, ring):
            return False, "an input generator does not reduce to zero"
    return True, ""


VALID_IDEAL_FILE = """ring char=32003 vars=x0,x1,x2,x3 order=grevlex;
gens: x0*x2-x1^2, x0*x3-x1*x2, x1*x3-x2^2;
"""


def _check_parser_fuzz():
    rng = random.Random(2026)
    alphabet = "abcxyz0123456789+-*^();:=,# \n"
    for trial in range(1000):
        text = list(VALID_IDEAL_FILE)
        for _ in range(rng.randrange(1, 4)):
            op = rng.randrange(3)
            pos = rng.randrange(len(text))
            if op == 0:
                text[pos] = rng.choice(alphabet)
            elif op == 1:
                text.insert(pos, rng.choice(alphabet))
            elif text:
                del text[pos]
        mutated = "".join(text)
        try:
            parse_ideal_file(mutated)
        except ParseError:
            pass
        except Exception as exc:  # anything else is a parser bug
            return False, f"trial {trial}: {type(exc).__name__}: {exc}"
    return True, ""


def _check_betti_roundtrip():
    table = betti_table(catalog_ideal("deg6-c1"))
    if betti_from_json(betti_to_json(table)) != table:
        return False, "JSON round-trip changed the table"
    return True, ""


# ---------------------------------------------------------------------------
# criterion 6: the degree-two cohomology presentation


def _check_h1(which):
    from .ropes import h1_presentation

    spec = _rope_specs()[which]
    pres = h1_presentation(spec)
    if not pres.identity_holds:
        return False, "four-term Hilbert identity fails"
    if pres.minors_codim_ok is False:
        return False, "maximal minors of the presentation matrix not of codimension two"
    if which == "p5-linear":
        # one syzygy row with entries the four cubics, up to sign/order
        entries = sorted(
            str(pres.matrix.entry(0, j).monic()) for j in range(4)
        )
        want = sorted(["u^3", "t*u^2", "t^2*u", "t^3"])
        if entries != want:
            return False, f"syzygy row {entries} != cubics {want}"
    if which == "p3-beta1":
        nonzero = {d: v for d, v in pres.coker_hilbert.items() if v}
        if nonzero != {0: 1}:
            return False, f"cokernel Hilbert function {nonzero}, expected K in degree 0"
    return True, ""


# ---------------------------------------------------------------------------
# registry


def _build_checks():
    checks = []
    for name in (
        "deg6-c1",
        "deg6-c2",
        "deg4-ci",
        "deg4-curve",
        "deg5-acm",
        "deg5-curve",
        "veronese-projection",
    ):
        checks.append((f"golden/{name}", lambda n=name: _check_catalog_golden(n)))
    checks.append(
        ("golden/rope-p3-beta1", lambda: _check_rope_golden("p3-beta1", GOLDEN_ROPE_P3_BETA1))
    )
    checks.append(("golden/rope-p5", lambda: _check_rope_golden("p5-split", GOLDEN_ROPE_P5)))
    checks.append(("rope/complex-p5", _check_rope_complex_p5))
    checks.append(("rope/complex-p3-beta1", lambda: _check_rope_complex_p3("p3-beta1")))
    checks.append(("rope/complex-p3-beta2", lambda: _check_rope_complex_p3("p3-beta2")))
    checks.append(("rope/nondegenerate-minimal", _check_rope_nondegenerate_minimal))
    checks.append(("rope/degenerate-nonminimal", _check_rope_degenerate))
    for name in FIRST_REDUCTION_ENTRIES:
        checks.append((f"reduction/first-{name}", lambda n=name: _check_first_reduction(n)))
    checks.append(
        ("reduction/second-veronese-projection", lambda: _check_second_reduction("veronese-projection"))
    )
    checks.append(
        ("reduction/second-buchsbaum-surface", lambda: _check_second_reduction("buchsbaum-surface"))
    )
    checks.append(("formulas/curve-deg6-c1", lambda: _check_curve_formulas("deg6-c1")))
    checks.append(("formulas/curve-deg6-c2", lambda: _check_curve_formulas("deg6-c2")))
    checks.append(("formulas/general-quadric-counts", _check_general_formulas))
    for n in (3, 5, 7):
        checks.append((f"formulas/red2-n{n}", lambda n=n: _check_red2(n)))
    checks.append(("formulas/binomial-identity-q12", _check_binomial))
    checks.append(("formulas/codim2-classification", _check_classify))
    for name in CATALOG:
        checks.append((f"invariants/euler-{name}", lambda n=name: _check_euler(n)))
    checks.append(("invariants/acm-h-vectors", _check_h_vectors))
    checks.append(("invariants/depth-plus-pd", _check_depth_pd))
    checks.append(("invariants/saturate-idempotent", _check_saturate_idempotent))
    for name in ("twisted-cubic", "deg6-c1", "buchsbaum-surface"):
        checks.append(
            (f"invariants/gb-reverify-{name}", lambda n=name: _check_gb_postcondition(n))
        )
    checks.append(("invariants/parser-fuzz", _check_parser_fuzz))
    checks.append(("invariants/betti-json-roundtrip", _check_betti_roundtrip))
    for which in ("p5-linear", "p5-split", "p3-beta1"):
        checks.append((f"h1/{which}", lambda w=which: _check_h1(w)))
    return checks


def run_checks(name_filter=None):
    results = []
    for name, fn in _build_checks():
        if name_filter and name_filter not in name:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
