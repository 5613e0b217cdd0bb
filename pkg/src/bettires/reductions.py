"""Generic hyperplane sections and the two table-reduction principles.

A "general" hyperplane is realized as a seeded pseudo-random substitution
for the last variable; genericity is certified pragmatically by
seed-stability (re-draw on disagreement, up to five seeds).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .groebner import Ideal, saturate
from .resolve import betti_table, hilbert_function, krull_dimension, scheme_report
from .ring import Ring


@dataclass
class SectionResult:
    image: Ideal  # unsaturated image in one fewer variable
    section: Ideal  # its saturation: the hyperplane-section ideal
    quotient_hilbert: dict  # degree -> colength of image inside saturation
    seed: int


def generic_section(I: Ideal, seed=0) -> SectionResult:
    """Image of I under a seeded generic substitution x_n -> l(x_0..x_{n-1}).

    Returns both the (possibly unsaturated) image ideal and its
    saturation, together with their degreewise Hilbert-function gap.
    """
    if krull_dimension(I) < 2:
        raise ValueError("scheme dimension must be at least one")
    ring = I.ring
    n = ring.num_vars - 1
    rng = random.Random(seed)
    small = ring.drop_variable(n)
    repl = small.linear_form([rng.randrange(1, ring.field.p) for _ in range(n)])
    image = Ideal(small, [f.substitute(n, repl) for f in I.gens])
    section = saturate(image, image.maximal_ideal())
    reg = betti_table(section).regularity
    window = range(0, reg + 4)
    quotient = {}
    for d in window:
        gap = hilbert_function(image, d) - hilbert_function(section, d)
        if gap:
            quotient[d] = gap
    return SectionResult(image=image, section=section, quotient_hilbert=quotient, seed=seed)


def _stable(compute, seed, summarize):
    """Re-run with fresh seeds until two consecutive draws agree."""
    prev = compute(seed)
    for step in range(1, 5):
        cur = compute(seed + step)
        if summarize(cur) == summarize(prev):
            return prev
        prev = cur
    return prev


@dataclass
class FirstReductionReport:
    equal: bool
    ambient_table: object
    image_table: object
    seed: int


def first_reduction_check(I: Ideal, seed=0) -> FirstReductionReport:
    """Betti invariance under quotient by a generic linear form.

    The table of R/I must coincide with the table of the unsaturated
    image ideal in one fewer variable (positive depth is automatic for
    saturated ideals of nonempty schemes).
    """

    def compute(s):
        section = generic_section(I, seed=s)
        return betti_table(section.image)

    image_table = _stable(compute, seed, lambda t: t)
    ambient = betti_table(I)
    return FirstReductionReport(
        equal=(ambient == image_table),
        ambient_table=ambient,
        image_table=image_table,
        seed=seed,
    )


@dataclass
class SecondReductionReport:
    quotient_is_k_minus_2: bool
    quadric_jump_is_one: bool
    strand_bounds_hold: bool
    quotient_hilbert: dict
    seed: int


def second_reduction_check(I: Ideal, seed=0) -> SecondReductionReport:
    """Depth-one section bookkeeping.

    Verifies that the section's saturation differs from the image by a
    one-dimensional socle in degree two, that the section ideal has
    exactly one more quadric generator, and that the degree-(i+2) strand
    of the image stays within the section strand plus the Koszul
    contribution binom(p, i)."""
    report = scheme_report(I)
    if report.depth != 1:
        raise ValueError("second reduction applies to depth-one schemes only")
    n = I.ring.num_vars - 1
    p_inv = n  # n + 1 - depth

    def compute(s):
        return generic_section(I, seed=s)

    section = _stable(
        compute, seed, lambda r: (betti_table(r.image), tuple(sorted(r.quotient_hilbert.items())))
    )
    quotient_ok = section.quotient_hilbert == {2: 1}
    image_t = betti_table(section.image)
    sat_t = betti_table(section.section)
    jump_ok = sat_t.entry(1, 2) == image_t.entry(1, 2) + 1
    bounds = True
    top = max(i for i, _ in image_t.entries)
    for i in range(1, top + 1):
        if image_t.entry(i, i + 2) > sat_t.entry(i, i + 2) + math.comb(p_inv, i):
            bounds = False
    return SecondReductionReport(
        quotient_is_k_minus_2=quotient_ok,
        quadric_jump_is_one=jump_ok,
        strand_bounds_hold=bounds,
        quotient_hilbert=section.quotient_hilbert,
        seed=seed,
    )
