"""Closed-form Betti predictors and constraint checkers.

Each checker compares a computed table against the published closed
forms and returns a per-constraint report; equality failures and bound
failures are distinguished.  Formula-versus-engine conflicts are always
resolved in favor of the computed table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DimensionError
from .resolve import BettiTable


def C(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class Constraint:
    name: str
    kind: str  # "equality" or "bound"
    expected: object
    got: object
    passed: bool


class ConstraintReport:
    def __init__(self, title, constraints):
        self.title = title
        self.constraints = list(constraints)

    @property
    def passed(self):
        return all(c.passed for c in self.constraints)

    def failures(self):
        return [c for c in self.constraints if not c.passed]

    def to_json(self):
        return {
            "format": 1,
            "title": self.title,
            "pass": self.passed,
            "constraints": [
                {
                    "name": c.name,
                    "kind": c.kind,
                    "expected": c.expected,
                    "got": c.got,
                    "pass": c.passed,
                }
                for c in self.constraints
            ],
        }

    def __repr__(self):
        return json.dumps(self.to_json(), indent=2)


def _eq(name, expected, got):
    return Constraint(name, "equality", expected, got, expected == got)


def _le(name, got, bound):
    return Constraint(f"{name} <= {bound}", "bound", bound, got, got <= bound)


def _ge(name, got, bound):
    return Constraint(f"{name} >= {bound}", "bound", bound, got, got >= bound)


@dataclass(frozen=True)
class PredictedTable:
    """Equalities plus bound slots for entries the formulas only bound."""

    equalities: dict
    upper_bounds: dict
    lower_bounds: dict

    def check(self, title, table: BettiTable) -> ConstraintReport:
        cons = []
        for (i, j), v in sorted(self.equalities.items()):
            cons.append(_eq(f"beta[{i},{j}]", v, table.entry(i, j)))
        for (i, j), v in sorted(self.upper_bounds.items()):
            cons.append(_le(f"beta[{i},{j}]", table.entry(i, j), v))
        for (i, j), v in sorted(self.lower_bounds.items()):
            cons.append(_ge(f"beta[{i},{j}]", table.entry(i, j), v))
        support = set(self.equalities) | set(self.upper_bounds)
        extra = [k for k in table.entries if k not in support and k != (0, 0)]
        cons.append(_eq("no entries outside the predicted shape", [], sorted(extra)))
        return ConstraintReport(title, cons)


def predict_min_degree(c) -> PredictedTable:
    """Table of a variety of minimal degree of codimension c."""
    if c < 1:
        raise ValueError("codimension must be positive")
    eq = {(i, i + 1): i * C(c + 1, i + 1) for i in range(1, c + 1)}
    return PredictedTable(eq, {}, {})


def predict_acm(c) -> PredictedTable:
    """Table of an ACM variety of degree c+2 and codimension c >= 2."""
    if c < 2:
        raise ValueError("need codimension at least 2")
    eq = {(i, i + 1): i * C(c + 1, i + 1) - C(c, i - 1) for i in range(1, c)}
    eq[(c, c + 2)] = 1
    return PredictedTable(eq, {}, {})


def _strands(n_steps, table: BettiTable, label):
    """Split a two-strand table into (linear, quadratic-shift) rows."""
    lin, quad = {}, {}
    for (i, j), v in table.entries.items():
        if i == 0:
            if (i, j) != (0, 0):
                raise DimensionError(f"{label}: unexpected entry at {(i, j)}")
            continue
        if j == i + 1:
            lin[i] = v
        elif j == i + 2:
            quad[i] = v
        else:
            raise DimensionError(f"{label}: entry beta[{i},{j}] outside the two strands")
    return ({i: lin.get(i, 0) for i in range(1, n_steps + 1)},
            {i: quad.get(i, 0) for i in range(1, n_steps + 1)})


def curve_constraints(n, table: BettiTable) -> ConstraintReport:
    """Constraints for a non-ACM integral curve of degree n+1 in P^n."""
    lin, quad = _strands(n, table, "curve table")
    alpha = {i: i * C(n - 1, i + 1) for i in range(1, n + 1)}
    beta = {i: lin[i] - alpha[i] for i in range(1, n + 1)}
    gamma = quad
    cons = [_eq("beta0", 1, table.entry(0, 0))]
    cons.append(_eq("extra linear strand at step 1 (n-3)", n - 3, beta[1]))
    for i in range(max(2, n - 2), n + 1):
        cons.append(_eq(f"extra linear strand vanishes at step {i}", 0, beta[i]))
    for i in range(1, n + 1):
        cons.append(_ge(f"extra linear strand at step {i}", beta[i], 0))
    if n - 3 >= 1:
        cons.append(
            _eq(f"gamma[{n - 3}]", C(n + 1, 3) - (n - 1) ** 2, gamma[n - 3])
        )
    cons.append(_eq(f"gamma[{n - 2}]", C(n, 2), gamma[n - 2]))
    cons.append(_eq(f"gamma[{n - 1}]", n + 1, gamma[n - 1]))
    cons.append(_eq(f"gamma[{n}]", 1, gamma[n]))
    for i in range(1, n + 1):
        want = C(n + 1, i + 1) - C(n - 1, i + 1) - (n - 1) * C(n - 2, i)
        got = gamma[i] - (beta[i + 1] if i + 1 <= n else 0)
        cons.append(_eq(f"gamma[{i}] - beta[{i + 1}]", want, got))
        if i <= n - 2:
            # at i = n-1 the binomial bound collides with the exact value
            # n+1, so it only applies through the penultimate step
            cons.append(_le(f"gamma[{i}]", gamma[i], C(n, i)))
        cons.append(_ge(f"gamma[{i}]", gamma[i], 0))
    return ConstraintReport(f"degree-{n + 1} curve in P^{n}", cons)


def general_constraints(n, c, depth, table: BettiTable) -> ConstraintReport:
    """Constraints for degree c+2, codimension c, depth <= dim.

    The published gap identity for gamma_i - delta_{i+1} disagrees with
    the published example tables; the form used here is re-derived from
    the curve case by the hyperplane-section recursion and verified
    against every example table.
    """
    dim = n - c
    if depth > dim:
        raise ValueError("checker applies when depth does not exceed dimension")
    if depth < 1:
        raise ValueError("depth must be at least one")
    p = n + 1 - depth
    delta, gamma = _strands(p, table, "general table")
    cons = [_eq("beta0", 1, table.entry(0, 0))]
    cons.append(_eq("quadric count delta[1]", C(c + 2, 2) - p - 2, delta[1]))
    for i in range(c, p + 1):
        cons.append(_eq(f"delta[{i}]", 0, delta[i]))
    for i in range(c, p + 1):
        cons.append(_eq(f"gamma[{i}]", C(p + 1, i + 1), gamma[i]))
    if c - 1 >= 1:
        cons.append(_eq(f"gamma[{c - 1}]", C(p + 1, c) - (c + 1), gamma[c - 1]))
    if c - 2 >= 1:
        cons.append(_le(f"gamma[{c - 2}]", gamma[c - 2], C(p + 1, c - 1) - c * c))
    for i in range(1, c - 2):
        cons.append(_le(f"gamma[{i}]", gamma[i], C(p + 1, i + 1)))
    for i in range(1, p + 1):
        want = (
            C(p + 1, i + 1)
            - C(c, i + 1)
            - c * C(c - 1, i)
            - (i + 1) * C(c, i + 2)
        )
        got = gamma[i] - (delta[i + 1] if i + 1 <= p else 0)
        cons.append(_eq(f"gamma[{i}] - delta[{i + 1}]", want, got))
    cons.append(_eq("resolution length", p, table.projective_dimension))
    return ConstraintReport(f"degree-{c + 2} codim-{c} depth-{depth} in P^{n}", cons)


def divisor_constraints(n, c, table: BettiTable) -> ConstraintReport:
    """Constraints for a depth-one degree-(c+2) divisor on a variety of
    minimal degree (dimension k = n - c).

    The published equality for gamma_i in the middle range contradicts
    the curve case it specializes to; the verified anchor values
    gamma_{c-1} and gamma_{c-2} are checked as equalities instead and
    lower steps only through the gap identity and bounds."""
    k = n - c
    lin, quad = _strands(n, table, "divisor table")
    alpha = {i: i * C(c, i + 1) for i in range(1, n + 1)}
    beta = {i: lin[i] - alpha[i] for i in range(1, n + 1)}
    gamma = quad
    cons = [_eq("beta0", 1, table.entry(0, 0))]
    cons.append(_eq("extra linear strand at step 1 (c-k-1)", c - k - 1, beta[1]))
    for i in range(max(2, c - k), n + 1):
        cons.append(_eq(f"extra linear strand vanishes at step {i}", 0, beta[i]))
    for i in range(1, n + 1):
        cons.append(_ge(f"extra linear strand at step {i}", beta[i], 0))
    for i in range(c, n + 1):
        cons.append(_eq(f"gamma[{i}]", C(n + 1, i + 1), gamma[i]))
    if c - 1 >= 1:
        cons.append(_eq(f"gamma[{c - 1}]", C(n + 1, c) - c - 1, gamma[c - 1]))
    if c - 2 >= max(1, c - k - 1):
        cons.append(_eq(f"gamma[{c - 2}]", C(n + 1, c - 1) - c * c, gamma[c - 2]))
    for i in range(1, n + 1):
        want = C(n + 1, i + 1) - C(c, i + 1) - c * C(c - 1, i)
        got = gamma[i] - (beta[i + 1] if i + 1 <= n else 0)
        cons.append(_eq(f"gamma[{i}] - beta[{i + 1}]", want, got))
        cons.append(_le(f"gamma[{i}]", gamma[i], C(n + 1, i)))
        cons.append(_ge(f"gamma[{i}]", gamma[i], 0))
    return ConstraintReport(f"degree-{c + 2} divisor on minimal degree in P^{n}", cons)


def red2_predict(n) -> PredictedTable:
    """Table of two disjoint (n-1)/2-planes in P^n (n odd)."""
    if n < 3 or n % 2 == 0:
        raise ValueError("need odd n >= 3")
    q = (n + 1) // 2
    eq = {}
    for i in range(1, n + 1):
        v = C(n + 1, i + 1) - 2 * C(q, i + 1)
        if v:
            eq[(i, i + 1)] = v
    return PredictedTable(eq, {}, {})


def binomial_identity(q, j):
    """(lhs, rhs) of the Koszul-convolution binomial identity."""
    lhs = sum(C(q, i + 1) * C(q, j - i + 1) for i in range(0, j + 1))
    rhs = C(2 * q, j + 2) - 2 * C(q, j + 2)
    return lhs, rhs


def binomial_identity_exhaustive(q_max=12) -> bool:
    return all(
        binomial_identity(q, j)[0] == binomial_identity(q, j)[1]
        for q in range(1, q_max + 1)
        for j in range(0, 2 * q + 1)
    )


CODIM2_SHAPES = {
    "CI": {(0, 0): 1, (1, 2): 2, (2, 4): 1},
    "curve-type": {(0, 0): 1, (1, 2): 1, (1, 3): 3, (2, 4): 4, (3, 5): 1},
    "surface-type": {(0, 0): 1, (1, 3): 7, (2, 4): 10, (3, 5): 5, (4, 6): 1},
}


def codim2_classify(table: BettiTable) -> str:
    """Match a codim-2 degree-4 table against the three published shapes."""
    for name, shape in CODIM2_SHAPES.items():
        if table.entries == shape:
            return name
    return "UNKNOWN"
