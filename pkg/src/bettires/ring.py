"""Prime fields, monomial orders and sparse multivariate polynomials.

Coefficients live in F_p for a machine-word prime p (default 32003).
Polynomials are stored as term lists sorted descending under the ring's
monomial order, so the leading term is always ``terms[0]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DimensionError, RingMismatchError

MAX_EXPONENT = 1 << 15


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p with exact modular arithmetic."""

    p: int = 32003

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)


class MonomialOrder:
    """Base class: a global order given by an additive flat integer key.

    ``key(m1 + m2) == key(m1) +(componentwise) key(m2)`` for every
    subclass, which lets multiplication by a monomial act on cached keys
    by a single tuple addition.
    """

    name = "?"

    def key(self, exps):
        raise NotImplementedError

    def key_length(self, num_vars):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class GrevlexOrder(MonomialOrder):
    name = "grevlex"

    def key(self, exps):
        k = [sum(exps)]
        for e in reversed(exps):
            k.append(-e)
        return tuple(k)

    def key_length(self, num_vars):
        return num_vars + 1


class LexOrder(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return tuple(exps)

    def key_length(self, num_vars):
        return num_vars


class ElimBlockOrder(MonomialOrder):
    """Eliminates the first ``block`` variables: any monomial involving
    them beats any monomial that does not.  Grevlex within each block."""

    def __init__(self, block):
        if block < 1:
            raise ValueError("elimination block must be positive")
        self.block = block
        self.name = f"elim({block})"

    def key(self, exps):
        b = self.block
        head, tail = exps[:b], exps[b:]
        k = [sum(head)]
        k.extend(-e for e in reversed(head))
        k.append(sum(tail))
        k.extend(-e for e in reversed(tail))
        return tuple(k)

    def key_length(self, num_vars):
        return num_vars + 2


GREVLEX = GrevlexOrder()
LEX = LexOrder()

_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


def order_by_name(name: str) -> MonomialOrder:
    try:
        return _ORDERS[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


def monomial_compare(order: MonomialOrder, m1, m2) -> int:
    """-1, 0 or 1 according to m1 < m2, m1 = m2 or m1 > m2."""
    if len(m1) != len(m2):
        raise DimensionError("monomials of different lengths")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


def monomial_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def monomial_divides(m1, m2):
    """True when m1 | m2 componentwise."""
    return all(a <= b for a, b in zip(m1, m2))


def monomial_div(m1, m2):
    """m1 / m2; caller guarantees divisibility."""
    return tuple(a - b for a, b in zip(m1, m2))


def monomial_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def monomial_gcd(m1, m2):
    return tuple(min(a, b) for a, b in zip(m1, m2))


class Ring:
    """K[x_0, ..., x_n] for a prime field K, with an attached monomial order."""

    __slots__ = ("field", "names", "order", "_key", "_zero_exps")

    def __init__(self, field: PrimeField, names, order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(names) != len(set(names)):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_key", order.key)
        object.__setattr__(self, "_zero_exps", (0,) * len(names))

    def __setattr__(self, *a):
        raise AttributeError("Ring is immutable")

    @property
    def num_vars(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.field == other.field
            and self.names == other.names
            and self.order.name == other.order.name
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order.name))

    def __repr__(self):
        return f"F{self.field.p}[{','.join(self.names)}; {self.order.name}]"

    # -- constructors -------------------------------------------------

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c %= self.field.p
        if c == 0:
            return Polynomial(self, ())
        return Polynomial(self, ((self._zero_exps, c),))

    def variable(self, i):
        if not 0 <= i < self.num_vars:
            raise DimensionError(f"variable index {i} out of range")
        e = [0] * self.num_vars
        e[i] = 1
        return Polynomial(self, ((tuple(e), 1),))

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.num_vars:
            raise DimensionError("exponent vector has wrong length")
        coeff %= self.field.p
        if coeff == 0:
            return self.zero()
        return Polynomial(self, ((exps, coeff),))

    def from_dict(self, d):
        """Polynomial from {exps: coeff}; zeros dropped, terms sorted."""
        p = self.field.p
        items = [(e, c % p) for e, c in d.items() if c % p]
        items.sort(key=lambda t: self._key(t[0]), reverse=True)
        return Polynomial(self, tuple(items))

    def linear_form(self, coeffs):
        d = {}
        for i, c in enumerate(coeffs):
            if c % self.field.p:
                e = [0] * self.num_vars
                e[i] = 1
                d[tuple(e)] = c
        return self.from_dict(d)

    def random_polynomial(self, degree, rng: random.Random, homogeneous=True):
        """Dense random form of the given degree (all monomials, random coeffs)."""
        d = {}
        for exps in monomials_of_degree(self.num_vars, degree):
            d[exps] = rng.randrange(self.field.p)
        if not homogeneous:
            d[self._zero_exps] = rng.randrange(self.field.p)
        return self.from_dict(d)

    # -- derived rings ------------------------------------------------

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.field, self.names, order)

    def drop_variable(self, idx) -> "Ring":
        names = self.names[:idx] + self.names[idx + 1 :]
        return Ring(self.field, names, self.order)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Reinterpret a polynomial from a ring with the same variables."""
        if f.ring.names != self.names or f.ring.field != self.field:
            raise RingMismatchError("cannot convert between different variable sets")
        return self.from_dict(dict(f.terms))


def monomials_of_degree(num_vars, degree):
    """All exponent vectors of the given total degree."""
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - first):
            yield (first,) + rest


class Polynomial:
    """Sparse polynomial; terms sorted descending under the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms):
        self.ring = ring
        self.terms = terms  # tuple of (exps, coeff), coeff != 0

    # -- queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def lead_monomial(self):
        return self.terms[0][0]

    def lead_coeff(self):
        return self.terms[0][1]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        d = sum(self.terms[0][0])
        return all(sum(e) == d for e, _ in self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e, _ in self.terms)

    def constant_coeff(self):
        for e, c in self.terms:
            if sum(e) == 0:
                return c
        return 0

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        p = self.ring.field.p
        for e, c in other.terms:
            nc = (d.get(e, 0) + c) % p
            if nc:
                d[e] = nc
            else:
                d.pop(e, None)
        return self.ring.from_dict(d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, tuple((e, p - c) for e, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.field.p
        d = {}
        if len(self.terms) > len(other.terms):
            f, g = other, self
        else:
            f, g = self, other
        for e1, c1 in f.terms:
            for e2, c2 in g.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = (d.get(e, 0) + c1 * c2) % p
                if nc:
                    d[e] = nc
                else:
                    del d[e]
        return self.ring.from_dict(d)

    __rmul__ = __mul__

    def scale(self, c):
        c %= self.ring.field.p
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        p = self.ring.field.p
        return Polynomial(self.ring, tuple((e, (k * c) % p) for e, k in self.terms))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def mul_monomial(self, exps, coeff=1):
        p = self.ring.field.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        out = []
        for e, c in self.terms:
            ne = tuple(a + b for a, b in zip(e, exps))
            if any(x > MAX_EXPONENT for x in ne):
                raise OverflowError("exponent overflow")
            out.append((ne, (c * coeff) % p))
        return Polynomial(self.ring, tuple(out))

    # -- substitution and evaluation ----------------------------------

    def substitute(self, var_index, g: "Polynomial") -> "Polynomial":
        """Replace x_{var_index} by g.

        When g lives in the ring with that variable removed, the result
        descends to the smaller ring as well.
        """
        ring = self.ring
        if not 0 <= var_index < ring.num_vars:
            raise DimensionError(f"variable index {var_index} out of range")
        descend = g.ring.num_vars == ring.num_vars - 1
        if descend:
            if g.ring != ring.drop_variable(var_index):
                raise RingMismatchError("substitution target ring does not match")
            target = g.ring
        else:
            if g.ring != ring:
                raise RingMismatchError("substitution value in a different ring")
            target = ring

        powers = {0: target.one()}

        def gpow(k):
            if k not in powers:
                powers[k] = gpow(k - 1) * g
            return powers[k]

        total = target.zero()
        for e, c in self.terms:
            if descend:
                rest = e[:var_index] + e[var_index + 1 :]
            else:
                rest = e[:var_index] + (0,) + e[var_index + 1 :]
            total = total + gpow(e[var_index]).mul_monomial(rest, c)
        return total

    def evaluate(self, point):
        """Value at a tuple of field elements."""
        if len(point) != self.ring.num_vars:
            raise DimensionError("point has wrong length")
        p = self.ring.field.p
        total = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v = (v * pow(x, k, p)) % p
            total = (total + v) % p
        return total

    # -- display ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.terms:
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__
