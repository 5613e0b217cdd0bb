"""Command-line interface: ideal-file parsing, Betti-diagram rendering,
JSON output and the verification runner.

Ideal file grammar (whitespace-insensitive, ``#`` comments)::

    ring char=<prime> vars=<name>(,<name>)* order=<grevlex|lex>;
    gens: <poly>(, <poly>)*;

where a polynomial uses ``+ - * ^`` over the named variables, integer
literals and parentheses.  Exit codes: 0 success / all checks pass,
1 a check failed, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AlgebraError, ParseError
from .groebner import Ideal
from .resolve import BettiTable, betti_table, hilbert_series, scheme_report
from .ring import GREVLEX, LEX, Polynomial, PrimeField, Ring, order_by_name

# ---------------------------------------------------------------------------
# tokenizer / parser


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


_SYMBOLS = set("=;:,+-*^()")


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, kind, what=None):
        tok = self.next()
        if tok.kind != kind:
            self.fail(f"expected {what or kind}, found {tok.value!r}", tok)
        return tok

    def expect_keyword(self, word):
        tok = self.expect("name", f"keyword {word!r}")
        if tok.value != word:
            self.fail(f"expected keyword {word!r}, found {tok.value!r}", tok)
        return tok

    # -- polynomial expressions ------------------------------------

    def parse_polynomial(self, ring, var_index) -> Polynomial:
        value = self._sum(ring, var_index)
        return value

    def _sum(self, ring, var_index):
        negate = False
        if self.peek().kind == "-":
            self.next()
            negate = True
        total = self._product(ring, var_index)
        if negate:
            total = -total
        while self.peek().kind in "+-":
            op = self.next().kind
            term = self._product(ring, var_index)
            total = total + term if op == "+" else total - term
        return total

    def _product(self, ring, var_index):
        total = self._power(ring, var_index)
        while self.peek().kind == "*":
            self.next()
            total = total * self._power(ring, var_index)
        return total

    def _power(self, ring, var_index):
        base = self._atom(ring, var_index)
        if self.peek().kind == "^":
            self.next()
            tok = self.expect("int", "an exponent")
            base = base ** tok.value
        return base

    def _atom(self, ring, var_index):
        tok = self.next()
        if tok.kind == "int":
            return ring.constant(tok.value)
        if tok.kind == "name":
            if tok.value not in var_index:
                self.fail(f"unknown variable {tok.value!r}", tok)
            return ring.variable(var_index[tok.value])
        if tok.kind == "(":
            inner = self._sum(ring, var_index)
            self.expect(")", "a closing parenthesis")
            return inner
        self.fail(f"expected a polynomial, found {tok.value!r}", tok)


def parse_ideal_file(text, allow_inhomogeneous=False):
    """Parse the ideal-file grammar into (ring, ideal)."""
    p = _Parser(text)
    p.expect_keyword("ring")
    p.expect_keyword("char")
    p.expect("=")
    char_tok = p.expect("int", "a characteristic")
    try:
        field = PrimeField(char_tok.value)
    except ValueError as exc:
        raise ParseError(str(exc), char_tok.line, char_tok.col) from None
    p.expect_keyword("vars")
    p.expect("=")
    names = [p.expect("name", "a variable name").value]
    while p.peek().kind == ",":
        p.next()
        names.append(p.expect("name", "a variable name").value)
    p.expect_keyword("order")
    p.expect("=")
    order_tok = p.expect("name", "a monomial order")
    if order_tok.value not in ("grevlex", "lex"):
        p.fail(f"unknown order {order_tok.value!r}", order_tok)
    p.expect(";")
    try:
        ring = Ring(field, names, order_by_name(order_tok.value))
    except ValueError as exc:
        raise ParseError(str(exc), order_tok.line, order_tok.col) from None
    var_index = {name: i for i, name in enumerate(names)}
    p.expect_keyword("gens")
    p.expect(":")
    gens = []
    positions = []
    while True:
        positions.append(p.peek())
        gens.append(p.parse_polynomial(ring, var_index))
        tok = p.next()
        if tok.kind == ";":
            break
        if tok.kind != ",":
            p.fail("expected ',' or ';' after a generator", tok)
    p.expect("eof", "end of file")
    if not allow_inhomogeneous:
        for g, tok in zip(gens, positions):
            if not g.is_homogeneous():
                raise ParseError(
                    f"generator {emit_polynomial(g)!r} is not homogeneous",
                    tok.line,
                    tok.col,
                )
    return ring, Ideal(ring, gens)


# ---------------------------------------------------------------------------
# emission


def emit_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    p = f.ring.field.p
    names = f.ring.names
    parts = []
    for e, c in f.terms:
        c_bal = c if c <= p // 2 else c - p
        sign = "-" if c_bal < 0 else "+"
        mag = abs(c_bal)
        factors = []
        if mag != 1 or not any(e):
            factors.append(str(mag))
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        parts.append((sign, "*".join(factors)))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def emit_ideal(I: Ideal) -> str:
    ring = I.ring
    head = (
        f"ring char={ring.field.p} vars={','.join(ring.names)} "
        f"order={ring.order.name};"
    )
    gens = ",\n  ".join(emit_polynomial(g) for g in I.gens)
    return f"{head}\ngens:\n  {gens};\n"


# ---------------------------------------------------------------------------
# Betti rendering


def render_betti(table: BettiTable) -> str:
    pd = table.projective_dimension
    reg = table.regularity
    width = max(
        [len(str(v)) for v in table.entries.values()] + [len(str(pd)), 1]
    )
    header = " " * 6 + " ".join(str(i).rjust(width) for i in range(pd + 1))
    lines = [header]
    for row in range(reg + 1):
        cells = []
        for i in range(pd + 1):
            v = table.entry(i, i + row)
            cells.append((str(v) if v else ".").rjust(width))
        lines.append(f"{row}:".rjust(5) + " " + " ".join(cells))
    return "\n".join(lines)


def betti_to_json(table: BettiTable) -> dict:
    return {
        "format": 1,
        "entries": [
            {"i": i, "j": j, "beta": v} for (i, j), v in sorted(table.entries.items())
        ],
        "pd": table.projective_dimension,
        "reg": table.regularity,
    }


def betti_from_json(data: dict) -> BettiTable:
    if data.get("format") != 1:
        raise ValueError("unsupported format")
    return BettiTable({(e["i"], e["j"]): e["beta"] for e in data["entries"]})


def report_to_json(r) -> dict:
    return {
        "format": 1,
        "dim": r.dim,
        "codim": r.codim,
        "degree": r.degree,
        "h_vector": list(r.h_vector),
        "pd": r.pd,
        "depth": r.depth,
        "is_acm": r.is_acm,
        "regularity": r.regularity,
        "was_saturated": r.was_saturated,
    }


# ---------------------------------------------------------------------------
# rope spec files


def parse_rope_file(text, field=None):
    """Header ``rope n=<int> k=<int>`` then B row-wise over t, u."""
    from .ropes import RopeSpec, line_ring

    lines = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append(body)
    if not lines:
        raise ParseError("empty rope file", 1, 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "rope":
        raise ParseError("expected header 'rope n=<int> k=<int>'", 1, 1)
    try:
        n = int(head[1].split("=", 1)[1])
        k = int(head[2].split("=", 1)[1])
    except (IndexError, ValueError):
        raise ParseError("expected header 'rope n=<int> k=<int>'", 1, 1) from None
    S = line_ring(field)
    var_index = {"t": 0, "u": 1}
    rows = []
    for lineno, body in enumerate(lines[1:], start=2):
        row = []
        for cell in body.split(","):
            parser = _Parser(cell)
            f = parser.parse_polynomial(S, var_index)
            if parser.peek().kind != "eof":
                raise ParseError("trailing input in matrix entry", lineno, 1)
            row.append(f)
        rows.append(row)
    if len(rows) != n - 1 or any(len(r) != k for r in rows):
        raise ParseError(f"expected a {n - 1} x {k} matrix", 1, 1)
    return RopeSpec(n, rows, field)


# ---------------------------------------------------------------------------
# commands


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def _load_ideal(path, allow_inhomogeneous=False):
    _, ideal = parse_ideal_file(_read_input(path), allow_inhomogeneous)
    return ideal


def _cmd_betti(args):
    I = _load_ideal(args.file)
    table = betti_table(I)
    if args.json:
        print(json.dumps(betti_to_json(table)))
    else:
        print(render_betti(table))
    return 0


def _cmd_report(args):
    I = _load_ideal(args.file)
    r = scheme_report(I)
    if args.json:
        print(json.dumps(report_to_json(r)))
    else:
        for key, val in report_to_json(r).items():
            if key != "format":
                print(f"{key}: {val}")
    return 0


def _cmd_hilbert(args):
    I = _load_ideal(args.file)
    series = hilbert_series(I)
    from .resolve import krull_dimension

    h = series.h_polynomial(krull_dimension(I))
    if args.json:
        print(
            json.dumps(
                {
                    "format": 1,
                    "numerator": list(series.numerator),
                    "num_vars": series.num_vars,
                    "h_vector": list(h),
                    "degree": sum(h),
                }
            )
        )
    else:
        print(series)
        print(f"h-vector: {tuple(h)}")
        print(f"degree: {sum(h)}")
    return 0


def _cmd_construct(args):
    from .constructions import build_catalog_ideal

    field = PrimeField(args.char)
    I = build_catalog_ideal(args.name, seed=args.seed, field=field, extra=args.params)
    if args.json:
        print(
            json.dumps(
                {
                    "format": 1,
                    "name": args.name,
                    "char": I.ring.field.p,
                    "vars": list(I.ring.names),
                    "order": I.ring.order.name,
                    "gens": [emit_polynomial(g) for g in I.gens],
                    "seed": args.seed,
                }
            )
        )
    else:
        # grammar-format output so it can be piped straight into `betti -`
        print(emit_ideal(I), end="")
    return 0


def _cmd_rope(args):
    from .resolve import minimalize
    from .ropes import rope_complex, rope_ideal

    spec = parse_rope_file(_read_input(args.spec), PrimeField(args.char))
    I = rope_ideal(spec)
    out = {"format": 1, "n": spec.n, "k": spec.k, "beta": list(spec.beta)}
    status = 0
    if args.explicit_complex:
        G = rope_complex(spec)
        complex_ok = G.is_complex()
        minimal = not G.has_constant_entries()
        gb_table = betti_table(I)
        mine = G.betti() if minimal else minimalize(G).betti()
        matches = mine == gb_table
        out["terms"] = [sorted(m.twists) for m in G.modules]
        out["complex_ok"] = complex_ok
        out["minimal"] = minimal
        out["matches_gb_resolution"] = matches
        if not (complex_ok and matches):
            status = 1
        if not args.json:
            for i, m in enumerate(G.modules):
                print(f"G_{i}: {m!r}")
            print(
                f"complex: {'OK' if complex_ok else 'BROKEN'}, "
                f"minimal: {'yes' if minimal else 'no'}, "
                f"matches GB resolution: {'yes' if matches else 'no'}"
            )
    else:
        out["table"] = betti_to_json(betti_table(I))
        if not args.json:
            print(emit_ideal(I), end="")
            print(render_betti(betti_table(I)))
    if args.json:
        print(json.dumps(out))
    return status


def _cmd_section(args):
    from .reductions import first_reduction_check, generic_section, second_reduction_check

    I = _load_ideal(args.file)
    if args.check == "first":
        rep = first_reduction_check(I, seed=args.seed)
        if args.json:
            print(json.dumps({"format": 1, "check": "first", "equal": rep.equal}))
        else:
            print(f"first reduction: tables {'match' if rep.equal else 'DIFFER'}")
        return 0 if rep.equal else 1
    if args.check == "second":
        rep = second_reduction_check(I, seed=args.seed)
        ok = rep.quotient_is_k_minus_2 and rep.quadric_jump_is_one and rep.strand_bounds_hold
        if args.json:
            print(
                json.dumps(
                    {
                        "format": 1,
                        "check": "second",
                        "quotient_hilbert": {str(k): v for k, v in rep.quotient_hilbert.items()},
                        "socle_in_degree_two": rep.quotient_is_k_minus_2,
                        "quadric_jump_is_one": rep.quadric_jump_is_one,
                        "strand_bounds_hold": rep.strand_bounds_hold,
                    }
                )
            )
        else:
            print(f"quotient Hilbert function: {rep.quotient_hilbert}")
            print(f"socle exactly in degree 2: {rep.quotient_is_k_minus_2}")
            print(f"one extra quadric in section: {rep.quadric_jump_is_one}")
            print(f"strand bounds hold: {rep.strand_bounds_hold}")
        return 0 if ok else 1
    result = generic_section(I, seed=args.seed)
    if args.json:
        print(
            json.dumps(
                {
                    "format": 1,
                    "seed": result.seed,
                    "quotient_hilbert": {str(k): v for k, v in result.quotient_hilbert.items()},
                    "section": [emit_polynomial(g) for g in result.section.gens],
                }
            )
        )
    else:
        print(emit_ideal(result.section), end="")
        print(f"# quotient Hilbert function: {result.quotient_hilbert or '0'}")
    return 0


def _cmd_check(args):
    from . import formulas
    from .resolve import krull_dimension

    I = _load_ideal(args.file)
    table = betti_table(I)
    r = scheme_report(I)
    n = I.ring.num_vars - 1
    if args.formula == "min-degree":
        report = formulas.predict_min_degree(r.codim).check("minimal degree", table)
    elif args.formula == "acm":
        report = formulas.predict_acm(r.codim).check("ACM degree codim+2", table)
    elif args.formula == "curve":
        report = formulas.curve_constraints(n, table)
    elif args.formula == "general":
        report = formulas.general_constraints(n, r.codim, r.depth, table)
    elif args.formula == "divisor":
        report = formulas.divisor_constraints(n, r.codim, table)
    elif args.formula == "red2":
        report = formulas.red2_predict(n).check("two disjoint linear spaces", table)
    elif args.formula == "codim2":
        kind = formulas.codim2_classify(table)
        if args.json:
            print(json.dumps({"format": 1, "classification": kind}))
        else:
            print(kind)
        return 0 if kind != "UNKNOWN" else 1
    else:
        raise ValueError(f"unknown formula {args.formula!r}")
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        for c in report.constraints:
            mark = "ok" if c.passed else "FAIL"
            print(f"{mark:4s} {c.name}: expected {c.expected}, got {c.got}")
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _cmd_verify(args):
    from .acceptance import run_checks

    results = run_checks(args.filter)
    for res in results:
        if res.ok:
            print(f"ok   {res.name}")
        else:
            print(f"FAIL {res.name}: {res.detail}")
    good = sum(1 for r in results if r.ok)
    print(f"{'PASS' if good == len(results) else 'FAIL'} {good}/{len(results)}")
    return 0 if good == len(results) else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="bettires",
        description="Minimal free resolutions and Betti tables over a prime field.",
    )
    ap.add_argument("--char", type=int, default=32003, help="field characteristic")
    ap.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    ap.add_argument("--seed", type=int, default=0, help="seed for generic choices")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("betti", help="Betti table of R/I for an ideal file")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_betti)

    sp = sub.add_parser("report", help="scheme invariants for an ideal file")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_report)

    sp = sub.add_parser("hilbert", help="Hilbert series of R/I")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_hilbert)

    sp = sub.add_parser("construct", help="emit a catalog ideal in the file grammar")
    sp.add_argument("name")
    sp.add_argument("params", nargs="*", help="integer parameters for parametric names")
    sp.add_argument("--emit", action="store_true", help="grammar output (the default)")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("rope", help="build a rope from a spec file")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--explicit-complex", action="store_true")
    sp.set_defaults(func=_cmd_rope)

    sp = sub.add_parser("section", help="generic hyperplane section")
    sp.add_argument("file")
    sp.add_argument("--check", choices=["first", "second"])
    sp.set_defaults(func=_cmd_section)

    sp = sub.add_parser("check", help="run a closed-form constraint checker")
    sp.add_argument(
        "formula",
        choices=["min-degree", "acm", "curve", "general", "divisor", "red2", "codim2"],
    )
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("verify-paper", help="run the full golden verification suite")
    sp.add_argument("--filter", default=None, help="only run checks whose name contains this")
    sp.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
