"""Text grammar for polynomials and chains.

Polynomials: variables ``p1..pN``, ``q1..qN`` or ``y1..y2N``; integer and
``a/b`` literals; ``+ - * ^`` and parentheses.  ``*`` is the commutative
product.  A matrix unit ``E(i,j)`` (1-based) may appear as a factor; a term
without one is tensored with the identity matrix.

Chains: ``coeff * [a0; a1; ...]`` terms joined by ``+``/``-``, e.g.
``[1; p1; q1] - [1; q1; p1]``.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .weyl import MatrixElement, WeylPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[pqy])(?P<idx>\d+)|(?P<unit>E)\s*\(|(?P<op>[-+*^/()\[\];,]))")


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
            start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group("num"):
                self.tokens.append(("num", int(m.group("num")), start))
            elif m.group("var"):
                self.tokens.append(("var", (m.group("var"), int(m.group("idx"))), start))
            elif m.group("unit"):
                self.tokens.append(("unit", None, start))
            else:
                self.tokens.append(("op", m.group("op"), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos, self.text)

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops


# Raw polynomials: {(exponent-dict-as-sorted-tuple, unit-or-None): Fraction}

def _raw_mul(a, b, lex, pos):
    out = {}
    for (ea, ua), ca in a.items():
        for (eb, ub), cb in b.items():
            if ua is not None and ub is not None:
                if ua[1] != ub[0]:
                    continue
                unit = (ua[0], ub[1])
            else:
                unit = ua if ua is not None else ub
            exp = dict(ea)
            for v, k in eb:
                exp[v] = exp.get(v, 0) + k
            key = (tuple(sorted(exp.items())), unit)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _raw_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _const(c):
    return {((), None): Fraction(c)} if c else {}


def _parse_expr(lex):
    sign = 1
    if lex.at_op("+", "-"):
        sign = -1 if lex.take()[1] == "-" else 1
    out = _raw_add({}, _parse_term(lex), sign)
    while lex.at_op("+", "-"):
        sign = -1 if lex.take()[1] == "-" else 1
        out = _raw_add(out, _parse_term(lex), sign)
    return out


def _parse_term(lex):
    _, _, pos = lex.peek()
    out = _parse_factor(lex)
    while lex.at_op("*"):
        lex.take()
        out = _raw_mul(out, _parse_factor(lex), lex, pos)
    return out


def _parse_factor(lex):
    _, _, pos = lex.peek()
    base = _parse_atom(lex)
    if lex.at_op("^"):
        lex.take()
        kind, val, p = lex.take()
        if kind != "num":
            raise ParseError("expected an integer exponent", p, lex.text)
        out = _const(1)
        for _ in range(val):
            out = _raw_mul(out, base, lex, pos)
        return out
    return base


def _parse_atom(lex):
    kind, val, pos = lex.take()
    if kind == "num":
        if lex.at_op("/"):
            lex.take()
            k2, den, p2 = lex.take()
            if k2 != "num" or den == 0:
                raise ParseError("expected a nonzero integer denominator", p2, lex.text)
            return _const(Fraction(val, den))
        return _const(val)
    if kind == "var":
        letter, idx = val
        if idx < 1:
            raise ParseError("variable indices start at 1", pos, lex.text)
        if letter == "p":
            v = 2 * (idx - 1)
        elif letter == "q":
            v = 2 * idx - 1
        else:
            v = idx - 1
        return {(((v, 1),), None): Fraction(1)}
    if kind == "unit":
        k1, i, p1 = lex.take()
        lex.expect(",")
        k2, j, p2 = lex.take()
        if k1 != "num" or k2 != "num" or i < 1 or j < 1:
            raise ParseError("matrix unit needs 1-based integer indices, e.g. E(1,2)", pos, lex.text)
        lex.expect(")")
        return {((), (i - 1, j - 1)): Fraction(1)}
    if kind == "op" and val == "(":
        out = _parse_expr(lex)
        lex.expect(")")
        return out
    if kind == "end":
        raise ParseError("unexpected end of input", pos, lex.text)
    raise ParseError(f"unexpected token {val!r}", pos, lex.text)


def _max_var(raw):
    return max((v for (exp, _), _c in raw.items() for v, _k in exp), default=-1)


def _max_unit(raw):
    return max((max(u) for (_, u), _c in raw.items() if u is not None), default=-1)


def _build(raw, n, r):
    polys = {}
    for (exp, unit), c in raw.items():
        e = [0] * (2 * n)
        for v, k in exp:
            if v >= 2 * n:
                raise ParseError(f"variable index exceeds n={n}")
            e[v] += k
        polys.setdefault(unit, {})[tuple(e)] = polys.setdefault(unit, {}).get(tuple(e), 0) + c
    if r is None:
        if any(u is not None for u in polys):
            raise ParseError("matrix units are only allowed when r is given")
        return WeylPoly(n, polys.get(None, {}))
    rows = [[WeylPoly(n) for _ in range(r)] for _ in range(r)]
    for unit, terms in polys.items():
        poly = WeylPoly(n, terms)
        if unit is None:
            for i in range(r):
                rows[i][i] = rows[i][i] + poly
        else:
            i, j = unit
            if i >= r or j >= r:
                raise ParseError(f"matrix unit E({i + 1},{j + 1}) exceeds r={r}")
            rows[i][j] = rows[i][j] + poly
    return MatrixElement(rows)


def _finish(lex):
    kind, val, pos = lex.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing token {val!r}", pos, lex.text)


def infer_n(raws):
    top = max((_max_var(raw) for raw in raws), default=-1)
    return max(1, top // 2 + 1)


def parse_poly(text, n=None):
    """Parse a :class:`WeylPoly`; ``n`` is inferred from the largest index if omitted."""
    lex = _Lexer(text)
    raw = _parse_expr(lex)
    _finish(lex)
    return _build(raw, n or infer_n([raw]), None)


def parse_matrix(text, n=None, r=1):
    lex = _Lexer(text)
    raw = _parse_expr(lex)
    _finish(lex)
    return _build(raw, n or infer_n([raw]), r)


def _parse_raw_chain(text):
    lex = _Lexer(text)
    terms = []
    first = True
    while True:
        kind, val, pos = lex.peek()
        if kind == "end":
            if first:
                raise ParseError("empty chain", pos, text)
            break
        sign = 1
        if lex.at_op("+", "-"):
            sign = -1 if lex.take()[1] == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-' between chain terms", pos, text)
        coeff = Fraction(sign)
        kind, val, pos = lex.peek()
        if kind == "num":
            lex.take()
            num = Fraction(val)
            if lex.at_op("/"):
                lex.take()
                k2, den, p2 = lex.take()
                if k2 != "num" or den == 0:
                    raise ParseError("expected a nonzero integer denominator", p2, text)
                num = Fraction(val, den)
            coeff *= num
            lex.expect("*")
        kind, val, pos = lex.take()
        if kind != "op" or val != "[":
            raise ParseError("expected '[' to open a chain word", pos, text)
        entries = [_parse_expr(lex)]
        while lex.at_op(";"):
            lex.take()
            entries.append(_parse_expr(lex))
        lex.expect("]")
        terms.append((coeff, entries))
        first = False
    return terms


def parse_chain_terms(text, n=None, r=None):
    """Parse chain text into ``[(coefficient, [entries...]), ...]``.

    Entries are :class:`WeylPoly` (``r is None``) or :class:`MatrixElement`.
    """
    raw_terms = _parse_raw_chain(text)
    if n is None:
        n = infer_n([e for _, entries in raw_terms for e in entries])
    return [(c, [_build(e, n, r) for e in entries]) for c, entries in raw_terms]


def parse_chain_lines(text, n=None, r=None):
    """Chain file: one chain per line, blank lines and ``#`` comments ignored."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_chain_terms(line, n, r))
    return out
