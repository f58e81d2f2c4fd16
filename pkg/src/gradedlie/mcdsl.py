"""Maurer-Cartan structure equations: parser, printer and conversion.

Text format (``#`` starts a comment, ``;`` or newline separates
statements, indices are 1-based)::

    n = 4
    d w3 = w1^w2
    d w4 = w1^w3 - 1/2 w2^w3
    d w2 = 0

Undeclared forms are closed.  Sign convention: a term ``c w_a^w_b`` in
``d w_k`` means ``[X_a, X_b] = -c X_k``.  This is the dual of
``d w(X, Y) = -w([X, Y])`` with ``(w_a^w_b)(X_a, X_b) = 1``; it is applied
uniformly, in both directions, and nowhere else.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import MCSyntaxError
from .exactlin import ZERO, format_scalar
from .liecore import LieAlgebra, StructureTensor

Term = tuple  # (a, b, coefficient) with a < b


@dataclass(frozen=True)
class MCSystem:
    """``forms`` is a sorted tuple of ``(k, terms)`` for the nonzero ``d w_k``."""

    dim: int
    forms: tuple = ()

    @classmethod
    def from_dict(cls, dim: int, forms: dict) -> "MCSystem":
        """Build from ``{k: [(coeff, a, b), ...]}`` in any order or orientation.

        Repeated wedges are summed and a reversed wedge flips the sign.
        ``a == b`` raises ValueError: the wedge of a form with itself
        vanishes, but writing it down is always a typo.
        """
        out = {}
        for k, terms in forms.items():
            acc: dict[tuple[int, int], Fraction] = {}
            for c, a, b in terms:
                c = Fraction(c)
                if a == b:
                    raise ValueError(f"degenerate wedge w{a}^w{b} in d w{k}")
                if a > b:
                    a, b, c = b, a, -c
                acc[(a, b)] = acc.get((a, b), ZERO) + c
            cleaned = tuple((a, b, c) for (a, b), c in sorted(acc.items()) if c)
            if cleaned:
                out[k] = cleaned
        return cls(dim, tuple(sorted(out.items())))

    def form(self, k: int) -> tuple:
        for kk, terms in self.forms:
            if kk == k:
                return terms
        return ()

    def as_dict(self) -> dict[int, tuple]:
        return dict(self.forms)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<sep>[;\n])
  | (?P<form>w(?P<index>[0-9]+))
  | (?P<int>[0-9]+)
  | (?P<kw>[nd])(?![A-Za-z0-9_])
  | (?P<op>[=+\-^/])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int
    value: int | None = None


def _tokenize(text: str) -> Iterator[_Tok]:
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m or m.end() == pos:
            raise MCSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "index":
            kind = "form"
        tok_text = m.group(0)
        if kind == "form":
            follow = text[m.end() : m.end() + 1]
            if follow and (follow.isalnum() or follow == "_"):
                raise MCSyntaxError(f"bad form name starting {tok_text!r}", line, col)
            yield _Tok("form", tok_text, line, col, int(m.group("index")))
        elif kind == "int":
            yield _Tok("int", tok_text, line, col, int(tok_text))
        elif kind == "kw":
            yield _Tok(tok_text, tok_text, line, col)
        elif kind == "op":
            yield _Tok(tok_text, tok_text, line, col)
        elif kind == "sep":
            yield _Tok("sep", tok_text, line, col)
        pos = m.end()
        if tok_text == "\n":
            line += 1
            line_start = pos
    yield _Tok("eof", "", line, pos - line_start + 1)


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "eof" else repr(t.text) if t.kind != "sep" else "end of statement"
            raise MCSyntaxError(f"expected {what or kind}, found {found}", t.line, t.col)
        self.i += 1
        return t

    def skip_seps(self) -> None:
        while self.tok.kind == "sep":
            self.i += 1

    def end_statement(self) -> None:
        if self.tok.kind not in ("sep", "eof"):
            t = self.tok
            raise MCSyntaxError(f"unexpected {t.text!r}", t.line, t.col)

    def parse(self) -> MCSystem:
        self.skip_seps()
        self.take("n", "header 'n = <dimension>'")
        self.take("=", "'='")
        n_tok = self.take("int", "dimension")
        n = n_tok.value
        if n < 1:
            raise MCSyntaxError("dimension must be at least 1", n_tok.line, n_tok.col)
        self.end_statement()
        forms: dict[int, tuple] = {}
        while True:
            self.skip_seps()
            if self.tok.kind == "eof":
                break
            k, terms, where = self.declaration(n)
            if k in forms:
                raise MCSyntaxError(f"duplicate declaration of d w{k}", *where)
            forms[k] = terms
            self.end_statement()
        return MCSystem.from_dict(n, {k: [(c, a, b) for a, b, c in t] for k, t in forms.items()})

    def check_index(self, t: _Tok, n: int) -> int:
        if not 1 <= t.value <= n:
            raise MCSyntaxError(f"index w{t.value} outside 1..{n}", t.line, t.col)
        return t.value

    def declaration(self, n: int):
        d = self.take("d", "'d w<k> = ...'")
        k = self.check_index(self.take("form", "form name w<k>"), n)
        self.take("=", "'='")
        t = self.tok
        if t.kind == "int" and t.value == 0 and self.toks[self.i + 1].kind in ("sep", "eof"):
            self.i += 1
            return k, [], (d.line, d.col)
        terms = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.take(self.tok.kind).kind == "-" else 1
        terms.append(self.term(n, sign))
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.take(self.tok.kind).kind == "-" else 1
            terms.append(self.term(n, sign))
        return k, terms, (d.line, d.col)

    def term(self, n: int, sign: int):
        coeff = Fraction(1)
        if self.tok.kind == "int":
            num = self.take("int").value
            den = 1
            if self.tok.kind == "/":
                self.take("/")
                den_tok = self.take("int", "denominator")
                den = den_tok.value
                if den == 0:
                    raise MCSyntaxError("zero denominator", den_tok.line, den_tok.col)
            coeff = Fraction(num, den)
        first = self.take("form", "form name w<a>")
        a = self.check_index(first, n)
        self.take("^", "'^'")
        b = self.check_index(self.take("form", "form name w<b> after '^'"), n)
        if a == b:
            raise MCSyntaxError(f"degenerate wedge w{a}^w{b}", first.line, first.col)
        return a, b, sign * coeff


def parse_system(text: str) -> MCSystem:
    return _Parser(text).parse()


def system_to_algebra(system: MCSystem) -> LieAlgebra:
    entries = {}
    for k, terms in system.forms:
        for a, b, c in terms:
            entries[(a, b, k)] = entries.get((a, b, k), ZERO) - c
    return LieAlgebra(StructureTensor(system.dim, entries))


def algebra_to_system(g: LieAlgebra) -> MCSystem:
    forms: dict[int, list] = {}
    for (i, j, k), c in g.tensor.entries:
        forms.setdefault(k, []).append((-c, i, j))
    return MCSystem.from_dict(g.dim, forms)


def parse_mc(text: str) -> LieAlgebra:
    """Parse structure equations into a bracket presentation."""
    return system_to_algebra(parse_system(text))


def render_system(system: MCSystem) -> str:
    lines = [f"n={system.dim};"]
    for k, terms in system.forms:
        parts = []
        for idx, (a, b, c) in enumerate(terms):
            wedge = f"w{a}^w{b}"
            if idx == 0:
                parts.append(f"{format_scalar(c)} {wedge}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {format_scalar(abs(c))} {wedge}")
        lines.append(f"d w{k} = " + " ".join(parts))
    return "\n".join(lines) + "\n"


def render_mc(g: LieAlgebra) -> str:
    """Canonical structure-equation text for ``g``; ``parse_mc`` inverts it."""
    return render_system(algebra_to_system(g))


def _wedge3(p: int, q: int, r: int) -> tuple[int, tuple[int, int, int]] | None:
    if p == q or q == r or p == r:
        return None
    idx = [p, q, r]
    sign = 1
    # bubble sort, counting transpositions
    for i in range(3):
        for j in range(2 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, (idx[0], idx[1], idx[2])


def d_squared(system: MCSystem) -> dict[int, dict[tuple[int, int, int], Fraction]]:
    """Nonzero 3-form coefficients of ``d(d w_k)``, computed on forms.

    Uses ``d(w_a ^ w_b) = dw_a ^ w_b - w_a ^ dw_b``.
    """
    dw = system.as_dict()
    out = {}
    for k, terms in system.forms:
        acc: dict[tuple[int, int, int], Fraction] = {}
        for a, b, c in terms:
            for p, q, c2 in dw.get(a, ()):
                w = _wedge3(p, q, b)
                if w:
                    acc[w[1]] = acc.get(w[1], ZERO) + w[0] * c * c2
            for p, q, c2 in dw.get(b, ()):
                w = _wedge3(a, p, q)
                if w:
                    acc[w[1]] = acc.get(w[1], ZERO) - w[0] * c * c2
        acc = {key: v for key, v in acc.items() if v}
        if acc:
            out[k] = acc
    return out


def is_closed(system: MCSystem) -> bool:
    return not d_squared(system)
