"""Text formats: marker-scheme documents and configuration literals.

Scheme documents look like::

    # the swap between two data words
    alphabet 4
    rule {
        start = "000"
        end   = "111"
        map "2332" -> "3223"
        map "3223" -> "2332"
    }

Symbols are single characters ``0-9a-z``; inside quotes ``0^8`` stands for
eight zeros and whitespace is ignored.  Semicolons are optional separators and
``#`` starts a comment.

Configuration literals are ``(w)* "core" @anchor (w')*`` for points of ``A^Z``
and ``"prefix" (w)*`` for boundary points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DSLError,
    InvariantViolation,
    LengthMismatch,
    LiteralInvariantViolation,
    NonBijective,
    SymbolOutOfAlphabet,
)
from .markers import MarkerRule, MarkerScheme
from .symbolic import SYMBOL_CHARS, BiConfiguration, OmegaPoint, word_str

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<int>[+-]?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[{}=;()*@^])
  """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _expand(tok: Token, body: str, offset: int = 1) -> tuple:
    """Expand a word body (no quotes) with ``SYM^INT`` sugar."""
    out = []
    i = 0
    n = len(body)
    while i < n:
        c = body[i]
        col = tok.column + offset + i
        if c.isspace():
            i += 1
            continue
        if c not in SYMBOL_CHARS:
            raise DSLError(f"invalid symbol {c!r}", tok.line, col)
        sym = SYMBOL_CHARS.index(c)
        i += 1
        if i < n and body[i] == "^":
            m = re.match(r"\d+", body[i + 1:])
            if m is None:
                raise DSLError("expected repetition count after '^'", tok.line, tok.column + offset + i)
            out.extend([sym] * int(m.group()))
            i += 1 + m.end()
        else:
            out.append(sym)
    return tuple(out)


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, tok=None, cls=DSLError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.column)

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, kind, text=None):
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def expect(self, kind, text=None) -> Token:
        t = self.accept(kind, text)
        if t is None:
            want = text or kind
            got = self.tok.text or self.tok.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        return t

    def skip_semis(self):
        while self.accept("punct", ";"):
            pass

    def word(self):
        t = self.expect("string")
        return t, _expand(t, t.text[1:-1])


def _check_symbols(tok, w, n):
    for s in w:
        if s >= n:
            raise SymbolOutOfAlphabet(
                f"symbol {SYMBOL_CHARS[s]!r} outside alphabet of size {n}", tok.line, tok.column
            )


def parse_scheme(text: str, name: str = "scheme") -> MarkerScheme:
    p = _Parser(text)
    p.skip_semis()
    p.expect("ident", "alphabet")
    size_tok = p.expect("int")
    n = int(size_tok.text)
    if not 2 <= n <= len(SYMBOL_CHARS):
        raise p.error(f"alphabet size must lie in 2..{len(SYMBOL_CHARS)}", size_tok)
    p.skip_semis()
    rules = []
    while p.tok.kind != "eof":
        rule_tok = p.expect("ident", "rule")
        p.expect("punct", "{")
        p.skip_semis()
        p.expect("ident", "start")
        p.expect("punct", "=")
        st, start = p.word()
        _check_symbols(st, start, n)
        p.skip_semis()
        p.expect("ident", "end")
        p.expect("punct", "=")
        et, end = p.word()
        _check_symbols(et, end, n)
        p.skip_semis()
        pairs = []
        while p.accept("ident", "map"):
            at, a = p.word()
            p.expect("arrow")
            bt, b = p.word()
            _check_symbols(at, a, n)
            _check_symbols(bt, b, n)
            if len(a) != len(b):
                raise p.error(f"map source has length {len(a)} but target has {len(b)}", bt, LengthMismatch)
            if pairs and len(a) != len(pairs[0][0]):
                raise p.error("all data words of a rule must share one length", at, LengthMismatch)
            if any(a == x for x, _ in pairs):
                raise p.error(f"data word {word_str(a)!r} mapped twice", at, NonBijective)
            pairs.append((a, b))
            p.skip_semis()
        if not pairs:
            raise p.error("rule needs at least one map entry")
        close = p.expect("punct", "}")
        if sorted(a for a, _ in pairs) != sorted(b for _, b in pairs):
            raise p.error("map is not a bijection of the data set", rule_tok, NonBijective)
        try:
            rules.append(MarkerRule(start, end, tuple(pairs)))
        except InvariantViolation as exc:  # pragma: no cover - caught above
            raise p.error(str(exc), close) from exc
        p.skip_semis()
    return MarkerScheme(n, tuple(rules), name=name)


def render_word(w) -> str:
    """Quoted word; runs of length >= 4 become ``s^n``."""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        if run >= 4:
            parts.append(f"{SYMBOL_CHARS[w[i]]}^{run}")
            if j < len(w):
                parts.append(" ")  # keeps "0^4 1" from reading as "0^41"
        else:
            parts.append(SYMBOL_CHARS[w[i]] * run)
        i = j
    return '"' + "".join(parts) + '"'


def render_scheme(scheme: MarkerScheme) -> str:
    lines = [f"alphabet {scheme.alphabet.size}"]
    for rule in scheme.rules:
        lines.append("rule {")
        lines.append(f"  start = {render_word(rule.start)}")
        lines.append(f"  end = {render_word(rule.end)}")
        for a, b in rule.pairs:
            lines.append(f"  map {render_word(a)} -> {render_word(b)}")
        lines.append("}")
    return "\n".join(lines) + "\n"


def load_scheme(path) -> MarkerScheme:
    from pathlib import Path

    path = Path(path)
    return parse_scheme(path.read_text(), name=path.stem)


# ---------------------------------------------------------------------------
# configuration literals


def _tail(p: _Parser, alphabet):
    open_ = p.expect("punct", "(")
    body = []
    # tail bodies may be bare symbols, which tokenize as int/ident runs, or quoted
    while not (p.tok.kind == "punct" and p.tok.text == ")"):
        t = p.next()
        if t.kind == "eof":
            raise p.error("unterminated periodic tail", open_)
        if t.kind == "string":
            body.extend(_expand(t, t.text[1:-1]))
        elif t.kind == "punct" and t.text == "^":
            count = p.expect("int")
            if not body or count.text.startswith(("+", "-")):
                raise p.error("repetition needs a symbol before '^' and a count after it", t)
            body.extend([body[-1]] * (int(count.text) - 1))
        elif t.kind in ("int", "ident"):
            if t.text.startswith(("+", "-")):
                raise p.error(f"invalid symbol {t.text[0]!r}", t)
            body.extend(_expand(t, t.text, offset=0))
        else:
            raise p.error(f"unexpected {t.text!r} inside periodic tail", t)
    p.expect("punct", ")")
    p.expect("punct", "*")
    if not body:
        raise p.error("periodic tail must be nonempty", open_)
    if alphabet is not None:
        _check_symbols(open_, body, alphabet)
    return tuple(body)


def parse_config(text: str, alphabet: int | None = None):
    """Parse a :class:`BiConfiguration` or :class:`OmegaPoint` literal."""
    p = _Parser(text)
    first = p.tok
    if first.kind == "punct" and first.text == "(":
        left = _tail(p, alphabet)
        ct, core = p.word()
        if alphabet is not None:
            _check_symbols(ct, core, alphabet)
        anchor = 0
        if p.accept("punct", "@"):
            anchor = int(p.expect("int").text)
        right = _tail(p, alphabet)
        p.expect("eof")
        return BiConfiguration(left, core, anchor, right)
    if first.kind == "string":
        pt, prefix = p.word()
        if alphabet is not None:
            _check_symbols(pt, prefix, alphabet)
        tail = _tail(p, alphabet)
        p.expect("eof")
        try:
            return OmegaPoint(prefix, tail)
        except InvariantViolation as exc:
            raise LiteralInvariantViolation(str(exc), first.line, first.column) from exc
    raise p.error("expected '(' or '\"' to start a literal")


def parse_omega(text: str, alphabet: int | None = None) -> OmegaPoint:
    out = parse_config(text, alphabet)
    if not isinstance(out, OmegaPoint):
        raise DSLError("expected a boundary point literal", 1, 1)
    return out


def parse_biconfig(text: str, alphabet: int | None = None) -> BiConfiguration:
    out = parse_config(text, alphabet)
    if not isinstance(out, BiConfiguration):
        raise DSLError("expected a configuration literal", 1, 1)
    return out


def format_config(x) -> str:
    return repr(x)
