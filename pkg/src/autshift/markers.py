"""Marker schemes: rewrite ``S D E -> S pi(D) E`` wherever the pattern occurs.

A scheme is safe to compile once :func:`verify_scheme` finds no placement of
two matches whose data intervals meet each other or a marker of the other
match.  Markers are allowed to overlap freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .codes import SlidingBlockCode1D
from .errors import InvariantViolation, UnverifiedScheme
from .symbolic import Alphabet, as_alphabet, word, word_str


@dataclass(frozen=True)
class MarkerRule:
    start: tuple
    end: tuple
    pairs: tuple  # sorted ((D, pi(D)), ...)

    def __post_init__(self):
        object.__setattr__(self, "start", word(self.start))
        object.__setattr__(self, "end", word(self.end))
        pairs = tuple(sorted((word(a), word(b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InvariantViolation("data set must be nonempty")
        n = len(pairs[0][0])
        if any(len(a) != n or len(b) != n for a, b in pairs):
            raise InvariantViolation("all data words must share one length")
        sources = [a for a, _ in pairs]
        if len(set(sources)) != len(sources) or sorted(b for _, b in pairs) != sources:
            raise InvariantViolation("map is not a bijection of the data set")

    @classmethod
    def from_map(cls, start, end, mapping: Mapping) -> "MarkerRule":
        return cls(start, end, tuple(mapping.items()))

    @classmethod
    def swap(cls, start, end, d1, d2) -> "MarkerRule":
        d1, d2 = word(d1), word(d2)
        return cls(start, end, ((d1, d2), (d2, d1)))

    @property
    def data(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    @property
    def pi(self) -> dict:
        return dict(self.pairs)

    @property
    def data_length(self) -> int:
        return len(self.pairs[0][0])

    @property
    def length(self) -> int:
        return len(self.start) + self.data_length + len(self.end)

    @property
    def data_interval(self) -> tuple:
        k = len(self.start)
        return (k, k + self.data_length)

    def pattern(self, d) -> tuple:
        return self.start + tuple(d) + self.end

    def inverted(self) -> "MarkerRule":
        return MarkerRule(self.start, self.end, tuple((b, a) for a, b in self.pairs))

    def symbols(self) -> set:
        return set(self.start) | set(self.end) | {s for a, _ in self.pairs for s in a}

    def __repr__(self):
        maps = ", ".join(f"{word_str(a)}->{word_str(b)}" for a, b in self.pairs)
        return f"MarkerRule({word_str(self.start)} [{maps}] {word_str(self.end)})"


@dataclass(frozen=True, eq=False)
class MarkerScheme:
    alphabet: Alphabet
    rules: tuple = ()
    name: str = field(default="scheme", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        for r in self.rules:
            self.alphabet.check_word(r.symbols())

    def __eq__(self, other):
        if not isinstance(other, MarkerScheme):
            return NotImplemented
        return (self.alphabet, self.rules) == (other.alphabet, other.rules)

    def __hash__(self):
        return hash((self.alphabet, self.rules))

    @cached_property
    def verdict(self) -> "OverlapVerdict":
        return _verify(self)

    @property
    def radius(self) -> int:
        return max((r.length - 1 for r in self.rules), default=0)


@dataclass(frozen=True)
class Violation:
    kind: str  # "data-data" or "data-marker"
    rules: tuple  # (i, j)
    offset: int  # start of match j minus start of match i
    witness: tuple
    data: tuple  # (D_i, D_j)

    def to_dict(self):
        return {
            "kind": self.kind,
            "rules": list(self.rules),
            "offset": self.offset,
            "witness": word_str(self.witness),
            "data": [word_str(d) for d in self.data],
        }


@dataclass(frozen=True)
class OverlapVerdict:
    violations: tuple = ()

    @property
    def status(self) -> str:
        return "violation" if self.violations else "ok"

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def witness(self):
        return self.violations[0].witness if self.violations else None

    def to_dict(self):
        return {"status": self.status, "violations": [v.to_dict() for v in self.violations]}


def _intersects(a, b) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def _overlay(p: bytes, q: bytes, t: int):
    """Merge pattern ``p`` at 0 with ``q`` at ``t``; ``None`` if they disagree."""
    lo, hi = max(0, t), min(len(p), t + len(q))
    if p[lo:hi] != q[lo - t:hi - t]:
        return None
    if t >= 0:
        merged = p + q[len(p) - t:] if t + len(q) > len(p) else p
    else:
        merged = q + p[len(q) + t:] if len(p) > t + len(q) else q
    return tuple(merged)


def _verify(scheme: MarkerScheme) -> OverlapVerdict:
    found = {"data-data": [], "data-marker": []}
    rules = scheme.rules
    pats = [[(d, bytes(r.pattern(d))) for d in r.data] for r in rules]
    for (i, ri), (j, rj) in itertools.product(enumerate(rules), repeat=2):
        di = ri.data_interval
        for t in range(-rj.length + 1, ri.length):
            if i == j and t == 0:
                continue
            dj = (t + rj.data_interval[0], t + rj.data_interval[1])
            mj = ((t, dj[0]), (dj[1], t + rj.length))
            kinds = []
            if _intersects(di, dj):
                kinds.append("data-data")
            if any(_intersects(di, m) for m in mj):
                kinds.append("data-marker")
            if not kinds:
                continue
            for (a, pa), (b, pb) in itertools.product(pats[i], pats[j]):
                merged = _overlay(pa, pb, t)
                if merged is None:
                    continue
                for kind in kinds:
                    found[kind].append(Violation(kind, (i, j), t, merged, (a, b)))
                break
    return OverlapVerdict(tuple(found["data-data"] + found["data-marker"]))


def verify_scheme(scheme: MarkerScheme) -> OverlapVerdict:
    """Check the overlap conditions; violations come with a witness word."""
    return scheme.verdict


def find_matches(scheme: MarkerScheme, w: Sequence[int]):
    """All ``(rule index, start, data)`` occurrences inside the finite word ``w``."""
    text = bytes(w)
    out = []
    for i, rule in enumerate(scheme.rules):
        for d in rule.data:
            pat = bytes(rule.pattern(d))
            at = text.find(pat)
            while at != -1:
                out.append((i, at, d))
                at = text.find(pat, at + 1)
    out.sort()
    return out


class MarkerCode(SlidingBlockCode1D):
    """Compiled scheme: every data match is rewritten, everything else kept."""

    def __init__(self, scheme: MarkerScheme, name=None):
        self.scheme = scheme
        self.alphabet = scheme.alphabet
        self.radius = scheme.radius
        self.name = name or scheme.name
        self.provenance = {"kind": "scheme", "name": self.name}
        placements = []
        for rule in scheme.rules:
            k = len(rule.start)
            for d in range(rule.data_length):
                for src, tgt in rule.pairs:
                    pat = rule.pattern(src)
                    # placement starts at pos - k - d; check cells nearest pos first
                    checks = sorted(((idx - k - d, s) for idx, s in enumerate(pat)),
                                    key=lambda c: (abs(c[0]), c[0]))
                    placements.append((tuple(checks), tgt[d]))
        self._placements = placements
        # every placement pins the cell at pos itself; index by that symbol
        by_symbol = {}
        for checks, out in placements:
            (here,) = [s for off, s in checks if off == 0]
            rest = tuple(c for c in checks if c[0] != 0)
            by_symbol.setdefault(here, []).append((rest, out))
        self._by_symbol = by_symbol

    def local(self, read, pos):
        v = read(pos)
        for checks, out in self._by_symbol.get(v, ()):
            for off, s in checks:
                if read(pos + off) != s:
                    break
            else:
                return out
        return v

    def image(self, read, lo, hi):
        R = self.radius
        base = lo - R
        w = [read(j) for j in range(base, hi + R)]
        out = w[:]
        pi = [r.pi for r in self.scheme.rules]
        for i, at, d in find_matches(self.scheme, w):
            k = len(self.scheme.rules[i].start)
            out[at + k: at + k + len(d)] = pi[i][d]
        return out[R: R + hi - lo]

    def inverse(self):
        return compile_scheme(invert_scheme(self.scheme))


def compile_scheme(scheme: MarkerScheme) -> MarkerCode:
    if not verify_scheme(scheme).ok:
        raise UnverifiedScheme(f"{scheme.name} violates the overlap conditions")
    return MarkerCode(scheme)


def invert_scheme(scheme: MarkerScheme) -> MarkerScheme:
    if not verify_scheme(scheme).ok:
        raise UnverifiedScheme(f"{scheme.name} violates the overlap conditions")
    name = scheme.name if is_involution(scheme) else f"{scheme.name}⁻¹"
    return MarkerScheme(scheme.alphabet, tuple(r.inverted() for r in scheme.rules), name=name)


def is_involution(scheme: MarkerScheme) -> bool:
    return all(r.pi[r.pi[a]] == a for r in scheme.rules for a in r.data)


def brute_force_conflicts(scheme: MarkerScheme, max_length=None):
    """Independent overlap oracle: scan every word up to ``max_length``.

    Looks for two distinct matches whose data intervals meet, or a data
    interval meeting a marker of another match.  Returns the first conflicting
    word found, shortest first, or ``None``.
    """
    rules = scheme.rules
    if not rules:
        return None
    if max_length is None:
        max_length = 2 * max(r.length for r in rules) - 1
    n = scheme.alphabet.size
    for length in range(1, max_length + 1):
        for w in itertools.product(range(n), repeat=length):
            ms = find_matches(scheme, w)
            spans = []
            for i, at, _ in ms:
                r = rules[i]
                k, nd = len(r.start), r.data_length
                spans.append(((i, at), (at + k, at + k + nd), ((at, at + k), (at + k + nd, at + r.length))))
            for (ida, da, _), (idb, db, mb) in itertools.permutations(spans, 2):
                if ida == idb:
                    continue
                if _intersects(da, db) or any(_intersects(da, m) for m in mb):
                    return w
    return None
