"""Exact eventually periodic points of the full shift and of the boundary space.

A :class:`BiConfiguration` is a point of ``A^Z`` given by a left periodic tail,
a finite core placed at ``anchor`` and a right periodic tail.  Position ``m``
reads::

    left[(m - anchor) % len(left)]                 m < anchor
    core[m - anchor]                               anchor <= m < anchor + len(core)
    right[(m - end) % len(right)]                  m >= end = anchor + len(core)

so ``left[-1]`` sits at ``anchor - 1`` and ``right[0]`` at ``end``.

The shift moves content to the left: ``shift_config(x, 1)[m] == x[m + 1]``.

An :class:`OmegaPoint` is a one-sided sequence ``x_0 x_1 ...`` with
``x_0 != x_1`` stored as a finite prefix followed by a periodic tail.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    ConstantConfiguration,
    InvariantViolation,
    NotEventuallyConstantLeft,
    NotInOmegaZero,
)

SYMBOL_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise InvariantViolation(f"alphabet size must be an integer >= 2, got {self.size!r}")

    @property
    def symbols(self) -> range:
        return range(self.size)

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def check_word(self, word: Iterable[int]):
        for s in word:
            if not 0 <= s < self.size:
                raise InvariantViolation(f"symbol {s} outside alphabet of size {self.size}")


def as_alphabet(alphabet) -> Alphabet:
    return alphabet if isinstance(alphabet, Alphabet) else Alphabet(int(alphabet))


def word(text_or_seq) -> Word:
    """Coerce ``"0110"`` or an iterable of ints to a tuple word."""
    if isinstance(text_or_seq, str):
        return tuple(SYMBOL_CHARS.index(c) for c in text_or_seq)
    return tuple(int(s) for s in text_or_seq)


def word_str(w: Sequence[int]) -> str:
    return "".join(SYMBOL_CHARS[s] for s in w)


def primitive_root(w: Sequence[int]) -> Word:
    """Shortest ``u`` with ``w == u * j``; the phase of ``w`` is kept."""
    w = tuple(w)
    if not w:
        raise InvariantViolation("periodic tail must be nonempty")
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w  # pragma: no cover


def _rotl(w: Word, k: int = 1) -> Word:
    k %= len(w)
    return w[k:] + w[:k]


def _rotr(w: Word, k: int = 1) -> Word:
    return _rotl(w, -k)


@dataclass(frozen=True, eq=False)
class BiConfiguration:
    left: Word
    core: Word
    anchor: int
    right: Word

    def __post_init__(self):
        object.__setattr__(self, "left", word(self.left))
        object.__setattr__(self, "core", word(self.core))
        object.__setattr__(self, "right", word(self.right))
        object.__setattr__(self, "anchor", int(self.anchor))
        if not self.left or not self.right:
            raise InvariantViolation("tails must be nonempty")

    @classmethod
    def constant(cls, a: int) -> "BiConfiguration":
        return cls((a,), (), 0, (a,))

    @property
    def end(self) -> int:
        return self.anchor + len(self.core)

    def __getitem__(self, m: int) -> int:
        if m < self.anchor:
            return self.left[(m - self.anchor) % len(self.left)]
        if m < self.end:
            return self.core[m - self.anchor]
        return self.right[(m - self.end) % len(self.right)]

    def window(self, lo: int, hi: int) -> Word:
        return tuple(self[m] for m in range(lo, hi))

    @cached_property
    def canonical(self) -> "BiConfiguration":
        return _normalize(self)

    def _key(self):
        c = self.canonical
        return (c.left, c.core, c.anchor, c.right)

    def __eq__(self, other):
        if not isinstance(other, BiConfiguration):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def symbols(self) -> set:
        return set(self.left) | set(self.core) | set(self.right)

    @property
    def is_constant(self) -> bool:
        c = self.canonical
        return len(c.left) == 1 and not c.core and c.right == c.left

    @property
    def in_pointed(self) -> bool:
        """Membership in ``A^Z_p`` (constant infinite left prefix)."""
        return len(self.canonical.left) == 1

    @property
    def in_star(self) -> bool:
        """Membership in ``A^Z_*``: constant left prefix, not constant overall."""
        return self.in_pointed and not self.is_constant

    def __repr__(self):
        c = self
        return f'({word_str(c.left)})* "{word_str(c.core)}" @{c.anchor} ({word_str(c.right)})*'


def _normalize(x: BiConfiguration) -> BiConfiguration:
    left = primitive_root(x.left)
    right = primitive_root(x.right)
    core = list(x.core)
    anchor = x.anchor
    if len(left) == len(right) and not core and left == right:
        return _periodic_form(left, anchor)
    # absorb into the left tail as far as possible, crossing into the right tail
    start = 0
    while True:
        if start < len(core):
            if core[start] != left[0]:
                break
            start += 1
            anchor += 1
            left = _rotl(left)
        else:
            if right[0] != left[0]:
                break
            anchor += 1
            left = _rotl(left)
            right = _rotl(right)
            if len(left) == len(right) and left == right:
                return _periodic_form(left, anchor)
    core = core[start:]
    while core and core[-1] == right[-1]:
        core.pop()
        right = _rotr(right)
    return BiConfiguration(left, tuple(core), anchor, right)


def _periodic_form(period: Word, anchor: int) -> BiConfiguration:
    # globally periodic: x[m] = period[(m - anchor) % p]; re-anchor at 0
    rot = _rotl(period, -anchor)
    return BiConfiguration(rot, (), 0, rot)


def normalize(x: BiConfiguration) -> BiConfiguration:
    return x.canonical


def shift_config(x: BiConfiguration, t: int) -> BiConfiguration:
    """``result[m] == x[m + t]``; the left shift is ``t = 1``."""
    return BiConfiguration(x.left, x.core, x.anchor - t, x.right)


def ell(x: BiConfiguration) -> int:
    """Last coordinate of the constant left prefix: ``min{m : x_m != x_{m+1}}``."""
    c = x.canonical
    if len(c.left) != 1:
        raise NotEventuallyConstantLeft(f"left tail {word_str(c.left)} is not constant")
    if c.is_constant:
        raise ConstantConfiguration("constant configuration has no first change")
    # canonical form puts the first non-left symbol exactly at the anchor
    return c.anchor - 1


def phi_embed(omega: "OmegaPoint") -> BiConfiguration:
    """Constant ``omega[0]`` on ``m <= 0``, ``omega[m]`` for ``m >= 1``."""
    if omega.prefix:
        return BiConfiguration((omega[0],), omega.prefix[1:], 1, omega.tail)
    return BiConfiguration((omega[0],), (), 1, _rotl(omega.tail))


def psi_collapse(x: BiConfiguration) -> "OmegaPoint":
    start = ell(x)
    c = x.canonical
    # c[start] is the left symbol, the rest is read off the canonical core
    prefix = (c[start],) + c.core
    return OmegaPoint(prefix, c.right)


@dataclass(frozen=True, eq=False)
class OmegaPoint:
    prefix: Word
    tail: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", word(self.prefix))
        object.__setattr__(self, "tail", word(self.tail))
        if not self.tail:
            raise InvariantViolation("tail must be nonempty")
        if self[0] == self[1]:
            raise InvariantViolation(f"x_0 = x_1 = {self[0]}; boundary points need x_0 != x_1")

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.prefix):
            return self.prefix[i]
        return self.tail[(i - len(self.prefix)) % len(self.tail)]

    def head(self, n: int) -> Word:
        return tuple(self[i] for i in range(n))

    @cached_property
    def canonical(self) -> "OmegaPoint":
        tail = primitive_root(self.tail)
        prefix = list(self.prefix)
        while prefix and prefix[-1] == tail[-1]:
            prefix.pop()
            tail = _rotr(tail)
        return OmegaPoint.__new_raw(tuple(prefix), tail)

    @classmethod
    def __new_raw(cls, prefix, tail):
        obj = object.__new__(cls)
        object.__setattr__(obj, "prefix", prefix)
        object.__setattr__(obj, "tail", tail)
        return obj

    def _key(self):
        c = self.canonical
        return (c.prefix, c.tail)

    def __eq__(self, other):
        if not isinstance(other, OmegaPoint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < other._key()

    def symbols(self) -> set:
        return set(self.prefix) | set(self.tail)

    def __repr__(self):
        return f'"{word_str(self.prefix)}" ({word_str(self.tail)})*'


BASE_POINT = OmegaPoint((0,), (1,))  # the point o = 0 1 1 1 ...


def first_disagreement(a: OmegaPoint, b: OmegaPoint):
    """Smallest index where the points differ, ``None`` if equal."""
    horizon = max(len(a.prefix), len(b.prefix)) + math.lcm(len(a.tail), len(b.tail))
    for i in range(horizon):
        if a[i] != b[i]:
            return i
    return None


def omega_distance(a: OmegaPoint, b: OmegaPoint) -> Fraction:
    j = first_disagreement(a, b)
    return Fraction(0) if j is None else Fraction(1, 2 ** j)


def r_value(omega: OmegaPoint):
    """Length of the run of 1s after position 0 (``math.inf`` for ``o``)."""
    if omega[0] != 0:
        raise NotInOmegaZero(f"point starts with {omega[0]}, not 0")
    c = omega.canonical
    horizon = len(c.prefix) + len(c.tail)
    for m in range(horizon + 1):
        if omega[m + 1] != 1:
            return m
    return math.inf


@dataclass(frozen=True)
class BarOmegaPoint:
    """One boundary point per symbol; ``points[a][0] == a``."""

    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        for a, p in enumerate(self.points):
            if p[0] != a:
                raise InvariantViolation(f"coordinate {a} starts with {p[0]}")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(len(self.points))

    def __getitem__(self, a: int) -> OmegaPoint:
        return self.points[a]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class CmClass:
    """Level set ``r = m``; ``m = math.inf`` is the singleton ``{o}``."""

    m: float

    def __post_init__(self):
        if self.m != math.inf and (int(self.m) != self.m or self.m < 0):
            raise InvariantViolation(f"C_m needs m >= 0 or infinity, got {self.m}")

    def __contains__(self, omega: OmegaPoint) -> bool:
        return omega[0] == 0 and r_value(omega) == self.m


DEFAULT_TAILS = ((0,), (1,), (1, 0))


def enumerate_cm(m: int, depth: int, alphabet, tails: Iterable[Sequence[int]] = DEFAULT_TAILS) -> list:
    """Points of ``C_m`` with prefix length at most ``depth`` and tail in ``tails``.

    Points reachable from several (prefix, tail) pairs are returned once, in
    canonical order.
    """
    alphabet = as_alphabet(alphabet)
    if m < 1 or depth < m + 2:
        raise ValueError("need m >= 1 and depth >= m + 2")
    tails = [word(t) for t in tails]
    for t in tails:
        alphabet.check_word(t)
    found = set()
    head = (0,) + (1,) * m
    for length in range(0, depth + 1):
        if length <= m + 1:
            # the run of ones and its terminator may come partly from the tail
            candidates = [head[:length]] if length >= 1 else [()]
        else:
            free = length - m - 2
            candidates = (
                head + (stop,) + rest
                for stop in alphabet if stop != 1
                for rest in itertools.product(alphabet.symbols, repeat=free)
            )
        for prefix in candidates:
            for tail in tails:
                try:
                    p = OmegaPoint(prefix, tail)
                except InvariantViolation:
                    continue
                if p[0] == 0 and r_value(p) == m:
                    found.add(p)
    return sorted(found)
