"""One-dimensional sliding block codes and the induced boundary action.

Every code exposes ``local(read, pos)``: the output symbol at ``pos`` computed
through ``read(j)``, which returns the input symbol at ``j``.  Rules only read
the cells they need, in the order they need them.  Equality is decided by
running two rules against a partial window whose ``read`` raises
:class:`NeedCell` on unassigned cells and branching on exactly that cell, so
the exhaustive check walks a decision tree instead of all ``|A|^(2R+1)``
windows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ImageDegenerate, MissingInverse, WindowTooLarge
from .symbolic import (
    Alphabet,
    BiConfiguration,
    OmegaPoint,
    as_alphabet,
    phi_embed,
    psi_collapse,
)

DEFAULT_BUDGET = 2 ** 27


class NeedCell(Exception):
    """Raised by a partial reader when ``cell`` is not yet assigned."""

    def __init__(self, cell):
        super().__init__(cell)
        self.cell = cell


class SlidingBlockCode1D:
    """Base class.  Subclasses set ``alphabet``, ``radius`` and ``local``."""

    alphabet: Alphabet
    radius: int
    name: str = "code"
    provenance = None

    def local(self, read: Callable[[int], int], pos: int) -> int:
        raise NotImplementedError

    def image(self, read, lo, hi) -> list:
        """Outputs at ``lo..hi-1``; reads stay inside ``[lo - radius, hi + radius)``."""
        return [self.local(read, m) for m in range(lo, hi)]

    def inverse(self) -> "SlidingBlockCode1D":
        raise MissingInverse(f"no known inverse for {self.name}")

    @property
    def has_inverse(self) -> bool:
        try:
            self.inverse()
        except MissingInverse:
            return False
        return True

    def __call__(self, x: BiConfiguration) -> BiConfiguration:
        return apply_code(self, x)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} r={self.radius}>"


@dataclass(frozen=True)
class LocalRule1D:
    """A rule on windows ``w[-radius..radius]``.

    ``rule`` is either a callable taking ``cell(i)`` for ``|i| <= radius`` or a
    dict from full windows (tuples of length ``2r+1``) to symbols.
    """

    radius: int
    rule: object


class RuleCode(SlidingBlockCode1D):
    def __init__(self, alphabet, local_rule: LocalRule1D, name="rule", inverse=None):
        self.alphabet = as_alphabet(alphabet)
        self.radius = local_rule.radius
        self.local_rule = local_rule
        self.name = name
        self._inverse = inverse
        r = local_rule.radius
        if isinstance(local_rule.rule, dict):
            table = local_rule.rule
            self._eval = lambda cell: table[tuple(cell(i) for i in range(-r, r + 1))]
        else:
            self._eval = local_rule.rule

    def local(self, read, pos):
        return self._eval(lambda i: read(pos + i))

    def inverse(self):
        if self._inverse is None:
            return super().inverse()
        return self._inverse


class ShiftCode(SlidingBlockCode1D):
    """``sigma^m``: output at ``pos`` is the input at ``pos + m``."""

    def __init__(self, alphabet, m: int = 1):
        self.alphabet = as_alphabet(alphabet)
        self.m = m
        self.radius = abs(m)
        self.name = "id" if m == 0 else ("σ" if m == 1 else f"σ^{m}")
        self.provenance = {"kind": "shift", "m": m}

    def local(self, read, pos):
        return read(pos + self.m)

    def image(self, read, lo, hi):
        return [read(j) for j in range(lo + self.m, hi + self.m)]

    def inverse(self):
        return ShiftCode(self.alphabet, -self.m)


def identity_code(alphabet) -> ShiftCode:
    return ShiftCode(alphabet, 0)


def shift_code(alphabet, m: int = 1) -> ShiftCode:
    return ShiftCode(alphabet, m)


class PermutationCode(SlidingBlockCode1D):
    """Radius-0 code applying a symbol permutation cellwise."""

    def __init__(self, perm):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        self.perm = perm
        self.alphabet = Alphabet(len(perm))
        self.radius = 0
        self.name = "perm(" + ",".join(map(str, perm)) + ")"
        self.provenance = {"kind": "perm", "perm": list(perm)}

    def local(self, read, pos):
        return self.perm[read(pos)]

    def inverse(self):
        inv = [0] * len(self.perm)
        for a, b in enumerate(self.perm):
            inv[b] = a
        return PermutationCode(inv)


def symbol_perm_code(perm) -> PermutationCode:
    return PermutationCode(perm)


def swap_perm(n: int, a: int, b: int) -> tuple:
    perm = list(range(n))
    perm[a], perm[b] = b, a
    return tuple(perm)


class Composition(SlidingBlockCode1D):
    """``outer ∘ inner``: apply ``inner`` first."""

    def __init__(self, outer: SlidingBlockCode1D, inner: SlidingBlockCode1D, name=None):
        if outer.alphabet != inner.alphabet:
            raise ValueError("codes over different alphabets")
        self.outer = outer
        self.inner = inner
        self.alphabet = outer.alphabet
        self.radius = outer.radius + inner.radius
        self.name = name or f"{outer.name}·{inner.name}"
        self.provenance = {"kind": "compose", "outer": outer.provenance, "inner": inner.provenance}
        # flattened chain, innermost first
        self.factors = [*_factors(inner), *_factors(outer)]

    def local(self, read, pos):
        # one memo per layer of the flattened chain; nesting memos per call
        # would re-evaluate inner layers once per outer read
        factors = self.factors
        reader = read
        for f in factors[:-1]:
            reader = _memo_layer(f, reader)
        return factors[-1].local(reader, pos)

    def image(self, read, lo, hi):
        r = self.outer.radius
        base = lo - r
        mid = self.inner.image(read, base, hi + r)
        return self.outer.image(lambda j: mid[j - base], lo, hi)

    def inverse(self):
        return Composition(self.inner.inverse(), self.outer.inverse())


def _factors(code) -> list:
    return code.factors if isinstance(code, Composition) else [code]


def _memo_layer(code, read):
    memo = {}

    def layer(j):
        try:
            return memo[j]
        except KeyError:
            v = memo[j] = code.local(read, j)
            return v

    return layer


def compose(g: SlidingBlockCode1D, h: SlidingBlockCode1D) -> SlidingBlockCode1D:
    """``compose(g, h)(x) == g(h(x))``."""
    return Composition(g, h)


def compose_all(codes) -> SlidingBlockCode1D:
    """Product of a sequence, rightmost applied first."""
    codes = list(codes)
    result = codes[-1]
    for c in reversed(codes[:-1]):
        result = Composition(c, result)
    return result


class Truncated(SlidingBlockCode1D):
    """``code`` with every input cell farther than ``radius`` replaced by 0."""

    def __init__(self, code: SlidingBlockCode1D, radius: int):
        self.code = code
        self.alphabet = code.alphabet
        self.radius = radius
        self.name = code.name
        self.provenance = code.provenance

    def local(self, read, pos):
        r = self.radius
        return self.code.local(lambda j: read(j) if abs(j - pos) <= r else 0, pos)

    def inverse(self):
        return self.code.inverse()


def inverse(g: SlidingBlockCode1D) -> SlidingBlockCode1D:
    return g.inverse()


def conjugate(g: SlidingBlockCode1D, h: SlidingBlockCode1D) -> SlidingBlockCode1D:
    """``h g h^-1``; ``h`` must carry its inverse."""
    c = Composition(h, Composition(g, h.inverse()))
    c.name = f"{h.name}·{g.name}·{h.name}⁻¹"
    return c


def apply_code(g: SlidingBlockCode1D, x: BiConfiguration) -> BiConfiguration:
    """Exact image of an eventually periodic configuration."""
    r = g.radius
    pl, pr = len(x.left), len(x.right)
    lo = x.anchor - r - pl
    hi = x.end + r + pr
    out = g.image(x.__getitem__, lo, hi)
    return BiConfiguration(out[:pl], out[:len(out) - pr], lo, out[len(out) - pr:]).canonical


# ---------------------------------------------------------------------------
# exhaustive comparison of local rules


def find_difference(f, g, alphabet_size: int, in_window, budget: int = DEFAULT_BUDGET):
    """Search a cylinder where ``f(read) != g(read)``.

    ``f`` and ``g`` take a reader; ``in_window(cell)`` guards the cells they may
    touch.  Returns ``(assignment, value_f, value_g)`` for the first separating
    cylinder, or ``None`` when the two agree everywhere.  Raises
    :class:`WindowTooLarge` once more than ``budget`` cylinders are visited.
    """
    assignment = {}
    trail = []
    visited = 0

    def read(cell):
        try:
            return assignment[cell]
        except KeyError:
            if not in_window(cell):
                raise AssertionError(f"rule read {cell} outside its window")
            raise NeedCell(cell)

    while True:
        visited += 1
        if visited > budget:
            raise WindowTooLarge(f"more than {budget} cylinders needed to compare the rules")
        try:
            a = f(read)
            b = g(read)
        except NeedCell as need:
            assignment[need.cell] = 0
            trail.append(need.cell)
            continue
        if a != b:
            return dict(assignment), a, b
        while trail:
            cell = trail[-1]
            if assignment[cell] + 1 < alphabet_size:
                assignment[cell] += 1
                break
            del assignment[cell]
            trail.pop()
        else:
            return None


@dataclass
class CodeComparison:
    equal: bool
    window: Optional[tuple] = None  # cells -R..R, unconstrained cells filled with 0
    values: Optional[tuple] = None
    radius: int = 0

    def __bool__(self):
        return self.equal


def compare_codes(g: SlidingBlockCode1D, h: SlidingBlockCode1D, budget: int = DEFAULT_BUDGET,
                  screen: int = 256, seed: int = 0) -> CodeComparison:
    if g.alphabet != h.alphabet:
        raise ValueError("codes over different alphabets")
    n = g.alphabet.size
    R = max(g.radius, h.radius)
    rng = random.Random(seed)
    for _ in range(screen):
        w = [rng.randrange(n) for _ in range(2 * R + 1)]
        read = lambda j, w=w: w[j + R]
        a, b = g.local(read, 0), h.local(read, 0)
        if a != b:
            return CodeComparison(False, tuple(w), (a, b), R)
    found = find_difference(
        lambda read: g.local(read, 0),
        lambda read: h.local(read, 0),
        n,
        lambda j: -R <= j <= R,
        budget,
    )
    if found is None:
        return CodeComparison(True, radius=R)
    assignment, a, b = found
    w = tuple(assignment.get(j, 0) for j in range(-R, R + 1))
    return CodeComparison(False, w, (a, b), R)


def equal_codes(g, h, budget: int = DEFAULT_BUDGET) -> bool:
    return compare_codes(g, h, budget).equal


def minimal_radius(g: SlidingBlockCode1D, budget: int = DEFAULT_BUDGET) -> SlidingBlockCode1D:
    """Equivalent code at the smallest radius on which the rule depends."""
    for r in range(g.radius + 1):
        t = Truncated(g, r)
        if compare_codes(g, t, budget).equal:
            return t
    return g  # pragma: no cover - r = radius always succeeds


def is_shift_1d(g: SlidingBlockCode1D, budget: int = DEFAULT_BUDGET) -> Optional[int]:
    """``m`` when ``g == σ^m``, else ``None``."""
    reduced = minimal_radius(g, budget)
    R = reduced.radius
    for m in sorted(range(-R, R + 1), key=lambda m: (abs(m), m)):
        if compare_codes(reduced, ShiftCode(g.alphabet, m), budget).equal:
            return m
    return None


def in_g_star(g: SlidingBlockCode1D) -> bool:
    """Whether ``g`` preserves every ``Ω^a``.

    The left tail of ``g(φ(x))`` is the image of the constant window, so the
    check reduces to constant windows.
    """
    return all(g.local(lambda j, a=a: a, 0) == a for a in g.alphabet)


def act_omega(g: SlidingBlockCode1D, omega: OmegaPoint) -> OmegaPoint:
    y = apply_code(g, phi_embed(omega))
    if not y.in_star:
        raise ImageDegenerate(f"{g.name} maps {omega} outside A^Z_*: {y}")
    return psi_collapse(y)


def window_config(window, center_offset: int, fill: int = 0) -> BiConfiguration:
    """Configuration carrying ``window`` with ``window[center_offset]`` at 0."""
    return BiConfiguration((fill,), tuple(window), -center_offset, (fill,))
