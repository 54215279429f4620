"""Reduction from Z^d automata to Z automata through U_k-periodic configurations.

``M_k`` has rows ``e_i + k e_{i+1}`` (``i < d``) and ``v = e_d``.  Every point
is ``u + ell * v`` with ``u`` in the span ``U_k`` of the first ``d-1`` rows, and
a ``U_k``-periodic configuration is a line indexed by ``ell``.  Conjugating a
Z^d automaton by that identification gives a one-dimensional code ``phi_k(g)``.

Balls and norms are sup-norm throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .codes import (
    DEFAULT_BUDGET,
    SlidingBlockCode1D,
    compare_codes,
    find_difference,
    is_shift_1d,
    minimal_radius,
    ShiftCode,
)
from .errors import CollisionConstraint, InjectivityRadiusInsufficient, InvariantViolation
from .symbolic import Alphabet, BiConfiguration, as_alphabet


def sup_norm(p) -> int:
    return max((abs(c) for c in p), default=0)


def ball(d: int, rho: int):
    """Integer points of the sup-norm ball in row-major order."""
    return list(itertools.product(range(-rho, rho + 1), repeat=d))


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _integer_det(rows) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if a[r][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class LatticeBasis:
    d: int
    k: int
    rows: tuple

    @property
    def v(self) -> tuple:
        return self.rows[-1]

    @property
    def sublattice_rows(self) -> tuple:
        return self.rows[:-1]

    @property
    def ell_weights(self) -> tuple:
        """``ell(p) = sum(w_i p_i)`` with ``w_i = (-k)^(d-1-i)``."""
        return tuple((-self.k) ** (self.d - 1 - i) for i in range(self.d))

    def ell(self, p) -> int:
        return sum(w * c for w, c in zip(self.ell_weights, p))

    def determinant(self) -> int:
        return _integer_det(self.rows)


def basis_mk(d: int, k: int) -> LatticeBasis:
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    rows = []
    for i in range(d):
        row = [0] * d
        row[i] = 1
        if i + 1 < d:
            row[i + 1] = k
        rows.append(tuple(row))
    basis = LatticeBasis(d, k, tuple(rows))
    if basis.determinant() != 1:
        raise InvariantViolation("M_k must be unimodular")  # pragma: no cover
    return basis


@dataclass(frozen=True)
class CosetDecomposition:
    coefficients: tuple  # c_1..c_{d-1}
    ell: int

    def reconstruct(self, basis: LatticeBasis) -> tuple:
        p = [0] * basis.d
        for c, row in zip(self.coefficients, basis.sublattice_rows):
            for i, x in enumerate(row):
                p[i] += c * x
        p[-1] += self.ell
        return tuple(p)


def decompose(p, basis: LatticeBasis) -> CosetDecomposition:
    """Back-substitution: ``c_1 = p_1``, ``c_i = p_i - k c_{i-1}``, ``ell = p_d - k c_{d-1}``."""
    if len(p) != basis.d:
        raise ValueError("dimension mismatch")
    k = basis.k
    coeffs = [p[0]]
    for i in range(1, basis.d - 1):
        coeffs.append(p[i] - k * coeffs[-1])
    return CosetDecomposition(tuple(coeffs), p[-1] - k * coeffs[-1])


def decompose_many(points: np.ndarray, basis: LatticeBasis) -> np.ndarray:
    """Row-wise :func:`decompose`; returns ``(c_1, ..., c_{d-1}, ell)`` per row."""
    points = np.asarray(points, dtype=np.int64)
    out = np.empty_like(points)
    out[:, 0] = points[:, 0]
    for i in range(1, basis.d):
        out[:, i] = points[:, i] - basis.k * out[:, i - 1]
    return out


def min_norm_uk(d: int, k: int, coeff_bound: int):
    """Smallest sup-norm of a nonzero combination of the first ``d-1`` rows, ``|c_i| <= coeff_bound``."""
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    basis = basis_mk(d, k)
    sub = np.array(basis.sublattice_rows, dtype=np.int64)
    rng = np.arange(-coeff_bound, coeff_bound + 1)
    grid = np.stack(np.meshgrid(*([rng] * (d - 1)), indexing="ij"), axis=-1).reshape(-1, d - 1)
    grid = grid[np.any(grid != 0, axis=1)]
    vecs = grid @ sub
    norms = np.abs(vecs).max(axis=1)
    best = norms.min()
    # deterministic witness: lexicographically largest among minimisers
    candidates = sorted(tuple(int(c) for c in v) for v in vecs[norms == best])
    return int(best), candidates[-1]


def in_sublattice(p, basis: LatticeBasis) -> bool:
    """``p in U_k`` by solving ``c M_k = p`` (independent of :func:`decompose`)."""
    m = np.array(basis.rows, dtype=float)
    c = np.linalg.solve(m.T, np.array(p, dtype=float))
    ci = np.rint(c)
    return bool(np.allclose(c, ci) and ci[-1] == 0)


def min_norm_uk_bruteforce(d: int, k: int, box: int):
    """Oracle: scan lattice points with ``|p| <= box`` for membership in ``U_k``."""
    basis = basis_mk(d, k)
    best = None
    for p in ball(d, box):
        if any(p) and in_sublattice(p, basis):
            n = sup_norm(p)
            if best is None or n < best:
                best = n
    return best


@dataclass
class InjectivityResult:
    d: int
    k: int
    rho_max: int
    threshold: int  # largest rho <= rho_max with ell injective on B_rho; -1 never happens (B_0)
    witnesses: dict = field(default_factory=dict)  # rho -> (p, q) with p - q in U_k \ {0}

    def to_dict(self):
        return {
            "d": self.d,
            "k": self.k,
            "rho_max": self.rho_max,
            "threshold": self.threshold,
            "witnesses": {str(r): [list(p), list(q)] for r, (p, q) in self.witnesses.items()},
        }


def coset_injectivity_threshold(d: int, k: int, rho_max: int) -> InjectivityResult:
    """Largest radius on which no two ball points are congruent mod ``U_k``.

    Radii above the threshold (up to ``rho_max``) get a collision witness.
    """
    basis = basis_mk(d, k)
    w = np.array(basis.ell_weights, dtype=np.int64)
    threshold = None
    witnesses = {}
    for rho in range(rho_max + 1):
        pts = np.array(ball(d, rho), dtype=np.int64)
        ells = pts @ w
        order = np.argsort(ells, kind="stable")
        sorted_ells = ells[order]
        dup = np.nonzero(sorted_ells[1:] == sorted_ells[:-1])[0]
        if dup.size:
            i = dup[0]
            p = tuple(int(c) for c in pts[order[i + 1]])
            q = tuple(int(c) for c in pts[order[i]])
            witnesses[rho] = (p, q)
        elif threshold is None or threshold == rho - 1:
            threshold = rho
    return InjectivityResult(d, k, rho_max, threshold, witnesses)


def injectivity_threshold_bruteforce(d: int, k: int, rho_max: int) -> int:
    """Oracle: pairwise differences tested with :func:`in_sublattice`."""
    basis = basis_mk(d, k)
    best = 0
    for rho in range(rho_max + 1):
        pts = ball(d, rho)
        clash = any(
            in_sublattice(tuple(a - b for a, b in zip(p, q)), basis)
            for p, q in itertools.combinations(pts, 2)
        )
        if clash:
            break
        best = rho
    return best


# ---------------------------------------------------------------------------
# periodic configurations


@dataclass(frozen=True)
class PeriodicZdConfiguration:
    """``U_k``-periodic point of ``A^(Z^d)``: the value at ``p`` is ``line[ell(p)]``."""

    line: BiConfiguration
    basis: LatticeBasis

    def __getitem__(self, p) -> int:
        return self.line[self.basis.ell(p)]

    def __eq__(self, other):
        if not isinstance(other, PeriodicZdConfiguration):
            return NotImplemented
        return self.basis == other.basis and self.line == other.line

    def __hash__(self):
        return hash((self.basis, self.line))


@dataclass(frozen=True)
class PatternOnBall:
    d: int
    radius: int
    values: tuple  # row-major over ball(d, radius)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != (2 * self.radius + 1) ** self.d:
            raise InvariantViolation("pattern must assign every point of the ball")

    @classmethod
    def from_function(cls, d, radius, f) -> "PatternOnBall":
        return cls(d, radius, tuple(f(p) for p in ball(d, radius)))

    def items(self):
        return zip(ball(self.d, self.radius), self.values)

    def as_dict(self) -> dict:
        return dict(self.items())


def complete_pattern(x: PatternOnBall, basis: LatticeBasis, fill: int = 0) -> PeriodicZdConfiguration:
    """Extend a ball pattern to a ``U_k``-periodic configuration (free cosets get ``fill``)."""
    if x.d != basis.d:
        raise ValueError("dimension mismatch")
    line = {}
    owner = {}
    for p, s in x.items():
        e = basis.ell(p)
        if e in line and line[e] != s:
            raise CollisionConstraint(
                f"{owner[e]} and {p} are congruent mod U_k but carry {line[e]} and {s}",
                pair=(owner[e], p),
                symbols=(line[e], s),
            )
        line[e] = s
        owner.setdefault(e, p)
    lo, hi = min(line), max(line)
    core = tuple(line.get(e, fill) for e in range(lo, hi + 1))
    return PeriodicZdConfiguration(BiConfiguration((fill,), core, lo, (fill,)), basis)


def project_pi(y: PeriodicZdConfiguration) -> BiConfiguration:
    """``[pi(y)]_n = y_{n v}``."""
    return y.line


def lift_pi_inverse(z: BiConfiguration, basis: LatticeBasis) -> PeriodicZdConfiguration:
    return PeriodicZdConfiguration(z, basis)


# ---------------------------------------------------------------------------
# Z^d sliding block codes


class SlidingBlockCodeZd:
    d: int
    alphabet: Alphabet
    radius: int
    name: str = "code"

    def local(self, read, p) -> int:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} d={self.d} r={self.radius}>"


class ZdRule(SlidingBlockCodeZd):
    """Rule given as ``rule(cell)`` with ``cell(offset)`` for offsets in ``B_radius``."""

    def __init__(self, d, alphabet, radius, rule, name="rule"):
        self.d, self.alphabet, self.radius = d, as_alphabet(alphabet), radius
        self.rule = rule
        self.name = name

    def local(self, read, p):
        return self.rule(lambda q: read(_add(p, q)))


class ZdShift(SlidingBlockCodeZd):
    """Output at ``p`` is the input at ``p + t``."""

    def __init__(self, alphabet, t):
        self.t = tuple(int(c) for c in t)
        self.d = len(self.t)
        self.alphabet = as_alphabet(alphabet)
        self.radius = sup_norm(self.t)
        self.name = f"shift{self.t}"

    def local(self, read, p):
        return read(_add(p, self.t))


class CrossSwap(SlidingBlockCodeZd):
    """Swap 1 and 2 at ``p`` when all ``2d`` axis neighbours are 0."""

    def __init__(self, alphabet, d: int = 2):
        self.alphabet = as_alphabet(alphabet)
        if self.alphabet.size < 3:
            raise ValueError("cross-swap needs at least 3 symbols")
        self.d = d
        self.radius = 1
        self.name = f"cross_swap(d={d})"
        self._neighbours = [
            tuple(s if i == axis else 0 for i in range(d)) for axis in range(d) for s in (1, -1)
        ]

    def local(self, read, p):
        v = read(p)
        if v not in (1, 2):
            return v
        for q in self._neighbours:
            if read(_add(p, q)) != 0:
                return v
        return 3 - v


def build_cross_swap(alphabet, d: int = 2) -> CrossSwap:
    return CrossSwap(alphabet, d)


class ZdComposition(SlidingBlockCodeZd):
    """``outer ∘ inner``."""

    def __init__(self, outer, inner):
        if outer.d != inner.d or outer.alphabet != inner.alphabet:
            raise ValueError("incompatible codes")
        self.outer, self.inner = outer, inner
        self.d, self.alphabet = outer.d, outer.alphabet
        self.radius = outer.radius + inner.radius
        self.name = f"{outer.name}·{inner.name}"

    def local(self, read, p):
        memo = {}

        def mid(q):
            try:
                return memo[q]
            except KeyError:
                v = memo[q] = self.inner.local(read, q)
                return v

        return self.outer.local(mid, p)


def compose_zd(g, h) -> ZdComposition:
    return ZdComposition(g, h)


class ZdTruncated(SlidingBlockCodeZd):
    def __init__(self, code, radius):
        self.code = code
        self.d, self.alphabet = code.d, code.alphabet
        self.radius = radius
        self.name = code.name

    def local(self, read, p):
        r = self.radius
        return self.code.local(lambda q: read(q) if sup_norm(tuple(a - b for a, b in zip(q, p))) <= r else 0, p)


def apply_zd(g: SlidingBlockCodeZd, y: PeriodicZdConfiguration) -> PeriodicZdConfiguration:
    from .codes import apply_code

    return PeriodicZdConfiguration(apply_code(phi_k(g, y.basis), y.line), y.basis)


def compare_codes_zd(g, h, budget: int = DEFAULT_BUDGET):
    """``None`` when equal, else a separating partial pattern ``{offset: symbol}``."""
    if g.d != h.d or g.alphabet != h.alphabet:
        raise ValueError("incompatible codes")
    R = max(g.radius, h.radius)
    origin = (0,) * g.d
    found = find_difference(
        lambda read: g.local(read, origin),
        lambda read: h.local(read, origin),
        g.alphabet.size,
        lambda q: sup_norm(q) <= R,
        budget,
    )
    return None if found is None else found[0]


def equal_codes_zd(g, h, budget: int = DEFAULT_BUDGET) -> bool:
    return compare_codes_zd(g, h, budget) is None


def memory_radius_zd(g: SlidingBlockCodeZd, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest ``rho`` such that ``g`` only depends on the closed ball ``B_rho``."""
    for rho in range(g.radius + 1):
        if equal_codes_zd(g, ZdTruncated(g, rho), budget):
            return rho
    return g.radius  # pragma: no cover


def in_memory_class(g: SlidingBlockCodeZd, r: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Membership in ``L_r``: memory strictly less than ``r``."""
    return memory_radius_zd(g, budget) < r


def is_shift_zd(g: SlidingBlockCodeZd, budget: int = DEFAULT_BUDGET) -> Optional[tuple]:
    rho = memory_radius_zd(g, budget)
    for t in sorted(ball(g.d, rho), key=lambda t: (sup_norm(t), t)):
        if equal_codes_zd(g, ZdShift(g.alphabet, t), budget):
            return t
    return None


class PhiK(SlidingBlockCode1D):
    """``pi ∘ g ∘ pi^-1``: ``g`` evaluated on the lift of a line."""

    def __init__(self, g: SlidingBlockCodeZd, basis: LatticeBasis):
        if g.d != basis.d:
            raise ValueError("dimension mismatch")
        self.g, self.basis = g, basis
        self.alphabet = g.alphabet
        self.radius = max(abs(basis.ell(q)) for q in ball(g.d, g.radius))
        self.name = f"phi_{basis.k}({g.name})"
        self.provenance = {"kind": "phi_k", "k": basis.k, "code": g.name}
        self._origin = (0,) * g.d

    def local(self, read, pos):
        ell = self.basis.ell
        return self.g.local(lambda q: read(pos + ell(q)), self._origin)


def phi_k(g: SlidingBlockCodeZd, basis: LatticeBasis) -> PhiK:
    return PhiK(g, basis)


class _ReconstructedRule(SlidingBlockCodeZd):
    """Rule read back from the action on completed ball patterns."""

    def __init__(self, g, basis, rho):
        self.g, self.basis, self.rho = g, basis, rho
        self.d, self.alphabet = g.d, g.alphabet
        self.radius = rho
        self.name = f"reconstructed({g.name})"
        self._line = phi_k(g, basis)
        self._coset = {basis.ell(q): q for q in ball(g.d, rho)}

    def local(self, read, p):
        coset = self._coset
        # lazy form of complete_pattern: cosets outside the ball read as 0
        line_read = lambda j: read(_add(p, coset[j])) if j in coset else 0
        return self._line.local(line_read, 0)


def check_lk_uniqueness(g: SlidingBlockCodeZd, basis: LatticeBasis, budget: int = DEFAULT_BUDGET) -> dict:
    """Recover ``g`` from its action on ``U_k``-periodic points and compare."""
    rho = memory_radius_zd(g, budget)
    inj = coset_injectivity_threshold(g.d, basis.k, rho)
    if inj.threshold < rho:
        raise InjectivityRadiusInsufficient(
            f"memory radius {rho} exceeds injectivity threshold {inj.threshold} for k={basis.k}",
            threshold=inj.threshold,
        )
    rec = _ReconstructedRule(g, basis, rho)
    diff = compare_codes_zd(rec, g, budget)
    return {
        "k": basis.k,
        "memory_radius": rho,
        "injectivity_threshold": inj.threshold,
        "reconstructed_equal": diff is None,
        "separating_pattern": None if diff is None else {str(q): s for q, s in diff.items()},
    }


def choose_k(g: SlidingBlockCodeZd, rho: int) -> int:
    k = max(2 * rho + 1, 2)
    while coset_injectivity_threshold(g.d, k, rho).threshold < rho:
        k += 1
    return k


def radical_reduction_check(g: SlidingBlockCodeZd, k: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> dict:
    """Decide whether ``g`` is a shift by way of ``phi_k(g)``.

    ``k`` defaults to the smallest value whose coset injectivity covers the
    memory ball of ``g``.  When ``phi_k(g) = σ^m`` the shift vector is searched
    among points ``t`` of the memory ball with ``ell(t) = m``.
    """
    rho = memory_radius_zd(g, budget)
    forced = k is not None
    k = k if forced else choose_k(g, rho)
    basis = basis_mk(g.d, k)
    h = phi_k(g, basis)
    m = is_shift_1d(h, budget)
    result = {"memory_radius": rho, "k": k, "k_forced": forced, "phi_k_radius": h.radius}
    if m is None:
        reduced = minimal_radius(h, budget)
        R = reduced.radius
        windows = {}
        for cand in range(-R, R + 1):
            cmp = compare_codes(reduced, ShiftCode(h.alphabet, cand), budget)
            windows[str(cand)] = list(cmp.window)
        result.update(verdict="not-a-shift", certificate={"phi_k_min_radius": R, "separating_windows": windows})
        return result
    result["phi_k_shift"] = m
    for t in sorted(ball(g.d, rho), key=lambda t: (sup_norm(t), t)):
        if basis.ell(t) == m and equal_codes_zd(g, ZdShift(g.alphabet, t), budget):
            result.update(verdict="shift", t=list(t))
            return result
    result.update(verdict="not-a-shift", certificate={"note": f"phi_k(g) = σ^{m} but no shift in the memory ball matches"})
    return result
