"""Automaton families acting on the boundary and the finite-depth experiments.

``g_k`` (proximality) pushes every point with a short initial run of ones
towards ``o = 0 1 1 1 ...``; the minimality elements steer a transversal
``x̄`` towards ``ȳ`` on its first ``k`` coordinates.  The experiments below run
these elements on explicit finite samples and record exact dyadic distances.
All limits are checked at a stated finite depth only.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .codes import (
    PermutationCode,
    SlidingBlockCode1D,
    act_omega,
    apply_code,
    compare_codes,
    compose_all,
    conjugate,
    identity_code,
    in_g_star,
    is_shift_1d,
    shift_code,
    swap_perm,
    window_config,
)
from .errors import (
    CollapseFailed,
    ImageDegenerate,
    InvariantViolation,
    PrefixDegenerate,
    SearchExhausted,
    WindowTooLarge,
)
from .markers import MarkerCode, MarkerRule, MarkerScheme, compile_scheme, verify_scheme
from .symbolic import (
    BASE_POINT,
    DEFAULT_TAILS,
    BarOmegaPoint,
    BiConfiguration,
    OmegaPoint,
    as_alphabet,
    enumerate_cm,
    omega_distance,
    r_value,
    word_str,
)


def default_marker_len(k: int) -> int:
    return 2 ** k


# ---------------------------------------------------------------------------
# builders


def build_proximal_gk(k: int, alphabet, marker_len: Callable[[int], int] = default_marker_len) -> MarkerScheme:
    """The involution ``0^L 0^k E <-> 0^L 1^k E`` for ``E = 1^y 0`` (0<y<k) and ``E = 1^y a`` (0<=y<k, a>1)."""
    alphabet = as_alphabet(alphabet)
    if k < 2:
        raise ValueError("g_k needs k >= 2")
    start = (0,) * marker_len(k)
    zeros, ones = (0,) * k, (1,) * k
    rules = [MarkerRule.swap(start, (1,) * y + (0,), zeros, ones) for y in range(1, k)]
    rules += [
        MarkerRule.swap(start, (1,) * y + (a,), zeros, ones)
        for y in range(k)
        for a in alphabet
        if a > 1
    ]
    return MarkerScheme(alphabet, rules, name=f"g_{k}")


def transport(code: SlidingBlockCode1D, target: int) -> SlidingBlockCode1D:
    """Conjugate by the ``0 <-> target`` swap, moving an ``Ω^0`` construction to ``Ω^target``."""
    if target == 0:
        return code
    tau = PermutationCode(swap_perm(code.alphabet.size, 0, target))
    c = conjugate(code, tau)
    c.name = f"{code.name}^({target})"
    return c


def proximal_code(k: int, alphabet, target: int = 0, marker_len=default_marker_len) -> SlidingBlockCode1D:
    code = compile_scheme(build_proximal_gk(k, alphabet, marker_len))
    return transport(code, target)


def build_minimal_gk(k: int, source: BarOmegaPoint, target: BarOmegaPoint,
                     marker_len: Callable[[int], int] = default_marker_len) -> MarkerScheme:
    """One rule per symbol ``a`` whose ``k``-prefixes differ:
    ``a^L a^k a x_[k] <-> a^L y_[k] a x_[k]``."""
    if k < 1:
        raise ValueError("need k >= 1")
    if len(source) != len(target):
        raise ValueError("transversals over different alphabets")
    rules = []
    for a, (x, y) in enumerate(zip(source, target)):
        xs = x.head(k + 1)[1:]
        ys = y.head(k + 1)[1:]
        if ys[0] == a or xs[0] == a:
            raise PrefixDegenerate(f"coordinate {a}: first symbol after position 0 equals {a}")
        if xs == ys:
            continue
        rules.append(MarkerRule.swap((a,) * marker_len(k), (a,) + xs, (a,) * k, ys))
    return MarkerScheme(source.alphabet, rules, name=f"min_{k}")


def minimal_code(k, source, target, marker_len=default_marker_len) -> SlidingBlockCode1D:
    return compile_scheme(build_minimal_gk(k, source, target, marker_len))


def default_point(a: int, n: int) -> OmegaPoint:
    """``a`` followed by the constant ``a+1 (mod n)``."""
    return OmegaPoint((a,), ((a + 1) % n,))


def base_point(target: int, n: int) -> OmegaPoint:
    """``o`` moved to ``Ω^target`` by the ``0 <-> target`` swap."""
    if target == 0:
        return BASE_POINT
    tau = swap_perm(n, 0, target)
    return OmegaPoint((tau[0],), (tau[1],))


def permute_point(omega: OmegaPoint, perm) -> OmegaPoint:
    return OmegaPoint(tuple(perm[s] for s in omega.prefix), tuple(perm[s] for s in omega.tail))


def r_value_at(omega: OmegaPoint, target: int, n: int):
    """The run-length coordinate on ``Ω^target`` (``r`` after the swap)."""
    if target == 0:
        return r_value(omega)
    return r_value(permute_point(omega, swap_perm(n, 0, target)))


def random_omega(rng: random.Random, a: int, n: int, max_prefix: int = 8) -> OmegaPoint:
    second = rng.choice([b for b in range(n) if b != a])
    rest = tuple(rng.randrange(n) for _ in range(rng.randint(0, max_prefix)))
    tail = tuple(rng.randrange(n) for _ in range(rng.randint(1, 2)))
    return OmegaPoint((a, second) + rest, tail)


def random_bar_point(rng: random.Random, n: int, max_prefix: int = 8) -> BarOmegaPoint:
    return BarOmegaPoint(tuple(random_omega(rng, a, n, max_prefix) for a in range(n)))


def act_bar(code: SlidingBlockCode1D, point: BarOmegaPoint) -> BarOmegaPoint:
    """Diagonal action of an element preserving every ``Ω^a``."""
    return BarOmegaPoint(tuple(act_omega(code, p) for p in point))


def diameter(points) -> Fraction:
    points = list(points)
    return max((omega_distance(p, q) for p, q in itertools.combinations(points, 2)), default=Fraction(0))


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# proximality


@dataclass
class ProximalityReport:
    alphabet: int
    k_range: tuple
    m_range: tuple
    depth: Optional[int]
    tails: tuple
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row["ok"] for row in self.rows)

    @property
    def violations(self) -> int:
        return sum(row["r_violations"] + row["bound_violations"] for row in self.rows)

    def to_dict(self):
        return {
            "alphabet": self.alphabet,
            "k_range": list(self.k_range),
            "m_range": list(self.m_range),
            "truncation": {"depth": self.depth, "tails": [word_str(t) for t in self.tails]},
            "rows": self.rows,
            "skipped": [list(p) for p in self.skipped],
            "ok": self.ok,
        }


def proximality_experiment(m_range: Sequence[int], k_range: Sequence[int], alphabet,
                           depth: Optional[int] = None, tails=DEFAULT_TAILS) -> ProximalityReport:
    """Apply ``g_k`` to enumerated ``C_m`` truncations.

    Asserts ``r(g_k f) = r(f) + k`` and records the largest distance to ``o``
    against the bound ``2^-(m+k)``.  Pairs with ``k <= m`` are listed as skipped.
    ``depth`` defaults to ``m + 4``.
    """
    alphabet = as_alphabet(alphabet)
    report = ProximalityReport(alphabet.size, tuple(k_range), tuple(m_range), depth, tuple(tuple(t) for t in tails))
    codes = {}
    for m in m_range:
        d = depth if depth is not None else m + 4
        sample = enumerate_cm(m, d, alphabet, tails)
        for k in k_range:
            if k <= m:
                report.skipped.append((k, m))
                continue
            if k not in codes:
                codes[k] = compile_scheme(build_proximal_gk(k, alphabet))
            g = codes[k]
            bound = Fraction(1, 2 ** (m + k))
            worst = Fraction(0)
            r_bad = bound_bad = 0
            witnesses = []
            for f in sample:
                img = act_omega(g, f)
                if r_value(img) != m + k:
                    r_bad += 1
                    witnesses.append(repr(f))
                dist = omega_distance(img, BASE_POINT)
                worst = max(worst, dist)
                if dist > bound:
                    bound_bad += 1
            report.rows.append({
                "k": k,
                "m": m,
                "depth": d,
                "samples": len(sample),
                "max_distance": _frac(worst),
                "bound": _frac(bound),
                "r_violations": r_bad,
                "bound_violations": bound_bad,
                "witnesses": witnesses[:5],
                "ok": r_bad == 0 and bound_bad == 0,
            })
    return report


def r_additivity_check(k: int, alphabet, tails=((0,),)) -> dict:
    """Exhaustive ``r(g_k f) = r(f) + k`` over ``Ω^0`` prefixes of length ``k+2`` with ``r(f) < k``."""
    alphabet = as_alphabet(alphabet)
    g = compile_scheme(build_proximal_gk(k, alphabet))
    checked = violations = 0
    first_bad = None
    for rest in itertools.product(alphabet.symbols, repeat=k + 1):
        if rest[0] == 0:
            continue
        for tail in tails:
            f = OmegaPoint((0,) + rest, tail)
            r = r_value(f)
            if r >= k:
                continue
            checked += 1
            if r_value(act_omega(g, f)) != r + k:
                violations += 1
                first_bad = first_bad or repr(f)
    return {"k": k, "alphabet": alphabet.size, "checked": checked, "violations": violations, "first": first_bad}


# ---------------------------------------------------------------------------
# extreme proximality


@dataclass
class CollapseReport:
    budget: int
    g0: Optional[dict]
    stages: list
    success: bool
    final_diameter: Fraction

    def to_dict(self):
        return {
            "budget": self.budget,
            "g0": self.g0,
            "stages": self.stages,
            "success": self.success,
            "final_diameter": _frac(self.final_diameter),
        }


def _move_off_base(points, n: int, max_k: int = 12):
    """A minimality element sending ``o`` to ``0 1 0 0 ...`` that keeps ``points`` off ``o``.

    Coordinates other than 0 are left untouched (source == target there).
    """
    others = [default_point(a, n) for a in range(1, n)]
    src = BarOmegaPoint((BASE_POINT, *others))
    dst = BarOmegaPoint((OmegaPoint((0, 1), (0,)), *others))
    for k in range(2, max_k + 1):
        code = minimal_code(k, src, dst)
        images = [act_omega(code, p) for p in points]
        if BASE_POINT not in images:
            return k, code
    raise SearchExhausted(f"no minimality element up to k={max_k} moves the sample off o")


def extremal_collapse(sample, budget: int, alphabet=None, k_max: int = 16) -> CollapseReport:
    """Shrink a finite subset of ``Ω^0`` onto ``o`` with ``g_k g_0``.

    ``g_0`` is only used when ``o`` is in the sample.  Each stage applies a
    fresh ``g_k`` to ``g_0 C`` and records the distance to ``o`` and the
    diameter; the run stops once the diameter is at most ``2^-budget``.
    """
    sample = sorted(set(sample))
    if not sample:
        raise ValueError("empty sample")
    for p in sample:
        if p[0] != 0:
            raise InvariantViolation(f"{p} is not in Ω^0")
    n = as_alphabet(alphabet).size if alphabet is not None else max(2, max(max(p.symbols()) for p in sample) + 1)
    target = Fraction(1, 2 ** budget)
    d0 = diameter(sample)
    if d0 <= target:
        return CollapseReport(budget, None, [{"k": None, "diameter": _frac(d0)}], True, d0)
    g0_info = None
    moved = sample
    if BASE_POINT in sample:
        k0, g0 = _move_off_base(sample, n)
        moved = [act_omega(g0, p) for p in sample]
        g0_info = {"kind": "minimality", "k": k0, "name": g0.name}
    rs = [r_value(p) for p in moved]
    start = max(rs) + 1
    stages = []
    final = d0
    for k in range(max(2, start), k_max + 1):
        g = compile_scheme(build_proximal_gk(k, n))
        images = [act_omega(g, p) for p in moved]
        dist = max(omega_distance(p, BASE_POINT) for p in images)
        final = diameter(images)
        stages.append({"k": k, "max_distance_to_o": _frac(dist), "diameter": _frac(final)})
        if final <= target:
            return CollapseReport(budget, g0_info, stages, True, final)
    raise CollapseFailed(f"diameter {final} > 2^-{budget} after k = {k_max}")


# ---------------------------------------------------------------------------
# strong proximality on the transversal space


@dataclass(frozen=True)
class FiniteMeasure:
    atoms: tuple  # ((BarOmegaPoint, Fraction), ...)

    def __post_init__(self):
        atoms = tuple((p, Fraction(w)) for p, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise InvariantViolation("measure needs at least one atom")
        if any(w <= 0 for _, w in atoms):
            raise InvariantViolation("weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise InvariantViolation("weights must sum to 1")
        if len({len(p) for p, _ in atoms}) != 1:
            raise InvariantViolation("atoms over different alphabets")

    @property
    def alphabet_size(self) -> int:
        return len(self.atoms[0][0])

    def support(self, a: int) -> set:
        return {p[a] for p, _ in self.atoms}

    def pushforward(self, code) -> "FiniteMeasure":
        merged = {}
        for p, w in self.atoms:
            q = act_bar(code, p)
            merged[q] = merged.get(q, Fraction(0)) + w
        return FiniteMeasure(tuple(merged.items()))


def _coordinate_diameters(mu: FiniteMeasure) -> list:
    return [diameter(mu.support(a)) for a in range(mu.alphabet_size)]


def measure_collapse(mu: FiniteMeasure, budget: int, k_max: int = 16, max_passes: int = 4) -> dict:
    """Push ``mu`` towards a point mass, one coordinate at a time.

    Coordinate ``a`` is handled by the ``0 <-> a`` conjugates of ``g_0`` and
    ``g_k``.  Those act on other coordinates only beyond depth ``2^k``, which is
    kept above ``budget``.
    """
    n = mu.alphabet_size
    target = Fraction(1, 2 ** budget)
    steps = []
    current = mu
    floor_k = max(2, math.ceil(math.log2(budget + 1)))
    for _ in range(max_passes):
        diam = _coordinate_diameters(current)
        if all(d <= target for d in diam):
            break
        for a in range(n):
            diam = _coordinate_diameters(current)
            if diam[a] <= target:
                continue
            tau = swap_perm(n, 0, a)
            support = [permute_point(p, tau) for p in current.support(a)]
            if BASE_POINT in support:
                k0, g0 = _move_off_base(support, n)
                h0 = transport(g0, a)
                current = current.pushforward(h0)
                steps.append({"coordinate": a, "element": f"min_{k0}", "diameters": [_frac(d) for d in _coordinate_diameters(current)]})
                support = [permute_point(p, tau) for p in current.support(a)]
            rs = [r_value(p) for p in support]
            k = max(max(rs) + 1, budget - min(rs), floor_k)
            if k > k_max:
                raise CollapseFailed(f"coordinate {a} needs k = {k} > {k_max}")
            current = current.pushforward(proximal_code(k, n, target=a))
            steps.append({"coordinate": a, "element": f"g_{k}", "diameters": [_frac(d) for d in _coordinate_diameters(current)]})
    diam = _coordinate_diameters(current)
    success = all(d <= target for d in diam)
    if not success:
        raise CollapseFailed(f"diameters {[str(d) for d in diam]} after {max_passes} passes")
    return {
        "budget": budget,
        "initial_diameters": [_frac(d) for d in _coordinate_diameters(mu)],
        "steps": steps,
        "final_diameters": [_frac(d) for d in diam],
        "final_atoms": len(current.atoms),
        "success": success,
    }


# ---------------------------------------------------------------------------
# minimality


def minimality_check(k: int, source: BarOmegaPoint, target: BarOmegaPoint) -> dict:
    """Build the minimality element and confirm ``[g_k x^a]_0..k = y^a_0..k`` for every ``a``."""
    scheme = build_minimal_gk(k, source, target)
    verdict = verify_scheme(scheme)
    result = {"k": k, "rules": len(scheme.rules), "verify": verdict.status, "agree": [], "in_g_star": None}
    if not verdict.ok:
        result["ok"] = False
        return result
    code = compile_scheme(scheme)
    result["in_g_star"] = in_g_star(code)
    for a, (x, y) in enumerate(zip(source, target)):
        img = act_omega(code, x)
        result["agree"].append(img.head(k + 1) == y.head(k + 1))
    result["ok"] = all(result["agree"]) and result["in_g_star"]
    return result


# ---------------------------------------------------------------------------
# relations between two generators


@dataclass
class RelationReport:
    generators: list
    max_len: int
    words: list = field(default_factory=list)

    def count(self, verdict: str) -> int:
        return sum(1 for w in self.words if w["verdict"] == verdict)

    def to_dict(self):
        return {
            "generators": self.generators,
            "max_len": self.max_len,
            "counts": {v: self.count(v) for v in ("trivial", "nontrivial", "unresolved")},
            "words": self.words,
        }


def reduced_words(letters: int, max_len: int):
    """Reduced words over generators ``0..letters-1`` and inverses (``~i``)."""
    alphabet = [(i, e) for i in range(letters) for e in (1, -1)]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in alphabet:
                if w and w[-1][0] == g[0] and w[-1][1] == -g[1]:
                    continue
                nxt.append(w + (g,))
        yield from nxt
        frontier = nxt


def probe_configurations(n: int, seed: int, count: int = 48, max_run: int = 40) -> list:
    """Configurations with long constant runs, where marker codes tend to act."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        left = 0 if i % 3 else rng.randrange(n)
        core = []
        for _ in range(rng.randint(1, 8)):
            s = rng.randrange(n) if rng.random() < 0.5 else rng.choice((0, 1))
            core.extend([s] * rng.randint(1, rng.choice((3, 8, max_run))))
        right = tuple(rng.randrange(n) for _ in range(rng.randint(1, 2)))
        out.append(BiConfiguration((left,), tuple(core), 0, right))
    return out


def marker_windows(code: SlidingBlockCode1D) -> list:
    """Every match pattern of every compiled scheme inside ``code``."""
    found = []
    stack = [code]
    while stack:
        c = stack.pop()
        if isinstance(c, MarkerCode):
            found.extend(c.scheme.rules[i].pattern(d) for i in range(len(c.scheme.rules))
                         for d in c.scheme.rules[i].data)
        for attr in ("outer", "inner", "code"):
            sub = getattr(c, attr, None)
            if isinstance(sub, SlidingBlockCode1D):
                stack.append(sub)
    return sorted(set(found))


def pattern_probes(codes, n: int) -> list:
    """Configurations embedding the marker patterns of ``codes`` in constant seas."""
    out = []
    for c in codes:
        for w in marker_windows(c):
            for fill in sorted({0, (max(w) + 1) % n}):
                out.append(BiConfiguration((fill,), w, 0, (fill,)))
    return out


def relation_search(g: SlidingBlockCode1D, h: SlidingBlockCode1D, max_len: int, budget: int = 200_000,
                    seed: int = 0, probes: int = 48) -> RelationReport:
    """Classify reduced words in ``g, h`` as trivial, nontrivial or unresolved.

    Nontrivial words carry a configuration they move; trivial words are proven
    equal to the identity by the exhaustive rule comparison.
    """
    gens = [(g, g.inverse()), (h, h.inverse())]
    names = [g.name, h.name]
    n = g.alphabet.size
    configs = pattern_probes([g, h], n) + probe_configurations(n, seed, probes)
    ident = identity_code(n)
    report = RelationReport(names, max_len)
    for w in reduced_words(2, max_len):
        text = " ".join(names[i] + ("" if e == 1 else "⁻¹") for i, e in w)
        code = compose_all(gens[i][0] if e == 1 else gens[i][1] for i, e in w)
        entry = {"word": text, "length": len(w)}
        for x in configs:
            if apply_code(code, x) != x:
                entry.update(verdict="nontrivial", witness=repr(x))
                break
        else:
            # w = A·B is the identity iff A == B⁻¹; both sides are half as deep
            letters = [gens[i][0] if e == 1 else gens[i][1] for i, e in w]
            half = (len(letters) + 1) // 2
            head = compose_all(letters[:half])
            tail_inv = compose_all(letters[half:]).inverse() if len(letters) > 1 else ident
            try:
                cmp = compare_codes(head, tail_inv, budget=budget, seed=seed)
            except WindowTooLarge:
                entry.update(verdict="unresolved", reason=f"budget {budget} exhausted")
            else:
                if cmp.equal:
                    entry.update(verdict="trivial", proof=f"exhaustive rule comparison at radius {cmp.radius}")
                else:
                    # head(x) != tail⁻¹(x) at 0, so y = tail⁻¹(x) is moved by the word
                    y = apply_code(tail_inv, window_config(cmp.window, cmp.radius))
                    if apply_code(code, y) == y:
                        raise AssertionError(f"separating window for {text} does not move {y}")
                    entry.update(verdict="nontrivial", witness=repr(y))
        report.words.append(entry)
    return report


def default_free_pair(alphabet=2):
    """``p = g_2 g_3`` and ``q = g_3 g_4``."""
    g2, g3, g4 = (compile_scheme(build_proximal_gk(k, alphabet)) for k in (2, 3, 4))
    p = compose_all([g2, g3])
    q = compose_all([g3, g4])
    p.name, q.name = "p", "q"
    return p, q


# ---------------------------------------------------------------------------
# faithfulness and the shift kernel


@dataclass
class FaithfulnessResult:
    kind: str  # "shift" or "moved"
    shift: Optional[int] = None
    omega: Optional[OmegaPoint] = None
    image: Optional[OmegaPoint] = None

    def to_dict(self):
        if self.kind == "shift":
            return {"kind": "shift", "m": self.shift}
        return {"kind": "moved", "omega": repr(self.omega), "image": repr(self.image)}


def _candidate_windows(g: SlidingBlockCode1D, budget: int):
    if isinstance(g, MarkerCode):
        for rule in g.scheme.rules:
            for d in rule.data:
                yield rule.pattern(d)
    try:
        cmp = compare_codes(g, identity_code(g.alphabet), budget=budget)
    except WindowTooLarge:
        cmp = None
    if cmp is not None and not cmp.equal:
        yield cmp.window


def faithfulness_witness(g: SlidingBlockCode1D, budget: int = 1_000_000, random_tries: int = 2000,
                         seed: int = 0) -> FaithfulnessResult:
    """A boundary point moved by ``g``, or the shift exponent when ``g`` is a shift."""
    m = is_shift_1d(g, budget)
    if m is not None:
        return FaithfulnessResult("shift", shift=m)
    n = g.alphabet.size

    def attempt(omega):
        try:
            img = act_omega(g, omega)
        except ImageDegenerate:
            return None
        return None if img == omega else FaithfulnessResult("moved", omega=omega, image=img)

    for w in _candidate_windows(g, budget):
        w = tuple(w)
        for c in range(n):
            if c == w[0]:
                continue
            for t in range(n):
                found = attempt(OmegaPoint((c,) + w, (t,)))
                if found:
                    return found
    rng = random.Random(seed)
    for _ in range(random_tries):
        a = rng.randrange(n)
        found = attempt(random_omega(rng, a, n, max_prefix=max(8, 2 * g.radius + 2)))
        if found:
            return found
    raise SearchExhausted(f"no moved point for {g.name} (budget {budget}, {random_tries} random tries)")


def kernel_check(points, alphabet, max_shift: int = 5) -> dict:
    """``act_omega(σ^m, ω) == ω`` for every point and ``|m| <= max_shift``."""
    failures = []
    for m in range(-max_shift, max_shift + 1):
        s = shift_code(alphabet, m)
        for p in points:
            if act_omega(s, p) != p:
                failures.append({"m": m, "omega": repr(p)})
    return {"max_shift": max_shift, "points": len(points), "failures": failures, "ok": not failures}


def default_panel(alphabet) -> list:
    """Bundled automata for the faithfulness check; ``σ^3`` belongs to the kernel."""
    alphabet = as_alphabet(alphabet)
    n = alphabet.size
    g2 = compile_scheme(build_proximal_gk(2, n))
    g3 = compile_scheme(build_proximal_gk(3, n))
    panel = [g2, g3, compose_all([g2, g3])]
    panel[-1].name = "g_2·g_3"
    swap = PermutationCode(swap_perm(n, 0, 1))
    swap.name = "swap(0,1)"
    panel.append(swap)
    rng = random.Random(7)
    src = random_bar_point(rng, n, 4)
    dst = random_bar_point(rng, n, 4)
    panel.append(minimal_code(3, src, dst))
    if n >= 4:
        hed = MarkerScheme(n, [MarkerRule.swap("000", "111", "2332", "3223")], name="hedlund")
        panel.append(compile_scheme(hed))
    panel.append(shift_code(n, 3))
    return panel


def boundary_report(alphabet=2, seed: int = 0, pairs: int = 5, k_max: int = 4, prox_k=(3, 6), prox_m=(1, 2),
                    budget: int = 8, panel=None) -> dict:
    """Minimality, proximality, measure collapse, kernel and faithfulness in one document."""
    alphabet = as_alphabet(alphabet)
    n = alphabet.size
    rng = random.Random(seed)
    sections = {}

    mins = []
    for _ in range(pairs):
        x, y = random_bar_point(rng, n), random_bar_point(rng, n)
        for k in range(1, k_max + 1):
            res = minimality_check(k, x, y)
            mins.append({"source": [repr(p) for p in x], "target": [repr(p) for p in y], **res})
    sections["minimality"] = {"checks": mins, "ok": all(c["ok"] for c in mins)}

    prox = proximality_experiment(range(prox_m[0], prox_m[1] + 1), range(prox_k[0], prox_k[1] + 1), alphabet)
    sections["proximality"] = prox.to_dict()

    atoms = [random_bar_point(rng, n, 5) for _ in range(3)]
    weights = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
    mu = FiniteMeasure(tuple(zip(atoms, weights)))
    try:
        coll = measure_collapse(mu, budget)
    except (CollapseFailed, SearchExhausted) as exc:
        coll = {"success": False, "error": str(exc)}
    sections["measure_collapse"] = {**coll, "ok": coll["success"]}

    points = [p for atom in atoms for p in atom] + [BASE_POINT]
    sections["kernel"] = kernel_check(points, n)

    panel = default_panel(n) if panel is None else panel
    rows = []
    for g in panel:
        try:
            res = faithfulness_witness(g, seed=seed)
            row = {"automaton": g.name, **res.to_dict(), "ok": True}
            if res.kind == "shift":
                row["classification"] = "kernel"
        except SearchExhausted as exc:
            row = {"automaton": g.name, "kind": "failure", "reason": str(exc), "ok": False}
        rows.append(row)
    sections["faithfulness"] = {"panel": rows, "ok": all(r["ok"] for r in rows)}

    ok = all(sec["ok"] for sec in sections.values())
    return {"alphabet": n, "seed": seed, "sections": sections, "ok": ok}
