"""Command-line front end.

Every subcommand builds one report document with the keys ``command``,
``params``, ``seed``, ``results``, ``verdict``, ``witnesses``, ``truncation``
and ``runtime_ms``.  ``--json`` prints it verbatim; otherwise a short text
rendering is printed.  Exit status: 0 when every verdict passes, 1 when one
fails, 2 on usage or parse errors.

Codes are written as products ``a*b*c`` (rightmost applied first) of

    shift:M          σ^M
    perm:1,0,2       cellwise symbol permutation
    prox:K[:A]       proximality element g_K, moved to Ω^A
    NAME or PATH     a scheme file (bundled schemes are found by name)

and any factor may carry a trailing ``^-1``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import boundary, lattice
from .codes import (
    PermutationCode,
    act_omega,
    apply_code,
    compose_all,
    identity_code,
    is_shift_1d,
    shift_code,
)
from .dsl import parse_biconfig, parse_omega, parse_scheme
from .errors import AutShiftError, DSLError, InvariantViolation
from .markers import compile_scheme, verify_scheme
from .symbolic import BarOmegaPoint, word_str

DATA = resources.files("autshift") / "data"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# resolving inputs


def resolve_path(name: str) -> Path:
    """A file on disk, else the bundled file with the same base name."""
    p = Path(name)
    if p.is_file():
        return p
    for candidate in (p.name, p.name + ".scheme"):
        bundled = DATA / candidate
        if bundled.is_file():
            return Path(str(bundled))
    raise UsageError(f"no such file: {name}")


def read_scheme(name: str):
    path = resolve_path(name)
    return parse_scheme(path.read_text(), name=path.stem)


def bundled_files() -> list:
    return sorted(p.name for p in DATA.iterdir() if p.is_file())


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"expected N or A..B, got {text!r}") from None


def _factor(token: str, alphabet):
    invert = token.endswith("^-1")
    if invert:
        token = token[:-3]
    kind, _, arg = token.partition(":")
    if kind == "shift" and arg:
        code = shift_code(alphabet or 2, int(arg))
    elif kind == "id" and not arg:
        code = identity_code(alphabet or 2)
    elif kind == "perm" and arg:
        code = PermutationCode([int(s) for s in arg.split(",")])
    elif kind == "prox" and arg:
        parts = arg.split(":")
        target = int(parts[1]) if len(parts) > 1 else 0
        code = boundary.proximal_code(int(parts[0]), alphabet or 2, target=target)
    else:
        code = compile_scheme(read_scheme(token))
    return code.inverse() if invert else code


def infer_alphabet(spec: str):
    """Alphabet size fixed by the first scheme or permutation factor, if any."""
    for t in (t.strip().removesuffix("^-1") for t in spec.split("*")):
        kind, _, arg = t.partition(":")
        if kind == "perm":
            return len(arg.split(","))
        if kind not in ("shift", "prox", "id"):
            return read_scheme(t).alphabet.size
    return None


def parse_code_spec(spec: str, alphabet=None):
    """Product of factors; the alphabet comes from ``alphabet`` or the first scheme factor."""
    tokens = [t.strip() for t in spec.split("*") if t.strip()]
    if not tokens:
        raise UsageError("empty code spec")
    if alphabet is None:
        alphabet = infer_alphabet(spec)
    codes = [_factor(t, alphabet) for t in tokens]
    sizes = {c.alphabet.size for c in codes}
    if len(sizes) > 1:
        raise UsageError(f"factors of {spec!r} use different alphabets {sorted(sizes)}")
    code = compose_all(codes)
    if len(codes) > 1:
        code.name = spec
    return code


def read_bar_point(name: str) -> BarOmegaPoint:
    path = resolve_path(name)
    lines = [ln.split("#", 1)[0].strip() for ln in path.read_text().splitlines()]
    points = [parse_omega(ln) for ln in lines if ln]
    try:
        return BarOmegaPoint(tuple(points))
    except InvariantViolation as exc:
        raise UsageError(f"{name}: {exc}") from exc


def read_measure(name: str) -> boundary.FiniteMeasure:
    path = resolve_path(name)
    doc = json.loads(path.read_text())
    atoms = []
    for atom in doc["atoms"]:
        pt = BarOmegaPoint(tuple(parse_omega(s) for s in atom["point"]))
        atoms.append((pt, Fraction(atom["weight"])))
    return boundary.FiniteMeasure(tuple(atoms))


def parse_zd_spec(spec: str, alphabet: int, d: int):
    """``cross``, ``shift:1,-2``, a JSON descriptor, or a product of those."""
    codes = []
    for token in (t.strip() for t in spec.split("*")):
        kind, _, arg = token.partition(":")
        if kind == "cross" and not arg:
            codes.append(lattice.build_cross_swap(alphabet, d))
        elif kind == "shift" and arg:
            t = tuple(int(c) for c in arg.split(","))
            if len(t) != d:
                raise UsageError(f"shift {t} does not have {d} coordinates")
            codes.append(lattice.ZdShift(alphabet, t))
        else:
            desc = json.loads(resolve_path(token).read_text())
            if desc.get("builder") != "cross_swap":
                raise UsageError(f"unknown builder in {token}")
            if desc["alphabet"] != alphabet or desc["d"] != d:
                raise UsageError(f"{token} needs --alphabet {desc['alphabet']} --d {desc['d']}")
            codes.append(lattice.build_cross_swap(desc["alphabet"], desc["d"]))
    code = codes[-1]
    for c in reversed(codes[:-1]):
        code = lattice.compose_zd(c, code)
    return code


# ---------------------------------------------------------------------------
# subcommands; each returns (results, verdict_ok, witnesses, truncation)


def cmd_verify(args):
    scheme = read_scheme(args.scheme)
    verdict = verify_scheme(scheme)
    res = {"scheme": scheme.name, "alphabet": scheme.alphabet.size, "rules": len(scheme.rules), **verdict.to_dict()}
    witnesses = [word_str(verdict.witness)] if verdict.witness else []
    return [res], verdict.ok, witnesses, None


def cmd_apply(args):
    code = parse_code_spec(args.code, args.alphabet)
    x = parse_biconfig(args.config, code.alphabet.size)
    y = apply_code(code, x)
    return [{"code": code.name, "input": repr(x), "output": repr(y)}], True, [], None


def cmd_act(args):
    code = parse_code_spec(args.code, args.alphabet)
    omega = parse_omega(args.omega, code.alphabet.size)
    img = act_omega(code, omega)
    return [{"code": code.name, "input": repr(omega), "output": repr(img), "moved": img != omega}], True, [], None


def cmd_proximality(args):
    rep = boundary.proximality_experiment(_parse_range(args.m), _parse_range(args.k), args.alphabet, depth=args.depth)
    doc = rep.to_dict()
    witnesses = [w for row in rep.rows for w in row["witnesses"]]
    trunc = {"depth": args.depth if args.depth is not None else "m+4", "tails": doc["truncation"]["tails"], "skipped": doc["skipped"]}
    return rep.rows, rep.ok, witnesses, trunc


def cmd_minimality(args):
    x, y = read_bar_point(args.source), read_bar_point(args.target)
    res = boundary.minimality_check(args.k, x, y)
    res["source"] = [repr(p) for p in x]
    res["target"] = [repr(p) for p in y]
    return [res], res["ok"], [], {"depth": args.k + 1}


def cmd_collapse(args):
    mu = read_measure(args.measure)
    res = boundary.measure_collapse(mu, args.budget)
    return [res], res["success"], [], {"budget": args.budget}


def cmd_freeness(args):
    n = args.alphabet or infer_alphabet(args.g) or infer_alphabet(args.h)
    g = parse_code_spec(args.g, n)
    h = parse_code_spec(args.h, n)
    rep = boundary.relation_search(g, h, args.max_len, seed=args.seed)
    doc = rep.to_dict()
    relations = [w["word"] for w in rep.words if w["verdict"] == "trivial"]
    res = {
        "g": g.name,
        "h": h.name,
        "counts": doc["counts"],
        "relations": relations,
        "free_up_to_length": not relations and rep.count("unresolved") == 0,
        "words": doc["words"],
    }
    witnesses = sorted({w["witness"] for w in rep.words if w.get("witness")})
    return [res], rep.count("unresolved") == 0, witnesses, {"max_len": args.max_len}


def cmd_zd(args):
    if args.zd_cmd == "norm":
        value, wit = lattice.min_norm_uk(args.d, args.k, args.bound)
        oracle = lattice.min_norm_uk_bruteforce(args.d, args.k, value)
        res = {"d": args.d, "k": args.k, "bound": args.bound, "value": value, "witness": list(wit),
               "oracle": oracle, "at_least_k": value >= args.k}
        return [res], oracle == value and value >= args.k, [list(wit)], {"coeff_bound": args.bound}
    if args.zd_cmd == "threshold":
        inj = lattice.coset_injectivity_threshold(args.d, args.k, args.rho_max)
        oracle = lattice.injectivity_threshold_bruteforce(args.d, args.k, args.rho_max)
        basis = lattice.basis_mk(args.d, args.k)
        in_uk = all(lattice.in_sublattice(tuple(a - b for a, b in zip(p, q)), basis) for p, q in inj.witnesses.values())
        res = {**inj.to_dict(), "oracle": oracle, "witnesses_in_uk": in_uk}
        wit = [[list(p), list(q)] for p, q in inj.witnesses.values()][:3]
        return [res], oracle == inj.threshold and in_uk, wit, {"rho_max": args.rho_max}
    g = parse_zd_spec(args.code, args.alphabet, args.d)
    if args.zd_cmd == "phik":
        h = lattice.phi_k(g, lattice.basis_mk(args.d, args.k))
        from .codes import minimal_radius

        red = minimal_radius(h)
        res = {"code": g.name, "k": args.k, "radius_bound": h.radius, "minimal_radius": red.radius,
               "shift": is_shift_1d(h)}
        return [res], True, [], None
    res = lattice.radical_reduction_check(g, k=args.k)
    res["code"] = g.name
    return [res], True, [], None


def cmd_report(args):
    rep = boundary.boundary_report(args.alphabet, seed=args.seed, pairs=args.pairs, k_max=args.k_max)
    return [rep], rep["ok"], [], {"pairs": args.pairs, "k_max": args.k_max}


def cmd_list(args):
    return [{"bundled": bundled_files()}], True, [], None


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="record runtime_ms (breaks byte determinism)")

    ap = argparse.ArgumentParser(prog="autshift", description=__doc__.split("\n\n")[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the overlap conditions of a scheme")
    p.add_argument("scheme")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("apply", parents=[common], help="apply a code to a configuration literal")
    p.add_argument("code")
    p.add_argument("--config", required=True)
    p.add_argument("--alphabet", type=int)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("act", parents=[common], help="act on a boundary point literal")
    p.add_argument("code")
    p.add_argument("--omega", required=True)
    p.add_argument("--alphabet", type=int)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("proximality", parents=[common], help="g_k on enumerated C_m samples")
    p.add_argument("--k", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=cmd_proximality)

    p = sub.add_parser("minimality", parents=[common], help="steer a transversal towards another")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_minimality)

    p = sub.add_parser("collapse", parents=[common], help="push a finite measure towards a point mass")
    p.add_argument("--measure", required=True)
    p.add_argument("--budget", type=int, default=8)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("freeness", parents=[common], help="search relations between two codes")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--alphabet", type=int)
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("zd", parents=[common], help="lattice reduction for Z^d automata")
    zsub = p.add_subparsers(dest="zd_cmd", required=True)
    z = zsub.add_parser("norm", parents=[common])
    z.add_argument("--d", type=int, default=2)
    z.add_argument("--k", type=int, required=True)
    z.add_argument("--bound", type=int, default=8)
    z = zsub.add_parser("threshold", parents=[common])
    z.add_argument("--d", type=int, default=2)
    z.add_argument("--k", type=int, required=True)
    z.add_argument("--rho-max", type=int)
    for name in ("phik", "reduce"):
        z = zsub.add_parser(name, parents=[common])
        z.add_argument("code", help="cross, shift:1,-2, a descriptor file, or a product")
        z.add_argument("--d", type=int, default=2)
        z.add_argument("--alphabet", type=int, default=3)
        z.add_argument("--k", type=int, required=(name == "phik"))
    p.set_defaults(func=cmd_zd)

    p = sub.add_parser("report", parents=[common], help="combined boundary report")
    p.add_argument("what", choices=["boundary"])
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--pairs", type=int, default=5)
    p.add_argument("--k-max", type=int, default=4)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("list", parents=[common], help="list bundled data files")
    p.set_defaults(func=cmd_list)
    return ap


def _params(args) -> dict:
    skip = {"func", "json", "seed", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _text(doc) -> str:
    lines = [f"{doc['command']}: {doc['verdict']}"]
    for res in doc["results"]:
        parts = []
        for key, val in res.items():
            if isinstance(val, (list, dict)) and len(json.dumps(val)) > 80:
                val = f"<{len(val)} entries>"
            parts.append(f"{key}={val}")
        lines.append("  " + " ".join(parts))
    for w in doc["witnesses"]:
        lines.append(f"  witness: {w}")
    return "\n".join(lines)


def run(argv=None) -> tuple:
    """Parse ``argv`` and return ``(exit_code, document, as_json)``."""
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "zd" and args.zd_cmd == "threshold" and args.rho_max is None:
        args.rho_max = args.k
    random.seed(args.seed)
    start = time.perf_counter()
    results, ok, witnesses, trunc = args.func(args)
    elapsed = (time.perf_counter() - start) * 1000
    command = args.command if args.command != "zd" else f"zd {args.zd_cmd}"
    doc = {
        "command": command,
        "params": _params(args),
        "seed": args.seed,
        "results": results,
        "verdict": "pass" if ok else "fail",
        "witnesses": witnesses,
        "truncation": trunc,
        "runtime_ms": round(elapsed, 3) if args.timing else None,
    }
    return (0 if ok else 1), doc, args.json


def main(argv=None) -> int:
    try:
        code, doc, as_json = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except (UsageError, DSLError, InvariantViolation, ValueError, OSError) as exc:
        err = {"error": getattr(exc, "code", "usage"), "message": str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return 2
    except AutShiftError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 1
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=False, default=str))
    else:
        print(_text(doc))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
