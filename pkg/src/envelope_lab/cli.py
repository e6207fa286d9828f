"""Command-line front end: envelope-lab {weights, stab, rmatrix, newton, verify}."""

import argparse
import json
import sys
from fractions import Fraction

from .combinatorics import (
    AlcovePoint,
    IntegerDifference,
    LambdaShape,
    PartitionIndex,
    Permutation,
    compositions,
    enumerate_indices,
)

DEFAULTS = {"max_n": 4, "max_N": 3, "seed": 0, "tau": None, "alcoves_per_shape": 5}


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------ parsing

def parse_shape(text):
    try:
        lam = [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"--lambda expects comma-separated integers, got {text!r}")
    if any(x < 0 for x in lam) or not lam:
        raise ConfigError("--lambda entries must be nonnegative")
    return LambdaShape(lam)


def parse_alcove(text, N=None):
    try:
        nu = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--nu expects rationals such as 0,1/3, got {text!r}")
    if N is not None and len(nu) != N:
        raise ConfigError(f"--nu needs {N} entries, got {len(nu)}")
    try:
        return AlcovePoint(nu)
    except IntegerDifference as exc:
        raise ConfigError(f"--nu lies on a wall: {exc}; perturb one entry by a non-integer amount")


def parse_sigma(text, n):
    try:
        s = Permutation.parse(text, n)
    except ValueError as exc:
        raise ConfigError(f"--sigma: {exc}")
    if s.n != n:
        raise ConfigError(f"--sigma must permute 1..{n}")
    return s


def parse_index(text, shape):
    """A partition index as JSON blocks, or a label Ik counting in enumeration order."""
    text = text.strip()
    idx = enumerate_indices(shape)
    if text[:1] in "Ii" and text[1:].isdigit():
        k = int(text[1:])
        if not 1 <= k <= len(idx):
            raise ConfigError(f"index label {text} out of range 1..{len(idx)}")
        return idx[k - 1]
    try:
        I = PartitionIndex(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse index {text!r}: {exc}")
    if I not in idx:
        raise ConfigError(f"index {text} does not have shape {list(shape.lam)}")
    return I


def parse_tau(text):
    if text is None:
        return None
    try:
        tau = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ConfigError(f"--tau expects a complex number such as 0.3i or 0.1+0.9i, got {text!r}")
    if tau.imag <= 0:
        raise ConfigError("--tau needs a positive imaginary part")
    return tau


def load_config(args):
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"--config: {exc}")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"--config: unknown keys {sorted(unknown)}")
        cfg.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["tau"] = parse_tau(cfg["tau"]) if isinstance(cfg["tau"], str) else cfg["tau"]
    if cfg["max_n"] < 1 or cfg["max_N"] < 1:
        raise ConfigError("--max-n and --max-N must be positive")
    return cfg


# ------------------------------------------------------------ output

def emit(text, out):
    if out:
        from .reports import write_atomic

        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ------------------------------------------------------------ commands

def cmd_weights(args):
    from .trig import trig_weight_symbolic, weight_at, weight_tilde_at

    shape = parse_shape(args.lam)
    alcove = parse_alcove(args.nu, shape.N)
    sigma = parse_sigma(args.sigma, shape.n)
    targets = [parse_index(args.I, shape)] if args.I else list(enumerate_indices(shape))
    out = {"shape": list(shape.lam), "nu": alcove.to_json(), "sigma": sigma.to_json(), "weights": []}
    for I in targets:
        entry = {"I": I.to_json()}
        if args.at:
            Js = list(enumerate_indices(shape)) if args.at == "all" else [parse_index(args.at, shape)]
            entry["restrictions"] = [
                {"J": J.to_json(), "W": str(weight_at(I, J, alcove, sigma)), "W_tilde": str(weight_tilde_at(I, J, alcove, sigma))}
                for J in Js
            ]
        else:
            W, Wt = trig_weight_symbolic(I, alcove, sigma)
            entry["W"] = W.to_string() if W.dens else str(W)
            if args.tilde:
                entry["W_tilde"] = Wt.to_string()
        out["weights"].append(entry)
    if args.format == "text":
        lines = []
        for e in out["weights"]:
            lines.append(f"I = {e['I']}")
            for k in ("W", "W_tilde"):
                if k in e:
                    lines.append(f"  {k} = {e[k]}")
            for r in e.get("restrictions", []):
                lines.append(f"  J = {r['J']}: W = {r['W']}")
        emit("\n".join(lines) + "\n", args.out)
    else:
        emit(dump(out), args.out)
    return 0


def cmd_stab(args):
    from .ktheory import LocalizationClass, axioms_check, gluing_check, stab_matrix

    shape = parse_shape(args.lam)
    alcove = parse_alcove(args.nu, shape.N)
    sigma = parse_sigma(args.sigma, shape.n)
    A = stab_matrix(sigma, alcove, shape)
    targets = [parse_index(args.I, shape)] if args.I else A.indices
    out = {"shape": list(shape.lam), "nu": alcove.to_json(), "sigma": sigma.to_json(), "classes": []}
    status = 0
    for I in targets:
        c = LocalizationClass(shape, A.column(I))
        entry = {"I": I.to_json(), **c.to_json()}
        if args.check:
            ax = axioms_check(sigma, I, alcove, c)
            gl = gluing_check(c)
            entry["axioms_ok"] = ax["ok"]
            entry["gluing_ok"] = gl["ok"]
            if not (ax["ok"] and gl["ok"]):
                status = 1
        out["classes"].append(entry)
    emit(dump(out), args.out)
    return status


def cmd_rmatrix(args):
    from .ktheory import geometric_r

    if args.lam:
        shapes = [parse_shape(args.lam)]
        n, N = shapes[0].n, shapes[0].N
    else:
        if args.n is None or args.N is None:
            raise ConfigError("rmatrix needs --lambda or both --n and --N")
        n, N = args.n, args.N
        shapes = [LambdaShape(lam) for lam in compositions(n, N)]
    alcove = parse_alcove(args.nu, N)
    s2 = parse_sigma(args.sigma2, n)
    s1 = parse_sigma(args.sigma, n)
    entries = []
    for shape in shapes:
        R = geometric_r(s2, s1, alcove, shape, normalized=not args.unnormalized)
        for (J, I), v in sorted(R.items(), key=lambda kv: (kv[0][1].word, kv[0][0].word)):
            if not v.is_zero():
                entries.append({"upper": list(I.word), "lower": list(J.word), "value": v.to_string()})
    out = {"n": n, "N": N, "nu": alcove.to_json(), "sigma2": s2.to_json(), "sigma": s1.to_json(),
           "normalized": not args.unnormalized, "entries": entries}
    emit(dump(out), args.out)
    return 0


def cmd_newton(args):
    from .polytopes import O, polytope_subset, svg_projection

    shape = parse_shape(args.lam)
    alcove = parse_alcove(args.nu, shape.N)
    try:
        left, right = args.pair.split(",", 1) if not args.pair.strip().startswith("[") else json.loads(args.pair)
    except ValueError:
        raise ConfigError("--pair expects I,J as labels (I1,I2) or a JSON pair of indices")
    I = parse_index(left if isinstance(left, str) else json.dumps(left), shape)
    J = parse_index(right if isinstance(right, str) else json.dumps(right), shape)
    A = O(I, J, alcove)
    B = O(J, J, alcove)
    ok, wit = polytope_subset(A, B) if not A.is_empty() else (True, None)
    try:
        axes = tuple(int(x) for x in args.project.split(","))
    except ValueError:
        raise ConfigError("--project expects two coordinates such as 1,2")
    if len(axes) != 2 or not all(1 <= a <= shape.n for a in axes):
        raise ConfigError(f"--project needs two coordinates in 1..{shape.n}")
    svg = svg_projection([B, A], axes, labels=[f"O(J,J) J={J}", f"O(I,J) I={I}"])
    if args.plot:
        from .reports import write_atomic

        write_atomic(args.plot, svg)
    if args.format == "svg":
        emit(svg, args.out)
    elif args.format == "csv":
        emit("# O(I,J)\n" + A.to_csv() + "# O(J,J)\n" + B.to_csv(), args.out)
    else:
        out = {"shape": list(shape.lam), "nu": alcove.to_json(), "I": I.to_json(), "J": J.to_json(),
               "O_IJ": A.to_json(), "O_JJ": B.to_json(), "contained": ok,
               "witness": [str(x) for x in wit] if wit else None}
        emit(dump(out), args.out)
    return 0 if ok else 1


def cmd_verify(args):
    from .reports import failures, make_report, to_json, to_text
    from .suites import SUITES, run_suites

    cfg = load_config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names, cfg)
    shown = dict(cfg)
    shown["tau"] = None if cfg["tau"] is None else str(cfg["tau"])
    shown["suites"] = names
    shown["strict"] = bool(args.strict)
    report = make_report(shown, checks)
    emit(to_json(report), args.out)
    if args.text:
        emit(to_text(report), args.text if args.text != "-" else None)
    return 1 if failures(report, args.strict) else 0


# ------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="envelope-lab", description="Weight functions, stable envelopes and their checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sigma=True):
        sp.add_argument("--lambda", dest="lam", required=True, help="shape, e.g. 1,2")
        sp.add_argument("--nu", required=True, help="alcove point, e.g. 0,1/3")
        if sigma:
            sp.add_argument("--sigma", default="id", help="id, w0 or one-line notation")
        sp.add_argument("--out", help="output file (default stdout)")

    w = sub.add_parser("weights", help="trigonometric weight functions")
    common(w)
    w.add_argument("--I", help="index as JSON blocks or label Ik (default: all)")
    w.add_argument("--at", help="substitute t = z_J (JSON, label or 'all')")
    w.add_argument("--tilde", action="store_true", help="also print W~ = W/E")
    w.add_argument("--format", choices=["json", "text"], default="json")
    w.set_defaults(func=cmd_weights)

    s = sub.add_parser("stab", help="stable envelope restrictions")
    common(s)
    s.add_argument("--I", help="index (default: all)")
    s.add_argument("--check", action="store_true", help="run axioms and gluing checks")
    s.set_defaults(func=cmd_stab)

    r = sub.add_parser("rmatrix", help="geometric R-matrix Stab_{sigma2}^{-1} Stab_sigma")
    r.add_argument("--n", type=int)
    r.add_argument("--N", type=int)
    r.add_argument("--lambda", dest="lam")
    r.add_argument("--nu", required=True)
    r.add_argument("--sigma2", default="w0")
    r.add_argument("--sigma", default="id")
    r.add_argument("--unnormalized", action="store_true", help="drop the h^{codim/2} factors")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rmatrix)

    nw = sub.add_parser("newton", help="Newton polytopes O(I,J) and O(J,J)")
    common(nw, sigma=False)
    nw.add_argument("--pair", required=True, help="I,J as labels or JSON")
    nw.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    nw.add_argument("--plot", help="also write an SVG projection here")
    nw.add_argument("--project", default="1,2", help="coordinates for the SVG projection")
    nw.set_defaults(func=cmd_newton)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=["trig", "newton", "ktheory", "elliptic", "all"], default="all")
    v.add_argument("--max-n", dest="max_n", type=int)
    v.add_argument("--max-N", dest="max_N", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--tau")
    v.add_argument("--alcoves-per-shape", dest="alcoves_per_shape", type=int)
    v.add_argument("--config", help="JSON file with the same keys as the flags")
    v.add_argument("--strict", action="store_true", help="count documented deviations as failures")
    v.add_argument("--out", help="JSON report path (default stdout)")
    v.add_argument("--text", help="also write a text summary here ('-' for stdout)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"envelope-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
