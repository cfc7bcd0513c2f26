"""Command-line front end: ``cliffhopf <command> ...``.

Exit status: 0 on success, 1 when a must_pass check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import conformal as conf
from .hopfalg import COPRODUCT_MODES, PRODUCT_MODES, TensorElement, hopf_check
from .kappagen import (
    BASIS_KINDS,
    ORIENTATIONS,
    SUITE_NAMES,
    RelationSuite,
    generator_set,
    suite as builtin_suite,
)
from .mvcore import CL13, DEFAULT_TOL, AlgebraError, Multivector, Signature, preset
from .qdeform import Deformation
from .relcheck import DEFORM_MODES, EvalEnv, evaluate, family, fit, run
from .relcheck.parser import ExprSyntaxError

CONFIG_ENV = "CLIFFHOPF_CONFIG"
TOL_ENV = "CLIFFHOPF_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors as one JSON line when --json is on the command line."""

    json_errors = False

    def error(self, message):
        if _Parser.json_errors:
            sys.stderr.write(json.dumps({"error": "usage", "message": message}) + "\n")
            raise SystemExit(2)
        super().error(message)


def _config_path() -> Path:
    if os.environ.get(CONFIG_ENV):
        return Path(os.environ[CONFIG_ENV])
    base = os.environ.get("XDG_CONFIG_HOME") or os.path.join(os.path.expanduser("~"), ".config")
    return Path(base) / "cliffhopf" / "config.json"


def load_config() -> dict:
    """Defaults from the config file, then CLIFFHOPF_TOL; command-line flags win over both."""
    cfg: dict = {}
    path = _config_path()
    if path.is_file():
        try:
            cfg.update(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad config file {path}: {exc}") from None
    if os.environ.get(TOL_ENV):
        try:
            cfg["tol"] = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} must be a number") from None
    return cfg


def parse_signature(text: str) -> Signature:
    text = text.strip()
    if text.lower() in ("cl13", "cl30", "cl41", "cl24"):
        return preset(text.lower())
    try:
        diag = [int(v) for v in text.strip("[]").split(",")]
    except ValueError:
        raise UsageError(f"signature must be a preset or a comma list of +1/-1, not {text!r}") from None
    if not diag or any(v not in (1, -1) for v in diag):
        raise UsageError("signature entries must be +1 or -1")
    return Signature.from_diag(diag)


def parse_point(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"point must be 'x0,x1,x2,x3', not {text!r}") from None
    if len(vals) != 4:
        raise UsageError("point must have four coordinates")
    return vals


def _load_json_arg(text: str) -> dict:
    """Inline JSON, or the path of a JSON file."""
    s = text.strip()
    try:
        if s.startswith("{"):
            return json.loads(s)
        return json.loads(Path(s).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from None


def load_deformation(text: str | None, sig: Signature) -> Deformation | None:
    if not text:
        return None
    obj = _load_json_arg(text)
    try:
        d = Deformation.from_json(obj, sig)
    except (KeyError, ValueError, TypeError, AlgebraError) as exc:
        raise UsageError(f"bad deformation: {exc}") from None
    if d.sig != sig:
        raise UsageError("deformation signature does not match")
    return d


def load_suite(ref: str, kappa: float | None) -> RelationSuite:
    if ref in SUITE_NAMES:
        return builtin_suite(ref, kappa)
    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"{ref!r} is neither a built-in suite ({', '.join(SUITE_NAMES)}) nor a file")
    obj = _load_json_arg(ref)
    try:
        s = RelationSuite.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad suite file: {exc}") from None
    if kappa is not None:
        s = RelationSuite(s.name, s.relations, {**s.parameters, "kappa": kappa}, s.basis)
    return s


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".15g")


def _value_json(v):
    if isinstance(v, complex):
        return {"scalar": [v.real, v.imag]}
    if isinstance(v, TensorElement):
        return {"tensor": v.to_json()}
    out = {}
    for m, c in sorted(v.terms.items()):
        out[v.blade_label(m) or "1"] = [c.real, c.imag]
    return {"multivector": out}


def _value_text(v) -> str:
    if isinstance(v, complex):
        return str(Multivector.scalar(CL13, v)) if v != 0 else "0"
    return str(v)


def _env_for(args, cfg: dict, sig: Signature, basis: str | None, kappa: float | None) -> EvalEnv:
    gens = None
    if basis is not None:
        if sig != CL13:
            raise UsageError("generator sets live in cl13")
        gens = generator_set(basis, kappa, args.orientation)
    d = load_deformation(getattr(args, "deform", None), sig)
    return EvalEnv(sig, gens, d, args.mode, kappa, args.braiding, args.coproduct, args.tol)


# --- commands -------------------------------------------------------------------------------

def cmd_eval(args, cfg, out) -> int:
    sig = parse_signature(args.sig)
    basis = args.basis
    if basis is None and sig == CL13:
        basis = "conformal" if args.kappa is None else "kappa"
    value = evaluate(args.expr, _env_for(args, cfg, sig, basis, args.kappa))
    if args.json:
        out.write(json.dumps({"expr": args.expr, "value": _value_json(value)}) + "\n")
    else:
        out.write(_value_text(value) + "\n")
    return 0


def cmd_verify(args, cfg, out) -> int:
    s = load_suite(args.suite, args.kappa)
    kappa = args.kappa if args.kappa is not None else s.parameters.get("kappa")
    if s.basis not in BASIS_KINDS:
        raise UsageError(f"unknown basis {s.basis!r} in suite")
    env = _env_for(args, cfg, CL13, s.basis, kappa)
    report = run(s, env)
    if args.json:
        out.write(report.dumps(timestamp=args.timestamp) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return 0 if report.ok else 1


def cmd_hopf(args, cfg, out) -> int:
    sig = parse_signature(args.sig)
    if sig.n > 6:
        raise UsageError("hopf-check supports at most 6 generators")
    res = hopf_check(sig, args.hopf_mode)
    worst = max(res.values())
    must = args.hopf_mode == "grassmann"
    ok = worst <= args.tol or not must
    if args.json:
        out.write(json.dumps({"signature": list(sig.diag), "mode": args.hopf_mode, "residuals": res,
                              "tolerance": args.tol, "ok": worst <= args.tol}) + "\n")
    else:
        for k, v in res.items():
            out.write(f"{k:<20} {v:.3e}\n")
        out.write(f"{'max':<20} {worst:.3e}  {'ok' if worst <= args.tol else 'violated'}\n")
    return 0 if ok else 1


def cmd_conformal(args, cfg, out) -> int:
    try:
        g = conf.map_from_json(_load_json_arg(args.map))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad map: {exc}") from None
    x = parse_point(args.x)
    if args.action == "apply":
        r = conf.mobius(g, x)
        coords = ",".join(_fmt(c) for c in r.x_prime.coords())
        if args.json:
            out.write(json.dumps({"x_prime": [float(c) for c in r.x_prime.coords()], "delta": r.delta}) + "\n")
        else:
            out.write(f"x' = {coords}\nDelta = {_fmt(r.delta)}\n")
        return 0
    lam, res = conf.conformality(g, x, args.step)
    if args.json:
        out.write(json.dumps({"lambda": lam, "residual": res, "step": args.step}) + "\n")
    else:
        out.write(f"lambda = {_fmt(lam)}\nresidual = {res:.3e}\n")
    return 0


def cmd_fit(args, cfg, out) -> int:
    s = load_suite(args.suite, args.kappa)
    kappa = args.kappa if args.kappa is not None else s.parameters.get("kappa")
    env = _env_for(args, cfg, CL13, s.basis if s.basis in BASIS_KINDS else None, kappa)
    fam = family(args.family, CL13, kappa)
    r = fit(s, env, fam, max_iter=args.max_iter, seed=args.seed, restarts=args.restarts)
    if args.json:
        out.write(json.dumps(r.to_json()) + "\n")
    else:
        out.write(f"objective = {r.objective:.6e}\niterations = {r.iterations}\nconverged = {r.converged}\nA =\n")
        for row in r.A:
            out.write("  " + "  ".join(f"{complex(v):.6g}" for v in row) + "\n")
    return 0


def cmd_export(args, cfg, out) -> int:
    s = builtin_suite(args.name, args.kappa)
    text = s.dumps() + "\n"
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text)
        if not args.json:
            out.write(f"wrote {len(s.relations)} relations ({s.row_count()} rows) to {args.output}\n")
    return 0


def build_parser(cfg: dict) -> argparse.ArgumentParser:
    tol_default = float(cfg.get("tol", DEFAULT_TOL))
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=tol_default, help=f"tolerance (default {tol_default:g})")

    alg = _Parser(add_help=False)
    alg.add_argument("--kappa", type=float, default=cfg.get("kappa"))
    alg.add_argument("--deform", metavar="FILE", default=cfg.get("deform"),
                     help='deformation JSON {"signature": [...], "A": [[...]]} (path or inline)')
    alg.add_argument("--mode", choices=DEFORM_MODES, default=cfg.get("mode", "product"),
                     help="where the deformation enters")
    alg.add_argument("--braiding", choices=PRODUCT_MODES, default=cfg.get("braiding", "graded"))
    alg.add_argument("--coproduct", choices=sorted(COPRODUCT_MODES), default="grassmann")
    alg.add_argument("--orientation", choices=ORIENTATIONS, default="mu_nu",
                     help="sign convention for M_{mu nu}")

    p = _Parser(prog="cliffhopf", description="Clifford-Hopf algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common, alg], help="evaluate an expression")
    e.add_argument("-e", "--expr", required=True)
    e.add_argument("--sig", default=cfg.get("sig", "cl13"))
    e.add_argument("--basis", choices=BASIS_KINDS, default=None)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", parents=[common, alg], help="run a relation suite")
    v.add_argument("suite", help=f"built-in name ({', '.join(SUITE_NAMES)}) or suite JSON file")
    v.add_argument("--timestamp", action="store_true", help="include a timestamp in JSON reports")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hopf-check", parents=[common], help="check the Hopf axioms on all blades")
    h.add_argument("--sig", default=cfg.get("sig", "cl13"))
    h.add_argument("--mode", dest="hopf_mode", choices=sorted(COPRODUCT_MODES), default="grassmann")
    h.set_defaults(func=cmd_hopf)

    c = sub.add_parser("conformal", parents=[common], help="apply a conformal map")
    c.add_argument("action", choices=("apply", "conformality"))
    c.add_argument("--map", required=True, help="map JSON (path or inline)")
    c.add_argument("-x", required=True, help='point "x0,x1,x2,x3"')
    c.add_argument("--step", type=float, default=1e-4, help="finite-difference step")
    c.set_defaults(func=cmd_conformal)

    f = sub.add_parser("fit", parents=[common, alg], help="search a deformation for a suite")
    f.add_argument("suite")
    f.add_argument("--family", choices=("default", "kappa", "real"), default="default")
    f.add_argument("--max-iter", type=int, default=2000)
    f.add_argument("--restarts", type=int, default=5)
    f.add_argument("--seed", type=int, default=int(cfg.get("seed", 0)))
    f.set_defaults(func=cmd_fit)

    x = sub.add_parser("export-suite", parents=[common], help="write a built-in suite as JSON")
    x.add_argument("name", choices=SUITE_NAMES)
    x.add_argument("-o", "--output", default=None)
    x.add_argument("--kappa", type=float, default=cfg.get("kappa"))
    x.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    as_json = "--json" in argv
    _Parser.json_errors = as_json

    def fail(kind: str, exc: Exception, code: int) -> int:
        if as_json:
            sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}) + "\n")
        else:
            sys.stderr.write(f"cliffhopf: {exc}\n")
        return code

    try:
        cfg = load_config()
        args = build_parser(cfg).parse_args(argv)
        return args.func(args, cfg, out)
    except SystemExit as exc:
        return int(exc.code or 0) if isinstance(exc.code, int) else 2
    except (UsageError, ExprSyntaxError) as exc:
        return fail("usage", exc, 2)
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        return fail("input", exc, 2)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stop writing quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
