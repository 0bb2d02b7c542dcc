"""Command-line entry point.  Every command prints one JSON report on stdout.

Exit status is 0 iff the report status is ``ok``; 1 for ``fail`` or
``unknown`` results of a computation; 2 for usage, file and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from ._parse import ParseError
from .classify import DEFAULT_MAX_DIM, classify_nilpotent
from .cohomology import (
    Cocycle,
    CocycleError,
    central_extension,
    cocycle_radical,
    independent_mod_coboundaries,
    schur_multiplier,
)
from .corpus import load_algebra, load_realization
from .fock import FockError, fock_check
from .lie.algebra import AlgebraError, validate
from .lie.isomorphism import No, Yes, isomorphic
from .lie.structure import center, classify_structure, derived_algebra, is_simple, nilradical
from .outcome import Unknown
from .scalars import format_scalar
from .weyl import DegreeExceeded, DimensionExceeded, RealizationError, format_weyl, lie_closure, verify_realization

REPORT_FORMAT = 1
BUDGET_ENV = "PSEUDOLIE_BUDGET"
FALLBACK_BUDGET = 20000


class UsageError(Exception):
    pass


class InputError(Exception):
    """Bad file, bad JSON or unparsable expression; exit status 2."""


@dataclass
class CommandReport:
    command: list
    status: str = "ok"
    payload: dict | None = None
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def to_json(self) -> dict:
        return {
            "pseudolie": __version__,
            "report_format": REPORT_FORMAT,
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return FALLBACK_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def _algebra(ref):
    try:
        return load_algebra(ref)
    except FileNotFoundError:
        raise InputError(f"file not found: {ref}") from None
    except (json.JSONDecodeError, ParseError, AlgebraError, ValueError) as e:
        raise InputError(f"{ref}: {e}") from None


def _realization(ref):
    try:
        return load_realization(ref)
    except FileNotFoundError as e:
        raise InputError(f"file not found: {e.args[0] if e.args else ref}") from None
    except (json.JSONDecodeError, ParseError, AlgebraError, RealizationError, ValueError, KeyError) as e:
        raise InputError(f"{ref}: {e}") from None


def _subspace(S, labels):
    return S.to_json(labels)


# -- commands ---------------------------------------------------------------


def cmd_validate(args, rep: CommandReport):
    L = _algebra(args.algebra)
    bad = validate(L)
    rep.payload = {"name": L.name, "dim": L.dim, "violations": bad}
    if bad:
        rep.status = "fail"
        rep.diagnostics.append(f"{len(bad)} Jacobi violation(s)")


def cmd_analyze(args, rep: CommandReport):
    L = _algebra(args.algebra)
    bad = validate(L)
    if bad:
        rep.status = "fail"
        rep.payload = {"name": L.name, "violations": bad}
        rep.diagnostics.append("not a Lie algebra; structure analysis skipped")
        return
    out = {"name": L.name}
    out.update(classify_structure(L).to_json())
    out["center"] = _subspace(center(L), L.labels)
    out["derived_algebra"] = _subspace(derived_algebra(L), L.labels)
    nr = nilradical(L)
    out["nilradical"] = nr.to_json() if isinstance(nr, Unknown) else _subspace(nr, L.labels)
    if L.is_parametric:
        rep.diagnostics.append("parametric algebra: results hold for generic parameter values "
                               "satisfying the declared constraints")
        out["simple"] = None
    else:
        s = is_simple(L)
        out["simple"] = s.to_json() if isinstance(s, Unknown) else s
    rep.payload = out


def cmd_multiplier(args, rep: CommandReport):
    L = _algebra(args.algebra)
    M = schur_multiplier(L)
    rep.payload = {"name": L.name, **M.to_json()}


def _theta_from_file(L, ref):
    try:
        data = json.loads(Path(ref).read_text())
    except FileNotFoundError:
        raise InputError(f"file not found: {ref}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{ref}: {e}") from None
    try:
        return Cocycle.from_json(L, data)
    except (ParseError, CocycleError, KeyError, ValueError) as e:
        raise InputError(f"{ref}: {e}") from None


def cmd_extend(args, rep: CommandReport):
    L = _algebra(args.algebra)
    d = args.center_dim
    if d < 1:
        raise UsageError("--center-dim must be positive")
    if args.theta:
        theta = _theta_from_file(L, args.theta)
        if theta.center_dim != d:
            raise InputError(f"cocycle has center_dim {theta.center_dim}, expected {d}")
        source = args.theta
    else:
        M = schur_multiplier(L)
        if M.dim < d:
            rep.status = "fail"
            rep.payload = {"name": L.name, "dim_M": M.dim, "center_dim": d}
            rep.diagnostics.append(f"dim M = {M.dim} < {d}: no extension with independent cocycle components")
            return
        theta = Cocycle.from_forms(L, list(M.representatives[:d]))
        source = "multiplier representatives"
    ext = central_extension(L, theta, name=args.name)
    meets = cocycle_radical(theta).intersect(center(L)).dim
    out = ext.to_json()
    out["theta_source"] = source
    out["independent_mod_coboundaries"] = independent_mod_coboundaries(theta)
    out["radical_meets_center_dim"] = meets
    out["violations"] = validate(ext.algebra)
    rep.payload = out
    if args.require_center_eq_v and not ext.center_is_v:
        rep.status = "fail"
        rep.diagnostics.append("center of the extension is larger than V")


def cmd_classify(args, rep: CommandReport):
    if not args.nilpotent:
        raise UsageError("only nilpotent classification is implemented; pass --nilpotent")
    if not 1 <= args.dim <= DEFAULT_MAX_DIM:
        raise UsageError(f"--dim must be in 1..{DEFAULT_MAX_DIM}")
    res = classify_nilpotent(args.dim, budget=_budget(args))
    rep.payload = res.to_json()
    rep.diagnostics.extend(res.notes)
    if res.stats["truncated"] or res.stats["unknown_comparisons"]:
        rep.status = "unknown"


def _iso_payload(r):
    if isinstance(r, (Yes, No, Unknown)):
        return r.to_json()
    raise TypeError(r)


def _iso_status(r) -> str:
    if isinstance(r, Yes):
        return "ok"
    if isinstance(r, No):
        return "fail"
    return "unknown"


def cmd_iso(args, rep: CommandReport):
    A = _algebra(args.left)
    B = _algebra(args.right)
    r = isomorphic(A, B, _budget(args))
    rep.payload = {"left": A.name, "right": B.name, **_iso_payload(r)}
    rep.status = _iso_status(r)
    if isinstance(r, No):
        rep.diagnostics.append(f"invariant {r.invariant} differs")


def cmd_realize_verify(args, rep: CommandReport):
    r = _realization(args.realization)
    mode = "faithful" if args.faithful else None
    try:
        res = verify_realization(r, mode)
    except RealizationError as e:
        raise InputError(str(e)) from None
    rep.payload = res.to_json()
    rep.diagnostics.extend(r.notes)
    if not res.ok:
        rep.status = "fail"
        if not res.homomorphism_ok:
            rep.diagnostics.append("some target bracket is not preserved")
        elif res.independent is False:
            rep.diagnostics.append(f"not faithful: kernel of dimension {len(res.kernel)}")


def cmd_realize_closure(args, rep: CommandReport):
    r = _realization(args.realization)
    labels = list(r.generators)
    gens = [r.generators[k] for k in labels]
    try:
        cl = lie_closure(gens, max_dim=args.max_dim, labels=labels, params=r.params)
    except DimensionExceeded as e:
        rep.status = "fail"
        rep.payload = {"dim": e.dim, "max_dim": e.max_dim}
        rep.diagnostics.append(str(e))
        return
    L = cl.algebra.relabel(name=f"{r.name}_closure" if r.name else "closure")
    out = {
        "dim": L.dim,
        "basis": {lab: format_weyl(w) for lab, w in zip(cl.labels, cl.basis)},
        "brackets": cl.brackets(),
        "structure": classify_structure(L).to_json(),
        "algebra": L.to_json(),
        "violations": validate(L),
    }
    for key, other in (("target", r.target), ("compare_to", r.compare_to)):
        if other is not None and not L.is_parametric and not other.is_parametric:
            res = isomorphic(L, other, _budget(args))
            out[f"isomorphic_to_{key}"] = {"algebra": other.name, **_iso_payload(res)}
            if not isinstance(res, Yes):
                rep.diagnostics.append(f"closure vs {other.name}: {_iso_status(res)}")
    rep.payload = out
    rep.diagnostics.extend(r.notes)


def _parse_assign(items):
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--assign expects name=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def cmd_fock_check(args, rep: CommandReport):
    r = _realization(args.realization)
    assign = dict(r.assign)
    assign.update(_parse_assign(args.assign))
    missing = [p for p in r.params if p not in assign]
    if missing:
        raise UsageError(f"no value for parameter(s) {', '.join(missing)}; use --assign")
    try:
        res = fock_check(r, assign, args.trunc, args.levels, args.tol)
    except RealizationError as e:
        raise InputError(str(e)) from None
    except FockError as e:
        rep.status = "fail"
        rep.payload = {"N": args.trunc, "K": args.levels, "error": str(e)}
        rep.diagnostics.append(str(e))
        return
    rep.payload = {"assign": assign, **res.to_json()}
    if not res.ok:
        rep.status = "fail"
        worst = max(res.residuals, key=res.residuals.get)
        rep.diagnostics.append(f"largest residual: {worst} = {res.residuals[worst]:.3e}")


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pseudolie", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"pseudolie {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("validate", help="check the Jacobi identity")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="series, center, nilradical, semisimplicity")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("multiplier", help="dimensions of Z2, B2 and the Schur multiplier")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_multiplier)

    s = sub.add_parser("extend", help="central extension by a cocycle")
    s.add_argument("algebra")
    s.add_argument("--center-dim", type=int, required=True)
    s.add_argument("--theta", help="cocycle JSON file; default: leading multiplier representatives")
    s.add_argument("--require-center-eq-v", action="store_true")
    s.add_argument("--name", default=None)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("classify", help="nilpotent algebras of a given dimension")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--nilpotent", action="store_true")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("realize", help="Weyl algebra realizations")
    rs = s.add_subparsers(dest="action", parser_class=_Parser)
    rs.required = True
    v = rs.add_parser("verify")
    v.add_argument("realization")
    v.add_argument("--faithful", action="store_true")
    v.set_defaults(func=cmd_realize_verify)
    c = rs.add_parser("closure")
    c.add_argument("realization")
    c.add_argument("--max-dim", type=int, default=16)
    c.add_argument("--budget", type=int, default=None)
    c.set_defaults(func=cmd_realize_closure)

    s = sub.add_parser("fock", help="truncated Fock space checks")
    fs = s.add_subparsers(dest="action", parser_class=_Parser)
    fs.required = True
    f = fs.add_parser("check")
    f.add_argument("realization")
    f.add_argument("--assign", nargs="*", default=[], metavar="NAME=VALUE")
    f.add_argument("--trunc", type=int, default=64)
    f.add_argument("--levels", type=int, default=12)
    f.add_argument("--tol", type=float, default=None)
    f.set_defaults(func=cmd_fock_check)
    return p


def run(argv: list[str]) -> tuple[int, CommandReport]:
    rep = CommandReport(command=list(argv))
    try:
        args = build_parser().parse_args(argv)
        args.func(args, rep)
        if rep.status == "ok" and rep.payload is None:
            raise AssertionError("ok report without payload")
        return rep.exit_code, rep
    except UsageError as e:
        rep.status = "fail"
        rep.diagnostics.append(f"usage: {e}")
        return 2, rep
    except InputError as e:
        rep.status = "fail"
        rep.diagnostics.append(str(e))
        return 2, rep
    except (AlgebraError, CocycleError, DegreeExceeded) as e:
        rep.status = "fail"
        rep.diagnostics.append(f"computation failed: {e}")
        return 1, rep


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)
    code, rep = run(argv)
    json.dump(rep.to_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    for note in rep.diagnostics:
        print(note, file=sys.stderr)
    return code
