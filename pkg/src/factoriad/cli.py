"""Command-line front end.

Every command prints one JSON report on stdout (``--pretty`` for text).
Exit status: 0 all checks pass, 1 some check fails, 2 bad input, 3 size guard.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import config
from .algcorr import (
    PseudoAlgebra,
    algebra_from_names,
    algebra_to_fs,
    algebra_to_names,
    check_pseudo_algebra,
    check_strict_algebra,
    check_tau,
    fs_to_pseudo_algebra,
    induce_fr_algebra,
    is_r_compatible,
    strict_algebra_to_strict_fs,
    strict_fs_to_algebra,
    correspondence_suite,
)
from .arrowmonad import P, arrow_category, check_cubical_equations, check_monad_laws
from .errors import FactoriadError, FactorisationError, SizeGuardError
from .factsys import (
    FactorisationSystem,
    StrictFactorisationSystem,
    choice_from_names,
    enumerate_fs,
    enumerate_strict_fs,
    fs_violations,
    is_proper,
    span,
    strict_fs_violations,
)
from .fincat import FinCategory, validate_category
from .freyd import Fr, check_freyd_properness, check_projection_monad_morphism, freyd_completion
from .io import InputError, category_to_dict, dumps, fs_to_dict, fs_from_dict, load_category, read_json
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _load(rep: Report, path: str) -> FinCategory:
    C, digest = load_category(path, check=False)
    rep.inputs["category"] = digest
    problems = validate_category(C)
    if problems:
        first = problems[0]
        raise InputError(f"{path}: not a category: {first.law} at {list(first.witness)} {first.detail}".rstrip())
    return C


def _doc(rep: Report, key: str, path: str):
    doc, digest = read_json(path)
    rep.inputs[key] = digest
    return doc


def _violations(rep: Report, group: str, problems, law_if_clean: str, checked: int) -> None:
    if not problems:
        rep.add(law_if_clean, group, True, None, checked)
    for v in problems:
        rep.add(v.law, group, False, v.as_dict())


def _algebra(rep: Report, X: FinCategory, path: str) -> PseudoAlgebra:
    doc = _doc(rep, "algebra", path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected an object")
    return algebra_from_names(X, doc)


# -- commands ---------------------------------------------------------------


def cmd_check(args, rep: Report) -> None:
    C, digest = load_category(args.category, check=False)
    rep.inputs["category"] = digest
    problems = validate_category(C)
    _violations(rep, "category", problems, "category laws", C.n_mor)
    rep.data["sizes"] = {"objects": C.n_obj, "morphisms": C.n_mor}


def _emit_derived(args, rep: Report, T) -> None:
    C = T.cat
    problems = validate_category(C)
    _violations(rep, "derived category", problems, "category laws", C.n_mor)
    objs, mors = T.provenance()
    doc = category_to_dict(C, objs, mors)
    rep.data["sizes"] = {"objects": C.n_obj, "morphisms": C.n_mor}
    if args.output:
        Path(args.output).write_text(dumps(doc), encoding="utf-8")
        rep.data["written"] = args.output
    else:
        rep.data["category"] = doc


def cmd_arrow(args, rep: Report) -> None:
    _emit_derived(args, rep, arrow_category(_load(rep, args.category)))


def cmd_freyd(args, rep: Report) -> None:
    _emit_derived(args, rep, freyd_completion(_load(rep, args.category)))


def cmd_monad_laws(args, rep: Report) -> None:
    X = _load(rep, args.category)
    rep.extend(check_monad_laws(P if args.monad == "P" else Fr, X))


def cmd_cubical(args, rep: Report) -> None:
    rep.extend(check_cubical_equations(_load(rep, args.category)))


def cmd_fs_check(args, rep: Report) -> None:
    X = _load(rep, args.category)
    kind, A, B = fs_from_dict(X, _doc(rep, "fs", args.fs), args.fs)
    if args.strict and kind != "strict":
        raise InputError(f"{args.fs}: --strict expects keys E0/M0")
    if kind == "strict":
        problems = strict_fs_violations(X, A, B)
        _violations(rep, "strict fs", problems, "strict factorisation system", X.n_mor)
        if problems:
            return
        fs = span(X, A, B)
        rep.data["span"] = fs_to_dict(X, fs.E, fs.M)
        E, M = fs.E, fs.M
    else:
        problems = fs_violations(X, A, B)
        _violations(rep, "fs", problems, "factorisation system", X.n_mor)
        E, M = A, B
    if args.proper:
        bad_e = sorted(e for e in E if not X.epi_mask[e])
        bad_m = sorted(m for m in M if not X.mono_mask[m])
        rep.add("E consists of epis", "proper fs", not bad_e, X.names(bad_e[:1]), len(E))
        rep.add("M consists of monos", "proper fs", not bad_m, X.names(bad_m[:1]), len(M))


def cmd_fs_enumerate(args, rep: Report) -> None:
    X = _load(rep, args.category)
    out = []
    if args.strict:
        for s in enumerate_strict_fs(X):
            fs = span(X, s.E0, s.M0)
            if args.proper_only and not is_proper(X, fs.E, fs.M):
                continue
            out.append(s.as_names())
    else:
        for fs in enumerate_fs(X):
            if args.proper_only and not is_proper(X, fs.E, fs.M):
                continue
            out.append(fs.as_names())
    rep.data["systems"] = out
    rep.data["count"] = len(out)


def _checked_algebra(rep: Report, a: PseudoAlgebra) -> bool:
    rep.extend(check_pseudo_algebra(a))
    if not rep.ok:
        return False
    if a.is_strict:
        rep.extend(check_strict_algebra(a))
    return rep.ok


def cmd_algebra_check(args, rep: Report) -> None:
    X = _load(rep, args.category)
    a = _algebra(rep, X, args.algebra)
    if _checked_algebra(rep, a):
        rep.extend(check_tau(a))


def cmd_algebra_to_fs(args, rep: Report) -> None:
    X = _load(rep, args.category)
    a = _algebra(rep, X, args.algebra)
    if not _checked_algebra(rep, a):
        return
    try:
        fs = algebra_to_fs(a)
    except FactorisationError as exc:
        rep.add("induced classes form an fs", "algebra to fs", False, str(exc))
        return
    rep.add("induced classes form an fs", "algebra to fs", True, None, X.n_mor)
    rep.data["fs"] = fs.as_names()
    if a.is_strict:
        rep.data["strict_fs"] = strict_algebra_to_strict_fs(a).as_names()


def cmd_fs_to_algebra(args, rep: Report) -> None:
    X = _load(rep, args.category)
    kind, A, B = fs_from_dict(X, _doc(rep, "fs", args.fs), args.fs)
    if kind == "strict":
        problems = strict_fs_violations(X, A, B)
        _violations(rep, "strict fs", problems, "strict factorisation system", X.n_mor)
        if problems:
            return
        if args.choice:
            raise InputError("--choice does not apply to a strict fs")
        a = strict_fs_to_algebra(X, StrictFactorisationSystem(X, A, B))
    else:
        problems = fs_violations(X, A, B)
        _violations(rep, "fs", problems, "factorisation system", X.n_mor)
        if problems:
            return
        fs = FactorisationSystem(X, A, B)
        choice = None
        if args.choice:
            doc = _doc(rep, "choice", args.choice)
            if not isinstance(doc, dict):
                raise InputError(f"{args.choice}: expected an object")
            try:
                choice = choice_from_names(fs, doc)
            except FactorisationError as exc:
                raise InputError(f"{args.choice}: {exc}") from None
        a = fs_to_pseudo_algebra(X, fs, choice)
    rep.extend(check_pseudo_algebra(a))
    rep.data["algebra"] = algebra_to_names(a)


def cmd_roundtrip(args, rep: Report) -> None:
    rep.extend(correspondence_suite(_load(rep, args.category)))


def cmd_fr_compat(args, rep: Report) -> None:
    X = _load(rep, args.category)
    a = _algebra(rep, X, args.algebra)
    if a.monad is not P:
        raise InputError(f"{args.algebra}: fr-compat expects a P-algebra")
    if not _checked_algebra(rep, a):
        return
    grp = "Freyd compatibility"
    compat = is_r_compatible(a)
    fs = algebra_to_fs(a)
    proper = is_proper(X, fs.E, fs.M)
    rep.add("R-compatible iff induced fs is proper", grp, compat == proper, {"compatible": compat, "proper": proper})
    rep.data["compatible"] = compat
    rep.data["proper"] = proper
    if compat:
        fr = induce_fr_algebra(a)
        rep.extend(check_pseudo_algebra(fr), "induced: ")
        rep.add("t = t' . p", grp, (fr.t @ freyd_completion(X).projection) == a.t)
        rep.data["fr_algebra"] = algebra_to_names(fr)


def cmd_projection_check(args, rep: Report) -> None:
    X = _load(rep, args.category)
    rep.extend(check_freyd_properness(X))
    rep.extend(check_projection_monad_morphism(X))


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's default from clobbering a value given before it
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="human-readable text instead of JSON")
    common.add_argument(
        "--size-guard",
        default=argparse.SUPPRESS,
        metavar="N|key=N,...",
        help="override size guards (bare N sets the cube guard); keys: " + ", ".join(config.DEFAULTS),
    )
    parser = argparse.ArgumentParser(prog="factoriad", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_, *positional):
        p = sub.add_parser(name, help=help_, parents=[common])
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a category file", "category")
    p = add("arrow", cmd_arrow, "emit the arrow category PX", "category")
    p.add_argument("-o", "--output")
    p = add("freyd", cmd_freyd, "emit the Freyd completion FrX", "category")
    p.add_argument("-o", "--output")
    p = add("monad-laws", cmd_monad_laws, "unit and associativity laws", "category")
    p.add_argument("--monad", choices=["P", "Fr"], default="P")
    add("cubical", cmd_cubical, "faces, connections and comonad equations", "category")
    p = add("fs-check", cmd_fs_check, "check a factorisation system file", "category", "fs")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--proper", action="store_true")
    p = add("fs-enumerate", cmd_fs_enumerate, "list all factorisation systems", "category")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--proper-only", action="store_true")
    add("algebra-check", cmd_algebra_check, "check an algebra file", "category", "algebra")
    add("algebra-to-fs", cmd_algebra_to_fs, "factorisation system of an algebra", "category", "algebra")
    p = add("fs-to-algebra", cmd_fs_to_algebra, "pseudo algebra of a factorisation system", "category", "fs")
    p.add_argument("--choice", help="choice file {morphism: {e, mid, m}}")
    add("roundtrip", cmd_roundtrip, "full correspondence suite over all enumerations", "category")
    add("fr-compat", cmd_fr_compat, "Freyd compatibility of a P-algebra", "category", "algebra")
    add("projection-check", cmd_projection_check, "Freyd properness and the projection P -> Fr", "category")
    return parser


def _apply_size_guard(value: str) -> None:
    try:
        parsed = config._parse_env(value)
    except ValueError as exc:
        raise InputError(f"--size-guard: {exc}") from None
    if not parsed:
        raise InputError("--size-guard: empty value")
    for key, n in parsed.items():
        config.set_guard(key, n)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(command=args.command)
    try:
        if getattr(args, "size_guard", None):
            _apply_size_guard(args.size_guard)
        args.func(args, rep)
    except SizeGuardError as exc:
        print(f"factoriad: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, OSError) as exc:
        print(f"factoriad: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FactoriadError as exc:
        rep.add("construction preconditions", "input", False, str(exc))
    finally:
        for key in config.DEFAULTS:
            config.set_guard(key, None)
    sys.stdout.write(rep.to_text() if getattr(args, "pretty", False) else rep.to_json())
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
