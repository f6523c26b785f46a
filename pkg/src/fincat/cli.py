"""Command-line interface: ``fincat <command> ...``.

Exit codes: 0 success, 1 property violation, 2 input or usage error,
3 size limit exceeded.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .caps import caps_from_env, size_caps
from .category import FinCategory
from .constructions import functor_category
from .ends import FinBifunctor, compare_end_algorithms, end_of_bifunctor, hom_bifunctor, set_functor_violations
from .enumerator import catalog, enumerate_categories
from .errors import CategoryValidationError, FincatError, ParseError, SizeLimitExceeded
from .fileformat import ID_RE, load_category, serialize, to_named
from .ind import PeriodicChain, canonicalize, check_full_faithfulness, counterexample_report, ind_hom
from .wellfounded import build_I_alpha, crosscheck_characterizations, decide_well_founded, rank_function

OK, VIOLATION, INPUT_ERROR, SIZE_LIMIT = 0, 1, 2, 3


@dataclass
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str = ""


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


def _flag(b: bool) -> str:
    return "true" if b else "false"


# -- auxiliary input formats ----------------------------------------------------

_ARROW_RE = re.compile(r"^-([A-Za-z0-9_]+)->$")


def _path_tokens(tokens: list[str], what: str) -> tuple[list, list]:
    """Split ``o0 -f0-> o1 ...`` into objects and arrows; a trailing arrow is
    allowed (its target is supplied by the caller)."""
    objs, arrows = [], []
    expect_obj = True
    for tok in tokens:
        m = _ARROW_RE.match(tok)
        if expect_obj:
            if m or not ID_RE.match(tok):
                raise ParseError(f"{what}: expected an object, got {tok!r}")
            objs.append(tok)
        else:
            if not m:
                raise ParseError(f"{what}: expected an arrow -f->, got {tok!r}")
            arrows.append(m.group(1))
        expect_obj = not expect_obj
    return objs, arrows


def parse_chain(text: str, C: FinCategory) -> PeriodicChain:
    """``chain <cat> prefix [o0 -f0-> o1 ...] cycle [c0 -g0-> ... -gk-> c0]``.

    The prefix may end with an arrow or with the first cycle object."""
    m = re.fullmatch(r"\s*chain\s+(\S+)\s+prefix\s*\[(.*?)\]\s*cycle\s*\[(.*?)\]\s*", text)
    if not m:
        raise ParseError(f"cannot parse chain literal {text!r}")
    name, prefix_text, cycle_text = m.groups()
    if name != C.name:
        raise ParseError(f"chain is over {name!r} but the category is {C.name!r}")
    c_objs, c_arrows = _path_tokens(cycle_text.split(), "cycle")
    if len(c_objs) != len(c_arrows) + 1 or c_objs[-1] != c_objs[0] or not c_arrows:
        raise ParseError("cycle must have the form [c0 -g0-> ... -gk-> c0]")
    p_objs, p_arrows = _path_tokens(prefix_text.split(), "prefix")
    if len(p_objs) == len(p_arrows) + 1:
        if p_objs[-1] != c_objs[0]:
            raise ParseError("prefix must end at the first cycle object")
        p_objs = p_objs[:-1]
    if len(p_objs) != len(p_arrows):
        raise ParseError("malformed prefix")
    for f in p_arrows + c_arrows:
        if f not in C.arrows:
            raise ParseError(f"unknown morphism {f!r}")
    try:
        return PeriodicChain(C, tuple(zip(p_objs, p_arrows)), tuple(zip(c_objs[:-1], c_arrows)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_chain(X: PeriodicChain) -> str:
    prefix = " ".join(f"{x} -{f}->" for x, f in X.prefix)
    cycle = " ".join(f"{x} -{f}->" for x, f in X.cycle) + f" {X.cycle[0][0]}"
    return f"chain {X.category.name} prefix [{prefix}] cycle [{cycle}]"


def parse_bifunctor(text: str, C: FinCategory) -> FinBifunctor:
    """Bifunctor file::

        bifunctor <name> on <category>
        value a b : x y ...        # H(a, b)
        act u v : x -> y           # (u: a2 -> a, v: b -> b2) sends x in H(a,b) to y

    Actions of identity pairs default to the identity."""
    value, action = {}, {}
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if header is None:
            if len(tokens) != 4 or tokens[0] != "bifunctor" or tokens[2] != "on":
                raise ParseError("expected 'bifunctor <name> on <category>'", lineno)
            if tokens[3] != C.name:
                raise ParseError(f"bifunctor is on {tokens[3]!r} but the category is {C.name!r}", lineno)
            header = tokens[1]
        elif tokens[0] == "value" and len(tokens) >= 4 and tokens[3] == ":":
            a, b = tokens[1], tokens[2]
            if a not in C.objects or b not in C.objects:
                raise ParseError("unknown object", lineno)
            value[a, b] = tuple(tokens[4:])
        elif tokens[0] == "act" and len(tokens) == 7 and tokens[3] == ":" and tokens[5] == "->":
            u, v = tokens[1], tokens[2]
            if u not in C.arrows or v not in C.arrows:
                raise ParseError("unknown morphism", lineno)
            action.setdefault((u, v), {})[tokens[4]] = tokens[6]
        else:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
    if header is None:
        raise ParseError("empty bifunctor file")
    for a in C.objects:
        for b in C.objects:
            value.setdefault((a, b), ())
    for a in C.objects:
        for b in C.objects:
            action.setdefault((C.identity[a], C.identity[b]), {x: x for x in value[a, b]})
    H = FinBifunctor(C, value, action)
    problems = set_functor_violations(H.as_set_functor())
    if problems:
        raise ParseError("not a bifunctor: " + "; ".join(problems[:5]))
    return H


# -- commands --------------------------------------------------------------------

def _cmd_validate(args, out):
    C = load_category(args.file)
    n_id = len(C.objects)
    out.append(f"valid: {C.name} ({len(C.objects)} objects, {len(C.arrows) - n_id} non-identity morphisms)")
    return OK


def _cmd_analyze(args, out):
    I = load_category(args.file)
    v = decide_well_founded(I)
    out.append(f"category: {I.name}")
    out.append("L-verdict: holds for every C with finite colimits "
               "(L3: a finite index category is equivalent to an omega-small one)")
    if v.holds_for_all:
        ranks = " ".join(f"{x}={v.witness[x]}" for x in v.skeleton.objects)
        out.append("A-verdict: holds for every C (I is well-founded)")
        out.append(f"rank on skeleton: {ranks}")
    else:
        out.append("A-verdict: fails for some C (I is not well-founded)")
        out.append("cycle: " + " ".join(map(_fmt, v.witness)))
    n = len(I.objects)
    sw_stage = args.max_stage or max(n, 1)
    w_stage = args.max_stage or n + 1
    rep = crosscheck_characterizations(I, sw_stage, w_stage)
    out.extend(rep.lines())
    if args.witness:
        skel = " ".join(_fmt(x) for x in v.skeleton.objects)
        out.append(f"skeleton objects: {skel}")
        rank = rank_function(I)
        if rank is not None:
            out.append("rank: " + " ".join(f"{x}={rank[x]}" for x in I.objects))
        else:
            out.append("rank: none (I is not strictly well-founded)")
    return OK


def _cmd_ialpha(args, out):
    I = load_category(args.file)
    if args.n < 1:
        raise _UsageError("N must be at least 1")
    staged = build_I_alpha(I, args.n)
    S = staged.category
    out.append(f"# {len(S.objects)} objects, {len(S.arrows)} morphisms")
    out.append(serialize(to_named(S)).rstrip("\n"))
    return OK


def _cmd_counterexample(args, out):
    I = load_category(args.file)
    rep = counterexample_report(I, args.max_stage)
    out.extend(rep.lines())
    return OK if rep.presheaf_ok and rep.monotone else VIOLATION


def _cmd_crosscheck(args, out):
    instances = [f.category for f in catalog()]
    instances += list(enumerate_categories(args.max_mor))
    bad = 0
    for C in instances:
        rep = crosscheck_characterizations(C)
        d = rep.discrepancy
        status = "CONCORDANT" if d is None else f"DISCREPANCY: {d[0]} {d[1]}"
        out.append(f"{C.name}: {status}")
        bad += d is not None
    out.append(f"{len(instances)} instances, {bad} discrepancies")
    out.append("CONCORDANT" if not bad else "DISCREPANCY")
    return OK if not bad else VIOLATION


def _cmd_catalog(args, out):
    fixtures = catalog()
    if args.name:
        fixtures = [f for f in fixtures if f.name == args.name]
        if not fixtures:
            raise _UsageError(f"no fixture named {args.name!r}")
    blocks = []
    for f in fixtures:
        blocks.append(f"# SW={_flag(f.strictly_well_founded)} W={_flag(f.well_founded)}\n"
                      + serialize(f.category).rstrip("\n"))
    out.append("\n\n".join(blocks))
    return OK


def _cmd_end(args, out):
    C = load_category(args.file)
    if args.bifunctor == "hom":
        H = hom_bifunctor(C)
    else:
        H = parse_bifunctor(_read(args.bifunctor), C)
    end = end_of_bifunctor(C, H)
    out.append(f"end over {C.name}: {len(end)} elements")
    for e in end.elements:
        out.append("  " + " ".join(f"{c}={_fmt(x)}" for c, x in zip(C.objects, e)))
    cmp = compare_end_algorithms(C, H)
    out.append("twisted-arrow limit: " + ("agrees (bijection)" if cmp else "DISAGREES"))
    return OK if cmp else VIOLATION


def _cmd_indhom(args, out):
    C = load_category(args.file)
    X = canonicalize(parse_chain(args.source, C))
    Y = canonicalize(parse_chain(args.target, C))
    h = ind_hom(X, Y)
    out.append(f"X = {format_chain(X)}")
    out.append(f"Y = {format_chain(Y)}")
    sizes = " ".join(f"{i}:{len(c)}" for i, c in enumerate(h.colimits))
    out.append(f"colim_j Hom(X_i, Y_j) by source index: {sizes}")
    out.append(f"|Hom(X, Y)| = {len(h)}")
    for e in h.elements:
        out.append(f"  {_fmt(e)} : X_{X.start} -> Y_{Y.start}")
    return OK


def _cmd_fullfaithful(args, out):
    C = load_category(args.category)
    I = load_category(args.index)
    seed = _seed()
    FC = functor_category(I, C)
    rep = check_full_faithfulness(C, I, count=args.samples, seed=seed, FC=FC)
    out.append(f"seed: {seed}")
    out.extend(rep.lines())
    return OK if rep.all_bijective else VIOLATION


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


_ENV: dict = {}


def _seed() -> int:
    raw = _ENV.get("FINCAT_SEED", "0").strip() or "0"
    if not raw.isdigit():
        raise _UsageError(f"FINCAT_SEED must be a decimal integer, got {raw!r}")
    return int(raw)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fincat", description="Finite categories, well-foundedness and ind-objects.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a category file")
    s.add_argument("file")
    s.set_defaults(run=_cmd_validate)

    s = sub.add_parser("analyze", help="decide whether Ind(C^I) and Ind(C)^I agree")
    s.add_argument("file")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--max-stage", type=int, default=None)
    s.set_defaults(run=_cmd_analyze)

    s = sub.add_parser("ialpha", help="print the staged category I^(N)")
    s.add_argument("file")
    s.add_argument("n", type=int, metavar="N")
    s.set_defaults(run=_cmd_ialpha)

    s = sub.add_parser("counterexample", help="per-stage retract search")
    s.add_argument("file")
    s.add_argument("--max-stage", type=int, default=4)
    s.set_defaults(run=_cmd_counterexample)

    s = sub.add_parser("crosscheck", help="compare all characterizations on fixtures and small categories")
    s.add_argument("--max-mor", type=int, default=4)
    s.set_defaults(run=_cmd_crosscheck)

    s = sub.add_parser("catalog", help="print fixtures")
    s.add_argument("--name")
    s.set_defaults(run=_cmd_catalog)

    s = sub.add_parser("end", help="end of a bifunctor (or 'hom')")
    s.add_argument("file")
    s.add_argument("bifunctor")
    s.set_defaults(run=_cmd_end)

    s = sub.add_parser("indhom", help="hom-set between two chains")
    s.add_argument("file")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(run=_cmd_indhom)

    s = sub.add_parser("fullfaithful", help="sample the comparison Ind(C^I) -> Ind(C)^I on homs")
    s.add_argument("category")
    s.add_argument("index")
    s.add_argument("--samples", type=int, default=50)
    s.set_defaults(run=_cmd_fullfaithful)
    return p


def run(argv: list[str], env=None) -> CommandResult:
    global _ENV
    _ENV = dict(os.environ if env is None else env)
    out: list[str] = []
    args = None
    try:
        args = build_parser().parse_args(argv)
        caps = caps_from_env(_ENV)
        with size_caps(functors=caps.functors, morphisms=caps.morphisms):
            code = args.run(args, out)
    except _UsageError as exc:
        return CommandResult(INPUT_ERROR, "", f"usage error: {exc}\n")
    except SizeLimitExceeded as exc:
        return CommandResult(SIZE_LIMIT, "", f"size limit: {exc}\n")
    except CategoryValidationError as exc:
        # a failed `validate` is the property being checked; elsewhere it is bad input
        text = "\n".join(["invalid category:"] + [f"  {v.describe()}" for v in exc.violations]) + "\n"
        if args.command == "validate":
            return CommandResult(VIOLATION, text)
        return CommandResult(INPUT_ERROR, "", text)
    except (ParseError, FincatError, ValueError, OSError) as exc:
        return CommandResult(INPUT_ERROR, "", f"input error: {exc}\n")
    text = "\n".join(out)
    return CommandResult(code, text + "\n" if text else "")


def main(argv=None) -> int:
    try:
        result = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code
