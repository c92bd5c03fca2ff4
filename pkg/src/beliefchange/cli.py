"""Command-line front end.

Subcommands: contract, remainders, kernels, infra, check, verify, closure.
Exit status: 0 success, 1 input error, 2 limit exceeded, 3 verification
failure (a failed suite or postulate).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import base_change as bc
from . import beliefset_change as bs
from . import horn_change as hc
from . import postulates as po
from .config import DEFAULT_LIMITS
from .errors import BeliefChangeError, InputError, InvalidInfraChoice, LimitExceeded, ParseError
from .formula import Signature, order_key, parse
from .semantics import ModelSet, PropBeliefSet, theory_of
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_FAILED = 0, 1, 2, 3

MODES = ("base", "prop-set", "horn-set")
METHODS = {
    "base": ("partial-meet", "maxichoice", "full-meet", "kernel", "saturated-kernel", "infra"),
    "prop-set": ("partial-meet", "maxichoice", "full-meet", "kernel", "infra"),
    "horn-set": ("partial-meet", "maxichoice", "full-meet", "orderly-maxichoice", "kernel", "infra"),
}


# ------------------------------------------------------------------ KB files


@dataclass
class KBFile:
    path: str
    sig: Signature
    formulas: list


def parse_kb(text, path="<kb>"):
    """``sig: p, q`` on the first content line, then one formula per line."""
    sig = None
    formulas = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if sig is None:
            if not line.startswith("sig:"):
                raise InputError(f"{path}:{lineno}: expected a signature line 'sig: p, q, ...'")
            sig = Signature.of(line[4:])
            continue
        try:
            formulas.append(parse(line, sig))
        except ParseError as exc:
            raise InputError(f"{path}:{lineno}: {exc}\n{exc.caret()}") from None
        except InputError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
    if sig is None:
        raise InputError(f"{path}: no signature line")
    return KBFile(path, sig, formulas)


def read_kb(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_kb(text, path)


# ----------------------------------------------------------------- rendering


def _texts(items, sig):
    return [bc.item_text(x, sig) for x in items]


def _set_view(mode, X, sig):
    """JSON-friendly rendering of one contraction outcome."""
    if mode == "base":
        return _texts(X.elements if isinstance(X, bc.BeliefBase) else X, sig)
    if mode == "horn-set":
        return X.generator_texts()
    return [bc.item_text(X.formula(), sig)]


def _set_line(mode, view, X=None):
    body = "{" + ", ".join(view) + "}"
    if mode == "horn-set":
        return f"Cn_HL({body})"
    if mode == "prop-set":
        return f"Cn({body})  models: {' '.join(X.models.strings()) if X is not None else ''}".rstrip()
    return body


def _truncate(views, limit):
    return views[:limit], len(views) > limit


# ------------------------------------------------------------------ subjects


def _subject(mode, kb, limits):
    if mode == "base":
        return bc.BeliefBase.of(kb.formulas, kb.sig)
    if mode == "prop-set":
        return PropBeliefSet.from_formulas(kb.formulas, kb.sig, limits)
    return hc.HornBeliefSet.from_generators(kb.formulas, kb.sig, limits)


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) in (None, ""):
            raise InputError(f"--{n.replace('_', '-')} is required for {args.command}")


def _phi(args, sig):
    _need(args, "phi")
    try:
        return parse(args.phi, sig)
    except ParseError as exc:
        raise InputError(f"--phi: {exc}\n{exc.caret()}") from None


def _prop_selection(K, f, spec):
    rems = bs.bs_remainders(K, f)
    if not rems:
        return K
    chosen = bc.select(rems, spec)
    m = 0
    for X in chosen:
        m |= X.models.mask
    return theory_of(ModelSet(K.sig, m))


def _prop_infra(K, f, choice, limits):
    rems = bs.bs_remainders(K, f)
    if not rems:
        return K
    if choice.kind == "meet":
        return bs.bs_contract(K, f, bs.FullMeet())
    if choice.kind == "remainder":
        if not 0 <= choice.index < len(rems):
            raise InvalidInfraChoice(f"remainder index {choice.index} out of range for {len(rems)} remainders")
        return rems[choice.index]
    return bs.bs_contract(K, f, bs.Infra(theory=PropBeliefSet.from_formulas(choice.items, K.sig, limits)), limits)


def contract(mode, subject, f, method, selection=bc.ALL, incision=bc.MAXIMUM, infra=bc.MEET_OF_ALL,
             fragment="full", limits=DEFAULT_LIMITS):
    """One contraction, dispatched on mode and method name."""
    if method not in METHODS[mode]:
        raise InputError(f"method {method!r} is not available in {mode} mode; choose from {', '.join(METHODS[mode])}")
    if mode == "base":
        if method == "partial-meet":
            return bc.base_partial_meet(subject, f, selection, limits)
        if method == "maxichoice":
            spec = bc.FIRST if selection.kind == "all" else selection
            if spec.kind == "indices" and len(spec.indices) != 1:
                raise InputError("maxichoice needs a single remainder index")
            return bc.base_partial_meet(subject, f, spec, limits)
        if method == "full-meet":
            return bc.base_full_meet(subject, f, limits)
        if method == "kernel":
            return bc.base_kernel_contraction(subject, f, incision, limits)
        if method == "saturated-kernel":
            return bc.saturated_base_kernel_contraction(subject, f, incision, limits)
        return bc.base_infra_contraction(subject, f, infra, limits)
    if mode == "prop-set":
        if method == "partial-meet":
            return _prop_selection(subject, f, selection)
        if method == "maxichoice":
            spec = bc.FIRST if selection.kind == "all" else selection
            return _prop_selection(subject, f, spec)
        if method == "full-meet":
            return bs.bs_contract(subject, f, bs.FullMeet(), limits)
        if method == "kernel":
            return bs.bs_contract(subject, f, bs.Kernel(incision, fragment), limits)
        return _prop_infra(subject, f, infra, limits)
    if method in ("partial-meet", "maxichoice", "full-meet", "orderly-maxichoice"):
        return hc.e_contract(subject, f, method, selection, limits=limits)
    if method == "kernel":
        return hc.horn_kernel_e_contraction(subject, f, incision, limits)
    return hc.infra_e_contraction(subject, f, infra, limits)


# ------------------------------------------------------------------ commands


def _common_inputs(args, kb):
    out = {"mode": args.mode, "kb": kb.path, "signature": list(kb.sig.atoms), "subject": _texts(kb.formulas, kb.sig)}
    if getattr(args, "phi", None):
        out["phi"] = args.phi
    return out


def _specs(args, sig):
    return dict(
        selection=bc.Selection.parse(args.selection),
        incision=bc.Incision.parse(args.incision, sig),
        infra=bc.InfraChoice.parse(args.infra, sig),
        fragment=args.fragment,
    )


def cmd_contract(args, limits):
    _need(args, "kb")
    kb = read_kb(args.kb)
    subject = _subject(args.mode, kb, limits)
    f = _phi(args, kb.sig)
    out = contract(args.mode, subject, f, args.method, limits=limits, **_specs(args, kb.sig))
    view = _set_view(args.mode, out, kb.sig)
    inputs = _common_inputs(args, kb)
    inputs["method"] = args.method
    outputs = {"result": view}
    if args.mode == "prop-set":
        outputs["models"] = out.models.strings()
    text = [f"{args.method} contraction of {args.phi}:", "  " + _set_line(args.mode, view, out)]
    return EXIT_OK, inputs, outputs, text


def _family_views(mode, members, sig):
    return [_set_view(mode, X, sig) for X in members]


def _listing(args, title, views, extra_lines=(), members=None):
    shown, truncated = _truncate(views, args.limit)
    text = [f"{title}: {len(views)}"]
    for i, v in enumerate(shown):
        X = members[i] if members is not None else None
        text.append(f"  [{i}] " + _set_line(args.mode, v, X))
    if truncated:
        text.append(f"  ... truncated at {args.limit}")
    text.extend(extra_lines)
    return {"count": len(views), "members": shown, "truncated": truncated}, text


def cmd_remainders(args, limits):
    _need(args, "kb")
    kb = read_kb(args.kb)
    subject = _subject(args.mode, kb, limits)
    f = _phi(args, kb.sig)
    if args.mode == "base":
        fam = bc.base_remainders(subject, f, limits)
        members = [subject.restrict(s) for s in fam]
    elif args.mode == "prop-set":
        members = bs.bs_remainders(subject, f, limits)
    else:
        members = hc.e_remainders(subject, f, limits)
    outputs, text = _listing(args, "remainders", _family_views(args.mode, members, kb.sig), members=members)
    return EXIT_OK, _common_inputs(args, kb), outputs, text


def cmd_kernels(args, limits):
    _need(args, "kb")
    kb = read_kb(args.kb)
    subject = _subject(args.mode, kb, limits)
    f = _phi(args, kb.sig)
    if args.mode == "base":
        fam = bc.base_kernels(subject, f, limits)
    elif args.mode == "prop-set":
        fam = bs.bs_kernels(subject, f, args.fragment, limits)
    else:
        fam = bc.base_kernels(subject.base, hc.clauses_of(f, kb.sig), limits)
    views = fam.texts()
    shown, truncated = _truncate(views, args.limit)
    text = [f"kernels: {len(views)}"] + [f"  [{i}] {{{', '.join(v)}}}" for i, v in enumerate(shown)]
    if truncated:
        text.append(f"  ... truncated at {args.limit}")
    incisions = bc.minimal_incisions(fam).texts() if fam.members else []
    text.append(f"minimal incisions: {len(incisions)}")
    text.extend(f"  [{i}] {{{', '.join(v)}}}" for i, v in enumerate(incisions[: args.limit]))
    outputs = {"count": len(views), "members": shown, "truncated": truncated, "minimal_incisions": incisions[: args.limit]}
    inputs = _common_inputs(args, kb)
    if args.mode == "prop-set":
        inputs["fragment"] = args.fragment
    return EXIT_OK, inputs, outputs, text


def cmd_infra(args, limits):
    _need(args, "kb")
    kb = read_kb(args.kb)
    subject = _subject(args.mode, kb, limits)
    f = _phi(args, kb.sig)
    member = None
    if args.member is not None:
        member = bc._split_formula_list(args.member, kb.sig)
    if args.mode == "base":
        fam = bc.base_infra_remainders(subject, f, limits)
        members = [] if args.no_list else [subject.restrict(s) for s in fam.enumerate()]
        verdict = None if member is None else fam.contains(member)
    elif args.mode == "prop-set":
        fam = bs.bs_infra_remainders(subject, f, limits)
        members = [] if args.no_list else fam.members()
        verdict = None if member is None else fam.contains(PropBeliefSet.from_formulas(member, kb.sig, limits))
    else:
        fam = hc.infra_e_remainders(subject, f, limits)
        members = [] if args.no_list else fam.members()
        verdict = None if member is None else fam.contains(member)
    outputs, text = _listing(args, "infra remainders", _family_views(args.mode, members, kb.sig), members=members)
    if args.no_list:
        outputs, text = {}, []
    if verdict is not None:
        outputs["member"] = _texts(member, kb.sig)
        outputs["is_member"] = verdict
        text.append(f"member {{{', '.join(_texts(member, kb.sig))}}}: {'yes' if verdict else 'no'}")
    return EXIT_OK, _common_inputs(args, kb), outputs, text


def cmd_closure(args, limits):
    _need(args, "kb")
    kb = read_kb(args.kb)
    if args.mode == "horn-set":
        H = hc.HornBeliefSet.from_generators(kb.formulas, kb.sig, limits)
        clauses = sorted((c.render(kb.sig) for c in H.clauses), key=order_key)
        outputs = {"generators": H.generator_texts(), "clauses": clauses, "models": H.models.strings()}
        text = [f"generators: {{{', '.join(H.generator_texts())}}}", f"clauses: {len(clauses)}"]
        text += [f"  {c}" for c in clauses]
        text.append(f"models: {' '.join(outputs['models'])}")
    else:
        K = PropBeliefSet.from_formulas(kb.formulas, kb.sig, limits)
        outputs = {"formula": bc.item_text(K.formula(), kb.sig), "models": K.models.strings()}
        text = [f"Cn: {outputs['formula']}", f"models: {' '.join(outputs['models'])}"]
    return EXIT_OK, _common_inputs(args, kb), outputs, text


def _operator(spec, mode, sig, args, limits):
    """``METHOD[:ARG]`` where ARG is a selection, incision or infra spec."""
    method, _, arg = spec.partition(":")
    specs = _specs(args, sig)
    if arg:
        if method in ("partial-meet", "maxichoice"):
            specs["selection"] = bc.Selection.parse(arg)
        elif method in ("kernel", "saturated-kernel"):
            specs["incision"] = bc.Incision.parse(arg, sig)
        elif method == "infra":
            specs["infra"] = bc.InfraChoice.parse(arg, sig)
        else:
            raise InputError(f"operator {method!r} takes no argument")
    if method not in METHODS[mode]:
        raise InputError(f"unknown operator {method!r} for {mode}; choose from {', '.join(METHODS[mode])}")

    def op(subject, phi):
        return contract(mode, subject, phi, method, limits=limits, **specs)

    return op


def cmd_check(args, limits):
    _need(args, "postulate")
    if args.table:
        try:
            with open(args.table, encoding="utf-8") as fh:
                table = po.ContractionTable.loads(fh.read(), limits)
        except OSError as exc:
            raise InputError(f"cannot read {args.table}: {exc.strerror}") from None
        inputs = {"table": args.table, "kind": table.kind}
    elif args.operator:
        _need(args, "kb")
        kb = read_kb(args.kb)
        subject = _subject(args.mode, kb, limits)
        grid = None if not args.phi else [_phi(args, kb.sig)]
        op = _operator(args.operator, args.mode, kb.sig, args, limits)
        table = po.build_table(args.mode, subject, op, grid, limits)
        inputs = _common_inputs(args, kb)
        inputs["operator"] = args.operator
    else:
        raise InputError("check needs --table FILE or --operator SPEC")
    names = po.POSTULATES[table.kind] if args.postulate == "all" else [args.postulate]
    reports = [po.check(table, n, limits) for n in names]
    inputs["postulate"] = args.postulate
    inputs["grid_size"] = len(table.grid)
    outputs = {"reports": [r.to_json() for r in reports]}
    text = [str(r) for r in reports]
    ok = all(r.passed for r in reports)
    return (EXIT_OK if ok else EXIT_FAILED), inputs, outputs, text


def cmd_verify(args, limits):
    _need(args, "suite")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(n) for n in names]
    text = []
    for r in results:
        text.extend(r.lines())
    outputs = {"suites": [r.to_json() for r in results]}
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_FAILED), {"suite": args.suite}, outputs, text


COMMANDS = {
    "contract": cmd_contract,
    "remainders": cmd_remainders,
    "kernels": cmd_kernels,
    "infra": cmd_infra,
    "check": cmd_check,
    "verify": cmd_verify,
    "closure": cmd_closure,
}


# -------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    parser = _Parser(prog="beliefchange", description="Belief contraction for bases, theories and Horn belief sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, phi=True):
        p.add_argument("--mode", choices=MODES, default="base")
        p.add_argument("--kb", help="knowledge base file ('sig: ...' then one formula per line)")
        if phi:
            p.add_argument("--phi", help="formula to contract by")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--limit", type=int, default=100, help="maximum family members listed (default 100)")
        p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    def specs(p):
        p.add_argument("--selection", default="all", help="all | first | idx:I,J")
        p.add_argument("--incision", default="max", help='max | min-first | set:"p -> q","q -> r"')
        p.add_argument("--infra", default="meet", help="meet | rem:I | set:...")
        p.add_argument("--fragment", choices=("full", "horn"), default="full", help="finite presentation for prop-set kernels")

    p = sub.add_parser("contract", help="contract the knowledge base by a formula")
    common(p)
    specs(p)
    p.add_argument("--method", default="full-meet")
    for name in ("remainders", "kernels", "infra"):
        p = sub.add_parser(name, help=f"list the {name} family")
        common(p)
        specs(p)
        if name == "infra":
            p.add_argument("--member", help="test membership of a comma-separated formula list")
            p.add_argument("--no-list", action="store_true", help="only answer the membership test")
    p = sub.add_parser("closure", help="logical closure of the knowledge base")
    common(p, phi=False)
    p = sub.add_parser("check", help="check a postulate on a table or operator")
    common(p)
    specs(p)
    p.add_argument("--postulate", help="postulate name, e.g. K-6, B-4, H-e6, core-retainment, or 'all'")
    p.add_argument("--table", help="JSON contraction table")
    p.add_argument("--operator", help="METHOD[:ARG], e.g. full-meet, partial-meet:first, kernel:max, infra:rem:0")
    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    return parser


# ---------------------------------------------------------------------- run


def run(argv, stdout=None, stderr=None):
    """Run one command; returns ``(exit_code, report)``."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    as_json = "--json" in argv
    report = {"command": argv[0] if argv else None, "inputs": {}, "outputs": {}, "timing": None, "exit": None}
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        limits = DEFAULT_LIMITS
        if getattr(args, "limit", 1) < 0:
            raise InputError("--limit must be non-negative")
        code, inputs, outputs, text = COMMANDS[args.command](args, limits)
        report.update(command=args.command, inputs=inputs, outputs=outputs)
        if args.timing:
            report["timing"] = round(time.perf_counter() - start, 6)
    except LimitExceeded as exc:
        code, text = EXIT_LIMIT, None
        report["error"] = {"kind": "limit-exceeded", "message": str(exc), "what": exc.what, "value": exc.value, "limit": exc.limit}
        print(f"error: {exc}", file=stderr)
    except BeliefChangeError as exc:
        code, text = EXIT_INPUT, None
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        print(f"error: {exc}", file=stderr)
    report["exit"] = code
    if as_json:
        print(json.dumps(report, indent=2, ensure_ascii=False, sort_keys=True), file=stdout)
    elif text:
        print("\n".join(text), file=stdout)
        if report["timing"] is not None:
            print(f"time: {report['timing']:.3f}s", file=stdout)
    return code, report


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, _ = run(list(argv))
    return code


if __name__ == "__main__":
    sys.exit(main())
