"""Named verification suites.

Each suite re-derives a worked example or a representation result by
exhaustive (or seeded random) computation and reports one :class:`Case` per
check.  Output is deterministic: no timings, fixed seeds, sorted families.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import base_change as bc
from . import beliefset_change as bs
from . import enumeration as en
from . import horn_change as hc
from . import postulates as po
from .formula import HornClause, Signature, enumerate_clauses, order_key, parse, render
from .semantics import (
    ModelSet,
    PropBeliefSet,
    clause_mask,
    full_mask,
    horn_entails,
    intersection_closure,
    model_mask,
    synthesize,
    theory_of,
)

SEED = 20111


@dataclass
class Case:
    group: str
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    cases: list = field(default_factory=list)

    def add(self, group, label, passed, detail=""):
        self.cases.append(Case(group, label, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    def tally(self):
        groups = {}
        for c in self.cases:
            ok, total = groups.get(c.group, (0, 0))
            groups[c.group] = (ok + c.passed, total + 1)
        return groups

    def lines(self):
        out = [f"suite {self.name}"]
        for group, (ok, total) in self.tally().items():
            out.append(f"  {group}: {ok}/{total} passed")
            for c in self.cases:
                if c.group != group:
                    continue
                if total <= 12 or not c.passed:
                    mark = "ok  " if c.passed else "FAIL"
                    text = f"    {mark} {c.label}"
                    if c.detail:
                        text += f" ({c.detail})"
                    out.append(text)
        ok = sum(c.passed for c in self.cases)
        out.append(f"{self.name}: {'pass' if self.passed else 'fail'} ({ok}/{len(self.cases)} cases)")
        return out

    def text(self):
        return "\n".join(self.lines()) + "\n"

    def to_json(self):
        return {
            "suite": self.name,
            "verdict": "pass" if self.passed else "fail",
            "groups": {g: {"passed": ok, "total": t} for g, (ok, t) in self.tally().items()},
            "cases": [
                {"group": c.group, "label": c.label, "passed": c.passed, "detail": c.detail} for c in self.cases
            ],
        }


# ----------------------------------------------------------------- helpers

SIG2 = Signature.of("p, q")
SIG3 = Signature.of("p, q, r")


def _f(text, sig=SIG3):
    return parse(text, sig)


def _texts(items, sig):
    return frozenset(bc.item_text(x, sig) for x in items)


def _family(fam):
    return {frozenset(t) for t in fam.texts()}


def _show(family):
    ordered = [sorted(s, key=order_key) for s in family]
    return "; ".join("{" + ", ".join(s) + "}" for s in sorted(ordered, key=lambda s: (len(s), [order_key(x) for x in s])))


def _partial_meet_outcomes(rems):
    """Meets of every non-empty subfamily of ``rems`` (all selection functions)."""
    members = list(rems.members)
    if not members:
        return {rems.base.every}
    out = set()
    for k in range(1, len(members) + 1):
        for chosen in itertools.combinations(members, k):
            m = rems.base.every
            for s in chosen:
                m &= s
            out.add(m)
    return out


def _horn(gens, sig=SIG3):
    return hc.HornBeliefSet.from_generators([_f(g, sig) for g in gens], sig)


EX4_H = ("p -> q", "q -> r")
EX5_H = ("p & q",)


# ------------------------------------------------------------ the examples


def suite_example1():
    res = SuiteResult("example1")
    K = PropBeliefSet.from_formulas([_f("p -> q"), _f("q -> r")], SIG3)
    f = _f("p -> r")
    kernels = _family(bs.bs_kernels(K, f, "horn"))
    expected = {frozenset({"p -> r"}), frozenset({"p -> q", "q -> r"}), frozenset({"p -> q", "p & q -> r"})}
    res.add("kernels", "Horn-fragment kernels of p -> r", kernels == expected, _show(kernels))
    sigma = bc.Explicit([_f("p -> r"), _f("p -> q"), _f("p & q -> r")])
    cut = bs.bs_kernel_base(K, f, sigma, "horn")
    target = _f("p & q -> r")
    res.add("incision", "p & q -> r removed by the incision", "p & q -> r" not in _texts(cut, SIG3), str(cut))
    res.add("incision", "remaining set still entails p & q -> r", cut.entails(target))
    closed = bs.bs_contract(K, f, bs.Kernel(sigma, "horn"))
    res.add("closure", "closed outcome contains p & q -> r", closed.contains(target))
    res.add("closure", "closed outcome does not contain p -> r", not closed.contains(f))
    H = _horn(EX4_H)
    horn_out = hc.horn_kernel_e_contraction(H, f, sigma)
    res.add("closure", "Horn kernel e-contraction contains p & q -> r", horn_out.contains(target), repr(horn_out))
    return res


EX2_BASE = ("p -> q", "q -> r", "p & q -> r", "p & r -> q")


def suite_example2():
    res = SuiteResult("example2")
    B = bc.BeliefBase.of([_f(x) for x in EX2_BASE], SIG3)
    f = _f("p -> r")
    rems = bc.base_remainders(B, f)
    expected = {frozenset({"p -> q", "p & r -> q"}), frozenset({"q -> r", "p & q -> r", "p & r -> q"})}
    res.add("remainders", "two maxichoice remainders", _family(rems) == expected, _show(_family(rems)))
    fm = bc.base_full_meet(B, f)
    res.add("full meet", "full meet is {p & r -> q}", _texts(fm, SIG3) == {"p & r -> q"}, str(fm))
    X = [_f("p & q -> r"), _f("p & r -> q")]
    xs = B.bits_of(X)
    infra = bc.base_infra_remainders(B, f)
    res.add("X", "X is a base infra remainder", infra.contains(X))
    via_kernel = bc.base_kernel_contraction(B, f, bc.Explicit([_f("p -> q"), _f("q -> r")]))
    res.add("X", "X is a kernel contraction outcome", _texts(via_kernel, SIG3) == _texts(X, SIG3), str(via_kernel))
    outcomes = _partial_meet_outcomes(rems)
    res.add("selection", f"{len(outcomes)} partial meet outcomes over all selection functions", len(outcomes) == 3)
    res.add("selection", "no selection function yields X", xs not in outcomes)
    return res


def suite_example3():
    res = SuiteResult("example3")
    B = bc.BeliefBase.of([_f("p", SIG2), _f("p | q", SIG2), _f("p <-> q", SIG2)], SIG2)
    f = _f("p & q", SIG2)
    kernels = bc.base_kernels(B, f)
    expected_k = {frozenset({"p", "p <-> q"}), frozenset({"p | q", "p <-> q"})}
    res.add("families", "kernels", _family(kernels) == expected_k, _show(_family(kernels)))
    rems = bc.base_remainders(B, f)
    expected_r = {frozenset({"p", "p | q"}), frozenset({"p <-> q"})}
    res.add("families", "remainders", _family(rems) == expected_r, _show(_family(rems)))
    sigma = bc.Explicit([_f("p | q", SIG2), _f("p <-> q", SIG2)])
    out = bc.base_kernel_contraction(B, f, sigma)
    res.add("kernel", "sigma outcome is {p}", _texts(out, SIG2) == {"p"}, str(out))
    outcomes = _partial_meet_outcomes(rems)
    res.add("separation", f"{len(outcomes)} partial meet outcomes", len(outcomes) == 3)
    res.add("separation", "{p} is not a partial meet outcome", B.bits_of(out.elements) not in outcomes)
    table = po.ContractionTable("base", B, [f], {f: out.elements})
    rel = po.check(table, "B-4")
    core = po.check(table, "B-5")
    res.add("postulates", "Relevance fails", not rel.passed, str(rel.counterexample))
    res.add("postulates", "Core-retainment holds", core.passed)
    return res


def suite_example4():
    res = SuiteResult("example4")
    H = _horn(EX4_H)
    f = _f("p -> r")
    h1, h2, hfm = _horn(["p -> q"]), _horn(["q -> r", "p & r -> q"]), _horn(["p & r -> q"])
    rems = hc.e_remainders(H, f)
    res.add("e-remainders", "H1mc and H2mc", set(rems) == {h1, h2}, ", ".join(map(repr, rems)))
    fam = hc.e_families(H, f)[1]
    outcomes = {hc._from_bits(H, s) for s in _partial_meet_outcomes(fam)}
    res.add("partial meet", "outcomes are exactly H1mc, H2mc, Hfm", outcomes == {h1, h2, hfm})
    res.add("partial meet", "full meet is Hfm", hc.e_contract(H, f) == hfm)
    infra = hc.infra_e_remainders(H, f)
    hp = _horn(["p & q -> r", "p & r -> q"])
    res.add("infra", "H' is an infra e-remainder", hp in infra)
    res.add("infra", "H' is not a partial meet outcome", hp not in outcomes)
    res.add("infra", "Cn(q -> r) is not an infra e-remainder", _horn(["q -> r"]) not in infra)
    return res


def suite_example5():
    res = SuiteResult("example5")
    H = _horn(EX5_H)
    f = _f("p & q")
    expected = {_horn(["p", "r -> q"]), _horn(["q", "r -> p"]), _horn(["p -> q", "q -> p", "r -> p", "r -> q"])}
    rems = hc.e_remainders(H, f)
    res.add("e-remainders", "three e-remainders", set(rems) == expected and len(rems) == 3, ", ".join(map(repr, rems)))
    infra = hc.infra_e_remainders(H, f)
    members = infra.members()
    res.add("infra", f"{len(members)} infra e-remainders, walk agrees with brute force", members == infra.members_naive())
    rp, rq = HornClause(frozenset("r"), "p"), HornClause(frozenset("r"), "q")
    res.add("infra", "every member contains r -> p and r -> q", all(rp in X.clauses and rq in X.clauses for X in members))
    V = ModelSet(SIG3, H.mask) | ModelSet.from_valuations(SIG3, ["101"])
    closed = intersection_closure(V)
    res.add("meet closure", "closure of [H] + 101 is the models of p", closed.mask == model_mask(_f("p"), SIG3), repr(closed))
    theory = hc.HornBeliefSet(SIG3, frozenset(c for c in enumerate_clauses(SIG3) if closed.mask & ~clause_mask(c, SIG3) == 0))
    res.add("meet closure", "Cn(p) is not an e-remainder", theory not in rems)
    res.add("meet closure", "Cn(p) is strictly inside the e-remainder Cn(p & (r -> q))", theory < _horn(["p", "r -> q"]))
    return res


# ------------------------------------------------------------ the theorems


THM7_UNIVERSE = ("p -> q", "q -> r", "p & q -> r", "p & r -> q", "p -> r")
THM7_TARGETS = ("p -> r", "q -> r", "p -> q")


def suite_thm7():
    res = SuiteResult("thm7")
    items = [_f(x) for x in THM7_UNIVERSE]
    for k in range(len(items) + 1):
        for chosen in itertools.combinations(items, k):
            B = bc.BeliefBase.of(chosen, SIG3)
            for ft in THM7_TARGETS:
                f = _f(ft)
                kernel = set(bc.kernel_outcomes(B, f))
                fam = bc.base_infra_remainders(B, f)
                infra = set(fam.enumerate().members) if not fam.empty else {B.every}
                res.add("kernel = infra", f"{B} by {ft}", kernel == infra, f"{len(kernel)} outcomes")
    return res


def _all_model_sets(sig):
    return [ModelSet(sig, m) for m in range(1 << (1 << len(sig)))]


def _set_case(K, f, theories):
    cm = bs.countermodels(f, K.sig)
    infra = {X.models.mask for X in bs.bs_infra_remainders(K, f).members()} or {K.models.mask}
    if not K.contains(f):
        pm = {K.models.mask}
    else:
        vals = list(cm)
        pm = set()
        for k in range(1, len(vals) + 1):
            for V in itertools.combinations(vals, k):
                pm.add(bs.bs_contract(K, f, bs.PartialMeet(V)).models.mask)
    fm = bs.bs_contract(K, f).models.mask
    mcs = [bs.bs_contract(K, f, bs.Maxichoice(w)).models.mask for w in cm] if K.contains(f) else [K.models.mask]
    sandwich = {m for m in theories if m & ~fm == 0 and any(mc & ~m == 0 for mc in mcs)}
    return infra == pm == sandwich, len(pm)


def suite_thm3():
    res = SuiteResult("thm3")
    theories2 = range(1 << 4)
    for V in _all_model_sets(SIG2):
        K = theory_of(V)
        for m in range(1, full_mask(SIG2)):
            f = synthesize(ModelSet(SIG2, m))
            ok, n = _set_case(K, f, theories2)
            res.add("exhaustive, 2 atoms", f"{K!r} by {render(f)}", ok, f"{n} outcomes")
    rng = random.Random(SEED)
    theories3 = range(1 << 8)
    full = full_mask(SIG3)
    for _ in range(200):
        K = theory_of(ModelSet(SIG3, rng.randrange(full + 1)))
        f = synthesize(ModelSet(SIG3, rng.randrange(1, full)))
        ok, n = _set_case(K, f, theories3)
        res.add("sampled, 3 atoms", f"{K!r} by {render(f)}", ok, f"{n} outcomes")
    return res


def _entailed_clauses(H):
    return [c for c in enumerate_clauses(H.sig) if c in H.clauses]


def _horn_kernel_outcomes(H, c):
    """Closed outcomes of Horn kernel e-contraction over every valid incision."""
    B = H.base
    kernels = bc.base_kernels(B, [c])
    table = en.conj_table(B.masks, full_mask(H.sig))
    kept = np.array(bc.valid_incisions(kernels), dtype=np.int64) ^ B.every
    out = set()
    for m in np.unique(table[kept]):
        m = int(m)
        out.add(frozenset(x for x, xm in zip(B.elements, B.masks) if m & ~xm == 0))
    return out


def _horn_subjects():
    return [("chain", _horn(EX4_H)), ("conjunction", _horn(EX5_H))]


def suite_thm8():
    res = SuiteResult("thm8")
    for name, H in _horn_subjects():
        for c in _entailed_clauses(H):
            kernel = _horn_kernel_outcomes(H, c)
            infra = {X.clauses for X in hc.infra_e_remainders(H, [c]).members()}
            res.add(name, f"{H!r} by {c.render(H.sig)}", kernel == infra, f"{len(infra)} outcomes")
    return res


FIVE = ("K-1", "K-2", "K-4", "core-retainment")  # K-5 is checked on whole tables
TEN = ("K-1", "K-2", "K-3", "K-4", "H-e6", "H-e7")


def _passes(H, phi, X, names):
    return all(not po.check_point("horn-set", H, phi, X, n) for n in names)


def _infra_operator(policy):
    def op(H, phi):
        fam = hc.infra_e_remainders(H, phi)
        if fam.empty:
            return H
        members = fam.members()
        if policy == "meet":
            return members[0]
        if policy == "largest":
            return members[-1]
        return members[len(members) // 2]

    return op


def suite_thm9():
    res = SuiteResult("thm9")
    for name, H in _horn_subjects():
        sig = H.sig
        grid = po.default_grid("horn-set", sig)
        theories = hc.all_horn_belief_sets(sig)
        # soundness: every infra outcome passes the five postulates
        for c in _entailed_clauses(H):
            phi = c.formula(sig)
            members = hc.infra_e_remainders(H, phi).members()
            ok = all(_passes(H, phi, X, FIVE) for X in members)
            res.add(f"{name} soundness", f"infra outcomes for {c.render(sig)}", ok, f"{len(members)} outcomes")
        for policy in ("meet", "middle", "largest"):
            table = po.build_table("horn-set", H, _infra_operator(policy), grid)
            reports = [po.check(table, n) for n in ("K-1", "K-2", "K-4", "K-5", "core-retainment", "K-3", "H-e7")]
            failed = [r.name for r in reports if not r.passed]
            res.add(f"{name} soundness", f"operator choosing the {policy} infra member", not failed, ", ".join(failed))
        # completeness and the derived postulates, over every candidate output
        for phi in grid:
            fam = hc.infra_e_remainders(H, phi)
            bad_complete, bad_derived, bad_ten = [], [], []
            for X in theories:
                five = _passes(H, phi, X, FIVE)
                if five and not fam.empty and X not in fam:
                    bad_complete.append(repr(X))
                if _passes(H, phi, X, ("K-2", "core-retainment")) and not _passes(H, phi, X, ("K-3", "H-e7")):
                    bad_derived.append(repr(X))
                if five != _passes(H, phi, X, TEN):
                    bad_ten.append(repr(X))
            label = bc.item_text(phi, sig)
            res.add(f"{name} completeness", f"candidates for {label}", not bad_complete, "; ".join(bad_complete[:3]))
            res.add(f"{name} derived postulates", f"Vacuity and Failure for {label}", not bad_derived, "; ".join(bad_derived[:3]))
            res.add(f"{name} H-e6 cross-check", f"same verdicts for {label}", not bad_ten, "; ".join(bad_ten[:3]))
    H = _horn(EX4_H)
    f = _f("p -> r")
    table = po.ContractionTable("horn-set", H, [f], {f: hc.e_contract(H, f)})
    rec = po.check(table, "K-6")
    cx = rec.counterexample or {}
    res.add("Recovery", "full meet on the chain subject fails Recovery at q -> r", not rec.passed and cx.get("sentence") == "q -> r", str(rec))
    return res


def _random_base(rng):
    n = rng.randint(1, 3)
    sig = Signature(tuple("pqr"[:n]))
    full = full_mask(sig)
    size = rng.randint(1, 8)
    items = [synthesize(ModelSet(sig, rng.randrange(full + 1))) for _ in range(size)]
    f = synthesize(ModelSet(sig, rng.randrange(full + 1)))
    return bc.BeliefBase.of(items, sig), f


def suite_lemma_a3():
    res = SuiteResult("lemmaA3-duality")
    rng = random.Random(SEED)
    for i in range(500):
        B, f = _random_base(rng)
        kernels, rems = bc.base_families(B, f)
        kd, rd = bc.base_families(B, f, engine="dualize")
        label = f"#{i} {B} by {render(f)}"
        res.add("engines agree", label, kd.members == kernels.members and rd.members == rems.members)
        meet = rems.meet() if rems.members else B.every
        res.add("B minus kernels = meet of remainders", label, B.every & ~kernels.union() == meet)
        if rems.members:
            incisions = bc.minimal_incisions(kernels)
            complements = sorted(B.every & ~s for s in incisions)
            res.add("complements of minimal incisions = remainders", label, complements == sorted(rems.members))
            outs = {B.every & ~s for s in incisions}
            res.add("minimal incisions give maxichoice outcomes", label, outs <= set(rems.members))
    return res


def suite_horn_oracle():
    res = SuiteResult("horn-entailment-oracle")
    universe = enumerate_clauses(SIG2)
    masks = [clause_mask(c, SIG2) for c in universe]
    full = full_mask(SIG2)
    bad = 0
    total = 0
    for s in range(1 << len(universe)):
        X = [c for i, c in enumerate(universe) if s >> i & 1]
        xm = full
        for i in en.bits(s):
            xm &= masks[i]
        for c, cm in zip(universe, masks):
            total += 1
            if horn_entails(X, c) != (xm & ~cm == 0):
                bad += 1
                res.add("exhaustive, 2 atoms", f"{[str(x) for x in X]} |= {c}", False)
    res.add("exhaustive, 2 atoms", f"{total} (clause set, clause) pairs", bad == 0, f"{bad} disagreements")
    sig4 = Signature.of("p, q, r, s")
    universe = enumerate_clauses(sig4)
    full = full_mask(sig4)
    rng = random.Random(SEED)
    bad = 0
    for _ in range(1000):
        X = rng.sample(universe, rng.randint(0, 8))
        c = rng.choice(universe)
        xm = full
        for x in X:
            xm &= clause_mask(x, sig4)
        if horn_entails(X, c) != (xm & ~clause_mask(c, sig4) == 0):
            bad += 1
            res.add("random, 4 atoms", f"{[str(x) for x in X]} |= {c}", False)
    res.add("random, 4 atoms", "1000 random pairs", bad == 0, f"{bad} disagreements")
    return res


def suite_non_decomposability():
    res = SuiteResult("non-decomposability")
    w = hc.decomposability_witness([_f("q", SIG2)], [_f("p -> q", SIG2)], SIG2)
    res.add("witness search", "X = {q}, X' = {p -> q}: no witness", w is None, "none-exists" if w is None else repr(w))
    w = hc.decomposability_witness([_f("p & q", SIG2)], [_f("p", SIG2)], SIG2)
    ok = w is not None and w < _horn(["p & q"], SIG2) and _horn(["p"], SIG2).mask & w.mask == _horn(["p & q"], SIG2).mask
    res.add("witness search", "X = {p & q}, X' = {p}: witness found", ok, repr(w))
    return res


SUITES = {
    "example1": suite_example1,
    "example2": suite_example2,
    "example3": suite_example3,
    "example4": suite_example4,
    "example5": suite_example5,
    "thm7": suite_thm7,
    "thm3": suite_thm3,
    "thm8": suite_thm8,
    "thm9": suite_thm9,
    "lemmaA3-duality": suite_lemma_a3,
    "horn-entailment-oracle": suite_horn_oracle,
    "non-decomposability": suite_non_decomposability,
}


def run_suite(name):
    try:
        fn = SUITES[name]
    except KeyError:
        from .errors import InputError

        raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all") from None
    return fn()
