"""Contraction of Horn belief sets.

A Horn belief set is kept as the finite set of every non-tautological Horn
clause over the signature that it contains.  Because that set is finite,
e-remainders are just base remainders of the clause set, and the base
machinery (selection, incision, subset bitmasks) carries over directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import base_change as bc
from . import enumeration as en
from .config import DEFAULT_LIMITS, check_limit
from .errors import InputError, InvalidInfraChoice, InvalidParameter, PreconditionError
from .formula import Formula, HornClause, Signature, conjoin, enumerate_clauses, horn_clauses, order_key, parse
from .semantics import ModelSet, clause_mask, full_mask, horn_closure, horn_entails

__all__ = [
    "HornBeliefSet",
    "OrderSpec",
    "e_remainders",
    "e_contract",
    "infra_e_remainders",
    "infra_e_contraction",
    "horn_kernel_e_contraction",
    "decomposability_witness",
    "clauses_of",
]


def clauses_of(item, sig):
    """Horn clauses of a formula, clause, clause text or collection of these."""
    if isinstance(item, str):
        item = parse(item, sig)
    if isinstance(item, HornClause):
        return [item]
    if isinstance(item, Formula):
        return sorted(horn_clauses(item), key=lambda c: c.sort_key(sig))
    out = []
    for x in item:
        out.extend(clauses_of(x, sig))
    return out


@dataclass(frozen=True)
class HornBeliefSet:
    """A Horn theory, stored as all the non-tautological clauses it contains."""

    sig: Signature
    clauses: frozenset

    @classmethod
    def from_generators(cls, items, sig, limits=DEFAULT_LIMITS):
        sig = Signature.of(sig)
        return cls(sig, horn_closure(clauses_of(items, sig), sig, limits))

    @cached_property
    def base(self):
        """The clause set as a belief base in global formula order."""
        return bc.BeliefBase.of(self.clauses, self.sig)

    @cached_property
    def mask(self):
        m = full_mask(self.sig)
        for c in self.clauses:
            m &= clause_mask(c, self.sig)
        return m

    @property
    def models(self):
        return ModelSet(self.sig, self.mask)

    def contains(self, item):
        return all(horn_entails(self.clauses, c) for c in clauses_of(item, self.sig))

    __contains__ = contains

    def __len__(self):
        return len(self.clauses)

    def __le__(self, other):
        return self.clauses <= other.clauses

    def __lt__(self, other):
        return self.clauses < other.clauses

    def generators(self):
        """Irredundant generating clauses, deterministic.

        Clauses are dropped longest-first whenever the others still entail
        them, so short clauses survive.
        """
        kept = sorted(self.clauses, key=lambda c: order_key(c.formula(self.sig)))
        for c in reversed(list(kept)):
            rest = [d for d in kept if d != c]
            if horn_entails(rest, c):
                kept = rest
        return kept

    def generator_texts(self):
        return [c.render(self.sig) for c in self.generators()]

    def formula(self):
        return conjoin([c.formula(self.sig) for c in self.generators()])

    def __repr__(self):
        return "Cn_HL({" + ", ".join(self.generator_texts()) + "})"


def _from_bits(H, s):
    return HornBeliefSet(H.sig, frozenset(H.base.subset(s)))


def _target(H, f):
    return clauses_of(f, H.sig)


# ----------------------------------------------------------- e-remainders


def e_families(H, f, limits=DEFAULT_LIMITS):
    return bc.base_families(H.base, _target(H, f), limits)


def e_remainders(H, f, limits=DEFAULT_LIMITS):
    """Maximal Horn subtheories of ``H`` that do not entail ``f``."""
    rems = e_families(H, f, limits)[1]
    return [_from_bits(H, s) for s in rems]


@dataclass(frozen=True)
class OrderSpec:
    """Plausibility order on e-remainders: the largest key is the most plausible.

    The default key is the global formula order of the remainder's
    conjoined generators.
    """

    key: object = None

    def rank(self, X):
        if self.key is not None:
            return self.key(X)
        return order_key(X.formula())


def e_contract(H, f, method="full-meet", selection=bc.ALL, order=OrderSpec(), limits=DEFAULT_LIMITS):
    """Partial meet style e-contraction of ``H`` by ``f``.

    ``method`` is ``partial-meet`` (with ``selection``), ``maxichoice`` (the
    first remainder, or the one named by an index selection), ``full-meet``
    or ``orderly-maxichoice`` (the most plausible remainder under ``order``).
    """
    rems = e_families(H, f, limits)[1]
    if not rems.members:
        return H
    if method == "full-meet":
        chosen = rems.members
    elif method == "partial-meet":
        chosen = bc.select(rems.members, selection)
    elif method == "maxichoice":
        if selection.kind == "all":
            selection = bc.FIRST
        chosen = bc.select(rems.members, selection)
        if len(chosen) != 1:
            raise InvalidParameter("maxichoice needs exactly one remainder")
    elif method == "orderly-maxichoice":
        chosen = [max(rems.members, key=lambda s: (order.rank(_from_bits(H, s)), -s))]
    else:
        raise InvalidParameter(f"unknown e-contraction method {method!r}")
    out = H.base.every
    for s in chosen:
        out &= s
    return _from_bits(H, out)


# ------------------------------------------------------------------ infra


@dataclass(frozen=True)
class HornInfraFamily:
    """Horn theories lying between the meet of the e-remainders and one of them."""

    H: HornBeliefSet
    remainders: bc.SubsetFamily
    limits: object = DEFAULT_LIMITS

    @property
    def empty(self):
        return not self.remainders.members

    @property
    def floor(self):
        return _from_bits(self.H, self.remainders.meet())

    def _closed(self, s):
        B = self.H.base
        m = B.mask_of_subset(s)
        outside = B.every & ~s
        return all(m & ~B.masks[i] != 0 for i in en.bits(outside))

    def contains(self, X):
        if self.empty:
            return False
        if not isinstance(X, HornBeliefSet):
            X = HornBeliefSet.from_generators(X, self.H.sig, self.limits)
        try:
            s = self.H.base.bits_of(X.clauses)
        except InputError:
            return False
        floor = self.remainders.meet()
        if s & floor != floor or not any(s & r == s for r in self.remainders):
            return False
        return self._closed(s)

    __contains__ = contains

    def bitsets(self):
        if self.empty:
            return []
        floor = self.remainders.meet()
        out = set()
        for r in self.remainders:
            free = r & ~floor
            check_limit("infra walk size", 1 << en.popcount(free), self.limits.family)
            out.update(floor | sub for sub in en.submasks(free) if self._closed(floor | sub))
            check_limit("infra family size", len(out), self.limits.infra)
        return sorted(out, key=lambda s: (en.popcount(s), s))

    def members(self):
        return [_from_bits(self.H, s) for s in self.bitsets()]

    def members_naive(self):
        """Reference path: filter every subset of the clause set."""
        B = self.H.base
        check_limit("clause set size", len(B), self.limits.exhaustive_base)
        floor = 0 if self.empty else self.remainders.meet()
        out = []
        for s in range(B.every + 1):
            if self.empty:
                break
            if s & floor == floor and any(s & r == s for r in self.remainders) and self._closed(s):
                out.append(s)
        return [_from_bits(self.H, s) for s in sorted(out, key=lambda s: (en.popcount(s), s))]

    def __len__(self):
        return len(self.bitsets())


def infra_e_remainders(H, f, limits=DEFAULT_LIMITS):
    return HornInfraFamily(H, e_families(H, f, limits)[1], limits)


def infra_e_contraction(H, f, choice=bc.MEET_OF_ALL, limits=DEFAULT_LIMITS):
    fam = infra_e_remainders(H, f, limits)
    if fam.empty:
        return H
    if choice.kind == "meet":
        return fam.floor
    if choice.kind == "remainder":
        rems = fam.remainders.members
        if not 0 <= choice.index < len(rems):
            raise InvalidInfraChoice(f"remainder index {choice.index} out of range for {len(rems)} e-remainders")
        return _from_bits(H, rems[choice.index])
    if choice.kind == "set":
        X = HornBeliefSet.from_generators(choice.items, H.sig, limits)
        if X not in fam:
            raise InvalidInfraChoice(f"{X!r} is not an infra e-remainder")
        return X
    raise InvalidInfraChoice(f"unknown infra choice {choice.kind!r}")


# ----------------------------------------------------------------- kernel


def horn_kernel_e_contraction(H, f, incision=bc.MAXIMUM, limits=DEFAULT_LIMITS):
    """Closure of the kernel contraction of the clause set of ``H``."""
    kept = bc.base_kernel_contraction(H.base, _target(H, f), incision, limits)
    return HornBeliefSet.from_generators(kept.elements, H.sig, limits)


# ------------------------------------------------------ decomposability


def decomposability_witness(X, Xp, sig, limits=DEFAULT_LIMITS):
    """Smallest X'' with Cn(X'') strictly inside Cn(X) and Cn(X' ∪ X'') = Cn(X).

    ``X`` and ``X'`` are Horn clause sets (or formulas).  Candidates are the
    subsets of the closure of ``X``, searched by size then bitmask; ``None``
    when no candidate qualifies.
    """
    sig = Signature.of(sig)
    CX = HornBeliefSet.from_generators(X, sig, limits)
    CXp = HornBeliefSet.from_generators(Xp, sig, limits)
    if not CXp.clauses:
        raise PreconditionError("Cn(X') must be strictly larger than Cn(∅)")
    if not CXp.clauses < CX.clauses:
        raise PreconditionError("Cn(X') must be strictly contained in Cn(X)")
    B = CX.base
    check_limit("closure size for exhaustive search", len(B), limits.exhaustive_base)
    full = full_mask(sig)
    table = en.conj_table(B.masks, full)
    mx, mxp = np.uint64(CX.mask), np.uint64(CXp.mask)
    # Horn sets have equal closures iff they have equal models, and the
    # models of X' ∪ X'' are the meet of the two model masks.
    ok = (table != mx) & ((table & mxp) == mx)
    cands = [int(s) for s in np.flatnonzero(ok)]
    if not cands:
        return None
    best = min(cands, key=lambda s: (en.popcount(s), s))
    return HornBeliefSet.from_generators(B.subset(best), sig, limits)


def all_horn_belief_sets(sig, limits=DEFAULT_LIMITS):
    """Every Horn belief set over ``sig``, one per meet-closed set of models."""
    from .semantics import intersection_closure

    sig = Signature.of(sig)
    check_limit("propositional atoms", len(sig), min(limits.clause_atoms, 3))
    universe = enumerate_clauses(sig, limits)
    masks = [clause_mask(c, sig) for c in universe]
    seen = set()
    out = []
    for V in range(1 << (1 << len(sig))):
        m = intersection_closure(ModelSet(sig, V)).mask
        if m in seen:
            continue
        seen.add(m)
        out.append(HornBeliefSet(sig, frozenset(c for c, cm in zip(universe, masks) if m & ~cm == 0)))
    return out
