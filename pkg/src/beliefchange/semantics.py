"""Truth-table semantics, Horn forward chaining and model-set utilities.

A valuation over an ``n``-atom signature is an int whose binary expansion,
padded to ``n`` digits, lists the truth values in signature order: over
``p, q, r`` the int ``0b011`` makes ``q`` and ``r`` true.  A set of
valuations is an int bitmask with bit ``v`` set when valuation ``v`` is in
the set, so entailment checks reduce to bitwise operations.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .config import DEFAULT_LIMITS, check_limit
from .errors import InputError
from .formula import (
    BOTTOM,
    TOP,
    And,
    Atom,
    HornClause,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    conjoin,
    enumerate_clauses,
    _render,
    order_key,
    render,
)


# ----------------------------------------------------------------- valuations


def valuation_text(v, n):
    return format(v, f"0{n}b") if n else ""


def parse_valuation(text, sig):
    text = text.strip()
    if len(text) != len(sig) or set(text) - {"0", "1"}:
        raise InputError(f"valuation {text!r} is not a {len(sig)}-digit bit pattern")
    return int(text, 2)


def true_atoms(v, sig):
    n = len(sig)
    return frozenset(a for i, a in enumerate(sig.atoms) if v >> (n - 1 - i) & 1)


def valuation_meet(v1, v2):
    """Atoms true in the meet are those true in both valuations."""
    return v1 & v2


@functools.lru_cache(maxsize=None)
def _atom_masks(sig):
    n = len(sig)
    masks = {}
    for i, a in enumerate(sig.atoms):
        m = 0
        for v in range(1 << n):
            if v >> (n - 1 - i) & 1:
                m |= 1 << v
        masks[a] = m
    return masks


def full_mask(sig):
    return (1 << (1 << len(sig))) - 1


def model_mask(f, sig):
    """Bitmask of the valuations over ``sig`` satisfying ``f``."""
    atoms = _atom_masks(sig)
    full = full_mask(sig)

    def go(node):
        if isinstance(node, Atom):
            try:
                return atoms[node.name]
            except KeyError:
                from .errors import UnknownAtomError

                raise UnknownAtomError(node.name, sig.atoms) from None
        if isinstance(node, Not):
            return full ^ go(node.child)
        if isinstance(node, And):
            return go(node.left) & go(node.right)
        return full

    return go(f)


def clause_mask(c, sig):
    atoms = _atom_masks(sig)
    body = full_mask(sig)
    for a in c.body:
        body &= atoms[a]
    head = 0 if c.head is None else atoms[c.head]
    return (full_mask(sig) ^ body) | head


def mask_of(item, sig):
    if isinstance(item, HornClause):
        return clause_mask(item, sig)
    return model_mask(item, sig)


@dataclass(frozen=True)
class ModelSet:
    """A set of valuations over one signature, stored as a bitmask."""

    sig: Signature
    mask: int

    @classmethod
    def from_valuations(cls, sig, valuations):
        sig = Signature.of(sig)
        m = 0
        for v in valuations:
            if isinstance(v, str):
                v = parse_valuation(v, sig)
            m |= 1 << v
        return cls(sig, m)

    @classmethod
    def all(cls, sig):
        sig = Signature.of(sig)
        return cls(sig, full_mask(sig))

    def __iter__(self):
        m, v = self.mask, 0
        while m:
            if m & 1:
                yield v
            m >>= 1
            v += 1

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, v):
        return bool(self.mask >> v & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __or__(self, other):
        return ModelSet(self.sig, self.mask | other.mask)

    def __and__(self, other):
        return ModelSet(self.sig, self.mask & other.mask)

    def __sub__(self, other):
        return ModelSet(self.sig, self.mask & ~other.mask)

    def complement(self):
        return ModelSet(self.sig, full_mask(self.sig) ^ self.mask)

    def strings(self):
        n = len(self.sig)
        return [valuation_text(v, n) for v in self]

    def __repr__(self):
        return f"ModelSet({{{', '.join(self.strings())}}})"


def models(X, sig, limits=DEFAULT_LIMITS):
    """Valuations satisfying every member of ``X`` (formulas or clauses)."""
    sig = Signature.of(sig)
    check_limit("propositional atoms", len(sig), limits.prop_atoms)
    m = full_mask(sig)
    for f in X:
        m &= mask_of(f, sig)
    return ModelSet(sig, m)


def entails(X, f, sig, limits=DEFAULT_LIMITS):
    sig = Signature.of(sig)
    return models(X, sig, limits) <= models([f], sig, limits)


def equivalent(f, g, sig):
    return model_mask(f, sig) == model_mask(g, sig)


def is_tautology(f, sig):
    return model_mask(f, sig) == full_mask(sig)


# --------------------------------------------------------- Horn entailment


def _forward_chain(clauses, facts):
    """Saturate ``facts`` under ``clauses``; ``None`` signals that falsum was derived.

    Counter-based unit propagation: each clause tracks how many body atoms
    are still unproved and fires when the count drops to zero.
    """
    facts = set(facts)
    watching = {}
    missing = []
    agenda = []
    for i, c in enumerate(clauses):
        left = [a for a in c.body if a not in facts]
        missing.append(len(left))
        for a in left:
            watching.setdefault(a, []).append(i)
        if not left:
            agenda.append(i)
    while agenda:
        c = clauses[agenda.pop()]
        if c.head is None:
            return None
        if c.head in facts:
            continue
        facts.add(c.head)
        for j in watching.get(c.head, ()):
            missing[j] -= 1
            if missing[j] == 0:
                agenda.append(j)
    return facts


def horn_entails(X, c):
    """Does the clause set ``X`` entail ``c`` (a clause or a ``(body, head)`` pair)?"""
    if isinstance(c, HornClause):
        body, head = c.body, c.head
    else:
        body, head = c
        body = frozenset(body)
        if head == "T" or head is TOP:
            return True
        if head == "F" or head is BOTTOM:
            head = None
    if head is not None and head in body:
        return True
    derived = _forward_chain(list(X), body)
    return derived is None or (head is not None and head in derived)


def horn_closure(X, sig, limits=DEFAULT_LIMITS):
    """All non-tautological clauses over ``sig`` entailed by ``X``."""
    sig = Signature.of(sig)
    check_limit("clause-universe atoms", len(sig), limits.clause_atoms)
    X = list(X)
    out = set()
    for k in range(len(sig) + 1):
        for body in itertools.combinations(sig.atoms, k):
            bset = frozenset(body)
            derived = _forward_chain(X, bset)
            if derived is None:
                out.update(HornClause(bset, h) for h in sig.atoms if h not in bset)
                out.add(HornClause(bset, None))
            else:
                out.update(HornClause(bset, h) for h in derived - bset)
    return frozenset(out)


def horn_closure_naive(X, sig, limits=DEFAULT_LIMITS):
    """Closure by testing every clause of the universe; reference path."""
    return frozenset(c for c in enumerate_clauses(sig, limits) if horn_entails(X, c))


# ------------------------------------------------------------ model meets


def intersection_closure(V):
    """Least superset of ``V`` closed under pairwise valuation meets."""
    vals = set(V)
    frontier = list(vals)
    while frontier:
        new = []
        for v in frontier:
            for w in list(vals):
                m = valuation_meet(v, w)
                if m not in vals:
                    vals.add(m)
                    new.append(m)
        frontier = new
    return ModelSet.from_valuations(V.sig, vals)


def is_meet_closed(V):
    vals = list(V)
    return all(valuation_meet(a, b) in V for a, b in itertools.combinations(vals, 2))


# ------------------------------------------------------------ belief sets


@dataclass(frozen=True)
class PropBeliefSet:
    """A logically closed propositional theory, identified with its models."""

    models: ModelSet

    @property
    def sig(self):
        return self.models.sig

    @classmethod
    def from_formulas(cls, formulas, sig, limits=DEFAULT_LIMITS):
        return cls(models(formulas, sig, limits))

    def contains(self, f):
        return self.models.mask & ~model_mask(f, self.sig) == 0

    __contains__ = contains

    def __le__(self, other):
        # theory inclusion reverses model inclusion
        return other.models <= self.models

    def __lt__(self, other):
        return self <= other and self != other

    def is_consistent(self):
        return self.models.mask != 0

    def formula(self):
        """One formula axiomatising the theory."""
        return synthesize(self.models)

    def __repr__(self):
        return f"Th({{{', '.join(self.models.strings())}}})"


def theory_of(V):
    return PropBeliefSet(V)


# ------------------------------------------------------- representatives


def _key(f):
    return order_key(render(f))


@functools.lru_cache(maxsize=8)
def _formula_table(sig):
    """Shortest formula found for every truth function over ``sig``.

    Bottom-up search combining the current champions of every class with
    each connective until no class improves.  Only used for ``n <= 3``.
    """
    full = full_mask(sig)
    best = {}
    memo = {}  # id -> (formula, (text, prec)) for current champions

    def offer(f, m):
        text = _render(f, memo)[0]
        k = (len(text), text)
        cur = best.get(m)
        if cur is None or k < cur[0]:
            best[m] = (k, f)
            return True
        return False

    atoms = _atom_masks(sig)
    for a in sig.atoms:
        offer(Atom(a), atoms[a])
    offer(TOP, full)
    offer(BOTTOM, 0)
    fresh = set(best)
    while fresh:
        items = [(m, f) for m, (_, f) in best.items()]
        for _, f in items:
            memo[id(f)] = (f, _render(f))
        improved = set()
        for m, f in items:
            if m in fresh and offer(Not(f), full ^ m):
                improved.add(full ^ m)
        # semi-naive: only pairs touching a class that improved last round
        for (m1, f1), (m2, f2) in itertools.product(items, repeat=2):
            if m1 not in fresh and m2 not in fresh:
                continue
            for g, m in (
                (And(f1, f2), m1 & m2),
                (Or(f1, f2), m1 | m2),
                (Implies(f1, f2), (full ^ m1) | m2),
                (Iff(f1, f2), full ^ (m1 ^ m2)),
            ):
                if offer(g, m):
                    improved.add(m)
        fresh = improved
    return {m: f for m, (_, f) in best.items()}


def _prime_cover(sig, mask):
    """Greedy prime-implicant DNF of the valuations in ``mask``."""
    n = len(sig)
    ones = [v for v in range(1 << n) if mask >> v & 1]
    if not ones:
        return BOTTOM
    if len(ones) == 1 << n:
        return TOP
    # implicants as (value, care) pairs
    terms = {(v, (1 << n) - 1) for v in ones}
    primes = set()
    while terms:
        merged = set()
        used = set()
        tl = sorted(terms)
        for a, b in itertools.combinations(tl, 2):
            if a[1] == b[1]:
                diff = a[0] ^ b[0]
                if diff and diff & (diff - 1) == 0:
                    merged.add((a[0] & ~diff, a[1] & ~diff))
                    used.update((a, b))
        primes |= terms - used
        terms = merged

    def covers(t, v):
        return v & t[1] == t[0]

    remaining = set(ones)
    chosen = []
    while remaining:
        t = max(sorted(primes), key=lambda t: (sum(covers(t, v) for v in remaining), -bin(t[1]).count("1")))
        chosen.append(t)
        remaining -= {v for v in remaining if covers(t, v)}

    def term_formula(t):
        lits = []
        for i, a in enumerate(sig.atoms):
            bit = 1 << (n - 1 - i)
            if t[1] & bit:
                lits.append(Atom(a) if t[0] & bit else Not(Atom(a)))
        return conjoin(lits)

    disj = [term_formula(t) for t in sorted(chosen)]
    out = disj[-1]
    for d in reversed(disj[:-1]):
        out = Or(d, out)
    return out


def synthesize(V):
    """Canonical formula whose models are exactly ``V``."""
    sig = V.sig
    if len(sig) <= 3:
        return _formula_table(sig)[V.mask]
    dnf = _prime_cover(sig, V.mask)
    cnf = Not(_prime_cover(sig, full_mask(sig) ^ V.mask))
    cnf = cnf.child.child if isinstance(cnf.child, Not) else cnf
    return min((dnf, cnf), key=_key)


def representatives(V, limits=DEFAULT_LIMITS):
    """One canonical formula per class of sentences true in every valuation of ``V``.

    The classes correspond to the supersets of ``V``; the result is sorted by
    the global formula order.
    """
    sig = V.sig
    check_limit("propositional atoms", len(sig), limits.prop_atoms)
    free = [v for v in range(1 << len(sig)) if v not in V]
    check_limit("representatives", 1 << len(free), limits.representatives)
    out = []
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            m = V.mask
            for v in extra:
                m |= 1 << v
            out.append(synthesize(ModelSet(sig, m)))
    return sorted(out, key=_key)
