"""Propositional formulas, their concrete syntax, and Horn clauses.

Only atoms, ``T``, negation and conjunction are stored; ``F``, ``|``, ``->``
and ``<->`` are smart constructors that expand into those four.  The
renderer recognises the expanded shapes again, so ``parse(render(f)) == f``
holds structurally for every formula.

Grammar (lowest precedence first, all binary operators right-associative)::

    iff   := imp ('<->' iff)?
    imp   := or ('->' imp)?
    or    := and ('|' or)?
    and   := unary ('&' and)?
    unary := '~' unary | ATOM | 'T' | 'F' | '(' iff ')'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple

from .config import DEFAULT_LIMITS, check_limit
from .errors import InputError, NotHornError, ParseError, UnknownAtomError

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)

    def __str__(self):
        return render(self)

    def atoms(self):
        """Names of the atoms occurring in the formula."""
        out = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                out.add(node.name)
            elif isinstance(node, Not):
                stack.append(node.child)
            elif isinstance(node, And):
                stack.extend((node.left, node.right))
        return frozenset(out)

    def evaluate(self, true_atoms):
        """Truth value under the valuation making exactly ``true_atoms`` true."""
        if isinstance(self, Atom):
            return self.name in true_atoms
        if isinstance(self, Top):
            return True
        if isinstance(self, Not):
            return not self.child.evaluate(true_atoms)
        return self.left.evaluate(true_atoms) and self.right.evaluate(true_atoms)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def __repr__(self):
        return "TOP"


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOTTOM = Not(TOP)


def Or(a, b):
    return Not(And(Not(a), Not(b)))


def Implies(a, b):
    return Not(And(a, Not(b)))


def Iff(a, b):
    return And(Implies(a, b), Implies(b, a))


def conjoin(formulas):
    """Right-nested conjunction; the empty conjunction is ``T``."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


@dataclass(frozen=True)
class Signature:
    """Ordered, duplicate-free list of atom names."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise InputError("a signature needs at least one atom")
        for a in atoms:
            if not isinstance(a, str) or not ATOM_RE.match(a) or a in ("T", "F"):
                raise InputError(f"invalid atom name {a!r}")
        if len(set(atoms)) != len(atoms):
            raise InputError(f"duplicate atoms in signature {atoms}")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(atoms)})

    @classmethod
    def of(cls, spec):
        """Build from ``"p, q, r"``, ``"p q r"`` or an iterable of names."""
        if isinstance(spec, Signature):
            return spec
        if isinstance(spec, str):
            spec = [s for s in re.split(r"[,\s]+", spec.strip()) if s]
        return cls(tuple(spec))

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        return self._index[name]

    def sort(self, names):
        return sorted(names, key=self._index.__getitem__)

    def __str__(self):
        return ", ".join(self.atoms)


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|↔|→|[~¬&∧|∨()])|(?P<atom>[a-z][a-z0-9_]*)|(?P<const>[TF⊤⊥]))"
)
_CANON = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊤": "T", "⊥": "F"}


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        kind = "atom" if m.lastgroup == "atom" else "op"
        value = m.group(m.lastgroup)
        tokens.append((kind, _CANON.get(value, value), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text, sig):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {value!r}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def binary(self, op, sub, build):
        left = sub()
        if self.peek()[0] == "op" and self.peek()[1] == op:
            self.take()
            return build(left, self.binary(op, sub, build))
        return left

    def iff(self):
        return self.binary("<->", self.imp, Iff)

    def imp(self):
        return self.binary("->", self.disj, Implies)

    def disj(self):
        return self.binary("|", self.conj, Or)

    def conj(self):
        return self.binary("&", self.unary, And)

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "op" and value == "~":
            self.take()
            return Not(self.unary())
        if kind == "op" and value == "(":
            self.take()
            inner = self.iff()
            self.take(")")
            return inner
        if kind == "atom":
            self.take()
            if self.sig is not None and value not in self.sig:
                raise UnknownAtomError(value, self.sig.atoms, pos)
            return Atom(value)
        if kind == "op" and value in ("T", "F"):
            self.take()
            return TOP if value == "T" else BOTTOM
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected a formula, found {found}", self.text, pos)


def parse(text, sig=None):
    """Parse ``text``; atoms are resolved against ``sig`` when one is given."""
    if isinstance(sig, (str, list, tuple)):
        sig = Signature.of(sig)
    p = _Parser(text, sig)
    f = p.iff()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", text, pos)
    return f


# -------------------------------------------------------------- rendering

_IFF, _IMP, _OR, _AND, _NOT, _ATOM = range(6)


def _as_implication(f):
    # Not(And(a, Not(b)))
    if isinstance(f, Not) and isinstance(f.child, And) and isinstance(f.child.right, Not):
        return f.child.left, f.child.right.child
    return None


def _render(f, memo=None):
    if memo is not None:
        hit = memo.get(id(f))
        if hit is not None and hit[0] is f:
            return hit[1]
    if isinstance(f, Atom):
        return f.name, _ATOM
    if isinstance(f, Top):
        return "T", _ATOM
    if isinstance(f, Not):
        c = f.child
        if isinstance(c, Top):
            return "F", _ATOM
        if isinstance(c, And) and isinstance(c.left, Not) and isinstance(c.right, Not):
            return _infix(c.left.child, c.right.child, " | ", _OR, memo), _OR
        imp = _as_implication(f)
        if imp is not None:
            return _infix(imp[0], imp[1], " -> ", _IMP, memo), _IMP
        text, prec = _render(c, memo)
        return "~" + (text if prec >= _NOT else f"({text})"), _NOT
    if isinstance(f, And):
        a, b = _as_implication(f.left), _as_implication(f.right)
        if a is not None and b is not None and a == (b[1], b[0]):
            return _infix(a[0], a[1], " <-> ", _IFF, memo), _IFF
        return _infix(f.left, f.right, " & ", _AND, memo), _AND
    raise TypeError(f"not a formula: {f!r}")


def _infix(left, right, op, prec, memo=None):
    lt, lp = _render(left, memo)
    rt, rp = _render(right, memo)
    if lp <= prec:
        lt = f"({lt})"
    if rp < prec:
        rt = f"({rt})"
    return lt + op + rt


def render(f):
    """Canonical ASCII text of ``f``."""
    return _render(f)[0]


def order_key(f):
    """Global formula order: rendered length, then the rendered text."""
    s = f if isinstance(f, str) else render(f)
    return (len(s), s)


# ----------------------------------------------------------- Horn clauses


@dataclass(frozen=True)
class HornClause:
    """``body -> head`` with ``head=None`` standing for falsum.

    Construction rejects tautologies (head inside the body), so every
    instance is informative.
    """

    body: frozenset
    head: str | None

    def __post_init__(self):
        object.__setattr__(self, "body", frozenset(self.body))
        if self.head is not None and self.head in self.body:
            raise InputError(f"tautological clause: {self.head} occurs in its own body")

    def atoms(self):
        return self.body | ({self.head} if self.head is not None else set())

    def formula(self, sig=None):
        body = sig.sort(self.body) if sig is not None else sorted(self.body)
        head = BOTTOM if self.head is None else Atom(self.head)
        if not body:
            return head
        return Implies(conjoin([Atom(a) for a in body]), head)

    def render(self, sig=None):
        return render(self.formula(sig))

    def sort_key(self, sig=None):
        return order_key(self.render(sig))

    def __str__(self):
        return self.render()


def clause(body, head):
    """Convenience: ``clause("p q", "r")``, ``clause("", None)``."""
    if isinstance(body, str):
        body = body.replace(",", " ").split()
    return HornClause(frozenset(body), head)


class HornForm(NamedTuple):
    """Outcome of Horn recognition: either ``clauses`` or an ``offending`` subformula."""

    clauses: frozenset | None
    offending: Formula | None = None

    @property
    def is_horn(self):
        return self.clauses is not None


class _NotHorn(Exception):
    def __init__(self, node):
        self.node = node


def _strip_double_negation(f):
    while isinstance(f, Not) and isinstance(f.child, Not):
        f = f.child.child
    return f


def _flatten_and(f):
    f = _strip_double_negation(f)
    if isinstance(f, And):
        return _flatten_and(f.left) + _flatten_and(f.right)
    return [f]


def _clauses_of_conjunct(f):
    f = _strip_double_negation(f)
    if isinstance(f, Top):
        return []
    if isinstance(f, Atom):
        return [HornClause(frozenset(), f.name)]
    if not isinstance(f, Not):
        raise _NotHorn(f)
    # f = ~(l1 & ... & lk): positive atoms form the body, at most one negated
    # conjunct supplies the head(s).
    lits = _flatten_and(f.child)
    negated = [_flatten_and(lit.child) for lit in lits if isinstance(lit, Not)]
    if any(all(isinstance(x, Top) for x in inner) for inner in negated):
        return []  # falsum in the body
    body = set()
    heads = None
    for lit in lits:
        if isinstance(lit, Top):
            continue
        if isinstance(lit, Atom):
            body.add(lit.name)
            continue
        if isinstance(lit, Not):
            inner = _flatten_and(lit.child)
            if heads is not None or not all(isinstance(x, (Atom, Top)) for x in inner):
                raise _NotHorn(f)
            heads = [x.name for x in inner if isinstance(x, Atom)]
            continue
        raise _NotHorn(f)
    if heads is None:
        return [HornClause(frozenset(body), None)]
    return [HornClause(frozenset(body), h) for h in heads if h not in body]


def as_horn_clauses(f):
    """Recognise ``f`` as a conjunction of Horn clauses.

    Tautological conjuncts are dropped, so a tautology yields the empty set.
    A non-Horn formula is reported through ``HornForm.offending``.
    """
    try:
        out = set()
        for conjunct in _flatten_and(f):
            out.update(_clauses_of_conjunct(conjunct))
    except _NotHorn as exc:
        return HornForm(None, exc.node)
    return HornForm(frozenset(out))


def horn_clauses(f):
    """Like :func:`as_horn_clauses` but raises :class:`NotHornError`."""
    form = as_horn_clauses(f)
    if not form.is_horn:
        raise NotHornError(render(f), render(form.offending))
    return form.clauses


def enumerate_clauses(sig, limits=DEFAULT_LIMITS):
    """Every non-tautological Horn clause over ``sig``.

    Bodies come in order of size, then lexicographically by signature
    position; for each body the atom heads precede falsum.
    """
    sig = Signature.of(sig)
    check_limit("clause-universe atoms", len(sig), limits.clause_atoms)
    out = []
    for k in range(len(sig) + 1):
        for body in itertools.combinations(sig.atoms, k):
            bset = frozenset(body)
            for h in sig.atoms:
                if h not in bset:
                    out.append(HornClause(bset, h))
            out.append(HornClause(bset, None))
    return out


def sorted_formulas(formulas):
    return sorted(formulas, key=order_key)


def check_in_signature(f, sig):
    for a in sorted(f.atoms()):
        if a not in sig:
            raise UnknownAtomError(a, sig.atoms)
    return f
