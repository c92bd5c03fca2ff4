"""Contraction of finite belief bases.

Remainders (maximal non-implying subsets), kernels (minimal implying
subsets), selection and incision functions, and the constructions built on
them: partial meet, maxichoice, full meet, kernel and saturated kernel
contraction, plus infra remainders and infra contraction.

Subsets of a base are ints: bit ``i`` stands for ``base.elements[i]``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import enumeration as en
from .config import DEFAULT_LIMITS, check_limit
from .errors import (
    BeliefChangeError,
    InvalidIncision,
    InvalidInfraChoice,
    InvalidSelection,
    InputError,
)
from .formula import Formula, HornClause, Signature, order_key, parse, render
from .semantics import full_mask, mask_of


def item_text(item, sig=None):
    if isinstance(item, HornClause):
        return item.render(sig)
    return render(item)


def target_mask(target, sig):
    """Model mask of a formula, a clause, or a collection of either (read conjunctively)."""
    if isinstance(target, (Formula, HornClause)):
        return mask_of(target, sig)
    m = full_mask(sig)
    for t in target:
        m &= mask_of(t, sig)
    return m


@dataclass(frozen=True)
class BeliefBase:
    """A finite set of sentences (formulas or Horn clauses) in global formula order."""

    sig: Signature
    elements: tuple

    @classmethod
    def of(cls, items, sig):
        sig = Signature.of(sig)
        items = [parse(x, sig) if isinstance(x, str) else x for x in items]
        uniq = {item_text(x, sig): x for x in items}
        ordered = sorted(uniq, key=order_key)
        return cls(sig, tuple(uniq[t] for t in ordered))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def masks(self):
        return tuple(mask_of(x, self.sig) for x in self.elements)

    @property
    def every(self):
        return (1 << len(self.elements)) - 1

    def texts(self):
        return [item_text(x, self.sig) for x in self.elements]

    def subset(self, s):
        return tuple(x for i, x in enumerate(self.elements) if s >> i & 1)

    def restrict(self, s):
        return BeliefBase(self.sig, self.subset(s))

    def index_of(self, item):
        if isinstance(item, str):
            item = parse(item, self.sig)
        try:
            return self.elements.index(item)
        except ValueError:
            pass
        # fall back to a unique logically equivalent element
        m = mask_of(item, self.sig)
        hits = [i for i, x in enumerate(self.elements) if self.masks[i] == m]
        if len(hits) == 1:
            return hits[0]
        return None

    def bits_of(self, items, strict=True):
        """Subset bitmask of ``items``; unknown items raise when ``strict``."""
        s = 0
        for item in items:
            i = self.index_of(item)
            if i is None:
                if strict:
                    raise InputError(f"{item_text(item, self.sig) if not isinstance(item, str) else item} is not in the base")
                continue
            s |= 1 << i
        return s

    def mask_of_subset(self, s):
        m = full_mask(self.sig)
        for i in en.bits(s):
            m &= self.masks[i]
        return m

    def entails(self, target, s=None):
        s = self.every if s is None else s
        return self.mask_of_subset(s) & ~target_mask(target, self.sig) & full_mask(self.sig) == 0

    def __str__(self):
        return "{" + ", ".join(self.texts()) + "}"


@dataclass(frozen=True)
class SubsetFamily:
    """Ordered family of subsets of ``base``; ``kind`` is remainder, kernel, incision or infra."""

    kind: str
    base: BeliefBase
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def sets(self):
        return [frozenset(self.base.subset(s)) for s in self.members]

    def texts(self):
        sig = self.base.sig
        return [[item_text(x, sig) for x in self.base.subset(s)] for s in self.members]

    def union(self):
        out = 0
        for s in self.members:
            out |= s
        return out

    def meet(self):
        if not self.members:
            raise BeliefChangeError("meet of an empty family")
        out = self.base.every
        for s in self.members:
            out &= s
        return out


# ------------------------------------------------------------ enumeration


@functools.lru_cache(maxsize=1024)
def _families(base, tmask, limits, engine):
    full = full_mask(base.sig)
    return en.families(base.masks, full, tmask & full, limits, engine)


def base_families(B, f, limits=DEFAULT_LIMITS, engine=None):
    kernels, remainders = _families(B, target_mask(f, B.sig), limits, engine)
    return SubsetFamily("kernel", B, tuple(kernels)), SubsetFamily("remainder", B, tuple(remainders))


def base_remainders(B, f, limits=DEFAULT_LIMITS, engine=None):
    """Maximal subsets of ``B`` that do not entail ``f``."""
    return base_families(B, f, limits, engine)[1]


def base_kernels(B, f, limits=DEFAULT_LIMITS, engine=None):
    """Minimal subsets of ``B`` that entail ``f``."""
    return base_families(B, f, limits, engine)[0]


# --------------------------------------------------------------- selection


@dataclass(frozen=True)
class Selection:
    """Selection over a remainder family: ``all``, ``first`` or explicit indices."""

    kind: str = "all"
    indices: tuple = ()

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("all", "first"):
            return cls(text)
        if text.startswith("idx:"):
            try:
                idx = tuple(int(x) for x in text[4:].split(",") if x.strip())
            except ValueError:
                raise InvalidSelection(f"bad selection indices in {text!r}") from None
            return cls("indices", idx)
        raise InvalidSelection(f"unknown selection {text!r} (expected all, first or idx:I,J)")


ALL = Selection("all")
FIRST = Selection("first")


def Indices(*idx):
    if len(idx) == 1 and not isinstance(idx[0], int):
        idx = tuple(idx[0])
    return Selection("indices", tuple(idx))


def select(members, spec):
    """Apply ``spec`` to a non-empty ordered list."""
    if spec.kind == "all":
        return list(members)
    if spec.kind == "first":
        return [members[0]]
    if not spec.indices:
        raise InvalidSelection("an index selection needs at least one index")
    bad = [i for i in spec.indices if not 0 <= i < len(members)]
    if bad:
        raise InvalidSelection(f"selection indices {bad} out of range for a family of {len(members)}")
    return [members[i] for i in sorted(set(spec.indices))]


def apply_selection(fam, spec, B=None):
    """Selected remainders; the whole base when the family is empty."""
    B = fam.base if B is None else B
    if not fam.members:
        return SubsetFamily("remainder", B, (B.every,))
    return SubsetFamily("remainder", B, tuple(select(fam.members, spec)))


def base_partial_meet(B, f, spec=ALL, limits=DEFAULT_LIMITS):
    chosen = apply_selection(base_remainders(B, f, limits), spec, B)
    return B.restrict(chosen.meet())


def base_full_meet(B, f, limits=DEFAULT_LIMITS):
    return base_partial_meet(B, f, ALL, limits)


def base_maxichoice(B, f, index=0, limits=DEFAULT_LIMITS):
    return base_partial_meet(B, f, Indices(index), limits)


# ---------------------------------------------------------------- incision


@dataclass(frozen=True)
class Incision:
    """``max`` (union of all kernels), ``min-first`` or an explicit ``set``."""

    kind: str = "max"
    items: tuple = ()

    @classmethod
    def parse(cls, text, sig=None):
        text = text.strip()
        if text in ("max", "min-first"):
            return cls(text)
        if text.startswith("set:"):
            return cls("set", tuple(_split_formula_list(text[4:], sig)))
        raise InputError(f"unknown incision {text!r} (expected max, min-first or set:...)")


MAXIMUM = Incision("max")
MINIMAL_FIRST = Incision("min-first")


def Explicit(items):
    return Incision("set", tuple(items))


def _split_formula_list(text, sig=None):
    """Parse ``"p -> q","q -> r"`` (quotes optional when no commas inside)."""
    import csv

    text = text.strip()
    if not text:
        return []
    row = next(csv.reader([text], skipinitialspace=True))
    return [parse(x.strip(), sig) for x in row if x.strip()]


def minimal_incisions(kernels):
    """All minimal hitting sets of the non-empty kernels, smallest first."""
    return SubsetFamily("incision", kernels.base, tuple(en.minimal_hitting_sets(kernels.members)))


def check_incision(kernels, s):
    """Raise :class:`InvalidIncision` unless ``s`` satisfies both incision conditions."""
    B = kernels.base
    extra = s & ~kernels.union()
    if extra:
        raise InvalidIncision(
            "incision is not contained in the union of the kernels: "
            + ", ".join(item_text(x, B.sig) for x in B.subset(extra)),
            clause=1,
        )
    for k in kernels.members:
        if k and not k & s:
            texts = ", ".join(item_text(x, B.sig) for x in B.subset(k))
            raise InvalidIncision(f"incision misses the kernel {{{texts}}}", clause=2, unhit=k)
    return s


def apply_incision(kernels, spec, B=None):
    """Subset bitmask cut by the incision ``spec``."""
    B = kernels.base if B is None else B
    if spec.kind == "max":
        return kernels.union()
    if spec.kind == "min-first":
        return minimal_incisions(kernels).members[0]
    if spec.kind == "set":
        s = 0
        for item in spec.items:
            i = B.index_of(item)
            if i is None:
                text = item if isinstance(item, str) else item_text(item, B.sig)
                raise InvalidIncision(
                    f"incision is not contained in the union of the kernels: {text} is not in the base",
                    clause=1,
                )
            s |= 1 << i
        return check_incision(kernels, s)
    raise InputError(f"unknown incision kind {spec.kind!r}")


def valid_incisions(kernels, limits=DEFAULT_LIMITS):
    """Every subset of the kernels' union that meets each non-empty kernel."""
    union = kernels.union()
    check_limit("kernel union size for incision enumeration", en.popcount(union), limits.exhaustive_base)
    subs = np.fromiter(en.submasks(union), dtype=np.int64)
    ok = np.ones(len(subs), dtype=bool)
    for k in kernels.members:
        if k:
            ok &= (subs & k) != 0
    return [int(s) for s in subs[ok]]


def kernel_outcomes(B, f, limits=DEFAULT_LIMITS):
    """Subset bitmasks ``B \\ s`` over every valid incision ``s``, sorted."""
    kernels = base_kernels(B, f, limits)
    return sorted({B.every & ~s for s in valid_incisions(kernels, limits)}, key=lambda s: (en.popcount(s), s))


def base_kernel_contraction(B, f, spec=MAXIMUM, limits=DEFAULT_LIMITS):
    cut = apply_incision(base_kernels(B, f, limits), spec, B)
    return B.restrict(B.every & ~cut)


def saturated_base_kernel_contraction(B, f, spec=MAXIMUM, limits=DEFAULT_LIMITS):
    """Members of ``B`` entailed by the kernel contraction of ``B`` by ``f``."""
    cut = apply_incision(base_kernels(B, f, limits), spec, B)
    kept = B.mask_of_subset(B.every & ~cut)
    s = 0
    for i, m in enumerate(B.masks):
        if kept & ~m == 0:
            s |= 1 << i
    return B.restrict(s)


# ------------------------------------------------------------------- infra


@dataclass(frozen=True)
class InfraChoice:
    """``meet`` of all remainders, remainder number ``index``, or an explicit ``set``."""

    kind: str = "meet"
    index: int = 0
    items: tuple = ()

    @classmethod
    def parse(cls, text, sig=None):
        text = text.strip()
        if text == "meet":
            return cls("meet")
        if text.startswith("rem:"):
            try:
                return cls("remainder", int(text[4:]))
            except ValueError:
                raise InvalidInfraChoice(f"bad remainder index in {text!r}") from None
        if text.startswith("set:"):
            return cls("set", items=tuple(_split_formula_list(text[4:], sig)))
        raise InvalidInfraChoice(f"unknown infra choice {text!r} (expected meet, rem:I or set:...)")


MEET_OF_ALL = InfraChoice("meet")


def RemainderIndex(i):
    return InfraChoice("remainder", i)


def ExplicitInfra(items):
    return InfraChoice("set", items=tuple(items))


@dataclass(frozen=True)
class InfraFamily:
    """Sets lying between the meet of all remainders and some remainder."""

    base: BeliefBase
    remainders: SubsetFamily
    limits: object = field(default=DEFAULT_LIMITS, compare=False)

    @property
    def empty(self):
        return not self.remainders.members

    @property
    def floor(self):
        return self.remainders.meet()

    def contains_bits(self, s):
        if self.empty:
            return False
        return s & self.floor == self.floor and any(s & r == s for r in self.remainders)

    def contains(self, items):
        """Membership without enumerating the family."""
        items = list(items)
        s = 0
        for item in items:
            i = self.base.index_of(item)
            if i is None:
                return False
            s |= 1 << i
        return self.contains_bits(s)

    __contains__ = contains

    def enumerate(self):
        if self.empty:
            return SubsetFamily("infra", self.base, ())
        floor = self.floor
        out = set()
        for r in self.remainders:
            free = r & ~floor
            check_limit("infra family size", max(len(out), 1 << en.popcount(free)), self.limits.infra)
            out.update(floor | sub for sub in en.submasks(free))
            check_limit("infra family size", len(out), self.limits.infra)
        return SubsetFamily("infra", self.base, tuple(sorted(out, key=lambda s: (en.popcount(s), s))))


def base_infra_remainders(B, f, limits=DEFAULT_LIMITS):
    return InfraFamily(B, base_remainders(B, f, limits), limits)


def base_infra_contraction(B, f, spec=MEET_OF_ALL, limits=DEFAULT_LIMITS):
    fam = base_infra_remainders(B, f, limits)
    if fam.empty:
        return B
    if spec.kind == "meet":
        return B.restrict(fam.floor)
    if spec.kind == "remainder":
        rems = fam.remainders.members
        if not 0 <= spec.index < len(rems):
            raise InvalidInfraChoice(f"remainder index {spec.index} out of range for {len(rems)} remainders")
        return B.restrict(rems[spec.index])
    if spec.kind == "set":
        s = 0
        for item in spec.items:
            i = B.index_of(item)
            if i is None:
                text = item if isinstance(item, str) else item_text(item, B.sig)
                raise InvalidInfraChoice(f"{text} is not in the base")
            s |= 1 << i
        if not fam.contains_bits(s):
            chosen = ", ".join(item_text(x, B.sig) for x in B.subset(s))
            raise InvalidInfraChoice(f"{{{chosen}}} is not an infra remainder")
        return B.restrict(s)
    raise InvalidInfraChoice(f"unknown infra choice kind {spec.kind!r}")
