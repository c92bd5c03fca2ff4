"""Postulate checkers for contraction functions given as finite tables.

A :class:`ContractionTable` records, for every formula of a finite grid, the
output of some contraction of a fixed subject (a belief base, a
propositional theory, or a Horn belief set).  :func:`check` evaluates one
postulate over the grid and returns a :class:`PostulateReport`; failures
carry concrete counterexamples (the input, and the offending sentence when
there is one).

Existential postulates (Relevance, Core-retainment, H-e6) are decided by
exhaustive search over the subsets of the subject, evaluated with numpy.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from . import base_change as bc
from . import enumeration as en
from . import horn_change as hc
from .config import DEFAULT_LIMITS, check_limit
from .errors import InputError, InvalidParameter, UnknownPostulate
from .formula import TOP, Signature, enumerate_clauses, order_key, parse
from .semantics import (
    ModelSet,
    PropBeliefSet,
    full_mask,
    horn_closure,
    mask_of,
    models,
    representatives,
    theory_of,
)

KINDS = ("base", "prop-set", "horn-set")

POSTULATES = {
    "base": ("B-1", "B-2", "B-3", "B-4", "B-5"),
    "prop-set": ("K-1", "K-2", "K-3", "K-4", "K-5", "K-6", "H-e7"),
    "horn-set": ("K-1", "K-2", "K-3", "K-4", "K-5", "K-6", "H-e6", "H-e7", "core-retainment"),
}

TITLES = {
    "K-1": "Closure",
    "K-2": "Inclusion",
    "K-3": "Vacuity",
    "K-4": "Success",
    "K-5": "Extensionality",
    "K-6": "Recovery",
    "B-1": "Success",
    "B-2": "Inclusion",
    "B-3": "Uniformity",
    "B-4": "Relevance",
    "B-5": "Core-retainment",
    "H-e6": "Relevance (e-remainders)",
    "H-e7": "Failure",
    "core-retainment": "Core-retainment",
}

_WORDS = {
    "closure": {"prop-set": "K-1", "horn-set": "K-1"},
    "inclusion": {"base": "B-2", "prop-set": "K-2", "horn-set": "K-2"},
    "vacuity": {"prop-set": "K-3", "horn-set": "K-3"},
    "success": {"base": "B-1", "prop-set": "K-4", "horn-set": "K-4"},
    "extensionality": {"prop-set": "K-5", "horn-set": "K-5"},
    "recovery": {"prop-set": "K-6", "horn-set": "K-6"},
    "uniformity": {"base": "B-3"},
    "relevance": {"base": "B-4"},
    "core-retainment": {"base": "B-5", "horn-set": "core-retainment"},
    "failure": {"prop-set": "H-e7", "horn-set": "H-e7"},
}


def canonical_name(name, kind):
    """Resolve spellings such as ``K-6``, ``(K − 6)``, ``ke6``, ``recovery``."""
    text = name.strip().replace("−", "-").replace("–", "-").replace("_", "-")
    text = re.sub(r"[()\s]", "", text).lower()
    if text in _WORDS:
        resolved = _WORDS[text].get(kind)
        if resolved is None:
            raise UnknownPostulate(f"postulate {name!r} does not apply to {kind} tables")
        return resolved
    m = re.fullmatch(r"([kbh])-?(e)?-?(\d)", text)
    if m:
        letter, e, num = m.groups()
        if letter == "h" or e:
            resolved = f"H-e{num}"
        else:
            resolved = f"{letter.upper()}-{num}"
        if kind == "horn-set" and resolved == "B-5":
            resolved = "core-retainment"
        if resolved in TITLES:
            if resolved not in POSTULATES[kind]:
                raise UnknownPostulate(f"postulate {resolved} does not apply to {kind} tables")
            return resolved
    raise UnknownPostulate(f"unknown postulate {name!r}; known: {', '.join(POSTULATES[kind])}")


# ------------------------------------------------------------------- tables


@dataclass
class ContractionTable:
    """Outputs of a contraction of ``subject`` for each formula of ``grid``.

    Output representation by kind: a tuple of sentences (``base``), a
    :class:`PropBeliefSet` (``prop-set``) or a :class:`HornBeliefSet` whose
    clause set need not be closed (``horn-set``).
    """

    kind: str
    subject: object
    grid: list
    entries: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown table kind {self.kind!r}")
        missing = [g for g in self.grid if g not in self.entries]
        if missing:
            raise InputError(f"grid formula without an entry: {_text(missing[0], self.sig)}")

    @property
    def sig(self):
        return self.subject.sig

    def to_json(self):
        sig = self.sig
        return {
            "kind": self.kind,
            "signature": list(sig.atoms),
            "subject": _subject_texts(self.kind, self.subject),
            "entries": {_text(g, sig): _output_texts(self.kind, self.entries[g], sig) for g in self.grid},
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, data, limits=DEFAULT_LIMITS):
        try:
            kind = data["kind"]
            sig = Signature.of(data["signature"])
            subject_items = [parse(x, sig) for x in data["subject"]]
            raw_entries = data["entries"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed contraction table: missing {exc}") from None
        if kind not in KINDS:
            raise InputError(f"unknown table kind {kind!r}")
        closure = data.get("closure", True)
        subject = make_subject(kind, subject_items, sig, limits)
        grid, entries = [], {}
        for key, out in raw_entries.items():
            phi = parse(key, sig)
            items = [parse(x, sig) for x in out]
            grid.append(phi)
            entries[phi] = make_output(kind, items, sig, closure, limits)
        return cls(kind, subject, grid, entries)

    @classmethod
    def loads(cls, text, limits=DEFAULT_LIMITS):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"contraction table is not valid JSON: {exc}") from None
        return cls.from_json(data, limits)


def make_subject(kind, items, sig, limits=DEFAULT_LIMITS):
    if kind == "base":
        return bc.BeliefBase.of(items, sig)
    if kind == "prop-set":
        return PropBeliefSet.from_formulas(items, sig, limits)
    return hc.HornBeliefSet.from_generators(items, sig, limits)


def make_output(kind, items, sig, closure=True, limits=DEFAULT_LIMITS):
    if kind == "base":
        return tuple(items)
    if kind == "prop-set":
        return PropBeliefSet.from_formulas(items, sig, limits)
    if closure:
        return hc.HornBeliefSet.from_generators(items, sig, limits)
    return hc.HornBeliefSet(sig, frozenset(hc.clauses_of(items, sig)))


def _text(item, sig):
    return bc.item_text(item, sig)


def _subject_texts(kind, subject):
    if kind == "base":
        return subject.texts()
    if kind == "prop-set":
        return [_text(subject.formula(), subject.sig)]
    return subject.generator_texts()


def _output_texts(kind, out, sig):
    if kind == "base":
        return sorted((_text(x, sig) for x in out), key=order_key)
    if kind == "prop-set":
        return [_text(out.formula(), sig)]
    return sorted((c.render(sig) for c in out.clauses), key=order_key)


def default_grid(kind, sig, limits=DEFAULT_LIMITS):
    """Every Horn clause plus ``T`` (Horn subjects or three or more atoms),
    otherwise one representative per class of all sentences."""
    sig = Signature.of(sig)
    if kind == "horn-set" or len(sig) > 2:
        return [c.formula(sig) for c in enumerate_clauses(sig, limits)] + [TOP]
    return representatives(ModelSet(sig, 0), limits)


def build_table(kind, subject, operator, grid=None, limits=DEFAULT_LIMITS):
    """Tabulate ``operator(subject, phi)`` over ``grid``."""
    grid = default_grid(kind, subject.sig, limits) if grid is None else list(grid)
    entries = {phi: _normalise_output(kind, operator(subject, phi)) for phi in grid}
    return ContractionTable(kind, subject, grid, entries)


def _normalise_output(kind, out):
    if kind == "base" and isinstance(out, bc.BeliefBase):
        return out.elements
    if kind == "base":
        return tuple(out)
    return out


# ------------------------------------------------------------------ reports


@dataclass
class PostulateReport:
    name: str
    passed: bool
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def title(self):
        return TITLES.get(self.name, self.name)

    @property
    def counterexample(self):
        return self.counterexamples[0] if self.counterexamples else None

    def to_json(self):
        return {
            "postulate": self.name,
            "title": self.title,
            "verdict": "pass" if self.passed else "fail",
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }

    def __str__(self):
        head = f"{self.name} ({self.title}): {'pass' if self.passed else 'fail'}"
        cx = self.counterexample
        if cx is None:
            return head
        return head + " - " + "; ".join(f"{k}: {v}" for k, v in cx.items())


# ------------------------------------------------------------------ checker


class _Context:
    """Mask-level views of a subject shared by all checks on one table."""

    def __init__(self, kind, subject, limits):
        self.kind = kind
        self.subject = subject
        self.sig = subject.sig
        self.full = full_mask(self.sig)
        self.limits = limits
        if kind == "base":
            self.base = subject
        elif kind == "horn-set":
            self.base = subject.base
        else:
            self.base = None
        self._implying = {}

    # sentence-level helpers

    def phi_mask(self, phi):
        if self.kind == "horn-set":
            return bc.target_mask(hc.clauses_of(phi, self.sig), self.sig)
        return mask_of(phi, self.sig)

    def tautology(self, phi):
        return self.phi_mask(phi) == self.full

    def subject_mask(self):
        if self.kind == "base":
            return self.base.mask_of_subset(self.base.every)
        return self.subject.models.mask if self.kind == "prop-set" else self.subject.mask

    def output_mask(self, out):
        if self.kind == "base":
            return models(out, self.sig, self.limits).mask
        return out.models.mask if self.kind == "prop-set" else out.mask

    def in_subject(self, phi):
        return self.subject_mask() & ~self.phi_mask(phi) & self.full == 0

    def implying(self, phi):
        """Boolean table over subsets of the base: does the subset entail ``phi``?"""
        key = self.phi_mask(phi)
        if key not in self._implying:
            check_limit("subject size for exhaustive subset search", len(self.base), self.limits.exhaustive_base)
            self._implying[key] = en.implying_table(self.base.masks, self.full, key)
        return self._implying[key]

    def output_bits(self, out):
        """Bits of the base members in ``out`` and the members not in the base."""
        if self.kind == "base":
            bits, extra = 0, []
            for item in out:
                i = self.base.index_of(item)
                if i is None or not _same(self.base.elements[i], item, self.sig):
                    extra.append(item)
                else:
                    bits |= 1 << i
            return bits, extra
        bits, extra = 0, []
        index = {c: i for i, c in enumerate(self.base.elements)}
        for c in out.clauses:
            if c in index:
                bits |= 1 << index[c]
            else:
                extra.append(c)
        return bits, extra

    def equal(self, a, b):
        if self.kind == "base":
            return {_text(x, self.sig) for x in a} == {_text(x, self.sig) for x in b}
        if self.kind == "prop-set":
            return a.models.mask == b.models.mask
        return a.clauses == b.clauses

    def same_as_subject(self, out):
        if self.kind == "base":
            return self.equal(out, self.base.elements)
        return self.equal(out, self.subject)

    def difference(self, out, ref):
        """A sentence on which ``out`` and ``ref`` differ (text), or ``None``."""
        if self.kind == "base":
            a = {_text(x, self.sig) for x in out}
            b = {_text(x, self.sig) for x in ref}
            diff = sorted(a ^ b, key=order_key)
            return diff[0] if diff else None
        if self.kind == "prop-set":
            if out.models.mask == ref.models.mask:
                return None
            side = ref if not ref <= out else out
            return _text(side.formula(), self.sig)
        diff = sorted(out.clauses ^ ref.clauses, key=lambda c: c.sort_key(self.sig))
        return diff[0].render(self.sig) if diff else None

    def text(self, item):
        return _text(item, self.sig)


def _same(a, b, sig):
    return _text(a, sig) == _text(b, sig)


def _exists_witness(implying, j, floor=0, ceiling=None):
    """Is there ``s`` with floor ⊆ s ⊆ ceiling, j ∉ s, s ⊭ φ and s ∪ {j} ⊨ φ?"""
    n = int(implying.shape[0]).bit_length() - 1
    ceiling = (1 << n) - 1 if ceiling is None else ceiling
    bit = 1 << j
    if floor & bit or not ceiling & bit:
        return False
    free = ceiling & ~floor & ~bit
    subs = np.fromiter(en.submasks(free), dtype=np.int64) | floor
    return bool(np.any(~implying[subs] & implying[subs | bit]))


def _check_point(ctx, name, phi, out):
    """Counterexamples to a pointwise postulate at one grid formula."""
    t = ctx.text
    kind = ctx.kind
    sig = ctx.sig
    cx = []
    if name == "K-1":
        if kind == "horn-set":
            extra = sorted(horn_closure(out.clauses, sig, ctx.limits) - out.clauses, key=lambda c: c.sort_key(sig))
            if extra:
                cx.append({"phi": t(phi), "sentence": extra[0].render(sig), "detail": "entailed but missing from the output"})
    elif name == "K-2":
        if kind == "horn-set":
            bad = sorted(out.clauses - ctx.subject.clauses, key=lambda c: c.sort_key(sig))
            sentence = bad[0].render(sig) if bad else None
        else:
            sentence = t(out.formula()) if ctx.subject_mask() & ~ctx.output_mask(out) else None
        if sentence is not None:
            cx.append({"phi": t(phi), "sentence": sentence, "detail": "in the output but not in the subject"})
    elif name == "B-2":
        _, extra = ctx.output_bits(out)
        if extra:
            cx.append({"phi": t(phi), "sentence": t(extra[0]), "detail": "in the output but not in the base"})
    elif name == "K-3":
        if not ctx.in_subject(phi) and not ctx.same_as_subject(out):
            cx.append({"phi": t(phi), "sentence": ctx.difference(out, ctx.subject), "detail": "phi is not in the subject but the output changed"})
    elif name in ("K-4", "B-1"):
        if not ctx.tautology(phi) and ctx.output_mask(out) & ~ctx.phi_mask(phi) & ctx.full == 0:
            cx.append({"phi": t(phi), "detail": "the output still entails phi"})
    elif name == "K-6":
        if ctx.in_subject(phi):
            if kind == "prop-set":
                got = theory_of(ModelSet(sig, out.models.mask & ctx.phi_mask(phi)))
                if got.models.mask != ctx.subject_mask():
                    cx.append({"phi": t(phi), "sentence": ctx.difference(got, ctx.subject), "detail": "Cn(output + phi) differs from the subject"})
            else:
                got = hc.HornBeliefSet.from_generators(list(out.clauses) + hc.clauses_of(phi, sig), sig, ctx.limits)
                if got.clauses != ctx.subject.clauses:
                    cx.append({"phi": t(phi), "sentence": ctx.difference(got, ctx.subject), "detail": "Cn(output + phi) differs from the subject"})
    elif name == "H-e7":
        if ctx.tautology(phi) and not ctx.same_as_subject(out):
            cx.append({"phi": t(phi), "sentence": ctx.difference(out, ctx.subject), "detail": "tautology contraction changed the subject"})
    elif name in ("B-4", "B-5", "core-retainment", "H-e6"):
        cx.extend(_check_relevance_family(ctx, name, phi, out))
    else:
        raise InvalidParameter(f"{name} is not a pointwise postulate")
    return cx


def _check_relevance_family(ctx, name, phi, out):
    B = ctx.base
    bits, extra = ctx.output_bits(out)
    removed = B.every & ~bits
    if not removed:
        return []
    implying = ctx.implying(phi)
    floor, ceiling = 0, B.every
    if name == "B-4":
        if extra:
            return [{"phi": ctx.text(phi), "sentence": ctx.text(extra[0]), "detail": "output is not a subset of the base"}]
        floor = bits
    elif name == "H-e6":
        rems = hc.e_families(ctx.subject, phi, ctx.limits)[1]
        floor = rems.meet() if rems.members else 0
    cx = []
    for j in en.bits(removed):
        if not _exists_witness(implying, j, floor, ceiling):
            cx.append(
                {
                    "phi": ctx.text(phi),
                    "sentence": ctx.text(B.elements[j]),
                    "detail": "removed, but no admissible subset needs it to avoid phi",
                }
            )
    return cx


def _check_pairs(ctx, name, table):
    """Extensionality (K-5) and Uniformity (B-3)."""
    groups = {}
    for phi in table.grid:
        if name == "K-5":
            key = ctx.phi_mask(phi)
        else:
            key = ctx.implying(phi).tobytes()
        groups.setdefault(key, []).append(phi)
    cx = []
    checked = 0
    for members in groups.values():
        first = members[0]
        for other in members[1:]:
            checked += 1
            if not ctx.equal(table.entries[first], table.entries[other]):
                cx.append(
                    {
                        "phi": ctx.text(first),
                        "psi": ctx.text(other),
                        "sentence": ctx.difference(table.entries[first], table.entries[other]),
                        "detail": "equivalent inputs with different outputs",
                    }
                )
    return checked, cx


def check(table, name, limits=DEFAULT_LIMITS):
    """Evaluate one postulate over every grid formula of ``table``."""
    name = canonical_name(name, table.kind)
    ctx = _Context(table.kind, table.subject, limits)
    if name in ("K-5", "B-3"):
        checked, cx = _check_pairs(ctx, name, table)
        return PostulateReport(name, not cx, checked, cx)
    cx = []
    for phi in table.grid:
        cx.extend(_check_point(ctx, name, phi, table.entries[phi]))
    return PostulateReport(name, not cx, len(table.grid), cx)


def check_point(kind, subject, phi, output, name, limits=DEFAULT_LIMITS):
    """Counterexamples to a pointwise postulate for the single entry ``phi -> output``."""
    name = canonical_name(name, kind)
    if name in ("K-5", "B-3"):
        raise InvalidParameter(f"{name} compares pairs of inputs; use check() on a table")
    return _check_point(_Context(kind, subject, limits), name, phi, _normalise_output(kind, output))


def check_all(table, names=None, limits=DEFAULT_LIMITS):
    names = POSTULATES[table.kind] if names is None else names
    return [check(table, n, limits) for n in names]
