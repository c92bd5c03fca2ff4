"""Contraction of closed propositional theories.

A theory is handled through its model set: a remainder of ``K`` by ``f``
adds one countermodel of ``f`` to the models of ``K``, partial meet adds a
non-empty set of countermodels, and full meet adds all of them.  Kernel
contraction needs sentences, so it runs over a finite presentation of the
theory (one representative formula per equivalence class, or the Horn
clauses the theory entails) and closes the result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import base_change as bc
from . import enumeration as en
from .config import DEFAULT_LIMITS, check_limit
from .errors import InvalidInfraChoice, InvalidParameter
from .formula import enumerate_clauses
from .semantics import (
    ModelSet,
    PropBeliefSet,
    clause_mask,
    full_mask,
    model_mask,
    models,
    parse_valuation,
    representatives,
    theory_of,
)

__all__ = [
    "PropBeliefSet",
    "countermodels",
    "bs_remainders",
    "bs_contract",
    "bs_infra_remainders",
    "bs_kernels",
    "representative_base",
    "PartialMeet",
    "Maxichoice",
    "FullMeet",
    "Infra",
    "Kernel",
]


def countermodels(f, sig):
    sig_full = full_mask(sig)
    return ModelSet(sig, sig_full ^ model_mask(f, sig))


def _vacuous(K, f):
    """``f`` is a tautology or not in ``K``: every method returns ``K``."""
    return model_mask(f, K.sig) == full_mask(K.sig) or not K.contains(f)


def bs_remainders(K, f, limits=DEFAULT_LIMITS):
    """Remainders of ``K`` by ``f``, ordered by the countermodel they add."""
    cm = countermodels(f, K.sig)
    if not cm.mask:
        return []
    if not K.contains(f):
        return [K]
    return [theory_of(K.models | ModelSet(K.sig, 1 << w)) for w in cm]


# ------------------------------------------------------------------ methods


@dataclass(frozen=True)
class PartialMeet:
    countermodels: tuple


@dataclass(frozen=True)
class Maxichoice:
    countermodel: object


@dataclass(frozen=True)
class FullMeet:
    pass


@dataclass(frozen=True)
class Infra:
    """Infra contraction, chosen by countermodels or as an explicit theory."""

    countermodels: tuple = ()
    theory: PropBeliefSet | None = None


@dataclass(frozen=True)
class Kernel:
    incision: bc.Incision = bc.MAXIMUM
    fragment: str = "full"


def _valuation(v, sig):
    return parse_valuation(v, sig) if isinstance(v, str) else int(v)


def _countermodel_set(K, f, vals):
    sig = K.sig
    vals = [_valuation(v, sig) for v in vals]
    if not vals:
        raise InvalidParameter("need at least one countermodel")
    cm = countermodels(f, sig)
    bad = [v for v in vals if v not in cm]
    if bad:
        from .semantics import valuation_text

        raise InvalidParameter(
            "not countermodels of the contracted formula: "
            + ", ".join(valuation_text(v, len(sig)) for v in bad)
        )
    return ModelSet.from_valuations(sig, vals)


def bs_contract(K, f, method=FullMeet(), limits=DEFAULT_LIMITS):
    if _vacuous(K, f):
        return K
    if isinstance(method, FullMeet):
        return theory_of(K.models | countermodels(f, K.sig))
    if isinstance(method, Maxichoice):
        return theory_of(K.models | _countermodel_set(K, f, [method.countermodel]))
    if isinstance(method, PartialMeet):
        return theory_of(K.models | _countermodel_set(K, f, method.countermodels))
    if isinstance(method, Infra):
        if method.theory is not None:
            fam = bs_infra_remainders(K, f, limits)
            if method.theory not in fam:
                raise InvalidInfraChoice(f"{method.theory!r} is not an infra remainder")
            return method.theory
        return theory_of(K.models | _countermodel_set(K, f, method.countermodels))
    if isinstance(method, Kernel):
        B = bs_kernel_base(K, f, method.incision, method.fragment, limits)
        return theory_of(models(B.elements, K.sig, limits))
    raise InvalidParameter(f"unknown contraction method {method!r}")


# -------------------------------------------------------------------- infra


@dataclass(frozen=True)
class PropInfraFamily:
    K: PropBeliefSet
    f: object
    limits: object = DEFAULT_LIMITS

    @property
    def countermodels(self):
        return countermodels(self.f, self.K.sig)

    def contains(self, X):
        cm = self.countermodels
        if not cm.mask:
            return False
        if not self.K.contains(self.f):
            return X == self.K
        added = X.models - self.K.models
        return self.K.models <= X.models and added.mask != 0 and added <= cm

    __contains__ = contains

    def members(self):
        cm = self.countermodels
        if not cm.mask:
            return []
        if not self.K.contains(self.f):
            return [self.K]
        vals = list(cm)
        check_limit("infra family size", (1 << len(vals)) - 1, self.limits.infra)
        out = []
        for k in range(1, len(vals) + 1):
            for chosen in itertools.combinations(vals, k):
                out.append(theory_of(self.K.models | ModelSet.from_valuations(self.K.sig, chosen)))
        return out

    def __len__(self):
        return len(self.members())


def bs_infra_remainders(K, f, limits=DEFAULT_LIMITS):
    return PropInfraFamily(K, f, limits)


# ------------------------------------------------------------------ kernels


def horn_fragment(K, limits=DEFAULT_LIMITS):
    """Non-tautological Horn clauses true in every model of ``K``."""
    sig = K.sig
    return [c for c in enumerate_clauses(sig, limits) if K.models.mask & ~clause_mask(c, sig) == 0]


def representative_base(K, fragment="full", limits=DEFAULT_LIMITS):
    """Finite presentation of ``K`` as a belief base."""
    if fragment == "full":
        return bc.BeliefBase.of(representatives(K.models, limits), K.sig)
    if fragment == "horn":
        return bc.BeliefBase.of(horn_fragment(K, limits), K.sig)
    raise InvalidParameter(f"unknown fragment {fragment!r} (expected full or horn)")


def bs_kernels(K, f, fragment="full", limits=DEFAULT_LIMITS):
    B = representative_base(K, fragment, limits)
    return bc.base_kernels(B, f, limits)


def bs_kernel_base(K, f, spec=bc.MAXIMUM, fragment="full", limits=DEFAULT_LIMITS):
    """The presentation of ``K`` minus the incision, before closing."""
    B = representative_base(K, fragment, limits)
    return bc.base_kernel_contraction(B, f, spec, limits)


def bs_kernel_outcomes(K, f, fragment="full", limits=DEFAULT_LIMITS):
    """Closed outcomes of kernel contraction over every valid incision."""
    if _vacuous(K, f):
        return {K}
    B = representative_base(K, fragment, limits)
    kernels = bc.base_kernels(B, f, limits)
    table = en.conj_table(B.masks, full_mask(K.sig))
    kept = np.array(bc.valid_incisions(kernels, limits), dtype=np.int64) ^ B.every
    return {theory_of(ModelSet(K.sig, int(m))) for m in np.unique(table[kept])}
