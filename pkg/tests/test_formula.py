import itertools
from math import comb

import pytest
from hypothesis import given, settings

from beliefchange.errors import InputError, NotHornError, ParseError, UnknownAtomError
from beliefchange.formula import (
    BOTTOM,
    TOP,
    And,
    Atom,
    HornClause,
    Implies,
    Not,
    Or,
    Signature,
    as_horn_clauses,
    clause,
    conjoin,
    enumerate_clauses,
    horn_clauses,
    order_key,
    parse,
    render,
)
from beliefchange.config import Limits
from beliefchange.errors import LimitExceeded
from beliefchange.semantics import clause_mask, model_mask

from conftest import SIG2, SIG3, formulas, truth_table

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestParser:
    def test_precedence(self):
        assert parse("p & q | r") == Or(And(p, q), r)
        assert parse("~p & q") == And(Not(p), q)
        assert parse("p | q -> r") == Implies(Or(p, q), r)
        assert parse("p -> q <-> r") == parse("(p -> q) <-> r")

    def test_right_associative(self):
        assert parse("p -> q -> r") == Implies(p, Implies(q, r))
        assert parse("p & q & r") == And(p, And(q, r))

    def test_constants_and_unicode(self):
        assert parse("T") == TOP
        assert parse("F") == BOTTOM
        assert parse("¬p ∧ q → r") == parse("~p & q -> r")
        assert parse("p ↔ q ∨ ⊥") == parse("p <-> q | F")
        assert parse("⊤") == TOP

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse("p & & q")
        assert exc.value.pos == 4
        assert exc.value.caret().splitlines()[1] == "    ^"

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("p q")

    def test_unbalanced(self):
        with pytest.raises(ParseError):
            parse("(p & q")

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError) as exc:
            parse("p & s", SIG2)
        assert exc.value.name == "s"

    def test_signature_validation(self):
        with pytest.raises(InputError):
            Signature.of("p, p")
        with pytest.raises(InputError):
            Signature.of("")
        assert Signature.of("p q r") == SIG3


class TestRenderer:
    @pytest.mark.parametrize(
        "text",
        ["p", "~p", "p & q", "p | q", "p -> q", "p <-> q", "p & q -> r", "(p -> q) -> r", "~(p & q)", "T", "F"],
    )
    def test_round_trip_text(self, text):
        assert render(parse(text)) == render(parse(render(parse(text))))

    def test_canonical_forms(self):
        assert render(parse("p ∧ q → r")) == "p & q -> r"
        assert render(parse("p -> (q -> r)")) == "p -> q -> r"
        assert render(Or(p, And(q, r))) == "p | q & r"
        assert render(And(Or(p, q), r)) == "(p | q) & r"

    @settings(max_examples=300, deadline=None)
    @given(formulas())
    def test_round_trip_structural(self, f):
        assert parse(render(f)) == f

    def test_order_key(self):
        assert order_key(p) < order_key(parse("p -> q"))
        assert sorted(["q -> r", "p", "p -> q"], key=order_key) == ["p", "p -> q", "q -> r"]

    def test_conjoin(self):
        assert conjoin([]) == TOP
        assert conjoin([p, q, r]) == And(p, And(q, r))


class TestHornClauses:
    def test_clause_formula(self):
        c = clause("p q", "r")
        assert c.render(SIG3) == "p & q -> r"
        assert clause("", "p").render() == "p"
        assert clause("p", None).render() == "p -> F"
        assert clause("", None).render() == "F"

    def test_tautology_rejected(self):
        with pytest.raises(InputError):
            HornClause(frozenset({"p"}), "p")

    def test_recognition(self):
        assert horn_clauses(parse("p & q -> r")) == {clause("p q", "r")}
        assert horn_clauses(parse("p & (r -> q)")) == {clause("", "p"), clause("r", "q")}
        assert horn_clauses(parse("p -> q & r")) == {clause("p", "q"), clause("p", "r")}
        assert horn_clauses(parse("~p | ~q")) == {clause("p q", None)}
        assert horn_clauses(parse("T")) == frozenset()
        assert horn_clauses(parse("p -> p")) == frozenset()
        assert horn_clauses(parse("F -> q")) == frozenset()

    def test_non_horn(self):
        form = as_horn_clauses(parse("p | q"))
        assert not form.is_horn
        with pytest.raises(NotHornError) as exc:
            horn_clauses(parse("p & (q | r)"))
        assert "q | r" in str(exc.value)

    @settings(max_examples=400, deadline=None)
    @given(formulas(max_leaves=6))
    def test_recognition_sound(self, f):
        """Whenever a formula is recognised as Horn, its clauses are equivalent to it."""
        form = as_horn_clauses(f)
        if form.is_horn:
            m = model_mask(TOP, SIG3)
            for c in form.clauses:
                m &= clause_mask(c, SIG3)
            assert m == model_mask(f, SIG3)
            assert sum(1 << v for v in truth_table(f, SIG3)) == m


def _brute_clause_count(n):
    atoms = "abcd"[:n]
    count = 0
    for k in range(n + 1):
        for body in itertools.combinations(atoms, k):
            count += sum(1 for h in atoms if h not in body) + 1
    return count


class TestEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts(self, n):
        sig = Signature(tuple("pqrs"[:n]))
        closed_form = sum(comb(n, k) * (n - k + 1) for k in range(n + 1))
        assert closed_form == (n + 2) * 2 ** (n - 1)
        assert len(enumerate_clauses(sig)) == closed_form == _brute_clause_count(n)

    def test_frozen_counts(self):
        assert len(enumerate_clauses(SIG2)) == 8
        assert len(enumerate_clauses(SIG3)) == 20

    def test_distinct_and_non_tautological(self):
        cs = enumerate_clauses(SIG3)
        assert len(set(cs)) == len(cs)
        masks = [clause_mask(c, SIG3) for c in cs]
        assert len(set(masks)) == len(masks)
        assert all(m != model_mask(TOP, SIG3) for m in masks)

    def test_order(self):
        cs = enumerate_clauses(SIG2)
        assert [c.render(SIG2) for c in cs] == ["p", "q", "F", "p -> q", "p -> F", "q -> p", "q -> F", "p & q -> F"]

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            enumerate_clauses(Signature.of("p q r s t"))
        assert len(enumerate_clauses(Signature.of("p q r s t"), Limits(clause_atoms=5))) == 7 * 16
