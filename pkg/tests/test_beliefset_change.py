import itertools

import pytest

from beliefchange import base_change as bc
from beliefchange import beliefset_change as bs
from beliefchange.errors import InvalidInfraChoice, InvalidParameter
from beliefchange.formula import parse
from beliefchange.semantics import ModelSet, PropBeliefSet, model_mask, synthesize, theory_of

from conftest import SIG2, SIG3


def th(text, sig=SIG2):
    return PropBeliefSet.from_formulas([parse(text)], sig)


@pytest.fixture
def kpq():
    return th("p & q"), parse("p")


class TestRemainders:
    def test_p_and_q_by_p(self, kpq):
        K, f = kpq
        rems = bs.bs_remainders(K, f)
        assert rems == [th("p <-> q"), th("q")]

    def test_degenerate(self, kpq):
        K, _ = kpq
        assert bs.bs_remainders(K, parse("p | ~p")) == []
        assert bs.bs_remainders(th("p"), parse("q")) == [th("p")]


class TestMethods:
    def test_full_meet(self, kpq):
        K, f = kpq
        out = bs.bs_contract(K, f)
        assert out.models.strings() == ["00", "01", "11"]

    def test_maxichoice(self, kpq):
        K, f = kpq
        assert bs.bs_contract(K, f, bs.Maxichoice("01")) == th("q")
        assert bs.bs_contract(K, f, bs.Maxichoice(0)) == th("p <-> q")

    def test_partial_meet(self, kpq):
        K, f = kpq
        both = bs.bs_contract(K, f, bs.PartialMeet(("00", "01")))
        assert both == bs.bs_contract(K, f)

    def test_invalid_countermodel(self, kpq):
        K, f = kpq
        with pytest.raises(InvalidParameter) as exc:
            bs.bs_contract(K, f, bs.Maxichoice("10"))
        assert "10" in str(exc.value)
        with pytest.raises(InvalidParameter):
            bs.bs_contract(K, f, bs.PartialMeet(()))

    def test_vacuous(self, kpq):
        K, _ = kpq
        for method in (bs.FullMeet(), bs.Maxichoice("00"), bs.Kernel()):
            assert bs.bs_contract(K, parse("p | ~p"), method) == K
            assert bs.bs_contract(K, parse("~p"), method) == K

    def test_success_and_inclusion(self):
        for m in range(16):
            K = theory_of(ModelSet(SIG2, m))
            for fm in range(1, 15):
                f = synthesize(ModelSet(SIG2, fm))
                out = bs.bs_contract(K, f)
                assert out <= K
                assert not out.contains(f)


class TestInfra:
    def test_family(self, kpq):
        K, f = kpq
        fam = bs.bs_infra_remainders(K, f)
        members = fam.members()
        assert len(members) == 3
        assert th("q") in fam and th("p <-> q") in fam
        assert th("p & q") not in fam
        assert th("T") not in fam

    def test_explicit_theory(self, kpq):
        K, f = kpq
        assert bs.bs_contract(K, f, bs.Infra(theory=th("q"))) == th("q")
        with pytest.raises(InvalidInfraChoice):
            bs.bs_contract(K, f, bs.Infra(theory=th("T")))

    def test_infra_equals_partial_meet(self):
        """For closed theories every infra remainder is a partial meet outcome."""
        for m in range(16):
            K = theory_of(ModelSet(SIG2, m))
            for fm in range(1, 15):
                f = synthesize(ModelSet(SIG2, fm))
                infra = {X.models.mask for X in bs.bs_infra_remainders(K, f).members()}
                if not K.contains(f):
                    assert infra == {K.models.mask}
                    continue
                vals = list(bs.countermodels(f, SIG2))
                pm = set()
                for k in range(1, len(vals) + 1):
                    for V in itertools.combinations(vals, k):
                        pm.add(bs.bs_contract(K, f, bs.PartialMeet(V)).models.mask)
                assert infra == pm


class TestKernel:
    def test_horn_fragment_kernels(self):
        K = PropBeliefSet.from_formulas([parse("p -> q"), parse("q -> r")], SIG3)
        kernels = {frozenset(t) for t in bs.bs_kernels(K, parse("p -> r"), "horn").texts()}
        assert kernels == {
            frozenset({"p -> r"}),
            frozenset({"p -> q", "q -> r"}),
            frozenset({"p -> q", "p & q -> r"}),
        }

    def test_closure_restores_entailed_clause(self):
        K = PropBeliefSet.from_formulas([parse("p -> q"), parse("q -> r")], SIG3)
        f = parse("p -> r")
        sigma = bc.Explicit([parse("p -> r"), parse("p -> q"), parse("p & q -> r")])
        cut = bs.bs_kernel_base(K, f, sigma, "horn")
        assert "p & q -> r" not in cut.texts()
        assert cut.entails(parse("p & q -> r"))
        out = bs.bs_contract(K, f, bs.Kernel(sigma, "horn"))
        assert out.contains(parse("p & q -> r")) and not out.contains(f)

    def test_kernel_outcomes_match_partial_meet(self):
        """Over a full presentation, kernel outcomes are the partial meet outcomes."""
        for m in range(16):
            K = theory_of(ModelSet(SIG2, m))
            for fm in range(1, 15):
                f = synthesize(ModelSet(SIG2, fm))
                kernel = {X.models.mask for X in bs.bs_kernel_outcomes(K, f)}
                infra = {X.models.mask for X in bs.bs_infra_remainders(K, f).members()} or {K.models.mask}
                assert kernel == infra

    def test_representative_base(self, kpq):
        K, _ = kpq
        B = bs.representative_base(K)
        assert len(B) == 8
        assert all(K.contains(x) for x in B)
        with pytest.raises(InvalidParameter):
            bs.representative_base(K, "cnf")

    def test_horn_fragment(self):
        K = th("p & q")
        assert {c.render(SIG2) for c in bs.horn_fragment(K)} == {"p", "q", "p -> q", "q -> p"}
        assert model_mask(K.formula(), SIG2) == K.models.mask
