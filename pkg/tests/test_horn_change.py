import pytest

from beliefchange import base_change as bc
from beliefchange import horn_change as hc
from beliefchange.errors import InvalidInfraChoice, InvalidParameter, PreconditionError
from beliefchange.formula import HornClause, Signature, parse
from beliefchange.semantics import is_meet_closed

from conftest import SIG2, SIG3


def H(*gens, sig=SIG3):
    return hc.HornBeliefSet.from_generators(list(gens), sig)


@pytest.fixture
def ex4():
    return H("p -> q", "q -> r"), parse("p -> r")


@pytest.fixture
def ex5():
    return H("p & q"), parse("p & q")


class TestHornBeliefSet:
    def test_closure_and_generators(self):
        X = H("p -> q", "q -> r")
        assert X.contains("p -> r") and X.contains("p & q -> r")
        assert not X.contains("r -> p")
        assert repr(X) == "Cn_HL({p -> q, q -> r})"

    def test_generators_are_irredundant(self):
        X = H("p -> q", "q -> r", "p -> r", "p & q -> r")
        assert X.generator_texts() == ["p -> q", "q -> r"]
        assert X == H("p -> q", "q -> r")

    def test_order(self):
        assert H("p") < H("p & q")
        assert not H("p") <= H("q")

    def test_formula_input(self):
        assert H("p & (q -> r)") == H("p", "q -> r")

    def test_models_meet_closed(self):
        assert is_meet_closed(H("p -> q", "r").models)

    def test_all_horn_belief_sets(self):
        assert len(hc.all_horn_belief_sets(SIG2)) == 14
        assert len(hc.all_horn_belief_sets(SIG3)) == 122


class TestEContraction:
    def test_example4_remainders(self, ex4):
        K, f = ex4
        assert hc.e_remainders(K, f) == [H("p -> q"), H("q -> r", "p & r -> q")]

    def test_example4_methods(self, ex4):
        K, f = ex4
        assert hc.e_contract(K, f) == H("p & r -> q")
        assert hc.e_contract(K, f, "maxichoice") == H("p -> q")
        assert hc.e_contract(K, f, "maxichoice", bc.Indices(1)) == H("q -> r", "p & r -> q")
        assert hc.e_contract(K, f, "partial-meet", bc.Indices(0, 1)) == H("p & r -> q")

    def test_orderly_maxichoice(self, ex4):
        K, f = ex4
        default = hc.e_contract(K, f, "orderly-maxichoice")
        assert default == H("q -> r", "p & r -> q")
        by_size = hc.OrderSpec(key=len)
        assert hc.e_contract(K, f, "orderly-maxichoice", order=by_size) == H("q -> r", "p & r -> q")
        smallest = hc.OrderSpec(key=lambda X: -len(X))
        assert hc.e_contract(K, f, "orderly-maxichoice", order=smallest) == H("p -> q")

    def test_recovery_fails(self, ex4):
        K, f = ex4
        out = hc.e_contract(K, f)
        back = hc.HornBeliefSet.from_generators(list(out.clauses) + hc.clauses_of(f, SIG3), SIG3)
        assert back == H("p -> q", "p -> r")
        assert not back.contains("q -> r")

    def test_unknown_method(self, ex4):
        K, f = ex4
        with pytest.raises(InvalidParameter):
            hc.e_contract(K, f, "random")

    def test_vacuous(self, ex4):
        K, _ = ex4
        assert hc.e_contract(K, parse("r")) == K
        assert hc.e_contract(K, parse("p -> p")) == K

    def test_example5_remainders(self, ex5):
        K, f = ex5
        assert set(hc.e_remainders(K, f)) == {
            H("p", "r -> q"),
            H("q", "r -> p"),
            H("p -> q", "q -> p", "r -> p", "r -> q"),
        }


class TestInfra:
    def test_example4_membership(self, ex4):
        K, f = ex4
        fam = hc.infra_e_remainders(K, f)
        assert H("p & q -> r", "p & r -> q") in fam
        assert H("q -> r") not in fam
        assert fam.floor == H("p & r -> q")

    def test_example5_family(self, ex5):
        K, f = ex5
        fam = hc.infra_e_remainders(K, f)
        members = fam.members()
        assert members == fam.members_naive()
        assert len(members) == 6
        rp, rq = HornClause(frozenset("r"), "p"), HornClause(frozenset("r"), "q")
        assert all(rp in X.clauses and rq in X.clauses for X in members)
        assert H("p") not in fam

    def test_choices(self, ex4):
        K, f = ex4
        assert hc.infra_e_contraction(K, f) == H("p & r -> q")
        assert hc.infra_e_contraction(K, f, bc.RemainderIndex(0)) == H("p -> q")
        Hp = hc.infra_e_contraction(K, f, bc.ExplicitInfra([parse("p & q -> r"), parse("p & r -> q")]))
        assert Hp == H("p & q -> r", "p & r -> q")
        with pytest.raises(InvalidInfraChoice):
            hc.infra_e_contraction(K, f, bc.ExplicitInfra([parse("q -> r")]))
        with pytest.raises(InvalidInfraChoice):
            hc.infra_e_contraction(K, f, bc.RemainderIndex(2))


class TestKernelEContraction:
    def test_incision_and_closure(self, ex4):
        K, f = ex4
        sigma = bc.Explicit([parse("p -> r"), parse("p -> q"), parse("p & q -> r")])
        out = hc.horn_kernel_e_contraction(K, f, sigma)
        assert out == H("q -> r", "p & r -> q")
        assert out.contains("p & q -> r")


class TestDecomposability:
    def test_no_witness(self):
        assert hc.decomposability_witness([parse("q")], [parse("p -> q")], SIG2) is None

    def test_witness_exists(self):
        w = hc.decomposability_witness([parse("p & q")], [parse("p")], SIG2)
        assert w == H("q", sig=SIG2)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            hc.decomposability_witness([parse("q")], [], SIG2)
        with pytest.raises(PreconditionError):
            hc.decomposability_witness([parse("q")], [parse("q")], SIG2)
        with pytest.raises(PreconditionError):
            hc.decomposability_witness([parse("q")], [parse("p")], Signature.of("p q"))
