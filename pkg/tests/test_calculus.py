import pytest

from proofkit.core import FMultiset, atom, conj, disj, imp, box
from proofkit.calculus import (BadRuleShape, UnknownCalculus, builtin,
                               builtin_names, match_conclusion,
                               axiom_instance, instantiate,
                               is_instance_finite, from_document)
from proofkit.syntax import parse_calculus, parse_sequent as ps

p, q, r = atom("p"), atom("q"), atom("r")


class TestBuiltins:
    def test_names(self):
        assert set(builtin_names()) == {"G1cp", "G1ip", "G3cp", "G3ip",
                                        "G4ip", "G4iK", "G4iKD", "G4LL"}
        with pytest.raises(UnknownCalculus):
            builtin("G5")

    def test_box_aliases(self):
        assert builtin("G4iK[]") is builtin("g4ik")
        assert builtin("G4iKD□") is builtin("G4iKD")

    def test_g4ip_rules(self, g4ip):
        names = set(g4ip.rule_names())
        assert {"Lp->", "L&->", "L|->", "L->->"} <= names
        assert g4ip.termination_measure == "weight"

    def test_g3ip_single(self, g3ip):
        assert g3ip.mode == "single"
        for _, ms in g3ip.axioms:
            assert len(ms.suc) <= 1

    def test_g4ll_rules(self):
        names = set(builtin("G4LL").rule_names())
        assert {"RO", "LO", "RO->", "LO->"} <= names

    def test_g1_structural_rules(self, g1cp, g1ip):
        assert {"LW", "RW", "LC", "RC"} <= set(g1cp.rule_names())
        assert {"LW", "RW", "LC"} <= set(g1ip.rule_names())
        assert "RC" not in g1ip.rule_names()

    def test_modal_rule_sets(self):
        assert {"R[]", "L[]->"} <= set(builtin("G4iK").rule_names())
        assert "D[]" in builtin("G4iKD").rule_names()
        assert "D[]" not in builtin("G4iK").rule_names()


class TestMatching:
    def test_single_match(self, g3cp):
        insts = match_conclusion(g3cp, ps("=> p | q"))
        assert [i.rule.name for i in insts] == ["R|"]
        assert insts[0].premises == (ps("=> p, q"),)

    def test_occurrence_enumeration(self, g3ip):
        insts = [i for i in match_conclusion(g3ip, ps("p -> q, p -> q => r"))
                 if i.rule.name == "L->"]
        assert len(insts) == 2
        assert insts[0].premises == insts[1].premises

    def test_lp_imp_instance(self, g4ip):
        insts = [i for i in match_conclusion(g4ip, ps("p, p -> q => q"))
                 if i.rule.name == "Lp->"]
        assert any(i.premises == (ps("p, q => q"),) for i in insts)

    def test_resubstitution_reproduces_instance(self, g4ip, g3cp):
        for calc, text in ((g4ip, "p, p -> q => q"), (g3cp, "p & q => p, r"),
                           (g4ip, "(p -> q) -> r => r")):
            for inst in match_conclusion(calc, ps(text)):
                assert instantiate(inst.rule.conclusion, inst.assignment) == inst.conclusion
                assert tuple(instantiate(ms, inst.assignment)
                             for ms in inst.rule.premises) == inst.premises

    def test_boxed_context_maximal(self):
        g4ik = builtin("G4iK")
        insts = [i for i in match_conclusion(g4ik, ps("[]p, q => []r"))
                 if i.rule.name == "R[]"]
        assert len(insts) == 1
        assert insts[0].premises == (ps("p => r"),)

    def test_axiom_instance(self, g3cp, g1cp):
        assert axiom_instance(g3cp, ps("q, p => p, r")) == "At"
        assert axiom_instance(g3cp, ps("false, q => r")) == "Lbot"
        assert axiom_instance(g3cp, ps("q => true")) == "Rtop"
        assert axiom_instance(g3cp, ps("q => r")) is None
        # G1 axioms carry no context
        assert axiom_instance(g1cp, ps("p => p")) == "At"
        assert axiom_instance(g1cp, ps("q, p => p")) is None


class TestInstanceFinite:
    def test_builtins(self):
        for name in builtin_names():
            ok, offenders = is_instance_finite(builtin(name))
            assert ok, (name, offenders)

    def test_fresh_premise_var(self):
        doc = parse_calculus("calculus W\nrule Odd : G => A <- G => B")
        ok, offenders = is_instance_finite(from_document(doc))
        assert not ok and offenders[0][0] == "Odd"

    def test_fresh_var_rule_yields_no_instances(self):
        calc = from_document(parse_calculus(
            "calculus W\naxiom Ax : p? => p?\nrule Odd : G => A <- G => B"))
        assert match_conclusion(calc, ps("=> p")) == []


class TestRegistrationValidation:
    def test_multiplicative_split_rejected(self):
        with pytest.raises(BadRuleShape):
            from_document(parse_calculus(
                "calculus X\nrule Mul : G, P => D <- G => D ; P => D"))

    def test_wide_succedent_rejected_in_single_mode(self):
        with pytest.raises(BadRuleShape):
            from_document(parse_calculus(
                "calculus Y\nmode single\naxiom Wide : G => A, B"))

    def test_wide_succedent_fine_in_multi_mode(self):
        calc = from_document(parse_calculus(
            "calculus Z\nmode multi\naxiom Wide : G => A, A, D"))
        assert calc.axioms
