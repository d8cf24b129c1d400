import itertools

import pytest
from hypothesis import given, settings, strategies as st

from proofkit.core import (FMultiset, Sequent, Top, Bot, atom, conj, disj,
                           imp, neg, box, circle, atoms, degree, weight,
                           subformulas, polarity_atoms, apply_subst,
                           interpret, multiset_less, sequent_less, sequent,
                           SplitAnt, RestInterp, seq_multiply)
from proofkit.syntax import parse_formula as pf, parse_sequent as ps
from proofkit import corpus

p, q, r = atom("p"), atom("q"), atom("r")


def formula_strategy(names=("p", "q"), max_leaves=8):
    leaf = st.one_of(st.sampled_from([atom(n) for n in names]),
                     st.just(Bot), st.just(Top))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.builds(conj, sub, sub),
            st.builds(disj, sub, sub),
            st.builds(imp, sub, sub),
            st.builds(box, sub),
            st.builds(circle, sub),
        ),
        max_leaves=max_leaves)


class TestFormulas:
    def test_interning(self):
        assert conj(p, q) is conj(p, q)
        assert imp(p, Bot) is neg(p)

    def test_structural_equality(self):
        assert conj(p, q) != conj(q, p)
        assert box(p) != circle(p)

    def test_atoms(self):
        assert atoms(pf("p & (q -> false)")) == {"p", "q"}
        assert atoms(Top) == set()
        assert atoms(pf("[]p | p")) == {"p"}

    def test_subformulas(self):
        assert subformulas(imp(p, q)) == {imp(p, q), p, q}
        assert subformulas(box(p)) == {box(p), p}
        assert subformulas(Bot) == {Bot}

    def test_degree(self):
        assert degree(Bot) == 0 and degree(Top) == 0
        assert degree(conj(p, q)) == 3
        assert degree(box(imp(p, Bot))) == 3

    def test_weight(self):
        assert weight(disj(p, q)) == 3
        assert weight(conj(p, q)) == 4
        assert weight(circle(p)) == 2
        assert weight(box(p)) == 2
        assert weight(atom("x")) == weight(Bot) == weight(Top) == 1

    def test_polarity(self):
        assert polarity_atoms(imp(p, q)) == ({"q"}, {"p"})
        assert polarity_atoms(pf("(p -> q) -> r")) == ({"p", "r"}, {"q"})
        assert polarity_atoms(conj(p, neg(p))) == ({"p"}, {"p"})

    @given(formula_strategy())
    def test_polarity_union(self, f):
        pos, negs = polarity_atoms(f)
        assert pos | negs == atoms(f)


class TestSubstitution:
    def test_homomorphism(self):
        s = {"p": conj(q, r)}
        assert apply_subst(s, imp(p, p)) == imp(conj(q, r), conj(q, r))

    def test_identity(self):
        f = pf("(p -> q) & ~r")
        assert apply_subst({}, f) is f

    def test_negation_clause(self):
        assert apply_subst({"p": Bot}, neg(p)) == imp(Bot, Bot)

    @given(formula_strategy(("p", "q", "r")))
    def test_atoms_bound(self, f):
        s = {"p": disj(q, r), "q": Bot}
        image = atoms(apply_subst(s, f))
        allowed = set()
        for a in atoms(f):
            allowed |= atoms(s[a]) if a in s else {a}
        assert image <= allowed


class TestMultisets:
    def test_multiplicity(self):
        m = FMultiset([p, p, q])
        assert m.count(p) == 2 and len(m) == 3
        assert m == FMultiset([q, p, p])
        assert m != FMultiset([p, q])

    def test_union_difference_containment(self):
        a, b = FMultiset([p, q]), FMultiset([p])
        assert a.union(b).count(p) == 2
        assert a.difference(b) == FMultiset([q])
        assert a.contains(b) and not b.contains(a)
        assert FMultiset([p, p]).contains(FMultiset([p]))
        assert not FMultiset([p]).contains(FMultiset([p, p]))


class TestOrders:
    def test_degree_example(self):
        assert multiset_less(FMultiset([p, q]), FMultiset([conj(p, q)]), "degree")

    def test_irreflexive(self):
        m = FMultiset([conj(p, q)])
        assert not multiset_less(m, m, "degree")
        assert not multiset_less(m, m, "weight")

    def test_replacement_with_duplicates(self):
        # {p,p,p} from {p|p}: every new member has weight 1 < 3 = w(p|p)
        assert multiset_less(FMultiset([p, p, p]), FMultiset([disj(p, p)]), "weight")
        assert not multiset_less(FMultiset([disj(p, p)]), FMultiset([p, p, p]), "weight")

    def test_removal_only(self):
        assert multiset_less(FMultiset([p]), FMultiset([p, q]), "weight")

    def test_sequent_less(self):
        assert sequent_less(ps("p => q"), ps("p & p => q"), "degree")
        s = ps("p => q")
        assert not sequent_less(s, s, "degree")
        assert sequent_less(ps("p, q =>"), ps("=> p & q"), "degree")

    def test_strict_partial_order_small(self):
        bags = [FMultiset(items) for items in
                itertools.chain.from_iterable(
                    itertools.combinations_with_replacement(
                        list(corpus.formulas(("p", "q"), 3)), k)
                    for k in range(3))]
        rel = {}
        for a in bags:
            for b in bags:
                rel[(a, b)] = multiset_less(a, b, "weight")
        for a in bags:
            assert not rel[(a, a)]
        for (a, b), ab in rel.items():
            if not ab:
                continue
            assert not rel[(b, a)], "antisymmetry"
            for c in bags:
                if rel[(b, c)]:
                    assert rel[(a, c)], "transitivity"

    def test_well_founded_small(self):
        # no cycles over all bags of total weight <= 8 over {p}
        pool = list(corpus.formulas(("p",), 6))
        bags = set()

        def grow(prefix, budget, start):
            bags.add(FMultiset(prefix))
            for i in range(start, len(pool)):
                w = weight(pool[i])
                if w <= budget:
                    grow(prefix + (pool[i],), budget - w, i)

        grow((), 8, 0)
        order = sorted(bags, key=lambda m: sum(weight(f) for f in m))
        seen = set()
        for b in order:
            for a in seen:
                if multiset_less(b, a, "weight") and multiset_less(a, b, "weight"):
                    pytest.fail(f"cycle between {a} and {b}")
            seen.add(b)

    @given(formula_strategy(("p", "q")), st.sampled_from(["degree", "weight"]))
    @settings(max_examples=60)
    def test_measure_monotone_under_smaller_part(self, f, measure):
        # replacing a proper subformula by a strictly smaller one shrinks the whole
        from proofkit.core import _measure_fn, _mk, BINARY, UNARY
        m = _measure_fn(measure)
        if f.kind in BINARY:
            smaller = Bot if m(Bot) < m(f.a) else None
            if smaller is not None:
                g = _mk(f.kind, smaller, f.b)
                assert m(g) < m(f)
        elif f.kind in UNARY:
            if m(Bot) < m(f.a):
                g = _mk(f.kind, Bot)
                assert m(g) < m(f)


class TestSequents:
    def test_single_conclusion(self):
        assert ps("p =>").is_single_conclusion()
        assert ps("p => q").is_single_conclusion()
        assert not ps("=> p, q").is_single_conclusion()

    def test_interpret(self):
        assert interpret(ps("=> p")) == imp(Top, p)
        assert interpret(ps("p, q =>")) == imp(conj(p, q), Bot)
        assert interpret(ps("=>")) == imp(Top, Bot)

    def test_interpret_canonical_fold(self):
        # members folded in canonical (weight, structural) order
        s = sequent([conj(p, q), r], [])
        assert interpret(s) == imp(conj(r, conj(p, q)), Bot)


class TestPartitions:
    def test_split_ant_underlying(self):
        sp = SplitAnt([p], [q], [r])
        assert sp.underlying() == ps("p, q => r")

    def test_rest_interp_multiply(self):
        ri = RestInterp(ps("p =>"), ps("q => r"))
        assert ri.underlying() == ps("p, q => r")
        assert seq_multiply(ps("p =>"), ps("q => r")) == ps("p, q => r")
