"""Craig-interpolant extraction from cut-free derivations.

The extractor walks a derivation bottom-up with an antecedent split
G ; P => D of the end-sequent, choosing for every rule application the
premise splits given in the corresponding interpolation lemma:

  - axioms: the constant/atom table (top when the witness sits on the P
    side, bot when bot sits on the G side, the shared atom otherwise);
  - Lp->: the two mixed cases produce beta & p and p -> beta;
  - right semi-analytic rules: the conjunction of the premise interpolants;
  - left semi-analytic rules with the principal on the P side: again the
    conjunction; with the principal on the G side the chi-premises are
    interpolated with the split swapped and the result is
    (/\\ betas) -> (\\/ alphas).

Connective folds drop top/bot units so that certificates stay inside the
fragment the G4 provers decide.  Certificate derivations are found by the
prover rather than assembled by hand.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import (Formula, FMultiset, Sequent, SplitAnt, Top, Bot, atoms,
                   conj, disj, imp)
from .calculus import Calculus, builtin, axiom_instance
from .classify import classify_rule, RIGHT, NOT
from .prover import (Derivation, ProverCache, check_derivation, prove,
                     shared_cache)


class NotAnAxiom(Exception):
    pass


class NotProvable(Exception):
    pass


class UnsupportedRule(Exception):
    pass


@dataclass
class InterpolationProblem:
    calculus: Calculus
    derivation: Derivation
    partition: SplitAnt

    def __post_init__(self):
        if self.partition.underlying() != self.derivation.conclusion:
            raise ValueError("partition does not cover the end-sequent")


@dataclass
class InterpolantCertificate:
    alpha: Formula
    left_derivation: Derivation      # proves  G => alpha
    right_derivation: Derivation     # proves  P, alpha => D


# unit-dropping folds; interpolants stay unsimplified otherwise
def _fand(a, b):
    if a is Top:
        return b
    if b is Top:
        return a
    if a is Bot or b is Bot:
        return Bot
    return conj(*sorted((a, b), key=Formula.sort_key))


def _for(a, b):
    if a is Bot:
        return b
    if b is Bot:
        return a
    if a is Top or b is Top:
        return Top
    return disj(*sorted((a, b), key=Formula.sort_key))


def _fimp(a, b):
    if a is Top:
        return b
    if b is Top or a is Bot:
        return Top
    return imp(a, b)


def _fand_all(xs):
    out = Top
    for x in xs:
        out = _fand(out, x)
    return out


def _for_all(xs):
    out = Bot
    for x in xs:
        out = _for(out, x)
    return out


def axiom_interpolant(calc: Calculus, split: SplitAnt) -> Formula:
    """Interpolant for a partitioned axiom instance."""
    s = split.underlying()
    name = axiom_instance(calc, s)
    if name is None:
        raise NotAnAxiom(repr(s))
    gamma, pi, delta = split.gamma, split.pi, split.delta
    if Bot in pi:
        return Top
    shared_pi = [f for f in pi.support() if f.kind == core.ATOM and f in delta]
    if shared_pi:
        return Top
    if Bot in gamma:
        return Bot
    shared_gamma = [f for f in gamma.support() if f.kind == core.ATOM and f in delta]
    if shared_gamma:
        return min(shared_gamma, key=Formula.sort_key)
    if Top in delta:
        return Top
    # generic focused axiom: the witness formulas share one variable set, so
    # the conjunction of those landing on the G side is in the common language
    from .calculus import match_metasequent, subst_pattern
    for aname, ms in calc.axioms:
        for asg in match_metasequent(ms, s):
            fis = [subst_pattern(it[1], asg)
                   for it in ms.items() if it[0] == "pat"]
            on_gamma = [f for f in fis if f in gamma]
            if not on_gamma:
                return Top
            return _fand_all(on_gamma)
    raise NotAnAxiom(repr(s))


def _split_of(node: Derivation, gamma: FMultiset) -> SplitAnt:
    return SplitAnt(gamma, node.conclusion.ant.difference(gamma),
                    node.conclusion.suc)


class _Extractor:
    def __init__(self, calc: Calculus, cache=None):
        self.calc = calc
        self.cache = cache or shared_cache(calc)
        self.kinds = {r.name: classify_rule(r, calc.mode) for r in calc.rules}

    def run(self, node: Derivation, gamma: FMultiset) -> Formula:
        if node.is_leaf:
            return axiom_interpolant(self.calc, _split_of(node, gamma))
        name = node.rule
        if name == "Lp->":
            return self._lp_imp(node, gamma)
        kind = self.kinds.get(name)
        if kind is None or kind.kind == NOT:
            raise UnsupportedRule(f"cannot interpolate across rule {name!r}")
        if kind.kind == RIGHT:
            # premise antecedents extend the context on the P side only
            return _fand_all(self.run(child, gamma) for child in node.children)
        principal = self._principal(name, node.assignment)
        if principal in node.conclusion.ant.difference(gamma):
            # part 1: everything the rule introduces stays on the P side
            return _fand_all(self.run(child, gamma) for child in node.children)
        if principal in gamma:
            return self._left_part2(node, gamma, principal)
        raise UnsupportedRule(f"principal of {name} not found in the end-sequent")

    # -- helpers -------------------------------------------------------------

    def _principal(self, name, asg):
        rule = self.calc.rule(name)
        pats = [it[1] for it in rule.conclusion.ant if it[0] == "pat"]
        if len(pats) != 1:
            raise UnsupportedRule(f"{name} has no single left principal")
        from .calculus import subst_pattern
        return subst_pattern(pats[0], asg)

    def _rule_formulas(self, prem_ms, asg):
        from .calculus import subst_pattern
        return [subst_pattern(it[1], asg) for it in prem_ms.ant if it[0] == "pat"]

    def _left_part2(self, node, gamma, principal):
        """Principal on the G side: rule formulas join G, chi-premises are
        interpolated with the split swapped, and the combinator is
        (/\\ betas) -> (\\/ alphas)."""
        gamma_rest = gamma.remove(principal)
        pi_part = node.conclusion.ant.difference(gamma)
        rule = self.calc.rule(node.rule)
        alphas, betas = [], []
        for prem_ms, child in zip(rule.premises, node.children):
            is_chi = any(it[0] == "pat" for it in prem_ms.suc)
            if is_chi:
                betas.append(self.run(child, pi_part))
            else:
                extra = self._rule_formulas(prem_ms, node.assignment)
                alphas.append(self.run(child, gamma_rest.union(extra)))
        return _fimp(_fand_all(betas), _for_all(alphas))

    def _lp_imp(self, node, gamma):
        """The two nontrivial Lp-> cases give beta & p and p -> beta."""
        asg = node.assignment
        patom, phi = asg["p"], asg["A"]
        prin = imp(patom, phi)
        pi = node.conclusion.ant.difference(gamma)
        child = node.children[0]
        imp_on_pi = prin in pi
        p_on_pi = patom in (pi.remove(prin) if imp_on_pi else pi)
        if imp_on_pi:
            beta = self.run(child, gamma)
            if p_on_pi:
                return beta                       # both on the P side
            return _fand(beta, patom)             # p in G, p->phi in P
        beta = self.run(child, gamma.remove(prin).add(phi))
        if p_on_pi:
            return _fimp(patom, beta)             # p in P, p->phi in G
        return beta                               # both on the G side


def craig_interpolate(problem: InterpolationProblem,
                      cache: ProverCache | None = None) -> InterpolantCertificate:
    """Extract an interpolant and prover-found certificate derivations."""
    calc = problem.calculus
    cache = cache or shared_cache(calc)
    defects = check_derivation(calc, problem.derivation)
    if defects:
        raise ValueError(f"input derivation is invalid: {defects[:3]}")
    ex = _Extractor(calc, cache)
    alpha = ex.run(problem.derivation, problem.partition.gamma)
    split = problem.partition
    left = Sequent(split.gamma, FMultiset([alpha]))
    right = Sequent(split.pi.add(alpha), split.delta)
    lr = prove(calc, left, cache=cache)
    rr = prove(calc, right, cache=cache)
    if not lr.provable or not rr.provable:
        raise NotProvable(f"certificate sequents not derivable: {left!r} / {right!r}")
    return InterpolantCertificate(alpha, lr.derivation, rr.derivation)


def verify_certificate(calc: Calculus, cert: InterpolantCertificate,
                       split: SplitAnt):
    """Re-check both certificate derivations and the common-language bound;
    returns a defect list, empty when the certificate is good."""
    defects = []
    want_left = Sequent(split.gamma, FMultiset([cert.alpha]))
    want_right = Sequent(split.pi.add(cert.alpha), split.delta)
    if cert.left_derivation.conclusion != want_left:
        defects.append(f"left derivation proves {cert.left_derivation.conclusion!r}, "
                       f"wanted {want_left!r}")
    if cert.right_derivation.conclusion != want_right:
        defects.append(f"right derivation proves {cert.right_derivation.conclusion!r}, "
                       f"wanted {want_right!r}")
    for side, d in (("left", cert.left_derivation), ("right", cert.right_derivation)):
        for path, msg in check_derivation(calc, d):
            defects.append(f"{side} derivation node {path}: {msg}")
    allowed = atoms(split.gamma) & (atoms(split.pi) | atoms(split.delta))
    extra = atoms(cert.alpha) - allowed
    if extra:
        defects.append(f"interpolant uses atoms outside the common language: {sorted(extra)}")
    return defects


def formula_interpolant(logic: str, f: Formula,
                        cache: ProverCache | None = None) -> Formula:
    """Interpolant for a provable implication a -> b.

    IPC: prove (a => b) in G4ip and extract with the split (a ; => b).
    CPC: eliminate the atoms private to b with the classical universal
    quantifier (substitute both constants), which lands in the common
    language by construction.
    """
    from .prover import decide
    if f.kind != core.IMP:
        raise ValueError(f"need an implication, got {f!r}")
    a, b = f.a, f.b
    logic = logic.upper()
    if logic == "IPC":
        calc = builtin("G4ip")
        cache = cache or shared_cache(calc)
        r = prove(calc, Sequent(FMultiset([a]), FMultiset([b])), cache=cache)
        if not r.provable:
            raise NotProvable(repr(f))
        problem = InterpolationProblem(calc, r.derivation,
                                       SplitAnt(FMultiset([a]), FMultiset(), FMultiset([b])))
        return craig_interpolate(problem, cache).alpha
    if logic == "CPC":
        if not decide("CPC", f):
            raise NotProvable(repr(f))
        from .uniform import classical_forall
        alpha = b
        for p in sorted(atoms(b) - atoms(a)):
            alpha = classical_forall(alpha, p)
        return alpha
    raise ValueError(f"formula_interpolant supports CPC and IPC, not {logic!r}")
