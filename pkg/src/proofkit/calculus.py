"""Rule schemas as data, the built-in calculi, and rule-instance matching.

A meta-sequent side is a tuple of items:

    ("pat", formula-pattern)   a formula built from metavariables
    ("mv", "G")                a multiset variable
    ("bmv", "G")               a boxed multiset variable ([]G)

All built-in rules are additive: contexts are repeated verbatim across
premises, so matching a conclusion never splits a context between two plain
multiset variables.  When a side carries both a plain and a boxed multiset
variable (the modal rules), backward matching binds the boxed variable
maximally; smaller bindings are subsumed because weakening is admissible in
those calculi.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import (Formula, FMultiset, Sequent, EMPTY, box, metavars)
from .syntax import parse_calculus, render_metasequent


class UnknownCalculus(Exception):
    pass


@dataclass(frozen=True)
class MetaSequent:
    ant: tuple
    suc: tuple

    def items(self):
        return self.ant + self.suc

    def __repr__(self):
        return render_metasequent((self.ant, self.suc))


@dataclass(frozen=True)
class RuleSchema:
    name: str
    premises: tuple        # tuple[MetaSequent]
    conclusion: MetaSequent

    def __repr__(self):
        prem = " ; ".join(repr(p) for p in self.premises)
        return f"{self.name}: {self.conclusion!r} <- {prem}"


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleSchema
    assignment: dict
    premises: tuple        # tuple[Sequent]
    conclusion: Sequent

    def __repr__(self):
        return f"<{self.rule.name} instance at {self.conclusion!r}>"


@dataclass
class Calculus:
    name: str
    mode: str                       # "single" | "multi"
    axioms: list                    # [(name, MetaSequent)]
    rules: list                     # [RuleSchema]
    termination_measure: str | None = None

    def rule(self, name) -> RuleSchema:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def rule_names(self):
        return [r.name for r in self.rules]

    def __repr__(self):
        return f"<calculus {self.name}: {len(self.axioms)} axioms, {len(self.rules)} rules>"


# ---------------------------------------------------------------------------
# pattern matching

def match_formula(pat: Formula, f: Formula, asg):
    """Extend assignment so that pat instantiates to f, or return None."""
    k = pat.kind
    if k == core.FMETA:
        bound = asg.get(pat.a)
        if bound is None:
            asg = dict(asg)
            asg[pat.a] = f
            return asg
        return asg if bound == f else None
    if k == core.AMETA:
        if f.kind != core.ATOM:
            return None
        bound = asg.get(pat.a)
        if bound is None:
            asg = dict(asg)
            asg[pat.a] = f
            return asg
        return asg if bound == f else None
    if k != f.kind:
        return None
    if k == core.ATOM:
        return asg if pat.a == f.a else None
    if k in (core.TOP, core.BOT):
        return asg
    if k in core.UNARY:
        return match_formula(pat.a, f.a, asg)
    asg = match_formula(pat.a, f.a, asg)
    if asg is None:
        return None
    return match_formula(pat.b, f.b, asg)


def subst_pattern(pat: Formula, asg) -> Formula:
    k = pat.kind
    if k in (core.FMETA, core.AMETA):
        try:
            return asg[pat.a]
        except KeyError:
            raise KeyError(f"unbound metavariable {pat.a}")
    if k in (core.ATOM, core.TOP, core.BOT):
        return pat
    if k in core.UNARY:
        return core._mk(k, subst_pattern(pat.a, asg))
    return core._mk(k, subst_pattern(pat.a, asg), subst_pattern(pat.b, asg))


def _match_side(items, ms: FMultiset, asg):
    """Yield assignments matching one meta-sequent side against a multiset.

    Formula patterns consume occurrences (every choice is enumerated, in
    canonical position order); the remainder goes to the multiset variables.
    """
    pats = [it[1] for it in items if it[0] == "pat"]
    mvs = [it[1] for it in items if it[0] == "mv"]
    bmvs = [it[1] for it in items if it[0] == "bmv"]

    def assign_rest(rest: FMultiset, asg):
        asg = dict(asg)
        # boxed variables first: bind maximally (or check a prior binding)
        for name in bmvs:
            bound = asg.get(name)
            if bound is not None:
                image = FMultiset(box(f) for f in bound)
                if not rest.contains(image):
                    return
                rest = rest.difference(image)
            else:
                boxed = FMultiset(f.a for f in rest if f.kind == core.BOX)
                asg[name] = boxed
                rest = FMultiset(f for f in rest if f.kind != core.BOX)
        unbound = []
        for name in mvs:
            bound = asg.get(name)
            if bound is not None:
                if not rest.contains(bound):
                    return
                rest = rest.difference(bound)
            else:
                unbound.append(name)
        if unbound:
            asg[unbound[0]] = rest
            for name in unbound[1:]:
                asg[name] = EMPTY
        elif rest:
            return
        yield asg

    def place(i, remaining: FMultiset, asg):
        if i == len(pats):
            yield from assign_rest(remaining, asg)
            return
        items = remaining.items
        for idx, f in enumerate(items):
            asg2 = match_formula(pats[i], f, asg)
            if asg2 is not None:
                rest = FMultiset._wrap(items[:idx] + items[idx + 1:])
                yield from place(i + 1, rest, asg2)

    yield from place(0, ms, asg)


def match_metasequent(ms: MetaSequent, s: Sequent, asg=None):
    """Yield every assignment under which ms instantiates to s."""
    if asg is None:
        asg = {}
    for asg1 in _match_side(ms.ant, s.ant, asg):
        yield from _match_side(ms.suc, s.suc, asg1)


def instantiate(ms: MetaSequent, asg) -> Sequent:
    def side(items):
        out = []
        for it in items:
            tag = it[0]
            if tag == "pat":
                out.append(subst_pattern(it[1], asg))
            elif tag == "mv":
                out.extend(asg[it[1]])
            else:
                out.extend(box(f) for f in asg[it[1]])
        return FMultiset(out)

    return Sequent(side(ms.ant), side(ms.suc))


def match_conclusion(calc: Calculus, s: Sequent):
    """All rule instances of calc whose conclusion is s, in deterministic
    order: rule order, then principal-occurrence order."""
    out = []
    for rule in calc.rules:
        for asg in match_metasequent(rule.conclusion, s):
            try:
                premises = tuple(instantiate(p, asg) for p in rule.premises)
            except KeyError:
                continue   # premise metavariable absent from the conclusion
            out.append(RuleInstance(rule, asg, premises, s))
    return out


def axiom_instance(calc: Calculus, s: Sequent):
    """Name of the first axiom s instantiates, else None."""
    for name, ms in calc.axioms:
        for _ in match_metasequent(ms, s):
            return name
    return None


def is_instance_finite(calc: Calculus):
    """True iff every rule's premise metavariables occur in its conclusion.

    Returns (ok, offenders); when ok, backward matching yields finitely many
    instances per sequent because every premise is determined by the
    conclusion match.
    """
    offenders = []
    for rule in calc.rules:
        conc_vars = _ms_vars(rule.conclusion)
        for prem in rule.premises:
            missing = _ms_vars(prem) - conc_vars
            if missing:
                offenders.append((rule.name, sorted(missing)))
                break
    return (not offenders, offenders)


def _ms_vars(ms: MetaSequent):
    names = set()
    for it in ms.items():
        if it[0] == "pat":
            names |= metavars(it[1])
        else:
            names.add(it[1])
    return names


# ---------------------------------------------------------------------------
# built-in calculi
#
# The figures' axioms are the atom axiom and left-bot; a right-top axiom is
# added so that the constant `true`, which the formula language includes, is
# provable.  Corpus enumeration keeps `true` out of generated formulas since
# the G4-family has no left rule decomposing implications with a `true`
# antecedent.

_G1CP = """
calculus G1cp
mode multi
axiom At : p? => p?
axiom Lbot : false =>
axiom Rtop : => true
rule LW : G, A => D <- G => D
rule RW : G => A, D <- G => D
rule LC : G, A => D <- G, A, A => D
rule RC : G => A, D <- G => A, A, D
rule L& : G, A & B => D <- G, A, B => D
rule R& : G => A & B, D <- G => A, D ; G => B, D
rule L| : G, A | B => D <- G, A => D ; G, B => D
rule R| : G => A | B, D <- G => A, B, D
rule L-> : G, A -> B => D <- G => A, D ; G, B => D
rule R-> : G => A -> B, D <- G, A => B, D
"""

_G1IP = """
calculus G1ip
mode single
axiom At : p? => p?
axiom Lbot : false =>
axiom Rtop : => true
rule LW : G, A => D <- G => D
rule RW : G => A <- G =>
rule LC : G, A => D <- G, A, A => D
rule L& : G, A & B => D <- G, A, B => D
rule R& : G => A & B <- G => A ; G => B
rule L| : G, A | B => D <- G, A => D ; G, B => D
rule R|0 : G => A | B <- G => A
rule R|1 : G => A | B <- G => B
rule L-> : G, A -> B => D <- G => A ; G, B => D
rule R-> : G => A -> B <- G, A => B
"""

_G3CP = """
calculus G3cp
mode multi
measure degree
axiom At : G, p? => p?, D
axiom Lbot : G, false => D
axiom Rtop : G => true, D
rule L& : G, A & B => D <- G, A, B => D
rule R& : G => A & B, D <- G => A, D ; G => B, D
rule L| : G, A | B => D <- G, A => D ; G, B => D
rule R| : G => A | B, D <- G => A, B, D
rule L-> : G, A -> B => D <- G => A, D ; G, B => D
rule R-> : G => A -> B, D <- G, A => B, D
"""

_G3IP = """
calculus G3ip
mode single
axiom At : G, p? => p?
axiom Lbot : G, false => D
axiom Rtop : G => true
rule L& : G, A & B => D <- G, A, B => D
rule R& : G => A & B <- G => A ; G => B
rule L| : G, A | B => D <- G, A => D ; G, B => D
rule R|0 : G => A | B <- G => A
rule R|1 : G => A | B <- G => B
rule L-> : G, A -> B => D <- G, A -> B => A ; G, B => D
rule R-> : G => A -> B <- G, A => B
"""

_G4IP_RULES = """
rule L& : G, A & B => D <- G, A, B => D
rule R& : G => A & B <- G => A ; G => B
rule L| : G, A | B => D <- G, A => D ; G, B => D
rule R|0 : G => A | B <- G => A
rule R|1 : G => A | B <- G => B
rule Lp-> : G, p?, p? -> A => D <- G, p?, A => D
rule R-> : G => A -> B <- G, A => B
rule L&-> : G, (A & B) -> C => D <- G, A -> (B -> C) => D
rule L|-> : G, (A | B) -> C => D <- G, A -> C, B -> C => D
rule L->-> : G, (A -> B) -> C => D <- G, B -> C => A -> B ; G, C => D
"""

_G4_HEADER = """
calculus {name}
mode single
measure weight
axiom At : G, p? => p?
axiom Lbot : G, false => D
axiom Rtop : G => true
"""

_G4IK_EXTRA = """
rule R[] : P, []G => []A <- G => A
rule L[]-> : P, []G, []A -> B => D <- G => A ; P, []G, B => D
"""

_G4IKD_EXTRA = """
rule D[] : P, []G, []A => D <- G, A =>
"""

_G4LL_EXTRA = """
rule RO : G => OA <- G => A
rule LO : G, OA => OB <- G, A => OB
rule RO-> : G, OA -> B => D <- G => A ; G, B => D
rule LO-> : G, OC, OA -> B => D <- G, C => OA ; G, OC, B => D
"""


class BadRuleShape(Exception):
    pass


def _validate_metasequent(owner, ms: MetaSequent, mode):
    for side, items in (("antecedent", ms.ant), ("succedent", ms.suc)):
        mvs = [it for it in items if it[0] == "mv"]
        bmvs = [it for it in items if it[0] == "bmv"]
        if len(mvs) > 1 or len(bmvs) > 1:
            raise BadRuleShape(
                f"{owner}: {side} splits its context between several "
                f"multiset variables (contexts are additive)")
    if mode == "single":
        pats = [it for it in ms.suc if it[0] == "pat"]
        mvs = [it for it in ms.suc if it[0] == "mv"]
        if len(pats) > 1 or len(mvs) > 1:
            raise BadRuleShape(f"{owner}: succedent too wide for a "
                               f"single-conclusion calculus")


def _build(doc_text) -> Calculus:
    return from_document(parse_calculus(doc_text))


def from_document(doc) -> Calculus:
    """Build a calculus from a parsed CalculusDoc, checking the additive
    context discipline and the single-conclusion width bound."""
    axioms = []
    for n, ms in doc.axioms:
        seq = MetaSequent(*ms)
        _validate_metasequent(f"axiom {n}", seq, doc.sequent_mode)
        axioms.append((n, seq))
    rules = []
    for n, prems, conc in doc.rules:
        schema = RuleSchema(n, tuple(MetaSequent(*p) for p in prems),
                            MetaSequent(*conc))
        for ms in (schema.conclusion, *schema.premises):
            _validate_metasequent(f"rule {n}", ms, doc.sequent_mode)
        rules.append(schema)
    return Calculus(doc.name, doc.sequent_mode, axioms, rules, doc.measure)


_BUILTINS: dict = {}


def _register(text):
    calc = _build(text)
    ok, offenders = is_instance_finite(calc)
    assert ok, f"builtin {calc.name} with fresh premise variables: {offenders}"
    _BUILTINS[calc.name.lower()] = calc
    return calc


_register(_G1CP)
_register(_G1IP)
_register(_G3CP)
_register(_G3IP)
_register(_G4_HEADER.format(name="G4ip") + _G4IP_RULES)
_register(_G4_HEADER.format(name="G4iK") + _G4IP_RULES + _G4IK_EXTRA)
_register(_G4_HEADER.format(name="G4iKD") + _G4IP_RULES + _G4IK_EXTRA + _G4IKD_EXTRA)
_register(_G4_HEADER.format(name="G4LL") + _G4IP_RULES + _G4LL_EXTRA)

_ALIASES = {
    "g4ik[]": "g4ik", "g4ikbox": "g4ik",
    "g4ikd[]": "g4ikd", "g4ikdbox": "g4ikd",
}


def builtin(name: str) -> Calculus:
    key = name.lower().replace("□", "[]")
    key = _ALIASES.get(key, key)
    calc = _BUILTINS.get(key)
    if calc is None:
        raise UnknownCalculus(f"no builtin calculus named {name!r} "
                              f"(have {', '.join(sorted(_BUILTINS))})")
    return calc


def builtin_names():
    return sorted(c.name for c in _BUILTINS.values())
