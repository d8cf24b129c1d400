"""Backward proof search, derivation checking, and admissibility probes.

The search is depth-first backward chaining over `match_conclusion`.  For
terminating calculi (a registered termination measure: G3cp, the G4 family)
plain memoized recursion is a decision procedure.  For the rest the engine
keeps the current branch and fails on repeats; refutations computed below a
repeat hit are not cached, so cached refutations always come from exhaustive
subsearches.  G3ip is searched on support sequents (duplicates dropped on
both sides), which is sound and complete because weakening and contraction
are depth-preserving admissible there; found derivations are padded back to
the original multiset.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache

from . import core
from .core import (Formula, FMultiset, Sequent, EMPTY, disj, subformulas)
from .calculus import (Calculus, RuleInstance, axiom_instance, builtin,
                       instantiate, match_conclusion, match_metasequent)

sys.setrecursionlimit(100_000)


class ShapeMismatch(Exception):
    pass


class NotADisjunction(Exception):
    pass


# calculi whose search runs on support sequents / with contraction caps
_SET_REDUCE = {"G3ip", "G3cp"}
# loop-checked calculi with a subformula-closed search space: decided by
# bottom-up saturation of the reachable support sequents (a least fixpoint,
# so refutations are exhaustive and cacheable)
_SATURATE = {"G3ip"}
_CONTRACTION_RULES = {"G1cp": ("LC", "RC"), "G1ip": ("LC",)}
_CONTRACTION_CAP = 2


class Derivation:
    """Tree of sequents; leaves are axiom instances, inner nodes rule
    applications.  `rule` is the axiom or rule name, `assignment` the
    metavariable assignment that justifies the node."""

    __slots__ = ("conclusion", "rule", "assignment", "children")

    def __init__(self, conclusion, rule, assignment=None, children=()):
        self.conclusion = conclusion
        self.rule = rule
        self.assignment = assignment
        self.children = tuple(children)

    @property
    def is_leaf(self):
        return not self.children

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def __eq__(self, other):
        return (isinstance(other, Derivation)
                and self.conclusion == other.conclusion
                and self.rule == other.rule
                and self.children == other.children)

    def __hash__(self):
        return hash((self.conclusion, self.rule, self.children))

    def __repr__(self):
        return f"<{self.rule} derivation of {self.conclusion!r}, depth {self.depth()}>"


@dataclass
class SearchBudget:
    max_depth: int = 4096
    max_nodes: int = 5_000_000

    def __post_init__(self):
        if self.max_depth <= 0 or self.max_nodes <= 0:
            raise ValueError("budget must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0


@dataclass
class ProofSearchResult:
    status: str                     # provable | unprovable | budget
    derivation: Derivation | None = None
    exhaustive: bool = False
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def provable(self):
        return self.status == "provable"

    def __repr__(self):
        if self.status == "provable":
            return f"Provable(depth {self.derivation.depth()})"
        if self.status == "unprovable":
            return f"Unprovable(exhaustive={self.exhaustive})"
        return f"BudgetExceeded(nodes={self.stats.nodes})"


class _Budget(Exception):
    pass


class ProverCache:
    """Per-calculus memo shared between queries on request.

    proved maps a sequent key to ("ax", name, asg) or (rule, asg, premises);
    refuted holds keys with exhaustively failed searches; depths holds the
    depth of the recorded derivation.
    """

    def __init__(self, calc: Calculus):
        self.calc = calc
        self.proved = {}
        self.refuted = set()
        self.depths = {}

    def clear(self):
        self.proved.clear()
        self.refuted.clear()
        self.depths.clear()


_shared_caches: dict = {}


def shared_cache(calc: Calculus) -> ProverCache:
    cache = _shared_caches.get(id(calc))
    if cache is None:
        cache = ProverCache(calc)
        _shared_caches[id(calc)] = cache
    return cache


def _support(s: Sequent) -> Sequent:
    return Sequent(s.ant.support(), s.suc.support())


class _Search:
    def __init__(self, calc, budget=None, cache=None, cut_pool=None):
        self.calc = calc
        self.budget = budget or SearchBudget()
        self.cache = cache if cache is not None else ProverCache(calc)
        self.cut_pool = list(dict.fromkeys(cut_pool)) if cut_pool else None
        self.terminating = calc.termination_measure is not None and not self.cut_pool
        self.set_reduce = calc.name in _SET_REDUCE
        self.caps = _CONTRACTION_RULES.get(calc.name, ())
        self.cut_rule = cut_rule(calc.mode) if self.cut_pool else None
        self.stats = SearchStats()
        self.branch = set()

    # -- instance enumeration ------------------------------------------------

    def instances(self, s: Sequent):
        out = match_conclusion(self.calc, s)
        if self.cut_pool:
            for phi in self.cut_pool:
                if self.calc.mode == "single":
                    left = Sequent(s.ant, FMultiset([phi]))
                else:
                    left = Sequent(s.ant, s.suc.add(phi))
                right = Sequent(s.ant.add(phi), s.suc)
                asg = {"G": s.ant, "A": phi, "D": s.suc}
                out.append(RuleInstance(self.cut_rule, asg, (left, right), s))
        return out

    # -- search --------------------------------------------------------------

    def solve(self, s: Sequent):
        """Return (provable, absolute); absolute means the subsearch was
        exhaustive (no repeat hit, no cap, no depth cut)."""
        if self.set_reduce:
            s = _support(s)
        if self.calc.name in _SATURATE or (self.cut_pool and self.set_reduce):
            return self._saturate(s), True
        self._heuristic_refuted = {}
        return self._solve(s, self.budget.max_depth, {})

    def _saturate(self, root: Sequent) -> bool:
        """Decide by saturating the finite space of reachable support
        sequents bottom-up; sound and refutation-complete because weakening
        and contraction are admissible in the calculi this runs for."""
        cache = self.cache
        rootkey = root.key()
        if rootkey in cache.proved:
            return True
        if rootkey in cache.refuted:
            return False
        entries = {}     # key -> list[(inst, premise keys)]
        waiting = {}     # premise key -> list[(conclusion key, entry idx)]
        missing = {}     # (conclusion key, entry idx) -> unproved premises
        newly = []
        stack = [root]
        seen = set()
        while stack:
            s = stack.pop()
            k = s.key()
            if k in seen or k in cache.proved or k in cache.refuted:
                continue
            seen.add(k)
            self.stats.nodes += 1
            if self.stats.nodes > self.budget.max_nodes:
                raise _Budget()
            ax = axiom_instance(self.calc, s)
            if ax is not None:
                cache.proved[k] = ("ax", ax)
                cache.depths[k] = 1
                newly.append(k)
                continue
            rows = []
            dedupe = set()
            for inst in self.instances(s):
                prems = tuple(_support(p) for p in inst.premises)
                pk = tuple(x.key() for x in prems)
                if pk in dedupe:
                    continue
                dedupe.add(pk)
                rows.append((inst, pk))
                for x in prems:
                    stack.append(x)
            entries[k] = rows
        for k, rows in entries.items():
            for i, (inst, pk) in enumerate(rows):
                todo = {x for x in pk if x not in cache.proved}
                if not todo:
                    if k not in cache.proved:
                        cache.proved[k] = (inst, pk)
                        cache.depths[k] = 1 + max(
                            (cache.depths.get(x, 1) for x in pk), default=0)
                        newly.append(k)
                    continue
                missing[(k, i)] = todo
                for x in todo:
                    waiting.setdefault(x, []).append((k, i))
        while newly:
            done = newly.pop()
            for (k, i) in waiting.get(done, ()):
                if k in cache.proved:
                    continue
                todo = missing[(k, i)]
                todo.discard(done)
                if not todo:
                    inst, pk = entries[k][i]
                    cache.proved[k] = (inst, pk)
                    cache.depths[k] = 1 + max(
                        (cache.depths.get(x, 1) for x in pk), default=0)
                    newly.append(k)
        for k in entries:
            if k not in cache.proved:
                cache.refuted.add(k)
        return rootkey in cache.proved

    def _solve(self, s, depth_left, caps):
        cache = self.cache
        key = s.key()
        if key in cache.proved:
            return True, True
        if key in cache.refuted:
            return False, True
        capsig = None
        if self.caps:
            # heuristic per-query memo: a failure under the same contraction
            # budget is not retried (documented G1-family approximation)
            capsig = (key, frozenset(caps.items()))
            if capsig in self._heuristic_refuted:
                return False, False
        self.stats.nodes += 1
        if self.stats.nodes > self.budget.max_nodes:
            raise _Budget()
        used = self.budget.max_depth - depth_left + 1
        if used > self.stats.max_depth:
            self.stats.max_depth = used

        ax = axiom_instance(self.calc, s)
        if ax is not None:
            cache.proved[key] = ("ax", ax)
            cache.depths[key] = 1
            return True, True

        if depth_left <= 1:
            return False, False
        if not self.terminating:
            if key in self.branch:
                return False, False
            self.branch.add(key)

        absolute = True
        seen_premises = set()
        try:
            for inst in self.instances(s):
                name = inst.rule.name
                new_caps = caps
                if name in self.caps:
                    principal = _principal_of(inst)
                    count = caps.get((name, principal), 0)
                    if count >= _CONTRACTION_CAP:
                        absolute = False
                        continue
                    new_caps = dict(caps)
                    new_caps[(name, principal)] = count + 1
                prem_keys = tuple(p.key() for p in inst.premises)
                if prem_keys in seen_premises:
                    continue
                seen_premises.add(prem_keys)
                ok_all = True
                abs_all = True
                depths = []
                for p in inst.premises:
                    if self.set_reduce:
                        p = _support(p)
                    ok, ab = self._solve(p, depth_left - 1, new_caps)
                    abs_all = abs_all and ab
                    if not ok:
                        ok_all = False
                        absolute = absolute and ab
                        break
                    depths.append(self.cache.depths.get(p.key(), 1))
                if ok_all:
                    cache.proved[key] = (inst, prem_keys)
                    cache.depths[key] = 1 + max(depths, default=0)
                    return True, abs_all
        finally:
            if not self.terminating:
                self.branch.discard(key)
        if absolute:
            cache.refuted.add(key)
        elif capsig is not None:
            self._heuristic_refuted[capsig] = True
        return False, absolute

    # -- derivation reconstruction -------------------------------------------

    def build(self, s: Sequent) -> Derivation:
        target = _support(s) if self.set_reduce else s
        d = self._build(target)
        if self.set_reduce and target != s:
            d = pad_derivation(d, s.ant.difference(target.ant),
                               s.suc.difference(target.suc))
        return d

    def _build(self, s: Sequent) -> Derivation:
        entry = self.cache.proved[s.key()]
        if entry[0] == "ax":
            asg = _axiom_assignment(self.calc, s, entry[1])
            return Derivation(s, entry[1], asg)
        inst, prem_keys = entry
        children = []
        for p in inst.premises:
            p2 = _support(p) if self.set_reduce else p
            child = self._build(p2)
            if self.set_reduce and p2 != p:
                child = pad_derivation(child, p.ant.difference(p2.ant),
                                       p.suc.difference(p2.suc))
            children.append(child)
        return Derivation(s, inst.rule.name, inst.assignment, children)


@lru_cache(maxsize=4)
def cut_rule(mode):
    """The additive Cut rule as a checkable schema."""
    from .calculus import MetaSequent, RuleSchema
    from .syntax import parse_metasequent
    left = "G => A" if mode == "single" else "G => A, D"
    return RuleSchema("Cut",
                      (MetaSequent(*parse_metasequent(left)),
                       MetaSequent(*parse_metasequent("G, A => D"))),
                      MetaSequent(*parse_metasequent("G => D")))


def with_cut(calc: Calculus) -> Calculus:
    """calc plus the Cut rule (for checking cut-bearing derivations)."""
    return Calculus(calc.name + "+Cut", calc.mode, calc.axioms,
                    calc.rules + [cut_rule(calc.mode)], None)


def _principal_of(inst: RuleInstance):
    return inst.assignment.get("A")


def _axiom_assignment(calc, s, name):
    for n, ms in calc.axioms:
        if n == name:
            for asg in match_metasequent(ms, s):
                return asg
    return None


def pad_derivation(d: Derivation, extra_ant: FMultiset, extra_suc=EMPTY) -> Derivation:
    """Weave extra context into every node.

    Valid for the G3-family, whose schemas are additive with a single
    antecedent context variable G (and succedent context D when
    multi-conclusion), so the surplus rides along in the context bindings.
    """
    if not extra_ant and not extra_suc:
        return d
    conclusion = Sequent(d.conclusion.ant.union(extra_ant),
                         d.conclusion.suc.union(extra_suc))
    asg = d.assignment
    if asg is not None:
        asg = dict(asg)
        if extra_ant:
            if isinstance(asg.get("G"), FMultiset):
                asg["G"] = asg["G"].union(extra_ant)
            else:
                asg = None
        if asg is not None and extra_suc:
            if isinstance(asg.get("D"), FMultiset):
                asg["D"] = asg["D"].union(extra_suc)
            else:
                asg = None
    children = [pad_derivation(c, extra_ant, extra_suc) for c in d.children]
    return Derivation(conclusion, d.rule, asg, children)


# ---------------------------------------------------------------------------
# public entry points

def prove(calc: Calculus, s: Sequent, budget: SearchBudget | None = None,
          cache: ProverCache | None = None) -> ProofSearchResult:
    """Backward proof search; sound, and complete for terminating calculi."""
    if calc.mode == "single" and not s.is_single_conclusion():
        raise ValueError(f"{calc.name} is single-conclusion; got {s!r}")
    search = _Search(calc, budget, cache)
    try:
        ok, absolute = search.solve(s)
    except _Budget:
        return ProofSearchResult("budget", stats=search.stats)
    if ok:
        d = search.build(s)
        return ProofSearchResult("provable", d, True, search.stats)
    return ProofSearchResult("unprovable", None, absolute, search.stats)


def prove_with_cut(calc: Calculus, s: Sequent, cut_pool=None,
                   budget: SearchBudget | None = None) -> ProofSearchResult:
    """Search in calc plus the (additive) Cut rule, cutformulas drawn from
    the pool; the default pool is the subformulas of s."""
    if cut_pool is None:
        pool = set()
        for f in list(s.ant) + list(s.suc):
            pool |= subformulas(f)
        cut_pool = sorted(pool, key=Formula.sort_key)
    if not cut_pool:
        return prove(calc, s, budget)
    if calc.mode == "single" and not s.is_single_conclusion():
        raise ValueError(f"{calc.name} is single-conclusion; got {s!r}")
    search = _Search(calc, budget or SearchBudget(max_depth=64), None, cut_pool)
    try:
        ok, absolute = search.solve(s)
    except _Budget:
        return ProofSearchResult("budget", stats=search.stats)
    if ok:
        return ProofSearchResult("provable", search.build(s), True, search.stats)
    return ProofSearchResult("unprovable", None, absolute, search.stats)


_LOGIC_CALCULI = {"CPC": "G3cp", "IPC": "G4ip", "IK": "G4iK", "IKD": "G4iKD", "LL": "G4LL"}


def calculus_for_logic(logic: str) -> Calculus:
    key = logic.upper().replace("□", "").replace("[]", "").replace("BOX", "")
    key = {"IK": "IK", "IKD": "IKD"}.get(key, key)
    if key not in _LOGIC_CALCULI:
        raise KeyError(f"unknown logic {logic!r}; know {sorted(_LOGIC_CALCULI)}")
    return builtin(_LOGIC_CALCULI[key])


def decide(logic: str, f: Formula, cache: ProverCache | None = None) -> bool:
    """Total decision procedure: proves (=> f) in the logic's terminating
    calculus."""
    calc = calculus_for_logic(logic)
    if cache is None:
        cache = shared_cache(calc)
    return prove(calc, Sequent(EMPTY, FMultiset([f])), cache=cache).provable


def split_disjunction(logic: str, f: Formula):
    """Which disjunct of a provable disjunction is provable (Left preferred);
    Neither when the disjunction itself is unprovable."""
    if f.kind != core.OR:
        raise NotADisjunction(repr(f))
    if decide(logic, f.a):
        return "Left"
    if decide(logic, f.b):
        return "Right"
    return "Neither"


# ---------------------------------------------------------------------------
# derivation checking

def check_derivation(calc: Calculus, d: Derivation):
    """Validate every node of d against calc; returns a list of
    (path, message) defects, empty when the derivation is correct."""
    defects = []

    def walk(node, path):
        if calc.mode == "single" and not node.conclusion.is_single_conclusion():
            defects.append((path, f"multi-conclusion sequent {node.conclusion!r}"))
        if node.is_leaf:
            names = dict(calc.axioms)
            ms = names.get(node.rule)
            if ms is None:
                defects.append((path, f"unknown axiom {node.rule!r}"))
                return
            for _ in match_metasequent(ms, node.conclusion):
                return
            defects.append((path, f"{node.conclusion!r} is not an instance of {node.rule}"))
            return
        rule = None
        try:
            rule = calc.rule(node.rule)
        except KeyError:
            defects.append((path, f"unknown rule {node.rule!r}"))
        if rule is not None:
            if len(rule.premises) != len(node.children):
                defects.append((path, f"{node.rule} expects {len(rule.premises)} "
                                      f"premises, got {len(node.children)}"))
            elif not _instance_ok(rule, node):
                defects.append((path, f"not an instance of {node.rule}: "
                                      f"{node.conclusion!r}"))
        for i, c in enumerate(node.children):
            walk(c, path + (i,))

    walk(d, ())
    return defects


def _instance_ok(rule, node) -> bool:
    asg = node.assignment
    if asg is not None:
        try:
            if instantiate(rule.conclusion, asg) != node.conclusion:
                return False
            return all(instantiate(p, asg) == c.conclusion
                       for p, c in zip(rule.premises, node.children))
        except KeyError:
            return False
    # no stored assignment: derive one from the premises, then check the
    # conclusion (this also covers non-maximal boxed-context splits)
    def chain(i, asg):
        if i == len(rule.premises):
            for asg2 in match_metasequent(rule.conclusion, node.conclusion, asg):
                yield asg2
            return
        for asg1 in match_metasequent(rule.premises[i], node.children[i].conclusion, asg):
            yield from chain(i + 1, asg1)

    for _ in chain(0, {}):
        return True
    return False


# ---------------------------------------------------------------------------
# minimal proof depth (terminating calculi)

def min_depth(calc: Calculus, s: Sequent, memo=None):
    """Least derivation depth of s in a terminating calculus, None if
    unprovable.  Axioms have depth 1."""
    if calc.termination_measure is None:
        raise ValueError(f"{calc.name} is not registered terminating")
    if memo is None:
        memo = {}
    key = s.key()
    if key in memo:
        return memo[key]
    if axiom_instance(calc, s) is not None:
        memo[key] = 1
        return 1
    best = None
    for inst in match_conclusion(calc, s):
        worst = 0
        for p in inst.premises:
            dp = min_depth(calc, p, memo)
            if dp is None:
                worst = None
                break
            worst = max(worst, dp)
        if worst is not None:
            cand = 1 + worst
            if best is None or cand < best:
                best = cand
    memo[key] = best
    return best


# ---------------------------------------------------------------------------
# inversion (Lemma clauses for G3cp / G3ip)

def invert(calc: Calculus, s: Sequent, side: str, principal: Formula):
    """Premises guaranteed provable by the inversion lemma when s is
    provable and has the given principal formula on the given side."""
    if calc.name not in ("G3cp", "G3ip"):
        raise ShapeMismatch(f"inversion clauses cover G3cp/G3ip, not {calc.name}")
    single = calc.mode == "single"
    if side == "left":
        if principal not in s.ant:
            raise ShapeMismatch(f"{principal!r} not in the antecedent")
        rest = s.ant.remove(principal)
        k = principal.kind
        if k == core.AND:
            return [Sequent(rest.add(principal.a, principal.b), s.suc)]
        if k == core.OR:
            return [Sequent(rest.add(principal.a), s.suc),
                    Sequent(rest.add(principal.b), s.suc)]
        if k == core.IMP:
            if single:
                return [Sequent(rest.add(principal.b), s.suc)]
            return [Sequent(rest, s.suc.add(principal.a)),
                    Sequent(rest.add(principal.b), s.suc)]
        raise ShapeMismatch(f"no left inversion clause for {principal!r}")
    if side == "right":
        if principal not in s.suc:
            raise ShapeMismatch(f"{principal!r} not in the succedent")
        rest = s.suc.remove(principal)
        k = principal.kind
        if k == core.AND:
            return [Sequent(s.ant, rest.add(principal.a)),
                    Sequent(s.ant, rest.add(principal.b))]
        if k == core.OR:
            if single:
                raise ShapeMismatch("no right disjunction inversion in G3ip")
            return [Sequent(s.ant, rest.add(principal.a, principal.b))]
        if k == core.IMP:
            return [Sequent(s.ant.add(principal.a), rest.add(principal.b))]
        raise ShapeMismatch(f"no right inversion clause for {principal!r}")
    raise ShapeMismatch(f"side must be 'left' or 'right', got {side!r}")


# ---------------------------------------------------------------------------
# admissibility probes

@dataclass
class ProbeReport:
    calculus: str
    rule: str
    checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations

    def render(self):
        head = f"{self.rule} on {self.calculus}: {self.checked} cases, "
        if self.ok:
            return head + "no violations"
        lines = [head + f"{len(self.violations)} violations"]
        for item in self.violations[:10]:
            lines.append(f"  {item}")
        return "\n".join(lines)


def admissibility_probe(calc: Calculus, rule: str, corpus, extras=None,
                        cache=None) -> ProbeReport:
    """Empirical depth-preserving admissibility check.

    For LW/RW/LC/RC: every provable corpus sequent of minimal depth n must
    keep a proof of depth <= n after the structural change (weakening by
    each formula in extras, contraction of each duplicate).  For Cut: every
    corpus sequent provable with Cut over its subformula pool must be
    provable without it.
    """
    violations = []
    checked = 0
    if rule == "Cut":
        for s in corpus:
            with_cut = prove_with_cut(calc, s)
            if not with_cut.provable:
                continue
            checked += 1
            if not prove(calc, s, cache=cache).provable:
                violations.append(s)
        return ProbeReport(calc.name, rule, checked, violations)

    memo = {}
    extras = list(extras or [])
    for s in corpus:
        n = min_depth(calc, s, memo)
        if n is None:
            continue
        variants = []
        if rule == "LW":
            variants = [Sequent(s.ant.add(x), s.suc) for x in extras]
        elif rule == "RW":
            variants = [Sequent(s.ant, s.suc.add(x)) for x in extras]
        elif rule == "LC":
            variants = [Sequent(s.ant.remove(f), s.suc)
                        for f in s.ant.support() if s.ant.count(f) >= 2]
        elif rule == "RC":
            variants = [Sequent(s.ant, s.suc.remove(f))
                        for f in s.suc.support() if s.suc.count(f) >= 2]
        else:
            raise ValueError(f"unknown structural rule {rule!r}")
        for v in variants:
            if calc.mode == "single" and not v.is_single_conclusion():
                continue
            checked += 1
            m = min_depth(calc, v, memo)
            if m is None or m > n:
                violations.append((s, v, n, m))
    return ProbeReport(calc.name, rule, checked, violations)
