"""Uniform interpolants (forall p / exists p) for CPC and IPC, and the
calculus-generic verification harness.

Classically both quantifiers are substitution instances:

    exists p f = f[true/p] | f[false/p]      forall p f = f[true/p] & f[false/p]

For IPC the computation follows Pitts: a mutual recursion over backward
G4ip decomposition along the terminating weight order.  `forall` of a
sequent is the weakest p-free formula that closes it on the left; `exists`
of an antecedent is the strongest p-free consequence.  Invertible rules are
applied eagerly; at an irreducible sequent the candidates are the right
atom, the disjunction splits, the L->-> premise pairs, atoms that unblock a
stuck implication, and an implication from the antecedent's own exists
interpolant.  The construction is validated by `verify_uniform`, never
asserted as ground truth.

All produced formulas are constant-folded, which keeps them inside the
fragment the provers decide (the figures give no left rule for implications
with a `true` antecedent).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import core
from .core import (Formula, FMultiset, Sequent, Top, Bot, atom, atoms,
                   apply_subst, conj, disj, imp, conj_all, disj_all,
                   interpret, seq_multiply, weight)
from .calculus import builtin
from .prover import ProverCache, prove, shared_cache


class NonPropositional(Exception):
    pass


@dataclass
class UniformInterpolant:
    target: object                 # Sequent or Formula
    atom: str
    forall_part: Formula
    exists_part: Formula

    def __post_init__(self):
        allowed = atoms(self.target) - {self.atom}
        for part in (self.forall_part, self.exists_part):
            bad = atoms(part) - allowed
            if bad:
                raise ValueError(f"interpolant atoms {sorted(bad)} escape the target")


def _check_propositional(x):
    fs = list(x.ant) + list(x.suc) if isinstance(x, Sequent) else [x]
    for f in fs:
        for g in core.subformulas(f):
            if g.kind in core.UNARY:
                raise NonPropositional(repr(f))


# ---------------------------------------------------------------------------
# constant folding

def fold_constants(f: Formula) -> Formula:
    k = f.kind
    if k in (core.ATOM, core.TOP, core.BOT):
        return f
    if k in core.UNARY:
        return core._mk(k, fold_constants(f.a))
    a = fold_constants(f.a)
    b = fold_constants(f.b)
    if k == core.AND:
        if a is Top:
            return b
        if b is Top:
            return a
        if a is Bot or b is Bot:
            return Bot
        return conj(a, b)
    if k == core.OR:
        if a is Bot:
            return b
        if b is Bot:
            return a
        if a is Top or b is Top:
            return Top
        return disj(a, b)
    if a is Bot or b is Top:
        return Top
    if a is Top:
        return b
    return imp(a, b)


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
    if a == b:
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


# ---------------------------------------------------------------------------
# classical quantifiers

def classical_forall(f: Formula, p: str) -> Formula:
    top_sub = apply_subst({p: Top}, f)
    bot_sub = apply_subst({p: Bot}, f)
    return _fand(fold_constants(top_sub), fold_constants(bot_sub))


def classical_exists(f: Formula, p: str) -> Formula:
    top_sub = apply_subst({p: Top}, f)
    bot_sub = apply_subst({p: Bot}, f)
    return _for(fold_constants(top_sub), fold_constants(bot_sub))


def classical_uniform(target, p: str) -> UniformInterpolant:
    """Uniform interpolants in CPC.  For a sequent S, forall quantifies its
    implication reading and exists the formula stating that S fails."""
    _check_propositional(target)
    if isinstance(target, Sequent):
        fa = classical_forall(fold_constants(interpret(target)), p)
        refute = _fand(conj_all(target.ant),
                       fold_constants(core.neg(disj_all(target.suc))))
        ex = classical_exists(refute, p)
    else:
        fa = classical_forall(target, p)
        ex = classical_exists(target, p)
    return UniformInterpolant(target, p, fa, ex)


# ---------------------------------------------------------------------------
# IPC quantifiers via G4ip decomposition

class _PittsContext:
    def __init__(self, p: str, cache: ProverCache | None = None):
        self.p = p
        self.calc = builtin("G4ip")
        self.cache = cache or shared_cache(self.calc)
        self.memo_a = {}
        self.memo_e = {}

    def provable(self, ant: FMultiset, suc: FMultiset) -> bool:
        return prove(self.calc, Sequent(ant, suc), cache=self.cache).provable


def _rewrite_ant(ant: FMultiset):
    """One invertible antecedent step: returns ('bot',), ('step', ant'),
    ('branch', ant_a, ant_b), or None when irreducible."""
    for f in ant:
        k = f.kind
        if k == core.BOT:
            return ("bot",)
        if k == core.TOP:
            return ("step", ant.remove(f))
        if k == core.AND:
            return ("step", ant.remove(f).add(f.a, f.b))
        if k == core.OR:
            return ("branch", ant.remove(f).add(f.a), ant.remove(f).add(f.b))
        if k == core.IMP:
            a = f.a
            if a.kind == core.TOP:
                return ("step", ant.remove(f).add(f.b))
            if a.kind == core.BOT:
                return ("step", ant.remove(f))
            if a.kind == core.AND:
                return ("step", ant.remove(f).add(imp(a.a, imp(a.b, f.b))))
            if a.kind == core.OR:
                return ("step", ant.remove(f).add(imp(a.a, f.b), imp(a.b, f.b)))
            if a.kind == core.ATOM and a in ant:
                return ("step", ant.remove(f).add(f.b))
    return None


def _forall(ctx: _PittsContext, ant: FMultiset, suc: FMultiset) -> Formula:
    key = (ant.items, suc.items)
    hit = ctx.memo_a.get(key)
    if hit is not None:
        return hit
    out = _forall_raw(ctx, ant, suc)
    ctx.memo_a[key] = out
    return out


def _forall_raw(ctx, ant, suc):
    p = ctx.p
    if p not in atoms(Sequent(ant, suc)):
        return fold_constants(imp(conj_all(ant), disj_all(suc)))
    step = _rewrite_ant(ant)
    if step is not None:
        if step[0] == "bot":
            return Top
        if step[0] == "step":
            return _forall(ctx, step[1], suc)
        return _fand(_forall(ctx, step[1], suc), _forall(ctx, step[2], suc))
    d = suc.items[0] if suc else None
    if d is not None:
        if d.kind == core.TOP:
            return Top
        if d.kind == core.AND:
            return _fand(_forall(ctx, ant, FMultiset([d.a])),
                         _forall(ctx, ant, FMultiset([d.b])))
        if d.kind == core.IMP:
            return _forall(ctx, ant.add(d.a), FMultiset([d.b]))
    if ctx.provable(ant, suc):
        return Top
    parts = []
    if d is not None and d.kind == core.ATOM and d.a != p:
        parts.append(d)
    if d is not None and d.kind == core.OR:
        parts.append(_forall(ctx, ant, FMultiset([d.a])))
        parts.append(_forall(ctx, ant, FMultiset([d.b])))
    for f in ant:
        if f.kind != core.IMP:
            continue
        a = f.a
        if a.kind == core.IMP:
            left = _forall(ctx, ant.remove(f).add(imp(a.b, f.b)), FMultiset([a]))
            right = _forall(ctx, ant.remove(f).add(f.b), suc)
            parts.append(_fand(left, right))
        elif a.kind == core.ATOM and a.a != p:
            # supply the blocked atom ourselves
            parts.append(_fand(a, _forall(ctx, ant.remove(f).add(a, f.b), suc)))
    if p not in atoms(suc):
        delta = fold_constants(disj_all(suc))
    else:
        delta = Bot
    parts.append(_fimp(_exists(ctx, ant), delta))
    return _for_all(parts)


def _exists(ctx: _PittsContext, ant: FMultiset) -> Formula:
    key = ant.items
    hit = ctx.memo_e.get(key)
    if hit is not None:
        return hit
    out = _exists_raw(ctx, ant)
    ctx.memo_e[key] = out
    return out


def _exists_raw(ctx, ant):
    p = ctx.p
    if p not in atoms(ant):
        return fold_constants(conj_all(ant))
    step = _rewrite_ant(ant)
    if step is not None:
        if step[0] == "bot":
            return Bot
        if step[0] == "step":
            return _exists(ctx, step[1])
        return _for(_exists(ctx, step[1]), _exists(ctx, step[2]))
    if ctx.provable(ant, FMultiset()):
        return Bot
    parts = []
    for f in ant:
        if p not in atoms(f):
            parts.append(f)
            continue
        if f.kind != core.IMP:
            continue            # the atom p itself contributes nothing
        a = f.a
        if a.kind == core.IMP:
            guard = _forall(ctx, ant.remove(f).add(imp(a.b, f.b)), FMultiset([a]))
            parts.append(_fimp(guard, _exists(ctx, ant.remove(f).add(f.b))))
        elif a.kind == core.ATOM and a.a != p:
            parts.append(_fimp(a, _exists(ctx, ant.remove(f).add(a, f.b))))
    return _fand_all(parts)


def ipc_uniform(s: Sequent, p: str, cache: ProverCache | None = None) -> UniformInterpolant:
    """Pitts-style uniform interpolants of a single-conclusion sequent.

    The forall part closes the whole sequent from the left; the exists part
    is the strongest p-free consequence of the antecedent (the succedent
    plays no role in it, matching the one-sided reading exists p (G => )).
    """
    _check_propositional(s)
    if not s.is_single_conclusion():
        raise ValueError(f"ipc_uniform needs a single-conclusion sequent, got {s!r}")
    ctx = _PittsContext(p, cache)
    fa = _forall(ctx, s.ant, s.suc)
    ex = _exists(ctx, s.ant)
    return UniformInterpolant(s, p, fa, ex)


def ipc_forall(f: Formula, p: str, cache=None) -> Formula:
    return ipc_uniform(Sequent(FMultiset(), FMultiset([f])), p, cache).forall_part


def ipc_exists(f: Formula, p: str, cache=None) -> Formula:
    return ipc_uniform(Sequent(FMultiset([f]), FMultiset()), p, cache).exists_part


def fresh_atom(used) -> str:
    """Lexicographically smallest identifier not in `used`."""
    import itertools, string
    for size in itertools.count(1):
        for letters in itertools.product(string.ascii_lowercase, repeat=size):
            name = "".join(letters)
            if name not in used:
                return name


def exists_via_forall(f: Formula, p: str, cache=None) -> Formula:
    """exists p f as forall q (forall p (f -> q) -> q) for a fresh q."""
    q = fresh_atom(atoms(f) | {p})
    inner = ipc_forall(imp(f, atom(q)), p, cache)
    return ipc_forall(imp(inner, atom(q)), q, cache)


# ---------------------------------------------------------------------------
# p-partitions and the verification harness

def p_partitions(s: Sequent, p: str):
    """All componentwise splits (S^r, S^i) with p absent from S^r."""
    def splits(ms):
        groups = [(f, ms.count(f)) for f in ms.support()]
        def rec(i):
            if i == len(groups):
                yield ((), ())
                return
            f, n = groups[i]
            free = p not in atoms(f)
            for rest_r, rest_i in rec(i + 1):
                choices = range(n + 1) if free else (0,)
                for k in choices:
                    yield ((f,) * k + rest_r, (f,) * (n - k) + rest_i)
        for r_items, i_items in rec(0):
            yield FMultiset(r_items), FMultiset(i_items)

    out = []
    for ant_r, ant_i in splits(s.ant):
        for suc_r, suc_i in splits(s.suc):
            out.append((Sequent(ant_r, suc_r), Sequent(ant_i, suc_i)))
    return out


@dataclass
class UniformReport:
    target: object
    atom: str
    checked: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def render(self):
        head = f"uniform interpolant report for {self.target!r} / atom {self.atom}: "
        if self.ok:
            return head + f"all clauses pass ({', '.join(self.checked)})"
        return head + "; ".join(self.violations)


def _sub_uniform(calc, target, p, cache):
    if calc.name == "G3cp":
        return classical_uniform(target, p)
    return ipc_uniform(target, p, cache)


def verify_uniform(calc, u: UniformInterpolant, psi_bound: int = 6,
                   cache: ProverCache | None = None) -> UniformReport:
    """Check the independent clauses, the dependent clause over all
    p-partitions, and both quantifier characterizations against every
    p-free formula up to the given weight."""
    from .corpus import formulas as corpus_formulas
    cache = cache or shared_cache(calc)
    p = u.atom
    multi = calc.mode == "multi"
    report = UniformReport(u.target, p)

    def holds(ant, suc):
        return prove(calc, Sequent(FMultiset(ant), FMultiset(suc)), cache=cache).provable

    fa, ex = u.forall_part, u.exists_part
    if isinstance(u.target, Sequent):
        s = u.target
        sa, ss = list(s.ant), list(s.suc)
        if not holds(sa + [fa], ss):
            report.violations.append("(forall-l) fails")
        report.checked.append("forall-l")
        if multi:
            ok_er = holds(sa, [ex] + ss)
        else:
            ok_er = holds(sa, [ex])
        if not ok_er:
            report.violations.append("(exists-r) fails")
        report.checked.append("exists-r")

        names = sorted((atoms(s) | {p}) - {p})
        psis = list(corpus_formulas(tuple(names), psi_bound))
        for psi in psis:
            if holds(sa + [psi], ss) and not holds([psi], [fa]):
                report.violations.append(f"(forall) minimality fails at {psi!r}")
                break
        report.checked.append("forall-minimal")
        for psi in psis:
            premise = holds(sa, [psi] + ss) if multi else holds(sa, [psi])
            if premise and not holds([ex], [psi]):
                report.violations.append(f"(exists) minimality fails at {psi!r}")
                break
        report.checked.append("exists-minimal")

        if holds(sa, ss):
            for s_r, s_i in p_partitions(s, p):
                ui = _sub_uniform(calc, s_i, p, cache)
                fa_i, ex_i = ui.forall_part, ui.exists_part
                if multi:
                    goal = seq_multiply(s_r, Sequent(FMultiset([ex_i]), FMultiset([fa_i])))
                    ok = holds(list(goal.ant), list(goal.suc))
                elif s.suc and not s_r.suc:
                    ok = holds(list(s_r.ant) + [ex_i], [fa_i])
                else:
                    ok = holds(list(s_r.ant) + [ex_i], list(s_r.suc))
                if not ok:
                    report.violations.append(f"(forall-exists) fails at split {s_r!r} . {s_i!r}")
                    break
            report.checked.append("forall-exists")
    else:
        f = u.target
        if not holds([fa], [f]):
            report.violations.append("(forall) lower bound fails")
        if not holds([f], [ex]):
            report.violations.append("(exists) upper bound fails")
        names = sorted((atoms(f) | {p}) - {p})
        psis = list(corpus_formulas(tuple(names), psi_bound))
        for psi in psis:
            if holds([psi], [f]) and not holds([psi], [fa]):
                report.violations.append(f"(forall) minimality fails at {psi!r}")
                break
            if holds([f], [psi]) and not holds([ex], [psi]):
                report.violations.append(f"(exists) minimality fails at {psi!r}")
                break
        report.checked.extend(["forall", "exists", "minimality"])
    return report
