"""Formulas, multisets, sequents, substitutions, and complexity orders.

All values here are immutable and interned: constructing the same formula
twice yields the same object, so equality is pointer equality with a
structural fallback.  Nothing in this module depends on any calculus.
"""

from __future__ import annotations

from typing import Iterable, Iterator

# ---------------------------------------------------------------------------
# formulas

ATOM = "atom"
TOP = "top"
BOT = "bot"
AND = "and"
OR = "or"
IMP = "imp"
BOX = "box"
CIRCLE = "circle"
# pattern-only leaves (used by the rule DSL; never produced by parse_formula)
FMETA = "fmeta"   # formula metavariable A, B, C
AMETA = "ameta"   # atom-restricted metavariable p?

BINARY = (AND, OR, IMP)
UNARY = (BOX, CIRCLE)

_KIND_RANK = {BOT: 0, TOP: 1, ATOM: 2, AMETA: 3, FMETA: 4,
              BOX: 5, CIRCLE: 6, AND: 7, OR: 8, IMP: 9}


class Formula:
    """One node of a formula tree.

    `kind` is one of the module-level tags; `a` holds the atom name or the
    left/inner child, `b` the right child (binary kinds only).
    """

    __slots__ = ("kind", "a", "b", "_hash", "_weight", "_degree",
                 "_atoms", "_has_meta", "_key")

    def __init__(self, kind, a=None, b=None):
        self.kind = kind
        self.a = a
        self.b = b
        self._hash = hash((kind, a, b))
        self._weight = None
        self._degree = None
        self._atoms = None
        self._key = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return (self.kind == other.kind and self.a == other.a
                and self.b == other.b)

    def __repr__(self):
        from .syntax import render_formula
        return render_formula(self)

    @property
    def is_meta(self):
        if self._atoms is None:
            self._scan()
        return self._has_meta

    def _scan(self):
        names = set()
        meta = False
        stack = [self]
        while stack:
            f = stack.pop()
            k = f.kind
            if k == ATOM:
                names.add(f.a)
            elif k in (FMETA, AMETA):
                meta = True
            elif k in BINARY:
                stack.append(f.a)
                stack.append(f.b)
            elif k in UNARY:
                stack.append(f.a)
        self._atoms = frozenset(names)
        self._has_meta = meta

    def sort_key(self):
        if self._key is None:
            k = self.kind
            if k in (TOP, BOT):
                self._key = (1, _KIND_RANK[k])
            elif k in (ATOM, FMETA, AMETA):
                self._key = (1, _KIND_RANK[k], self.a)
            elif k in UNARY:
                ak = self.a.sort_key()
                self._key = (weight(self), _KIND_RANK[k], ak)
            else:
                self._key = (weight(self), _KIND_RANK[k],
                             self.a.sort_key(), self.b.sort_key())
        return self._key


_intern: dict = {}


def _mk(kind, a=None, b=None) -> Formula:
    key = (kind, a, b)
    f = _intern.get(key)
    if f is None:
        f = Formula(kind, a, b)
        _intern[key] = f
    return f


Top = _mk(TOP)
Bot = _mk(BOT)


def atom(name: str) -> Formula:
    return _mk(ATOM, name)


def conj(a: Formula, b: Formula) -> Formula:
    return _mk(AND, a, b)


def disj(a: Formula, b: Formula) -> Formula:
    return _mk(OR, a, b)


def imp(a: Formula, b: Formula) -> Formula:
    return _mk(IMP, a, b)


def neg(a: Formula) -> Formula:
    """Negation is not a constructor: ~a abbreviates a -> false."""
    return _mk(IMP, a, Bot)


def box(a: Formula) -> Formula:
    return _mk(BOX, a)


def circle(a: Formula) -> Formula:
    return _mk(CIRCLE, a)


def fmeta(name: str) -> Formula:
    return _mk(FMETA, name)


def ameta(name: str) -> Formula:
    return _mk(AMETA, name)


def atoms(x) -> frozenset:
    """Atom names occurring in a formula or sequent."""
    if isinstance(x, Formula):
        if x._atoms is None:
            x._scan()
        return x._atoms
    if isinstance(x, Sequent):
        out = frozenset()
        for f in x.ant:
            out |= atoms(f)
        for f in x.suc:
            out |= atoms(f)
        return out
    out = frozenset()
    for f in x:
        out |= atoms(f)
    return out


def metavars(f: Formula) -> frozenset:
    """Names of fmeta/ameta leaves in a pattern formula."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g.kind in (FMETA, AMETA):
            out.add(g.a)
        elif g.kind in BINARY:
            stack.append(g.a)
            stack.append(g.b)
        elif g.kind in UNARY:
            stack.append(g.a)
    return frozenset(out)


def weight(f: Formula) -> int:
    """Dyckhoff's weight: atoms and constants 1, modalities +1,
    | and -> add 1, & adds 2."""
    w = f._weight
    if w is not None:
        return w
    k = f.kind
    if k in (ATOM, TOP, BOT, FMETA, AMETA):
        w = 1
    elif k in UNARY:
        w = weight(f.a) + 1
    elif k == AND:
        w = weight(f.a) + weight(f.b) + 2
    else:
        w = weight(f.a) + weight(f.b) + 1
    f._weight = w
    return w


def degree(f: Formula) -> int:
    """d(bot)=d(top)=0, d(p)=1, modalities +1, binary d(a)+d(b)+1."""
    d = f._degree
    if d is not None:
        return d
    k = f.kind
    if k in (TOP, BOT):
        d = 0
    elif k in (ATOM, FMETA, AMETA):
        d = 1
    elif k in UNARY:
        d = degree(f.a) + 1
    else:
        d = degree(f.a) + degree(f.b) + 1
    f._degree = d
    return d


def subformulas(f: Formula) -> frozenset:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if g.kind in BINARY:
            stack.append(g.a)
            stack.append(g.b)
        elif g.kind in UNARY:
            stack.append(g.a)
    return frozenset(out)


def polarity_atoms(f: Formula):
    """(positive, negative) atom sets; -> flips its antecedent."""
    pos, negs = set(), set()

    def walk(g, sign):
        k = g.kind
        if k == ATOM:
            (pos if sign else negs).add(g.a)
        elif k in BINARY:
            if k == IMP:
                walk(g.a, not sign)
            else:
                walk(g.a, sign)
            walk(g.b, sign)
        elif k in UNARY:
            walk(g.a, sign)

    walk(f, True)
    return frozenset(pos), frozenset(negs)


# ---------------------------------------------------------------------------
# substitutions

class Substitution:
    """Finite map from atom names to formulas; identity elsewhere."""

    def __init__(self, mapping=None):
        self.mapping = dict(mapping or {})

    def __call__(self, f: Formula) -> Formula:
        return apply_subst(self, f)

    def __repr__(self):
        items = ", ".join(f"{k} -> {v!r}" for k, v in sorted(self.mapping.items()))
        return "{" + items + "}"


def apply_subst(s: Substitution, x):
    if isinstance(x, Sequent):
        return Sequent(FMultiset(apply_subst(s, f) for f in x.ant),
                       FMultiset(apply_subst(s, f) for f in x.suc))
    m = s.mapping if isinstance(s, Substitution) else s

    def go(f):
        k = f.kind
        if k == ATOM:
            return m.get(f.a, f)
        if k in (TOP, BOT, FMETA, AMETA):
            return f
        if k in UNARY:
            return _mk(k, go(f.a))
        return _mk(k, go(f.a), go(f.b))

    return go(x)


# ---------------------------------------------------------------------------
# multisets and sequents

class FMultiset:
    """Immutable multiset of formulas kept as a canonically sorted tuple."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Formula] = ()):
        xs = list(items)
        xs.sort(key=Formula.sort_key)
        self.items = tuple(xs)
        self._hash = hash(self.items)

    @staticmethod
    def _wrap(sorted_items) -> "FMultiset":
        m = object.__new__(FMultiset)
        m.items = tuple(sorted_items)
        m._hash = hash(m.items)
        return m

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, FMultiset):
            return NotImplemented
        return self.items == other.items

    def __contains__(self, f):
        return f in self.items

    def count(self, f) -> int:
        return self.items.count(f)

    def add(self, *fs) -> "FMultiset":
        return FMultiset(self.items + fs)

    def union(self, other) -> "FMultiset":
        other_items = other.items if isinstance(other, FMultiset) else tuple(other)
        return FMultiset(self.items + other_items)

    def remove(self, f) -> "FMultiset":
        """Drop one occurrence of f (which must be present)."""
        xs = list(self.items)
        xs.remove(f)
        return FMultiset._wrap(xs)

    def difference(self, other) -> "FMultiset":
        xs = list(self.items)
        for f in other:
            if f in xs:
                xs.remove(f)
        return FMultiset._wrap(xs)

    def contains(self, other) -> bool:
        """Multiset inclusion, multiplicities respected."""
        xs = list(self.items)
        for f in other:
            if f in xs:
                xs.remove(f)
            else:
                return False
        return True

    def support(self) -> "FMultiset":
        """Each distinct member once."""
        seen, xs = set(), []
        for f in self.items:
            if f not in seen:
                seen.add(f)
                xs.append(f)
        return FMultiset._wrap(xs)

    def __repr__(self):
        return "{" + ", ".join(repr(f) for f in self.items) + "}"


EMPTY = FMultiset()


class Sequent:
    """A pair of finite multisets: antecedent => succedent."""

    __slots__ = ("ant", "suc", "_hash")

    def __init__(self, ant, suc):
        self.ant = ant if isinstance(ant, FMultiset) else FMultiset(ant)
        self.suc = suc if isinstance(suc, FMultiset) else FMultiset(suc)
        self._hash = hash((self.ant, self.suc))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.ant == other.ant and self.suc == other.suc

    def is_single_conclusion(self) -> bool:
        return len(self.suc) <= 1

    def key(self):
        return (self.ant.items, self.suc.items)

    def __repr__(self):
        from .syntax import render_sequent
        return render_sequent(self)


def sequent(ant=(), suc=()) -> Sequent:
    return Sequent(FMultiset(ant), FMultiset(suc))


def conj_all(fs) -> Formula:
    """Fold a conjunction left-to-right over the canonical order; empty = top."""
    xs = sorted(fs, key=Formula.sort_key)
    if not xs:
        return Top
    out = xs[0]
    for f in xs[1:]:
        out = conj(out, f)
    return out


def disj_all(fs) -> Formula:
    xs = sorted(fs, key=Formula.sort_key)
    if not xs:
        return Bot
    out = xs[0]
    for f in xs[1:]:
        out = disj(out, f)
    return out


def interpret(s: Sequent) -> Formula:
    """I(G => D) = /\\G -> \\/D with the empty conventions top and bot."""
    return imp(conj_all(s.ant), disj_all(s.suc))


# ---------------------------------------------------------------------------
# partitioned sequents

class SplitAnt:
    """G ; P => D - an antecedent two-way split used by Craig interpolation."""

    __slots__ = ("gamma", "pi", "delta")

    def __init__(self, gamma, pi, delta):
        self.gamma = gamma if isinstance(gamma, FMultiset) else FMultiset(gamma)
        self.pi = pi if isinstance(pi, FMultiset) else FMultiset(pi)
        self.delta = delta if isinstance(delta, FMultiset) else FMultiset(delta)

    def underlying(self) -> Sequent:
        return Sequent(self.gamma.union(self.pi), self.delta)

    def __eq__(self, other):
        return (isinstance(other, SplitAnt) and self.gamma == other.gamma
                and self.pi == other.pi and self.delta == other.delta)

    def __hash__(self):
        return hash((self.gamma, self.pi, self.delta))

    def __repr__(self):
        g = ", ".join(repr(f) for f in self.gamma)
        p = ", ".join(repr(f) for f in self.pi)
        d = ", ".join(repr(f) for f in self.delta)
        return f"{g} ; {p} => {d}"


class RestInterp:
    """A componentwise split S = S^r . S^i used by uniform interpolation."""

    __slots__ = ("rest", "interp")

    def __init__(self, rest: Sequent, interp: Sequent):
        self.rest = rest
        self.interp = interp

    def underlying(self) -> Sequent:
        return Sequent(self.rest.ant.union(self.interp.ant),
                       self.rest.suc.union(self.interp.suc))

    def __eq__(self, other):
        return (isinstance(other, RestInterp) and self.rest == other.rest
                and self.interp == other.interp)

    def __hash__(self):
        return hash((self.rest, self.interp))

    def __repr__(self):
        return f"({self.rest!r} . {self.interp!r})"


def seq_multiply(s1: Sequent, s2: Sequent) -> Sequent:
    """Componentwise multiset union of two sequents."""
    return Sequent(s1.ant.union(s2.ant), s1.suc.union(s2.suc))


# ---------------------------------------------------------------------------
# Dershowitz-Manna orders

def _measure_fn(measure):
    if measure == "degree":
        return degree
    if measure == "weight":
        return weight
    raise ValueError(f"unknown measure {measure!r}")


def multiset_less(a: FMultiset, b: FMultiset, measure="weight") -> bool:
    """a < b iff a arises from b by replacing one or more members with
    finitely many members of strictly smaller measure."""
    m = _measure_fn(measure)
    extra_a = list(a.difference(b))   # members only in a (the replacements)
    extra_b = list(b.difference(a))   # members removed from b
    if not extra_b:
        return False
    top = max(m(x) for x in extra_b)
    return all(m(y) < top for y in extra_a)


def sequent_less(s1: Sequent, s2: Sequent, measure="weight") -> bool:
    return multiset_less(s1.ant.union(s1.suc), s2.ant.union(s2.suc), measure)


def sequent_measure_total(s: Sequent, measure="weight") -> int:
    m = _measure_fn(measure)
    return sum(m(f) for f in s.ant) + sum(m(f) for f in s.suc)
