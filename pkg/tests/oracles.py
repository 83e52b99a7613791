"""Independent brute-force oracles the library is checked against.

None of these import the code they check (beyond the AST and graph types).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from regproc.graph import ProcessGraph
from regproc.regex import ONE, ZERO, Atom, BinStar, One, Prod, Star, Sum, Zero

LEAVES = (ZERO, ONE)


def all_expressions(max_size: int, letters=("a", "b")):
    """Every expression with at most ``max_size`` nodes, grouped by exact size."""
    by_size = {1: list(LEAVES) + [Atom(x) for x in letters]}
    for n in range(2, max_size + 1):
        out = [Star(e) for e in by_size[n - 1]]
        for k in range(1, n - 1):
            for left, right in itertools.product(by_size[k], by_size[n - 1 - k]):
                out += [Sum(left, right), Prod(left, right), BinStar(left, right)]
        by_size[n] = out
    return by_size


# -- termination: saturate the rule set over all subterms -------------------------


def _subterms(e):
    yield e
    for child in getattr(e, "__dict__", {}).values():
        if hasattr(child, "__dict__") or isinstance(child, (Zero, One)):
            yield from _subterms(child)


@lru_cache(maxsize=None)
def derivable_termination(e) -> bool:
    """Apply the termination rules to a fixpoint over the subterms of ``e``."""
    subs = set(_subterms(e))
    known: set = set()
    changed = True
    while changed:
        changed = False
        for s in subs:
            if s in known:
                continue
            fires = (
                isinstance(s, One)
                or isinstance(s, Star)
                or (isinstance(s, Sum) and (s.left in known or s.right in known))
                or (isinstance(s, Prod) and s.left in known and s.right in known)
                or (isinstance(s, BinStar) and s.exit in known)
            )
            if fires:
                known.add(s)
                changed = True
    return e in known


# -- transitions: depth-bounded search over rule instances -----------------------


def _rules():
    # one generator per rule, yielding the (letter, target) conclusions it derives
    def letter(e, depth):
        if isinstance(e, Atom):
            yield e.letter, ONE

    def sum_left(e, depth):
        if isinstance(e, Sum):
            yield from derive_steps(e.left, depth - 1)

    def sum_right(e, depth):
        if isinstance(e, Sum):
            yield from derive_steps(e.right, depth - 1)

    def prod_left(e, depth):
        if isinstance(e, Prod):
            for a, t in derive_steps(e.left, depth - 1):
                yield a, Prod(t, e.right)

    def prod_right(e, depth):
        if isinstance(e, Prod) and derivable_termination(e.left):
            yield from derive_steps(e.right, depth - 1)

    def star(e, depth):
        if isinstance(e, Star):
            for a, t in derive_steps(e.body, depth - 1):
                yield a, Prod(t, e)

    def binstar_iter(e, depth):
        if isinstance(e, BinStar):
            for a, t in derive_steps(e.body, depth - 1):
                yield a, Prod(t, e)

    def binstar_exit(e, depth):
        if isinstance(e, BinStar):
            yield from derive_steps(e.exit, depth - 1)

    return (letter, sum_left, sum_right, prod_left, prod_right, star, binstar_iter, binstar_exit)


RULES = _rules()


def derive_steps(e, depth: int):
    if depth <= 0:
        return
    for rule in RULES:
        yield from rule(e, depth)


def all_steps(e, size: int) -> set:
    """All ``(letter, target)`` with a derivation of depth at most ``size``."""
    return set(derive_steps(e, size))


# -- bisimilarity: greatest fixpoint from the full relation ----------------------


def naive_bisimilarity(g1: ProcessGraph, g2: ProcessGraph) -> set:
    """The largest bisimulation between all vertices, pruned from the full relation."""
    rel = {(u, v) for u in g1.vertices for v in g2.vertices}
    out1 = {u: [(a, t) for s, a, t in g1.transitions if s == u] for u in g1.vertices}
    out2 = {v: [(a, t) for s, a, t in g2.transitions if s == v] for v in g2.vertices}

    def ok(u, v):
        if (u in g1.terminating) != (v in g2.terminating):
            return False
        forth = all(any(b == a and (u2, v2) in rel for b, v2 in out2[v]) for a, u2 in out1[u])
        back = all(any(a == b and (u2, v2) in rel for a, u2 in out1[u]) for b, v2 in out2[v])
        return forth and back

    while True:
        keep = {p for p in rel if ok(*p)}
        if keep == rel:
            return rel
        rel = keep


def naive_bisimilar(g1: ProcessGraph, g2: ProcessGraph) -> bool:
    return (g1.start, g2.start) in naive_bisimilarity(g1, g2)


# -- language membership by Brzozowski derivatives ---------------------------------


def nullable(e) -> bool:
    if isinstance(e, (One, Star)):
        return True
    if isinstance(e, (Zero, Atom)):
        return False
    if isinstance(e, Sum):
        return nullable(e.left) or nullable(e.right)
    if isinstance(e, Prod):
        return nullable(e.left) and nullable(e.right)
    if isinstance(e, BinStar):
        return nullable(e.exit)
    raise TypeError(e)


def brzozowski(e, a: str):
    """Language derivative; results are simplified only by dropping 0 summands."""
    if isinstance(e, (Zero, One)):
        return ZERO
    if isinstance(e, Atom):
        return ONE if e.letter == a else ZERO
    if isinstance(e, Sum):
        return _plus(brzozowski(e.left, a), brzozowski(e.right, a))
    if isinstance(e, Prod):
        d = _times(brzozowski(e.left, a), e.right)
        return _plus(d, brzozowski(e.right, a)) if nullable(e.left) else d
    if isinstance(e, Star):
        return _times(brzozowski(e.body, a), e)
    if isinstance(e, BinStar):
        return _plus(_times(brzozowski(e.body, a), e), brzozowski(e.exit, a))
    raise TypeError(e)


def _plus(x, y):
    if isinstance(x, Zero):
        return y
    if isinstance(y, Zero):
        return x
    return Sum(x, y)


def _times(x, y):
    return ZERO if isinstance(x, Zero) else Prod(x, y)


def matches(e, word) -> bool:
    for a in word:
        e = brzozowski(e, a)
    return nullable(e)
