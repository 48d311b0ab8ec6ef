"""Independent reference computations used by the tests.

The box tensor oracles below bracket the triple product explicitly through an
intermediate type D structure and make no assumption about which side a DD
arrow emits on; strict unitality is applied literally.
"""

from __future__ import annotations

from collections import Counter

from pillowcase.algebra import mul
from pillowcase.structures import ONE, DDStructure, LeftModule, RightModule


def _times(a: str | None, b: str) -> str | None:
    if a is None or b is None:
        return None
    if a == ONE:
        return b
    if b == ONE:
        return a
    return mul(a, b)


def _dd_chains(dd: DDStructure, start: str, max_len: int):
    """All DD arrow chains from ``start`` of length 1..max_len."""
    out = dd.outgoing()
    stack = [(start, ())]
    while stack:
        g, chain = stack.pop()
        if chain:
            yield chain
        if len(chain) < max_len:
            for a in out.get(g, ()):
                stack.append((a.tgt, chain + (a,)))


def _unital_action(lookup, gen: str, inputs: tuple[str, ...]) -> list[str]:
    """Module action with strict unitality: m2(x, 1) = x, otherwise a 1 kills it."""
    if inputs == (ONE,):
        return [gen]
    if ONE in inputs:
        return []
    return lookup.get((gen, inputs), [])


def _lookup(m):
    table: dict = {}
    for a in m.actions:
        table.setdefault((a.src, a.inputs), []).append(a.tgt)
    for s, t in m.m1:
        table.setdefault((s, ()), []).append(t)
    return table


def _type_d_chains(delta, start, max_len):
    stack = [(start, ())]
    while stack:
        g, coeffs = stack.pop()
        yield g, coeffs
        if len(coeffs) < max_len:
            for tgt, c in delta.get(g, ()):
                stack.append((tgt, coeffs + (c,)))


def _arity(m) -> int:
    return max((len(a.inputs) for a in m.actions), default=0) + 1


def left_bracket(m: RightModule, dd: DDStructure, n: LeftModule) -> Counter:
    """Arrows of (M box DD) box N as a Counter of (source, target) triples."""
    m_look, n_look = _lookup(m), _lookup(n)
    # type D structure over the right-hand copy of the algebra
    delta: dict[tuple[str, str], list[tuple[tuple[str, str], str]]] = {}
    for x, xi in m.generators.items():
        for y, (yl, _) in dd.generators.items():
            if yl != xi:
                continue
            acc: Counter = Counter()
            for t in m_look.get((x, ()), []):
                acc[((t, y), ONE)] += 1
            for chain in _dd_chains(dd, y, _arity(m)):
                lefts = tuple(a.left for a in chain)
                right = ONE
                for a in chain:
                    right = _times(a.right, right)
                if right is None:
                    continue
                for t in _unital_action(m_look, x, lefts):
                    acc[((t, chain[-1].tgt), right)] += 1
            delta[(x, y)] = [k for k, c in acc.items() if c % 2]
    arrows: Counter = Counter()
    for (x, y) in delta:
        for z, zi in n.generators.items():
            if dd.generators[y][1] != zi:
                continue
            for t in n_look.get((z, ()), []):
                arrows[((x, y, z), (x, y, t))] += 1
            for (p, coeffs) in _type_d_chains(delta, (x, y), _arity(n)):
                if not coeffs:
                    continue
                for t in _unital_action(n_look, z, tuple(reversed(coeffs))):
                    arrows[((x, y, z), (p[0], p[1], t))] += 1
    return Counter({k: 1 for k, c in arrows.items() if c % 2})


def right_bracket(m: RightModule, dd: DDStructure, n: LeftModule) -> Counter:
    """Arrows of M box (DD box N)."""
    m_look, n_look = _lookup(m), _lookup(n)
    delta: dict[tuple[str, str], list[tuple[tuple[str, str], str]]] = {}
    for y, (_, yr) in dd.generators.items():
        for z, zi in n.generators.items():
            if yr != zi:
                continue
            acc: Counter = Counter()
            for t in n_look.get((z, ()), []):
                acc[((y, t), ONE)] += 1
            for chain in _dd_chains(dd, y, _arity(n)):
                rights = tuple(a.right for a in reversed(chain))
                left = ONE
                for a in chain:
                    left = _times(left, a.left)
                if left is None:
                    continue
                for t in _unital_action(n_look, z, rights):
                    acc[((chain[-1].tgt, t), left)] += 1
            delta[(y, z)] = [k for k, c in acc.items() if c % 2]
    arrows: Counter = Counter()
    for (y, z) in delta:
        for x, xi in m.generators.items():
            if dd.generators[y][0] != xi:
                continue
            for t in m_look.get((x, ()), []):
                arrows[((x, y, z), (t, y, z))] += 1
            for (p, coeffs) in _type_d_chains(delta, (y, z), _arity(m)):
                if not coeffs:
                    continue
                for t in _unital_action(m_look, x, coeffs):
                    arrows[((x, y, z), (t, p[0], p[1]))] += 1
    return Counter({k: 1 for k, c in arrows.items() if c % 2})


def pairing_arrow_set(cx) -> set[tuple[tuple[str, str, str], tuple[str, str, str]]]:
    g = cx.generators
    return {(tuple(g[s]), tuple(g[t])) for s, t in cx.arrows}
