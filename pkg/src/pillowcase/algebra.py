"""The pillowcase algebra and its Koszul-dual strand algebra.

``A`` is the path algebra of the chord graph: six idempotents (one per
parameterizing arc) plus the 14 same-colour chord paths.  Basis elements are
referred to by ASCII names (``i0``, ``xi12``, ``eta3``, ``rho2``...).

The dual algebra is the path algebra of the reversed graph, whose edges are
named with a trailing prime (``xi32'``).  Its elements are :class:`DualPath`
values; sums of paths are frozensets (F2 coefficients).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

IDEMPOTENTS: tuple[str, ...] = ("i0", "i1", "i2", "j0", "j1", "j2")

# Edges of the chord graph: name -> (source arc, target arc, colour)
CHORDS: dict[str, tuple[str, str, str]] = {
    "rho0": ("i0", "j0", "rho0"),
    "rho2": ("i2", "j2", "rho2"),
    "xi1": ("i1", "i2", "xi"),
    "xi2": ("i2", "j2", "xi"),
    "xi3": ("j2", "j1", "xi"),
    "eta1": ("i0", "i1", "eta"),
    "eta2": ("i1", "j1", "eta"),
    "eta3": ("j1", "j0", "eta"),
}


@dataclass(frozen=True)
class Basis:
    name: str
    left: str
    right: str
    chords: tuple[str, ...] = ()  # empty for idempotents

    @property
    def is_idempotent(self) -> bool:
        return not self.chords


def _same_colour_paths() -> dict[str, Basis]:
    out = {e: Basis(e, e, e) for e in IDEMPOTENTS}
    for colour, letters in (("xi", "123"), ("eta", "123")):
        for lo in range(3):
            for hi in range(lo + 1, 4):
                idx = letters[lo:hi]
                chords = tuple(f"{colour}{k}" for k in idx)
                out[f"{colour}{idx}"] = Basis(
                    f"{colour}{idx}", CHORDS[chords[0]][0], CHORDS[chords[-1]][1], chords
                )
    for r in ("rho0", "rho2"):
        out[r] = Basis(r, CHORDS[r][0], CHORDS[r][1], (r,))
    return out


BASIS: dict[str, Basis] = _same_colour_paths()
NON_IDEMPOTENTS: tuple[str, ...] = tuple(n for n, b in BASIS.items() if not b.is_idempotent)
_BY_CHORDS: dict[tuple[str, ...], str] = {b.chords: n for n, b in BASIS.items() if b.chords}

# Chords of length one: the only coefficients a reduced bar ever emits.
SINGLE_CHORDS: tuple[str, ...] = tuple(CHORDS)


class AlgebraError(ValueError):
    pass


_ALIASES = {"ρ": "rho", "ξ": "xi", "η": "eta"}


def normalize_name(token: str) -> str:
    """Canonical ASCII name for an algebra element or dual edge.

    Accepts ``xi_12``, ``xi_{12}``, ``ξ12`` and friends.
    """
    t = token.strip()
    for greek, ascii_ in _ALIASES.items():
        t = t.replace(greek, ascii_)
    t = t.replace("\\", "").replace("{", "").replace("}", "").replace("_", "")
    return t


def basis(name: str) -> Basis:
    try:
        return BASIS[normalize_name(name)]
    except KeyError:
        raise AlgebraError(f"unknown algebra element {name!r}") from None


def left_idem(name: str) -> str:
    return BASIS[name].left


def right_idem(name: str) -> str:
    return BASIS[name].right


def mul(a: str, b: str) -> str | None:
    """Product of two basis elements; ``None`` stands for zero."""
    x, y = BASIS[a], BASIS[b]
    if x.right != y.left:
        return None
    if x.is_idempotent:
        return b
    if y.is_idempotent:
        return a
    if _colour(x) != _colour(y):
        return None
    return _BY_CHORDS.get(x.chords + y.chords)


def _colour(b: Basis) -> str:
    return CHORDS[b.chords[0]][2]


@dataclass(frozen=True)
class AlgebraElement:
    """An F2 linear combination of basis elements."""

    support: frozenset[str] = frozenset()

    @classmethod
    def of(cls, *names: str) -> AlgebraElement:
        acc: set[str] = set()
        for n in names:
            acc ^= {basis(n).name}
        return cls(frozenset(acc))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.support ^ other.support)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        acc: set[str] = set()
        for a in self.support:
            for b in other.support:
                p = mul(a, b)
                if p is not None:
                    acc ^= {p}
        return AlgebraElement(frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.support)

    def __repr__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(sorted(self.support))


def mul_a(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


# --------------------------------------------------------------------------
# Dual graph and the Koszul-dual algebra
# --------------------------------------------------------------------------

# name -> (source, target); primed vertices are identified with unprimed ones
DUAL_EDGES: dict[str, tuple[str, str]] = {
    "rho0'": ("j0", "i0"),
    "rho2'": ("j2", "i2"),
    "xi1'": ("i2", "i1"),
    "xi2'": ("j2", "i2"),
    "xi3'": ("j1", "j2"),
    "xi21'": ("j2", "i1"),
    "xi32'": ("j1", "i2"),
    "xi321'": ("j1", "i1"),
    "eta1'": ("i1", "i0"),
    "eta2'": ("j1", "i1"),
    "eta3'": ("j0", "j1"),
    "eta21'": ("j1", "i0"),
    "eta32'": ("j0", "i1"),
    "eta321'": ("j0", "i0"),
}

# Only composite edges have a nonzero differential; each term is a 2-edge path.
_EDGE_DIFF: dict[str, tuple[tuple[str, str], ...]] = {
    "xi21'": (("xi2'", "xi1'"),),
    "xi32'": (("xi3'", "xi2'"),),
    "xi321'": (("xi32'", "xi1'"), ("xi3'", "xi21'")),
    "eta21'": (("eta2'", "eta1'"),),
    "eta32'": (("eta3'", "eta2'"),),
    "eta321'": (("eta32'", "eta1'"), ("eta3'", "eta21'")),
}


def reverse_edge(edge: str) -> str:
    """The basis element of ``A`` obtained by reading a dual edge backwards.

    ``xi32'`` -> ``xi23``, ``rho0'`` -> ``rho0``.
    """
    if edge not in DUAL_EDGES:
        raise AlgebraError(f"unknown dual edge {edge!r}")
    stem = edge[:-1]
    m = re.fullmatch(r"(xi|eta|rho)(\d+)", stem)
    assert m is not None
    letter, digits = m.groups()
    if letter == "rho":
        return stem
    return letter + digits[::-1]


def edge_diff(edge: str) -> tuple[tuple[str, str], ...]:
    return _EDGE_DIFF.get(edge, ())


@dataclass(frozen=True, order=True)
class DualPath:
    """A directed path in the dual graph; ``edges == ()`` is the constant path."""

    start: str
    edges: tuple[str, ...] = ()

    def __post_init__(self):
        if self.start not in IDEMPOTENTS:
            raise AlgebraError(f"unknown vertex {self.start!r}")
        v = self.start
        for e in self.edges:
            src, tgt = DUAL_EDGES[e]
            if src != v:
                raise AlgebraError(f"edges not composable at {e!r}")
            v = tgt

    @classmethod
    def of(cls, *edges: str) -> DualPath:
        if not edges:
            raise AlgebraError("use DualPath(vertex) for constant paths")
        return cls(DUAL_EDGES[edges[0]][0], tuple(edges))

    @property
    def end(self) -> str:
        return DUAL_EDGES[self.edges[-1]][1] if self.edges else self.start

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def name(self) -> str:
        if not self.edges:
            return f"b({self.start}')"
        return "b(" + ",".join(self.edges) + ")"

    def __repr__(self) -> str:
        return self.name


def mul_dual(p: DualPath, q: DualPath) -> DualPath | None:
    """Concatenation, or ``None`` (zero) when the endpoints do not match."""
    if p.end != q.start:
        return None
    return DualPath(p.start, p.edges + q.edges)


def _toggle(acc: set, item) -> None:
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


def diff_dual(p: DualPath) -> frozenset[DualPath]:
    """Differential on the dual algebra, extended from single edges by Leibniz."""
    acc: set[DualPath] = set()
    for k, e in enumerate(p.edges):
        for a, b in edge_diff(e):
            _toggle(acc, DualPath(p.start, p.edges[:k] + (a, b) + p.edges[k + 1 :]))
    return frozenset(acc)


def diff_dual_sum(ps: Iterable[DualPath]) -> frozenset[DualPath]:
    acc: set[DualPath] = set()
    for p in ps:
        for q in diff_dual(p):
            _toggle(acc, q)
    return frozenset(acc)


def paths_from(v: str) -> Iterator[DualPath]:
    """All directed dual paths starting at ``v`` (the graph is acyclic)."""
    stack = [DualPath(v)]
    while stack:
        p = stack.pop()
        yield p
        for e, (src, _) in DUAL_EDGES.items():
            if src == p.end:
                stack.append(DualPath(p.start, p.edges + (e,)))


@lru_cache(maxsize=None)
def all_dual_paths() -> tuple[DualPath, ...]:
    """Basis of the dual algebra, constant paths included, in a fixed order."""
    return tuple(sorted((p for v in IDEMPOTENTS for p in paths_from(v)), key=lambda p: (len(p), p)))


def has_directed_cycle(edges: Iterable[tuple[str, str]]) -> bool:
    adj: dict[str, list[str]] = {}
    for s, t in edges:
        adj.setdefault(s, []).append(t)
    state: dict[str, int] = {}

    def visit(v: str) -> bool:
        state[v] = 1
        for w in adj.get(v, ()):
            if state.get(w) == 1 or (w not in state and visit(w)):
                return True
        state[v] = 2
        return False

    return any(v not in state and visit(v) for v in list(adj))


def composable_sequences(start: str, max_len: int) -> Iterator[tuple[str, ...]]:
    """Nonempty sequences of non-idempotent basis elements chained by idempotents."""

    def rec(v: str, prefix: tuple[str, ...]):
        if prefix:
            yield prefix
        if len(prefix) == max_len:
            return
        for n in NON_IDEMPOTENTS:
            if BASIS[n].left == v:
                yield from rec(BASIS[n].right, prefix + (n,))

    yield from rec(start, ())


def all_triples() -> Iterator[tuple[str, str, str]]:
    return product(BASIS, repeat=3)


def associativity_failures() -> list[tuple[str, str, str]]:
    """Triples of basis elements with ``(ab)c != a(bc)``; empty for a sound table."""
    bad = []
    for a, b, c in all_triples():
        ab, bc = mul(a, b), mul(b, c)
        left = None if ab is None else mul(ab, c)
        right = None if bc is None else mul(a, bc)
        if left != right:
            bad.append((a, b, c))
    return bad


def dual_differential_failures() -> list[str]:
    """Violations of ``d^2 = 0`` and of the Leibniz rule on the dual basis."""
    bad = []
    paths = all_dual_paths()
    for p in paths:
        if diff_dual_sum(diff_dual(p)):
            bad.append(f"d^2 {p.name} != 0")
    for p in paths:
        for q in paths:
            pq = mul_dual(p, q)
            if pq is None:
                continue
            acc: set[DualPath] = set()
            for x in diff_dual(p):
                _toggle(acc, mul_dual(x, q))
            for y in diff_dual(q):
                _toggle(acc, mul_dual(p, y))
            if frozenset(acc) != diff_dual(pq):
                bad.append(f"Leibniz fails on {p.name} * {q.name}")
    return bad
