"""A-infinity modules and type DD structures over the pillowcase algebra.

All coefficients live in F2, so actions and arrows are stored as sets and
"adding" an arrow that is already present removes it.

Conventions
-----------
* A right-module action ``Action(x, (a1, ..., ak), y)`` means
  ``m(x, a1, ..., ak) = y``; the idempotents chain as
  ``idem(x) = left(a1)``, ``right(ai) = left(ai+1)``, ``right(ak) = idem(y)``.
* A left-module action ``Action(x, (a1, ..., ak), y)`` means
  ``m(a1, ..., ak, x) = y``; so ``right(ak) = idem(x)`` and
  ``left(a1) = idem(y)``.
* A DD arrow ``Arrow(x, l, y, r)`` is the term ``l (x) y (x) r`` of
  ``delta^1(x)``; coefficients are basis names or ``"1"``.  Compatibility:
  ``left(x) = left(l)``, ``right(l) = left(y)``, ``right(y) = left(r)``,
  ``right(r) = right(x)``.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from . import algebra
from .algebra import BASIS, IDEMPOTENTS

ONE = "1"


class StructureError(ValueError):
    pass


class Action(NamedTuple):
    src: str
    inputs: tuple[str, ...]
    tgt: str


class Arrow(NamedTuple):
    src: str
    left: str
    tgt: str
    right: str


@dataclass
class Report:
    """Outcome of a validation pass; truthy iff no violations were found."""

    violations: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"ok ({self.checked} checked)"
        head = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        return f"FAIL: {head}{more}"


def _toggle(acc: set, item) -> None:
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


def coeff_mul(a: str, b: str) -> str | None:
    """Product of DD coefficients where ``"1"`` is the unit; ``None`` is zero."""
    if a == ONE:
        return b
    if b == ONE:
        return a
    return algebra.mul(a, b)


def _coeff_left(c: str, default: str) -> str:
    return default if c == ONE else BASIS[c].left


def _coeff_right(c: str, default: str) -> str:
    return default if c == ONE else BASIS[c].right


# --------------------------------------------------------------------------
# Modules
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Module:
    generators: Mapping[str, str]
    actions: frozenset[Action] = frozenset()
    m1: frozenset[tuple[str, str]] = frozenset()
    name: str = ""

    side = ""

    def __post_init__(self):
        for g, idem in self.generators.items():
            if idem not in IDEMPOTENTS:
                raise StructureError(f"generator {g!r} has unknown idempotent {idem!r}")
        for act in self.actions:
            if act.src not in self.generators or act.tgt not in self.generators:
                raise StructureError(f"action {act} references an unknown generator")
            if not act.inputs:
                raise StructureError(f"action {act} has no inputs; use m1 arrows")
            for a in act.inputs:
                if a not in BASIS or BASIS[a].is_idempotent:
                    raise StructureError(f"action {act} has a bad input {a!r}")
        for s, t in self.m1:
            if s not in self.generators or t not in self.generators:
                raise StructureError(f"m1 arrow {s}->{t} references an unknown generator")

    @classmethod
    def build(cls, generators, actions=(), m1=(), name: str = ""):
        """Construct from iterables; repeated actions cancel in pairs."""
        acts: set[Action] = set()
        for a in actions:
            src, inputs, tgt = a
            _toggle(acts, Action(src, tuple(algebra.basis(x).name for x in inputs), tgt))
        arrows: set[tuple[str, str]] = set()
        for s, t in m1:
            _toggle(arrows, (s, t))
        return cls(dict(generators), frozenset(acts), frozenset(arrows), name)

    def action_table(self) -> dict[str, list[tuple[tuple[str, ...], str]]]:
        out: dict[str, list[tuple[tuple[str, ...], str]]] = defaultdict(list)
        for a in sorted(self.actions):
            out[a.src].append((a.inputs, a.tgt))
        return out

    def lookup(self) -> dict[tuple[str, tuple[str, ...]], list[str]]:
        out: dict[tuple[str, tuple[str, ...]], list[str]] = defaultdict(list)
        for a in self.actions:
            out[(a.src, a.inputs)].append(a.tgt)
        return out

    def max_arity(self) -> int:
        return max((len(a.inputs) for a in self.actions), default=0)

    def idempotent_problems(self) -> list[str]:
        problems = []
        for act in sorted(self.actions):
            if not self._chain_ok(act):
                problems.append(f"idempotent mismatch in {format_action(act, self.side)}")
        for s, t in sorted(self.m1):
            if self.generators[s] != self.generators[t]:
                problems.append(f"idempotent mismatch in m1 {s}->{t}")
        return problems

    def _chain_ok(self, act: Action) -> bool:
        raise NotImplementedError

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class RightModule(_Module):
    side = "right"

    def _chain_ok(self, act: Action) -> bool:
        v = self.generators[act.src]
        for a in act.inputs:
            if BASIS[a].left != v:
                return False
            v = BASIS[a].right
        return v == self.generators[act.tgt]


@dataclass(frozen=True)
class LeftModule(_Module):
    side = "left"

    def _chain_ok(self, act: Action) -> bool:
        v = self.generators[act.src]
        for a in reversed(act.inputs):
            if BASIS[a].right != v:
                return False
            v = BASIS[a].left
        return v == self.generators[act.tgt]


def format_action(act: Action, side: str = "right") -> str:
    ins = ",".join(act.inputs)
    if side == "left":
        return f"({ins}) x {act.src} -> {act.tgt}"
    return f"{act.src} x ({ins}) -> {act.tgt}"


def _flip_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def dualize(m: _Module) -> _Module:
    """Dual module: every action reversed, generators starred.

    A right action ``x (a1..ak) -> y`` becomes the left action
    ``(a1..ak) y* -> x*``; applied to a left module it undoes this.
    """
    cls = LeftModule if isinstance(m, RightModule) else RightModule
    gens = {_flip_name(g): idem for g, idem in m.generators.items()}
    acts = frozenset(Action(_flip_name(a.tgt), a.inputs, _flip_name(a.src)) for a in m.actions)
    m1 = frozenset((_flip_name(t), _flip_name(s)) for s, t in m.m1)
    return cls(gens, acts, m1, _flip_name(m.name) if m.name else "")


def direct_sum(ms: Sequence[RightModule], name: str = "") -> RightModule:
    """Disjoint union; generators are prefixed ``<k>.`` when summands are combined."""
    if len(ms) == 1:
        m = ms[0]
        return RightModule(dict(m.generators), m.actions, m.m1, name or m.name)
    gens: dict[str, str] = {}
    acts: set[Action] = set()
    m1: set[tuple[str, str]] = set()
    for k, m in enumerate(ms):
        pre = f"{k}."
        for g, idem in m.generators.items():
            gens[pre + g] = idem
        acts.update(Action(pre + a.src, a.inputs, pre + a.tgt) for a in m.actions)
        m1.update((pre + s, pre + t) for s, t in m.m1)
    return RightModule(gens, frozenset(acts), frozenset(m1), name)


def validate_ainfty(m: _Module, max_arity: int | None = None) -> Report:
    """Check the A-infinity relations over an associative algebra with d = 0.

    For every generator ``x`` and every composable input sequence of length
    at most ``max_arity`` (default: longest action + 2), sums

    * ``m(m(x, a1..ai), ai+1..an)`` over all splits (``m1`` included), and
    * ``m(x, a1, .., aj*aj+1, .., an)`` over all adjacent pairs,

    and reports every sequence whose total is nonzero.  Left modules are
    checked through their dual, whose relations are the mirror image.
    """
    if isinstance(m, LeftModule):
        rep = validate_ainfty(dualize(m), max_arity)
        return rep
    report = Report(m.idempotent_problems())
    if max_arity is None:
        max_arity = m.max_arity() + 2
    table = m.lookup()
    d1: dict[str, list[str]] = defaultdict(list)
    for s, t in m.m1:
        d1[s].append(t)

    def act(x: str, seq: tuple[str, ...]) -> list[str]:
        if not seq:
            return d1.get(x, [])
        return table.get((x, seq), [])

    for x in sorted(m.generators):
        # zero inputs: m1 squares to zero
        acc: Counter[str] = Counter()
        for y in act(x, ()):
            acc.update(act(y, ()))
        report.checked += 1
        bad = sorted(z for z, c in acc.items() if c % 2)
        if bad:
            report.violations.append(f"m1*m1({x}) = {' + '.join(bad)}")
        for seq in algebra.composable_sequences(m.generators[x], max_arity):
            acc = Counter()
            n = len(seq)
            for i in range(n + 1):
                for y in act(x, seq[:i]):
                    acc.update(act(y, seq[i:]))
            for j in range(n - 1):
                p = algebra.mul(seq[j], seq[j + 1])
                if p is not None:
                    acc.update(act(x, seq[:j] + (p,) + seq[j + 2 :]))
            report.checked += 1
            bad = sorted(z for z, c in acc.items() if c % 2)
            if bad:
                report.violations.append(f"relation on ({x}; {', '.join(seq)}) leaves {' + '.join(bad)}")
    return report


def module_isomorphism(a: _Module, b: _Module) -> dict[str, str] | None:
    """Generator bijection carrying idempotents and labelled actions across."""
    if type(a) is not type(b):
        return None
    ga = _module_graph(a)
    gb = _module_graph(b)
    return _match(ga, gb)


def _module_graph(m: _Module) -> nx.DiGraph:
    g = nx.DiGraph()
    for x, idem in m.generators.items():
        g.add_node(x, label=idem)
    labels: dict[tuple[str, str], set] = defaultdict(set)
    for act in m.actions:
        labels[(act.src, act.tgt)].add(act.inputs)
    for s, t in m.m1:
        labels[(s, t)].add(())
    for (s, t), ls in labels.items():
        g.add_edge(s, t, labels=frozenset(ls))
    return g


def _match(ga: nx.DiGraph, gb: nx.DiGraph) -> dict[str, str] | None:
    if ga.number_of_nodes() != gb.number_of_nodes() or ga.number_of_edges() != gb.number_of_edges():
        return None
    matcher = DiGraphMatcher(
        ga,
        gb,
        node_match=lambda u, v: u["label"] == v["label"],
        edge_match=lambda u, v: u["labels"] == v["labels"],
    )
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


# --------------------------------------------------------------------------
# Type DD structures
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DDStructure:
    generators: Mapping[str, tuple[str, str]]
    arrows: frozenset[Arrow] = frozenset()
    name: str = ""

    def __post_init__(self):
        for g, (l, r) in self.generators.items():
            if l not in IDEMPOTENTS or r not in IDEMPOTENTS:
                raise StructureError(f"generator {g!r} has unknown idempotents ({l}, {r})")
        for a in self.arrows:
            if a.src not in self.generators or a.tgt not in self.generators:
                raise StructureError(f"arrow {a} references an unknown generator")
            for c in (a.left, a.right):
                if c != ONE and (c not in BASIS or BASIS[c].is_idempotent):
                    raise StructureError(f"arrow {a} has a bad coefficient {c!r}")

    @classmethod
    def build(cls, generators, arrows=(), name: str = "") -> DDStructure:
        acc: set[Arrow] = set()
        for src, l, tgt, r in arrows:
            l = l if l == ONE else algebra.basis(l).name
            r = r if r == ONE else algebra.basis(r).name
            _toggle(acc, Arrow(src, l, tgt, r))
        return cls(dict(generators), frozenset(acc), name)

    def outgoing(self) -> dict[str, list[Arrow]]:
        out: dict[str, list[Arrow]] = defaultdict(list)
        for a in sorted(self.arrows):
            out[a.src].append(a)
        return out

    def incoming(self) -> dict[str, list[Arrow]]:
        out: dict[str, list[Arrow]] = defaultdict(list)
        for a in sorted(self.arrows):
            out[a.tgt].append(a)
        return out

    def identity_arrows(self) -> list[Arrow]:
        return sorted(a for a in self.arrows if a.left == ONE and a.right == ONE)

    def without_arrow(self, arrow: Arrow) -> DDStructure:
        return DDStructure(dict(self.generators), self.arrows - {arrow}, self.name)

    def __len__(self) -> int:
        return len(self.generators)


def dd_idempotent_problems(d: DDStructure) -> list[str]:
    problems = []
    for a in sorted(d.arrows):
        sl, sr = d.generators[a.src]
        tl, tr = d.generators[a.tgt]
        ok = (
            _coeff_left(a.left, sl) == sl
            and _coeff_right(a.left, sl) == tl
            and _coeff_left(a.right, tr) == tr
            and _coeff_right(a.right, tr) == sr
        )
        if not ok:
            problems.append(f"idempotent mismatch in {format_arrow(a)}")
    return problems


def format_arrow(a: Arrow) -> str:
    return f"{a.src} | {a.left} ; {a.right} -> {a.tgt}"


def validate_dd(d: DDStructure) -> Report:
    """Check delta^1 o delta^1 = 0 (the algebra has no differential).

    Every two-step chain ``x -> (l1, y, r1)``, ``y -> (l2, z, r2)``
    contributes ``(l1*l2, z, r2*r1)``; the contributions from each ``x``
    must cancel in pairs.
    """
    report = Report(dd_idempotent_problems(d))
    out = d.outgoing()
    for x in sorted(d.generators):
        acc: Counter[tuple[str, str, str]] = Counter()
        for a in out.get(x, ()):
            for b in out.get(a.tgt, ()):
                l = coeff_mul(a.left, b.left)
                r = coeff_mul(b.right, a.right)
                if l is None or r is None:
                    continue
                acc[(l, b.tgt, r)] += 1
        report.checked += 1
        for (l, z, r), c in sorted(acc.items()):
            if c % 2:
                report.violations.append(f"delta^2({x}) contains {l} x {z} x {r}")
    return report


def cancel_dd(d: DDStructure, arrow: Arrow) -> DDStructure:
    """Cancel the generators joined by an identity-coefficient arrow.

    ``x`` and ``y`` are removed; every zigzag ``a -> (l1, y, r1)`` and
    ``x -> (l2, z, r2)`` adds ``a -> (l1*l2, z, r2*r1)`` (mod 2).
    """
    x, y = arrow.src, arrow.tgt
    if arrow not in d.arrows:
        raise StructureError(f"{format_arrow(arrow)} is not an arrow of the structure")
    if arrow.left != ONE or arrow.right != ONE:
        raise StructureError(f"cannot cancel along non-identity arrow {format_arrow(arrow)}")
    if x == y:
        raise StructureError("cannot cancel a self-loop")
    if sum(1 for a in d.arrows if a.src == x and a.tgt == y) != 1:
        raise StructureError(f"more than one arrow from {x} to {y}")
    gone = {x, y}
    acc = {a for a in d.arrows if a.src not in gone and a.tgt not in gone}
    into_y = [a for a in d.arrows if a.tgt == y and a.src not in gone]
    from_x = [a for a in d.arrows if a.src == x and a.tgt not in gone]
    for a in into_y:
        for b in from_x:
            l = coeff_mul(a.left, b.left)
            r = coeff_mul(b.right, a.right)
            if l is None or r is None:
                continue
            _toggle(acc, Arrow(a.src, l, b.tgt, r))
    gens = {g: v for g, v in d.generators.items() if g not in gone}
    return DDStructure(gens, frozenset(acc), d.name)


def cancellable_arrows(d: DDStructure) -> list[Arrow]:
    pair_count = Counter((a.src, a.tgt) for a in d.arrows)
    return [a for a in d.identity_arrows() if a.src != a.tgt and pair_count[(a.src, a.tgt)] == 1]


def reduce_dd(
    d: DDStructure,
    choose: Callable[[list[Arrow]], Arrow] | None = None,
    seed: int | None = None,
    check: bool = False,
) -> DDStructure:
    """Cancel identity arrows until none are left.

    The default picks the smallest candidate arrow; pass ``seed`` for a
    random (reproducible) order or ``choose`` for full control.  With
    ``check=True`` the DD relation is re-verified after every step.
    """
    if choose is None:
        if seed is None:
            choose = lambda cands: cands[0]  # noqa: E731
        else:
            rng = random.Random(seed)
            choose = rng.choice
    while True:
        cands = cancellable_arrows(d)
        if not cands:
            break
        d = cancel_dd(d, choose(cands))
        if check:
            rep = validate_dd(d)
            if not rep:
                raise StructureError("cancellation broke the DD relation: " + rep.summary())
    if d.identity_arrows():
        raise StructureError("identity arrows remain that cannot be cancelled")
    return d


def _dd_graph(d: DDStructure) -> nx.DiGraph:
    g = nx.DiGraph()
    for x, idems in d.generators.items():
        g.add_node(x, label=idems)
    labels: dict[tuple[str, str], set] = defaultdict(set)
    for a in d.arrows:
        labels[(a.src, a.tgt)].add((a.left, a.right))
    for (s, t), ls in labels.items():
        g.add_edge(s, t, labels=frozenset(ls))
    return g


def iso_dd(a: DDStructure, b: DDStructure) -> dict[str, str] | None:
    """Generator bijection preserving idempotent pairs and labelled arrows."""
    return _match(_dd_graph(a), _dd_graph(b))


# --------------------------------------------------------------------------
# Text formats
# --------------------------------------------------------------------------


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = ""):
        where = f"{source}:{line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_module(text: str, side: str = "right", name: str = "", source: str = "") -> _Module:
    """Parse ``gen <name> <idem>`` / ``act <src> | <a> <b> ... -> <tgt>`` lines.

    ``m1 <src> -> <tgt>`` declares a module differential.
    """
    gens: dict[str, str] = {}
    acts: list[tuple[str, tuple[str, ...], str]] = []
    m1: list[tuple[str, str]] = []
    for no, line in _content_lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "gen":
                parts = rest.split()
                if len(parts) != 2:
                    raise FormatError("expected 'gen <name> <idempotent>'", no, source)
                g, idem = parts
                if idem not in IDEMPOTENTS:
                    raise FormatError(f"unknown idempotent {idem!r}", no, source)
                if g in gens:
                    raise FormatError(f"duplicate generator {g!r}", no, source)
                gens[g] = idem
            elif head == "act":
                src, sep, tail = rest.partition("|")
                ins, sep2, tgt = tail.partition("->")
                if not sep or not sep2:
                    raise FormatError("expected 'act <src> | <elem> ... -> <tgt>'", no, source)
                inputs = tuple(algebra.basis(t).name for t in ins.split())
                if not inputs:
                    raise FormatError("action without inputs", no, source)
                acts.append((src.strip(), inputs, tgt.strip()))
            elif head == "m1":
                src, sep, tgt = rest.partition("->")
                if not sep:
                    raise FormatError("expected 'm1 <src> -> <tgt>'", no, source)
                m1.append((src.strip(), tgt.strip()))
            else:
                raise FormatError(f"unknown directive {head!r}", no, source)
        except algebra.AlgebraError as exc:
            raise FormatError(str(exc), no, source) from None
    for g in [a[0] for a in acts] + [a[2] for a in acts] + [x for p in m1 for x in p]:
        if g not in gens:
            raise FormatError(f"undeclared generator {g!r}", None, source)
    cls = RightModule if side == "right" else LeftModule
    return cls.build(gens, acts, m1, name=name)


def format_module(m: _Module) -> str:
    lines = []
    if m.name:
        lines.append(f"# {m.name}")
    for g, idem in m.generators.items():
        lines.append(f"gen {g} {idem}")
    for a in sorted(m.actions):
        lines.append(f"act {a.src} | {' '.join(a.inputs)} -> {a.tgt}")
    for s, t in sorted(m.m1):
        lines.append(f"m1 {s} -> {t}")
    return "\n".join(lines) + "\n"


def parse_dd(
    text: str,
    name: str = "",
    source: str = "",
    rename: Callable[[str], str] | None = None,
) -> DDStructure:
    """Parse ``gen <name> <left> <right>`` and ``<src> | <l> ; <r> -> <tgt>`` lines."""
    rename = rename or (lambda s: s)
    gens: dict[str, tuple[str, str]] = {}
    arrows: list[tuple[str, str, str, str]] = []
    for no, line in _content_lines(text):
        try:
            if line.startswith("gen "):
                parts = line.split()
                if len(parts) != 4:
                    raise FormatError("expected 'gen <name> <left> <right>'", no, source)
                g = rename(parts[1])
                if g in gens:
                    raise FormatError(f"duplicate generator {parts[1]!r}", no, source)
                gens[g] = (parts[2], parts[3])
                continue
            src, sep, tail = line.partition("|")
            coeffs, sep2, tgt = tail.partition("->")
            l, sep3, r = coeffs.partition(";")
            if not (sep and sep2 and sep3):
                raise FormatError("expected '<src> | <left> ; <right> -> <tgt>'", no, source)
            l, r = l.strip(), r.strip()
            l = l if l == ONE else algebra.basis(l).name
            r = r if r == ONE else algebra.basis(r).name
            arrows.append((rename(src.strip()), l, rename(tgt.strip()), r))
        except (algebra.AlgebraError, StructureError) as exc:
            raise FormatError(str(exc), no, source) from None
    for a in arrows:
        for g in (a[0], a[2]):
            if g not in gens:
                raise FormatError(f"undeclared generator {g!r}", None, source)
    return DDStructure.build(gens, arrows, name=name)


def format_dd(d: DDStructure, rename: Callable[[str], str] | None = None) -> str:
    rename = rename or (lambda s: s)
    lines = []
    if d.name:
        lines.append(f"# {d.name}")
    for g, (l, r) in d.generators.items():
        lines.append(f"gen {rename(g)} {l} {r}")
    for a in sorted(d.arrows):
        lines.append(f"{rename(a.src)} | {a.left} ; {a.right} -> {rename(a.tgt)}")
    return "\n".join(lines) + "\n"
