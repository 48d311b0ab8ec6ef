"""Curve words on the parameterized pillowcase and their A-infinity modules.

The six arcs cut the pillowcase into four discs.  ``B1`` is a hexagon
touching every arc; ``B2``, ``B3``, ``B4`` are bigons.  Walking around each
disc boundary we meet arcs separated by chords (the edges of the chord graph)
and exactly one basepoint segment.

A curve word records the discs and arcs a curve passes through, e.g.
``cyclic: B1 j2 B4 i2 B1 i0 B2 j0 B1 j1 B3 i1``.  An arc token may carry a
generator label, ``j2:s``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import algebra
from .structures import Action, RightModule

# domain -> (arcs in boundary order, connector after each arc); the connector
# after the last arc leads back to the first one and carries the basepoint.
CHART: dict[str, tuple[tuple[str, ...], tuple[str | None, ...]]] = {
    "B1": (("i0", "i1", "i2", "j2", "j1", "j0"), ("eta1", "xi1", "rho2", "xi3", "eta3", None)),
    "B2": (("i0", "j0"), ("rho0", None)),
    "B3": (("i1", "j1"), ("eta2", None)),
    "B4": (("i2", "j2"), ("xi2", None)),
}

DOMAINS = tuple(CHART)
ARCS = algebra.IDEMPOTENTS


def _arc_sides() -> dict[str, frozenset[str]]:
    sides: dict[str, set[str]] = {a: set() for a in ARCS}
    for dom, (arcs, _) in CHART.items():
        for a in arcs:
            sides[a].add(dom)
    return {a: frozenset(s) for a, s in sides.items()}


ARC_SIDES = _arc_sides()


class CurveError(ValueError):
    pass


def basic_path(domain: str, a: str, b: str) -> tuple[str, tuple[str, ...]]:
    """The basepoint-free boundary path between two arcs of a domain.

    Returns the arc the path starts from and the chords it crosses, in order.
    """
    arcs, conns = CHART[domain]
    if a == b:
        raise CurveError(f"arc {a} meets itself in {domain}; normalize the word first")
    try:
        pa, pb = arcs.index(a), arcs.index(b)
    except ValueError:
        raise CurveError(f"{a} or {b} is not on the boundary of {domain}") from None
    lo, hi = sorted((pa, pb))
    chords = conns[lo:hi]
    assert None not in chords
    return arcs[lo], tuple(chords)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CurveWord:
    """Alternating domains and arcs.

    For a cyclic word ``arcs[k]`` sits between ``domains[k]`` and
    ``domains[k+1 mod n]``; a linear word has one more domain than arcs.
    """

    kind: str
    domains: tuple[str, ...]
    arcs: tuple[str, ...]
    labels: tuple[str | None, ...] = ()

    def __post_init__(self):
        if self.kind not in ("cyclic", "linear"):
            raise CurveError(f"unknown word kind {self.kind!r}")
        if not self.labels:
            object.__setattr__(self, "labels", (None,) * len(self.arcs))
        if len(self.labels) != len(self.arcs):
            raise CurveError("one label per arc expected")
        expected = len(self.arcs) + (0 if self.cyclic else 1)
        if len(self.domains) != expected:
            raise CurveError("domains and arcs do not alternate")
        for d in self.domains:
            if d not in CHART:
                raise CurveError(f"unknown domain {d!r}")
        for k, a in enumerate(self.arcs):
            if a not in ARC_SIDES:
                raise CurveError(f"unknown arc {a!r}")
            before, after = self.domain_before(k), self.domain_after(k)
            if {before, after} != set(ARC_SIDES[a]):
                raise CurveError(f"arc {a} does not separate {before} from {after}")

    @property
    def cyclic(self) -> bool:
        return self.kind == "cyclic"

    def domain_before(self, k: int) -> str:
        return self.domains[k]

    def domain_after(self, k: int) -> str:
        if self.cyclic:
            return self.domains[(k + 1) % len(self.domains)]
        return self.domains[k + 1]

    def __len__(self) -> int:
        return len(self.arcs)

    def tokens(self) -> list[str]:
        out = []
        for k, a in enumerate(self.arcs):
            out.append(self.domains[k])
            out.append(a if self.labels[k] is None else f"{a}:{self.labels[k]}")
        if not self.cyclic:
            out.append(self.domains[-1])
        return out

    def __str__(self) -> str:
        return f"{self.kind}: " + " ".join(self.tokens())

    def generator_names(self) -> list[str]:
        return [lab if lab is not None else f"g{k}" for k, lab in enumerate(self.labels)]

    def with_default_labels(self) -> CurveWord:
        """Pin ``g<k>`` names so they survive rotation and normalization."""
        return CurveWord(self.kind, self.domains, self.arcs, tuple(self.generator_names()))

    def rotate(self, k: int) -> CurveWord:
        if not self.cyclic:
            raise CurveError("only cyclic words can be rotated")
        n = len(self.arcs)
        k %= n
        labels = self.generator_names()
        return CurveWord(
            "cyclic",
            self.domains[k:] + self.domains[:k],
            self.arcs[k:] + self.arcs[:k],
            labels[k:] + labels[:k],
        )


def parse_word(text: str) -> CurveWord:
    """Parse ``cyclic: B1 j2 ...`` or ``linear: B3 j1 ...`` (comments with ``#``).

    Errors name the offending line.
    """
    located: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not located and body.strip():
            head, sep, body = body.partition(":")
            located.append((no, head.strip() + sep))
        located += [(no, tok) for tok in body.split()]
    if not located:
        raise CurveError("empty word")
    first_line, head = located[0]
    kind = head.rstrip(":")
    if not head.endswith(":") or kind not in ("cyclic", "linear"):
        raise CurveError(f"line {first_line}: word must start with 'cyclic:' or 'linear:'")
    tokens = located[1:]
    if not tokens:
        raise CurveError(f"line {first_line}: empty word")
    domains, arcs, labels = [], [], []
    for pos, (no, tok) in enumerate(tokens):
        if pos % 2 == 0:
            if tok not in CHART:
                raise CurveError(f"line {no}: expected a domain, got {tok!r}")
            domains.append(tok)
        else:
            arc, _, label = tok.partition(":")
            if arc not in ARC_SIDES:
                raise CurveError(f"line {no}: expected an arc, got {tok!r}")
            arcs.append(arc)
            labels.append(label or None)
    last = tokens[-1][0]
    if kind == "cyclic" and len(tokens) % 2:
        raise CurveError(f"line {last}: a cyclic word ends with an arc (the first domain closes it up)")
    if kind == "linear" and not len(tokens) % 2:
        raise CurveError(f"line {last}: a linear word starts and ends with a domain")
    if not arcs:
        raise CurveError("word crosses no arcs")
    try:
        return CurveWord(kind, tuple(domains), tuple(arcs), tuple(labels))
    except CurveError as exc:
        raise CurveError(f"line {first_line}: {exc}") from None


def _backtracks(w: CurveWord) -> list[int]:
    n = len(w.arcs)
    if w.cyclic:
        return [k for k in range(n) if n >= 2 and w.arcs[k] == w.arcs[(k + 1) % n]]
    return [k for k in range(n - 1) if w.arcs[k] == w.arcs[k + 1]]


def normalize(w: CurveWord, rng: random.Random | None = None) -> CurveWord:
    """Remove every ``i B i`` back-and-forth crossing (a finger move).

    The first available pattern is removed unless ``rng`` is given, in which
    case a random one is; the result does not depend on the choice.
    """
    w = w.with_default_labels()
    while True:
        spots = _backtracks(w)
        if not spots:
            return w
        k = rng.choice(spots) if rng is not None else spots[0]
        w = _remove(w, k)


def _remove(w: CurveWord, k: int) -> CurveWord:
    doms, arcs, labs = list(w.domains), list(w.arcs), list(w.labels)
    n = len(arcs)
    if w.cyclic:
        if n == 2:
            raise CurveError("cyclic word reduces to nothing (curve bounds a disc or misses all arcs)")
        # rotate so the pattern sits at the front
        doms = doms[k:] + doms[:k]
        arcs = arcs[k:] + arcs[:k]
        labs = labs[k:] + labs[:k]
        doms = [doms[0]] + doms[3:]
        arcs, labs = arcs[2:], labs[2:]
        return CurveWord("cyclic", tuple(doms), tuple(arcs), tuple(labs))
    del arcs[k : k + 2]
    del labs[k : k + 2]
    del doms[k + 1 : k + 3]
    if not arcs:
        raise CurveError("linear word reduces to an arc crossing nothing")
    return CurveWord("linear", tuple(doms), tuple(arcs), tuple(labs))


def is_normal(w: CurveWord) -> bool:
    return not _backtracks(w)


def basic_actions(w: CurveWord) -> list[Action]:
    """One action per pair of consecutive crossings sharing a domain visit."""
    names = w.generator_names()
    n = len(w.arcs)
    pairs = range(n) if w.cyclic else range(n - 1)
    out = []
    for k in pairs:
        k2 = (k + 1) % n
        dom = w.domain_after(k)
        start, chords = basic_path(dom, w.arcs[k], w.arcs[k2])
        if w.arcs[k] == start:
            out.append(Action(names[k], chords, names[k2]))
        else:
            out.append(Action(names[k2], chords, names[k]))
    return out


def juxtapose(actions: Sequence[Action]) -> list[Action]:
    """Composite actions from chains of basic actions glued along arcs.

    At every junction only the two chords meeting there are multiplied; a
    zero product means the discs cannot be glued.
    """
    by_src: dict[str, list[Action]] = {}
    for a in actions:
        by_src.setdefault(a.src, []).append(a)
    out: list[Action] = []

    def extend(src: str, inputs: tuple[str, ...], tgt: str) -> None:
        for nxt in by_src.get(tgt, ()):
            p = algebra.mul(inputs[-1], nxt.inputs[0])
            if p is None:
                continue
            merged = inputs[:-1] + (p,) + nxt.inputs[1:]
            out.append(Action(src, merged, nxt.tgt))
            extend(src, merged, nxt.tgt)

    for a in actions:
        extend(a.src, a.inputs, a.tgt)
    return out


def compile_word(w: CurveWord, name: str = "") -> RightModule:
    """The A-infinity module of a normalized curve word."""
    if not is_normal(w):
        raise CurveError("word is not normalized (contains an 'i B i' pattern)")
    names = w.generator_names()
    if len(set(names)) != len(names):
        raise CurveError("duplicate generator labels")
    gens = dict(zip(names, w.arcs))
    basic = basic_actions(w)
    return RightModule.build(gens, basic + juxtapose(basic), name=name)


def compile_text(text: str, name: str = "") -> RightModule:
    return compile_word(normalize(parse_word(text)), name=name)
