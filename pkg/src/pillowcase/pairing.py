"""The pairing complex ``M(L1) [x] bar_r [x] dual M(L0)`` and its homology."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import mul
from .bar import builtin_bar_r
from .f2linear import F2Matrix, NotAComplexError, homology_rank
from .structures import ONE, DDStructure, LeftModule, RightModule, dualize


class PairingGenerator(NamedTuple):
    m: str
    b: str
    n: str

    def __str__(self) -> str:
        return f"{self.m}|{self.b}|{self.n}"


@dataclass(frozen=True)
class PairingComplex:
    generators: tuple[PairingGenerator, ...]
    arrows: tuple[tuple[int, int], ...]  # (source index, target index)

    @property
    def boundary(self) -> F2Matrix:
        """Matrix of the differential: column = source, row = target."""
        n = len(self.generators)
        return F2Matrix.from_entries(n, n, ((t, s) for s, t in self.arrows))

    def homology_rank(self) -> int:
        return homology_rank(self.boundary)

    def __len__(self) -> int:
        return len(self.generators)

    def dump_lines(self) -> list[str]:
        lines = [f"gen {g}" for g in self.generators]
        lines += [f"arrow {self.generators[s]} -> {self.generators[t]}" for s, t in self.arrows]
        return lines


def _chain_ends(dd_out, start: str, seq: tuple[str, ...], side: str) -> Counter[str]:
    """Endpoints (with multiplicity) of DD chains from ``start`` emitting ``seq``
    one element per arrow on ``side``, with identity on the other side."""
    frontier: Counter[str] = Counter({start: 1})
    for a in seq:
        nxt: Counter[str] = Counter()
        for b, mult in frontier.items():
            for arr in dd_out.get(b, ()):
                emitted, other = (arr.left, arr.right) if side == "left" else (arr.right, arr.left)
                if emitted == a and other == ONE:
                    nxt[arr.tgt] += mult
        frontier = nxt
        if not frontier:
            break
    return frontier


def build_pairing(
    m1: RightModule,
    n0: LeftModule,
    dd: DDStructure | None = None,
    check: bool = True,
) -> PairingComplex:
    """Box tensor of a right module, a DD structure and a left module.

    The differential has three kinds of terms:

    * identity-identity DD arrows (only present in unreduced structures) and
      module ``m1`` arrows, which move one factor;
    * left chains: DD arrows emitting ``g1, .., gk`` on the left, fed in
      emission order to an action of ``m1``;
    * right chains: DD arrows emitting ``g1, .., gk`` on the right, fed in
      reverse order ``(gk, .., g1)`` to an action of ``n0``.

    Chains emitting on both sides contribute nothing because the modules are
    strictly unital and no DD arrow carries coefficients on both sides.
    """
    dd = builtin_bar_r() if dd is None else dd
    both = [a for a in dd.arrows if a.left != ONE and a.right != ONE]
    if both:
        raise ValueError("DD structure has arrows with coefficients on both sides")

    gens: list[PairingGenerator] = []
    for m, mi in m1.generators.items():
        for b, (bl, br) in dd.generators.items():
            if bl != mi:
                continue
            for n, ni in n0.generators.items():
                if ni == br:
                    gens.append(PairingGenerator(m, b, n))
    index = {g: k for k, g in enumerate(gens)}
    acc: Counter[tuple[int, int]] = Counter()

    def add(src: PairingGenerator, tgt: PairingGenerator, mult: int = 1) -> None:
        if tgt not in index:
            raise ValueError(f"differential leaves the generator set: {src} -> {tgt}")
        acc[(index[src], index[tgt])] += mult

    dd_out = dd.outgoing()
    by_b: dict[str, list[PairingGenerator]] = defaultdict(list)
    by_m: dict[str, list[PairingGenerator]] = defaultdict(list)
    by_n: dict[str, list[PairingGenerator]] = defaultdict(list)
    for g in gens:
        by_b[g.b].append(g)
        by_m[g.m].append(g)
        by_n[g.n].append(g)

    for arr in dd.identity_arrows():
        for g in by_b[arr.src]:
            add(g, PairingGenerator(g.m, arr.tgt, g.n))
    for s, t in m1.m1:
        for g in by_m[s]:
            add(g, PairingGenerator(t, g.b, g.n))
    for s, t in n0.m1:
        for g in by_n[s]:
            add(g, PairingGenerator(g.m, g.b, t))

    for act in m1.actions:
        for g in by_m[act.src]:
            for b2, mult in _chain_ends(dd_out, g.b, act.inputs, "left").items():
                add(g, PairingGenerator(act.tgt, b2, g.n), mult)
    for act in n0.actions:
        emitted = tuple(reversed(act.inputs))
        for g in by_n[act.src]:
            for b2, mult in _chain_ends(dd_out, g.b, emitted, "right").items():
                add(g, PairingGenerator(g.m, b2, act.tgt), mult)

    arrows = tuple(sorted(k for k, c in acc.items() if c % 2))
    cx = PairingComplex(tuple(gens), arrows)
    if check:
        d = cx.boundary
        if not (d @ d).is_zero():
            raise NotAComplexError("pairing differential does not square to zero")
    return cx


def pair_rank(m1: RightModule, m0: RightModule, dd: DDStructure | None = None) -> int:
    """Rank of the F2 homology of the pairing of ``m1`` against ``m0``."""
    return build_pairing(m1, dualize(m0), dd).homology_rank()


def intersection_number(m1: RightModule, m0: RightModule, periodic: bool, dd: DDStructure | None = None) -> int:
    """Pairing rank, minus 2 when the two curves have periodic domains.

    Whether they do is the caller's call (``periodic``); a negative result
    means that flag was wrong.
    """
    r = pair_rank(m1, m0, dd)
    out = r - 2 if periodic else r
    if out < 0:
        raise ValueError(f"negative intersection number ({r} - 2); check the periodic flag")
    return out


def _product(coeffs: list[str]) -> str | None:
    out = coeffs[0]
    for c in coeffs[1:]:
        out = mul(out, c)
        if out is None:
            return None
    return out


def mixed_chains(dd: DDStructure | None = None, max_len: int = 5):
    """DD chains (length <= ``max_len``) emitting coefficients on both sides.

    Yields ``(chain, left_product, right_product)``; the left product is taken
    in emission order, the right one in reverse emission order, ``None``
    meaning zero.
    """
    dd = builtin_bar_r() if dd is None else dd
    out = dd.outgoing()

    def walk(g: str, chain: tuple):
        if chain:
            left = [a.left for a in chain if a.left != ONE]
            right = [a.right for a in chain if a.right != ONE]
            if left and right:
                yield chain, _product(left), _product(right[::-1])
        if len(chain) < max_len:
            for a in out.get(g, ()):
                yield from walk(a.tgt, chain + (a,))

    for g in sorted(dd.generators):
        yield from walk(g, ())
