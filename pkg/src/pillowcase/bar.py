"""The dual small bar resolution and its reduced form.

Generators of the bar are the 56 basis paths of the dual algebra; a path
``p`` from ``u'`` to ``v'`` gives a generator with idempotents ``(u, v)``.
Generator names are canonical :attr:`DualPath.name` strings; the fixture
files may use either the primed (``b(xi1')``) or the minus (``b(-xi1)``)
spelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable

from . import algebra
from .algebra import DUAL_EDGES, IDEMPOTENTS, DualPath
from .structures import (
    ONE,
    Arrow,
    DDStructure,
    Report,
    format_arrow,
    iso_dd,
    parse_dd,
    reduce_dd,
    validate_dd,
)

BAR_FIXTURE = "bar56.dd"
BAR_R_FIXTURE = "barr24.dd"


def parse_bar_name(name: str) -> DualPath:
    """Read ``b(eta3',xi3')``, ``b(-eta3,-xi3)``, ``b(j0')`` or ``b(j0)``."""
    s = name.strip()
    if not (s.startswith("b(") and s.endswith(")")):
        raise ValueError(f"not a bar generator name: {name!r}")
    items = [t.strip() for t in s[2:-1].split(",")]
    if len(items) == 1 and items[0].rstrip("'") in IDEMPOTENTS:
        return DualPath(items[0].rstrip("'"))
    edges = []
    for t in items:
        if t.startswith("-"):
            t = t[1:] + "'"
        t = algebra.normalize_name(t)
        if t not in DUAL_EDGES:
            raise ValueError(f"unknown dual edge {t!r} in {name!r}")
        edges.append(t)
    return DualPath.of(*edges)


def canonical_bar_name(name: str) -> str:
    return parse_bar_name(name).name


def minus_name(name: str) -> str:
    """Minus spelling of a bar generator: ``b(eta3',xi3')`` -> ``b(-eta3,-xi3)``."""
    p = parse_bar_name(name)
    if not p.edges:
        return f"b({p.start})"
    return "b(" + ",".join("-" + e[:-1] for e in p.edges) + ")"


def build_bar(diff: Callable[[DualPath], frozenset[DualPath]] = algebra.diff_dual) -> DDStructure:
    """The bar DD structure generated from the dual algebra.

    delta^1 of ``b(e1..el)`` is the sum of

    * ``1 (x) b(e1..el, e) (x) rev(e)`` over edges ``e`` leaving the end vertex,
    * ``rev(e) (x) b(e, e1..el) (x) 1`` over edges ``e`` entering the start vertex,
    * ``1 (x) q (x) 1`` over the terms ``q`` of the path differential.
    """
    paths = algebra.all_dual_paths()
    gens = {p.name: (p.start, p.end) for p in paths}
    arrows = []
    for p in paths:
        for e, (src, tgt) in DUAL_EDGES.items():
            if src == p.end:
                arrows.append((p.name, ONE, DualPath(p.start, p.edges + (e,)).name, algebra.reverse_edge(e)))
            if tgt == p.start:
                arrows.append((p.name, algebra.reverse_edge(e), DualPath(src, (e,) + p.edges).name, ONE))
        for q in diff(p):
            arrows.append((p.name, ONE, q.name, ONE))
    return DDStructure.build(gens, arrows, name="bar")


def _read_fixture(filename: str, path: str | Path | None) -> tuple[str, str]:
    if path is not None:
        return Path(path).read_text(), str(path)
    ref = resources.files("pillowcase") / "data" / filename
    return ref.read_text(), filename


def load_bar_fixture(path: str | Path | None = None) -> DDStructure:
    """The 56-generator bar as listed in the shipped fixture."""
    text, src = _read_fixture(BAR_FIXTURE, path)
    return parse_dd(text, name="bar (fixture)", source=src, rename=canonical_bar_name)


def load_bar_r(path: str | Path | None = None) -> DDStructure:
    text, src = _read_fixture(BAR_R_FIXTURE, path)
    return parse_dd(text, name="bar_r", source=src, rename=canonical_bar_name)


@lru_cache(maxsize=1)
def builtin_bar_r() -> DDStructure:
    """The hardcoded reduced bar (24 generators, 36 arrows)."""
    return load_bar_r()


@dataclass
class Certificate:
    steps: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.steps)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.steps.append((name, ok, detail))

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "") for name, ok, detail in self.steps]


def _diff_arrows(built: DDStructure, listed: DDStructure) -> str:
    extra = sorted(built.arrows - listed.arrows)
    missing = sorted(listed.arrows - built.arrows)
    parts = [f"built-only {format_arrow(a)}" for a in extra[:3]]
    parts += [f"listed-only {format_arrow(a)}" for a in missing[:3]]
    return "; ".join(parts)


def certify_bar(
    seeds: tuple[int, ...] = (1, 2, 3),
    diff: Callable[[DualPath], frozenset[DualPath]] = algebra.diff_dual,
    bar_path: str | Path | None = None,
    bar_r_path: str | Path | None = None,
) -> Certificate:
    """Cross-check the generated bar, the listed bar and the listed reduction."""
    cert = Certificate()
    built = build_bar(diff)
    try:
        listed = load_bar_fixture(bar_path)
        bar_r = load_bar_r(bar_r_path)
    except (ValueError, OSError) as exc:
        cert.add("fixtures load", False, str(exc))
        return cert

    cert.add("bar generator count", len(built) == 56, f"{len(built)} generators")
    same_gens = dict(built.generators) == dict(listed.generators)
    cert.add("bar generators match listing", same_gens)
    same_arrows = built.arrows == listed.arrows
    cert.add(
        "bar arrows match listing",
        same_arrows,
        f"{len(built.arrows)} arrows" if same_arrows else _diff_arrows(built, listed),
    )
    rep = validate_dd(built)
    cert.add("bar satisfies DD relation", rep.ok, rep.summary())
    if not rep.ok:
        return cert
    rep_r = validate_dd(bar_r)
    cert.add("bar_r satisfies DD relation", rep_r.ok, rep_r.summary())
    cert.add("bar_r shape", (len(bar_r), len(bar_r.arrows)) == (24, 36), f"{len(bar_r)} generators, {len(bar_r.arrows)} arrows")
    cert.add("bar_r is reduced", not bar_r.identity_arrows())

    orders: list[tuple[str, int | None]] = [("default", None)] + [(f"seed {s}", s) for s in seeds]
    for label, seed in orders:
        try:
            red = reduce_dd(built, seed=seed, check=True)
        except ValueError as exc:
            cert.add(f"reduction ({label})", False, str(exc))
            continue
        iso = iso_dd(red, bar_r)
        cert.add(
            f"reduction ({label}) isomorphic to bar_r",
            iso is not None,
            f"{len(built)} -> {len(red)} generators, {len(red.arrows)} arrows",
        )
    return cert


def both_sided_arrows(d: DDStructure) -> list[Arrow]:
    return [a for a in d.arrows if a.left != ONE and a.right != ONE]
