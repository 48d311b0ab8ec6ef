from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import left_bracket, pairing_arrow_set, right_bracket

from pillowcase import corpus
from pillowcase.bar import build_bar, builtin_bar_r, canonical_bar_name
from pillowcase.f2linear import kernel_dim, rank
from pillowcase.pairing import build_pairing, intersection_number, mixed_chains, pair_rank
from pillowcase.structures import ONE, DDStructure, direct_sum, dualize, parse_module

LNAT = corpus.trivial_tangle()
LNAT_DUAL = dualize(LNAT)
BAR = build_bar()


def load(name: str):
    return corpus.load_module(corpus.data_path(name))


@pytest.mark.parametrize("entry", corpus.CORPUS, ids=lambda e: e.name)
@pytest.mark.parametrize("which", ["bar_r", "bar"])
def test_both_bracketings_agree_with_pairing(entry, which):
    dd = builtin_bar_r() if which == "bar_r" else BAR
    m = entry.load()
    cx = build_pairing(m, LNAT_DUAL, dd)
    arrows = pairing_arrow_set(cx)
    assert arrows == set(left_bracket(m, dd, LNAT_DUAL))
    assert arrows == set(right_bracket(m, dd, LNAT_DUAL))


@pytest.mark.parametrize("entry", corpus.CORPUS, ids=lambda e: e.name)
def test_differential_squares_to_zero(entry):
    for dd in (builtin_bar_r(), BAR):
        d = build_pairing(entry.load(), LNAT_DUAL, dd, check=False).boundary
        assert (d @ d).is_zero()


def test_unknot_complex():
    cx = build_pairing(load("unknot.mod"), LNAT_DUAL)
    assert (len(cx), len(cx.arrows)) == (13, 12)
    assert rank(cx.boundary) == 6
    assert kernel_dim(cx.boundary) == 7
    assert cx.homology_rank() == 1


def test_trefoil_complex():
    cx = build_pairing(load("trefoil.mod"), LNAT_DUAL)
    assert (len(cx), len(cx.arrows)) == (15, 10)
    assert cx.homology_rank() == 3


def test_belt_complex_contains_the_composite_arrows():
    cx = build_pairing(load("belt.mod"), LNAT_DUAL)
    arrows = {(str(cx.generators[s]), str(cx.generators[t])) for s, t in cx.arrows}
    target = f"x|{canonical_bar_name('b(-eta3,-xi3,-rho2,-xi1)')}|t*"
    assert (f"s|{canonical_bar_name('b(-rho2,-xi1)')}|t*", target) in arrows
    assert (f"x|{canonical_bar_name('b(-eta3,-xi3)')}|s*", target) in arrows


@pytest.mark.parametrize("entry", [e for e in corpus.CORPUS if e.kind != "sum"], ids=lambda e: e.name)
def test_unreduced_bar_gives_the_same_rank(entry):
    m = entry.load()
    assert pair_rank(m, LNAT, BAR) == pair_rank(m, LNAT)


SUMMANDS = ["unknot.mod", "trefoil.mod", "r0.mod", "r1.mod", "r4.mod", "belt.mod"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(SUMMANDS), min_size=1, max_size=4), st.sampled_from(["lnat.mod", "belt.mod", "r1.mod"]))
def test_rank_is_additive_over_direct_sums(parts, other):
    mods = [load(p) for p in parts]
    m0 = load(other)
    assert pair_rank(direct_sum(mods), m0) == sum(pair_rank(m, m0) for m in mods)


def test_intersection_number():
    r1 = load("r1.mod")
    assert intersection_number(r1, LNAT, periodic=False) == 4
    assert intersection_number(r1, LNAT, periodic=True) == 2
    with pytest.raises(ValueError, match="periodic"):
        intersection_number(load("unknot.mod"), LNAT, periodic=True)


def test_two_sided_dd_arrows_are_refused():
    dd = DDStructure.build({"a": ("i1", "j2"), "b": ("i2", "i2")}, [("a", "xi1", "b", "xi2")])
    with pytest.raises(ValueError, match="both sides"):
        build_pairing(LNAT, LNAT_DUAL, dd)


def test_bar_r_has_no_two_sided_arrows():
    assert all(a.left == ONE or a.right == ONE for a in builtin_bar_r().arrows)


def test_mixed_chains_exist_but_do_not_reach_the_complex():
    # Chains emitting on both sides occur, and some have nonzero products on
    # both sides; they still drop out because one of the two modules is fed a
    # unit next to a non-unit input.  The bracketing tests above check this.
    chains = list(mixed_chains(max_len=5))
    assert len(chains) == 128
    assert sum(1 for _, lp, rp in chains if lp is not None and rp is not None) == 20


def test_module_differential_enters_the_complex():
    # two copies of the unknot arc joined by an m1 arrow: homology cancels
    text = load("unknot.mod")
    gens = {}
    acts = []
    for k in (0, 1):
        gens.update({f"{g}{k}": i for g, i in text.generators.items()})
        acts += [(f"{a.src}{k}", a.inputs, f"{a.tgt}{k}") for a in text.actions]
    m1 = [(f"{g}0", f"{g}1") for g in text.generators]
    lines = [f"gen {g} {i}" for g, i in gens.items()]
    lines += [f"act {s} | {' '.join(ins)} -> {t}" for s, ins, t in acts]
    lines += [f"m1 {s} -> {t}" for s, t in m1]
    m = parse_module("\n".join(lines))
    assert pair_rank(m, LNAT) == 0


def test_dump_is_deterministic():
    a = build_pairing(load("trefoil.mod"), LNAT_DUAL).dump_lines()
    b = build_pairing(load("trefoil.mod"), LNAT_DUAL).dump_lines()
    assert a == b
    assert sum(line.startswith("gen ") for line in a) == 15
