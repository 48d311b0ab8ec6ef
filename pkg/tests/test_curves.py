from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pillowcase.corpus import data_path, load_module
from pillowcase.curves import (
    CHART,
    CurveError,
    CurveWord,
    basic_path,
    compile_text,
    compile_word,
    is_normal,
    normalize,
    parse_word,
)
from pillowcase.structures import Action, module_isomorphism, validate_ainfty

LNAT = data_path("lnat.curve").read_text()
CYCLIC = ["lnat.curve", "belt.curve", "r1.curve"]


def test_basic_paths():
    assert basic_path("B1", "i0", "i2") == ("i0", ("eta1", "xi1"))
    assert basic_path("B1", "j2", "i1") == ("i1", ("xi1", "rho2"))
    assert basic_path("B4", "j2", "i2") == ("i2", ("xi2",))
    with pytest.raises(CurveError):
        basic_path("B2", "i0", "i0")
    with pytest.raises(CurveError):
        basic_path("B2", "i0", "j1")


def test_lnat_compiles_to_the_reference_module():
    m = compile_text(LNAT)
    assert (len(m.generators), len(m.actions)) == (6, 8)
    assert Action("z", ("eta1", "xi12"), "s") in m.actions
    assert Action("t", ("eta23",), "x") in m.actions
    assert module_isomorphism(m, load_module(data_path("lnat.mod"))) is not None


def test_unknot_arc():
    m = compile_text(data_path("unknot.curve").read_text())
    assert (len(m.generators), len(m.actions)) == (2, 1)


def test_belt_composites():
    m = compile_text(data_path("belt.curve").read_text())
    assert len(m.actions) == 7
    assert Action("w", ("xi23", "eta3"), "x") in m.actions
    assert validate_ainfty(m).ok


@pytest.mark.parametrize("name", ["trefoil", "r0", "r1", "belt", "unknot"])
def test_curve_words_reproduce_module_files(name):
    compiled = compile_text(data_path(f"{name}.curve").read_text())
    assert module_isomorphism(compiled, load_module(data_path(f"{name}.mod"))) is not None


@pytest.mark.parametrize("name", CYCLIC)
def test_rotation_does_not_change_the_module(name):
    w = parse_word(data_path(name).read_text())
    base = compile_word(w)
    for k in range(len(w)):
        assert module_isomorphism(compile_word(w.rotate(k)), base) is not None


def test_normalize_removes_backtracking():
    w = normalize(parse_word("linear: B1 j2 B4 j2 B1 i0 B2 j0 B1"))
    assert str(w) == "linear: B1 i0:g2 B2 j0:g3 B1"


def _with_fingers(w: CurveWord, rnd: random.Random, count: int) -> CurveWord:
    """Insert ``count`` back-and-forth crossings at random spots of a linear word."""
    doms, arcs, labs = list(w.domains), list(w.arcs), list(w.labels)
    for n in range(count):
        k = rnd.randrange(len(doms))
        d = doms[k]
        arc = rnd.choice(CHART[d][0])
        other = next(x for x in CHART if x != d and arc in CHART[x][0])
        doms[k + 1 : k + 1] = [other, d]
        arcs[k:k] = [arc, arc]
        labs[k:k] = [f"f{n}a", f"f{n}b"]
    return CurveWord("linear", tuple(doms), tuple(arcs), tuple(labs))


@given(st.sampled_from(["trefoil.curve", "r0.curve", "unknot.curve"]), st.integers(0, 10**6), st.integers(1, 4))
def test_normalization_is_confluent(name, seed, fingers):
    w = parse_word(data_path(name).read_text())
    rnd = random.Random(seed)
    dirty = _with_fingers(w, rnd, fingers)
    assert not is_normal(dirty)
    first = normalize(dirty)
    other = normalize(dirty, rng=random.Random(seed + 1))
    assert is_normal(first)
    assert module_isomorphism(compile_word(first), compile_word(other)) is not None
    assert module_isomorphism(compile_word(first), compile_word(w)) is not None


def test_compile_rejects_unnormalized_words():
    with pytest.raises(CurveError, match="normalized"):
        compile_word(parse_word("linear: B1 j2 B4 j2 B1 i0 B2"))


def test_cyclic_word_can_vanish():
    with pytest.raises(CurveError):
        normalize(parse_word("cyclic: B1 j2 B4 j2"))


@pytest.mark.parametrize(
    "text, pattern",
    [
        ("B1 j2 B4", "must start"),
        ("cyclic: B1 q9", "line 1: expected an arc"),
        ("cyclic:\nB1 j2\nB4 zz", "line 3: expected an arc"),
        ("linear: B1 j2", "starts and ends"),
        ("cyclic: B1 j2 B1 i2", "does not separate"),
        ("linear: B1 i0:a B2 j0:a B1", "duplicate"),
    ],
)
def test_bad_words(text, pattern):
    with pytest.raises(CurveError, match=pattern):
        compile_text(text)


def test_labels_survive_parsing():
    w = parse_word(LNAT)
    assert w.generator_names() == ["s", "w", "z", "x", "y", "t"]
    assert parse_word(str(w)) == w
