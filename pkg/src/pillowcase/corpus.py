"""Input loading and the bundled example corpus."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curves import compile_text
from .structures import FormatError, RightModule, direct_sum, parse_module

DATA = resources.files("pillowcase") / "data"


def data_path(name: str) -> Path:
    return Path(str(DATA / name))


def _sniff_kind(path: Path, text: str) -> str:
    if path.suffix in (".curve", ".mod", ".sum"):
        return path.suffix[1:]
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(("cyclic:", "linear:")):
            return "curve"
        if line.startswith(("gen ", "act ", "m1 ")):
            return "mod"
        return "sum"
    raise FormatError("empty input", source=str(path))


def load_module(path: str | Path) -> RightModule:
    """Load a curve word (compiled), a module file, or a direct-sum manifest."""
    path = Path(path)
    text = path.read_text()
    kind = _sniff_kind(path, text)
    if kind == "curve":
        return compile_text(text, name=path.stem)
    if kind == "mod":
        return parse_module(text, name=path.stem, source=str(path))  # type: ignore[return-value]
    parts = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sub = path.parent / line
        if not sub.exists():
            raise FormatError(f"summand {line!r} not found", no, str(path))
        parts.append(load_module(sub))
    if not parts:
        raise FormatError("manifest lists no summands", source=str(path))
    return direct_sum(parts, name=path.stem)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str  # "curve" | "module" | "sum"
    filename: str
    expected_rank: int | None = None  # against the trivial-tangle curve, where known
    note: str = ""

    @property
    def path(self) -> Path:
        return data_path(self.filename)

    def load(self) -> RightModule:
        return load_module(self.path)


TRIVIAL_TANGLE = "lnat.mod"

CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("lnat-curve", "curve", "lnat.curve"),
    CorpusEntry("belt-curve", "curve", "belt.curve"),
    CorpusEntry("unknot-curve", "curve", "unknot.curve", 1),
    CorpusEntry("trefoil-curve", "curve", "trefoil.curve", 3),
    CorpusEntry("r0-curve", "curve", "r0.curve", 1),
    CorpusEntry("r1-curve", "curve", "r1.curve", 4),
    CorpusEntry("lnat", "module", "lnat.mod"),
    CorpusEntry("belt", "module", "belt.mod"),
    CorpusEntry("unknot", "module", "unknot.mod", 1),
    CorpusEntry("trefoil", "module", "trefoil.mod", 3),
    CorpusEntry("r0", "module", "r0.mod", 1),
    CorpusEntry("r1", "module", "r1.mod", 4),
    CorpusEntry("r4", "module", "r4.mod", 4),
    CorpusEntry("T(3,4)", "sum", "t34.sum", 5, "R3 replaced by R0"),
    CorpusEntry("T(3,7)", "sum", "t37.sum", 9),
    CorpusEntry("T(5,11)", "sum", "t511.sum", 17),
)

# Modules kept to show where the printed data is inconsistent.
PRINTED_VARIANTS: tuple[CorpusEntry, ...] = (
    CorpusEntry("belt-printed", "module", "belt_printed.mod", note="fails the A-infinity check"),
    CorpusEntry("r4-printed", "module", "r4_printed.mod", 4, "four idempotent-inconsistent actions"),
)


def rank_checks() -> list[CorpusEntry]:
    """Entries whose rank against the trivial tangle is stated, module files only."""
    return [e for e in CORPUS if e.expected_rank is not None and e.kind != "curve"]


def trivial_tangle() -> RightModule:
    return load_module(data_path(TRIVIAL_TANGLE))
