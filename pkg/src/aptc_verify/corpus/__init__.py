"""Bundled pattern corpus.

Each entry pairs an ``.aptc`` file with its default parameters and the verdict
it is expected to reach. The manifest lives next to the files in
``index.json``.

API highlights:
- entries(filter="all") -> list of CorpusEntry, in manifest order
- get_entry(id) -> CorpusEntry (raises UnknownEntryError)
- load(id, params=None) -> PatternSpec
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..core.errors import UnknownEntryError, ValidationError, Diagnostic
from ..core.logs import get_logger
from ..dsl import PatternSpec, parse_file

CORPUS_DIR = Path(__file__).resolve().parent
INDEX_PATH = CORPUS_DIR / "index.json"

LOGGER = get_logger("aptc_dsl", "dsl.log")


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    chapter: int
    path: str
    params: Dict[str, int] = field(default_factory=dict)
    expected: bool = True
    notes: str = ""
    # source name -> name used in the .aptc file
    alphabet: Dict[str, str] = field(default_factory=dict)

    @property
    def file(self) -> Path:
        return CORPUS_DIR / self.path

    @property
    def is_mutant(self) -> bool:
        return self.path.startswith("mutants/")

    @property
    def is_composition(self) -> bool:
        return self.id.startswith("composition-")

    def to_dict(self) -> Dict:
        return {"id": self.id, "chapter": self.chapter, "path": self.path, "params": dict(self.params),
                "expected": self.expected, "notes": self.notes, "alphabet": dict(self.alphabet)}


@lru_cache(maxsize=1)
def _index() -> Tuple[CorpusEntry, ...]:
    with open(INDEX_PATH, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    loaded = []
    for raw in data.get("entries", []):
        loaded.append(CorpusEntry(
            id=raw["id"],
            chapter=int(raw["chapter"]),
            path=raw["path"],
            params=dict(raw.get("params") or {}),
            expected=bool(raw.get("expected", True)),
            notes=raw.get("notes", ""),
            alphabet=dict(raw.get("alphabet") or {}),
        ))
    ids = [e.id for e in loaded]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValidationError([Diagnostic("error", f"duplicate corpus ids: {', '.join(dupes)}")])
    return tuple(loaded)


def _matches(entry: CorpusEntry, filter: str) -> bool:
    if filter in ("", "all"):
        return True
    if filter == "mutant":
        return entry.is_mutant
    if filter == "composition":
        return entry.is_composition
    if filter.startswith("chapter="):
        try:
            return entry.chapter == int(filter.split("=", 1)[1])
        except ValueError:
            raise ValidationError([Diagnostic("error", f"bad corpus filter {filter!r}: chapter must be an integer")])
    return filter in entry.id


def entries(filter: str = "all") -> List[CorpusEntry]:
    """Entries selected by ``all``, ``chapter=N``, ``composition``, ``mutant`` or an id substring."""
    return [e for e in _index() if _matches(e, filter.strip())]


def get_entry(entry_id: str) -> CorpusEntry:
    for entry in _index():
        if entry.id == entry_id:
            return entry
    raise UnknownEntryError(f"unknown corpus entry '{entry_id}'")


def load(entry_id: str, params: Optional[Dict[str, int]] = None) -> PatternSpec:
    """Parse an entry's file; ``params`` override the entry defaults."""
    entry = get_entry(entry_id)
    merged = {**entry.params, **(params or {})}
    LOGGER.info("corpus.load entry=%s params=%s", entry_id, merged)
    return parse_file(str(entry.file), merged)
