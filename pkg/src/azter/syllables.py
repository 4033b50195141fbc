"""Rule-driven syllable counting.

Rule files are UTF-8 ``key = value`` lines (``#`` starts a comment)::

    vowels = a e i o u
    semivowels = y          # vowel unless word-initial or before a vowel
    join = ai au ei eu      # adjacent vowel pairs that share one nucleus
    split = ea eo           # adjacent vowel pairs that always start a new nucleus
    default = join          # what to do with any other adjacent vowel pair
    silent_final_e = no     # English-style mute final <e>
    silent_final_es = no    # ... and mute <es>/<ed> endings

Every maximal vowel run is split into nuclei pair by pair; the syllable count
is the number of nuclei (at least 1).  The exceptions dictionary is consulted
before the rules.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path


class SyllabifierError(ValueError):
    pass


@dataclass
class Syllabifier:
    vowels: frozenset[str]
    semivowels: frozenset[str] = frozenset()
    join: frozenset[str] = frozenset()
    split: frozenset[str] = frozenset()
    default_join: bool = True
    silent_final_e: bool = False
    silent_final_es: bool = False
    exceptions: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_files(cls, rules_path: str | Path, exceptions_path: str | Path | None = None) -> "Syllabifier":
        opts = parse_rules(Path(rules_path).read_text(encoding="utf-8"), str(rules_path))
        exc = {}
        if exceptions_path is not None:
            exc = read_exceptions(exceptions_path)
        return cls(exceptions=exc, **opts)

    def count(self, form: str) -> int:
        word = unicodedata.normalize("NFC", form.lower())
        if not any(ch.isalpha() for ch in word):
            raise SyllabifierError(f"{form!r} contains no letters")
        hit = self.exceptions.get(word)
        if hit is not None:
            return hit
        letters = [ch for ch in word if ch.isalpha()]
        return max(1, self._rule_count(letters))

    def _is_vowel(self, letters: list[str], i: int) -> bool:
        ch = letters[i]
        if ch in self.vowels:
            return True
        if ch in self.semivowels:
            if i == 0:
                return False
            nxt = letters[i + 1] if i + 1 < len(letters) else None
            return not (nxt is not None and nxt in self.vowels)
        return False

    def _rule_count(self, letters: list[str]) -> int:
        flags = [self._is_vowel(letters, i) for i in range(len(letters))]
        nuclei = 0
        i = 0
        n = len(letters)
        last_nucleus_start = -1
        while i < n:
            if not flags[i]:
                i += 1
                continue
            nuclei += 1
            last_nucleus_start = i
            j = i
            while j + 1 < n and flags[j + 1]:
                pair = letters[j] + letters[j + 1]
                if pair in self.split or (pair not in self.join and not self.default_join):
                    nuclei += 1
                    last_nucleus_start = j + 1
                j += 1
            i = j + 1
        if nuclei > 1 and self.silent_final_e:
            if letters[-1] == "e" and last_nucleus_start == n - 1:
                # consonant + "le" is syllabic, as in "table"
                if not (n >= 3 and letters[-2] == "l" and not flags[-3]):
                    nuclei -= 1
            elif self.silent_final_es and n >= 3 and last_nucleus_start == n - 2 \
                    and letters[-2] == "e" and not flags[-3]:
                keep = {"s": "szxcgh", "d": "td"}.get(letters[-1])
                if keep is not None and letters[-3] not in keep:
                    nuclei -= 1
        return nuclei


def _bool(value: str, where: str) -> bool:
    v = value.strip().lower()
    if v in ("yes", "true", "1", "on"):
        return True
    if v in ("no", "false", "0", "off"):
        return False
    raise SyllabifierError(f"{where}: expected yes/no, got {value!r}")


def parse_rules(text: str, where: str = "<rules>") -> dict:
    opts: dict = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SyllabifierError(f"{where}:{line_no}: expected key = value")
        key = key.strip()
        items = frozenset(unicodedata.normalize("NFC", v) for v in value.split())
        loc = f"{where}:{line_no}"
        if key in ("vowels", "semivowels"):
            if any(len(v) != 1 for v in items):
                raise SyllabifierError(f"{loc}: {key} must be single letters")
            opts[key] = items
        elif key in ("join", "split"):
            if any(len(v) != 2 for v in items):
                raise SyllabifierError(f"{loc}: {key} entries must be letter pairs")
            opts[key] = items
        elif key == "default":
            v = value.strip().lower()
            if v not in ("join", "split"):
                raise SyllabifierError(f"{loc}: default must be join or split")
            opts["default_join"] = v == "join"
        elif key in ("silent_final_e", "silent_final_es"):
            opts[key] = _bool(value, loc)
        else:
            raise SyllabifierError(f"{loc}: unknown key {key!r}")
    if not opts.get("vowels"):
        raise SyllabifierError(f"{where}: no vowels declared")
    return opts


def read_exceptions(path: str | Path) -> dict[str, int]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise SyllabifierError(f"{path}:{line_no}: expected form<TAB>count")
            try:
                count = int(parts[1])
            except ValueError:
                raise SyllabifierError(f"{path}:{line_no}: non-integer count {parts[1]!r}") from None
            if count < 1:
                raise SyllabifierError(f"{path}:{line_no}: count must be >= 1")
            out[unicodedata.normalize("NFC", parts[0].lower())] = count
    return out
