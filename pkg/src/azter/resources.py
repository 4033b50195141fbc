"""Per-language resource bundles.

A bundle is described by a manifest, a ``key = value`` text file whose paths
are resolved relative to the manifest's directory::

    lang = en
    stopwords = stopwords.txt
    freq_table = freq.tsv
    freq_table.sha256 = 9f86d0...      # optional integrity check
    cefr = none                        # declared absent

Recognised resources: stopwords, connectives, irregular_verbs, cefr,
freq_table, lexnet, embeddings, syllabifier (+ syllable_exceptions) and
negators.  Lines starting with ``#`` are ignored in every resource file.
"""

from __future__ import annotations

import hashlib
import os
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .conllu import Sentence
from .syllables import Syllabifier, SyllabifierError

CONNECTIVE_CATEGORIES = ("causal", "logical", "adversative", "temporal", "conditional")
CEFR_LEVELS = ("A1", "A2", "B1", "B2", "C1")
RESOURCE_NAMES = (
    "stopwords", "connectives", "irregular_verbs", "cefr", "freq_table",
    "lexnet", "embeddings", "syllabifier", "syllable_exceptions", "negators",
)
RARE_THRESHOLD = 4.0

DATA_DIR = Path(__file__).parent / "data"


class ResourceError(Exception):
    pass


class ResourceLoadError(ResourceError):
    def __init__(self, path, message, line_no=None):
        self.path = str(path)
        self.line_no = line_no
        where = f"{path}:{line_no}" if line_no is not None else str(path)
        super().__init__(f"{where}: {message}")


class ResourceAbsentError(ResourceError):
    pass


@dataclass
class ResourceEntry:
    path: Path | None
    format: str | None = None
    sha256: str | None = None


@dataclass
class ResourceManifest:
    lang: str
    entries: dict[str, ResourceEntry]
    source: Path | None = None

    @classmethod
    def read(cls, path: str | Path) -> "ResourceManifest":
        path = Path(path)
        if path.is_dir():
            path = path / "manifest.txt"
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ResourceLoadError(path, f"cannot read manifest ({exc.strerror})") from None
        base = path.parent
        lang = None
        entries: dict[str, ResourceEntry] = {}
        extras: dict[str, dict[str, str]] = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ResourceLoadError(path, "expected key = value", line_no)
            key, value = key.strip(), value.strip()
            if key == "lang":
                lang = value
                continue
            name, dot, attr = key.partition(".")
            if name not in RESOURCE_NAMES:
                raise ResourceLoadError(path, f"unknown resource {name!r}", line_no)
            if dot:
                if attr not in ("format", "sha256"):
                    raise ResourceLoadError(path, f"unknown attribute {attr!r}", line_no)
                extras.setdefault(name, {})[attr] = value
            elif value.lower() in ("none", "-", ""):
                entries[name] = ResourceEntry(None)
            else:
                entries[name] = ResourceEntry(base / value)
        if not lang:
            raise ResourceLoadError(path, "manifest does not declare lang")
        for name, attrs in extras.items():
            entry = entries.setdefault(name, ResourceEntry(None))
            entry.format = attrs.get("format")
            entry.sha256 = attrs.get("sha256")
        return cls(lang, entries, path)

    def path_for(self, name: str) -> Path | None:
        entry = self.entries.get(name)
        return entry.path if entry is not None else None


def shipped_manifest(lang: str) -> Path:
    return DATA_DIR / lang / "manifest.txt"


def default_manifest(lang: str) -> Path:
    root = os.environ.get("AZTER_RESOURCES")
    if root:
        candidate = Path(root) / lang / "manifest.txt"
        if candidate.exists():
            return candidate
    return shipped_manifest(lang)


@dataclass
class LanguageProfile:
    lang_code: str
    stopwords: frozenset[str] = frozenset()
    connectives: dict[str, frozenset[str]] = field(default_factory=dict)
    irregular_verbs: frozenset[str] = frozenset()
    cefr: dict[tuple[str, str], str] | None = None
    cefr_any: dict[str, str] | None = None
    freq_table: dict[str, float] = field(default_factory=dict)
    lexnet: dict[tuple[str, str], tuple[int, int | None]] = field(default_factory=dict)
    embedding_index: dict[str, int] = field(default_factory=dict)
    embedding_matrix: np.ndarray | None = None
    syllabifier: Syllabifier | None = None
    negators: frozenset[str] = frozenset()
    present: frozenset[str] = frozenset()
    available_features: frozenset[str] = frozenset()
    _phrases: dict[tuple[str, ...], str] = field(default_factory=dict, repr=False)
    _max_phrase: int = 0

    def has(self, resource: str) -> bool:
        return resource in self.present

    @property
    def embedding_dim(self) -> int | None:
        if self.embedding_matrix is None:
            return None
        return self.embedding_matrix.shape[1]


def _iter_lines(path: Path):
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceLoadError(path, f"cannot read ({exc.strerror})") from None
    with fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield line_no, unicodedata.normalize("NFC", line)


def _check_sum(name: str, entry: ResourceEntry):
    if entry.sha256 is None:
        return
    try:
        digest = hashlib.sha256(entry.path.read_bytes()).hexdigest()
    except OSError as exc:
        raise ResourceLoadError(entry.path, f"cannot read ({exc.strerror})") from None
    if digest != entry.sha256.lower():
        raise ResourceLoadError(entry.path, f"{name} checksum mismatch")


def _read_wordlist(path: Path) -> frozenset[str]:
    return frozenset(line.strip().lower() for _, line in _iter_lines(path))


def _split(path, line_no, line, n):
    parts = line.split("\t")
    if len(parts) != n:
        raise ResourceLoadError(path, f"expected {n} tab-separated fields, found {len(parts)}", line_no)
    return parts


def _read_connectives(path: Path) -> dict[str, frozenset[str]]:
    cats: dict[str, set[str]] = {c: set() for c in CONNECTIVE_CATEGORIES}
    for line_no, line in _iter_lines(path):
        cat, phrase = _split(path, line_no, line, 2)
        cat = cat.strip().lower()
        if cat not in cats:
            raise ResourceLoadError(path, f"unknown connective category {cat!r}", line_no)
        phrase = " ".join(phrase.lower().split())
        if not phrase:
            raise ResourceLoadError(path, "empty connective phrase", line_no)
        cats[cat].add(phrase)
    return {c: frozenset(v) for c, v in cats.items()}


def _read_cefr(path: Path):
    by_pos: dict[tuple[str, str], str] = {}
    any_pos: dict[str, str] = {}
    for line_no, line in _iter_lines(path):
        form, upos, level = _split(path, line_no, line, 3)
        form, level = form.strip().lower(), level.strip().upper()
        if level not in CEFR_LEVELS:
            raise ResourceLoadError(path, f"unknown CEFR level {level!r}", line_no)
        upos = upos.strip().upper()
        prev = by_pos.get((form, upos))
        if prev is None or CEFR_LEVELS.index(level) < CEFR_LEVELS.index(prev):
            by_pos[(form, upos)] = level
        prev = any_pos.get(form)
        if prev is None or CEFR_LEVELS.index(level) < CEFR_LEVELS.index(prev):
            any_pos[form] = level
    return by_pos, any_pos


def _read_freq(path: Path) -> dict[str, float]:
    table = {}
    for line_no, line in _iter_lines(path):
        form, value = _split(path, line_no, line, 2)
        try:
            v = float(value)
        except ValueError:
            raise ResourceLoadError(path, f"non-numeric frequency {value!r}", line_no) from None
        if not np.isfinite(v):
            raise ResourceLoadError(path, "non-finite frequency", line_no)
        table.setdefault(form.lower(), v)
    return table


def _read_lexnet(path: Path):
    net = {}
    for line_no, line in _iter_lines(path):
        lemma, upos, senses, depth = _split(path, line_no, line, 4)
        try:
            n_senses = int(senses)
            n_depth = None if depth.strip() == "_" else int(depth)
        except ValueError:
            raise ResourceLoadError(path, "non-integer sense count or depth", line_no) from None
        if n_senses < 1 or (n_depth is not None and n_depth < 0):
            raise ResourceLoadError(path, "sense count must be >= 1 and depth >= 0", line_no)
        net[(lemma.lower(), upos.strip().upper())] = (n_senses, n_depth)
    return net


def _read_embeddings(path: Path):
    index: dict[str, int] = {}
    rows = []
    dim = None
    lines = _iter_lines(path)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise ResourceLoadError(path, "empty embeddings file") from None
    parts = header.split()
    try:
        declared_size, dim = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise ResourceLoadError(path, "header must be '<vocab_size> <dim>'", line_no) from None
    if dim < 1:
        raise ResourceLoadError(path, "dimension must be >= 1", line_no)
    for line_no, line in lines:
        parts = line.rstrip().split(" ")
        if len(parts) != dim + 1:
            raise ResourceLoadError(path, f"dimension mismatch: expected {dim} values, found {len(parts) - 1}", line_no)
        try:
            vec = [float(x) for x in parts[1:]]
        except ValueError:
            raise ResourceLoadError(path, "non-numeric vector component", line_no) from None
        if parts[0] not in index:
            index[parts[0]] = len(rows)
            rows.append(vec)
    if len(rows) != declared_size:
        raise ResourceLoadError(path, f"header declares {declared_size} vectors, file has {len(rows)}")
    matrix = np.asarray(rows, dtype=float).reshape(len(rows), dim)
    return index, matrix


def load_profile(manifest: ResourceManifest | str | Path, lang_code: str | None = None) -> LanguageProfile:
    """Load every resource named by ``manifest`` into an immutable profile."""
    from .features.catalog import CATALOG

    if not isinstance(manifest, ResourceManifest):
        manifest = ResourceManifest.read(manifest)
    lang = lang_code or manifest.lang
    if lang_code is not None and lang_code != manifest.lang:
        raise ResourceLoadError(manifest.source, f"manifest is for {manifest.lang!r}, not {lang_code!r}")

    def path(name):
        entry = manifest.entries.get(name)
        if entry is None or entry.path is None:
            return None
        if not entry.path.exists():
            raise ResourceLoadError(entry.path, f"{name} file does not exist")
        _check_sum(name, entry)
        return entry.path

    prof = LanguageProfile(lang_code=lang)
    present = set()
    if (p := path("stopwords")) is not None:
        prof.stopwords = _read_wordlist(p)
        present.add("stopwords")
    if (p := path("connectives")) is not None:
        prof.connectives = _read_connectives(p)
        present.add("connectives")
    if (p := path("irregular_verbs")) is not None:
        prof.irregular_verbs = _read_wordlist(p)
        present.add("irregular_verbs")
    if (p := path("cefr")) is not None:
        prof.cefr, prof.cefr_any = _read_cefr(p)
        present.add("cefr")
    if (p := path("freq_table")) is not None:
        prof.freq_table = _read_freq(p)
        present.add("freq_table")
    if (p := path("lexnet")) is not None:
        prof.lexnet = _read_lexnet(p)
        present.add("lexnet")
    if (p := path("embeddings")) is not None:
        prof.embedding_index, prof.embedding_matrix = _read_embeddings(p)
        present.add("embeddings")
    if (p := path("syllabifier")) is not None:
        exc = path("syllable_exceptions")
        try:
            prof.syllabifier = Syllabifier.from_files(p, exc)
        except SyllabifierError as err:
            raise ResourceLoadError(p, str(err)) from None
        present.add("syllabifier")
    if (p := path("negators")) is not None:
        prof.negators = _read_wordlist(p)
        present.add("negators")

    phrases = {}
    # first category in precedence order wins for duplicated phrases
    for cat in reversed(CONNECTIVE_CATEGORIES):
        for phrase in prof.connectives.get(cat, ()):
            phrases[tuple(phrase.split())] = cat
    prof._phrases = phrases
    prof._max_phrase = max((len(k) for k in phrases), default=0)
    prof.present = frozenset(present)
    prof.available_features = CATALOG.available_ids(lang, prof.present)
    return prof


def load_language(lang: str) -> LanguageProfile:
    return load_profile(default_manifest(lang), lang)


def word_log_frequency(p: LanguageProfile, form: str) -> float | None:
    return p.freq_table.get(form.lower())


def is_rare(p: LanguageProfile, form: str) -> bool:
    value = word_log_frequency(p, form)
    return value is None or value < RARE_THRESHOLD


def syllable_count(p: LanguageProfile, form: str) -> int:
    if p.syllabifier is None:
        raise ResourceAbsentError(f"profile {p.lang_code!r} has no syllabifier")
    return p.syllabifier.count(form)


def polysemy(p: LanguageProfile, lemma: str, upos: str) -> int | None:
    if upos not in ("NOUN", "VERB", "ADJ", "ADV"):
        raise ValueError(f"polysemy is defined for NOUN/VERB/ADJ/ADV, not {upos}")
    entry = p.lexnet.get((lemma.lower(), upos))
    return entry[0] if entry else None


def hypernym_depth(p: LanguageProfile, lemma: str, upos: str) -> int | None:
    if upos not in ("NOUN", "VERB"):
        raise ValueError(f"hypernym depth is defined for NOUN/VERB, not {upos}")
    entry = p.lexnet.get((lemma.lower(), upos))
    return entry[1] if entry else None


def embedding(p: LanguageProfile, form: str) -> np.ndarray | None:
    if p.embedding_matrix is None:
        return None
    i = p.embedding_index.get(form)
    if i is None:
        i = p.embedding_index.get(form.lower())
    if i is None:
        return None
    return p.embedding_matrix[i]


def match_connectives(p: LanguageProfile, sentence: Sentence) -> list[tuple[str, tuple[int, int]]]:
    """Greedy leftmost-longest match of connective phrases.

    Spans are half-open ``(start, end)`` offsets into ``sentence.words``.
    """
    tokens = [w.form.lower() for w in sentence.words]
    out = []
    i = 0
    n = len(tokens)
    while i < n:
        hit = None
        for length in range(min(p._max_phrase, n - i), 0, -1):
            cat = p._phrases.get(tuple(tokens[i:i + length]))
            if cat is not None:
                hit = (cat, (i, i + length))
                break
        if hit is None:
            i += 1
        else:
            out.append(hit)
            i = hit[1][1]
    return out


def cefr_level(p: LanguageProfile, form: str, upos: str | None = None) -> str | None:
    if p.cefr is None:
        raise ResourceAbsentError(f"profile {p.lang_code!r} has no CEFR resource")
    form = form.lower()
    if upos is not None:
        level = p.cefr.get((form, upos))
        if level is not None:
            return level
    return p.cefr_any.get(form)
