"""CoNLL-U ingestion into the Document / Paragraph / Sentence / Word model.

Multiword-token range lines ("3-4") are kept on the sentence for surface text
only; empty nodes ("5.1") are skipped.  Paragraphs follow ``# newpar`` (and
``# newdoc``) comments; without any such marker the whole file is one
paragraph unless a raw text with blank-line-separated blocks is supplied.
"""

from __future__ import annotations

import io
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})


class ConlluError(ValueError):
    """Base class for ingestion failures."""


class ConlluFormatError(ConlluError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class EmptyDocumentError(ConlluError):
    pass


@dataclass(frozen=True)
class Word:
    index: int
    form: str
    lemma: str
    upos: str
    feats: dict[str, str] = field(default_factory=dict)
    head: int = 0
    deprel: str = "_"
    xpos: str = "_"
    deps: str = "_"
    misc: str = "_"

    @property
    def is_punct(self) -> bool:
        return self.upos == "PUNCT"

    @property
    def base_deprel(self) -> str:
        return self.deprel.split(":", 1)[0]

    @property
    def lower(self) -> str:
        return self.form.lower()

    @property
    def lemma_lower(self) -> str:
        # some parsers leave the lemma empty
        if self.lemma in ("", "_") and self.form != "_":
            return self.form.lower()
        return self.lemma.lower()

    def __hash__(self):
        return hash((self.index, self.form, self.head, self.deprel))


@dataclass
class MultiwordToken:
    start: int
    end: int
    form: str


@dataclass
class Sentence:
    words: list[Word]
    sent_id: str | None = None
    text: str | None = None
    multiword: list[MultiwordToken] = field(default_factory=list)

    def __len__(self):
        return len(self.words)

    def surface(self) -> str:
        """Space-joined surface tokens, multiword ranges collapsed."""
        covered = {}
        for m in self.multiword:
            covered[m.start] = m
        out = []
        skip_to = 0
        for w in self.words:
            if w.index <= skip_to:
                continue
            m = covered.get(w.index)
            if m is not None:
                out.append(m.form)
                skip_to = m.end
            else:
                out.append(w.form)
        return " ".join(out)

    def children(self) -> dict[int, list[Word]]:
        kids: dict[int, list[Word]] = {w.index: [] for w in self.words}
        kids[0] = []
        for w in self.words:
            kids.setdefault(w.head, []).append(w)
        return kids

    def root(self) -> Word | None:
        for w in self.words:
            if w.head == 0:
                return w
        return None


@dataclass
class Paragraph:
    sentences: list[Sentence]

    def words(self) -> Iterator[Word]:
        for s in self.sentences:
            yield from s.words


@dataclass
class Document:
    paragraphs: list[Paragraph]
    doc_id: str = ""

    @property
    def sentences(self) -> list[Sentence]:
        return [s for p in self.paragraphs for s in p.sentences]

    def words(self) -> Iterator[Word]:
        for p in self.paragraphs:
            yield from p.words()

    @property
    def word_count(self) -> int:
        return sum(len(s.words) for p in self.paragraphs for s in p.sentences)

    def __add__(self, other: "Document") -> "Document":
        return Document(self.paragraphs + other.paragraphs, self.doc_id)


def _parse_feats(raw: str, line_no: int) -> dict[str, str]:
    if raw == "_" or raw == "":
        return {}
    feats = {}
    for item in raw.split("|"):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConlluFormatError(line_no, f"malformed FEATS item {item!r}")
        feats[key] = value
    return feats


def _as_text(stream) -> Iterable[str]:
    if isinstance(stream, bytes):
        return io.StringIO(stream.decode("utf-8"))
    if isinstance(stream, str):
        return io.StringIO(stream)
    if isinstance(stream, io.TextIOBase):
        return stream
    # binary file-like
    return io.TextIOWrapper(stream, encoding="utf-8")


def parse_conllu(stream: bytes | str | IO, doc_id: str = "", raw_text: str | None = None) -> Document:
    """Parse a CoNLL-U stream into a Document.

    ``raw_text`` is only consulted when the input has no ``# newpar`` /
    ``# newdoc`` markers; its blank-line-separated blocks then define the
    paragraph boundaries.
    """
    groups: list[list[Sentence]] = [[]]
    saw_marker = False
    words: list[Word] = []
    mwts: list[MultiwordToken] = []
    meta: dict[str, str] = {}
    pending_break = False

    def flush():
        nonlocal words, mwts, meta, pending_break
        if not words:
            if mwts:
                raise ConlluFormatError(line_no, "multiword token without words")
            return
        if pending_break and groups[-1]:
            groups.append([])
        pending_break = False
        groups[-1].append(Sentence(words, meta.get("sent_id"), meta.get("text"), mwts))
        words, mwts, meta = [], [], {}

    line_no = 0
    for line_no, line in enumerate(_as_text(stream), start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("newpar") or body.startswith("newdoc"):
                saw_marker = True
                if words:
                    flush()
                pending_break = True
            else:
                key, sep, value = body.partition("=")
                if sep:
                    meta[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluFormatError(line_no, f"expected 10 tab-separated columns, found {len(cols)}")
        tid = cols[0]
        if "." in tid:
            continue
        if "-" in tid:
            a, _, b = tid.partition("-")
            try:
                mwts.append(MultiwordToken(int(a), int(b), cols[1]))
            except ValueError:
                raise ConlluFormatError(line_no, f"malformed range id {tid!r}") from None
            continue
        try:
            index = int(tid)
        except ValueError:
            raise ConlluFormatError(line_no, f"non-integer id {tid!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluFormatError(line_no, f"non-integer head {cols[6]!r}") from None
        words.append(Word(
            index=index, form=cols[1], lemma=cols[2], upos=cols[3],
            feats=_parse_feats(cols[5], line_no), head=head, deprel=cols[7],
            xpos=cols[4], deps=cols[8], misc=cols[9],
        ))
    flush()

    sentences = [s for g in groups for s in g]
    if not sentences:
        raise EmptyDocumentError(f"document {doc_id!r} contains no sentences")
    if not saw_marker and raw_text is not None:
        aligned = _align_paragraphs(sentences, raw_text)
        if aligned is not None:
            groups = aligned
    paragraphs = [Paragraph(g) for g in groups if g]
    return Document(paragraphs, doc_id)


def read_conllu(path: str | Path, doc_id: str | None = None) -> Document:
    path = Path(path)
    raw = None
    txt = path.with_suffix(".txt")
    if txt.exists():
        raw = txt.read_text(encoding="utf-8")
    with open(path, "rb") as fh:
        return parse_conllu(fh.read(), doc_id if doc_id is not None else path.stem, raw_text=raw)


_WS = re.compile(r"\s+")


def _align_paragraphs(sentences: list[Sentence], raw_text: str) -> list[list[Sentence]] | None:
    """Assign sentences to raw-text blocks by whitespace-insensitive matching.

    Returns None when the sentences cannot be laid over the blocks in order.
    """
    blocks = [_WS.sub("", b) for b in re.split(r"\n[ \t]*\n", clean_text(raw_text))]
    blocks = [b for b in blocks if b]
    groups: list[list[Sentence]] = []
    i = 0
    for block in blocks:
        group = []
        pos = 0
        while i < len(sentences) and pos < len(block):
            s = sentences[i]
            surf = _WS.sub("", s.text if s.text else s.surface())
            if not block.startswith(surf, pos):
                return None
            pos += len(surf)
            group.append(s)
            i += 1
        if group:
            groups.append(group)
    if i != len(sentences):
        return None
    return groups


_BLANK_RUN = re.compile(r"\n[ \t]*\n(?:[ \t]*\n)+")


def clean_text(raw: str) -> str:
    """Drop control characters (keeping newline and tab), NFC-normalize and
    collapse runs of blank lines into a single paragraph separator."""
    text = "".join(
        ch for ch in raw
        if ch in "\n\t" or unicodedata.category(ch) != "Cc"
    )
    text = unicodedata.normalize("NFC", text)
    return _BLANK_RUN.sub("\n\n", text)


@dataclass(frozen=True)
class Violation:
    sentence: int
    sent_id: str | None
    rule: str
    message: str


def validate_document(d: Document) -> list[Violation]:
    out: list[Violation] = []
    if not d.paragraphs:
        out.append(Violation(-1, None, "empty document", "document has no paragraphs"))
    sent_no = 0
    for p in d.paragraphs:
        if not p.sentences:
            out.append(Violation(sent_no, None, "empty paragraph", "paragraph has no sentences"))
        for s in p.sentences:
            out.extend(_validate_sentence(s, sent_no))
            sent_no += 1
    return out


def _validate_sentence(s: Sentence, n: int) -> list[Violation]:
    out = []

    def bad(rule, msg):
        out.append(Violation(n, s.sent_id, rule, msg))

    if not s.words:
        bad("empty sentence", "sentence has no words")
        return out
    indices = [w.index for w in s.words]
    if any(i < 1 for i in indices):
        bad("index", "word index below 1")
    if len(set(indices)) != len(indices):
        bad("index", "duplicate word index")
    known = set(indices)
    heads = {}
    for w in s.words:
        if w.upos not in UPOS_TAGS:
            bad("upos", f"word {w.index}: unknown UPOS {w.upos!r}")
        if w.head != 0 and w.head not in known:
            bad("head", f"word {w.index}: head {w.head} does not exist")
        elif w.head == w.index:
            bad("cycle", f"word {w.index} is its own head")
        else:
            heads[w.index] = w.head
    roots = [w.index for w in s.words if w.head == 0]
    if len(roots) > 1:
        bad("multiple roots", f"words {roots} all attach to 0")
    elif not roots:
        bad("no root", "no word attaches to 0")

    # each cycle reported once, keyed on its smallest member
    state: dict[int, int] = {}
    seen_cycles = set()
    for start in heads:
        path = []
        cur = start
        while cur in heads and state.get(cur) is None:
            state[cur] = 1
            path.append(cur)
            cur = heads[cur]
        if cur in heads and state.get(cur) == 1 and cur in path:
            cycle = path[path.index(cur):]
            key = min(cycle)
            if key not in seen_cycles:
                seen_cycles.add(key)
                bad("cycle", "head cycle through words " + "->".join(map(str, cycle)))
        for node in path:
            state[node] = 2
    return out
