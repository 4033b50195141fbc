from __future__ import annotations

import math
from typing import Iterable, Sequence

from ..conllu import Document, Word

CONTENT_POS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV"})
POS_SHORT = {"noun": "NOUN", "verb": "VERB", "adj": "ADJ", "adv": "ADV"}


def incidence(count: int, total_words: int) -> float | None:
    if total_words < 1:
        return None
    return 1000.0 * count / total_words


def ratio(num: float, den: float) -> float | None:
    if den == 0:
        return None
    return num / den


def mean(values: Sequence[float]) -> float | None:
    if not values:
        return None
    return math.fsum(values) / len(values)


def pstdev(values: Sequence[float]) -> float | None:
    """Population standard deviation (divides by n)."""
    if not values:
        return None
    m = math.fsum(values) / len(values)
    return math.sqrt(math.fsum((v - m) ** 2 for v in values) / len(values))


def letters(s: str) -> int:
    return sum(1 for ch in s if ch.isalpha())


def has_letter(s: str) -> bool:
    return any(ch.isalpha() for ch in s)


def words(d: Document) -> list[Word]:
    """Document words excluding punctuation tokens."""
    return [w for w in d.words() if not w.is_punct]


def is_content(w: Word) -> bool:
    return w.upos in CONTENT_POS


def finite_or_none(value):
    if value is None:
        return None
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return None
    return value


def count_if(items: Iterable, pred) -> int:
    return sum(1 for x in items if pred(x))
