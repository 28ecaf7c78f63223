"""Desired-property lexicon and prose scoring.

A property (say "speed of execution") is described by stemmed synonym and
antonym term sets. A post's prose scores a property as total synonym
frequency minus total antonym frequency; raw counts, no normalization, and
no negation handling ("not efficient" counts as "efficient"). Every snippet
in a post inherits the post's scores.
"""

from __future__ import annotations

import enum
import hashlib
import json
import re
from dataclasses import dataclass

from .errors import ConfigurationError
from .fingerprint import CodeSnippet
from .stemming import stem
from .storage import canonical_dumps

ScoreVector = dict[str, int]

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")
_ALPHA_RE = re.compile(r"^[a-z]+$")


class PropertyCategory(str, enum.Enum):
    ALGORITHMIC = "algorithmic"
    RESOURCE_ORIENTED = "resource_oriented"
    DICTION = "diction"


@dataclass(frozen=True)
class PropertyEntry:
    name: str
    category: PropertyCategory
    synonyms: frozenset[str]
    antonyms: frozenset[str]

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigurationError("property name must be nonempty")
        if not self.synonyms:
            raise ConfigurationError(
                f"property {self.name!r} needs at least one synonym"
            )
        overlap = self.synonyms & self.antonyms
        if overlap:
            raise ConfigurationError(
                f"property {self.name!r}: terms listed as both synonym and "
                f"antonym: {sorted(overlap)}"
            )
        # Terms are compared against stemmed prose tokens, so entries must
        # hold stems. Stemming is not idempotent, so the strongest cheap
        # check is the token shape; from_raw is the safe constructor.
        for term in self.synonyms | self.antonyms:
            if not term or not _ALPHA_RE.match(term):
                raise ConfigurationError(
                    f"property {self.name!r}: term {term!r} must be a single "
                    f"lowercase alphabetic word; build entries via from_raw"
                )

    @classmethod
    def from_raw(
        cls,
        name: str,
        category: PropertyCategory | str,
        synonyms,
        antonyms,
    ) -> "PropertyEntry":
        """Stem and lowercase raw terms, validating them along the way."""
        if isinstance(category, str):
            try:
                category = PropertyCategory(category)
            except ValueError:
                valid = ", ".join(c.value for c in PropertyCategory)
                raise ConfigurationError(
                    f"property {name!r}: unknown category {category!r} "
                    f"(expected one of: {valid})"
                ) from None
        return cls(
            name=name,
            category=category,
            synonyms=frozenset(_stem_raw_term(name, t) for t in synonyms),
            antonyms=frozenset(_stem_raw_term(name, t) for t in antonyms),
        )


def _stem_raw_term(property_name: str, term: str) -> str:
    lowered = term.strip().lower()
    if not lowered:
        raise ConfigurationError(f"property {property_name!r}: empty term")
    if not _ALPHA_RE.match(lowered):
        raise ConfigurationError(
            f"property {property_name!r}: term {term!r} must be a single "
            f"alphabetic word"
        )
    return stem(lowered)


@dataclass(frozen=True)
class PropertyLexicon:
    entries: tuple[PropertyEntry, ...]

    def __post_init__(self) -> None:
        names = [entry.name for entry in self.entries]
        if len(names) != len(set(names)):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ConfigurationError(f"duplicate property names: {dupes}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> list[str]:
        return [entry.name for entry in self.entries]

    def get(self, name: str) -> PropertyEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise ConfigurationError(f"unknown property {name!r}")

    def digest(self) -> str:
        payload = [
            {
                "name": e.name,
                "category": e.category.value,
                "synonyms": sorted(e.synonyms),
                "antonyms": sorted(e.antonyms),
            }
            for e in self.entries
        ]
        return hashlib.sha256(canonical_dumps(payload).encode()).hexdigest()


@dataclass(frozen=True)
class Post:
    id: str
    prose: str
    snippets: tuple[CodeSnippet, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("post id must be nonempty")
        for snippet in self.snippets:
            if snippet.post_id != self.id:
                raise ValueError(
                    f"snippet {snippet.id!r} belongs to post "
                    f"{snippet.post_id!r}, not {self.id!r}"
                )


def prose_tokens(prose: str) -> list[str]:
    """Lowercased maximal alphanumeric runs, in order."""
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(prose)]


def term_frequency(prose: str, terms: frozenset[str] | set[str]) -> int:
    """Total occurrences of tokens whose stem is in `terms`."""
    if not terms:
        raise ValueError("term_frequency requires a nonempty term set")
    count = 0
    for token in prose_tokens(prose):
        if token.isdigit():
            continue  # lexicon terms are alphabetic; digits never match
        if stem(token) in terms:
            count += 1
    return count


def property_score(post: Post, entry: PropertyEntry) -> int:
    """Synonym frequency minus antonym frequency over the post's prose."""
    score = term_frequency(post.prose, entry.synonyms)
    if entry.antonyms:
        score -= term_frequency(post.prose, entry.antonyms)
    return score


def score_vector(post: Post, lexicon: PropertyLexicon) -> ScoreVector:
    """One score per lexicon property; shared by all snippets in the post."""
    return {entry.name: property_score(post, entry) for entry in lexicon}


def load_lexicon(path: str) -> PropertyLexicon:
    """Read a JSON lexicon file, stemming and validating every term."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read lexicon {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ConfigurationError(f"{path}: expected a JSON array of properties")
    entries = []
    for record in data:
        if not isinstance(record, dict):
            raise ConfigurationError(f"{path}: property records must be objects")
        missing = {"name", "category", "synonyms"} - record.keys()
        if missing:
            raise ConfigurationError(
                f"{path}: property record missing keys: {sorted(missing)}"
            )
        entries.append(
            PropertyEntry.from_raw(
                record["name"],
                record["category"],
                record["synonyms"],
                record.get("antonyms", []),
            )
        )
    return PropertyLexicon(tuple(entries))
