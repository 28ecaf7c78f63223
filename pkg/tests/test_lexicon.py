import json

import pytest
from hypothesis import given, strategies as st

from varmine.errors import ConfigurationError
from varmine.lexicon import (
    Post,
    PropertyCategory,
    PropertyEntry,
    PropertyLexicon,
    load_lexicon,
    property_score,
    prose_tokens,
    score_vector,
    term_frequency,
)


@pytest.fixture
def speed_entry():
    return PropertyEntry.from_raw(
        "speed of execution",
        "resource_oriented",
        synonyms=["fast", "quick", "efficient"],
        antonyms=["slow", "sluggish", "inefficient"],
    )


def post(prose):
    return Post(id="p1", prose=prose)


class TestProseTokens:
    def test_basic(self):
        assert prose_tokens("Fast, faster & fastest!") == [
            "fast", "faster", "fastest",
        ]

    def test_alphanumeric_runs(self):
        assert prose_tokens("utf-8 rocks 42 times") == [
            "utf", "8", "rocks", "42", "times",
        ]

    def test_empty(self):
        assert prose_tokens("") == []


class TestTermFrequency:
    def test_counts_raw_occurrences(self, speed_entry):
        assert term_frequency("fast fast quick", speed_entry.synonyms) == 3

    def test_stems_tokens_before_matching(self, speed_entry):
        # 'efficiently' and 'efficiency' share the stem of 'efficient'
        assert term_frequency(
            "efficiently efficient efficiency", speed_entry.synonyms
        ) == 3

    def test_digit_tokens_never_match(self, speed_entry):
        assert term_frequency("42 007 fast", speed_entry.synonyms) == 1

    def test_empty_terms_rejected(self):
        with pytest.raises(ValueError):
            term_frequency("anything", frozenset())


class TestPropertyScore:
    def test_synonyms_minus_antonyms(self, speed_entry):
        assert property_score(
            post("quick but slow and sluggish"), speed_entry
        ) == 1 - 2

    def test_negation_is_ignored(self, speed_entry):
        # documented limitation: 'not efficient' counts as 'efficient'
        assert property_score(post("not efficient"), speed_entry) == 1

    def test_no_matches(self, speed_entry):
        assert property_score(post("unrelated prose entirely"), speed_entry) == 0

    def test_case_insensitive(self, speed_entry):
        assert property_score(post("FAST and Slow"), speed_entry) == 0

    def test_score_vector_covers_all_entries(self, speed_entry):
        other = PropertyEntry.from_raw(
            "memory", "resource_oriented", synonyms=["compact"], antonyms=["bloated"],
        )
        lexicon = PropertyLexicon(entries=(speed_entry, other))
        vec = score_vector(post("fast and compact, never bloated"), lexicon)
        assert vec == {"speed of execution": 1, "memory": 0}


class TestPropertyEntry:
    def test_from_raw_stems_terms(self, speed_entry):
        assert "effici" in speed_entry.synonyms
        assert "ineffici" in speed_entry.antonyms

    def test_from_raw_rejects_multiword(self):
        with pytest.raises(ConfigurationError):
            PropertyEntry.from_raw(
                "speed", "resource_oriented", synonyms=["very fast"], antonyms=[],
            )

    def test_from_raw_rejects_bad_category(self):
        with pytest.raises(ConfigurationError):
            PropertyEntry.from_raw("speed", "nope", synonyms=["fast"], antonyms=[])

    def test_category_enum_accepted(self):
        entry = PropertyEntry.from_raw(
            "style", PropertyCategory.DICTION, synonyms=["readable"], antonyms=[],
        )
        assert entry.category is PropertyCategory.DICTION

    def test_needs_a_synonym(self):
        with pytest.raises(ConfigurationError):
            PropertyEntry.from_raw("speed", "resource_oriented", [], ["slow"])

    def test_overlap_rejected(self):
        # both lists stem to the same term
        with pytest.raises(ConfigurationError):
            PropertyEntry.from_raw(
                "speed", "resource_oriented",
                synonyms=["efficient"], antonyms=["efficiency"],
            )

    def test_unstemmed_shape_rejected(self):
        with pytest.raises(ConfigurationError):
            PropertyEntry(
                name="speed",
                category=PropertyCategory.RESOURCE_ORIENTED,
                synonyms=frozenset({"Fast"}),
                antonyms=frozenset(),
            )


class TestLexicon:
    def test_duplicate_names_rejected(self, speed_entry):
        with pytest.raises(ConfigurationError):
            PropertyLexicon(entries=(speed_entry, speed_entry))

    def test_get_unknown(self, speed_entry):
        lexicon = PropertyLexicon(entries=(speed_entry,))
        with pytest.raises(ConfigurationError):
            lexicon.get("nope")

    def test_digest_is_stable_and_sensitive(self, speed_entry):
        one = PropertyLexicon(entries=(speed_entry,))
        same = PropertyLexicon(entries=(speed_entry,))
        assert one.digest() == same.digest()
        other = PropertyLexicon(entries=(
            PropertyEntry.from_raw(
                "speed of execution", "resource_oriented",
                synonyms=["fast"], antonyms=[],
            ),
        ))
        assert one.digest() != other.digest()


class TestLoadLexicon:
    def test_loads_bundled_file(self, lexicon):
        assert lexicon.names == ["speed of execution"]
        entry = lexicon.get("speed of execution")
        assert "fast" in entry.synonyms
        assert "slow" in entry.antonyms

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_lexicon(str(tmp_path / "absent.json"))

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        with pytest.raises(ConfigurationError):
            load_lexicon(str(p))

    def test_not_an_array(self, tmp_path):
        p = tmp_path / "obj.json"
        p.write_text(json.dumps({"name": "x"}))
        with pytest.raises(ConfigurationError):
            load_lexicon(str(p))

    def test_missing_required_key(self, tmp_path):
        p = tmp_path / "short.json"
        p.write_text(json.dumps([{"name": "x", "category": "diction"}]))
        with pytest.raises(ConfigurationError):
            load_lexicon(str(p))

    def test_round_trips_terms(self, tmp_path):
        p = tmp_path / "lex.json"
        p.write_text(json.dumps([{
            "name": "brevity",
            "category": "diction",
            "synonyms": ["concise", "short"],
            "antonyms": ["verbose"],
        }]))
        lexicon = load_lexicon(str(p))
        entry = lexicon.get("brevity")
        assert term_frequency("a concise, short, never verbose note",
                              entry.synonyms) == 2


WORDS = st.sampled_from(
    "alpha beta gamma delta code loop tree graph node value".split()
)


@given(st.lists(WORDS, max_size=12))
def test_score_vector_additive_in_synonyms(tokens):
    entry = PropertyEntry.from_raw(
        "speed", "resource_oriented", synonyms=["fast"], antonyms=["slow"],
    )
    base = property_score(post(" ".join(tokens)), entry)
    extended = property_score(post(" ".join(tokens + ["fast"])), entry)
    assert extended == base + 1
