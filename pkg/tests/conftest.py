import pathlib

import pytest

from varmine import (
    build_index,
    build_knowledgebase,
    compress_knowledgebase,
    ingest_posts,
    load_lexicon,
    to_posts,
)

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def corpus():
    return ingest_posts(str(DATA_DIR / "posts.jsonl"))


@pytest.fixture(scope="session")
def posts(corpus):
    return to_posts(corpus)


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(str(DATA_DIR / "lexicon.json"))


@pytest.fixture(scope="session")
def kb(posts, lexicon):
    return compress_knowledgebase(build_knowledgebase(posts, lexicon))


@pytest.fixture(scope="session")
def index(posts):
    return build_index(posts)
