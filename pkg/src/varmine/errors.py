"""Exception types shared across the package.

Every error raised on a user-facing path derives from VarmineError so the
CLI can catch one base class and turn it into a one-line diagnostic.
"""


class VarmineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(VarmineError):
    """A tunable (threshold, weight, config file entry) is out of range or malformed."""


class CorpusError(VarmineError):
    """A corpus, lexicon, or knowledgebase file cannot be parsed or violates an invariant."""


class QueryError(VarmineError):
    """A search query cannot be executed (empty after tokenization, unknown property)."""


class EvaluationError(VarmineError):
    """Run/judgment files are malformed or inconsistent with each other."""


class UndefinedAPError(EvaluationError):
    """Average precision is undefined because the query has no relevant items."""
