"""Structural fingerprints for code snippets.

A snippet is reduced to a set of terms, each an operator prefixed with the
innermost enclosing control keyword (`if<=`, `for++`) or a bare operator at
top level. Loop and switch constructs that contain no operators contribute
their keyword alone, so an operator-free loop still shows up as structure.
Similarity between two fingerprints is |intersection| / max(|a|, |b|).

The extractor is a tolerant lexer, not a parser: it tracks braces,
parentheses, and statement boundaries well enough to scope constructs, and
never fails on partial or ill-formed snippets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ConfigurationError


class Language(str, enum.Enum):
    JAVA = "java"
    C = "c"
    CPP = "cpp"
    JAVASCRIPT = "javascript"
    UNKNOWN = "unknown"

    @classmethod
    def coerce(cls, value: str | None) -> "Language":
        """Map a free-form tag ("C++", "js") onto the enum, defaulting to unknown."""
        if not value:
            return cls.UNKNOWN
        normalized = value.strip().lower()
        aliases = {
            "java": cls.JAVA,
            "c": cls.C,
            "c++": cls.CPP,
            "cpp": cls.CPP,
            "javascript": cls.JAVASCRIPT,
            "js": cls.JAVASCRIPT,
            "node.js": cls.JAVASCRIPT,
            "nodejs": cls.JAVASCRIPT,
        }
        return aliases.get(normalized, cls.UNKNOWN)


@dataclass(frozen=True)
class CodeSnippet:
    id: str
    code: str
    language: Language = Language.UNKNOWN
    post_id: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("snippet id must be nonempty")
        if not self.code.strip():
            raise ValueError(f"snippet {self.id!r}: code must be nonempty")


@dataclass(frozen=True)
class StructuralFingerprint:
    terms: frozenset[str]
    source_snippet_id: str = ""

    def sorted_terms(self) -> list[str]:
        return sorted(self.terms)


@dataclass(frozen=True)
class Token:
    kind: str  # word | number | op | punct
    text: str


CONTROL_KEYWORDS = frozenset({"if", "for", "while", "do", "switch"})
LOOP_KEYWORDS = frozenset({"for", "while", "do", "switch"})

# Operators that become fingerprint terms.
EMITTED_OPERATORS = frozenset({
    "+", "-", "*", "/", "%",
    "<", ">", "<=", ">=", "==", "!=",
    "&&", "||", "!",
    "+=", "-=", "*=", "/=",
    "++", "--",
})

# Longest-match operator table. Compounds outside the emitted alphabet map
# to None so that e.g. `<<` is consumed whole instead of emitting `<` twice
# and `->` never yields a spurious `-`.
_OPERATOR_MAP: dict[str, str | None] = {op: op for op in EMITTED_OPERATORS}
_OPERATOR_MAP.update({
    ">>>=": None, "<<=": None, ">>=": None, ">>>": None,
    "===": None, "!==": None, "**=": None,
    "<<": None, ">>": None, "->": None, "=>": None, "::": None,
    "&=": None, "|=": None, "^=": None, "%=": None, "**": None,
    "=": None, "&": None, "|": None, "^": None, "~": None, "?": None,
})
_OPERATORS_BY_LENGTH = sorted(_OPERATOR_MAP, key=len, reverse=True)
_OP_START_CHARS = frozenset(op[0] for op in _OPERATOR_MAP)

_PUNCT_CHARS = frozenset("(){}[];,:.")
_WORD_START = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$"
)
_WORD_CHARS = _WORD_START | frozenset("0123456789")
_DIGITS = frozenset("0123456789")


def tokenize(code: str, language: Language = Language.UNKNOWN) -> list[Token]:
    """Lex code into word/number/op/punct tokens, dropping comments and
    string or char literals. Never raises on malformed input; raises
    ValueError only when code is empty after trimming."""
    if not code.strip():
        raise ValueError("cannot tokenize empty code")
    tokens: list[Token] = []
    i = 0
    n = len(code)
    at_line_start = True
    while i < n:
        ch = code[i]
        if ch == "\n":
            at_line_start = True
            i += 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            continue
        if ch == "/" and code.startswith("//", i):
            i = _skip_to_eol(code, i)
            continue
        if ch == "/" and code.startswith("/*", i):
            end = code.find("*/", i + 2)
            i = n if end < 0 else end + 2
            continue
        if ch == "#" and (language is Language.UNKNOWN or at_line_start):
            # shell-style comment, or a C preprocessor line when it opens
            # the line; either way the rest of the line has no structure
            i = _skip_to_eol(code, i)
            continue
        at_line_start = False
        if ch in "\"'`":
            i = _skip_string(code, i)
            continue
        if ch in _WORD_START:
            j = i + 1
            while j < n and code[j] in _WORD_CHARS:
                j += 1
            tokens.append(Token("word", code[i:j]))
            i = j
            continue
        if ch in _DIGITS:
            j = _skip_number(code, i)
            tokens.append(Token("number", code[i:j]))
            i = j
            continue
        if ch in _OP_START_CHARS:
            for op in _OPERATORS_BY_LENGTH:
                if code.startswith(op, i):
                    tokens.append(Token("op", op))
                    i += len(op)
                    break
            else:
                i += 1
            continue
        if ch in _PUNCT_CHARS:
            tokens.append(Token("punct", ch))
            i += 1
            continue
        i += 1  # tolerate anything else
    return tokens


def _skip_to_eol(code: str, i: int) -> int:
    end = code.find("\n", i)
    return len(code) if end < 0 else end


def _skip_string(code: str, i: int) -> int:
    quote = code[i]
    j = i + 1
    n = len(code)
    while j < n:
        ch = code[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote:
            return j + 1
        if ch == "\n" and quote != "`":
            return j  # unterminated literal: stop at the line break
        j += 1
    return n


def _skip_number(code: str, i: int) -> int:
    n = len(code)
    j = i
    while j < n:
        ch = code[j]
        if ch in _WORD_CHARS or ch == ".":
            j += 1
            continue
        # keep exponent signs inside the literal so 1e-5 emits no minus
        if ch in "+-" and code[j - 1] in "eEpP" and j > i:
            j += 1
            continue
        break
    return j


@dataclass
class _Construct:
    keyword: str
    base_depth: int
    awaiting_body: bool = True
    body_depth: int | None = None
    body_done: bool = False
    tail_pending: bool = False
    contains_op: bool = False


def compute_fingerprint(snippet: CodeSnippet) -> StructuralFingerprint:
    """Build the structural term set for one snippet.

    Constructs are scoped by a brace- and statement-aware stack. A braceless
    construct stays open until its enclosing block closes, an `else` (or
    `else if`) continues the same `if` scope, and the trailing condition of
    a do-while belongs to the `do`. Unbalanced braces simply close every
    open scope at end of input.
    """
    tokens = tokenize(snippet.code, snippet.language)
    terms: set[str] = set()
    stack: list[_Construct] = []
    depth = 0
    paren = 0
    skip = -1

    def pop_construct() -> None:
        construct = stack.pop()
        if construct.keyword in LOOP_KEYWORDS and not construct.contains_op:
            terms.add(construct.keyword)

    for idx, token in enumerate(tokens):
        if idx == skip:
            continue
        kind, text = token.kind, token.text
        if kind == "word":
            if text == "else":
                if stack and stack[-1].keyword == "if":
                    top = stack[-1]
                    top.awaiting_body = True
                    top.body_done = False
                    top.body_depth = None
                    nxt = tokens[idx + 1] if idx + 1 < len(tokens) else None
                    if nxt is not None and nxt.kind == "word" and nxt.text == "if":
                        skip = idx + 1  # else-if continues the same scope
                continue
            if text == "while" and stack and stack[-1].keyword == "do" \
                    and stack[-1].body_done and not stack[-1].tail_pending:
                stack[-1].tail_pending = True  # do-while tail condition
                continue
            if text in CONTROL_KEYWORDS:
                stack.append(_Construct(text, base_depth=depth))
            continue
        if kind == "op":
            emitted = _OPERATOR_MAP[text]
            if emitted is None:
                continue
            prefix = stack[-1].keyword if stack else ""
            terms.add(prefix + emitted)
            for construct in stack:
                construct.contains_op = True
            continue
        # punct
        if text == "(":
            paren += 1
        elif text == ")":
            paren = max(0, paren - 1)
        elif text == "{":
            depth += 1
            if stack and stack[-1].awaiting_body and stack[-1].body_depth is None:
                top = stack[-1]
                top.body_depth = depth
                top.awaiting_body = False
        elif text == "}":
            depth = max(0, depth - 1)
            while stack:
                top = stack[-1]
                closes_body = top.body_depth is not None and top.body_depth > depth
                out_of_scope = top.base_depth > depth
                if not closes_body and not out_of_scope:
                    break
                if closes_body:
                    nxt = tokens[idx + 1] if idx + 1 < len(tokens) else None
                    nxt_word = nxt.text if nxt is not None and nxt.kind == "word" else ""
                    if top.keyword == "if" and nxt_word == "else":
                        top.body_depth = None
                        top.body_done = True
                        break
                    if top.keyword == "do" and nxt_word == "while":
                        top.body_depth = None
                        top.body_done = True
                        break
                pop_construct()
        elif text == ";" and paren == 0:
            if stack and stack[-1].tail_pending:
                pop_construct()  # end of do-while
            else:
                for construct in reversed(stack):
                    if construct.body_depth is None and construct.awaiting_body:
                        construct.awaiting_body = False
                        construct.body_done = True
                    else:
                        break
    while stack:
        pop_construct()
    return StructuralFingerprint(frozenset(terms), snippet.id)


def similarity(f1: StructuralFingerprint, f2: StructuralFingerprint) -> float:
    """Eq-style set similarity: |common terms| / size of the larger set.

    Two empty fingerprints score 0.0: structureless snippets carry no
    evidence of being alike.
    """
    if not f1.terms and not f2.terms:
        return 0.0
    shared = len(f1.terms & f2.terms)
    return shared / max(len(f1.terms), len(f2.terms))


def is_duplicate(
    f1: StructuralFingerprint,
    f2: StructuralFingerprint,
    threshold: float,
) -> bool:
    if not 0 < threshold <= 1:
        raise ConfigurationError(
            f"duplicate threshold must be in (0, 1], got {threshold}"
        )
    return similarity(f1, f2) >= threshold
