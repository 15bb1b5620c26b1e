"""SQL-flavored filter language over corpus metadata and text.

Grammar (see docs/grammar.ebnf for the authoritative EBNF):

    expr        = or_expr ;
    or_expr     = and_expr { OR and_expr } ;
    and_expr    = not_expr { AND not_expr } ;
    not_expr    = NOT not_expr | primary ;
    primary     = "(" expr ")" | SIMILAR "(" string ")" | comparison ;
    comparison  = field op literal ;
    op          = "=" | "!=" | "<" | "<=" | ">" | ">=" | LIKE ;

Fields: camp, tag, year, wordcount, extractwords, doc, extract, abstract.
year/wordcount/extractwords are numeric; the rest are strings. Keywords and
field names are case-insensitive; string literals are single-quoted with ''
as the escape. LIKE patterns use % (any run) and _ (one character) and match
case-insensitively; = and != are case-sensitive.

SIMILAR('text') clauses never filter - they contribute to ranking only, so
boolean evaluation stays embedding-free.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .corpus import Corpus, EvidenceDoc
from .embedding import EmbeddingProvider, cosine_similarity
from .errors import FilterSyntaxError, FilterTypeError

STRING_FIELDS = ("camp", "tag", "doc", "extract", "abstract")
NUMERIC_FIELDS = ("year", "wordcount", "extractwords")
FIELDS = STRING_FIELDS + NUMERIC_FIELDS

_KEYWORDS = {"and", "or", "not", "like", "similar"}


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    field: str
    op: str  # '=', '!=', '<', '<=', '>', '>=', 'LIKE'
    value: Union[str, int]
    line: int = 1
    column: int = 1

    def to_source(self) -> str:
        if isinstance(self.value, str):
            literal = "'" + self.value.replace("'", "''") + "'"
        else:
            literal = str(self.value)
        return f"{self.field} {self.op} {literal}"

    def __eq__(self, other):
        return (
            isinstance(other, Comparison)
            and (self.field, self.op, self.value) == (other.field, other.op, other.value)
        )

    def __hash__(self):
        return hash((self.field, self.op, self.value))


@dataclass(frozen=True)
class Similar:
    text: str
    line: int = 1
    column: int = 1

    def to_source(self) -> str:
        return "SIMILAR('" + self.text.replace("'", "''") + "')"

    def __eq__(self, other):
        return isinstance(other, Similar) and self.text == other.text

    def __hash__(self):
        return hash(("SIMILAR", self.text))


@dataclass(frozen=True)
class Not:
    operand: "FilterExpr"

    def to_source(self) -> str:
        return f"NOT {self.operand.to_source()}"


@dataclass(frozen=True)
class And:
    left: "FilterExpr"
    right: "FilterExpr"

    def to_source(self) -> str:
        return f"({self.left.to_source()} AND {self.right.to_source()})"


@dataclass(frozen=True)
class Or:
    left: "FilterExpr"
    right: "FilterExpr"

    def to_source(self) -> str:
        return f"({self.left.to_source()} OR {self.right.to_source()})"


FilterExpr = Union[Comparison, Similar, Not, And, Or]


# -- lexer ---------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT, NUMBER, STRING, OP, LPAREN, RPAREN, EOF
    value: str
    line: int
    column: int


_OPS2 = ("!=", "<=", ">=")
_OPS1 = ("=", "<", ">")


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    col = 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_line, start_col = line, col
        if ch == "(":
            tokens.append(_Token("LPAREN", "(", start_line, start_col))
            i += 1
            col += 1
            continue
        if ch == ")":
            tokens.append(_Token("RPAREN", ")", start_line, start_col))
            i += 1
            col += 1
            continue
        two = source[i : i + 2]
        if two in _OPS2:
            tokens.append(_Token("OP", two, start_line, start_col))
            i += 2
            col += 2
            continue
        if ch in _OPS1:
            tokens.append(_Token("OP", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        if ch == "'":
            value_chars: list[str] = []
            j = i + 1
            while True:
                if j >= n:
                    raise FilterSyntaxError("unterminated string literal", start_line, start_col)
                if source[j] == "'":
                    if j + 1 < n and source[j + 1] == "'":
                        value_chars.append("'")
                        j += 2
                        continue
                    j += 1
                    break
                if source[j] == "\n":
                    raise FilterSyntaxError("unterminated string literal", start_line, start_col)
                value_chars.append(source[j])
                j += 1
            tokens.append(_Token("STRING", "".join(value_chars), start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(_Token("NUMBER", source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        raise FilterSyntaxError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# -- parser ----------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _is_keyword(self, tok: _Token, word: str) -> bool:
        return tok.kind == "IDENT" and tok.value.lower() == word

    def parse(self) -> FilterExpr:
        expr = self.parse_or()
        tok = self.peek()
        if tok.kind != "EOF":
            raise FilterSyntaxError(f"unexpected {tok.value!r}", tok.line, tok.column)
        return expr

    def parse_or(self) -> FilterExpr:
        left = self.parse_and()
        while self._is_keyword(self.peek(), "or"):
            self.advance()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> FilterExpr:
        left = self.parse_not()
        while self._is_keyword(self.peek(), "and"):
            self.advance()
            left = And(left, self.parse_not())
        return left

    def parse_not(self) -> FilterExpr:
        if self._is_keyword(self.peek(), "not"):
            self.advance()
            return Not(self.parse_not())
        return self.parse_primary()

    def parse_primary(self) -> FilterExpr:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.parse_or()
            closing = self.peek()
            if closing.kind != "RPAREN":
                raise FilterSyntaxError("expected ')'", closing.line, closing.column)
            self.advance()
            return inner
        if self._is_keyword(tok, "similar"):
            self.advance()
            lp = self.peek()
            if lp.kind != "LPAREN":
                raise FilterSyntaxError("expected '(' after SIMILAR", lp.line, lp.column)
            self.advance()
            arg = self.peek()
            if arg.kind != "STRING":
                raise FilterSyntaxError(
                    "expected string literal in SIMILAR(...)", arg.line, arg.column
                )
            self.advance()
            rp = self.peek()
            if rp.kind != "RPAREN":
                raise FilterSyntaxError("expected ')'", rp.line, rp.column)
            self.advance()
            return Similar(arg.value, tok.line, tok.column)
        if tok.kind == "IDENT":
            if tok.value.lower() in _KEYWORDS:
                raise FilterSyntaxError(
                    f"unexpected keyword {tok.value!r}", tok.line, tok.column
                )
            return self.parse_comparison()
        raise FilterSyntaxError(
            f"expected a comparison, SIMILAR(...), or '(': got {tok.value!r}"
            if tok.kind != "EOF"
            else "unexpected end of input",
            tok.line,
            tok.column,
        )

    def parse_comparison(self) -> Comparison:
        field_tok = self.advance()
        field = field_tok.value.lower()
        op_tok = self.peek()
        if op_tok.kind == "OP":
            op = op_tok.value
            self.advance()
        elif self._is_keyword(op_tok, "like"):
            op = "LIKE"
            self.advance()
        else:
            raise FilterSyntaxError(
                f"expected a comparison operator after {field!r}", op_tok.line, op_tok.column
            )
        lit = self.peek()
        if lit.kind == "STRING":
            value: Union[str, int] = lit.value
            self.advance()
        elif lit.kind == "NUMBER":
            value = int(lit.value)
            self.advance()
        else:
            raise FilterSyntaxError("expected a literal", lit.line, lit.column)
        return Comparison(field, op, value, field_tok.line, field_tok.column)


def typecheck_filter(expr: FilterExpr) -> None:
    """Reject unknown fields and ill-typed comparisons."""
    if isinstance(expr, Comparison):
        if expr.field not in FIELDS:
            raise FilterTypeError(f"unknown field {expr.field!r}", expr.line, expr.column)
        numeric = expr.field in NUMERIC_FIELDS
        if expr.op == "LIKE":
            if numeric:
                raise FilterTypeError(
                    f"LIKE is not defined on numeric field {expr.field!r}",
                    expr.line,
                    expr.column,
                )
            if not isinstance(expr.value, str):
                raise FilterTypeError("LIKE needs a string pattern", expr.line, expr.column)
        elif expr.op in ("<", "<=", ">", ">="):
            if not numeric:
                raise FilterTypeError(
                    f"ordering comparisons need a numeric field, got {expr.field!r}",
                    expr.line,
                    expr.column,
                )
            if not isinstance(expr.value, int):
                raise FilterTypeError("numeric comparison needs a number", expr.line, expr.column)
        else:  # '=', '!='
            if numeric and not isinstance(expr.value, int):
                raise FilterTypeError(
                    f"field {expr.field!r} compares against numbers", expr.line, expr.column
                )
            if not numeric and not isinstance(expr.value, str):
                raise FilterTypeError(
                    f"field {expr.field!r} compares against strings", expr.line, expr.column
                )
    elif isinstance(expr, Not):
        typecheck_filter(expr.operand)
    elif isinstance(expr, (And, Or)):
        typecheck_filter(expr.left)
        typecheck_filter(expr.right)
    # Similar: nothing to check


def parse_filter(source: str, check_types: bool = True) -> FilterExpr:
    """Parse filter source into an AST; optionally typecheck it.

    Raises FilterSyntaxError or FilterTypeError with 1-based line/column.
    """
    expr = _Parser(_tokenize(source)).parse()
    if check_types:
        typecheck_filter(expr)
    return expr


def print_filter(expr: FilterExpr) -> str:
    return expr.to_source()


# -- evaluation --------------------------------------------------------------------


def _field_value(field: str, doc: EvidenceDoc) -> Union[str, int]:
    if field == "camp":
        return doc.camp
    if field == "tag":
        return doc.arg_type
    if field == "doc":
        return doc.full_text
    if field == "extract":
        return doc.extract
    if field == "abstract":
        return doc.abstract
    if field == "year":
        return doc.year
    if field == "wordcount":
        return doc.word_count_full
    if field == "extractwords":
        return doc.word_count_extract
    raise FilterTypeError(f"unknown field {field!r}")


def _like_regex(pattern: str) -> re.Pattern:
    parts: list[str] = []
    for ch in pattern:
        if ch == "%":
            parts.append(".*")
        elif ch == "_":
            parts.append(".")
        else:
            parts.append(re.escape(ch))
    return re.compile("".join(parts), re.IGNORECASE | re.DOTALL)


def evaluate_filter(expr: FilterExpr, doc: EvidenceDoc) -> bool:
    """Boolean verdict of the non-SIMILAR parts; SIMILAR clauses read as true."""
    if isinstance(expr, Similar):
        return True
    if isinstance(expr, Not):
        return not evaluate_filter(expr.operand, doc)
    if isinstance(expr, And):
        return evaluate_filter(expr.left, doc) and evaluate_filter(expr.right, doc)
    if isinstance(expr, Or):
        return evaluate_filter(expr.left, doc) or evaluate_filter(expr.right, doc)
    value = _field_value(expr.field, doc)
    if expr.op == "=":
        return value == expr.value
    if expr.op == "!=":
        return value != expr.value
    if expr.op == "LIKE":
        return _like_regex(str(expr.value)).fullmatch(str(value)) is not None
    if expr.op == "<":
        return value < expr.value
    if expr.op == "<=":
        return value <= expr.value
    if expr.op == ">":
        return value > expr.value
    if expr.op == ">=":
        return value >= expr.value
    raise FilterTypeError(f"unknown operator {expr.op!r}")


def similar_texts(expr: FilterExpr) -> list[str]:
    """All SIMILAR clause texts, left-to-right."""
    if isinstance(expr, Similar):
        return [expr.text]
    if isinstance(expr, Not):
        return similar_texts(expr.operand)
    if isinstance(expr, (And, Or)):
        return similar_texts(expr.left) + similar_texts(expr.right)
    return []


def select_entities(
    corpus: Corpus,
    graph,
    expr: FilterExpr,
    limit: int,
    vectors: dict[str, np.ndarray] | None = None,
    embedder: EmbeddingProvider | None = None,
) -> list[tuple[str, float]]:
    """Filter graph entities by the boolean parts, then rank.

    With SIMILAR clauses present, entities rank by the mean cosine of the
    clause texts against the entity vector (descending, ties by entity id);
    otherwise by entity id with score 0.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    passing = [
        node
        for node in graph.nodes()
        if graph.attrs(node).parent_doc_id in corpus
        and evaluate_filter(expr, corpus.get(graph.attrs(node).parent_doc_id))
    ]
    texts = similar_texts(expr)
    if not texts:
        return [(node, 0.0) for node in sorted(passing)[:limit]]
    if vectors is None or embedder is None:
        raise ValueError("SIMILAR ranking needs vectors and an embedder")
    query_vecs = [embedder.embed(t) for t in texts]
    scored: list[tuple[str, float]] = []
    for node in passing:
        vec = vectors.get(node)
        if vec is None:
            score = 0.0
        else:
            score = sum(cosine_similarity(q, vec) for q in query_vecs) / len(query_vecs)
        scored.append((node, score))
    scored.sort(key=lambda t: (-t[1], t[0]))
    return scored[:limit]
