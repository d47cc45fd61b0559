"""Shared lark plumbing."""
from lark.exceptions import (
    LarkError,
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from src.exceptions import KernelError, ParseError

# Keywords of the formula and proof-script notations; never atom names.
RESERVED_NAMES = ("v", "system", "theorem", "vars", "from", "step", "witness", "split", "have", "lemma", "qed")

ATOM_PATTERN = r"/(?!(?:" + "|".join(RESERVED_NAMES) + r")\b)[a-z][a-z0-9_]*/"

CLOSING = {")", "}", "]", "RPAR", "RBRACE", "RSQB"}

COMMENTS = r"""
COMMENT: /%[^\n]*/
%ignore COMMENT
%import common.WS
%ignore WS
"""


def to_parse_error(error: LarkError, what: str) -> KernelError:
    """Translate a lark failure into a positioned ParseError."""
    if isinstance(error, VisitError) and isinstance(error.orig_exc, KernelError):
        return error.orig_exc
    if isinstance(error, UnexpectedCharacters):
        return ParseError(f"{what}: unknown token {error.char!r}", error.line, error.column)
    if isinstance(error, UnexpectedEOF):
        return ParseError(f"{what}: unbalanced delimiter, unexpected end of input")
    if isinstance(error, UnexpectedToken):
        token = error.token
        if token.type == "$END":
            return ParseError(f"{what}: unbalanced delimiter, unexpected end of input", error.line, error.column)
        if token.type in CLOSING or str(token) in CLOSING:
            return ParseError(f"{what}: unbalanced delimiter {str(token)!r}", error.line, error.column)
        return ParseError(f"{what}: syntax error near {str(token)!r}", error.line, error.column)
    if isinstance(error, UnexpectedInput):
        return ParseError(f"{what}: syntax error", error.line, error.column)
    return ParseError(f"{what}: {error}")
