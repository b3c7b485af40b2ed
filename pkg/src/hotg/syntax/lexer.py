"""Tokenizer for article text (ASCII notation with Unicode aliases)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset({
    "fun", "forall", "exists", "some", "set", "prop", "such", "that",
    "Definition", "Opaque", "Theorem", "Trusted", "Import", "Proof", "Qed",
    "let", "assume", "claim", "exact", "apply", "witness", "cases", "prove",
    "destruct", "rewrite", "as",
})

# longest first
SYMBOLS = (
    "<->", "/:e", ":=", "=>", "->", "<-", "<>", "/\\", "\\/", "c=", ":e",
    "~", "=", ":", ",", ".", "(", ")", "{", "}", "[", "]", "|",
)

UNICODE = {
    "∈": ":e", "∉": "/:e", "⊆": "c=", "λ": "fun", "∀": "forall", "∃": "exists",
    "ε": "some", "¬": "~", "∧": "/\\", "∨": "\\/", "→": "->", "↔": "<->",
    "≠": "<>", "⇒": "=>", "←": "<-",
}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "sym", "string", "eof"
    value: str
    line: int
    col: int


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c.isspace():
            advance(1)
            continue
        if text.startswith("(*", i):
            start = (line, col)
            depth = 0
            while i < n:
                if text.startswith("(*", i):
                    depth += 1
                    advance(2)
                elif text.startswith("*)", i):
                    depth -= 1
                    advance(2)
                    if depth == 0:
                        break
                else:
                    advance(1)
            if depth:
                raise LexError("unterminated comment", *start)
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0 or "\n" in text[i:j]:
                raise LexError("unterminated string", line, col)
            toks.append(Token("string", text[i + 1:j], line, col))
            advance(j + 1 - i)
            continue
        if c in UNICODE:
            alias = UNICODE[c]
            kind = "kw" if alias in KEYWORDS else "sym"
            toks.append(Token(kind, alias, line, col))
            advance(1)
            continue
        if c == "c" and text.startswith("c=", i) and (i == 0 or not _ident_char(text[i - 1])):
            toks.append(Token("sym", "c=", line, col))
            advance(2)
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and _ident_char(text[j]):
                j += 1
            word = text[i:j]
            toks.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
            advance(j - i)
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                # ":e" must not swallow the start of an identifier
                if sym in (":e", "/:e") and i + len(sym) < n and _ident_char(text[i + len(sym)]):
                    continue
                toks.append(Token("sym", sym, line, col))
                advance(len(sym))
                break
        else:
            raise LexError(f"unexpected character {c!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks
