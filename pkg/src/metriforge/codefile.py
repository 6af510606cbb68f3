"""Text code files.

::

    q=2 n=3 [field-poly=c0,c1,...]
    000
    1 1 1

Symbols are base-q integers separated by spaces; for ``q <= 10`` a word may
also be written as concatenated digits.  Blank lines and ``#`` comments are
ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DomainError
from .core import BlockCode
from .fields import Alphabet


@dataclass
class CodeFile:
    q: int
    n: int
    poly: tuple | None
    words: list

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.q, poly=self.poly)

    def block_code(self, alphabet: Alphabet | None = None) -> BlockCode:
        return BlockCode.from_words(self.words, alphabet or self.alphabet, self.n)


def _int_field(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise DomainError(f"header field {key!r} must be an integer, got {value!r}") from None


def parse_header(line: str) -> tuple[int, int, tuple | None]:
    fields = {}
    for tok in line.split():
        key, eq, value = tok.partition("=")
        if not eq:
            raise DomainError(f"header token {tok!r} is not key=value")
        fields[key] = value
    for key in ("q", "n"):
        if key not in fields:
            raise DomainError(f"header is missing field {key!r}")
    unknown = set(fields) - {"q", "n", "field-poly"}
    if unknown:
        raise DomainError(f"unknown header field {sorted(unknown)[0]!r}")
    q, n = _int_field("q", fields["q"]), _int_field("n", fields["n"])
    poly = None
    if "field-poly" in fields:
        poly = tuple(_int_field("field-poly", c) for c in fields["field-poly"].split(","))
    return q, n, poly


def parse_word(text: str, q: int) -> tuple[int, ...]:
    """Parse a word: space-separated symbols, or packed digits when ``q <= 10``."""
    text = text.strip()
    if not text:
        return ()
    toks = text.split()
    if len(toks) == 1 and q <= 10 and len(toks[0]) > 1:
        toks = list(toks[0])
    try:
        word = tuple(int(t) for t in toks)
    except ValueError:
        raise DomainError(f"malformed word {text!r}") from None
    for a in word:
        if not 0 <= a < q:
            raise DomainError(f"symbol {a} of word {text!r} is outside 0..{q - 1}")
    return word


def parse_code(text: str, exact_length: bool = True) -> CodeFile:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("code file is empty")
    q, n, poly = parse_header(lines[0])
    words = []
    for ln in lines[1:]:
        w = parse_word(ln, q)
        if (len(w) != n) if exact_length else (len(w) > n):
            raise DomainError(f"word {ln!r} has length {len(w)}, header says n={n}")
        words.append(w)
    if not words:
        raise DomainError("code file has no codewords")
    if len(set(words)) != len(words):
        raise DomainError("code file repeats a codeword")
    return CodeFile(q, n, poly, words)


def load_code(path: str, exact_length: bool = True) -> CodeFile:
    try:
        with open(path) as fh:
            return parse_code(fh.read(), exact_length)
    except OSError as exc:
        raise DomainError(f"cannot read code file {path!r}: {exc.strerror}") from None


def format_code(q: int, n: int, words, poly=None) -> str:
    head = f"q={q} n={n}" + (f" field-poly={','.join(map(str, poly))}" if poly else "")
    sep = "" if q <= 10 else " "
    return "\n".join([head] + [sep.join(map(str, w)) for w in words]) + "\n"
