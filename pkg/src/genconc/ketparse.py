"""Parser for ket expressions such as ``1/sqrt(2)*(|00> + |11>)``.

Grammar (whitespace is ignored everywhere)::

    expr    := term (('+'|'-') term)*
    term    := coeff ('*' ket | '*'? '(' ketsum ')') | ket
    ketsum  := ket (('+'|'-') ket)*
    coeff   := cfactor (('*'|'/') cfactor)*
    cfactor := number | number 'i' | 'i' | 'pi'
             | 'sqrt' '(' csum ')' | 'exp' '(' csum ')' | '(' csum ')'
    csum    := coeff (('+'|'-') coeff)*
    ket     := '|' labels '>'

``labels`` is either a run of digits (one label per digit) or comma separated
integers for local dimensions above 10. Two small extensions over the strict
form are accepted: a leading sign on the first term or on a coefficient
factor, and parenthesized coefficient sums of any length.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, KetSyntaxError
from .qstate import PureState, flat_index, labels_of, make_state, total_dim, validate_dims

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_]+")
_KNOWN_IDENTS = {"i", "pi", "sqrt", "exp"}


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'ket', 'eof'
    value: object
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit() or (ch == "." and pos + 1 < n and text[pos + 1].isdigit()):
            m = _NUMBER.match(text, pos)
            tokens.append(Token("num", float(m.group()), pos))
            pos = m.end()
        elif ch.isalpha() or ch == "_":
            m = _IDENT.match(text, pos)
            if m.group() not in _KNOWN_IDENTS:
                raise KetSyntaxError(pos, "a number, 'i', 'pi', 'sqrt' or 'exp'", m.group())
            tokens.append(Token("ident", m.group(), pos))
            pos = m.end()
        elif ch == "|":
            labels, end = _scan_ket(text, pos)
            tokens.append(Token("ket", labels, pos))
            pos = end
        elif ch in "+-*/()":
            tokens.append(Token("op", ch, pos))
            pos += 1
        else:
            raise KetSyntaxError(pos, "a coefficient or ket", ch)
    tokens.append(Token("eof", None, n))
    return tokens


def _scan_ket(text: str, start: int) -> tuple[tuple[int, ...], int]:
    pos = start + 1
    n = len(text)
    while True:
        if pos >= n:
            raise KetSyntaxError(n, "'>'")
        ch = text[pos]
        if ch == ">":
            break
        if not (ch.isdigit() or ch == "," or ch.isspace()):
            raise KetSyntaxError(pos, "'>'", ch)
        pos += 1
    body = "".join(text[start + 1:pos].split())
    if not body:
        raise KetSyntaxError(pos, "a basis label")
    if "," in body:
        parts = body.split(",")
        if "" in parts:
            raise KetSyntaxError(pos, "a basis label between commas")
        labels = tuple(int(p) for p in parts)
    else:
        labels = tuple(int(c) for c in body)
    return labels, pos + 1


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, kind: str, value=None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == kind and (value is None or tok.value == value)

    def expect_op(self, value: str) -> Token:
        tok = self.peek()
        if not (tok.kind == "op" and tok.value == value):
            raise KetSyntaxError(tok.pos, repr(value), _describe(tok))
        return self.next()

    def _ket_group_ahead(self, ahead: int = 0) -> bool:
        """A ket, or '(' opening a sum of kets, starts ``ahead`` tokens on."""
        return self.at("ket", ahead=ahead) or (
            self.at("op", "(", ahead=ahead) and self.at("ket", ahead=ahead + 1)
        )

    # expr := term (('+'|'-') term)*
    def parse_expr(self) -> list[tuple[complex, tuple[int, ...]]]:
        sign = 1.0
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1.0 if self.next().value == "-" else 1.0
        terms = self.parse_term(sign)
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1.0 if self.next().value == "-" else 1.0
            terms.extend(self.parse_term(sign))
        tok = self.peek()
        if tok.kind != "eof":
            raise KetSyntaxError(tok.pos, "'+', '-' or end of input", _describe(tok))
        return terms

    def parse_term(self, sign: float) -> list[tuple[complex, tuple[int, ...]]]:
        if self.at("ket"):
            return [(complex(sign), self.next().value)]
        if self._ket_group_ahead():
            coeff = complex(sign)
        else:
            coeff = sign * self.parse_coeff()
        if self.at("op", "*") and self._ket_group_ahead(1):
            self.next()
        if self.at("ket"):
            return [(coeff, self.next().value)]
        if self.at("op", "(") and self.at("ket", ahead=1):
            self.next()
            kets = self.parse_ketsum()
            self.expect_op(")")
            return [(coeff * s, labels) for s, labels in kets]
        tok = self.peek()
        raise KetSyntaxError(tok.pos, "'*' followed by a ket", _describe(tok))

    def parse_ketsum(self) -> list[tuple[float, tuple[int, ...]]]:
        out = [(1.0, self._ket())]
        while self.at("op", "+") or self.at("op", "-"):
            s = -1.0 if self.next().value == "-" else 1.0
            out.append((s, self._ket()))
        return out

    def _ket(self) -> tuple[int, ...]:
        tok = self.peek()
        if tok.kind != "ket":
            raise KetSyntaxError(tok.pos, "a ket '|...>'", _describe(tok))
        return self.next().value

    # coeff := cfactor (('*'|'/') cfactor)*
    def parse_coeff(self) -> complex:
        value = self.parse_cfactor()
        while True:
            if self.at("op", "*") and not self._ket_group_ahead(1):
                self.next()
                value *= self.parse_cfactor()
            elif self.at("op", "/"):
                op = self.next()
                divisor = self.parse_cfactor()
                if divisor == 0:
                    raise KetSyntaxError(op.pos, "a nonzero divisor")
                value /= divisor
            else:
                return value

    def parse_csum(self) -> complex:
        value = self.parse_coeff()
        while self.at("op", "+") or self.at("op", "-"):
            if self.next().value == "-":
                value -= self.parse_coeff()
            else:
                value += self.parse_coeff()
        return value

    def parse_cfactor(self) -> complex:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            if self.at("ident", "i"):
                self.next()
                return complex(0.0, tok.value)
            return complex(tok.value)
        if tok.kind == "ident":
            self.next()
            if tok.value == "i":
                return 1j
            if tok.value == "pi":
                return complex(math.pi)
            self.expect_op("(")
            arg = self.parse_csum()
            self.expect_op(")")
            return cmath.sqrt(arg) if tok.value == "sqrt" else cmath.exp(arg)
        if tok.kind == "op" and tok.value == "(":
            self.next()
            value = self.parse_csum()
            self.expect_op(")")
            return value
        if tok.kind == "op" and tok.value in "+-":
            self.next()
            value = self.parse_cfactor()
            # 0j - v keeps a +0.0 imaginary part, so sqrt(-4) is 2i
            return 0j - value if tok.value == "-" else value
        raise KetSyntaxError(tok.pos, "a number, 'i', 'pi', 'sqrt', 'exp', '(' or a ket", _describe(tok))


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "ket":
        return "|" + "".join(map(str, tok.value)) + ">"
    if tok.kind == "num":
        return repr(tok.value)
    return str(tok.value)


def parse_terms(text: str) -> list[tuple[complex, tuple[int, ...]]]:
    """Coefficient and label tuple for every ket in ``text``, in order."""
    return _Parser(text).parse_expr()


def parse_ket(text: str, dims: Sequence[int] | None = None) -> PureState:
    """Evaluate a ket expression into a normalized :class:`PureState`.

    Without ``dims``, each particle's dimension is inferred as
    ``max(2, largest label + 1)``. Repeated kets accumulate. The returned
    state's ``was_normalized`` flag is set when the written norm was not 1.
    """
    terms = parse_terms(text)
    arity = {len(labels) for _, labels in terms}
    if len(arity) != 1:
        raise DimensionMismatch(f"kets have different particle counts: {sorted(arity)}")
    n = arity.pop()
    if dims is None:
        dims = tuple(max(2, 1 + max(labels[p] for _, labels in terms)) for p in range(n))
    else:
        dims = validate_dims(dims)
        if len(dims) != n:
            raise DimensionMismatch(f"kets have {n} particles but dims {dims} has {len(dims)}")
    dims = validate_dims(dims)
    amps = np.zeros(total_dim(dims), dtype=np.complex128)
    for coeff, labels in terms:
        amps[flat_index(dims, labels)] += coeff
    return make_state(dims, amps)


def render_ket(state: PureState) -> str:
    """Write ``state`` back as a ket expression that :func:`parse_ket` accepts."""
    wide = any(d > 10 for d in state.dims)
    terms = []
    for idx in np.flatnonzero(state.amplitudes):
        a = complex(state.amplitudes[idx])
        labels = labels_of(state.dims, int(idx))
        body = ",".join(map(str, labels)) if wide else "".join(map(str, labels))
        sign = "-" if math.copysign(1.0, a.imag) < 0 else "+"
        terms.append(f"({a.real!r}{sign}{abs(a.imag)!r}i)*|{body}>")
    return " + ".join(terms)
