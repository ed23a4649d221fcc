"""Parser for hand-transcribed polynomial displays, and fixture comparison.

Grammar (whitespace and line breaks insignificant, juxtaposition multiplies):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := base ('^' nat)?
    base   := nat | symbol | '(' expr ')'

A unary minus is accepted only at the start of an expression or parenthesis
group.  Exponents above 64 are rejected.  Syntax errors carry line/column.

Fixture files hold one transcribed display each::

    [meta]
    name = calA_k2
    vars = beta gamma
    provenance = free text
    [numerator]
    3 (3 + 28 gamma + ...)
    [denominator]
    1 + 10 gamma + ...

The denominator section may be omitted or empty (defaults to 1).  Comparison
against pipeline output reports EXACT (cross-multiplication identity), SCALED
(equal up to a positive rational constant, constant reported), SAMPLED_ONLY
(agrees on 100 deterministic samples but not symbolically: flags a
transcription or convention issue), or MISMATCH with a witness point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .poly import MultiPoly, RatFunc
from .sampling import DEFAULT_SEED, SplitMix64

MAX_EXPONENT = 64
COMPARISON_SAMPLES = 100


class ParseError(ValueError):
    """Syntax or symbol error with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # NAT, SYMBOL, OP, END
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("NAT", text[start:i], line, column))
            column += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("SYMBOL", text[start:i], line, column))
            column += i - start
            continue
        if ch in "+-*^()":
            tokens.append(_Token("OP", ch, line, column))
            column += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(_Token("END", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], variables: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, message: str) -> ParseError:
        token = self.peek()
        return ParseError(message, token.line, token.column)

    def parse(self) -> MultiPoly:
        value = self.expr()
        if self.peek().kind != "END":
            raise self.fail(f"trailing input {self.peek().text!r}")
        return value

    def expr(self) -> MultiPoly:
        negate = False
        token = self.peek()
        if token.kind == "OP" and token.text == "-":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            token = self.peek()
            if token.kind == "OP" and token.text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if token.text == "+" else value - rhs
            else:
                return value

    def term(self) -> MultiPoly:
        value = self.factor()
        while True:
            token = self.peek()
            if token.kind == "OP" and token.text == "*":
                self.advance()
                value = value * self.factor()
            elif token.kind in ("NAT", "SYMBOL") or (
                token.kind == "OP" and token.text == "("
            ):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> MultiPoly:
        value = self.base()
        token = self.peek()
        if token.kind == "OP" and token.text == "^":
            self.advance()
            exp_token = self.peek()
            if exp_token.kind != "NAT":
                raise self.fail("expected a natural-number exponent after '^'")
            self.advance()
            exponent = int(exp_token.text)
            if exponent > MAX_EXPONENT:
                raise ParseError(
                    f"exponent {exponent} exceeds the {MAX_EXPONENT} limit",
                    exp_token.line,
                    exp_token.column,
                )
            value = value ** exponent
        return value

    def base(self) -> MultiPoly:
        token = self.peek()
        if token.kind == "NAT":
            self.advance()
            return MultiPoly.const(self.variables, int(token.text))
        if token.kind == "SYMBOL":
            if token.text not in self.variables:
                raise ParseError(
                    f"undeclared symbol {token.text!r}", token.line, token.column
                )
            self.advance()
            return MultiPoly.variable(self.variables, token.text)
        if token.kind == "OP" and token.text == "(":
            self.advance()
            value = self.expr()
            closing = self.peek()
            if not (closing.kind == "OP" and closing.text == ")"):
                raise self.fail("expected ')'")
            self.advance()
            return value
        raise self.fail(
            f"expected a number, symbol, or '(' but found {token.text or 'end of input'!r}"
        )


def parse_expression(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse a display expression into an exact polynomial."""
    return _Parser(_tokenize(text), tuple(variables)).parse()


@dataclass(frozen=True)
class FixtureFile:
    name: str
    variables: tuple[str, ...]
    numerator_text: str
    denominator_text: str
    provenance: str
    path: str = ""


class FixtureError(ValueError):
    """Malformed fixture file (missing section/keys or parse failure)."""


def _read_sections(raw: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for line in raw.splitlines():
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip().lower()
            sections.setdefault(current, [])
        elif current is not None:
            sections[current].append(line)
        elif stripped:
            raise FixtureError(f"content before first section: {stripped!r}")
    return sections


def load_fixture(path: str | Path) -> tuple[FixtureFile, RatFunc]:
    """Read a fixture file and parse it into a canonical rational function."""
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    sections = _read_sections(raw)
    if "meta" not in sections:
        raise FixtureError(f"{path.name}: missing [meta] section")
    if "numerator" not in sections:
        raise FixtureError(f"{path.name}: missing [numerator] section")
    meta: dict[str, str] = {}
    for line in sections["meta"]:
        stripped = line.strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise FixtureError(f"{path.name}: bad meta line {stripped!r}")
        key, _, value = stripped.partition("=")
        meta[key.strip().lower()] = value.strip()
    for required in ("name", "vars"):
        if required not in meta:
            raise FixtureError(f"{path.name}: [meta] is missing {required!r}")
    variables = tuple(meta["vars"].split())
    numerator_text = "\n".join(sections["numerator"]).strip()
    denominator_text = "\n".join(sections.get("denominator", [])).strip() or "1"
    fixture = FixtureFile(
        name=meta["name"],
        variables=variables,
        numerator_text=numerator_text,
        denominator_text=denominator_text,
        provenance=meta.get("provenance", ""),
        path=str(path),
    )
    try:
        num = parse_expression(numerator_text, variables)
        den = parse_expression(denominator_text, variables)
    except ParseError as exc:
        raise FixtureError(f"{fixture.name}: {exc}") from exc
    return fixture, RatFunc.make(num, den)


@dataclass(frozen=True)
class ComparisonVerdict:
    kind: str  # EXACT, SCALED, SAMPLED_ONLY, MISMATCH
    constant: Fraction | None = None
    witness_point: tuple[Fraction, ...] | None = None
    witness_values: tuple[Fraction, Fraction] | None = None

    def as_dict(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.constant is not None:
            out["constant"] = str(self.constant)
        if self.witness_point is not None:
            out["witness_point"] = [str(x) for x in self.witness_point]
        if self.witness_values is not None:
            out["witness_values"] = [str(x) for x in self.witness_values]
        return out


def compare_against_fixture(computed: RatFunc, fixture: RatFunc) -> ComparisonVerdict:
    """Classify how pipeline output relates to a transcribed display."""
    if computed.variables != fixture.variables:
        raise ValueError(
            f"variable lists differ: {computed.variables} vs {fixture.variables}"
        )
    rng = SplitMix64(DEFAULT_SEED)
    dimension = len(computed.variables)
    ratios: list[Fraction] = []
    all_equal = True
    witness: tuple[tuple[Fraction, ...], Fraction, Fraction] | None = None
    for _ in range(COMPARISON_SAMPLES):
        point = rng.point(dimension)
        try:
            left = computed.evaluate(point)
            right = fixture.evaluate(point)
        except ZeroDivisionError:
            continue
        if left != right:
            all_equal = False
            if witness is None:
                witness = (point, left, right)
        if right != 0:
            ratios.append(left / right)
    if all_equal:
        if computed.equals(fixture):
            return ComparisonVerdict("EXACT")
        return ComparisonVerdict("SAMPLED_ONLY")
    if ratios and ratios[0] > 0 and all(r == ratios[0] for r in ratios):
        constant = ratios[0]
        scaled = RatFunc.make(
            fixture.num.scale(constant), fixture.den
        )
        if computed.equals(scaled):
            return ComparisonVerdict("SCALED", constant=constant)
    assert witness is not None
    return ComparisonVerdict(
        "MISMATCH", witness_point=witness[0], witness_values=(witness[1], witness[2])
    )
