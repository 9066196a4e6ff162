"""
Input Parser Module

Reads the line-based input documents:

    [field]
    p = 5
    k = 1

    [variety]
    expr = curve(x1^2*x2 - x0^3 - x0*x2^2)

    [run]
    r = 1
    terms = 4

and the variety expressions inside them:

    expr  := 'P(' nat ')' | 'hyp(' nat ';' poly ')' | 'curve(' poly ')' | 'prod(' expr ',' expr ')'
    poly  := ['-'] term (('+' | '-') term)*
    term  := [nat ['*']] monom | nat
    monom := var ['^' nat] (['*'] var ['^' nat])*
    var   := 'x' digit+

Whitespace is insignificant inside expressions. Every syntax error carries the
line, the column and the set of tokens that would have been accepted.
"""

from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import isprime

from utils.exceptions import NotPrime, ParseError, UndeclaredVariable
from utils.logging import get_logger
from variety.schemas import (
    HomogeneousPolynomial,
    Hypersurface,
    PlaneCurve,
    Product,
    ProjectiveSpace,
    VarietyExpr,
)

logger = get_logger(__name__)


class FieldSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int
    k: int = Field(default=1, ge=1)


class RunSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    r: Optional[int] = Field(default=None, ge=0)
    terms: Optional[int] = Field(default=None, ge=1)
    max_points: Optional[int] = Field(default=None, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)


class ClaimsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cycle_rank: Optional[int] = Field(default=None, ge=0)
    minimal_poly: Optional[List[int]] = None


class InputDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: Optional[FieldSection] = None
    variety: Optional[VarietyExpr] = None
    run: RunSection = Field(default_factory=RunSection)
    frobenius: Optional[List[List[int]]] = None
    claims: ClaimsSection = Field(default_factory=ClaimsSection)


SECTION_KEYS: Dict[str, Set[str]] = {
    "field": {"p", "k"},
    "variety": {"expr"},
    "run": {"r", "terms", "max_points", "workers"},
    "frobenius": set(),
    "claims": {"cycle_rank", "minimal_poly"},
}


class ExpressionParser:
    """Recursive descent over one expression string; columns are 1-based."""

    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = column - 1

    # --- scanning ---------------------------------------------------------

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _fail(self, message: str, expected: Set[str]) -> ParseError:
        return ParseError(message, line=self.line, column=self.offset + self.pos + 1, expected=expected)

    def peek(self, token: str) -> bool:
        self._skip()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            raise self._fail(f"unexpected {self._current()!r}", {token})

    def _current(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else "end of input"

    def nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._fail(f"unexpected {self._current()!r}", {"integer"})
        return int(self.text[start:self.pos])

    def finish(self) -> None:
        self._skip()
        if self.pos != len(self.text):
            raise self._fail(f"trailing input {self.text[self.pos:]!r}", {"end of input"})

    # --- grammar ----------------------------------------------------------

    def expr(self):
        if self.accept("P("):
            n = self.nat()
            self.expect(")")
            return ProjectiveSpace(n=n)
        if self.accept("hyp("):
            n = self.nat()
            self.expect(";")
            f = self.poly(n + 1)
            self.expect(")")
            return Hypersurface(n=n, f=f)
        if self.accept("curve("):
            f = self.poly(3)
            self.expect(")")
            return PlaneCurve(f=f)
        if self.accept("prod("):
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Product(left=left, right=right)
        raise self._fail(f"unexpected {self._current()!r}", {"P(", "hyp(", "curve(", "prod("})

    def poly(self, nvars: int) -> HomogeneousPolynomial:
        terms: Dict[Tuple[int, ...], int] = {}
        sign = -1 if self.accept("-") else 1
        while True:
            coefficient, exps = self.term(nvars)
            terms[exps] = terms.get(exps, 0) + sign * coefficient
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return HomogeneousPolynomial.from_dict(nvars, terms)

    def term(self, nvars: int) -> Tuple[int, Tuple[int, ...]]:
        exps = [0] * nvars
        coefficient = 1
        if not self.peek("x"):
            if not self._current().isdigit():
                raise self._fail(f"unexpected {self._current()!r}", {"integer", "x<digit>"})
            coefficient = self.nat()
            self.accept("*")
            if not self.peek("x"):
                return coefficient, tuple(exps)
        self.monomial(exps)
        return coefficient, tuple(exps)

    def monomial(self, exps: List[int]) -> None:
        while True:
            index = self.variable(len(exps))
            exps[index] += self.nat() if self.accept("^") else 1
            if self.accept("*"):
                if not self.peek("x"):
                    raise self._fail(f"unexpected {self._current()!r}", {"x<digit>"})
            elif not self.peek("x"):
                return

    def variable(self, nvars: int) -> int:
        column = self.offset + self.pos + 1
        self.expect("x")
        index = self.nat()
        if index >= nvars:
            raise UndeclaredVariable(
                f"x{index} at line {self.line}, column {column} is not among x0..x{nvars - 1}",
                variable=f"x{index}",
            )
        return index


def parse_variety(text: str, line: int = 1, column: int = 1):
    """Parse a variety expression such as ``prod(P(1),P(1))``."""
    parser = ExpressionParser(text, line, column)
    v = parser.expr()
    parser.finish()
    return v


def _parse_int(value: str, line: int, column: int) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise ParseError(f"{value.strip()!r} is not an integer", line=line, column=column, expected={"integer"})


def _parse_list(value: str, line: int, column: int) -> List[int]:
    items = [item for item in value.replace("[", " ").replace("]", " ").split(",")]
    out = []
    for item in items:
        if not item.strip():
            raise ParseError("empty list entry", line=line, column=column, expected={"integer"})
        out.append(_parse_int(item, line, column))
    return out


def parse_input(text: str) -> InputDocument:
    """
    Parse an input document.

    Args:
        text: Document text

    Returns:
        InputDocument with the variety already validated

    Raises:
        ParseError: on syntax errors or unknown sections and keys
        NotPrime: if the field characteristic is not prime
        InhomogeneousPolynomial: if a form mixes degrees
    """
    section: Optional[str] = None
    seen: Set[Tuple[str, str]] = set()
    raw: Dict[str, Dict[str, Tuple[str, int, int]]] = {}
    for number, full in enumerate(text.splitlines(), start=1):
        line = full.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", line=number, column=indent + len(stripped), expected={"]"})
            section = stripped[1:-1].strip()
            if section not in SECTION_KEYS:
                raise ParseError(f"unknown section [{section}]", line=number, column=indent + 1, expected=set(SECTION_KEYS))
            raw.setdefault(section, {})
            continue
        if section is None:
            raise ParseError("key outside of any section", line=number, column=indent, expected={"["})
        if "=" not in line:
            raise ParseError(f"unexpected {stripped!r}", line=number, column=indent, expected={"="})
        key_part, value = line.split("=", 1)
        key = key_part.strip()
        allowed = SECTION_KEYS[section] or {f"P{i}" for i in range(64)}
        if key not in allowed:
            expected = SECTION_KEYS[section] or {"P<degree>"}
            raise ParseError(f"unknown key {key!r} in [{section}]", line=number, column=indent, expected=expected)
        if (section, key) in seen:
            raise ParseError(f"duplicate key {key!r} in [{section}]", line=number, column=indent)
        seen.add((section, key))
        raw[section][key] = (value, number, len(key_part) + 2)

    document: Dict[str, object] = {}
    if "field" in raw:
        values = {key: _parse_int(v, n, c) for key, (v, n, c) in raw["field"].items()}
        if "p" not in values:
            raise ParseError("[field] needs p", line=1, column=1, expected={"p"})
        if not isprime(values["p"]):
            raise NotPrime(f"characteristic {values['p']} is not prime", value=values["p"])
        document["field"] = FieldSection(**values)
    if "variety" in raw:
        if "expr" not in raw["variety"]:
            raise ParseError("[variety] needs expr", line=1, column=1, expected={"expr"})
        value, number, column = raw["variety"]["expr"]
        leading = len(value) - len(value.lstrip())
        document["variety"] = parse_variety(value.strip(), number, column + leading)
    if "run" in raw:
        document["run"] = RunSection(**{key: _parse_int(v, n, c) for key, (v, n, c) in raw["run"].items()})
    if "frobenius" in raw:
        degrees = sorted(int(key[1:]) for key in raw["frobenius"])
        if degrees != list(range(len(degrees))):
            raise ParseError("[frobenius] needs P0..P2d without gaps", line=1, column=1, expected={f"P{len(degrees)}"})
        document["frobenius"] = [_parse_list(*raw["frobenius"][f"P{i}"]) for i in degrees]
    if "claims" in raw:
        claims = raw["claims"]
        document["claims"] = ClaimsSection(
            cycle_rank=_parse_int(*claims["cycle_rank"]) if "cycle_rank" in claims else None,
            minimal_poly=_parse_list(*claims["minimal_poly"]) if "minimal_poly" in claims else None,
        )
    logger.debug("parsed input document", sections=sorted(raw))
    return InputDocument(**document)
