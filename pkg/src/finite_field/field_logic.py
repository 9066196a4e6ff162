"""
Finite Field Logic Module

Exact arithmetic in F_q, q = p^k, and in its extensions F_{q^m}. Every field is
F_p[x]/(f) where f is the lexicographically least monic irreducible polynomial
of the required degree (coefficients compared low-degree-first); an extension
of degree m is built directly as the degree km field over F_p.

Elements are encoded as integers 0 <= c < q whose base-p digits are the
coefficients low-degree-first. Small fields additionally build log, antilog and
Zech tables so that point counting can work entirely on discrete logarithms.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_from_int_poly,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_pow_mod,
    gf_rem,
)

from utils.config import get_config
from utils.exceptions import DivisionByZero, InputError, NotPrime, SizeExceeded
from utils.logging import get_logger

logger = get_logger(__name__)

#: discrete-log encoding of the zero element
LOG_ZERO = -1


@dataclass(frozen=True)
class PrimePower:
    """A prime power q = p^k."""

    p: int
    k: int

    def __post_init__(self):
        if not isprime(self.p):
            raise NotPrime(f"{self.p} is not prime", value=self.p)
        if self.k < 1:
            raise InputError(f"extension degree must be positive, got {self.k}", error_code="VALIDATION_ERROR")

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __str__(self) -> str:
        return f"{self.p}^{self.k}"


class GaloisField:
    """
    The field F_{p^k} = F_p[x]/(modulus).

    Instances are immutable after construction (tables are built once, lazily)
    and are safe to share between threads.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus: Tuple[int, ...] = tuple(modulus)
        self._modulus_gf = list(reversed(self.modulus))
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._zech: Optional[List[int]] = None

    # --- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, GaloisField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GaloisField(q={self.p}^{self.k}, modulus={self.modulus})"

    def __getstate__(self):
        state = dict(self.__dict__)
        # tables are cheap to rebuild and large to ship to worker processes
        state["_exp"] = state["_log"] = state["_zech"] = None
        return state

    @property
    def prime_power(self) -> PrimePower:
        return PrimePower(self.p, self.k)

    # --- encoding -----------------------------------------------------------

    def encode(self, coefficients: Sequence[int]) -> int:
        """Integer code of the residue class with the given low-first coefficients."""
        if len(coefficients) > self.k:
            coefficients = self._reduce(coefficients)
        code = 0
        for c in reversed(list(coefficients)):
            code = code * self.p + (c % self.p)
        return code

    def decode(self, code: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.k):
            code, d = divmod(code, self.p)
            digits.append(d)
        return tuple(digits)

    def element(self, value: Union[int, Sequence[int]]) -> "FieldElement":
        """Element from an integer code or a low-first coefficient vector."""
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise InputError(f"code {value} outside [0, {self.q})", error_code="VALIDATION_ERROR")
            return FieldElement(self, self.decode(value))
        return FieldElement(self, self.decode(self.encode(value)))

    def from_integer(self, n: int) -> int:
        """Code of the image of an integer in the prime field."""
        return n % self.p

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    # --- polynomial arithmetic on codes ---------------------------------------

    def _to_gf(self, code: int) -> List[int]:
        return gf_from_int_poly(list(reversed(self.decode(code))), self.p)

    def _from_gf(self, poly: List[int]) -> int:
        return self.encode([int(c) for c in reversed(poly)])

    def _reduce(self, coefficients: Sequence[int]) -> Tuple[int, ...]:
        poly = gf_from_int_poly(list(reversed(list(coefficients))), self.p)
        rem = gf_rem(poly, self._modulus_gf, self.p, ZZ)
        low = [int(c) for c in reversed(rem)]
        return tuple(low + [0] * (self.k - len(low)))

    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            a, da = divmod(a, self.p)
            b, db = divmod(b, self.p)
            out += ((da + db) % self.p) * place
            place *= self.p
        return out

    def neg_code(self, a: int) -> int:
        out, place = 0, 1
        while a:
            a, da = divmod(a, self.p)
            out += ((-da) % self.p) * place
            place *= self.p
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        prod = gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(gf_rem(prod, self._modulus_gf, self.p, ZZ))

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        s, _, h = gf_gcdex(self._to_gf(a), self._modulus_gf, self.p, ZZ)
        # h is the monic gcd, i.e. [1] for a nonzero class modulo an irreducible
        return self._from_gf(s)

    def pow_code(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv_code(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        return self._from_gf(gf_pow_mod(self._to_gf(a), n, self._modulus_gf, self.p, ZZ))

    # --- discrete-log tables ----------------------------------------------------

    def build_tables(self, max_table_size: Optional[int] = None) -> None:
        """Build log/antilog/Zech tables; refused above the configured table size."""
        if self._log is not None:
            return
        bound = max_table_size or get_config().max_table_size
        if self.q > bound:
            raise SizeExceeded(
                f"field of {self.q} elements exceeds the table bound {bound}",
                bound=bound, requested=self.q,
            )
        order = self.q - 1
        primes = list(factorint(order)) if order > 1 else []
        generator = 1
        for g in range(1, self.q):
            if all(self.pow_code(g, order // ell) != 1 for ell in primes):
                generator = g
                break
        exp = [0] * order
        log = [LOG_ZERO] * self.q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self.mul_codes(x, generator)
        zech = [LOG_ZERO] * order
        for n in range(order):
            zech[n] = log[self.add_codes(1, exp[n])]
        self._exp, self._log, self._zech = exp, log, zech
        logger.debug("built field tables", q=self.q, generator=generator)

    @property
    def log_table(self) -> List[int]:
        self.build_tables()
        return self._log

    @property
    def exp_table(self) -> List[int]:
        self.build_tables()
        return self._exp

    @property
    def zech_table(self) -> List[int]:
        self.build_tables()
        return self._zech

    # --- structure --------------------------------------------------------------

    def frobenius(self, a: "FieldElement") -> "FieldElement":
        """The absolute Frobenius x -> x^p."""
        return arith(a, self.p, "pow")

    def extension(self, m: int) -> "GaloisField":
        """F_{q^m}, built as the degree km field over F_p."""
        return make_field(self.p, self.k * m)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, self.decode(code))


@dataclass(frozen=True)
class FieldElement:
    """A residue class modulo the field's modulus, as low-first coefficients mod p."""

    field: GaloisField
    coefficients: Tuple[int, ...]

    @property
    def code(self) -> int:
        return self.field.encode(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return arith(self, other, "add")

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return arith(self, other, "sub")

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return arith(self, other, "mul")

    def __pow__(self, n: int) -> "FieldElement":
        return arith(self, n, "pow")

    def __neg__(self) -> "FieldElement":
        return self.field.element(self.field.neg_code(self.code))

    def inverse(self) -> "FieldElement":
        return arith(self, None, "inv")

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coefficients)} in F_{self.field.q})"


def _least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=k):
        candidate = list(tail) + [1]
        if gf_irreducible_p(list(reversed(candidate)), p, ZZ):
            return tuple(candidate)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


@lru_cache(maxsize=64)
def _field(p: int, k: int) -> GaloisField:
    modulus = _least_irreducible(p, k)
    logger.debug("constructed field", p=p, k=k, modulus=modulus)
    return GaloisField(p, k, modulus)


def make_field(p: int, k: int, max_field_size: Optional[int] = None) -> GaloisField:
    """
    Construct F_{p^k} with its canonical modulus.

    Args:
        p: Characteristic, must be prime
        k: Degree over F_p
        max_field_size: Override of the configured bound on p^k

    Returns:
        The (cached, immutable) field object
    """
    PrimePower(p, k)
    bound = max_field_size or get_config().max_field_size
    if p ** k > bound:
        raise SizeExceeded(f"field size {p}^{k} exceeds bound {bound}", bound=bound, requested=p ** k)
    return _field(p, k)


def arith(a: FieldElement, b: Union[FieldElement, int, None], op: str) -> FieldElement:
    """
    Field operations add, sub, mul, inv and pow.

    For ``inv`` the second operand is ignored; for ``pow`` it is an integer
    exponent (negative exponents invert first).
    """
    field = a.field
    if op in ("add", "sub", "mul"):
        if not isinstance(b, FieldElement) or b.field != field:
            raise InputError(f"{op} needs two elements of the same field", error_code="VALIDATION_ERROR")
    x = a.code
    if op == "add":
        code = field.add_codes(x, b.code)
    elif op == "sub":
        code = field.add_codes(x, field.neg_code(b.code))
    elif op == "mul":
        code = field.mul_codes(x, b.code)
    elif op == "inv":
        code = field.inv_code(x)
    elif op == "pow":
        if not isinstance(b, int):
            raise InputError("pow needs an integer exponent", error_code="VALIDATION_ERROR")
        code = field.pow_code(x, b)
    else:
        raise InputError(f"unknown field operation {op!r}", error_code="VALIDATION_ERROR")
    return FieldElement(field, field.decode(code))


def enumerate_extension(field: GaloisField, m: int, max_points: Optional[int] = None) -> Iterator[FieldElement]:
    """
    Yield each element of F_{q^m} exactly once, in increasing code order.

    Raises:
        SizeExceeded: if q^m is above the enumeration bound
    """
    if m < 1:
        raise InputError(f"extension degree must be positive, got {m}", error_code="VALIDATION_ERROR")
    bound = max_points or get_config().max_points
    size = field.q ** m
    if size > bound:
        raise SizeExceeded(f"enumerating {size} elements exceeds bound {bound}", bound=bound, requested=size)
    return field.extension(m).elements()
