"""
Groups Module

A closed class of abelian groups

    G = Z^a + Q^b + Z/n_1 + ... + Z/n_k + sum_l (Q_l/Z_l)^(c_l),   n_1 | ... | n_k,

with the operations that stay inside it: M/nM, Tate modules, Ulm and
divisible subgroups, l-adic completions, and z(f) = [Ker f]/[Coker f] for
homomorphisms between finitely generated parts.
"""

from collections import defaultdict
from fractions import Fraction
from math import gcd, prod
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import factorint, isprime, multiplicity

from utils.exceptions import InputError, InvalidHomomorphism, NotFinite
from utils.logging import get_logger
from .smith import diagonal, rank_of, smith_rows

logger = get_logger(__name__)


class AbGroup(BaseModel):
    """A member of the closed class; ``cofinite_ranks`` maps l to c_l."""

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(default=0, ge=0)
    rational_rank: int = Field(default=0, ge=0)
    invariant_factors: Tuple[int, ...] = ()
    cofinite_ranks: Dict[int, int] = Field(default_factory=dict)

    @field_validator("invariant_factors")
    @classmethod
    def divisibility_chain(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(n < 2 for n in v):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(v, v[1:])):
            raise ValueError(f"invariant factors {list(v)} do not form a divisibility chain")
        return v

    @field_validator("cofinite_ranks")
    @classmethod
    def prime_keys(cls, v: Dict[int, int]) -> Dict[int, int]:
        for l, c in v.items():
            if not isprime(l):
                raise ValueError(f"Q_l/Z_l needs a prime l, got {l}")
            if c < 0:
                raise ValueError("cofinite ranks must be non-negative")
        return {l: c for l, c in sorted(v.items()) if c}

    @classmethod
    def from_orders(
        cls,
        orders: Sequence[int],
        rational_rank: int = 0,
        cofinite_ranks: Optional[Dict[int, int]] = None,
    ) -> "AbGroup":
        """
        Normalize a direct sum of cyclic groups, 0 meaning Z, into invariant-factor form.

        >>> AbGroup.from_orders([0, 2, 3, 4]).invariant_factors
        (2, 12)
        """
        powers = defaultdict(list)
        free = 0
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free += 1
            elif n > 1:
                for p, e in factorint(n).items():
                    powers[int(p)].append(p ** e)
        for l in powers:
            powers[l].sort(reverse=True)
        length = max((len(v) for v in powers.values()), default=0)
        factors = [prod(v[i] for v in powers.values() if i < len(v)) for i in range(length)]
        return cls(
            free_rank=free,
            rational_rank=rational_rank,
            invariant_factors=tuple(reversed(factors)),
            cofinite_ranks=cofinite_ranks or {},
        )

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0 and self.rational_rank == 0 and not self.cofinite_ranks

    @property
    def is_finitely_generated(self) -> bool:
        return self.rational_rank == 0 and not self.cofinite_ranks

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise NotFinite(f"{self} is infinite", part="group")
        return prod(self.invariant_factors)

    @property
    def cyclic_orders(self) -> List[int]:
        """Orders of the finitely generated part's generators, 0 for Z."""
        return [0] * self.free_rank + list(self.invariant_factors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        if self.rational_rank:
            parts.append("Q" if self.rational_rank == 1 else f"Q^{self.rational_rank}")
        parts.extend(f"Z/{n}" for n in self.invariant_factors)
        for l, c in self.cofinite_ranks.items():
            parts.append(f"Q_{l}/Z_{l}" if c == 1 else f"(Q_{l}/Z_{l})^{c}")
        return " + ".join(parts) or "0"


class TateModule(BaseModel):
    """T G = prod_l Z_l^(rank_l), stored as l -> rank_l."""

    ranks: Dict[int, int] = Field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return not self.ranks


class UlmReport(BaseModel):
    ulm: AbGroup
    divisible: AbGroup
    quotients_finite: bool
    ulm_is_divisible_part: bool
    torsion_free_tate: bool
    uniquely_divisible: bool

    @property
    def proposition_holds(self) -> bool:
        """U(G) = G_div whenever every G/nG is finite, and U(G) is uniquely divisible when TG = 0."""
        first = not self.quotients_finite or self.ulm_is_divisible_part
        second = not self.torsion_free_tate or self.uniquely_divisible
        return first and second


class Completion(BaseModel):
    """G completed l-adically: Z_l^free_rank + finite l-primary part."""

    l: int
    free_rank: int
    finite_part: Tuple[int, ...] = ()


class PairingEmbedding(BaseModel):
    injective: bool
    image_rank: int
    matrix: List[List[int]]
    witness: Optional[List[int]] = None


class GroupHom(BaseModel):
    """
    A homomorphism between finitely generated groups given on cyclic generators.

    ``source_orders`` / ``target_orders`` list generator orders with 0 for Z;
    ``matrix[j][i]`` is the j-th coordinate of the image of generator i.
    """

    source_orders: List[int]
    target_orders: List[int]
    matrix: List[List[int]]

    @model_validator(mode="after")
    def _well_defined(self) -> "GroupHom":
        if any(n < 0 or n == 1 for n in self.source_orders + self.target_orders):
            raise InputError("generator orders must be 0 (for Z) or at least 2", error_code="VALIDATION_ERROR")
        k, t = len(self.source_orders), len(self.target_orders)
        if len(self.matrix) != t or any(len(row) != k for row in self.matrix):
            raise InputError(f"matrix must be {t}x{k}", error_code="VALIDATION_ERROR")
        reduced = []
        for j, (m, row) in enumerate(zip(self.target_orders, self.matrix)):
            reduced.append([x % m for x in row] if m else list(row))
        for i, n in enumerate(self.source_orders):
            if not n:
                continue
            for j, m in enumerate(self.target_orders):
                if (n * reduced[j][i]) % m if m else reduced[j][i]:
                    raise InvalidHomomorphism(
                        f"generator {i} has order {n} but its image does not",
                        column=i,
                    )
        self.matrix = reduced
        return self

    @classmethod
    def between(cls, source: AbGroup, target: AbGroup, matrix: List[List[int]]) -> "GroupHom":
        for group in (source, target):
            if not group.is_finitely_generated:
                raise InputError(f"{group} is not finitely generated", error_code="VALIDATION_ERROR")
        return cls(source_orders=source.cyclic_orders, target_orders=target.cyclic_orders, matrix=matrix)


def integer_kernel(rows: List[List[int]], ncols: int) -> List[List[int]]:
    """Basis of {x in Z^ncols : rows * x = 0}."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    D, _, V = smith_rows(rows)
    r = rank_of(D)
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def lattice_index(generators: List[List[int]], dim: int) -> Optional[int]:
    """[Z^dim : span(generators)], or None when the span has lower rank."""
    if dim == 0:
        return 1
    if not generators:
        return None
    columns = [[g[i] for g in generators] for i in range(dim)]
    D, _, _ = smith_rows(columns)
    if rank_of(D) < dim:
        return None
    return prod(diagonal(D)[:dim])


def _cokernel_order(f: GroupHom) -> int:
    t = len(f.target_orders)
    if t == 0:
        return 1
    relations = [
        list(row) + [m if i == j else 0 for i, m in enumerate(f.target_orders) if m]
        for j, row in enumerate(f.matrix)
    ]
    order = lattice_index([list(col) for col in zip(*relations)], t) if relations[0] else None
    if order is None:
        raise NotFinite("the cokernel has a free part", part="cokernel")
    return order


def _kernel_order(f: GroupHom) -> int:
    k = len(f.source_orders)
    if k == 0:
        return 1
    # x is in the kernel iff A x = R y for some y, R the target relations
    stacked = [
        list(row) + [-m if i == j else 0 for i, m in enumerate(f.target_orders) if m]
        for j, row in enumerate(f.matrix)
    ]
    width = k + sum(1 for m in f.target_orders if m)
    lattice = [v[:k] for v in integer_kernel(stacked, width)]
    free = [i for i, n in enumerate(f.source_orders) if n == 0]
    torsion = [i for i, n in enumerate(f.source_orders) if n]
    if any(v[i] for v in lattice for i in free):
        raise NotFinite("the kernel contains an element of infinite order", part="kernel")
    relations = [[f.source_orders[i] if i == j else 0 for j in torsion] for i in torsion]
    index = lattice_index([[v[i] for i in torsion] for v in lattice] + relations, len(torsion))
    return prod(f.source_orders[i] for i in torsion) // index


def z_value(f: GroupHom) -> Fraction:
    """
    z(f) = [Ker f] / [Coker f].

    Raises:
        NotFinite: if the kernel or the cokernel is infinite
    """
    kernel, cokernel = _kernel_order(f), _cokernel_order(f)
    logger.debug("z value", kernel=kernel, cokernel=cokernel)
    return Fraction(kernel, cokernel)


def quotient_mod_n(G: AbGroup, n: int) -> AbGroup:
    """G/nG, computed componentwise."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}", error_code="VALIDATION_ERROR")
    return AbGroup.from_orders([n] * G.free_rank + [gcd(m, n) for m in G.invariant_factors])


def multiply_by(G: AbGroup, n: int) -> AbGroup:
    """The subgroup nG up to isomorphism."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}", error_code="VALIDATION_ERROR")
    return AbGroup.from_orders(
        [0] * G.free_rank + [m // gcd(m, n) for m in G.invariant_factors],
        rational_rank=G.rational_rank,
        cofinite_ranks=G.cofinite_ranks,
    )


def torsion_T(G: AbGroup) -> TateModule:
    """Tate module; only the Q_l/Z_l components contribute."""
    return TateModule(ranks=dict(G.cofinite_ranks))


def _divisible_summands(G: AbGroup) -> AbGroup:
    # a cyclic summand Z/m is killed by m and Z is not 2-divisible
    return AbGroup(rational_rank=G.rational_rank, cofinite_ranks=G.cofinite_ranks)


def ulm_and_divisible(G: AbGroup, probe: int = 12) -> UlmReport:
    """
    First Ulm subgroup, maximal divisible subgroup, and their comparison.

    U(G) is the intersection of the chain N! G, which stabilizes once N! is
    divisible by the exponent of the torsion; the free part of Z^a drops out
    because ∩ nZ = 0.
    """
    stable = multiply_by(G, prod(G.invariant_factors) or 1)
    ulm = AbGroup(rational_rank=stable.rational_rank, cofinite_ranks=stable.cofinite_ranks)
    divisible = _divisible_summands(G)
    quotients_finite = all(quotient_mod_n(G, n).is_finite for n in range(1, probe + 1))
    tate = torsion_T(G)
    return UlmReport(
        ulm=ulm,
        divisible=divisible,
        quotients_finite=quotients_finite,
        ulm_is_divisible_part=ulm == divisible,
        torsion_free_tate=tate.is_zero,
        uniquely_divisible=not ulm.cofinite_ranks and ulm.free_rank == 0 and not ulm.invariant_factors,
    )


def l_adic_completion(G: AbGroup, l: int) -> Completion:
    """Completion with respect to the subgroups l^n G."""
    if not isprime(l):
        raise InputError(f"l must be prime, got {l}", error_code="VALIDATION_ERROR")
    finite = tuple(l ** multiplicity(l, m) for m in G.invariant_factors if m % l == 0)
    return Completion(l=l, free_rank=G.free_rank, finite_part=finite)


def cyclic_decomposition(relations: Sequence[Sequence[int]]) -> List[int]:
    """
    Invariant factors of Z^n / (column span of ``relations``).

    Raises:
        NotFinite: if the presented group has a free summand
    """
    rows = [list(map(int, row)) for row in relations]
    n = len(rows)
    if n == 0:
        return []
    D, _, _ = smith_rows(rows)
    diag = diagonal(D)
    if rank_of(D) < n:
        raise NotFinite(f"relations of rank {rank_of(D)} on {n} generators leave a free summand", part="group")
    return [d for d in diag[:n] if d > 1]


def pairing_embedding(phi: Sequence[Sequence[int]], l: int) -> PairingEmbedding:
    """
    The map x -> (phi(x, y_1), ..., phi(x, y_n)) for a pairing Z^m x Z^n -> Z.

    The y_i are the standard basis, which reduces to a basis of N/lN. The map is
    injective exactly when the pairing has trivial left kernel after completion,
    i.e. when phi has full row rank.
    """
    if not isprime(l):
        raise InputError(f"l must be prime, got {l}", error_code="VALIDATION_ERROR")
    m = len(phi)
    n = len(phi[0]) if m else 0
    transpose = [[int(phi[i][j]) for i in range(m)] for j in range(n)]
    kernel = integer_kernel(transpose, m)
    return PairingEmbedding(
        injective=not kernel,
        image_rank=m - len(kernel),
        matrix=transpose,
        witness=kernel[0] if kernel else None,
    )
