"""
Variety Schema Definitions

Pydantic models for the symbolic variety descriptions the toolkit accepts:
projective spaces, hypersurfaces, plane curves and products of those, together
with the integer homogeneous polynomials that cut hypersurfaces out and the
count vectors produced by point counting.
"""

from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.exceptions import InhomogeneousPolynomial, InputError

Exponents = Tuple[int, ...]


class HomogeneousPolynomial(BaseModel):
    """An integer polynomial in x0..x{nvars-1}, stored as sorted (coefficient, exponents) terms."""

    model_config = ConfigDict(frozen=True)

    nvars: int = Field(ge=1)
    terms: Tuple[Tuple[int, Exponents], ...]

    @model_validator(mode="after")
    def _well_formed(self) -> "HomogeneousPolynomial":
        if not self.terms:
            raise InputError("the zero polynomial defines no hypersurface", error_code="VALIDATION_ERROR")
        for coefficient, exps in self.terms:
            if coefficient == 0:
                raise InputError("zero coefficients must be dropped", error_code="VALIDATION_ERROR")
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise InputError(f"bad exponent vector {exps}", error_code="VALIDATION_ERROR")
        degrees = {sum(exps) for _, exps in self.terms}
        if len(degrees) != 1:
            raise InhomogeneousPolynomial(
                f"polynomial mixes total degrees {sorted(degrees)}", degrees=sorted(degrees)
            )
        if degrees == {0}:
            raise InputError("polynomial must have degree at least 1", error_code="VALIDATION_ERROR")
        return self

    @classmethod
    def from_dict(cls, nvars: int, terms: Dict[Exponents, int]) -> "HomogeneousPolynomial":
        cleaned = tuple(sorted(((c, tuple(e)) for e, c in terms.items() if c != 0), key=lambda t: t[1]))
        return cls(nvars=nvars, terms=cleaned)

    @property
    def degree(self) -> int:
        return sum(self.terms[0][1])

    def as_dict(self) -> Dict[Exponents, int]:
        return {exps: c for c, exps in self.terms}

    def derivative(self, i: int) -> Dict[Exponents, int]:
        """Partial derivative in x_i as a term dictionary (possibly empty)."""
        out: Dict[Exponents, int] = {}
        for c, exps in self.terms:
            if exps[i]:
                lowered = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                out[lowered] = out.get(lowered, 0) + c * exps[i]
        return {e: c for e, c in out.items() if c}

    def __str__(self) -> str:
        pieces = []
        for c, exps in self.terms:
            monomial = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            pieces.append(f"{c}*{monomial}" if c != 1 else monomial)
        return " + ".join(pieces).replace("+ -", "- ")


class ProjectiveSpace(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["projective_space"] = "projective_space"
    n: int = Field(ge=0)

    def __str__(self) -> str:
        return f"P({self.n})"


class Hypersurface(BaseModel):
    """V(f) in P^n."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["hypersurface"] = "hypersurface"
    n: int = Field(ge=1)
    f: HomogeneousPolynomial

    @model_validator(mode="after")
    def _variables_match(self) -> "Hypersurface":
        if self.f.nvars != self.n + 1:
            raise InputError(
                f"hypersurface in P^{self.n} needs a form in {self.n + 1} variables, got {self.f.nvars}",
                error_code="VALIDATION_ERROR",
            )
        return self

    def __str__(self) -> str:
        return f"hyp({self.n}; {self.f})"


class PlaneCurve(BaseModel):
    """V(f) in P^2."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["plane_curve"] = "plane_curve"
    f: HomogeneousPolynomial

    @model_validator(mode="after")
    def _three_variables(self) -> "PlaneCurve":
        if self.f.nvars != 3:
            raise InputError("plane curves are cut out by forms in x0, x1, x2", error_code="VALIDATION_ERROR")
        return self

    @property
    def n(self) -> int:
        return 2

    def __str__(self) -> str:
        return f"curve({self.f})"


class Product(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["product"] = "product"
    left: "VarietyExpr"
    right: "VarietyExpr"

    def __str__(self) -> str:
        return f"prod({self.left},{self.right})"


VarietyExpr = Annotated[
    Union[ProjectiveSpace, Hypersurface, PlaneCurve, Product],
    Field(discriminator="kind"),
]
Product.model_rebuild()


class CountVector(BaseModel):
    """N_m = #X(F_{q^m}) for m = 1..M."""

    p: int
    k: int
    counts: List[int]

    @model_validator(mode="after")
    def _non_negative(self) -> "CountVector":
        if any(c < 0 for c in self.counts):
            raise InputError("point counts are non-negative", error_code="VALIDATION_ERROR")
        return self

    @property
    def q(self) -> int:
        return self.p ** self.k


class SmoothnessVerdict(BaseModel):
    """Outcome of a smoothness probe; ``probably_smooth`` is not a proof."""

    verdict: Literal["probably_smooth", "singular_point_found"]
    depth: int
    extension_degree: Optional[int] = None
    witness: Optional[List[List[int]]] = None

    @property
    def is_smooth(self) -> bool:
        return self.verdict == "probably_smooth"
