"""Pydantic models for tropfan file formats, settings and reports."""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PLFunctionSpec(BaseModel):
    """A conewise integral linear function as stored in a fan file."""

    model_config = ConfigDict(extra="forbid")

    ray_values: Optional[List[int]] = Field(
        None, description="Values on the primitive ray generators (simplicial fans)"
    )
    facet_forms: Optional[Dict[str, List[int]]] = Field(
        None, description="Integral linear form per facet, keyed by index into cones"
    )

    @model_validator(mode="after")
    def exactly_one_form(self) -> "PLFunctionSpec":
        if (self.ray_values is None) == (self.facet_forms is None):
            raise ValueError("Give exactly one of 'ray_values' or 'facet_forms'")
        return self


class FanFile(BaseModel):
    """JSON description of a fan: rays, all cones and optional decorations."""

    model_config = ConfigDict(extra="forbid")

    ambient_rank: int = Field(..., ge=0, description="Rank of the lattice N")
    rays: List[List[int]] = Field(
        default_factory=list, description="Integer ray generators"
    )
    cones: List[List[int]] = Field(
        default_factory=list,
        description="Every cone as a list of ray indices; the zero cone is implicit",
    )
    weights: Optional[Dict[str, int]] = Field(
        None, description="Facet weights keyed by index into cones"
    )
    function: Optional[PLFunctionSpec] = Field(
        None, description="Optional conewise linear function on the fan"
    )
    product_of: Optional[List["FanFile"]] = Field(
        None, description="The two factors when the fan is a product"
    )

    @model_validator(mode="after")
    def check_product(self) -> "FanFile":
        if self.product_of is not None and len(self.product_of) != 2:
            raise ValueError("'product_of' needs exactly two factors")
        return self


class TropfanSettings(BaseModel):
    """Configuration for the tropfan CLI."""

    threads: int = Field(1, ge=1, description="Worker cap for complex assembly")
    max_ambient_rank: int = Field(
        12, ge=0, description="Largest ambient rank accepted by validation"
    )
    keep_representatives: bool = Field(
        False, description="Keep cycle representative bases in homology reports"
    )
    output_format: Literal["text", "json"] = Field(
        "text", description="Default report format"
    )


# --- reports -----------------------------------------------------------------


class FanSummary(BaseModel):
    """Basic data of a validated fan."""

    ambient_rank: int
    dim: int
    rays: int
    cone_counts: List[int]
    pure: bool
    simplicial: bool
    unimodular: Optional[bool] = None
    balanced: Optional[bool] = None


class BalancingViolation(BaseModel):
    cone: List[int] = Field(..., description="Rays of the codimension-one cone")
    residual: List[int] = Field(
        ..., description="Weighted sum of normals in quotient coordinates"
    )


class BalancingReport(BaseModel):
    balanced: bool
    violations: List[BalancingViolation] = Field(default_factory=list)


class DivisorReport(BaseModel):
    """Orders of vanishing of a function and the resulting divisor."""

    orders: Dict[str, int] = Field(
        default_factory=dict, description="Order per codimension-one cone (ray ids)"
    )
    empty: bool
    support: Optional[FanSummary] = None
    fan: Optional[FanFile] = Field(None, description="The divisor with its weights")


class StarReport(BaseModel):
    """The star fan at one cone."""

    cone: List[int]
    summary: FanSummary
    fan: FanFile


class ModificationReport(BaseModel):
    total: FanSummary
    graph_faces: int
    up_faces: int
    special_ray: Optional[int] = None
    balanced: bool
    fan: FanFile


class HomologyTable(BaseModel):
    """Dimensions H_{p,q} (or H^{p,q}) indexed as dims[p][q]."""

    theory: str
    space: str
    cohomology: bool = False
    p: Optional[int] = Field(
        None, description="Single coefficient degree; dims then holds that row only"
    )
    dims: List[List[int]]
    representatives: Optional[Dict[str, List[List[str]]]] = None


class CapRank(BaseModel):
    p: int
    source_dim: int
    target_dim: int
    rank: int
    injective: bool
    surjective: bool


class PDReport(BaseModel):
    """Poincaré duality for a tropical fan via vanishing and the degree-0 cap."""

    dim: int
    borel_moore: List[List[int]]
    vanishing: bool
    nonvanishing: List[List[int]] = Field(
        default_factory=list, description="(p, q) with q != d and H^BM_{p,q} != 0"
    )
    cap: List[CapRank] = Field(default_factory=list)
    passed: bool


class StarVerdict(BaseModel):
    cone: List[int]
    passed: bool
    detail: Optional[str] = None


class SmoothReport(BaseModel):
    criterion: Literal["local", "aksnes"]
    stars: List[StarVerdict] = Field(default_factory=list)
    passed: bool


class CheckItem(BaseModel):
    """One named comparison inside a verification report."""

    name: str
    expected: str
    actual: str
    passed: bool


class CheckReport(BaseModel):
    """A list of named checks with an overall verdict."""

    title: str
    hypothesis: Optional[bool] = None
    checks: List[CheckItem] = Field(default_factory=list)
    passed: bool


class CheckSuite(BaseModel):
    """Several verification reports run together."""

    title: str
    reports: List[CheckReport] = Field(default_factory=list)
    passed: bool


class ChowReport(BaseModel):
    dims: List[int]
    degree_mode: Literal["pairing", "symmetry"]
    pairing_ranks: List[int] = Field(default_factory=list)
    passed: bool


class RowReport(BaseModel):
    """Exactness of one row E^{•,b} of the cellular double complex."""

    b: int
    dims: List[int] = Field(..., description="Dimensions of E^{a,b} for a = -1, 0, ...")
    exact_at: List[bool]
    exact: bool


class RowExactnessReport(BaseModel):
    k: int
    rows: List[RowReport] = Field(default_factory=list)
    passed: bool


class DeligneReport(BaseModel):
    """The Deligne sequence at one p."""

    p: int
    mode: Literal["euler", "full"]
    dims: List[int]
    euler_characteristic: int
    exact_at: List[bool] = Field(default_factory=list)
    final_term: Optional[int] = None
    final_rank: Optional[int] = Field(
        None, description="Rank of the map onto the final term"
    )
    compact_support_dim: Optional[int] = None
    passed: Optional[bool] = Field(
        ..., description="None when only a zero Euler characteristic is known"
    )


FanFile.model_rebuild()
