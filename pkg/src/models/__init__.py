from typing import Optional, List, Dict, Any, Union, Literal
from pydantic import BaseModel, ConfigDict, Field, model_validator


SCHEMA_VERSION = 1
BASE_POINT_CONVENTION = "F(x0) = 0"


class SpaceSection(BaseModel):
    """Interval, measure weight and quadrature settings"""
    model_config = ConfigDict(extra="forbid")

    a: float
    b: float
    weight: str = "1"
    quad_tol: float = Field(default=1e-11, gt=0)
    max_subdivisions: int = Field(default=2000, ge=1)


class BuildSection(BaseModel):
    """Seed, system size and stage weights"""
    model_config = ConfigDict(extra="forbid")

    seed: str
    N: int = Field(ge=1)
    x0: Optional[float] = None  # None -> midpoint of [a, b]
    h: Union[str, List[str]] = "1"  # a single string is used for every stage
    normalize: bool = False
    grid_points: int = Field(default=257, ge=1)

    @model_validator(mode="after")
    def _check_h(self):
        if isinstance(self.h, list) and len(self.h) != self.N - 1:
            raise ValueError(f"h lists {len(self.h)} expressions but N-1 = {self.N - 1} are needed")
        return self

    def h_list(self) -> List[str]:
        if isinstance(self.h, str):
            return [self.h] * (self.N - 1)
        return list(self.h)


class OutputSection(BaseModel):
    """Artifact settings"""
    model_config = ConfigDict(extra="forbid")

    sample_points: int = Field(default=201, ge=2)
    formats: List[Literal["json", "csv"]] = ["json", "csv"]


class CompareSection(BaseModel):
    """Basis handed to Gram-Schmidt by compare-gs"""
    model_config = ConfigDict(extra="forbid")

    basis: List[str]


class ConfigFile(BaseModel):
    """Whole config document"""
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "space": {"a": -1.0, "b": 1.0, "weight": "1"},
                "build": {"seed": "1", "N": 6, "x0": 0.0, "h": "1"},
                "output": {"sample_points": 201},
            }
        },
    )

    space: SpaceSection
    build: BuildSection
    output: OutputSection = OutputSection()
    compare: Optional[CompareSection] = None


# Validation report fragments

class PairResidual(BaseModel):
    i: int
    j: int
    residual: Optional[float] = None
    error: Optional[str] = None


class StageResidual(BaseModel):
    """Residual of one stage; residual is None when the check itself failed"""
    stage: int
    residual: Optional[float] = None
    error: Optional[str] = None


class OrthogonalityReport(BaseModel):
    pairs: List[PairResidual] = []
    max_residual: float = 0.0
    threshold: float
    passed: bool


class StageReport(BaseModel):
    """Per-stage residual check (Wronskian product identity or ODE residual)"""
    stages: List[StageResidual] = []
    max_residual: float = 0.0
    threshold: float
    passed: bool


class IndependenceReport(BaseModel):
    min_abs_wronskian: Optional[float] = None
    gram_determinant: float
    normalized_gram_determinant: float
    floor: float
    passed: bool
    error: Optional[str] = None


class BasePointReport(BaseModel):
    """|F_k(x0)| for every constructed stage"""
    convention: str = BASE_POINT_CONVENTION
    stages: List[StageResidual] = []
    threshold: float
    passed: bool


class ValidationReport(BaseModel):
    orthogonality: OrthogonalityReport
    wronskian_identity: StageReport
    ode: StageReport
    independence: IndependenceReport
    base_point: BasePointReport
    grid_points: int
    passed: bool


class Manifest(BaseModel):
    """JSON manifest written by the build command"""
    schema_version: int = SCHEMA_VERSION
    config: Dict[str, Any]
    coefficients: List[List[float]]
    norms: List[float]
    gram: List[List[float]]
    scales: List[float]
    base_point_convention: str = BASE_POINT_CONVENTION


class ComparisonRow(BaseModel):
    k: int
    alignment: float
