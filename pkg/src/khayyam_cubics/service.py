"""HTTP service over the solver, plus the handler layer the CLI reuses.

The pydantic request/response models double as the stable JSON schema of the
CLI's ``--json`` output, so both clients speak the same wire format.  Handlers
are plain functions raising domain errors; the FastAPI routes map those to
HTTP 422.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from pydantic import BaseModel, Field, model_validator

from .classifier import ClassificationError, classify, sign_pattern
from .conics import SPECIES_EQUATION_TEXT, SPECIES_RELATION_TEXT
from .core import CubicEquation, SolveReport
from .parser import DegreeError, EquationSyntaxError, LeadingSignError, parse_equation
from .render import RenderOptions, render_svg
from .solver import DEFAULT_TOL, solve_khayyam
from .taxonomy import FAMILY_REPRESENTATIVE, family_of

INPUT_ERRORS = (ClassificationError, EquationSyntaxError, DegreeError, LeadingSignError)


class EquationRequest(BaseModel):
    """Exactly one of a textual equation or a monic coefficient triple."""

    equation: Optional[str] = None
    coeffs: Optional[Tuple[float, float, float]] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "EquationRequest":
        if (self.equation is None) == (self.coeffs is None):
            raise ValueError("provide exactly one of 'equation' or 'coeffs'")
        return self

    def cubic(self) -> CubicEquation:
        if self.equation is not None:
            return parse_equation(self.equation)
        return CubicEquation(*self.coeffs)


class SolveRequest(EquationRequest):
    tolerance: float = Field(default=DEFAULT_TOL, gt=0)


class RenderRequest(EquationRequest):
    tolerance: float = Field(default=DEFAULT_TOL, gt=0)
    width_px: int = 800
    height_px: int = 800
    show_hidden: bool = True
    samples_per_branch: int = 256
    margin_factor: float = 1.2


class ConicOut(BaseModel):
    role: str
    kind: str
    coeffs: List[float]


class RootOut(BaseModel):
    x: float
    multiplicity: int
    residual: float


class SolveResponse(BaseModel):
    species: str
    family: str
    params: Dict[str, float]
    conics: List[ConicOut]
    roots: List[RootOut]
    oracle_roots: List[float]
    agreement: bool


class ClassifyResponse(BaseModel):
    species: str
    family: str
    pattern: Tuple[int, int, int]
    params: Dict[str, float]
    equation_form: str
    relations: Tuple[str, str, str]


class TableRow(BaseModel):
    species: str
    family: str
    representative: bool
    equation: str
    working_1: str
    working_2: str
    hidden: str


class TableResponse(BaseModel):
    rows: List[TableRow]


def do_classify(request: EquationRequest) -> ClassifyResponse:
    eq = request.cubic()
    species = classify(eq)
    return ClassifyResponse(
        species=species.id.name,
        family=family_of(species.id).name,
        pattern=sign_pattern(eq).as_tuple(),
        params={k: float(v) for k, v in species.params().items()},
        equation_form=SPECIES_EQUATION_TEXT[species.id],
        relations=SPECIES_RELATION_TEXT[species.id],
    )


def solve_response(report: SolveReport) -> SolveResponse:
    triple = report.triple
    conics = [
        ConicOut(role=role, kind=conic.kind.value,
                 coeffs=[float(c) for c in conic.coefficients()])
        for role, conic in (
            ("working_1", triple.working_1),
            ("working_2", triple.working_2),
            ("hidden", triple.hidden),
        )
    ]
    oracle: List[float] = []
    for root in report.oracle_roots:
        oracle.extend([root.x] * root.multiplicity)
    return SolveResponse(
        species=report.species.id.name,
        family=family_of(report.species.id).name,
        params={k: float(v) for k, v in report.species.params().items()},
        conics=conics,
        roots=[
            RootOut(x=root.x, multiplicity=root.multiplicity, residual=res)
            for root, res in zip(report.roots, report.cubic_residuals)
        ],
        oracle_roots=oracle,
        agreement=report.agreement,
    )


def do_solve(request: SolveRequest) -> SolveResponse:
    return solve_response(solve_khayyam(request.cubic(), tol=request.tolerance))


def do_table() -> TableResponse:
    rows = []
    for species in sorted(SPECIES_EQUATION_TEXT, key=lambda s: s.value):
        family = family_of(species)
        w1, w2, hidden = SPECIES_RELATION_TEXT[species]
        rows.append(
            TableRow(
                species=species.name,
                family=family.name,
                representative=FAMILY_REPRESENTATIVE[family] is species,
                equation=SPECIES_EQUATION_TEXT[species],
                working_1=w1,
                working_2=w2,
                hidden=hidden,
            )
        )
    return TableResponse(rows=rows)


def do_render(request: RenderRequest) -> str:
    report = solve_khayyam(request.cubic(), tol=request.tolerance)
    opts = RenderOptions(
        width_px=request.width_px,
        height_px=request.height_px,
        show_hidden=request.show_hidden,
        samples_per_branch=request.samples_per_branch,
        margin_factor=request.margin_factor,
    )
    return render_svg(report, opts)


def create_app() -> FastAPI:
    app = FastAPI(
        title="khayyam-cubics",
        description="Solve real cubics by classifying them into the thirteen "
                    "classical species and intersecting the species' conics.",
    )

    @app.post("/classify", response_model=ClassifyResponse)
    def classify_endpoint(request: EquationRequest) -> ClassifyResponse:
        try:
            return do_classify(request)
        except INPUT_ERRORS as exc:
            raise HTTPException(status_code=422, detail=_detail(exc))

    @app.post("/solve", response_model=SolveResponse)
    def solve_endpoint(request: SolveRequest) -> SolveResponse:
        try:
            return do_solve(request)
        except INPUT_ERRORS as exc:
            raise HTTPException(status_code=422, detail=_detail(exc))

    @app.get("/table", response_model=TableResponse)
    def table_endpoint() -> TableResponse:
        return do_table()

    @app.post("/render")
    def render_endpoint(request: RenderRequest) -> Response:
        try:
            svg = do_render(request)
        except INPUT_ERRORS as exc:
            raise HTTPException(status_code=422, detail=_detail(exc))
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/healthz")
    def health() -> dict:
        return {"status": "ok"}

    return app


def _detail(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


app = create_app()
