"""FastAPI service wrapping the bounds machinery.

Every computation is exposed as a POST endpoint taking a pydantic request and
returning plain data; checked inequalities come back as flags (the client
decides how loud a falsification should be).  Violated mathematical
preconditions map to HTTP 400 with a structured detail.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .bounds import (
    BoundsReport,
    reports_to_csv,
    reports_to_plot_data,
    sandwich_table,
)
from .errors import DomainError
from .mixing import default_mixing_cap, mixing_number
from .schemas import (
    BoundsReportModel,
    BoundsRequest,
    ChainRequest,
    DilatationRequest,
    DilatationResponse,
    FractionModel,
    MatrixRequest,
    MatrixResponse,
    MixingRequest,
    MixingResponse,
    TableRequest,
    TableResponse,
    parse_ray,
)
from .spectral import root_log_dilatation_bound, spectral_radius
from .surfaces import RationalRay
from .twists import (
    TransitionMatrix,
    base_twist_matrix,
    build_base_chain,
    build_lifted_chain,
    column_sum_bound,
    lifted_full_matrix,
    lifted_root_matrix,
    max_column_sum,
    min_column_sum,
)

app = FastAPI(
    title="syslip",
    version=__version__,
    description="Bounds for the Lipschitz constant of the systole map",
)


@app.exception_handler(DomainError)
async def _domain_error(request: Request, exc: DomainError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "math_precondition", "message": str(exc)}},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _build_matrix(req: MatrixRequest) -> tuple[TransitionMatrix, object]:
    ray = parse_ray(req.ray)
    if req.kind == "base":
        chain = build_base_chain(ray, req.intersections)
        return base_twist_matrix(ray, req.index, req.intersections), chain
    chain = build_lifted_chain(ray, req.index, req.intersections, req.seam)
    if req.kind == "lifted_root":
        return lifted_root_matrix(ray, req.index, req.intersections, req.seam), chain
    return lifted_full_matrix(ray, req.index, req.intersections, req.seam), chain


@app.post("/matrix", response_model=MatrixResponse)
def matrix(req: MatrixRequest) -> MatrixResponse:
    m, chain = _build_matrix(req)
    data = m.to_json()
    bound = column_sum_bound(req.index)
    colsum = max_column_sum(m)
    return MatrixResponse(
        dimension=data["dimension"],
        entries=data["entries"],
        provenance=data["provenance"],
        max_column_sum=str(colsum),
        column_sum_bound=str(bound),
        bound_satisfied=colsum <= bound,
        chain=chain.to_json() if req.include_chain else None,
    )


@app.post("/chain")
def chain(req: ChainRequest) -> dict:
    ray = parse_ray(req.ray)
    if req.index is None:
        return build_base_chain(ray, req.intersections).to_json()
    return build_lifted_chain(ray, req.index, req.intersections, req.seam).to_json()


@app.post("/mixing", response_model=MixingResponse)
def mixing(req: MixingRequest) -> MixingResponse:
    ray = parse_ray(req.ray)
    cap = req.cap if req.cap is not None else default_mixing_cap(ray, req.index)
    m = lifted_root_matrix(ray, req.index)
    result = mixing_number(m, cap)
    tl = result.translation_lower_bound
    return MixingResponse(
        dimension=m.dimension,
        cap=cap,
        mixing_number=result.mixing_number,
        within_cap=result.within_cap,
        translation_lower_bound=(
            None if tl is None else FractionModel(numerator=tl.numerator, denominator=tl.denominator)
        ),
    )


@app.post("/dilatation", response_model=DilatationResponse)
def dilatation(req: DilatationRequest) -> DilatationResponse:
    ray = parse_ray(req.ray)
    if req.kind == "base":
        m = base_twist_matrix(ray, req.index)
        closed_form = None
        satisfied = None
    else:
        m = lifted_root_matrix(ray, req.index)
        closed_form = root_log_dilatation_bound(req.index)
    result = spectral_radius(m, tol=req.tol)
    if closed_form is not None:
        satisfied = result.log_upper <= closed_form + max(req.tol, 1e-9)
    return DilatationResponse(
        dimension=m.dimension,
        lower=result.lower,
        upper=result.upper,
        iterations=result.iterations,
        converged=result.converged,
        log_upper=result.log_upper,
        max_column_sum=str(max_column_sum(m)),
        min_column_sum=str(min_column_sum(m)),
        column_sum_bound=str(column_sum_bound(req.index)),
        closed_form_log_bound=closed_form,
        bound_satisfied=satisfied,
    )


def _report_model(report: BoundsReport) -> BoundsReportModel:
    return BoundsReportModel(**report.to_json())


def _family(req: BoundsRequest | TableRequest) -> RationalRay | int:
    if req.ray is not None:
        return parse_ray(req.ray)
    assert req.genus is not None
    return req.genus


@app.post("/bounds", response_model=BoundsReportModel)
def bounds(req: BoundsRequest) -> BoundsReportModel:
    rows = sandwich_table(
        _family(req),
        [req.index],
        collar_override=req.collar_override,
        cap=req.cap,
        use_computed_mixing=req.use_computed_mixing,
        c1=req.c1,
        c2=req.c2,
    )
    return _report_model(rows[0])


@app.post("/table", response_model=TableResponse)
def table(req: TableRequest) -> TableResponse:
    rows = sandwich_table(
        _family(req),
        range(req.start, req.stop + 1),
        collar_override=req.collar_override,
        cap=req.cap,
        use_computed_mixing=req.use_computed_mixing,
        c1=req.c1,
        c2=req.c2,
    )
    return TableResponse(
        rows=[_report_model(r) for r in rows],
        csv=reports_to_csv(rows),
        plot_data=reports_to_plot_data(rows),
    )
