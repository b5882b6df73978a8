"""HTTP service wrapping the handler layer.

Every endpoint takes the same scenario document the CLI consumes and returns
the corresponding response model.  Input problems map to 400, numerical
failures to 422.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from .errors import InputError, NumericalError
from .schemas import (EnumerateResponse, EquilibrateResponse,
                      ObservablesResponse, OptimizeResponse, Scenario,
                      SweepResponse, ValidateResponse)

app = FastAPI(title="econ-ensemble",
              description="Equilibrium-ensemble observables for economic systems")


@app.exception_handler(InputError)
async def _input_error(_req: Request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": str(exc)})


@app.exception_handler(NumericalError)
async def _numerical_error(_req: Request, exc: NumericalError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"error": str(exc)})


@app.get("/health")
async def health() -> dict:
    return {"status": "ok"}


@app.post("/observables", response_model=ObservablesResponse,
          response_model_exclude_none=False)
async def observables(scenario: Scenario,
                      verbose: bool = False) -> ObservablesResponse:
    return handlers.run_observables(scenario, verbose=verbose)


@app.post("/sweep", response_model=SweepResponse)
async def sweep(scenario: Scenario) -> SweepResponse:
    return handlers.run_sweep(scenario)


@app.post("/enumerate", response_model=EnumerateResponse)
async def enumerate_states(scenario: Scenario) -> EnumerateResponse:
    return handlers.run_enumerate(scenario)


@app.post("/equilibrate", response_model=EquilibrateResponse)
async def equilibrate(scenario: Scenario,
                      verbose: bool = False) -> EquilibrateResponse:
    return handlers.run_equilibrate(scenario, verbose=verbose)


@app.post("/optimize-dos", response_model=OptimizeResponse)
async def optimize_dos(scenario: Scenario) -> OptimizeResponse:
    return handlers.run_optimize(scenario)


@app.post("/validate", response_model=ValidateResponse)
async def validate(scenario: Scenario) -> ValidateResponse:
    return handlers.run_validate(scenario)
