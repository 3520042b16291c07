"""FastAPI application exposing the verification and solver pipelines.

Each endpoint is a thin adapter: validate the request model, run the
corresponding library pipeline, return a response model.  Domain
validation failures surface as HTTP 400 with the offending message;
schema failures are FastAPI's usual 422.
"""

from __future__ import annotations

import functools

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, clifford, planewave, solvers
from ..metric import MetricModel, RadialProfile
from . import schemas

HYDROGEN_TOLERANCE = 1e-6


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    return wrapper


def run_verify_algebra(req: schemas.AlgebraRequest) -> schemas.AlgebraResponse:
    g = clifford.build_gamma_set(req.representation)
    checks = clifford.verify_gamma_relations(g)
    reference = clifford.build_gamma_set("standard")
    s = clifford.intertwiner(g, reference, seed=req.seed)
    s_inv = np.linalg.inv(s)
    deviation = max(
        float(np.max(np.abs(s @ g[l] @ s_inv - reference[l]))) for l in range(4)
    )
    checks.append(
        {
            "name": "similarity_to_standard",
            "max_deviation": deviation,
            "tolerance": 1e-10,
            "passed": deviation < 1e-10,
        }
    )
    return schemas.AlgebraResponse(
        representation=req.representation,
        passed=all(c["passed"] for c in checks),
        checks=[schemas.AlgebraCheck(**c) for c in checks],
        seed=req.seed,
    )


def run_plane_wave(req: schemas.PlaneWaveRequest) -> schemas.PlaneWaveResponse:
    g = clifford.build_gamma_set(req.representation)
    k = planewave.FourMomentum.from_spatial(req.k1, req.k2, req.k3, req.mass)
    spinor = planewave.plane_wave_spinor(k, g, req.branch)
    field = planewave.PlaneWaveField(spinor=spinor, momentum=k)

    translation_checks = []
    skipped = []
    for axis in range(4):
        if k.k[axis] == 0.0:
            skipped.append(axis)
            continue
        _, residual = planewave.translation_apply(field, axis, seed=req.seed)
        translation_checks.append(
            schemas.TranslationCheck(
                axis=axis, shift=planewave.translation_shift(k, axis), residual=residual
            )
        )

    operator_residual = planewave.dirac_operator_residual(k, g, req.branch)
    glide_residual = planewave.glide_form_residual(k, g, req.branch, seed=req.seed)
    tol = planewave.RESIDUAL_TOL * req.mass
    passed = (
        abs(planewave.dispersion_residual(k)) < planewave.ONSHELL_TOL * req.mass**2
        and all(c.residual < planewave.RESIDUAL_TOL for c in translation_checks)
        and operator_residual < tol
        and glide_residual < tol
        and abs(operator_residual - glide_residual) < tol
    )
    return schemas.PlaneWaveResponse(
        momentum=list(k.k),
        mass=req.mass,
        branch=req.branch,
        on_shell=k.is_on_shell(),
        dispersion_residual=planewave.dispersion_residual(k),
        spinor_re=[float(x) for x in spinor.u.real],
        spinor_im=[float(x) for x in spinor.u.imag],
        translation_checks=translation_checks,
        skipped_axes=skipped,
        operator_residual=operator_residual,
        glide_form_residual=glide_residual,
        residual_tolerance=tol,
        passed=passed,
        seed=req.seed,
    )


def run_hydrogen(req: schemas.HydrogenRequest) -> schemas.HydrogenResponse:
    grid = req.resolved_grid()
    rows: list[schemas.HydrogenRow] = []
    warnings: list[str] = []
    for kappa in req.kappas:
        problem = solvers.CoulombProblem(coupling=req.coupling, mass=req.mass, kappa=kappa)
        result = solvers.radial_coulomb_dirac_spectrum(problem, grid, count=req.count)
        warnings.extend(f"kappa={kappa}: {w}" for w in result.diagnostics["warnings"])
        ns = solvers.principal_numbers(kappa, len(result.energies))
        for n, energy in zip(ns, result.energies):
            exact = solvers.sommerfeld_energy(req.coupling, n, kappa, req.mass)
            rows.append(
                schemas.HydrogenRow(
                    kappa=kappa,
                    n=n,
                    energy_grid=energy,
                    energy_sommerfeld=exact,
                    rel_error=abs(energy - exact) / exact,
                )
            )
    passed = (
        len(rows) == req.count * len(req.kappas)
        and all(row.rel_error < HYDROGEN_TOLERANCE for row in rows)
    )
    return schemas.HydrogenResponse(
        coupling=req.coupling,
        mass=req.mass,
        rows=rows,
        tolerance=HYDROGEN_TOLERANCE,
        passed=passed,
        warnings=warnings,
        grid=schemas.GridModel(
            dimension=grid.dimension, extent=grid.extent, points=grid.points
        ),
        seed=req.seed,
    )


def run_bound_states(req: schemas.BoundStatesRequest) -> schemas.BoundStatesResponse:
    base = req.base_potential.to_profile() if req.base_potential else None
    result = solvers.schrodinger_bound_states(
        req.model.to_model(),
        req.grid.to_grid(),
        mass=req.mass,
        count=req.count,
        base_potential=base,
        ordering=req.ordering,
        energy_convention=req.energy_convention,
        seed=req.seed,
    )
    diag = result.diagnostics
    return schemas.BoundStatesResponse(
        energies=result.energies,
        energy_reference=diag["energy_reference"],
        converged=diag["converged"],
        iterations=diag["iterations"],
        residual_norms=diag["residual_norms"],
        histories=diag["histories"],
        passed=all(diag["converged"]),
        seed=req.seed,
    )


def run_nr_limit(req: schemas.NrLimitRequest) -> schemas.NrLimitResponse:
    model = MetricModel(
        v1=req.v1.to_profile(), v2=RadialProfile.zero(), v3=RadialProfile.zero()
    )
    report = solvers.nr_limit_check(
        model,
        req.base_potential.to_profile(),
        mass=req.mass,
        epsilons=req.epsilons,
        grid=req.grid.to_grid(),
        kappa=req.kappa,
        seed=req.seed,
    )
    exponent = report.fitted_exponent
    return schemas.NrLimitResponse(
        epsilons=report.epsilons,
        dirac_shifts=report.dirac_shifts,
        schrodinger_shifts=report.schrodinger_shifts,
        discrepancies=report.discrepancies,
        fitted_exponent=None if np.isinf(exponent) else exponent,
        signs_match=report.signs_match,
        passed=report.passed,
        dirac_baseline_total=report.diagnostics["dirac_baseline_total"],
        schrodinger_baseline=report.diagnostics["schrodinger_baseline"],
        seed=req.seed,
    )


def run_potential_table(req: schemas.PotentialTableRequest) -> schemas.PotentialTableResponse:
    model = req.model.to_model()
    base = req.base_potential.to_profile() if req.base_potential else None
    r = np.linspace(0.0, req.r_max, req.samples)
    # clamp singular profiles at half the sample spacing, as the grid
    # operators do
    r_floor = 0.5 * (r[1] - r[0])
    v1 = model.v1.evaluate(r, r_floor=r_floor)
    v2 = model.v2.evaluate(r, r_floor=r_floor)
    v3 = model.v3.evaluate(r, r_floor=r_floor)
    local = req.energy * v1 + (base.evaluate(r, r_floor=r_floor) if base is not None else 0.0)
    rows = [
        schemas.PotentialTableRow(
            r=float(ri), v1=float(a), v2=float(b), v3=float(c), local_potential=float(d)
        )
        for ri, a, b, c, d in zip(r, v1, v2, v3, local)
    ]
    return schemas.PotentialTableResponse(
        rows=rows,
        energy=req.energy,
        mass=req.mass,
        note=(
            "v2 and v3 enter through momentum operators; this table lists the "
            "profiles and the multiplicative part energy*v1 + base"
        ),
        seed=req.seed,
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="diracglide",
        version=__version__,
        description=(
            "Verification and bound-state pipelines for the glide-reflection "
            "form of the free spin-1/2 wave equation and its distorted-metric "
            "effective potential."
        ),
    )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/algebra/verify", response_model=schemas.AlgebraResponse)
    @_domain_errors
    def algebra_verify(req: schemas.AlgebraRequest):
        return run_verify_algebra(req)

    @app.post("/planewave/analyze", response_model=schemas.PlaneWaveResponse)
    @_domain_errors
    def planewave_analyze(req: schemas.PlaneWaveRequest):
        return run_plane_wave(req)

    @app.post("/hydrogen/spectrum", response_model=schemas.HydrogenResponse)
    @_domain_errors
    def hydrogen_spectrum(req: schemas.HydrogenRequest):
        return run_hydrogen(req)

    @app.post("/boundstates/solve", response_model=schemas.BoundStatesResponse)
    @_domain_errors
    def boundstates_solve(req: schemas.BoundStatesRequest):
        return run_bound_states(req)

    @app.post("/nrlimit/check", response_model=schemas.NrLimitResponse)
    @_domain_errors
    def nrlimit_check(req: schemas.NrLimitRequest):
        return run_nr_limit(req)

    @app.post("/potential/table", response_model=schemas.PotentialTableResponse)
    @_domain_errors
    def potential_table(req: schemas.PotentialTableRequest):
        return run_potential_table(req)

    return app


app = create_app()
