"""Bound-state solvers: the radial first-order (G, F) system with a
Coulomb-class potential, the closed-form reference spectrum, and the
energy-dependent effective-potential eigenproblem.

Energy bookkeeping (natural units, k_m = mass):

* the relativistic radial solver reports total energies including the
  rest term, so bound states sit in (0, mass);
* the effective-potential solver reports rest-subtracted eigenvalues
  (bound states negative), and by default feeds ``mass + E`` into the
  energy-dependent distortion term, which is what makes its first order
  agree with the relativistic solver in the nonrelativistic regime;
* every result records which reference it uses in its diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .metric import GridSpec, MetricModel, RadialProfile, effective_hamiltonian

DEFAULT_SEED = 42

#: Fixed-point stopping rule for the energy-dependent eigenproblem.
FIXED_POINT_TOL = 1e-10
FIXED_POINT_MAX_ITER = 200

#: Bisection/Illinois stopping width for the shooting solver, relative to mass.
SHOOTING_TOL = 1e-15

#: Geometric binding-energy ladder used to bracket shooting eigenvalues:
#: from 0.98*mass down to 1e-8*mass with ratio 0.93, which places at least
#: one ladder point between consecutive Coulomb-class levels.
LADDER_RATIO = 0.93
LADDER_DEEPEST = 0.98
LADDER_FLOOR = 1e-8

ENERGY_CONVENTIONS = ("total", "eigenvalue")


@dataclass
class SpectrumResult:
    """Ordered bound-state energies plus solver diagnostics."""

    energies: list[float]
    states: list[np.ndarray] | None
    diagnostics: dict

    def __post_init__(self):
        self.energies = [float(e) for e in self.energies]
        if any(b < a for a, b in zip(self.energies, self.energies[1:])):
            raise ValueError("energies must be sorted ascending")


@dataclass(frozen=True)
class CoulombProblem:
    """Point-charge problem: dimensionless coupling, mass, angular channel."""

    coupling: float
    mass: float = 1.0
    kappa: int = -1

    def __post_init__(self):
        if self.coupling >= 1.0:
            raise ValueError(
                f"coupling {self.coupling} >= 1 is supercritical: the "
                "closed-form spectrum turns complex"
            )
        if self.coupling <= 0.0:
            raise ValueError(f"coupling must be > 0, got {self.coupling}")
        if self.kappa == 0:
            raise ValueError("the angular quantum number kappa cannot be 0")
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")


def sommerfeld_energy(coupling: float, n: int, kappa: int, mass: float = 1.0) -> float:
    """Closed-form bound-state energy (rest energy included).

    E = mass / sqrt(1 + (c / (n - |kappa| + sqrt(kappa^2 - c^2)))^2)

    Serves as the independent oracle for the grid solver; it never enters
    the solver itself.
    """
    if not 0.0 < coupling < 1.0:
        raise ValueError(f"coupling must be in (0, 1), got {coupling}")
    if n < 1:
        raise ValueError(f"principal quantum number must be >= 1, got {n}")
    if kappa == 0 or abs(kappa) > n:
        raise ValueError(f"kappa={kappa} invalid for n={n}")
    if kappa > 0 and n == kappa:
        raise ValueError(f"no bound state with kappa={kappa} at n={n}")
    gamma = np.sqrt(kappa * kappa - coupling * coupling)
    denom = n - abs(kappa) + gamma
    return float(mass / np.sqrt(1.0 + (coupling / denom) ** 2))


# ---------------------------------------------------------------------------
# radial first-order solver (two-sided shooting, vectorized over energy)
# ---------------------------------------------------------------------------
#
# System, with V = V(r, E) = V_static(r) + E * V_coupled(r):
#   G' = -(kappa/r) G + (E + mass - V) F
#   F' = +(kappa/r) F + (mass - E + V) G
# integrated by the explicit midpoint rule outward from the first node
# (power-series start) and inward from r_max (decaying start), matched at
# one third of the range.  Eigenvalues are roots of the normalized
# matching determinant, bracketed on the binding ladder and polished by
# the Illinois variant of false position.


@dataclass(frozen=True)
class _RadialPotential:
    """V(r, E) = static(r) + E * coupled(r), with small-r data.

    ``static_origin``/``coupled_origin`` give (c, v0) in the expansion
    v(r) = c / r + v0 + O(r) of the respective part.
    """

    static: Callable[[np.ndarray], np.ndarray]
    static_origin: tuple[float, float]
    coupled: Callable[[np.ndarray], np.ndarray] | None = None
    coupled_origin: tuple[float, float] = (0.0, 0.0)


def _series_start(
    kappa: int, mass: float, energies: np.ndarray, r1: float, pot: _RadialPotential
) -> tuple[np.ndarray, np.ndarray]:
    """Two-term small-r series values (G, F)(r1) for each energy.

    Writing V = -c_att/r + v0 near the origin, the indicial exponent is
    gamma = sqrt(kappa^2 - c_att^2) and the leading amplitudes satisfy
    (gamma + kappa) a0 = c_att b0.  The O(r) correction keeps the start
    error at second order in the grid spacing.
    """
    cs, v0s = pot.static_origin
    cw, v0w = pot.coupled_origin
    c_att = -(cs + energies * cw)
    v0 = v0s + energies * v0w

    if np.any(c_att * c_att >= kappa * kappa):
        raise ValueError(
            "potential too singular at the origin: |r V(r)| approaches "
            f"|kappa| = {abs(kappa)} and the power-series start turns complex"
        )
    gamma = np.sqrt(kappa * kappa - c_att * c_att)

    e_plus = energies + mass - v0
    e_minus = mass - energies + v0

    regular = np.abs(c_att) < 1e-12
    a0 = np.where(regular & (kappa > 0), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        b0 = np.where(regular, np.where(kappa > 0, 1.0, 0.0), (gamma + kappa) * a0 / c_att)

    # first-order coefficients: for c_att != 0 solve the 2x2 linear system
    #   (gamma+1+kappa) a1 - c_att b1 = e_plus  * b0
    #   c_att a1 + (gamma+1-kappa) b1 = e_minus * a0
    det = 2.0 * gamma + 1.0
    rhs1 = e_plus * b0
    rhs2 = e_minus * a0
    a1 = ((gamma + 1.0 - kappa) * rhs1 + c_att * rhs2) / det
    b1 = (-c_att * rhs1 + (gamma + 1.0 + kappa) * rhs2) / det
    if np.any(regular):
        # degenerate limits: one component leads by a full power of r
        a1 = np.where(regular & (kappa > 0), e_plus * b0 / (2 * kappa + 1), a1)
        b1 = np.where(regular & (kappa > 0), 0.0, b1)
        b1 = np.where(regular & (kappa < 0), e_minus * a0 / (2 * abs(kappa) + 1), b1)
        a1 = np.where(regular & (kappa < 0), 0.0, a1)

    scale = np.power(r1, gamma)
    g = scale * (a0 + a1 * r1)
    f = scale * (b0 + b1 * r1)
    norm = np.maximum(np.abs(g), np.abs(f))
    return g / norm, f / norm


def _decaying_start(mass: float, energies: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Asymptotic amplitude ratio of the decaying solution at large r."""
    ratio = -np.sqrt(np.maximum(mass - energies, 0.0) / (mass + energies))
    return np.ones_like(energies), ratio


class _ShootingEngine:
    """Precomputed grid/potential data plus the matching-defect sweep."""

    def __init__(self, kappa: int, mass: float, grid: GridSpec, pot: _RadialPotential):
        if grid.dimension != "radial-1d":
            raise ValueError("the radial solver needs a radial-1d grid")
        if mass <= 0:
            raise ValueError(f"mass must be > 0, got {mass}")
        self.kappa = kappa
        self.mass = mass
        self.pot = pot
        n_nodes = grid.points + 1  # nodes h, 2h, ..., r_max
        self.h = grid.extent / n_nodes
        self.r_nodes = self.h * np.arange(0, n_nodes + 1)  # index 0 unused
        self.r_mids = self.h * (np.arange(0, n_nodes) + 0.5)
        self.match = max(4, (n_nodes + 1) // 3)
        self.last_node = n_nodes

        self.vs_nodes = self._eval_static(self.r_nodes)
        self.vs_mids = self._eval_static(self.r_mids)
        if pot.coupled is not None:
            self.vw_nodes = np.asarray(pot.coupled(self.r_nodes[1:]), dtype=float)
            self.vw_nodes = np.concatenate(([0.0], self.vw_nodes))
            self.vw_mids = np.asarray(pot.coupled(self.r_mids), dtype=float)
        else:
            self.vw_nodes = None
            self.vw_mids = None
        with np.errstate(divide="ignore"):
            self.c_nodes = kappa / self.r_nodes
            self.c_mids = kappa / self.r_mids
        self.c_nodes[0] = 0.0  # node 0 never enters a step

    def _eval_static(self, r: np.ndarray) -> np.ndarray:
        out = np.zeros_like(r)
        positive = r > 0
        out[positive] = np.asarray(self.pot.static(r[positive]), dtype=float)
        return out

    def _coefficients(self, energies: np.ndarray):
        """A = E + m - V and B = m - E + V on nodes and midpoints."""
        e = energies[None, :]
        vs_n = self.vs_nodes[:, None]
        vs_m = self.vs_mids[:, None]
        if self.vw_nodes is not None:
            v_n = vs_n + e * self.vw_nodes[:, None]
            v_m = vs_m + e * self.vw_mids[:, None]
        else:
            v_n, v_m = vs_n, vs_m
        a_n = e + self.mass - v_n
        b_n = self.mass - e + v_n
        a_m = e + self.mass - v_m
        b_m = self.mass - e + v_m
        return a_n, b_n, a_m, b_m

    def _integrate(
        self,
        energies: np.ndarray,
        outward: bool,
        keep_track: bool = False,
    ):
        """Midpoint-rule integration to the match node.

        During energy scans the solution is renormalized every 64 steps
        (deep trial energies amplify by e^(lambda r) far beyond float
        range); the matching defect is invariant under these positive
        rescalings.  With ``keep_track`` the renormalization is skipped
        so the recorded trajectory is a genuine solution, which is safe
        at converged bound-state energies where the growth stays in
        range.
        """
        a_n, b_n, a_m, b_m = self._coefficients(energies)
        kap = self.kappa
        h = self.h if outward else -self.h

        if outward:
            g, f = _series_start(kap, self.mass, energies, self.r_nodes[1], self.pot)
            steps = range(1, self.match)
            mid_of = lambda k: k  # midpoint between k and k+1
        else:
            g, f = _decaying_start(self.mass, energies)
            steps = range(self.last_node, self.match, -1)
            mid_of = lambda k: k - 1

        track = [(g.copy(), f.copy())] if keep_track else None
        for count, k in enumerate(steps):
            cn = self.c_nodes[k]
            k1g = a_n[k] * f - cn * g
            k1f = b_n[k] * g + cn * f
            gm = g + 0.5 * h * k1g
            fm = f + 0.5 * h * k1f
            j = mid_of(k)
            cm = self.c_mids[j]
            g = g + h * (a_m[j] * fm - cm * gm)
            f = f + h * (b_m[j] * gm + cm * fm)
            if not keep_track and count % 64 == 63:
                scale = np.maximum(np.maximum(np.abs(g), np.abs(f)), 1e-280)
                g /= scale
                f /= scale
            if keep_track:
                track.append((g.copy(), f.copy()))
        return (g, f, track) if keep_track else (g, f)

    def matching_defect(self, energies: np.ndarray, chunk: int = 64) -> np.ndarray:
        """Normalized matching determinant; zero exactly at eigenvalues."""
        energies = np.atleast_1d(np.asarray(energies, dtype=float))
        out = np.empty_like(energies)
        for lo in range(0, energies.size, chunk):
            e = energies[lo : lo + chunk]
            g_out, f_out = self._integrate(e, outward=True)
            g_in, f_in = self._integrate(e, outward=False)
            det = g_out * f_in - f_out * g_in
            norm = (np.abs(g_out) + np.abs(f_out)) * (np.abs(g_in) + np.abs(f_in))
            out[lo : lo + chunk] = det / np.maximum(norm, 1e-280)
        return out

    def eigenfunction(self, energy: float) -> np.ndarray:
        """Matched, normalized (G, F) on the interior nodes."""
        e = np.array([energy])
        g_o, f_o, track_o = self._integrate(e, outward=True, keep_track=True)
        g_i, f_i, track_i = self._integrate(e, outward=False, keep_track=True)
        n_interior = self.last_node - 1
        gf = np.zeros((2, n_interior))
        for offset, (g, f) in enumerate(track_o):
            node = 1 + offset
            gf[:, node - 1] = (g[0], f[0])
        scale = (g_o[0] * g_i[0] + f_o[0] * f_i[0]) / max(
            g_i[0] ** 2 + f_i[0] ** 2, 1e-280
        )
        for offset, (g, f) in enumerate(track_i):
            node = self.last_node - offset
            if node <= self.match:
                break
            if node <= n_interior:
                gf[:, node - 1] = (scale * g[0], scale * f[0])
        norm = np.sqrt(np.sum(gf**2) * self.h)
        return gf / max(norm, 1e-280)


def _binding_ladder(mass: float) -> np.ndarray:
    """Geometric ladder of trial total energies, deepest first."""
    n_steps = int(np.ceil(np.log(LADDER_DEEPEST / LADDER_FLOOR) / np.log(1.0 / LADDER_RATIO)))
    binding = -LADDER_DEEPEST * mass * LADDER_RATIO ** np.arange(n_steps + 1)
    return mass + binding


def _refine_roots(
    engine: _ShootingEngine,
    lo: np.ndarray,
    hi: np.ndarray,
    f_lo: np.ndarray,
    f_hi: np.ndarray,
    tol: float,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Illinois false-position refinement of bracketed determinant roots."""
    a, b = lo.copy(), hi.copy()
    fa, fb = f_lo.copy(), f_hi.copy()
    iterations = 0
    for _ in range(120):
        if np.all(b - a < tol):
            break
        iterations += 1
        with np.errstate(divide="ignore", invalid="ignore"):
            x = b - fb * (b - a) / (fb - fa)
        bad = ~np.isfinite(x) | (x <= a) | (x >= b)
        x = np.where(bad, 0.5 * (a + b), x)
        fx = engine.matching_defect(x)
        exact = fx == 0.0
        left = (fa * fx > 0) & ~exact
        right = ~left & ~exact
        fb = np.where(left, 0.5 * fb, fb)
        fa = np.where(right, 0.5 * fa, fa)
        a = np.where(left | exact, x, a)
        fa = np.where(left | exact, fx, fa)
        b = np.where(right | exact, x, b)
        fb = np.where(right | exact, fx, fb)
    # report the bracket endpoint with the smaller defect
    take_a = np.abs(fa) <= np.abs(fb)
    energies = np.where(take_a, a, b)
    residuals = np.abs(np.where(take_a, fa, fb))
    return energies, residuals, iterations


def solve_radial_dirac(
    kappa: int,
    mass: float,
    grid: GridSpec,
    potential: _RadialPotential,
    count: int = 1,
    keep_states: bool = False,
) -> SpectrumResult:
    """Lowest ``count`` bound states of the radial first-order system.

    Scans the binding ladder for sign changes of the matching defect and
    polishes each bracket; supports potentials with an energy-coupled
    part (the distortion term), which the root search handles natively.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if kappa == 0:
        raise ValueError("kappa cannot be 0")
    engine = _ShootingEngine(kappa, mass, grid, potential)
    ladder = _binding_ladder(mass)
    defects = engine.matching_defect(ladder)
    finite = np.isfinite(defects)
    sign_change = finite[:-1] & finite[1:] & (defects[:-1] * defects[1:] < 0)
    brackets = np.flatnonzero(sign_change)

    warnings: list[str] = []
    if brackets.size < count:
        warnings.append(
            f"found {brackets.size} bound state(s), {count} requested; "
            "grid extent or resolution may be insufficient"
        )
    brackets = brackets[:count]

    if brackets.size == 0:
        return SpectrumResult(
            energies=[],
            states=[] if keep_states else None,
            diagnostics={
                "solver": "radial-first-order-shooting",
                "energy_reference": "total-including-rest",
                "kappa": kappa,
                "grid": {"dimension": grid.dimension, "extent": grid.extent, "points": grid.points},
                "iterations": 0,
                "matching_defects": [],
                "warnings": warnings + ["no bound state bracketed on the energy ladder"],
            },
        )

    energies, residuals, iterations = _refine_roots(
        engine,
        ladder[brackets],
        ladder[brackets + 1],
        defects[brackets],
        defects[brackets + 1],
        tol=SHOOTING_TOL * mass,
    )
    order = np.argsort(energies)
    energies = energies[order]
    residuals = residuals[order]

    states = [engine.eigenfunction(e) for e in energies] if keep_states else None
    return SpectrumResult(
        energies=list(energies),
        states=states,
        diagnostics={
            "solver": "radial-first-order-shooting",
            "energy_reference": "total-including-rest",
            "kappa": kappa,
            "grid": {"dimension": grid.dimension, "extent": grid.extent, "points": grid.points},
            "iterations": iterations,
            "matching_defects": [float(r) for r in residuals],
            "warnings": warnings,
        },
    )


def radial_coulomb_dirac_spectrum(
    p: CoulombProblem, grid: GridSpec, count: int, keep_states: bool = False
) -> SpectrumResult:
    """Bound spectrum of the point-charge problem in channel ``p.kappa``.

    The attractive potential is -coupling/r; energies are total (rest
    energy included) and match the closed-form values on a converged
    grid.  An undersized box is flagged in the diagnostics rather than
    raised, so refinement studies can still inspect the result.
    """
    coupling = p.coupling
    pot = _RadialPotential(
        static=lambda r: -coupling / r,
        static_origin=(-coupling, 0.0),
    )
    result = solve_radial_dirac(p.kappa, p.mass, grid, pot, count=count, keep_states=keep_states)
    if grid.extent * p.coupling * p.mass / count**2 <= 20.0:
        result.diagnostics["warnings"].append(
            "box too small for the requested number of states: "
            f"extent*coupling*mass/count^2 = {grid.extent * p.coupling * p.mass / count**2:.2f} <= 20"
        )
    result.diagnostics["coupling"] = p.coupling
    ns = principal_numbers(p.kappa, len(result.energies))
    result.diagnostics["principal_numbers"] = ns
    return result


def principal_numbers(kappa: int, count: int) -> list[int]:
    """Principal quantum numbers of the lowest states in channel kappa."""
    first = abs(kappa) if kappa < 0 else kappa + 1
    return [first + i for i in range(count)]


# ---------------------------------------------------------------------------
# energy-dependent effective-potential eigenproblem
# ---------------------------------------------------------------------------


def _lowest_eigenpairs(h: sp.spmatrix, count: int, grid: GridSpec, seed: int):
    """Lowest eigenvalues/vectors of a real symmetric grid operator."""
    n = h.shape[0]
    if grid.dimension == "radial-1d":
        diag = h.diagonal()
        off = h.diagonal(1)
        if h.nnz > 3 * n - 2:
            raise ValueError("radial operator is not tridiagonal; cannot happen in symmetrized mode")
        vals, vecs = scipy.linalg.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, count - 1)
        )
        return vals, vecs
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n)
    vals, vecs = spla.eigsh(h, k=count, which="SA", v0=v0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def schrodinger_bound_states(
    m: MetricModel,
    grid: GridSpec,
    mass: float,
    count: int,
    base_potential: RadialProfile | None = None,
    ordering: str = "symmetrized",
    energy_convention: str = "total",
    seed: int = DEFAULT_SEED,
    keep_states: bool = False,
) -> SpectrumResult:
    """Fixed-point solution of H(E) psi = E psi with the distortion terms.

    Because the distortion potential carries the energy itself, each
    targeted state is iterated: E_{k+1} = eig_s(H(E_k)) starting from the
    spectrum of H(0), until the update falls below 1e-10 * mass or 200
    iterations (flagged, not raised).  With the default ``total``
    convention the energy fed to the distortion term is mass + E; the
    ``eigenvalue`` convention feeds E alone (kept for comparison runs).
    Reported eigenvalues are rest-subtracted either way.
    """
    if ordering != "symmetrized":
        raise ValueError(
            "bound states need the symmetrized ordering; the literal mode "
            "is not Hermitian"
        )
    if energy_convention not in ENERGY_CONVENTIONS:
        raise ValueError(f"unknown energy convention {energy_convention!r}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not m.v3.is_zero and grid.dimension != "cartesian-3d":
        raise ValueError("v3 cross terms require a cartesian-3d grid")

    def hamiltonian(e_value: float) -> sp.csr_matrix:
        e_arg = mass + e_value if energy_convention == "total" else e_value
        return effective_hamiltonian(m, grid, base_potential, e_arg, mass, ordering)

    energy_dependent = not m.v1.is_zero

    e0, _ = _lowest_eigenpairs(hamiltonian(0.0), count, grid, seed)
    energies = []
    states = [] if keep_states else None
    histories: list[list[float]] = []
    converged_flags: list[bool] = []
    residuals: list[float] = []

    for s in range(count):
        e = float(e0[s])
        history = [e]
        converged = not energy_dependent
        if energy_dependent:
            for _ in range(FIXED_POINT_MAX_ITER):
                vals, _ = _lowest_eigenpairs(hamiltonian(e), count, grid, seed)
                e_new = float(vals[s])
                history.append(e_new)
                if abs(e_new - e) < FIXED_POINT_TOL * mass:
                    e = e_new
                    converged = True
                    break
                e = e_new
        h_final = hamiltonian(e)
        vals, vecs = _lowest_eigenpairs(h_final, count, grid, seed)
        e = float(vals[s])
        psi = vecs[:, s]
        residual = float(np.linalg.norm(h_final @ psi - e * psi))
        energies.append(e)
        histories.append(history)
        converged_flags.append(converged)
        residuals.append(residual)
        if keep_states:
            states.append(psi)

    order = np.argsort(energies)
    energies = [energies[i] for i in order]
    histories = [histories[i] for i in order]
    converged_flags = [converged_flags[i] for i in order]
    residuals = [residuals[i] for i in order]
    if keep_states:
        states = [states[i] for i in order]

    return SpectrumResult(
        energies=energies,
        states=states,
        diagnostics={
            "solver": "effective-potential-fixed-point",
            "energy_reference": "rest-subtracted",
            "distortion_energy_argument": energy_convention,
            "grid": {"dimension": grid.dimension, "extent": grid.extent, "points": grid.points},
            "iterations": [len(h) - 1 for h in histories],
            "histories": histories,
            "converged": converged_flags,
            "residual_norms": residuals,
            "seed": seed,
            "ordering": ordering,
        },
    )


def perturbation_first_order(state: np.ndarray, perturbation) -> float:
    """First-order energy response <psi| W |psi> of a normalized state.

    ``perturbation`` may be a matrix/sparse operator or a callable
    returning W psi.  Uses the plain discrete inner product; callers
    working with a weighted quadrature normalize accordingly.
    """
    psi = np.asarray(state).reshape(-1)
    if hasattr(perturbation, "shape") and perturbation.shape[-1] != psi.size:
        raise ValueError(
            f"perturbation shape {perturbation.shape} does not match state "
            f"of size {psi.size}"
        )
    w_psi = perturbation(psi) if callable(perturbation) else perturbation @ psi
    w_psi = np.asarray(w_psi).reshape(-1)
    if w_psi.shape != psi.shape:
        raise ValueError(
            f"perturbation output shape {w_psi.shape} does not match state {psi.shape}"
        )
    return float(np.real(np.vdot(psi, w_psi)))


# ---------------------------------------------------------------------------
# nonrelativistic-limit consistency
# ---------------------------------------------------------------------------


@dataclass
class NrLimitReport:
    """Shift comparison between the relativistic and effective solvers."""

    epsilons: list[float]
    dirac_shifts: list[float]
    schrodinger_shifts: list[float]
    discrepancies: list[float]
    fitted_exponent: float
    signs_match: bool
    passed: bool
    diagnostics: dict = field(default_factory=dict)


def fitted_exponent(epsilons, values, floor: float) -> float:
    """Least-squares slope of log|values| against log(epsilons).

    Values below ``floor`` are clamped; if everything sits at the floor
    the discrepancy is numerically zero and the exponent is reported as
    infinity.
    """
    eps = np.asarray(epsilons, dtype=float)
    mag = np.abs(np.asarray(values, dtype=float))
    if np.all(mag <= floor):
        return float("inf")
    clamped = np.maximum(mag, floor)
    slope, _ = np.polyfit(np.log(eps), np.log(clamped), 1)
    return float(slope)


def nr_limit_check(
    model: MetricModel,
    base_potential: RadialProfile,
    mass: float,
    epsilons: list[float],
    grid: GridSpec,
    kappa: int = -1,
    seed: int = DEFAULT_SEED,
) -> NrLimitReport:
    """Compare ground-state shifts of the two solvers across a v1 sweep.

    For each epsilon the time-time distortion eps*v1 enters (a) the
    radial first-order solver through the same structural slot as a
    static time-component potential, V(r, E) = base + E * eps * v1, and
    (b) the effective-potential solver with its ``total`` energy
    convention.  The shift discrepancy must scale at least quadratically
    in epsilon (first orders agree) and both shifts must share sign.
    """
    if not (model.v2.is_zero and model.v3.is_zero):
        raise ValueError(
            "only the time-time (v1) channel has an unambiguous radial "
            "first-order reduction; v2 and v3 must be zero here"
        )
    if model.v1.is_zero:
        raise ValueError("the v1 profile must be nonzero for a limit check")
    eps_list = [float(e) for e in epsilons]
    if len(eps_list) < 2 or any(e <= 0 for e in eps_list):
        raise ValueError("need at least two positive epsilon values")
    eps_list = sorted(eps_list)

    base_origin = base_potential.origin_behavior()

    def dirac_ground(eps: float) -> float:
        coupled = None
        coupled_origin = (0.0, 0.0)
        if eps != 0.0:
            scaled = model.v1.scaled(eps)
            coupled = lambda r: scaled.evaluate(r)
            coupled_origin = scaled.origin_behavior()
        pot = _RadialPotential(
            static=lambda r: base_potential.evaluate(r),
            static_origin=base_origin,
            coupled=coupled,
            coupled_origin=coupled_origin,
        )
        result = solve_radial_dirac(kappa, mass, grid, pot, count=1)
        if not result.energies:
            raise ValueError(
                f"configuration does not bind (radial solver, eps={eps}); "
                "deepen the base potential or enlarge the grid"
            )
        return result.energies[0]

    def schrodinger_ground(eps: float) -> float:
        scaled_model = MetricModel(
            v1=model.v1.scaled(eps), v2=RadialProfile.zero(), v3=RadialProfile.zero()
        )
        result = schrodinger_bound_states(
            scaled_model, grid, mass, count=1, base_potential=base_potential,
            energy_convention="total", seed=seed,
        )
        e = result.energies[0]
        if e >= 0:
            raise ValueError(
                f"configuration does not bind (effective solver, eps={eps})"
            )
        return e

    dirac_base = dirac_ground(0.0)
    schrod_base = schrodinger_ground(0.0)

    dirac_shifts, schrod_shifts, discrepancies = [], [], []
    for eps in eps_list:
        d_shift = dirac_ground(eps) - dirac_base
        s_shift = schrodinger_ground(eps) - schrod_base
        dirac_shifts.append(d_shift)
        schrod_shifts.append(s_shift)
        discrepancies.append(abs(d_shift - s_shift))

    floor = 1e-12 * mass
    exponent = fitted_exponent(eps_list, discrepancies, floor)
    signs_match = all(
        d != 0.0 and s != 0.0 and np.sign(d) == np.sign(s)
        for d, s in zip(dirac_shifts, schrod_shifts)
    )
    return NrLimitReport(
        epsilons=eps_list,
        dirac_shifts=dirac_shifts,
        schrodinger_shifts=schrod_shifts,
        discrepancies=discrepancies,
        fitted_exponent=exponent,
        signs_match=signs_match,
        passed=bool(exponent >= 2.0 and signs_match),
        diagnostics={
            "dirac_baseline_total": dirac_base,
            "schrodinger_baseline": schrod_base,
            "binding_baseline": dirac_base - mass,
            "kappa": kappa,
            "grid": {"dimension": grid.dimension, "extent": grid.extent, "points": grid.points},
            "discrepancy_floor": floor,
            "seed": seed,
        },
    )
