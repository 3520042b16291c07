"""Radial distortion profiles, the distorted metric tensor, and the
energy/momentum-dependent effective potential they generate.

The distortion is carried by three dimensionless radial profiles
(v1, v2, v3).  v1 deforms the time-time entry, v2 the spatial diagonal,
v3 the spatial off-diagonal entries.  In the nonrelativistic regime they
act on a wavefunction through

    V_eff(r, E, P) = E v1(r) + (1/2m) P^2 v2(r)
                   + (1/m) (Px Py + Px Pz + Py Pz) v3(r),

where P = -i grad and E is the energy argument supplied by the caller
(solvers pass total energy including the rest term; see solvers module).
Position and momentum factors do not commute, so an ordering mode picks
either the right-to-left product as written ("literal") or the Hermitian
symmetrization 0.5 * {P-monomial, v} ("symmetrized", default), which is
what the bound-state solvers require.

All lengths are in units of 1/k_m (natural units).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

PROFILE_KINDS = ("zero", "yukawa", "gaussian", "tabulated")
ORDERINGS = ("symmetrized", "literal")
GRID_DIMENSIONS = ("radial-1d", "cartesian-3d")
SIGN_CONVENTIONS = ("minkowski", "positive")

#: Default clamp radius for profiles singular at the origin; grid-based
#: operators override it with half the local grid spacing.
DEFAULT_R_FLOOR = 1e-6


@dataclass(frozen=True)
class RadialProfile:
    """One dimensionless radial function v(r), decaying at infinity.

    Kinds: ``zero``; ``yukawa`` with v = g exp(-mu r)/(mu r); ``gaussian``
    with v = g exp(-r^2 / (2 sigma^2)); ``tabulated`` with linear
    interpolation on an increasing r-grid (zero beyond it, and the last
    tabulated value must already be zero to 1e-10).
    """

    kind: str
    strength: float = 0.0
    scale: float = 1.0
    r_table: np.ndarray | None = field(default=None, repr=False)
    v_table: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind in ("yukawa", "gaussian") and self.scale <= 0:
            raise ValueError(f"profile scale must be > 0, got {self.scale}")
        if self.kind == "tabulated":
            r = np.asarray(self.r_table, dtype=float)
            v = np.asarray(self.v_table, dtype=float)
            if r.ndim != 1 or r.shape != v.shape or r.size < 2:
                raise ValueError("tabulated profile needs matching 1d r/value tables")
            if np.any(np.diff(r) <= 0):
                raise ValueError("tabulated r-grid must be strictly increasing")
            if abs(v[-1]) > 1e-10:
                raise ValueError(
                    f"tabulated profile must decay: last value {v[-1]!r} "
                    "exceeds 1e-10"
                )
            object.__setattr__(self, "r_table", r)
            object.__setattr__(self, "v_table", v)

    @classmethod
    def zero(cls) -> "RadialProfile":
        return cls(kind="zero")

    @classmethod
    def yukawa(cls, strength: float, range_: float) -> "RadialProfile":
        return cls(kind="yukawa", strength=strength, scale=range_)

    @classmethod
    def gaussian(cls, strength: float, width: float) -> "RadialProfile":
        return cls(kind="gaussian", strength=strength, scale=width)

    @classmethod
    def tabulated(cls, r, values) -> "RadialProfile":
        return cls(kind="tabulated", r_table=r, v_table=values)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or (
            self.kind in ("yukawa", "gaussian") and self.strength == 0.0
        )

    def evaluate(self, r, r_floor: float = DEFAULT_R_FLOOR) -> np.ndarray:
        """v(r) for scalar or array r >= 0, with r clamped to >= r_floor."""
        r = np.asarray(r, dtype=float)
        if self.kind == "zero":
            return np.zeros_like(r)
        if self.kind == "yukawa":
            rr = np.maximum(r, r_floor)
            x = self.scale * rr
            return self.strength * np.exp(-x) / x
        if self.kind == "gaussian":
            return self.strength * np.exp(-(r * r) / (2.0 * self.scale**2))
        return np.interp(r, self.r_table, self.v_table, left=self.v_table[0], right=0.0)

    def origin_behavior(self) -> tuple[float, float]:
        """Leading small-r expansion v(r) = c/r + v0 + O(r); returns (c, v0).

        Used by the radial first-order solver to seed its power-series
        start at the origin.
        """
        if self.kind == "yukawa":
            return self.strength / self.scale, -self.strength
        if self.kind == "gaussian":
            return 0.0, self.strength
        if self.kind == "tabulated":
            return 0.0, float(self.v_table[0])
        return 0.0, 0.0

    def scaled(self, factor: float) -> "RadialProfile":
        """Same shape with the amplitude multiplied by ``factor``."""
        if self.kind == "tabulated":
            return RadialProfile.tabulated(self.r_table, factor * self.v_table)
        return RadialProfile(kind=self.kind, strength=factor * self.strength, scale=self.scale)


@dataclass(frozen=True)
class MetricModel:
    """The three distortion profiles (v1, v2, v3)."""

    v1: RadialProfile
    v2: RadialProfile
    v3: RadialProfile

    @classmethod
    def flat(cls) -> "MetricModel":
        return cls(v1=RadialProfile.zero(), v2=RadialProfile.zero(), v3=RadialProfile.zero())

    @property
    def is_flat(self) -> bool:
        return self.v1.is_zero and self.v2.is_zero and self.v3.is_zero


@dataclass(frozen=True)
class GridSpec:
    """Uniform solver grid: a radial line or a centered cubic box.

    ``extent`` is r_max for radial grids and the box half-width for
    cartesian grids, in units of 1/k_m.  ``points`` counts nodes per axis
    (interior nodes under Dirichlet conditions).
    """

    dimension: str
    extent: float
    points: int

    def __post_init__(self):
        if self.dimension not in GRID_DIMENSIONS:
            raise ValueError(f"unknown grid dimension {self.dimension!r}")
        if self.extent <= 0:
            raise ValueError(f"grid extent must be > 0, got {self.extent}")
        if self.points < 16:
            raise ValueError(f"grid needs at least 16 points per axis, got {self.points}")

    @property
    def spacing(self) -> float:
        """Node spacing under the Dirichlet (interior-node) convention."""
        if self.dimension == "radial-1d":
            return self.extent / (self.points + 1)
        return 2.0 * self.extent / (self.points + 1)

    def radial_nodes(self) -> tuple[np.ndarray, float]:
        """Interior radial nodes (dr, 2dr, ..., n*dr) and the spacing."""
        if self.dimension != "radial-1d":
            raise ValueError("radial nodes are only defined for radial-1d grids")
        dr = self.spacing
        return dr * np.arange(1, self.points + 1), dr

    def cartesian_axis(self, periodic: bool = False) -> tuple[np.ndarray, float]:
        """Per-axis coordinates and spacing for the cubic box."""
        if self.dimension != "cartesian-3d":
            raise ValueError("cartesian axes are only defined for cartesian-3d grids")
        if periodic:
            dx = 2.0 * self.extent / self.points
            return -self.extent + dx * np.arange(self.points), dx
        dx = self.spacing
        return -self.extent + dx * np.arange(1, self.points + 1), dx

    def radii(self, periodic: bool = False) -> tuple[np.ndarray, float]:
        """Flattened |x| values over the grid and the spacing."""
        if self.dimension == "radial-1d":
            return self.radial_nodes()
        axis, dx = self.cartesian_axis(periodic)
        xg, yg, zg = np.meshgrid(axis, axis, axis, indexing="ij")
        return np.sqrt(xg**2 + yg**2 + zg**2).ravel(), dx

    @property
    def size(self) -> int:
        return self.points if self.dimension == "radial-1d" else self.points**3


def metric_tensor(
    m: MetricModel, x, sign_convention: str = "minkowski"
) -> np.ndarray:
    """The 4x4 symmetric tensor at spacetime point x = (x0, x1, x2, x3).

    With the default ``minkowski`` convention the profiles measure the
    deviation from diag(1, -1, -1, -1): g00 = 1 - v1, spatial diagonal
    -(1 - v2), spatial off-diagonal -v3, and time-space entries zero.
    The ``positive`` convention stores every distorted spatial entry as
    1 - v instead; it does not recover the flat tensor at zero distortion
    and exists only for sign-convention comparisons.
    """
    if sign_convention not in SIGN_CONVENTIONS:
        raise ValueError(f"unknown sign convention {sign_convention!r}")
    x = np.asarray(x, dtype=float).reshape(4)
    r = float(np.linalg.norm(x[1:]))
    v1 = float(m.v1.evaluate(r))
    v2 = float(m.v2.evaluate(r))
    v3 = float(m.v3.evaluate(r))
    g = np.zeros((4, 4))
    g[0, 0] = 1.0 - v1
    for i in (1, 2, 3):
        g[i, i] = (1.0 - v2) if sign_convention == "positive" else -(1.0 - v2)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        val = (1.0 - v3) if sign_convention == "positive" else -v3
        g[i, j] = g[j, i] = val
    return g


# ---------------------------------------------------------------------------
# finite-difference operators (second-order central differences)
# ---------------------------------------------------------------------------


def _second_derivative(n: int, dx: float, periodic: bool) -> sp.csr_matrix:
    main = -2.0 * np.ones(n)
    off = np.ones(n - 1)
    d2 = sp.diags([off, main, off], offsets=(-1, 0, 1), format="lil")
    if periodic:
        d2[0, n - 1] = 1.0
        d2[n - 1, 0] = 1.0
    return (d2 / dx**2).tocsr()


def _first_derivative(n: int, dx: float, periodic: bool) -> sp.csr_matrix:
    off = np.ones(n - 1)
    d1 = sp.diags([-off, off], offsets=(-1, 1), format="lil")
    if periodic:
        d1[0, n - 1] = -1.0
        d1[n - 1, 0] = 1.0
    return (d1 / (2.0 * dx)).tocsr()


def _axis_operator(op1d: sp.spmatrix, axis: int, n: int) -> sp.csr_matrix:
    """Lift a 1d operator to the flattened 3d grid along ``axis``."""
    eye = sp.identity(n, format="csr")
    mats = [eye, eye, eye]
    mats[axis] = op1d.tocsr()
    return sp.kron(sp.kron(mats[0], mats[1]), mats[2]).tocsr()


def kinetic_operator(grid: GridSpec, mass: float, periodic: bool = False) -> sp.csr_matrix:
    """P^2 / (2 m) on the grid (radial grids act on the reduced u = r psi)."""
    if grid.dimension == "radial-1d":
        if periodic:
            raise ValueError("periodic boundaries make no sense on a radial grid")
        _, dr = grid.radial_nodes()
        return (-0.5 / mass) * _second_derivative(grid.points, dr, periodic=False)
    _, dx = grid.cartesian_axis(periodic)
    d2 = _second_derivative(grid.points, dx, periodic)
    lap = sum(_axis_operator(d2, axis, grid.points) for axis in range(3))
    return (-0.5 / mass) * lap.tocsr()


def _momentum_squared(grid: GridSpec, periodic: bool) -> sp.csr_matrix:
    return kinetic_operator(grid, mass=0.5, periodic=periodic)  # P^2 = 2m K at m=1/2


def _cross_momentum_sum(grid: GridSpec, periodic: bool) -> sp.csr_matrix:
    """Px Py + Px Pz + Py Pz as a sparse matrix (cartesian grids only)."""
    _, dx = grid.cartesian_axis(periodic)
    d1 = _first_derivative(grid.points, dx, periodic)
    ops = [_axis_operator(d1, axis, grid.points) for axis in range(3)]
    total = None
    for a, b in ((0, 1), (0, 2), (1, 2)):
        term = -(ops[a] @ ops[b])  # (-i d_a)(-i d_b) = -d_a d_b
        total = term if total is None else total + term
    return total.tocsr()


def _profile_diagonal(profile: RadialProfile, grid: GridSpec, periodic: bool) -> sp.csr_matrix:
    r, dx = grid.radii(periodic)
    values = profile.evaluate(r, r_floor=0.5 * dx)
    return sp.diags(values, format="csr")


def _ordered_product(momentum_op: sp.spmatrix, vdiag: sp.spmatrix, ordering: str) -> sp.csr_matrix:
    if ordering == "literal":
        return (momentum_op @ vdiag).tocsr()
    return (0.5 * (momentum_op @ vdiag + vdiag @ momentum_op)).tocsr()


def effective_potential_operator(
    m: MetricModel,
    grid: GridSpec,
    energy: float,
    mass: float,
    ordering: str = "symmetrized",
    periodic: bool = False,
) -> sp.csr_matrix:
    """Assemble V_eff(r, E, P) as a sparse matrix on the flattened grid.

    The energy argument multiplies v1 exactly as given.  Zero profiles
    are skipped so the flat model yields the exact zero operator.
    """
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    if mass <= 0:
        raise ValueError(f"mass must be > 0, got {mass}")
    if grid.dimension == "radial-1d" and not m.v3.is_zero:
        raise ValueError(
            "the v3 cross term couples distinct cartesian axes and needs a "
            "cartesian-3d grid"
        )
    n = grid.size
    total = sp.csr_matrix((n, n))
    if not m.v1.is_zero:
        total = total + energy * _profile_diagonal(m.v1, grid, periodic)
    if not m.v2.is_zero:
        p2 = _momentum_squared(grid, periodic)
        v2 = _profile_diagonal(m.v2, grid, periodic)
        total = total + (0.5 / mass) * _ordered_product(p2, v2, ordering)
    if not m.v3.is_zero:
        cross = _cross_momentum_sum(grid, periodic)
        v3 = _profile_diagonal(m.v3, grid, periodic)
        total = total + (1.0 / mass) * _ordered_product(cross, v3, ordering)
    return total.tocsr()


def effective_potential_apply(
    m: MetricModel,
    psi: np.ndarray,
    grid: GridSpec,
    energy: float,
    mass: float,
    ordering: str = "symmetrized",
    periodic: bool = False,
) -> np.ndarray:
    """V_eff acting on a wavefunction sampled on the grid."""
    psi = np.asarray(psi)
    expected = (
        (grid.points,)
        if grid.dimension == "radial-1d"
        else (grid.points, grid.points, grid.points)
    )
    flat = psi.reshape(-1)
    if psi.shape != expected and flat.shape != (grid.size,):
        raise ValueError(f"wavefunction shape {psi.shape} does not match grid {expected}")
    op = effective_potential_operator(m, grid, energy, mass, ordering, periodic)
    return (op @ flat).reshape(psi.shape)


def effective_hamiltonian(
    m: MetricModel,
    grid: GridSpec,
    base_potential: RadialProfile | None,
    energy: float,
    mass: float,
    ordering: str = "symmetrized",
    periodic: bool = False,
) -> sp.csr_matrix:
    """H(E) = P^2/2m + V_eff(r, E, P) + optional static radial potential."""
    h = kinetic_operator(grid, mass, periodic) + effective_potential_operator(
        m, grid, energy, mass, ordering, periodic
    )
    if base_potential is not None and not base_potential.is_zero:
        h = h + _profile_diagonal(base_potential, grid, periodic)
    return h.tocsr()


def hermiticity_defect(h: sp.spmatrix, seed: int = 42, pairs: int = 4) -> float:
    """max |<phi|H psi> - <H phi|psi>| over seeded random unit vectors."""
    rng = np.random.default_rng(seed)
    n = h.shape[0]
    worst = 0.0
    for _ in range(pairs):
        phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        phi /= np.linalg.norm(phi)
        psi /= np.linalg.norm(psi)
        lhs = np.vdot(phi, h @ psi)
        rhs = np.vdot(h @ phi, psi)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)
