"""Gamma-matrix sets and the reflection/rotation algebra built from them.

The four generators satisfy the anticommutation table of signature
(+, -, -, -): g0^2 = I, g1^2 = g2^2 = g3^2 = -I, and any two distinct
generators anticommute.  Two constructions are provided (``standard``
Dirac-Pauli and ``chiral``); everything downstream is representation
independent and tested as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Tolerance ladder: integer-entry identities at 1e-14, derived floating
# products at 1e-12.
EXACT_TOL = 1e-14
PRODUCT_TOL = 1e-12

REPRESENTATIONS = ("standard", "chiral")

#: Metric signature (+, -, -, -) on the diagonal.
ETA_DIAG = (1.0, -1.0, -1.0, -1.0)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class GammaSet:
    """Four 4x4 complex generators plus the name of their construction."""

    gammas: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    representation: str

    def __getitem__(self, index: int) -> np.ndarray:
        if index not in (0, 1, 2, 3):
            raise IndexError(f"gamma index must be 0..3, got {index}")
        return self.gammas[index]


@dataclass(frozen=True)
class SpinorMap:
    """A 4x4 spinor-space map tagged with its geometric role.

    ``kind`` is one of ``reflection``, ``rotation``, ``glide``, ``other``;
    ``axis`` names the fixed axis for reflections/rotations where that is
    meaningful.
    """

    matrix: np.ndarray
    kind: str
    axis: int | None = field(default=None)


def _block(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]]).astype(complex)


def build_gamma_set(representation: str = "standard") -> GammaSet:
    """Construct the four generators in the requested representation.

    ``standard`` is the Dirac-Pauli form with g0 = diag(1, 1, -1, -1);
    ``chiral`` has the off-diagonal g0.  Raises ``ValueError`` for any
    other name.
    """
    z2 = np.zeros((2, 2), dtype=complex)
    i2 = np.eye(2, dtype=complex)
    if representation == "standard":
        g0 = _block(i2, z2, z2, -i2)
    elif representation == "chiral":
        g0 = _block(z2, i2, i2, z2)
    else:
        raise ValueError(
            f"unsupported representation {representation!r}; "
            f"expected one of {REPRESENTATIONS}"
        )
    spatial = tuple(_block(z2, s, -s, z2) for s in PAULI)
    return GammaSet(gammas=(g0, *spatial), representation=representation)


def anticommutator(g: GammaSet, l: int, n: int) -> np.ndarray:
    """Return g_l g_n + g_n g_l, unreduced."""
    gl, gn = g[l], g[n]
    return gl @ gn + gn @ gl


def anticommutator_deviation(g: GammaSet, l: int, n: int) -> float:
    """Entrywise max deviation of {g_l, g_n} from 2*eta_ll*delta_ln*I."""
    expected = 2.0 * ETA_DIAG[l] * np.eye(4) if l == n else np.zeros((4, 4))
    return float(np.max(np.abs(anticommutator(g, l, n) - expected)))


def reflection_map(g: GammaSet, axis: int) -> SpinorMap:
    """The generator g_axis tagged as the reflection along ``axis``.

    Squares to +I for the time axis and -I for spatial axes.
    """
    if axis not in (0, 1, 2, 3):
        raise ValueError(f"reflection axis must be 0..3, got {axis}")
    return SpinorMap(matrix=g[axis], kind="reflection", axis=axis)


def rotation_from_reflections(g: GammaSet, axis: int) -> SpinorMap:
    """Product of the two spatial generators other than ``axis``.

    The product g_a g_b (a < b) implements the half-turn about ``axis``
    on spinors; squaring it gives -I (a full turn), and only the fourth
    power returns to +I.
    """
    if axis not in (1, 2, 3):
        raise ValueError(
            f"rotation axis must be a spatial index 1..3, got {axis}"
        )
    a, b = [i for i in (1, 2, 3) if i != axis]
    return SpinorMap(matrix=g[a] @ g[b], kind="rotation", axis=axis)


def periodicity_order(m: np.ndarray, max_k: int, tol: float = PRODUCT_TOL) -> int | None:
    """Smallest k <= max_k with m^k = I (entrywise within ``tol``), else None."""
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    m = np.asarray(m, dtype=complex)
    eye = np.eye(m.shape[0], dtype=complex)
    power = eye.copy()
    for k in range(1, max_k + 1):
        power = power @ m
        if np.max(np.abs(power - eye)) < tol:
            return k
    return None


def _algebra_basis(g: GammaSet) -> list[np.ndarray]:
    """The 16 products g_A over subsets A of {0,1,2,3}, in index order."""
    basis = []
    for mask in range(16):
        prod = np.eye(4, dtype=complex)
        for i in range(4):
            if mask & (1 << i):
                prod = prod @ g[i]
        basis.append(prod)
    return basis


def intertwiner(a: GammaSet, b: GammaSet, seed: int = 42) -> np.ndarray:
    """Construct S with S a_l S^{-1} = b_l for all four generators.

    Averages a random matrix over the 16-element algebra basis; the
    resulting sum commutes with the action in the required sense because
    left multiplication by a generator permutes the basis with the same
    signs in both representations.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    basis_a = _algebra_basis(a)
    basis_b = _algebra_basis(b)
    s = np.zeros((4, 4), dtype=complex)
    for ba, bb in zip(basis_a, basis_b):
        s += bb @ x @ np.linalg.inv(ba)
    if abs(np.linalg.det(s)) < 1e-10:
        # A measure-zero draw; retry deterministically.
        return intertwiner(a, b, seed=seed + 1)
    return s


def verify_gamma_relations(g: GammaSet) -> list[dict]:
    """Run the full invariant suite on one gamma set.

    Returns one record per identity with the measured deviation, the
    tolerance it is held to, and a pass flag.  Covers the 10 unordered
    anticommutator pairs, invertibility, periodicity orders, the
    half-turn products, and their (anti)commutation pattern.
    """
    checks: list[dict] = []

    def add(name: str, deviation: float, tol: float) -> None:
        checks.append(
            {
                "name": name,
                "max_deviation": float(deviation),
                "tolerance": tol,
                "passed": bool(deviation < tol),
            }
        )

    for l in range(4):
        for n in range(l, 4):
            label = f"anticommutator({l},{n})"
            add(label, anticommutator_deviation(g, l, n), EXACT_TOL)

    for l in range(4):
        det = abs(np.linalg.det(g[l]))
        add(f"invertible(gamma{l})", abs(det - 1.0), EXACT_TOL)

    expected_orders = (2, 4, 4, 4)
    for l in range(4):
        order = periodicity_order(g[l], max_k=8)
        add(
            f"periodicity(gamma{l})=={expected_orders[l]}",
            0.0 if order == expected_orders[l] else 1.0,
            0.5,
        )

    for axis in (1, 2, 3):
        rot = rotation_from_reflections(g, axis).matrix
        add(
            f"half_turn(axis{axis})^2==-I",
            np.max(np.abs(rot @ rot + np.eye(4))),
            PRODUCT_TOL,
        )
        add(
            f"half_turn(axis{axis})^4==I",
            np.max(np.abs(np.linalg.matrix_power(rot, 4) - np.eye(4))),
            PRODUCT_TOL,
        )
        a, b = [i for i in (1, 2, 3) if i != axis]
        add(
            f"half_turn(axis{axis}) commutes with gamma{axis}",
            np.max(np.abs(rot @ g[axis] - g[axis] @ rot)),
            PRODUCT_TOL,
        )
        for i in (a, b):
            add(
                f"half_turn(axis{axis}) anticommutes with gamma{i}",
                np.max(np.abs(rot @ g[i] + g[i] @ rot)),
                PRODUCT_TOL,
            )

    return checks
