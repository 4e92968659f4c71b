"""Entanglement measures: concurrence (pure, X-form, Wootters), geometric
measure of entanglement for two qubits and three-qubit states, return
probability, entanglement dynamics, and the partial trace.

Parity conservation makes every reduced density matrix of a parity-pure
three-qubit state an X-matrix (nonzero entries only on the diagonal and
anti-diagonal), so the X-form concurrence applies along the production
path; the Wootters formula is kept as the general mixed-state oracle.

The three-qubit geometric measure maximizes a filtered overlap

    Lambda(theta) = |sum_labels psi_label cos^(3-k) theta sin^k theta|

over theta in [0, pi], where k counts occupied sites in the label and
the label set is fixed by a :class:`GmeReference`.  The maximizer is a
dense deterministic grid refined by golden-section steps, identical for
scalar and batched calls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericInvariantError
from .model import THREE_SITE_FULL
from .states import PureState, TargetState, overlap

__all__ = [
    "TwoQubitDensity",
    "X_FORM_TOL",
    "concurrence_pure_2q",
    "spin_flip_overlap",
    "gme_two_qubit",
    "partial_trace",
    "concurrence_x",
    "concurrence_wootters",
    "return_probability",
    "entanglement_dynamics",
    "GmeReference",
    "ghz_reference",
    "w_even_reference",
    "full_state_reference",
    "gme_multipartite",
    "gme_multipartite_batch",
    "gme_product_state_oracle",
]

#: off-pattern entries below this magnitude still count as X-form
X_FORM_TOL = 1e-10

#: tolerances for density-matrix validation
_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-12
_PSD_TOL = 1e-12

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SY_SY = np.kron(_SIGMA_Y, _SIGMA_Y)

#: ordered site pairs a reduced density matrix may keep (1-based)
_VALID_PAIRS = ((1, 2), (2, 3), (1, 3))


@dataclass(frozen=True)
class TwoQubitDensity:
    """4x4 reduced density matrix in the basis {|00>, |01>, |10>, |11>}
    of the kept pair (first site of the pair is the most significant bit).
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        if matrix.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {matrix.shape}")
        herm = np.max(np.abs(matrix - matrix.conj().T))
        if herm > _HERMITICITY_TOL:
            raise NumericInvariantError(f"matrix not Hermitian: {herm:.3e}")
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > _TRACE_TOL:
            raise NumericInvariantError(f"trace {trace} deviates from 1")
        smallest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)[0])
        if smallest < -_PSD_TOL:
            raise NumericInvariantError(
                f"matrix not positive semidefinite: min eigenvalue {smallest:.3e}"
            )

    def is_x_form(self, tol: float = X_FORM_TOL) -> bool:
        """True when entries off the diagonal and anti-diagonal vanish."""
        off = np.array(self.matrix)
        for i in range(4):
            off[i, i] = 0.0
            off[i, 3 - i] = 0.0
        return float(np.max(np.abs(off))) <= tol


def _require_two_qubit(psi: PureState | np.ndarray) -> np.ndarray:
    amplitudes = psi.amplitudes if isinstance(psi, PureState) else np.asarray(
        psi, dtype=complex
    )
    if amplitudes.shape != (4,):
        raise ValueError(
            f"expected 4 two-qubit amplitudes, got shape {amplitudes.shape}"
        )
    return amplitudes


def concurrence_pure_2q(psi: PureState | np.ndarray) -> float:
    """C = 2 |alpha delta - beta gamma| for a normalized pure two-qubit state."""
    a, b, c, d = _require_two_qubit(psi)
    return float(2.0 * abs(a * d - b * c))


def spin_flip_overlap(psi: PureState | np.ndarray) -> float:
    """C = |<psi| sigma_y x sigma_y |psi*>|, the spin-flip route.

    Algebraically identical to :func:`concurrence_pure_2q`; computed
    through the explicit spin-flip operator so the two routes stay
    independent cross-checks.
    """
    amplitudes = _require_two_qubit(psi)
    flipped = _SY_SY @ amplitudes.conj()
    return float(abs(np.vdot(amplitudes, flipped)))


def gme_two_qubit(c: float) -> float:
    """Two-qubit geometric measure (1 - sqrt(1 - C^2))/2 from concurrence."""
    c = float(c)
    if c < -1e-12 or c > 1.0 + 1e-12:
        raise ValueError(f"concurrence {c} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return 0.5 * (1.0 - np.sqrt(1.0 - c * c))


def partial_trace(psi: PureState, keep: tuple[int, int]) -> TwoQubitDensity:
    """Reduced density matrix of a site pair of a three-qubit pure state.

    ``keep`` is an ordered 1-based pair from {(1,2), (2,3), (1,3)}; the
    remaining site is traced out.  ``psi`` must be expressed on the full
    eight-state basis (embed sector states first).
    """
    keep = tuple(int(site) for site in keep)
    if keep not in _VALID_PAIRS:
        raise ValueError(f"keep must be one of {_VALID_PAIRS}, got {keep}")
    if psi.dim != 8 or psi.basis != THREE_SITE_FULL:
        raise ValueError("partial trace expects a state on the full 3-site basis")
    tensor = psi.amplitudes.reshape(2, 2, 2)
    traced_axis = ({1, 2, 3} - set(keep)).pop() - 1
    rho = np.tensordot(tensor, tensor.conj(), axes=([traced_axis], [traced_axis]))
    return TwoQubitDensity(rho.reshape(4, 4))


def concurrence_x(rho: TwoQubitDensity) -> float:
    """Concurrence of an X-form density matrix.

    C = 2 max{0, |rho_23| - sqrt(rho_11 rho_44),
                 |rho_14| - sqrt(rho_22 rho_33)}
    (1-based indices).  Rejects matrices that are not X-form; use
    :func:`concurrence_wootters` for those.
    """
    if not rho.is_x_form():
        raise NumericInvariantError(
            "density matrix is not X-form; use concurrence_wootters"
        )
    m = rho.matrix
    diag = np.clip(np.real(np.diag(m)), 0.0, None)
    inner = abs(m[1, 2]) - np.sqrt(diag[0] * diag[3])
    outer = abs(m[0, 3]) - np.sqrt(diag[1] * diag[2])
    return float(2.0 * max(0.0, inner, outer))


def concurrence_wootters(rho: TwoQubitDensity) -> float:
    """General two-qubit mixed-state concurrence.

    eta_i are the square roots of the eigenvalues of rho rho~ in
    decreasing order, rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y);
    C = max{eta_1 - eta_2 - eta_3 - eta_4, 0}.

    With rho = Psi Psi^dagger (eigenvectors scaled by sqrt eigenvalues),
    the eta_i are the singular values of the symmetric matrix
    Psi^T (sigma_y x sigma_y) Psi.  That route gives the zero eta_i of a
    rank-deficient state exactly instead of as sqrt(rounding noise).
    """
    p, v = np.linalg.eigh(rho.matrix)
    psi = v * np.sqrt(np.clip(p, 0.0, None))
    eta = np.linalg.svd(psi.T @ _SY_SY @ psi, compute_uv=False)
    return float(max(0.0, eta[0] - eta[1] - eta[2] - eta[3]))


def return_probability(psi0: PureState, psit: PureState) -> float:
    """R_p = |<psi(0)|psi(t)>|^2."""
    return float(abs(overlap(psi0, psit)) ** 2)


def entanglement_dynamics(target: TargetState, psit: PureState) -> float:
    """E_d = |<phi|psi(t)>|^2 against a fixed entangled target."""
    return float(abs(overlap(target.state, psit)) ** 2)


@dataclass(frozen=True)
class GmeReference:
    """Which basis amplitudes enter the filtered separable overlap."""

    kind: str
    filter_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        indices = tuple(sorted(int(i) for i in self.filter_indices))
        object.__setattr__(self, "filter_indices", indices)
        if len(set(indices)) != len(indices) or any(
            i < 0 or i > 7 for i in indices
        ):
            raise ValueError("filter must be a subset of the 8 three-qubit labels")


def ghz_reference() -> GmeReference:
    """Collect the |000> and |111> amplitudes."""
    return GmeReference("ghz", (0, 7))


def w_even_reference() -> GmeReference:
    """Collect the |000>, |011>, |101>, |110> amplitudes."""
    return GmeReference("w", (0, 3, 5, 6))


def full_state_reference() -> GmeReference:
    """Collect all eight amplitudes."""
    return GmeReference("full", tuple(range(8)))


#: number of occupied sites per lexicographic basis index
_ONES_COUNT = np.array([bin(k).count("1") for k in range(8)])

#: dense theta grid over [0, pi] shared by all maximizations
_THETA_GRID = np.linspace(0.0, np.pi, 2048)
_GRID_WEIGHTS = np.stack(
    [
        np.cos(_THETA_GRID) ** 3,
        np.cos(_THETA_GRID) ** 2 * np.sin(_THETA_GRID),
        np.cos(_THETA_GRID) * np.sin(_THETA_GRID) ** 2,
        np.sin(_THETA_GRID) ** 3,
    ],
    axis=1,
)

#: golden-section iterations shrinking the grid bracket below 1e-10
_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
_REFINE_STEPS = 40


def _weight_coefficients(amplitudes: np.ndarray, ref: GmeReference) -> np.ndarray:
    """Group filtered amplitudes by occupation count, shape (..., 4)."""
    coeffs = np.zeros(amplitudes.shape[:-1] + (4,), dtype=complex)
    for index in ref.filter_indices:
        coeffs[..., _ONES_COUNT[index]] += amplitudes[..., index]
    return coeffs


def _overlap_at(theta: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """|Lambda(theta)| evaluated elementwise, theta shaped like coeffs[..., 0]."""
    c = np.cos(theta)
    s = np.sin(theta)
    weights = np.stack([c**3, c * c * s, c * s * s, s**3], axis=-1)
    return np.abs(np.einsum("...k,...k->...", coeffs, weights))


def _max_filtered_overlap(coeffs: np.ndarray) -> np.ndarray:
    """max_theta |Lambda(theta)| over [0, pi] for a batch of coefficient rows.

    Dense 2048-point grid argmax, then a fixed number of golden-section
    steps inside the bracketing grid cell; fully deterministic and
    independent of batch partitioning.
    """
    re = coeffs.real @ _GRID_WEIGHTS.T
    im = coeffs.imag @ _GRID_WEIGHTS.T
    values_sq = re * re + im * im
    best_index = np.argmax(values_sq, axis=-1)
    grid_best = np.sqrt(
        np.take_along_axis(values_sq, best_index[..., None], axis=-1)[..., 0]
    )
    lo = _THETA_GRID[np.maximum(best_index - 1, 0)]
    hi = _THETA_GRID[np.minimum(best_index + 1, len(_THETA_GRID) - 1)]
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1 = _overlap_at(x1, coeffs)
    f2 = _overlap_at(x2, coeffs)
    for _ in range(_REFINE_STEPS):
        take_right = f1 < f2
        lo = np.where(take_right, x1, lo)
        hi = np.where(take_right, hi, x2)
        width = hi - lo
        new_x1 = np.where(take_right, x2, hi - _INV_PHI * width)
        new_x2 = np.where(take_right, lo + _INV_PHI * width, x1)
        probe = np.where(take_right, new_x2, new_x1)
        f_probe = _overlap_at(probe, coeffs)
        new_f1 = np.where(take_right, f2, f_probe)
        new_f2 = np.where(take_right, f_probe, f1)
        x1, x2, f1, f2 = new_x1, new_x2, new_f1, new_f2
    refined = _overlap_at((lo + hi) / 2.0, coeffs)
    return np.maximum(grid_best, refined)


#: rows per chunk in batched geometric-measure evaluation (memory bound)
_GME_CHUNK = 8192


def gme_multipartite_batch(amplitudes: np.ndarray, ref: GmeReference) -> np.ndarray:
    """Geometric measure 1 - Lambda_max^2 for a batch of states, shape (..., 8).

    Results are identical to mapping :func:`gme_multipartite` over the
    rows; internal chunking only bounds memory.
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape[-1] != 8:
        raise ValueError("expected amplitudes over the 8 three-qubit labels")
    coeffs = _weight_coefficients(amplitudes, ref)
    flat = coeffs.reshape(-1, 4)
    lam_max = np.empty(flat.shape[0])
    for start in range(0, flat.shape[0], _GME_CHUNK):
        stop = start + _GME_CHUNK
        lam_max[start:stop] = _max_filtered_overlap(flat[start:stop])
    return (1.0 - lam_max**2).reshape(coeffs.shape[:-1])


def gme_multipartite(psi: PureState, ref: GmeReference) -> float:
    """Geometric measure of a three-qubit pure state against a reference.

    Builds Lambda(theta) from the amplitudes selected by ``ref``
    (GHZ filter: psi_000 cos^3 + psi_111 sin^3; W filter: psi_000 cos^3
    + (psi_011 + psi_101 + psi_110) sin^2 cos), maximizes |Lambda| over
    theta in [0, pi], and returns 1 - Lambda_max^2.
    """
    if psi.dim != 8 or psi.basis != THREE_SITE_FULL:
        raise ValueError("geometric measure expects a state on the full 3-site basis")
    return float(gme_multipartite_batch(psi.amplitudes[None, :], ref)[0])


def gme_product_state_oracle(psi: PureState, n_starts: int = 32) -> float:
    """Full product-state maximization, for validating the filtered route.

    Maximizes |<phi|psi>|^2 over all normalized product states
    phi = prod_i (cos t_i |0> + e^{i p_i} sin t_i |1>), six parameters
    total, using deterministic multi-start local optimization.  Slower
    and only loosely toleranced; the filtered route remains the
    production path.
    """
    from scipy.optimize import minimize

    if psi.dim != 8 or psi.basis != THREE_SITE_FULL:
        raise ValueError("product-state oracle expects the full 3-site basis")
    amplitudes = psi.amplitudes

    def product_amplitudes(x: np.ndarray) -> np.ndarray:
        thetas, phis = x[:3], x[3:]
        zero = np.cos(thetas)
        one = np.sin(thetas) * np.exp(1j * phis)
        out = np.empty(8, dtype=complex)
        for k in range(8):
            bits = ((k >> 2) & 1, (k >> 1) & 1, k & 1)
            out[k] = np.prod([one[i] if b else zero[i] for i, b in enumerate(bits)])
        return out

    def negative_overlap(x: np.ndarray) -> float:
        return -abs(np.vdot(product_amplitudes(x), amplitudes)) ** 2

    rng = np.random.default_rng(20240917)
    starts = rng.uniform(0.0, np.pi, size=(n_starts, 6))
    best = 0.0
    for x0 in starts:
        result = minimize(negative_overlap, x0, method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        best = max(best, -float(result.fun))
    return 1.0 - best
