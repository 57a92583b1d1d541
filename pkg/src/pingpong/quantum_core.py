"""Dense complex linear algebra and measurement primitives for small composite systems.

Everything here operates on pure states and density operators over an explicit
``SubsystemLayout``: an ordered list of subsystems, each a qubit (dim 2) or a
3-level photon mode whose basis is {|vac>, |0>, |1>} (vacuum first).  Basis
ordering is row-major over the layout with the first label most significant,
so for a layout (home, travel) the basis is {|00>, |01>, |10>, |11>}.

All values are immutable after construction and every operation is a pure
function of its inputs, except ``measure`` which consumes an explicitly
passed numpy ``Generator``.  Dimensions stay at or below 27 (three 3-level
modes), so the eigensolver is a self-contained cyclic Jacobi sweep rather
than an external routine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "LayoutError",
    "StateInvariantError",
    "MeasurementFault",
    "SubsystemLayout",
    "StateVector",
    "DensityOperator",
    "MeasurementBasis",
    "qubit",
    "mode3",
    "basis_state",
    "state_from_amplitudes",
    "tensor",
    "apply_on",
    "outcome_weights",
    "collapse",
    "measure",
    "MeasurementResult",
    "partial_trace",
    "born_weight",
    "overlap",
    "eigvals_hermitian",
    "von_neumann_entropy",
    "binary_capacity",
    "bz_basis",
    "bell_basis",
    "plus_click_basis",
    "plus_state",
    "minus_state",
]

# Tolerances shared across the package.
NORM_ATOL = 1e-10
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-9
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class LayoutError(ValueError):
    """Raised when subsystem labels or dimensions do not line up."""


class StateInvariantError(ValueError):
    """Raised when a state or operator violates a structural invariant."""


class MeasurementFault(RuntimeError):
    """Raised when a measurement samples a branch that must have weight zero."""


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered subsystem dimensions and their unique role labels.

    ``dims[i]`` is 2 for a qubit or 3 for a photon mode with a vacuum level.
    """

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.dims) != len(self.labels):
            raise LayoutError("dims and labels must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise LayoutError(f"duplicate subsystem labels: {self.labels}")
        for d in self.dims:
            if d not in (2, 3):
                raise LayoutError(f"subsystem dimension must be 2 or 3, got {d}")
        object.__setattr__(self, "_dim", math.prod(self.dims))
        object.__setattr__(self, "_pos", {lb: i for i, lb in enumerate(self.labels)})
        object.__setattr__(self, "_plans", {})

    @property
    def dim(self) -> int:
        return self._dim

    def position(self, label: str) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise LayoutError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def dim_of(self, label: str) -> int:
        return self.dims[self.position(label)]

    def concat(self, other: "SubsystemLayout") -> "SubsystemLayout":
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise LayoutError(f"label collision in tensor product: {sorted(clash)}")
        return SubsystemLayout(self.dims + other.dims, self.labels + other.labels)


def qubit(label: str) -> SubsystemLayout:
    return SubsystemLayout((2,), (label,))


def mode3(label: str) -> SubsystemLayout:
    """A 3-level photon mode with basis {|vac>, |0>, |1>}."""
    return SubsystemLayout((3,), (label,))


class StateVector:
    """Normalized pure state over a :class:`SubsystemLayout`.

    Amplitudes are stored row-major over the layout dims.  The Euclidean norm
    must be 1 within 1e-10; construction rejects NaN/Inf amplitudes.
    """

    __slots__ = ("layout", "amps")

    def __init__(self, layout: SubsystemLayout, amps: np.ndarray):
        amps = np.array(amps, dtype=np.complex128)
        if amps.shape != (layout.dim,):
            raise LayoutError(f"amplitude vector has shape {amps.shape}, layout dim is {layout.dim}")
        if not np.isfinite(amps).all():
            raise StateInvariantError("non-finite amplitude in state vector")
        n = np.linalg.norm(amps)
        if abs(n - 1.0) > NORM_ATOL:
            raise StateInvariantError(f"state norm {n!r} deviates from 1 by more than {NORM_ATOL}")
        self.layout = layout
        self.amps = amps
        self.amps.flags.writeable = False

    @classmethod
    def _trusted(cls, layout: SubsystemLayout, amps: np.ndarray) -> "StateVector":
        # Fast path for internally produced, already-normalized amplitudes.
        obj = object.__new__(cls)
        obj.layout = layout
        obj.amps = amps
        amps.flags.writeable = False
        return obj

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self):
        return f"StateVector(labels={self.layout.labels}, amps={np.round(self.amps, 6)!r})"


def basis_state(layout: SubsystemLayout, levels: Sequence[int]) -> StateVector:
    """Computational basis state |levels[0], levels[1], ...> on the layout."""
    if len(levels) != len(layout.dims):
        raise LayoutError("one level per subsystem required")
    idx = 0
    for lv, d in zip(levels, layout.dims):
        if not 0 <= lv < d:
            raise LayoutError(f"level {lv} out of range for dimension {d}")
        idx = idx * d + lv
    amps = np.zeros(layout.dim, dtype=np.complex128)
    amps[idx] = 1.0
    return StateVector._trusted(layout, amps)


def state_from_amplitudes(layout: SubsystemLayout, amps: Iterable[complex]) -> StateVector:
    """Validating constructor for explicitly written-out amplitude lists."""
    return StateVector(layout, np.fromiter(amps, dtype=np.complex128, count=layout.dim))


class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator over a layout."""

    __slots__ = ("layout", "matrix")

    def __init__(self, layout: SubsystemLayout, matrix: np.ndarray):
        matrix = np.array(matrix, dtype=np.complex128)
        d = layout.dim
        if matrix.shape != (d, d):
            raise LayoutError(f"matrix shape {matrix.shape} does not match layout dim {d}")
        if not np.isfinite(matrix).all():
            raise StateInvariantError("non-finite entry in density matrix")
        herm_defect = float(np.abs(matrix - matrix.conj().T).max())
        if herm_defect > HERMITICITY_ATOL:
            raise StateInvariantError(f"Hermiticity defect {herm_defect} exceeds {HERMITICITY_ATOL}")
        tr = complex(np.trace(matrix))
        if abs(tr - 1.0) > TRACE_ATOL:
            raise StateInvariantError(f"trace {tr} deviates from 1 by more than {TRACE_ATOL}")
        # PSD check is a validation concern, not the public eigensolver op,
        # so the cheap library routine is fine here.
        lo = float(np.linalg.eigvalsh(matrix).min())
        if lo < -PSD_ATOL:
            raise StateInvariantError(f"smallest eigenvalue {lo} below -{PSD_ATOL}")
        self.layout = layout
        self.matrix = matrix
        self.matrix.flags.writeable = False

    @classmethod
    def from_pure(cls, state: StateVector) -> "DensityOperator":
        return cls(state.layout, np.outer(state.amps, state.amps.conj()))

    def __repr__(self):
        return f"DensityOperator(labels={self.layout.labels}, dim={self.layout.dim})"


@dataclass(frozen=True)
class MeasurementBasis:
    """Ordered projective outcomes, each a rank-1 projector onto a state.

    ``vectors`` must be pairwise orthonormal on ``layout`` (which describes
    only the measured subsystems; its labels are descriptive, measurement
    targets are matched by dimension and order).  When the vectors do not
    span the space the basis is incomplete and measuring it yields an extra
    residual outcome, index ``len(vectors)``, projecting onto the orthogonal
    complement; that is how vacuum ("no click") outcomes are modeled.
    """

    layout: SubsystemLayout
    vectors: tuple[StateVector, ...]
    _matrix: np.ndarray = field(init=False, repr=False, compare=False)
    _matrix_conj: np.ndarray = field(init=False, repr=False, compare=False)
    complete: bool = field(init=False, compare=False)

    def __post_init__(self):
        if not self.vectors:
            raise LayoutError("measurement basis needs at least one outcome vector")
        for v in self.vectors:
            if v.layout.dims != self.layout.dims:
                raise LayoutError("basis vector dims do not match basis layout")
        mat = np.stack([v.amps for v in self.vectors])
        gram = mat @ mat.conj().T
        if np.abs(gram - np.eye(len(self.vectors))).max() > NORM_ATOL:
            raise StateInvariantError("measurement basis vectors are not orthonormal within 1e-10")
        object.__setattr__(self, "_matrix", mat)
        object.__setattr__(self, "_matrix_conj", mat.conj())
        object.__setattr__(self, "complete", len(self.vectors) == self.layout.dim)

    @property
    def n_outcomes(self) -> int:
        """Number of sampleable outcomes, including the residual if incomplete."""
        return len(self.vectors) + (0 if self.complete else 1)

    @property
    def residual_outcome(self) -> Optional[int]:
        return None if self.complete else len(self.vectors)


class MeasurementResult(NamedTuple):
    outcome: int
    probability: float
    state: StateVector


# ---------------------------------------------------------------------------
# Layout plumbing: moving target subsystems to the front of the index.
# Plans are cached on the layout; the hot cases (targets forming a prefix or
# suffix of the layout, in order) avoid any axis permutation.

_PREFIX, _SUFFIX, _GENERAL = 0, 1, 2


def _target_plan(layout: SubsystemLayout, targets: tuple[str, ...]):
    plan = layout._plans.get(targets)
    if plan is None:
        pos = [layout.position(t) for t in targets]
        if len(set(pos)) != len(pos):
            raise LayoutError(f"repeated measurement target in {targets}")
        n = len(layout.dims)
        rest = [i for i in range(n) if i not in pos]
        d_t = math.prod(layout.dims[i] for i in pos)
        d_r = layout.dim // d_t
        if pos == list(range(len(pos))):
            plan = (_PREFIX, d_t, d_r, None, None)
        elif pos == list(range(n - len(pos), n)):
            plan = (_SUFFIX, d_t, d_r, None, None)
        else:
            perm = pos + rest
            inv = tuple(int(i) for i in np.argsort(perm))
            shape = tuple(layout.dims[i] for i in perm)
            plan = (_GENERAL, d_t, d_r, (tuple(perm), shape), inv)
        layout._plans[targets] = plan
    return plan


def _as_target_matrix(state: StateVector, targets: tuple[str, ...]):
    """View/copy of the state as a (target_dim, rest_dim) matrix plus undo info."""
    mode, d_t, d_r, fwd, inv = _target_plan(state.layout, targets)
    if mode == _PREFIX:
        return state.amps.reshape(d_t, d_r), (_PREFIX, None, None)
    if mode == _SUFFIX:
        return state.amps.reshape(d_r, d_t).T, (_SUFFIX, None, None)
    perm, shape = fwd
    arr = state.amps.reshape(state.layout.dims).transpose(perm)
    return arr.reshape(d_t, d_r), (_GENERAL, shape, inv)


def _from_target_matrix(mat: np.ndarray, undo) -> np.ndarray:
    mode, shape, inv = undo
    if mode == _PREFIX:
        return mat.reshape(-1)
    if mode == _SUFFIX:
        return np.ascontiguousarray(mat.T).reshape(-1)
    return mat.reshape(shape).transpose(inv).reshape(-1)


# ---------------------------------------------------------------------------
# Operations.


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; labels must be disjoint, ``a`` becomes most significant."""
    layout = a.layout.concat(b.layout)
    return StateVector._trusted(layout, np.kron(a.amps, b.amps))


def apply_on(
    state: StateVector,
    op: np.ndarray,
    targets: Sequence[str],
    *,
    isometry: bool = False,
    renormalize: bool = False,
) -> StateVector:
    """Apply ``op`` on the target subsystems, identity elsewhere.

    ``op`` must be unitary within 1e-10 unless ``isometry=True``, which
    declares a partial isometry: the result norm is then required to stay 1
    (the input must lie in the map's domain) unless ``renormalize=True``,
    which rescales the output instead — the escape hatch for formal
    interaction maps that are norm-preserving only on their intended inputs.
    """
    targets = tuple(targets)
    op = np.asarray(op, dtype=np.complex128)
    d_t = _target_plan(state.layout, targets)[1]
    if op.shape != (d_t, d_t):
        raise LayoutError(f"operator shape {op.shape} does not match target dim {d_t}")
    if not isometry:
        defect = np.abs(op.conj().T @ op - np.eye(d_t)).max()
        if defect > NORM_ATOL:
            raise StateInvariantError(
                f"operator is not unitary (defect {defect}); pass isometry=True for declared partial isometries"
            )
    mat, undo = _as_target_matrix(state, targets)
    out = op @ mat
    amps = _from_target_matrix(out, undo)
    if isometry:
        n = float(np.linalg.norm(amps))
        if abs(n - 1.0) > NORM_ATOL:
            if not renormalize:
                raise StateInvariantError(
                    f"partial isometry left norm {n}; input state is outside the declared domain"
                )
            if n == 0.0:
                raise StateInvariantError("state annihilated by partial isometry")
            amps = amps / n
    return StateVector._trusted(state.layout, amps)


def outcome_weights(state: StateVector, basis: MeasurementBasis, targets: Sequence[str]) -> np.ndarray:
    """Born weights for every outcome of ``basis`` measured on ``targets``.

    Includes the residual outcome as the last entry when the basis is
    incomplete.  Weights are clamped to [0, 1] and sum to 1 within 1e-10.
    """
    targets = tuple(targets)
    mat, _ = _as_target_matrix(state, targets)
    if basis.layout.dim != mat.shape[0]:
        raise LayoutError(
            f"basis dim {basis.layout.dim} does not match target dim {mat.shape[0]}"
        )
    co = basis._matrix_conj @ mat
    w = (co.real**2 + co.imag**2).sum(axis=1)
    if not basis.complete:
        w = np.append(w, max(0.0, 1.0 - float(w.sum())))
    return np.clip(w, 0.0, 1.0)


def collapse(
    state: StateVector, basis: MeasurementBasis, targets: Sequence[str], outcome: int
) -> tuple[float, StateVector]:
    """Weight and renormalized post-state of one measurement branch."""
    targets = tuple(targets)
    mat, undo = _as_target_matrix(state, targets)
    co = basis._matrix_conj @ mat
    if outcome == basis.residual_outcome:
        post = mat - basis._matrix.T @ co
        w = float((post.real**2 + post.imag**2).sum())
    elif 0 <= outcome < len(basis.vectors):
        row = co[outcome]
        w = float((row.real**2 + row.imag**2).sum())
        post = np.outer(basis._matrix[outcome], row)
    else:
        raise LayoutError(f"outcome {outcome} out of range for basis with {basis.n_outcomes} outcomes")
    if w <= 1e-300:
        raise MeasurementFault("collapse onto a probability-0 branch")
    amps = _from_target_matrix(post, undo) * (1.0 / math.sqrt(w))
    return min(w, 1.0), StateVector._trusted(state.layout, amps)


def measure(
    state: StateVector,
    basis: MeasurementBasis,
    targets: Sequence[str],
    rng: np.random.Generator,
) -> MeasurementResult:
    """Sample one projective outcome on ``targets`` by the Born rule.

    Returns the outcome index, its exact Born weight, and the renormalized
    post-measurement state.  For incomplete bases the residual ("no click")
    outcome has index ``len(basis.vectors)``.
    """
    targets = tuple(targets)
    mat, undo = _as_target_matrix(state, targets)
    if basis.layout.dim != mat.shape[0]:
        raise LayoutError(f"basis dim {basis.layout.dim} does not match target dim {mat.shape[0]}")
    co = basis._matrix_conj @ mat
    weights = ((co.real**2 + co.imag**2).sum(axis=1)).tolist()
    residual = not basis.complete
    total = sum(weights)
    if residual:
        total += max(0.0, 1.0 - total)
    u = rng.random() * total
    acc = 0.0
    outcome = len(weights) - 1 + (1 if residual else 0)
    for k, wk in enumerate(weights):
        acc += wk
        if u < acc:
            outcome = k
            break
    if outcome < len(weights):
        row = co[outcome]
        prob = weights[outcome]
        if prob <= 1e-300:
            raise MeasurementFault("measurement sampled a probability-0 branch")
        scale = 1.0 / math.sqrt(prob)
        if mat.shape[1] == 1 and undo[0] == _PREFIX:
            # measured every subsystem in layout order: the post state is the
            # outcome vector itself, up to the branch amplitude's phase
            amps = basis._matrix[outcome] * (row[0] * scale)
        else:
            post = basis._matrix[outcome][:, None] * row
            amps = _from_target_matrix(post, undo) * scale
    else:
        post = mat - basis._matrix.T @ co
        prob = float((post.real**2 + post.imag**2).sum())
        if prob <= 1e-300:
            raise MeasurementFault("measurement sampled a probability-0 branch")
        amps = _from_target_matrix(post, undo) * (1.0 / math.sqrt(prob))
    return MeasurementResult(outcome, min(prob, 1.0), StateVector._trusted(state.layout, amps))


def partial_trace(rho: DensityOperator, keep: Sequence[str]) -> DensityOperator:
    """Trace out every subsystem not in ``keep``.

    The result layout lists the kept subsystems in their original order,
    regardless of the order given.
    """
    keep = tuple(keep)
    if not keep:
        raise LayoutError("must keep at least one subsystem")
    pos = sorted(rho.layout.position(k) for k in keep)
    if len(set(pos)) != len(pos):
        raise LayoutError(f"repeated label in keep={keep}")
    dims = rho.layout.dims
    n = len(dims)
    arr = rho.matrix.reshape(dims + dims)
    for i in reversed(range(n)):
        if i not in pos:
            arr = np.trace(arr, axis1=i, axis2=i + arr.ndim // 2)
    kept_layout = SubsystemLayout(
        tuple(dims[i] for i in pos), tuple(rho.layout.labels[i] for i in pos)
    )
    d = kept_layout.dim
    return DensityOperator(kept_layout, arr.reshape(d, d))


def born_weight(rho: DensityOperator, v: StateVector) -> float:
    """<v| rho |v>, clamped to [0, 1]; the imaginary part must vanish."""
    if v.layout.dims != rho.layout.dims:
        raise LayoutError("state and operator layouts do not match")
    val = complex(np.vdot(v.amps, rho.matrix @ v.amps))
    if abs(val.imag) > NORM_ATOL:
        raise StateInvariantError(f"Born weight has imaginary part {val.imag}")
    if val.real < -PSD_ATOL or val.real > 1.0 + PSD_ATOL:
        raise StateInvariantError(f"Born weight {val.real} outside [0, 1] tolerance band")
    return min(max(val.real, 0.0), 1.0)


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b> of two states on identical layouts."""
    if a.layout.dims != b.layout.dims:
        raise LayoutError("state layouts do not match")
    return complex(np.vdot(a.amps, b.amps))


def _jacobi_eigvals(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations.

    Sweeps rotate away each off-diagonal pair in turn until the off-diagonal
    Frobenius norm drops below 1e-12, with a hard cap of 100 sweeps.
    """
    a = np.array(matrix, dtype=np.complex128)
    n = a.shape[0]
    if n == 1:
        return a.real.diagonal().copy()
    sweeps = 0
    while True:
        off = math.sqrt(max(0.0, float((np.abs(a) ** 2).sum() - (np.abs(np.diag(a)) ** 2).sum())))
        if off < JACOBI_OFF_TOL:
            break
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise StateInvariantError("Jacobi eigensolver failed to converge in 100 sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                m = abs(apq)
                if m < 1e-300:
                    continue
                phi = apq / m
                tau = (a[q, q].real - a[p, p].real) / (2.0 * m)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * np.conj(phi) * colq
                a[:, q] = s * phi * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * phi * rowq
                a[q, :] = s * np.conj(phi) * rowp + c * rowq
    return np.sort(a.real.diagonal())[::-1].copy()


def eigvals_hermitian(rho: DensityOperator) -> np.ndarray:
    """All eigenvalues of the operator, descending (cyclic Jacobi solver)."""
    return _jacobi_eigvals(rho.matrix)


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Entropy -sum(lambda log2 lambda) in bits, with 0 log 0 = 0.

    Eigenvalues in [-1e-9, 0) are treated as numerical jitter and clamped
    to 0; anything below -1e-9 is an invariant violation.
    """
    total = 0.0
    for lam in _jacobi_eigvals(rho.matrix):
        if lam < -PSD_ATOL:
            raise StateInvariantError(f"eigenvalue {lam} below -{PSD_ATOL}")
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return max(total, 0.0)


def binary_capacity(q: float) -> float:
    """Capacity 1 + q log2 q + (1-q) log2(1-q) of a binary symmetric channel.

    Evaluated on the larger of (q, 1-q) so the symmetry q <-> 1-q is
    bit-exact for every float input.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"error rate must be in [0, 1], got {q}")
    hi = max(q, 1.0 - q)
    lo = 1.0 - hi
    total = 1.0
    if hi > 0.0:
        total += hi * math.log2(hi)
    if lo > 0.0:
        total += lo * math.log2(lo)
    return total


# ---------------------------------------------------------------------------
# Standard bases and kets of the protocol.
#
# Photon modes that can be empty are 3-level with basis {|vac>, |0>, |1>};
# on those, the bit levels are 1 and 2 and the vacuum shows up as the
# residual ("photon lost" / "no click") outcome.


def _bit_levels(dim: int) -> tuple[int, int]:
    if dim == 2:
        return 0, 1
    if dim == 3:
        return 1, 2
    raise LayoutError(f"photon carriers have dimension 2 or 3, got {dim}")


def bz_basis(dim: int = 2) -> MeasurementBasis:
    """Computational basis {|0>, |1>}; outcome index equals the bit value.

    On a 3-level mode the basis is incomplete and the residual outcome
    (index 2) is the vacuum, i.e. photon loss.
    """
    layout = SubsystemLayout((dim,), ("carrier",))
    lv0, lv1 = _bit_levels(dim)
    return MeasurementBasis(layout, (basis_state(layout, [lv0]), basis_state(layout, [lv1])))


def bell_basis(travel_dim: int = 2) -> MeasurementBasis:
    """Bell basis on (home, travel): psi+, psi-, phi+, phi- in that order.

    With a 3-level travel mode the four vectors live in the photon-present
    subspace and the residual outcome (index 4) is a vacuum detection.
    """
    layout = SubsystemLayout((2, travel_dim), ("home", "travel"))
    lv0, lv1 = _bit_levels(travel_dim)
    s = 1.0 / math.sqrt(2.0)

    def two(l0, a0, l1, a1):
        amps = np.zeros(layout.dim, dtype=np.complex128)
        amps[l0] = a0
        amps[l1] = a1
        return StateVector._trusted(layout, amps)

    i01 = 0 * travel_dim + lv1
    i10 = 1 * travel_dim + lv0
    i00 = 0 * travel_dim + lv0
    i11 = 1 * travel_dim + lv1
    return MeasurementBasis(
        layout,
        (
            two(i01, s, i10, s),    # psi+
            two(i01, s, i10, -s),   # psi-
            two(i00, s, i11, s),    # phi+
            two(i00, s, i11, -s),   # phi-
        ),
    )


def plus_click_basis(dim: int = 2) -> MeasurementBasis:
    """Disguise test projector onto |+>: outcome 0 is a click, 1 is no click."""
    return MeasurementBasis(SubsystemLayout((dim,), ("carrier",)), (plus_state(dim, "carrier"),))


def plus_state(dim: int = 2, label: str = "travel") -> StateVector:
    """(|0> + |1>)/sqrt(2) on a qubit or 3-level mode."""
    layout = SubsystemLayout((dim,), (label,))
    lv0, lv1 = _bit_levels(dim)
    amps = np.zeros(dim, dtype=np.complex128)
    amps[lv0] = amps[lv1] = 1.0 / math.sqrt(2.0)
    return StateVector._trusted(layout, amps)


def minus_state(dim: int = 2, label: str = "travel") -> StateVector:
    """(|0> - |1>)/sqrt(2) on a qubit or 3-level mode."""
    layout = SubsystemLayout((dim,), (label,))
    lv0, lv1 = _bit_levels(dim)
    amps = np.zeros(dim, dtype=np.complex128)
    amps[lv0] = 1.0 / math.sqrt(2.0)
    amps[lv1] = -1.0 / math.sqrt(2.0)
    return StateVector._trusted(layout, amps)
