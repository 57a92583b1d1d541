"""Closed-form attack analyses, an exact density-matrix engine, and sweeps.

Every security quantity of the translucent attack exists here twice: once
as the printed closed-form expressions (``translucent_closed_form``) and
once re-derived from the entangling interaction using only the linear
algebra kernel (``translucent_exact_engine``).  The two must agree within
1e-10 per field across the whole parameter grid; that equivalence is the
main correctness oracle of the package.

Layout conventions for the reported matrices (row-major, first label most
significant): ``rho_at2`` lives on (travel, ancilla) with combined basis
{|0 chi0>, |0 chi1>, |1 chi0>, |1 chi1>}; ``rho_full`` on (home, travel,
ancilla); ``rho_ht3`` on (home, travel).

``rho_full`` is the whole-system density matrix as an outside observer sees
it, i.e. the classical p0/p1 mixture over Alice's two operations.  All
other quantities come from the coherent superposition sqrt(p0) Z^0 +
sqrt(p1) Z^1 of the encoded state, whose interference terms sqrt(p0 p1)
the closed forms carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import quantum_core as qc
from .attacks import eve_bell_basis, translucent_interaction, wojcik_swap_map

__all__ = [
    "OpaqueReport",
    "TranslucentReport",
    "DEFAULT_GRID",
    "SWEEP_COLUMNS",
    "SweepRow",
    "encoded_state",
    "opaque_closed_form",
    "translucent_closed_form",
    "translucent_exact_engine",
    "report_max_deviation",
    "sweep",
    "sweep_csv",
    "dpd_click_probability",
]

DEFAULT_GRID: tuple[float, ...] = tuple(i / 10 for i in range(11))

_HT = qc.SubsystemLayout((2, 2), ("home", "travel"))
_HTA = qc.SubsystemLayout((2, 2, 2), ("home", "travel", "ancilla"))
_TA = qc.SubsystemLayout((2, 2), ("travel", "ancilla"))
_EVE_BELL = eve_bell_basis()
_BZ2 = qc.bz_basis(2)


@dataclass
class OpaqueReport:
    """Intercept-resend analysis: per-branch and average error rates."""

    p0: float
    q0: float
    q1: float
    q: float
    i_ab: float


@dataclass
class TranslucentReport:
    """Everything the ancilla-attack analysis produces for one (p0, d)."""

    p0: float
    d: float
    rho_at2: qc.DensityOperator
    eigenvalues: np.ndarray
    i_ae: float
    rho_full: qc.DensityOperator
    p_i: float
    p_z: float
    rho_ht3: qc.DensityOperator
    qber_fidelity: float
    i_ab: float
    control_detection: float


def encoded_state(p0: float) -> qc.StateVector:
    """The pair state after Alice's weighted encoding on an untouched channel.

    sqrt(p0) psi+ + sqrt(p1) psi-, i.e. amplitudes
    (0, (sqrt(p0)+sqrt(p1))/sqrt(2), (sqrt(p0)-sqrt(p1))/sqrt(2), 0)
    on (home, travel).
    """
    _check_prob("p0", p0)
    a, b = math.sqrt(p0), math.sqrt(1.0 - p0)
    s = 1.0 / math.sqrt(2.0)
    return qc.StateVector(_HT, np.array([0.0, (a + b) * s, (a - b) * s, 0.0], dtype=np.complex128))


def opaque_closed_form(p0: float) -> OpaqueReport:
    """Error rates when Eve intercept-resends the outbound photon.

    q0 (Eve read 0, final pair |10>) and q1 (Eve read 1, final pair |01>)
    are overlaps of the ideal encoded pair with the actual product state;
    the two Eve branches are equiprobable, so the average error rate is
    exactly 1/2 and the channel capacity vanishes for every p0.
    """
    psi = encoded_state(p0)
    q0 = 1.0 - abs(qc.overlap(psi, qc.basis_state(_HT, [1, 0]))) ** 2
    q1 = 1.0 - abs(qc.overlap(psi, qc.basis_state(_HT, [0, 1]))) ** 2
    return OpaqueReport(p0=p0, q0=q0, q1=q1, q=0.5, i_ab=qc.binary_capacity(0.5))


def translucent_closed_form(p0: float, d: float) -> TranslucentReport:
    """The printed closed-form expressions, evaluated entrywise."""
    _check_prob("p0", p0)
    _check_prob("d", d)
    p1 = 1.0 - p0
    root_pp = math.sqrt(p0 * p1)
    root_dd = math.sqrt(d * (1.0 - d))

    at2 = np.zeros((4, 4), dtype=np.complex128)
    at2[0, 0] = 0.5 + root_pp
    at2[3, 3] = 0.5 - root_pp
    at2[0, 3] = at2[3, 0] = (p0 - p1) * root_dd
    rho_at2 = qc.DensityOperator(_TA, at2)

    radical = math.sqrt(p0 * p1 + (p0 - p1) ** 2 * d * (1.0 - d))
    lam3, lam4 = 0.5 + radical, 0.5 - radical
    eigenvalues = np.array([lam3, lam4, 0.0, 0.0])
    i_ae = 0.0
    for lam in (lam3, lam4):
        if lam > 0.0:
            i_ae -= lam * math.log2(lam)

    # Whole-system matrix: nonzero only on basis kets |0 0 chi0>, |0 1 chi1>,
    # |1 0 chi0>, |1 1 chi1> (indices 0, 3, 4, 7 over home, travel, ancilla).
    full = np.zeros((8, 8), dtype=np.complex128)
    pd = p0 - p1
    upper = {
        (0, 0): d, (0, 3): pd * root_dd, (0, 4): root_dd, (0, 7): pd * d,
        (3, 3): 1.0 - d, (3, 4): pd * (1.0 - d), (3, 7): root_dd,
        (4, 4): 1.0 - d, (4, 7): pd * root_dd,
        (7, 7): d,
    }
    for (i, j), v in upper.items():
        full[i, j] = v / 2.0
        full[j, i] = v / 2.0
    rho_full = qc.DensityOperator(_HTA, full)

    p_i = 0.5 + pd * root_dd
    p_z = 0.5 - pd * root_dd

    ht3 = np.zeros((4, 4), dtype=np.complex128)
    diag_shift = 0.5 * math.sqrt(p0 * (1.0 - p0)) * (2.0 * d - 1.0)
    ht3[0, 0] = ht3[1, 1] = 0.25 + diag_shift
    ht3[2, 2] = ht3[3, 3] = 0.25 - diag_shift
    ht3[0, 2] = ht3[2, 0] = ht3[1, 3] = ht3[3, 1] = 0.5 * root_dd
    rho_ht3 = qc.DensityOperator(_HT, ht3)

    q = 0.75 - p0 * (1.0 - p0) * (2.0 * d - 1.0)
    return TranslucentReport(
        p0=p0,
        d=d,
        rho_at2=rho_at2,
        eigenvalues=eigenvalues,
        i_ae=i_ae,
        rho_full=rho_full,
        p_i=p_i,
        p_z=p_z,
        rho_ht3=rho_ht3,
        qber_fidelity=q,
        i_ab=qc.binary_capacity(q),
        control_detection=d,
    )


def translucent_exact_engine(p0: float, d: float) -> TranslucentReport:
    """Re-derive the whole report from the interaction, first principles only.

    Builds the post-interaction pair+ancilla state, applies the coherent
    weighted encoding, and obtains every quantity through partial traces,
    the Jacobi eigensolver, Born weights, and the outcome-weighted mixture
    over Eve's two Bell results.  Returns the same report shape as the
    closed form so the two can be compared field by field.
    """
    _check_prob("p0", p0)
    _check_prob("d", d)
    p1 = 1.0 - p0

    psi0 = qc.tensor(
        qc.state_from_amplitudes(_HT, [0, 2**-0.5, 2**-0.5, 0]),
        qc.basis_state(qc.qubit("ancilla"), [0]),
    )
    psi1 = qc.apply_on(psi0, translucent_interaction(d), ("travel", "ancilla"), isometry=True)
    psi1_z = _z_travel(psi1)

    # Coherent weighted encoding (norm-preserving on the anti-correlated pair).
    psi2 = qc.StateVector(psi1.layout, math.sqrt(p0) * psi1.amps + math.sqrt(p1) * psi1_z.amps)

    rho_at2 = qc.partial_trace(qc.DensityOperator.from_pure(psi2), ("travel", "ancilla"))
    eigenvalues = qc.eigvals_hermitian(rho_at2)
    i_ae = qc.von_neumann_entropy(rho_at2)

    rho_full = qc.DensityOperator(
        psi2.layout,
        p0 * np.outer(psi1.amps, psi1.amps.conj()) + p1 * np.outer(psi1_z.amps, psi1_z.amps.conj()),
    )

    p_i = qc.born_weight(rho_at2, _EVE_BELL.vectors[0])
    p_z = qc.born_weight(rho_at2, _EVE_BELL.vectors[1])

    # Eve's measurement, ensemble-averaged over her two outcomes.
    weights = qc.outcome_weights(psi2, _EVE_BELL, ("travel", "ancilla"))
    ht3 = np.zeros((4, 4), dtype=np.complex128)
    for outcome in (0, 1):
        if weights[outcome] < 1e-14:
            continue
        w, post = qc.collapse(psi2, _EVE_BELL, ("travel", "ancilla"), outcome)
        branch = qc.partial_trace(qc.DensityOperator.from_pure(post), ("home", "travel"))
        ht3 += w * branch.matrix
    rho_ht3 = qc.DensityOperator(_HT, ht3)

    q = 1.0 - qc.born_weight(rho_ht3, encoded_state(p0))

    # Control mode: probability that Bob's home bit EQUALS Alice's travel bit.
    detect = 0.0
    travel_w = qc.outcome_weights(psi1, _BZ2, ("travel",))
    for bit in (0, 1):
        if travel_w[bit] < 1e-14:
            continue
        w, post = qc.collapse(psi1, _BZ2, ("travel",), bit)
        detect += w * qc.outcome_weights(post, _BZ2, ("home",))[bit]

    return TranslucentReport(
        p0=p0,
        d=d,
        rho_at2=rho_at2,
        eigenvalues=eigenvalues,
        i_ae=i_ae,
        rho_full=rho_full,
        p_i=p_i,
        p_z=p_z,
        rho_ht3=rho_ht3,
        qber_fidelity=q,
        i_ab=qc.binary_capacity(q),
        control_detection=detect,
    )


def _z_travel(state: qc.StateVector) -> qc.StateVector:
    return qc.apply_on(state, np.diag([1.0, -1.0]).astype(np.complex128), ("travel",))


def report_max_deviation(a: TranslucentReport, b: TranslucentReport) -> float:
    """Largest absolute difference over every report field, matrices entrywise."""
    devs = [
        abs(a.i_ae - b.i_ae),
        abs(a.p_i - b.p_i),
        abs(a.p_z - b.p_z),
        abs(a.qber_fidelity - b.qber_fidelity),
        abs(a.i_ab - b.i_ab),
        abs(a.control_detection - b.control_detection),
        float(np.abs(a.eigenvalues - b.eigenvalues).max()),
        float(np.abs(a.rho_at2.matrix - b.rho_at2.matrix).max()),
        float(np.abs(a.rho_full.matrix - b.rho_full.matrix).max()),
        float(np.abs(a.rho_ht3.matrix - b.rho_ht3.matrix).max()),
    ]
    return max(devs)


SWEEP_COLUMNS = ("p0", "d", "q_formula", "q_exact", "i_ab", "i_ae", "p_i", "p_z", "control_detection")


@dataclass
class SweepRow:
    p0: float
    d: float
    q_formula: float
    q_exact: float
    i_ab: float
    i_ae: float
    p_i: float
    p_z: float
    control_detection: float


def sweep(
    p0_grid: Optional[Sequence[float]] = None, d_grid: Optional[Sequence[float]] = None
) -> list[SweepRow]:
    """One row per (p0, d) grid point, p0-major; closed form plus engine qber."""
    p0_grid = DEFAULT_GRID if p0_grid is None else tuple(p0_grid)
    d_grid = DEFAULT_GRID if d_grid is None else tuple(d_grid)
    if not p0_grid or not d_grid:
        raise ValueError("sweep grids must be nonempty")
    rows = []
    for p0 in p0_grid:
        for d in d_grid:
            form = translucent_closed_form(p0, d)
            exact = translucent_exact_engine(p0, d)
            rows.append(
                SweepRow(
                    p0=p0,
                    d=d,
                    q_formula=form.qber_fidelity,
                    q_exact=exact.qber_fidelity,
                    i_ab=form.i_ab,
                    i_ae=form.i_ae,
                    p_i=form.p_i,
                    p_z=form.p_z,
                    control_detection=form.control_detection,
                )
            )
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    """Render sweep rows as CSV with 12 significant digits."""
    lines = [",".join(SWEEP_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                format(getattr(r, col), ".12g") for col in SWEEP_COLUMNS
            )
        )
    return "\n".join(lines) + "\n"


def dpd_click_probability(eve_present: bool) -> float:
    """Exact |+> projector click probability on a Z^1-encoded disguise photon.

    Without an eavesdropper the returning photon is |->, orthogonal to the
    projector.  Under the vacuum-mode swap attack the returning carrier is
    maximally mixed over the bit levels, so the projector clicks half the
    time.  Both values are computed through the kernel, not hard-coded.
    """
    if not eve_present:
        rho = qc.DensityOperator.from_pure(qc.minus_state(2, "travel"))
        return qc.born_weight(rho, qc.plus_state(2, "travel"))
    state = qc.tensor(
        qc.tensor(qc.plus_state(3, "travel"), qc.basis_state(qc.mode3("x"), [0])),
        qc.basis_state(qc.mode3("y"), [1]),
    )
    q = wojcik_swap_map()
    state = qc.apply_on(state, q, ("travel", "x", "y"), isometry=True)
    state = qc.apply_on(state, np.diag([1.0, 1.0, -1.0]).astype(np.complex128), ("travel",))
    state = qc.apply_on(state, q.conj().T, ("travel", "x", "y"), isometry=True)
    rho_t = qc.partial_trace(qc.DensityOperator.from_pure(state), ("travel",))
    return qc.born_weight(rho_t, qc.plus_state(3, "travel"))


def _check_prob(name: str, v: float) -> None:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {v}")
