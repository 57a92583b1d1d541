"""Eavesdropping strategies plugged into the two channel transits of a round.

Every strategy sees the outbound photon (``on_b_to_a``) and, in message
mode, the returning photon (``on_a_to_b``).  Hooks receive the full joint
state, may enlarge it with Eve-owned subsystems, and must hand back a
normalized state; they never act on the home qubit.  Per-round scratch
state (Eve's guess, her measurement tallies) lives in an
:class:`AttackContext` owned by the round executor.

Strategies carry no state of their own between rounds, so one instance can
serve concurrent rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import quantum_core as qc

__all__ = [
    "AttackContext",
    "AttackStrategy",
    "NoAttack",
    "OpaqueAttack",
    "TranslucentAttack",
    "WojcikAttack",
    "CaiMeasureAttack",
    "translucent_interaction",
    "eve_bell_basis",
    "wojcik_swap_map",
    "parse_attack",
    "ATTACK_GRAMMAR",
]

ATTACK_GRAMMAR = "none | opaque | translucent:D=<float> | wojcik | cai"

_BZ = {2: qc.bz_basis(2), 3: qc.bz_basis(3)}
_B2A_KEYS = ("b_to_a_0", "b_to_a_1", "b_to_a_loss")
_A2B_KEYS = ("a_to_b_0", "a_to_b_1", "a_to_b_loss")


@dataclass
class AttackContext:
    """Eve's per-round scratchpad; a fresh one is created for every round.

    ``guess`` is Eve's inferred value of Alice's encoding operation and may
    be set at most once per round.  ``ledger`` counts Eve-side measurement
    outcomes so sessions can aggregate her statistics.
    """

    eve_state: Optional[object] = None
    guess: Optional[int] = None
    ledger: dict = field(default_factory=dict)

    def record_guess(self, bit: int) -> None:
        if self.guess is not None:
            raise RuntimeError("Eve's guess was already set this round")
        self.guess = int(bit)

    def tally(self, key: str) -> None:
        self.ledger[key] = self.ledger.get(key, 0) + 1


class AttackStrategy:
    """Base strategy: both hooks forward the state untouched."""

    name = "none"

    def on_b_to_a(self, state: qc.StateVector, ctx: AttackContext, rng) -> qc.StateVector:
        return state

    def on_a_to_b(self, state: qc.StateVector, ctx: AttackContext, rng) -> qc.StateVector:
        return state

    def __repr__(self):
        return f"{type(self).__name__}()"


class NoAttack(AttackStrategy):
    """Eve is absent."""

    name = "none"


class OpaqueAttack(AttackStrategy):
    """Intercept-resend: Eve measures the carrier in B_z on both transits.

    The outbound measurement collapses the pair and Eve forwards a fresh
    basis state equal to her outcome, which here coincides with the
    collapsed travel qubit.  The returning photon is measured again but,
    since neither encoding operation moves a basis state, the second
    reading always repeats the first and Eve learns nothing; her recorded
    guess is a blind coin flip.
    """

    name = "opaque"

    def on_b_to_a(self, state, ctx, rng):
        res = qc.measure(state, _BZ[state.layout.dim_of("travel")], ("travel",), rng)
        ctx.eve_state = res.outcome
        ctx.tally(_B2A_KEYS[res.outcome])
        return res.state

    def on_a_to_b(self, state, ctx, rng):
        res = qc.measure(state, _BZ[state.layout.dim_of("travel")], ("travel",), rng)
        ctx.tally(_A2B_KEYS[res.outcome])
        ctx.record_guess(0 if rng.random() < 0.5 else 1)
        return res.state


def translucent_interaction(d: float) -> np.ndarray:
    """Eve's entangling interaction on (travel, ancilla), ancilla starting in chi0.

    |0>|chi> -> sqrt(F)|0>|chi0> + sqrt(D)|1>|chi1>
    |1>|chi> -> sqrt(F)|1>|chi1> + sqrt(D)|0>|chi0>      with F = 1 - D.

    The two images are not orthogonal, so this is not an isometry of the
    travel qubit: it is norm-preserving only when the travel amplitudes are
    carried by orthogonal partner states (the EPR pair), which is the one
    situation the attack was written for.
    """
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"disturbance must be in [0, 1], got {d}")
    f, dd = math.sqrt(1.0 - d), math.sqrt(d)
    op = np.zeros((4, 4), dtype=np.complex128)
    op[0, 0] = f   # |0 chi0> component of the image of |0 chi0>
    op[3, 0] = dd  # |1 chi1> component
    op[3, 2] = f   # image of |1 chi0>
    op[0, 2] = dd
    return op


def eve_bell_basis() -> qc.MeasurementBasis:
    """Eve's two-outcome basis on (travel, ancilla): phi_I then phi_Z.

    Incomplete: the interaction confines the pair to span{|0 chi0>, |1 chi1>},
    so the residual outcome has weight zero on any on-script round and
    sampling it is an internal fault.
    """
    layout = qc.SubsystemLayout((2, 2), ("travel", "ancilla"))
    s = 1.0 / math.sqrt(2.0)
    return qc.MeasurementBasis(
        layout,
        (
            qc.state_from_amplitudes(layout, [s, 0, 0, s]),
            qc.state_from_amplitudes(layout, [s, 0, 0, -s]),
        ),
    )


_EVE_BELL = eve_bell_basis()
_ANCILLA_CHI0 = qc.basis_state(qc.qubit("ancilla"), [0])


class TranslucentAttack(AttackStrategy):
    """Ancilla-entangling attack with disturbance ``d`` (detection probability).

    Outbound, Eve adjoins an ancilla qubit and applies the entangling
    interaction.  On the return she measures (travel, ancilla) in
    {phi_I, phi_Z} and guesses the identity operation on phi_I, the phase
    flip on phi_Z — the maximum-likelihood reading of the two outcomes.

    On a disguise photon (a bare |+> with no entangled partner) the
    interaction as written is not norm-preserving; the hook renormalizes
    the result, which is the only deterministic completion of the map
    off its intended domain.
    """

    def __init__(self, d: float):
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"disturbance must be in [0, 1], got {d}")
        self.d = float(d)
        self._op = translucent_interaction(self.d)

    @property
    def name(self) -> str:
        return f"translucent:D={self.d:g}"

    def on_b_to_a(self, state, ctx, rng):
        if state.layout.dim_of("travel") != 2:
            raise qc.LayoutError("translucent interaction is defined on a travel qubit")
        joined = qc.tensor(state, _ANCILLA_CHI0)
        return qc.apply_on(
            joined, self._op, ("travel", "ancilla"), isometry=True, renormalize=True
        )

    def on_a_to_b(self, state, ctx, rng):
        res = qc.measure(state, _EVE_BELL, ("travel", "ancilla"), rng)
        if res.outcome == _EVE_BELL.residual_outcome:
            raise qc.MeasurementFault(
                "translucent attack sampled the impossible residual outcome"
            )
        ctx.tally("phi_I" if res.outcome == 0 else "phi_Z")
        ctx.record_guess(res.outcome)
        return res.state

    def __repr__(self):
        return f"TranslucentAttack(d={self.d})"


def wojcik_swap_map() -> np.ndarray:
    """The mode-swap isometry Q on (travel, x, y), all 3-level modes.

    Defined by linearity on three generators (levels ordered vac, 0, 1;
    kets written as |t x y>):

        |0 vac 0> -> (|0 0 vac> + |vac 0 1>)/sqrt(2)
        |1 vac 0> -> (|vac 1 0> + |1 1 vac>)/sqrt(2)
        |1 vac 1> -> (|vac 1 0> - |1 1 vac>)/sqrt(2)

    The first two generators reproduce the outbound attack on any photon
    Bob can send; the third extends the map so that its inverse is defined
    on everything Alice's encoding can produce.  The return attack is the
    adjoint, Q^-1 = Q^dagger on the range.
    """

    def idx(t, x, y):
        return (t * 3 + x) * 3 + y

    s = 1.0 / math.sqrt(2.0)
    q = np.zeros((27, 27), dtype=np.complex128)
    # generator columns: (t, x, y) levels with vac = 0, |0> = 1, |1> = 2
    q[idx(1, 1, 0), idx(1, 0, 1)] = s
    q[idx(0, 1, 2), idx(1, 0, 1)] = s
    q[idx(0, 2, 1), idx(2, 0, 1)] = s
    q[idx(2, 2, 0), idx(2, 0, 1)] = s
    q[idx(0, 2, 1), idx(2, 0, 2)] = s
    q[idx(2, 2, 0), idx(2, 0, 2)] = -s
    return q


_WOJCIK_Q = wojcik_swap_map()
_WOJCIK_QINV = _WOJCIK_Q.conj().T
_X_VAC = qc.basis_state(qc.mode3("x"), [0])
_Y_ZERO = qc.basis_state(qc.mode3("y"), [1])


def _promote_travel(state: qc.StateVector) -> qc.StateVector:
    """Widen a travel qubit to a 3-level mode (bit levels shift to 1 and 2)."""
    pos = state.layout.position("travel")
    dims = state.layout.dims
    arr = np.moveaxis(state.amps.reshape(dims), pos, 0)
    wide = np.zeros((3,) + arr.shape[1:], dtype=np.complex128)
    wide[1:] = arr
    new_dims = dims[:pos] + (3,) + dims[pos + 1 :]
    layout = qc.SubsystemLayout(new_dims, state.layout.labels)
    return qc.StateVector._trusted(layout, np.moveaxis(wide, 0, pos).reshape(-1))


class WojcikAttack(AttackStrategy):
    """Vacuum-mode swap attack: hides in channel loss instead of bit errors.

    Outbound, Eve widens the travel carrier to a 3-level mode, adjoins her
    own modes x (vacuum) and y (|0>), and applies the swap isometry Q; on
    the return she applies its inverse and keeps x and y.  Half of every
    outbound photon's amplitude ends up on the travel vacuum, so control
    mode sees a 50% loss rate but perfect anti-correlation on the photons
    that do arrive.

    What Eve can read out of x and y afterwards is not modeled here; her
    recorded guess is a blind coin flip, i.e. chance accuracy.
    """

    name = "wojcik"

    def on_b_to_a(self, state, ctx, rng):
        if state.layout.dim_of("travel") == 2:
            state = _promote_travel(state)
        state = qc.tensor(qc.tensor(state, _X_VAC), _Y_ZERO)
        return qc.apply_on(state, _WOJCIK_Q, ("travel", "x", "y"), isometry=True)

    def on_a_to_b(self, state, ctx, rng):
        out = qc.apply_on(state, _WOJCIK_QINV, ("travel", "x", "y"), isometry=True)
        ctx.record_guess(0 if rng.random() < 0.5 else 1)
        return out


class CaiMeasureAttack(AttackStrategy):
    """Measure the returning carrier in B_z and forward the collapsed photon.

    The outbound transit is untouched, so control mode can never see this
    attack; the measurement destroys the pair's entanglement and turns
    Bob's decoded bits into noise while telling Eve nothing (chance-level
    coin guess).
    """

    name = "cai"

    def on_a_to_b(self, state, ctx, rng):
        res = qc.measure(state, _BZ[state.layout.dim_of("travel")], ("travel",), rng)
        ctx.tally(_A2B_KEYS[res.outcome])
        ctx.record_guess(0 if rng.random() < 0.5 else 1)
        return res.state


def parse_attack(text: str, default_d: Optional[float] = None) -> AttackStrategy:
    """Build a strategy from its CLI name: none | opaque | translucent:D=<float> | wojcik | cai.

    ``translucent`` without a suffix takes its disturbance from
    ``default_d`` (the --d flag); an explicit ``:D=`` suffix wins.
    """
    name = text.strip()
    if name == "none":
        return NoAttack()
    if name == "opaque":
        return OpaqueAttack()
    if name == "wojcik":
        return WojcikAttack()
    if name == "cai":
        return CaiMeasureAttack()
    if name == "translucent" or name.startswith("translucent:"):
        d = default_d
        if name.startswith("translucent:"):
            suffix = name.split(":", 1)[1]
            if not suffix.startswith("D="):
                raise ValueError(f"malformed translucent attack {text!r}; expected translucent:D=<float>")
            try:
                d = float(suffix[2:])
            except ValueError:
                raise ValueError(f"bad disturbance value in {text!r}") from None
        if d is None:
            raise ValueError("translucent attack needs a disturbance: use translucent:D=<float> or --d")
        return TranslucentAttack(d)
    raise ValueError(f"unknown attack {text!r}; known: {ATTACK_GRAMMAR}")
