"""The Ping-Pong round state machine, session driver, and transcript plumbing.

A round runs: Bob prepares a carrier (an EPR half, or a disguise photon |+>
when the disguised-photon defence is on) -> Eve's outbound hook -> Alice
picks control or message mode.  Control mode measures and publicly compares;
message mode encodes a bit with Z^j, sends the photon back through Eve's
return hook, and Bob either Bell-decodes (true photon) or runs the |+>
projector test (disguise photon, only when Alice applied Z^1).

Randomness: round r draws every sample from the dedicated stream
``numpy.random.Generator(numpy.random.Philox(key=[master_seed, r]))``, so
rounds are independent, reorderable, and reproducible; the authentication
sampler uses the stream keyed by ``[master_seed, rounds]``.  Within a round
the draw order is fixed: photon kind, outbound hook, mode, then the
mode-specific measurements (alice then bob) or (bit, return hook, decode).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from . import quantum_core as qc
from .attacks import AttackContext, AttackStrategy

__all__ = [
    "RoundMode",
    "PhotonKind",
    "ProtocolConfig",
    "RoundRecord",
    "SessionStats",
    "AttackContractError",
    "round_rng",
    "bob_prepare",
    "alice_encode",
    "alice_control",
    "bob_control_check",
    "bob_decode_bell",
    "bob_dpd_check",
    "run_round",
    "run_session",
    "authenticate",
    "TRANSCRIPT_COLUMNS",
    "transcript_text",
    "write_transcript",
    "read_transcript",
]

LOSS = "loss"
TAMPER = "tamper"

_SEED_LIMIT = 2**64


class RoundMode(str, Enum):
    CONTROL = "control"
    MESSAGE = "message"


class PhotonKind(str, Enum):
    TRUE = "true"
    FALSE = "false"


class AttackContractError(RuntimeError):
    """An attack hook returned a state violating the strategy contract."""


@dataclass(frozen=True)
class ProtocolConfig:
    """Run parameters.

    ``false_prob = 0`` disables disguise photons entirely, recovering the
    original protocol.  ``qber_convention`` picks which error rate feeds
    capacity estimates: "fidelity" (overlap against the ideal encoded pair,
    defined by the exact analysis only) or "bell-decode" (operational rate
    of Bob's decoded bit differing from Alice's).
    """

    p0: float = 0.5
    control_prob: float = 0.5
    false_prob: float = 0.25
    rounds: int = 10_000
    master_seed: int = 0
    qber_convention: str = "fidelity"

    def __post_init__(self):
        for name in ("p0", "control_prob", "false_prob"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be a probability in [0, 1], got {v}")
        if self.rounds < 1:
            raise ValueError(f"rounds must be >= 1, got {self.rounds}")
        if not 0 <= self.master_seed < _SEED_LIMIT:
            raise ValueError("master_seed must fit in 64 bits")
        if self.qber_convention not in ("fidelity", "bell-decode"):
            raise ValueError(f"qber_convention must be 'fidelity' or 'bell-decode', got {self.qber_convention!r}")


@dataclass
class RoundRecord:
    """One round's transcript entry.

    Message-mode fields stay None in control mode and vice versa;
    ``dpd_click`` is set only for disguise photons in message mode with
    Alice's operation Z^1.  A None ``bob_decoded_bit`` on a true-photon
    message round that was not lost means Bob's Bell measurement returned
    one of the two off-protocol outcomes (a tamper signal).
    """

    index: int
    mode: RoundMode
    kind: PhotonKind
    alice_bit: Optional[int] = None
    bob_decoded_bit: Optional[int] = None
    control_alice: Optional[Union[int, str]] = None
    control_bob: Optional[int] = None
    control_mismatch: Optional[bool] = None
    dpd_click: Optional[bool] = None
    photon_lost: bool = False
    discarded: bool = False


@dataclass
class SessionStats:
    """Aggregates over one session; rates are None when undefined.

    ``rounds_by_category`` counts the non-discarded rounds by what they
    produced: "control" (true-photon checks), "message" (true-photon key
    rounds), "dpd_test" (disguise photons tested with the |+> projector);
    plus the "discarded" count.  qber_bell is the operational error rate:
    over true-photon, non-lost message rounds, the fraction where Bob's
    decoded bit differs from Alice's (a tamper outcome counts as an error).
    """

    rounds_total: int
    rounds_by_category: dict
    qber_bell: Optional[float]
    control_detection_rate: Optional[float]
    dpd_click_rate: Optional[float]
    auth_mismatch: Optional[float]
    eve_accuracy: Optional[float]
    loss_rate: float
    eve_outcome_counts: dict
    key_length: int
    key_length_after_auth: int


# ---------------------------------------------------------------------------
# Deterministic per-round randomness.


def round_rng(master_seed: int, index: int) -> np.random.Generator:
    """The independent stream for one round: Philox keyed by (seed, round)."""
    return np.random.Generator(np.random.Philox(key=[master_seed, index]))


class _RngPool:
    """Reusable generator re-keyed per round; streams match ``round_rng`` exactly."""

    def __init__(self, master_seed: int):
        self._bg = np.random.Philox(key=[master_seed, 0])
        self.generator = np.random.Generator(self._bg)
        self._key = np.array([master_seed, 0], dtype=np.uint64)
        # Template state dict reused every round; the state setter copies the
        # values out, and buffer_pos=4 marks the output buffer exhausted.
        self._template = self._bg.state
        self._template["state"]["counter"] = np.zeros(4, dtype=np.uint64)
        self._template["state"]["key"] = self._key
        self._template["buffer_pos"] = 4
        self._template["has_uint32"] = 0
        self._template["uinteger"] = 0

    def for_round(self, index: int) -> np.random.Generator:
        self._key[1] = index
        self._bg.state = self._template
        return self.generator


# ---------------------------------------------------------------------------
# The individual protocol actions.

_HT = qc.SubsystemLayout((2, 2), ("home", "travel"))
_PSI_PLUS = qc.state_from_amplitudes(_HT, [0, 2**-0.5, 2**-0.5, 0])
_PLUS_TRAVEL = qc.plus_state(2, "travel")
_BZ = {2: qc.bz_basis(2), 3: qc.bz_basis(3)}
_BELL = {2: qc.bell_basis(2), 3: qc.bell_basis(3)}
_PLUS_CLICK = {2: qc.plus_click_basis(2), 3: qc.plus_click_basis(3)}
_HOME_BZ = qc.bz_basis(2)


def bob_prepare(kind: PhotonKind) -> qc.StateVector:
    """(|01> + |10>)/sqrt(2) on (home, travel) for a true photon, |+> alone for a disguise photon."""
    return _PSI_PLUS if kind is PhotonKind.TRUE else _PLUS_TRAVEL


def alice_encode(state: qc.StateVector, j: int) -> qc.StateVector:
    """Apply Z^j = |0><0| + (-1)^j |1><1| on the travel subsystem (vacuum fixed)."""
    if j not in (0, 1):
        raise ValueError(f"message bit must be 0 or 1, got {j}")
    if j == 0:
        return state
    pos = state.layout.position("travel")
    dims = state.layout.dims
    arr = state.amps.reshape(dims).copy()
    view = np.moveaxis(arr, pos, 0)
    view[dims[pos] - 1] *= -1.0  # the |1> level is last in either carrier dimension
    return qc.StateVector._trusted(state.layout, arr.reshape(-1))


def alice_control(state: qc.StateVector, rng) -> tuple[Union[int, str], qc.StateVector]:
    """Measure the travel carrier in B_z and announce the result.

    Returns (announcement, post state); the announcement is the bit, or
    ``"loss"`` when a 3-level mode came up vacuum.
    """
    basis = _BZ[state.layout.dim_of("travel")]
    res = qc.measure(state, basis, ("travel",), rng)
    outcome = LOSS if res.outcome == basis.residual_outcome else res.outcome
    return outcome, res.state


def bob_control_check(state: qc.StateVector, announcement: int, rng) -> tuple[int, bool]:
    """Measure the home qubit; a mismatch is a result EQUAL to the announcement.

    (The EPR pair anti-correlates the two B_z results, so agreement is the
    signature of tampering.)  Only called for bit announcements; a "loss"
    announcement is recorded as photon loss instead, without a home check.
    """
    res = qc.measure(state, _HOME_BZ, ("home",), rng)
    return res.outcome, res.outcome == announcement


def bob_decode_bell(state: qc.StateVector, rng) -> Union[int, str]:
    """Bell-measure (home, travel): psi+ -> 0, psi- -> 1, phi+- -> "tamper".

    A vacuum travel mode decodes to "loss".  Extra (Eve-held) subsystems in
    the state are fine; the measurement only touches home and travel.
    """
    basis = _BELL[state.layout.dim_of("travel")]
    res = qc.measure(state, basis, ("home", "travel"), rng)
    if res.outcome == basis.residual_outcome:
        return LOSS
    return res.outcome if res.outcome < 2 else TAMPER


def bob_dpd_check(state: qc.StateVector, alice_op: int, rng) -> Optional[bool]:
    """Disguise-photon test on the returning carrier.

    After Z^0 Bob learns nothing from |+> and discards the photon (returns
    None); after Z^1 the photon must be |->, so a |+> projector click
    (True) is evidence of an eavesdropper.
    """
    if alice_op == 0:
        return None
    basis = _PLUS_CLICK[state.layout.dim_of("travel")]
    res = qc.measure(state, basis, ("travel",), rng)
    return res.outcome == 0


def _checked_hook(attack: AttackStrategy, hook_name: str, state, ctx, rng) -> qc.StateVector:
    out = getattr(attack, hook_name)(state, ctx, rng)
    if out is state:  # identity hook
        return out
    nsq = float(np.vdot(out.amps, out.amps).real)
    if abs(nsq - 1.0) > 2.0 * qc.NORM_ATOL:
        raise AttackContractError(
            f"{attack.name}.{hook_name} returned a state with norm {math.sqrt(nsq)}"
        )
    return out


def run_round(
    config: ProtocolConfig,
    attack: AttackStrategy,
    index: int,
    _rng: Optional[np.random.Generator] = None,
) -> tuple[RoundRecord, AttackContext]:
    """Execute one full round; all randomness comes from the round's own stream."""
    rng = round_rng(config.master_seed, index) if _rng is None else _rng
    ctx = AttackContext()
    kind = PhotonKind.FALSE if rng.random() < config.false_prob else PhotonKind.TRUE
    state = bob_prepare(kind)
    state = _checked_hook(attack, "on_b_to_a", state, ctx, rng)
    mode = RoundMode.CONTROL if rng.random() < config.control_prob else RoundMode.MESSAGE
    rec = RoundRecord(index=index, mode=mode, kind=kind)

    if mode is RoundMode.CONTROL:
        announced, state = alice_control(state, rng)
        rec.control_alice = announced
        if kind is PhotonKind.FALSE:
            # Bob sent a disguise photon: he tells Alice to drop this slot.
            rec.discarded = True
            rec.photon_lost = announced == LOSS
        elif announced == LOSS:
            rec.photon_lost = True
        else:
            rec.control_bob, rec.control_mismatch = bob_control_check(state, announced, rng)
        return rec, ctx

    rec.alice_bit = 0 if rng.random() < config.p0 else 1
    state = alice_encode(state, rec.alice_bit)
    state = _checked_hook(attack, "on_a_to_b", state, ctx, rng)
    if kind is PhotonKind.TRUE:
        decoded = bob_decode_bell(state, rng)
        if decoded == LOSS:
            rec.photon_lost = True
        elif decoded != TAMPER:
            rec.bob_decoded_bit = decoded
    else:
        click = bob_dpd_check(state, rec.alice_bit, rng)
        if click is None:
            rec.discarded = True
        else:
            rec.dpd_click = click
    return rec, ctx


def _worker_count() -> int:
    raw = os.environ.get("PINGPONG_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"PINGPONG_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def run_session(
    config: ProtocolConfig,
    attack: AttackStrategy,
    sample_fraction: float = 0.25,
) -> tuple[SessionStats, list[RoundRecord]]:
    """Run every round, aggregate statistics, and authenticate the key.

    Deterministic for a given (config, attack): rounds own independent
    random streams, so the optional thread parallelism (the
    PINGPONG_THREADS environment variable) cannot change any output.
    ``sample_fraction = 0`` skips authentication.
    """
    n_workers = _worker_count()
    results: list = [None] * config.rounds

    def run_chunk(lo: int, hi: int):
        pool = _RngPool(config.master_seed)
        for i in range(lo, hi):
            results[i] = run_round(config, attack, i, _rng=pool.for_round(i))

    if n_workers == 1 or config.rounds < 2 * n_workers:
        run_chunk(0, config.rounds)
    else:
        step = math.ceil(config.rounds / n_workers)
        bounds = [(lo, min(lo + step, config.rounds)) for lo in range(0, config.rounds, step)]
        with ThreadPoolExecutor(max_workers=n_workers) as ex:
            list(ex.map(lambda b: run_chunk(*b), bounds))

    records = [rec for rec, _ in results]
    contexts = [ctx for _, ctx in results]
    stats = _aggregate(config, records, contexts, sample_fraction)
    return stats, records


def _aggregate(config, records, contexts, sample_fraction) -> SessionStats:
    n_control = n_message = n_dpd = n_discarded = n_lost = 0
    mismatch_checked = mismatches = 0
    qber_rounds = qber_errors = 0
    dpd_checked = dpd_clicks = 0
    guesses = guess_hits = 0
    eve_counts: dict = {}
    alice_key: list[int] = []
    bob_key: list[int] = []

    for rec, ctx in zip(records, contexts):
        if rec.photon_lost:
            n_lost += 1
        if rec.discarded:
            n_discarded += 1
        elif rec.mode is RoundMode.CONTROL:
            n_control += 1
            if rec.control_mismatch is not None:
                mismatch_checked += 1
                mismatches += rec.control_mismatch
        elif rec.kind is PhotonKind.TRUE:
            n_message += 1
            if not rec.photon_lost:
                qber_rounds += 1
                if rec.bob_decoded_bit != rec.alice_bit:
                    qber_errors += 1
                if rec.bob_decoded_bit is not None:
                    alice_key.append(rec.alice_bit)
                    bob_key.append(rec.bob_decoded_bit)
        else:
            n_dpd += 1
            if rec.dpd_click is not None:
                dpd_checked += 1
                dpd_clicks += rec.dpd_click
        if rec.mode is RoundMode.MESSAGE and ctx.guess is not None:
            guesses += 1
            guess_hits += ctx.guess == rec.alice_bit
        for k, v in ctx.ledger.items():
            eve_counts[k] = eve_counts.get(k, 0) + v

    auth_mismatch = None
    key_after = len(alice_key)
    if alice_key and sample_fraction > 0:
        rate, positions = authenticate(
            alice_key, bob_key, sample_fraction, round_rng(config.master_seed, config.rounds)
        )
        auth_mismatch = rate
        key_after = len(alice_key) - len(positions)

    return SessionStats(
        rounds_total=config.rounds,
        rounds_by_category={
            "control": n_control,
            "message": n_message,
            "dpd_test": n_dpd,
            "discarded": n_discarded,
        },
        qber_bell=qber_errors / qber_rounds if qber_rounds else None,
        control_detection_rate=mismatches / mismatch_checked if mismatch_checked else None,
        dpd_click_rate=dpd_clicks / dpd_checked if dpd_checked else None,
        auth_mismatch=auth_mismatch,
        eve_accuracy=guess_hits / guesses if guesses else None,
        loss_rate=n_lost / len(records) if records else 0.0,
        eve_outcome_counts=eve_counts,
        key_length=len(alice_key),
        key_length_after_auth=key_after,
    )


def authenticate(
    alice_bits: Sequence[int],
    bob_bits: Sequence[int],
    sample_fraction: float,
    rng: np.random.Generator,
) -> tuple[float, np.ndarray]:
    """Compare a random key sample over the public channel.

    Samples ceil(fraction * len) positions without replacement and returns
    (disagreement rate, sorted sampled positions).  The sampled positions
    must then be dropped from the final key, since they were made public.
    """
    n = len(alice_bits)
    if n == 0:
        raise ValueError("cannot authenticate an empty key")
    if len(bob_bits) != n:
        raise ValueError("key lengths differ")
    if not 0.0 < sample_fraction <= 1.0:
        raise ValueError(f"sample_fraction must be in (0, 1], got {sample_fraction}")
    k = math.ceil(sample_fraction * n)
    positions = np.sort(rng.choice(n, size=k, replace=False))
    a = np.asarray(alice_bits)[positions]
    b = np.asarray(bob_bits)[positions]
    return float(np.mean(a != b)), positions


# ---------------------------------------------------------------------------
# Transcript CSV.

TRANSCRIPT_COLUMNS = (
    "index",
    "mode",
    "kind",
    "alice_bit",
    "bob_bit",
    "control_mismatch",
    "dpd_click",
    "photon_lost",
    "discarded",
)


def _opt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def transcript_text(records: Sequence[RoundRecord]) -> str:
    """Render rounds as CSV, one row per round, absent optionals empty."""
    lines = [",".join(TRANSCRIPT_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.index),
                    r.mode.value,
                    r.kind.value,
                    _opt(r.alice_bit),
                    _opt(r.bob_decoded_bit),
                    _opt(r.control_mismatch),
                    _opt(r.dpd_click),
                    _opt(r.photon_lost),
                    _opt(r.discarded),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_transcript(records: Sequence[RoundRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(transcript_text(records))


def read_transcript(path) -> list[dict]:
    """Parse a transcript back into one dict per round (all values strings)."""
    with open(path, "r", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or tuple(lines[0].split(",")) != TRANSCRIPT_COLUMNS:
        raise ValueError(f"not a round transcript: {path}")
    return [dict(zip(TRANSCRIPT_COLUMNS, line.split(","))) for line in lines[1:]]
