"""Simulation laboratory for the Ping-Pong QKD protocol.

Modules: ``quantum_core`` (states, measurements, information measures),
``protocol`` (the round state machine and session driver), ``attacks``
(pluggable eavesdropping strategies), ``analysis`` (closed forms and the
exact density-matrix engine), ``cli`` (command-line front end).
"""

from . import analysis, attacks, cli, protocol, quantum_core
from .attacks import (
    AttackContext,
    AttackStrategy,
    CaiMeasureAttack,
    NoAttack,
    OpaqueAttack,
    TranslucentAttack,
    WojcikAttack,
    parse_attack,
)
from .protocol import (
    PhotonKind,
    ProtocolConfig,
    RoundMode,
    RoundRecord,
    SessionStats,
    authenticate,
    run_round,
    run_session,
)

__version__ = "0.1.0"
