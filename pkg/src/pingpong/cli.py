"""Command-line front end: Monte Carlo runs, exact analyses, sweeps, DPD demo.

Summaries are line-oriented ``key=value`` pairs so scripts can grep them.
Exit codes: 0 success, 2 bad arguments, 3 output I/O failure.  Every
invocation is deterministic given its seed, independent of the optional
PINGPONG_THREADS parallelism.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import analysis, protocol
from .attacks import ATTACK_GRAMMAR, NoAttack, TranslucentAttack, WojcikAttack, parse_attack

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pingpong",
        description="Ping-Pong protocol simulation laboratory",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, rounds_default=10_000):
        p.add_argument("--attack", default="none", help=f"attack name: {ATTACK_GRAMMAR}")
        p.add_argument("--rounds", type=int, default=rounds_default)
        p.add_argument("--seed", type=int, default=0, help="64-bit master seed")

    sim = sub.add_parser("simulate", help="Monte Carlo protocol session")
    common(sim)
    sim.add_argument("--p0", type=float, default=0.5, help="probability Alice encodes 0")
    sim.add_argument("--d", type=float, default=None, help="disturbance for --attack translucent")
    sim.add_argument("--control-prob", type=float, default=0.5)
    sim.add_argument("--false-prob", type=float, default=0.25, help="disguise photon probability (0 = original protocol)")
    sim.add_argument("--sample-fraction", type=float, default=0.25, help="key fraction published for authentication")
    sim.add_argument("--qber-convention", choices=("fidelity", "bell-decode"), default="fidelity")
    sim.add_argument("--out", default=None, help="also write the summary to this file")
    sim.add_argument("--transcript", default=None, help="write per-round CSV transcript here")
    sim.set_defaults(func=_cmd_simulate)

    ex = sub.add_parser("exact", help="closed-form and exact-engine analysis at one point")
    ex.add_argument("--attack", default="translucent", help="translucent or opaque")
    ex.add_argument("--p0", type=float, default=0.5)
    ex.add_argument("--d", type=float, default=0.5)
    ex.add_argument("--out", default=None)
    ex.set_defaults(func=_cmd_exact)

    sw = sub.add_parser("sweep", help="closed-form vs engine sweep over a (p0, d) grid")
    sw.add_argument("--p0-grid", default=None, help="comma-separated p0 values (default 0,0.1,...,1)")
    sw.add_argument("--d-grid", default=None, help="comma-separated d values (default 0,0.1,...,1)")
    sw.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    sw.set_defaults(func=_cmd_sweep)

    dpd = sub.add_parser("dpd-demo", help="disguise-photon detection demo (Z^1 rounds only)")
    common(dpd)
    dpd.set_defaults(func=_cmd_dpd_demo)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"pingpong: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pingpong: {exc}", file=sys.stderr)
        return EXIT_IO


def _fmt(value, digits=6) -> str:
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return format(value, f".{digits}f")


def _emit(lines: list[str], out_path: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def _cmd_simulate(args) -> int:
    attack = parse_attack(args.attack, default_d=args.d)
    config = protocol.ProtocolConfig(
        p0=args.p0,
        control_prob=args.control_prob,
        false_prob=args.false_prob,
        rounds=args.rounds,
        master_seed=args.seed,
        qber_convention=args.qber_convention,
    )
    if not 0.0 <= args.sample_fraction <= 1.0:
        raise ValueError(f"--sample-fraction must be in [0, 1], got {args.sample_fraction}")
    stats, records = protocol.run_session(config, attack, sample_fraction=args.sample_fraction)

    # The overlap-convention error rate exists only where the exact analysis
    # defines it: a clean channel or the ancilla attack.
    if isinstance(attack, NoAttack):
        qber_fidelity = 0.0
    elif isinstance(attack, TranslucentAttack):
        qber_fidelity = analysis.translucent_closed_form(config.p0, attack.d).qber_fidelity
    else:
        qber_fidelity = None

    if config.qber_convention == "fidelity":
        q_for_capacity = qber_fidelity
    else:
        q_for_capacity = stats.qber_bell
    i_ab = None if q_for_capacity is None else analysis.qc.binary_capacity(q_for_capacity)

    cat = stats.rounds_by_category
    lines = [
        f"attack={attack.name}",
        f"rounds={stats.rounds_total}",
        f"seed={config.master_seed}",
        f"p0={_fmt(config.p0)}",
        f"control_prob={_fmt(config.control_prob)}",
        f"false_prob={_fmt(config.false_prob)}",
        f"qber_convention={config.qber_convention}",
        f"rounds_control={cat['control']}",
        f"rounds_message={cat['message']}",
        f"rounds_dpd_test={cat['dpd_test']}",
        f"rounds_discarded={cat['discarded']}",
        f"qber_bell={_fmt(stats.qber_bell)}",
        f"qber_fidelity={_fmt(qber_fidelity)}",
        f"i_ab={_fmt(i_ab)}",
        f"control_detection_rate={_fmt(stats.control_detection_rate)}",
        f"dpd_click_rate={_fmt(stats.dpd_click_rate)}",
        f"auth_mismatch={_fmt(stats.auth_mismatch)}",
        f"eve_accuracy={_fmt(stats.eve_accuracy)}",
        f"loss_rate={_fmt(stats.loss_rate)}",
        f"key_length={stats.key_length}",
        f"key_length_after_auth={stats.key_length_after_auth}",
    ]
    for key in sorted(stats.eve_outcome_counts):
        lines.append(f"eve_{key}={stats.eve_outcome_counts[key]}")
    if args.transcript:
        protocol.write_transcript(records, args.transcript)
    _emit(lines, args.out)
    return EXIT_OK


def _cmd_exact(args) -> int:
    name = args.attack.split(":", 1)[0]
    if name == "opaque":
        rep = analysis.opaque_closed_form(args.p0)
        lines = [
            "attack=opaque",
            f"p0={format(rep.p0, '.12g')}",
            f"q0={format(rep.q0, '.12g')}",
            f"q1={format(rep.q1, '.12g')}",
            f"q={format(rep.q, '.12g')}",
            f"i_ab={format(rep.i_ab, '.12g')}",
        ]
    elif name == "translucent":
        attack = parse_attack(args.attack, default_d=args.d)
        form = analysis.translucent_closed_form(args.p0, attack.d)
        exact = analysis.translucent_exact_engine(args.p0, attack.d)
        lines = [
            "attack=translucent",
            f"p0={format(form.p0, '.12g')}",
            f"d={format(form.d, '.12g')}",
            f"qber_fidelity={format(form.qber_fidelity, '.12g')}",
            f"i_ab={format(form.i_ab, '.12g')}",
            f"i_ae={format(form.i_ae, '.12g')}",
            f"p_i={format(form.p_i, '.12g')}",
            f"p_z={format(form.p_z, '.12g')}",
            f"control_detection={format(form.control_detection, '.12g')}",
            "eigenvalues=" + ";".join(format(v, ".12g") for v in form.eigenvalues),
            f"engine_max_deviation={format(analysis.report_max_deviation(form, exact), '.3g')}",
        ]
    else:
        raise ValueError(f"exact analysis exists for 'translucent' or 'opaque', not {args.attack!r}")
    _emit(lines, args.out)
    return EXIT_OK


def _parse_grid(text: Optional[str]):
    if text is None:
        return None
    try:
        grid = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad grid {text!r}; expected comma-separated floats") from None
    return grid


def _cmd_sweep(args) -> int:
    rows = analysis.sweep(_parse_grid(args.p0_grid), _parse_grid(args.d_grid))
    text = analysis.sweep_csv(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_dpd_demo(args) -> int:
    attack = parse_attack(args.attack)
    if not isinstance(attack, (NoAttack, WojcikAttack)):
        raise ValueError("dpd-demo supports --attack none or wojcik")
    if args.rounds < 1:
        raise ValueError(f"--rounds must be >= 1, got {args.rounds}")
    if not 0 <= args.seed < 2**64:
        raise ValueError("--seed must fit in 64 bits")

    from .attacks import AttackContext

    pool = protocol._RngPool(args.seed)
    clicks = 0
    for r in range(args.rounds):
        rng = pool.for_round(r)
        ctx = AttackContext()
        state = protocol.bob_prepare(protocol.PhotonKind.FALSE)
        state = attack.on_b_to_a(state, ctx, rng)
        state = protocol.alice_encode(state, 1)
        state = attack.on_a_to_b(state, ctx, rng)
        clicks += bool(protocol.bob_dpd_check(state, 1, rng))
    exact = analysis.dpd_click_probability(eve_present=isinstance(attack, WojcikAttack))
    _emit(
        [
            f"attack={attack.name}",
            f"rounds={args.rounds}",
            f"seed={args.seed}",
            f"clicks={clicks}",
            f"click_rate={_fmt(clicks / args.rounds)}",
            f"exact_click_probability={format(exact, '.12g')}",
        ],
        None,
    )
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
