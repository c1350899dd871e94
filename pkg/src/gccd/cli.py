"""Command line front end.

Exit codes: 0 verification passed / command succeeded, 1 error detected,
2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .channel import (
    BernoulliFlip,
    FlipPositions,
    FlipRandom,
    UniformReplacement,
    corrupt,
    exhaustive_acceptance,
    run_monte_carlo,
)
from .codec import BitString, Padding, triangle_size
from .coloring import DEFAULT_MAX_ORDER
from .counting import (
    PartitionSpec,
    cross_pairs_exponent,
    gamma_max,
    gamma_total,
    oracle_fixed_partition_count,
    oracle_spectrum,
    overhead_ratio,
    p1_bound,
)
from .scheme import WireFormatError, encode, parse_message, serialize_message, verify

EXIT_OK, EXIT_DETECTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _m_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _add_payload_source(p: argparse.ArgumentParser, required: bool) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--bits", help="payload as a 0/1 literal")
    src.add_argument("--hex", help="payload as hex digits")
    src.add_argument("--dec", help="payload as a decimal integer (needs --bits-len)")
    p.add_argument("--bits-len", type=int, help="declared payload length for --hex/--dec")
    p.add_argument("--mode", choices=["zero", "pin"], default="zero")
    p.add_argument("--pin-size", type=int, default=0)
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)


def _payload(args: argparse.Namespace) -> BitString:
    if args.bits is not None:
        if args.bits_len is not None and args.bits_len != len(args.bits):
            raise UsageError("--bits-len disagrees with the --bits literal")
        return BitString.from_str(args.bits)
    if args.hex is not None:
        digits = args.hex[2:] if args.hex.lower().startswith("0x") else args.hex
        length = args.bits_len if args.bits_len is not None else 4 * len(digits)
        return BitString.from_int(int(digits, 16), length)
    if args.bits_len is None:
        raise UsageError("--dec needs --bits-len")
    return BitString.from_int(int(args.dec), args.bits_len)


def _encode_args(args: argparse.Namespace):
    mode = Padding.CLIQUE_PIN if args.mode == "pin" else Padding.ZERO_FILL
    return encode(_payload(args), mode, args.pin_size, max_order=args.max_order)


def _read_message(path: str):
    return parse_message(Path(path).read_bytes())


def _emit(rows: list[dict], fmt: str, out, single: bool = False) -> None:
    if fmt == "json":
        obj = rows[0] if single else rows
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        keys = list(rows[0])
        cells = [[str(r[k]) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        out.write("  ".join(k.rjust(w) for k, w in zip(keys, widths)) + "\n")
        for c in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(c, widths)) + "\n")


def cmd_encode(args, out, err) -> int:
    msg = _encode_args(args)
    Path(args.out).write_bytes(serialize_message(msg))
    out.write(
        f"encoded l={msg.plan.payload_len} m={msg.plan.total_order} n={msg.n} "
        f"colors={','.join(map(str, msg.colors.colors))}\n"
    )
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    try:
        msg = _read_message(args.in_path)
    except WireFormatError as exc:
        out.write(json.dumps({"verdict": "malformed", "stage": "malformed", "detail": f"{type(exc).__name__}: {exc}"}) + "\n")
        return EXIT_USAGE
    outcome = verify(msg)
    out.write(json.dumps(outcome.as_dict()) + "\n")
    if outcome.accepted:
        return EXIT_OK
    return EXIT_USAGE if outcome.stage.value == "malformed" else EXIT_DETECTED


def cmd_corrupt(args, out, err) -> int:
    msg = _read_message(args.in_path)
    if args.flip is not None:
        model = FlipPositions(tuple(args.flip))
    else:
        if args.seed is None:
            raise UsageError("--random needs --seed")
        model = FlipRandom(args.random, args.seed)
    received = corrupt(msg.payload, model)
    Path(args.out).write_bytes(serialize_message(msg.with_payload(received)))
    out.write(f"corrupted {msg.payload} -> {received}\n")
    return EXIT_OK


def _orders(args) -> list[int]:
    if args.m is not None:
        return [args.m]
    a, b = args.m_range
    if a > b:
        raise UsageError("empty --m-range")
    return list(range(a, b + 1))


def cmd_analyze(args, out, err) -> int:
    if args.partition is not None:
        p = PartitionSpec.of(args.partition)
        e = cross_pairs_exponent(p)
        row = {"partition": ",".join(map(str, p.parts)), "m": p.m, "n": p.n, "cross_pairs_exp": e, "gamma_partition_exp": e}
        _emit([row], args.format, out, single=True)
        return EXIT_OK
    orders = _orders(args)
    if args.n is not None:
        rows = []
        for m in orders:
            if not 1 <= args.n <= m:
                continue
            gmax, _ = gamma_max(m, args.n)
            p1, _ = p1_bound(m, args.n)
            ratio = overhead_ratio(m)
            row = {} if args.m is not None else {"m": m, "n": args.n}
            row.update(
                gamma_total_exp=gamma_total(m).exponent,
                gamma_max_exp=gmax.exponent,
                y=m - args.n,
                p1=str(p1),
                overhead=str(ratio),
            )
            rows.append(row)
        if not rows:
            raise UsageError("--n must satisfy 1 <= n <= m")
        _emit(rows, args.format, out, single=args.m is not None)
        return EXIT_OK
    rows = []
    for m in orders:
        if m < 2:
            continue
        rows.append({"m": m, "l": triangle_size(m), "check_size": m, "ratio": str(overhead_ratio(m))})
    if not rows:
        raise UsageError("overhead table needs m >= 2")
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_oracle(args, out, err) -> int:
    m = args.m
    if args.partition is not None:
        p = PartitionSpec.of(args.partition)
        brute = oracle_fixed_partition_count(m, p)
        formula = 1 << cross_pairs_exponent(p)
        row = {"m": m, "partition": ",".join(map(str, p.parts)), "brute_force": brute, "gamma_partition": formula, "match": brute == formula}
        _emit([row], args.format, out, single=True)
        return EXIT_OK
    spec = oracle_spectrum(m)
    rows = [{"m": m, "chi": n, "count": spec[n]} for n in range(1, m + 1)]
    if args.format == "json":
        obj = {"m": m, "counts": {str(n): spec[n] for n in range(1, m + 1)}, "total": spec.total}
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        _emit(rows + [{"m": m, "chi": "total", "count": spec.total}], args.format, out)
    return EXIT_OK


def cmd_simulate(args, out, err) -> int:
    if args.in_path is not None:
        msg = _read_message(args.in_path)
    elif any(v is not None for v in (args.bits, args.hex, args.dec)):
        msg = _encode_args(args)
    else:
        raise UsageError("simulate needs --in or a payload source")

    if args.exhaustive:
        rep = exhaustive_acceptance(msg)
        row = {
            "corruptions": rep.corruptions,
            "undetected": rep.undetected,
            **{f"detected_{k}": v for k, v in rep.detected_by_stage.items()},
            "p_hat": str(rep.p_hat),
            "p1_exact": str(rep.p1_exact),
            "bound_2_to_minus_y": str(rep.bound_2_to_minus_y),
            "exact_fit": rep.exact_fit,
        }
        _emit([row], args.format, out, single=True)
        return EXIT_OK

    if args.flip is not None:
        model = FlipPositions(tuple(args.flip))
    else:
        if args.seed is None:
            raise UsageError("randomized simulation needs --seed")
        if args.random is not None:
            model = FlipRandom(args.random, args.seed)
        elif args.bernoulli is not None:
            model = BernoulliFlip(args.bernoulli, args.seed)
        else:
            model = UniformReplacement(args.seed)
    report = run_monte_carlo(msg, model, args.trials)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        row = report.as_dict()
        stages = row.pop("detected_by_stage")
        row.update({f"detected_{k}": v for k, v in stages.items()})
        _emit([row], "text", out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gccd", description="Graph-coloring check digits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="encode a payload into a wire-format file")
    _add_payload_source(p, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", help="verify a wire-format file")
    p.add_argument("--in", dest="in_path", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corrupt", help="flip payload bits of a wire-format file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--flip", type=_int_list)
    how.add_argument("--random", type=int, metavar="T")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_corrupt)

    for name, func, help_ in (
        ("analyze", cmd_analyze, "counting tables"),
        ("oracle", cmd_oracle, "brute-force enumeration"),
    ):
        p = sub.add_parser(name, help=help_)
        if name == "analyze":
            rng = p.add_mutually_exclusive_group()
            rng.add_argument("--m", type=int)
            rng.add_argument("--m-range", type=_m_range)
            p.add_argument("--n", type=int)
        else:
            p.add_argument("--m", type=int, required=True)
        p.add_argument("--partition", type=_int_list)
        p.add_argument("--format", choices=["json", "csv", "text"], default="text")
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="Monte Carlo or exhaustive detection statistics")
    p.add_argument("--in", dest="in_path")
    _add_payload_source(p, required=False)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--flip", type=_int_list)
    how.add_argument("--random", type=int, metavar="T")
    how.add_argument("--bernoulli", type=float, metavar="EPS")
    how.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze" and args.partition is None and args.m is None and args.m_range is None:
            raise UsageError("analyze needs --m, --m-range or --partition")
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"gccd: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except Exception as exc:  # every failure maps onto the exit-code contract
        err.write(f"gccd: error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
