"""Command-line front end.

Thin in-process client of the core package: every command parses its
inputs, delegates to the simulation modules, and serializes CSV or PGM.
Exit codes: 0 success, 1 verification failure, 2 parse error, 3 I/O
failure, 4 usage/argument error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import montecarlo, netlist, scenarios, verify

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_USAGE = 4


class CommandError(Exception):
    """Carries an exit code and a message for the outer main()."""

    def __init__(self, code: int, message: str | None = None):
        self.code = code
        self.message = message
        super().__init__(message or f"exit {code}")


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CommandError(EXIT_USAGE, f"{self.prog}: error: {message}")


def _fail(code: int, message: str) -> CommandError:
    return CommandError(code, message)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _fail(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _load_circuit(path: str) -> netlist.Circuit:
    text = _read_text(path)
    try:
        return netlist.parse(text)
    except netlist.NetlistParseError as exc:
        lines = "\n".join(e.render(path) for e in exc.errors)
        raise _fail(EXIT_PARSE, lines) from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _fail(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _write_bytes(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise _fail(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _g17(value: float) -> str:
    return f"{value:.17g}"


def cmd_parse(args) -> int:
    text = _read_text(args.file)
    errors = netlist.parse_errors(text)
    if errors:
        for err in errors:
            sys.stderr.write(err.render(args.file) + "\n")
        return EXIT_PARSE
    return EXIT_OK


def cmd_sweep(args) -> int:
    circuit = _load_circuit(args.file)
    if args.steps < 2:
        raise _fail(EXIT_USAGE, "--steps must be at least 2")
    if circuit.sweep_symbol is None:
        raise _fail(EXIT_USAGE, f"{args.file}: circuit declares no {netlist.SWEEP_SYMBOL} sweep symbol")
    phis = np.linspace(args.phi_from, args.phi_to, args.steps)
    scan = scenarios.scan_circuit(circuit, phis)
    rows = [f"phi_rad,{scan.columns[0]},{scan.columns[1]}"]
    for phi, a, b in zip(scan.phi_values, scan.i1, scan.i2):
        rows.append(f"{_g17(phi)},{_g17(a)},{_g17(b)}")
    _write_text(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_scenario(args) -> int:
    if args.name not in scenarios.PRESETS:
        known = ", ".join(scenarios.PRESETS)
        raise _fail(EXIT_USAGE, f"unknown preset {args.name!r}; known presets: {known}")
    report = scenarios.evaluate_preset(args.name)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        sys.stdout.write(f"{status} {report.name} {check.label}: {check.detail}\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_mc(args) -> int:
    circuit = _load_circuit(args.file)
    if args.bins < 2:
        raise _fail(EXIT_USAGE, "--bins must be at least 2")
    if args.photons < 1:
        raise _fail(EXIT_USAGE, "--photons must be at least 1")
    if args.seed < 0:
        raise _fail(EXIT_USAGE, "--seed must be non-negative")
    phis = 2.0 * np.pi * np.arange(args.bins) / args.bins
    p1, p2 = scenarios.sweep_intensities(circuit, phis)
    hist = montecarlo.sample_clicks_from_probs(phis, p1, p2, args.photons, args.seed)
    rows = ["phi_rad,clicks_1,clicks_2,expected_1,expected_2"]
    for k in range(len(phis)):
        rows.append(
            f"{_g17(hist.phi[k])},{hist.clicks_1[k]},{hist.clicks_2[k]},"
            f"{_g17(hist.expected_1[k])},{_g17(hist.expected_2[k])}"
        )
    _write_text(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_image(args) -> int:
    circuit = _load_circuit(args.file)
    if args.width < 8 or args.height < 8:
        raise _fail(EXIT_USAGE, "--width and --height must be at least 8")
    if args.tilt_period <= 0:
        raise _fail(EXIT_USAGE, "--tilt-period must be positive")

    idx = 0 if args.port == "A" else 1

    def curve(phi_values):
        return scenarios.sweep_intensities(circuit, phi_values)[idx]

    image = montecarlo.render_from_curve(
        curve, width=args.width, height=args.height,
        tilt_period=args.tilt_period, beam_waist=args.waist, phi0=args.phi0,
    )
    _write_bytes(args.out, montecarlo.encode_pgm(image))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_all()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        sys.stdout.write(f"{status} {result.name}: {result.detail}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("qeraser.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qeraser", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="validate a netlist file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("sweep", help="scan detector intensities over the phase sweep")
    p.add_argument("file")
    p.add_argument("--phi-from", type=float, default=0.0)
    p.add_argument("--phi-to", type=float, default=2.0 * math.pi)
    p.add_argument("--steps", type=int, default=256)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scenario", help="evaluate a named fringe-behavior preset")
    p.add_argument("name")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("mc", help="photon-counting histogram over the phase sweep")
    p.add_argument("file")
    p.add_argument("--photons", type=int, default=1000)
    p.add_argument("--bins", type=int, default=8)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("image", help="render a screen image as binary PGM")
    p.add_argument("file")
    p.add_argument("--port", choices=["A", "B"], default="A")
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--tilt-period", type=float, default=64.0)
    p.add_argument("--waist", type=float, default=180.0)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("verify", help="run the engine-vs-analytic cross checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CommandError as exc:
        if exc.message:
            sys.stderr.write(exc.message + "\n")
        return exc.code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
