"""Command-line entry point ``archphase``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bench
from .arch import ArchitectureError, catalog_names, load_architecture
from .circuit import QasmError, extract_phase_polynomial, from_qasm, to_qasm
from .gf2 import BitMatrix, SingularMatrixError
from .phasepoly import DomainError, PhasePolyParseError, parse_phasepoly, random_phase_polynomial, render_phasepoly
from .steiner_gauss import steiner_gauss
from .synth import synthesize


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _parse_matrix(text: str) -> BitMatrix:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace(" ", "").strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty matrix file")
    return BitMatrix.from_strings(rows)


def cmd_synth(args: argparse.Namespace) -> int:
    g = load_architecture(args.arch)
    p = parse_phasepoly(_read(args.input))
    trace: list[str] | None = [] if args.trace else None
    c = synthesize(p, g, trace=trace)
    if trace is not None:
        sys.stderr.write("\n".join(trace) + "\n")
    _write(args.out, to_qasm(c))
    return 0


def cmd_synth_linear(args: argparse.Namespace) -> int:
    g = load_architecture(args.arch)
    m = _parse_matrix(_read(args.matrix))
    _write(args.out, to_qasm(steiner_gauss(m, g)))
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    p = random_phase_polynomial(args.qubits, args.gadgets, args.seed)
    _write(args.out, render_phasepoly(p))
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    c = from_qasm(_read(args.input))
    _write(args.out, render_phasepoly(extract_phase_polynomial(c)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_architecture(args.arch)
    p = parse_phasepoly(_read(args.poly))
    c = from_qasm(_read(args.qasm))
    if c.n != g.n:
        print(f"FAIL: circuit has {c.n} qubits, architecture {g.name} has {g.n}")
        return 1
    if p.n != c.n:
        print(f"FAIL: polynomial has {p.n} qubits, circuit has {c.n}")
        return 1
    problem = bench.verify(p, c, g)
    if problem:
        print(f"FAIL: {problem}")
        return 1
    print("PASS")
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    for name in catalog_names():
        g = load_architecture(name)
        print(f"{name}\t{g.n} qubits\t{len(g.edges)} edges")
    return 0


def _bench_config(args: argparse.Namespace, qubits: list[int] | None = None) -> bench.BenchConfig:
    return bench.BenchConfig(
        archs=args.archs,
        gadgets=args.gadgets,
        instances=args.instances,
        seed=args.seed,
        out_dir=Path(args.out),
        qubits=qubits or [],
        jobs=args.jobs,
        record_runtime=not args.no_timing,
    )


def cmd_bench_gadgets(args: argparse.Namespace) -> int:
    bench.run_gadget_scaling(_bench_config(args))
    if args.plots:
        bench.emit_plots(Path(args.out) / "gadget_scaling_summary.csv")
    return 0


def cmd_bench_qubits(args: argparse.Namespace) -> int:
    bench.run_qubit_scaling(_bench_config(args, args.qubits))
    if args.plots:
        bench.emit_plots(Path(args.out) / "qubit_scaling_summary.csv")
    return 0


def cmd_bench_plots(args: argparse.Namespace) -> int:
    for path in bench.emit_plots(Path(args.csv), Path(args.out) if args.out else None):
        print(path)
    return 0


def _add_bench_common(p: argparse.ArgumentParser, archs: str, gadgets: str) -> None:
    p.add_argument("--archs", type=_str_list, default=_str_list(archs))
    p.add_argument("--gadgets", type=_int_list, default=_int_list(gadgets))
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-timing", action="store_true", help="leave runtime_s empty so the CSV is byte-reproducible")
    p.add_argument("--plots", action="store_true", help="also write SVG plots")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="archphase", description="Architecture-aware phase polynomial synthesis.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a phase polynomial file to QASM")
    p.add_argument("--arch", required=True, help="catalog name, family like line_9, or JSON path")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--trace", action="store_true", help="print every recursion step to stderr")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("synth-linear", help="synthesize a GF(2) matrix as a CX circuit")
    p.add_argument("--arch", required=True)
    p.add_argument("--matrix", required=True, help="file with one row of 0/1 per line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth_linear)

    p = sub.add_parser("random", help="emit a random phase polynomial")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--gadgets", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("extract", help="QASM in, phase polynomial out")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="check a QASM circuit against a phase polynomial and architecture")
    p.add_argument("--arch", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--qasm", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list bundled architectures")
    p.set_defaults(func=cmd_catalog)

    pb = sub.add_parser("bench", help="benchmark experiments")
    bsub = pb.add_subparsers(dest="experiment", required=True)
    p = bsub.add_parser("gadget-scaling")
    _add_bench_common(p, "line_36,square_36,complete_36", ",".join(map(str, bench.DEFAULT_GADGETS)))
    p.set_defaults(func=cmd_bench_gadgets)
    p = bsub.add_parser("qubit-scaling")
    _add_bench_common(p, "line,square,complete", "100")
    p.add_argument("--qubits", type=_int_list, default=_int_list("4,9,16,25,36"))
    p.set_defaults(func=cmd_bench_qubits)
    p = bsub.add_parser("plots", help="SVG plots from a summary CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench_plots)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (
        ArchitectureError,
        QasmError,
        PhasePolyParseError,
        DomainError,
        SingularMatrixError,
        bench.BenchError,
        OSError,
        ValueError,
    ) as exc:
        print(f"archphase: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
