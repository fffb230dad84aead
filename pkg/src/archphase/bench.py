"""Benchmark harness: seeded random instances, verified synthesis, CSV and SVG output."""

from __future__ import annotations

import csv
import io
import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .arch import load_architecture
from .circuit import Circuit, cx_count, cx_depth, extract_phase_polynomial
from .phasepoly import PhasePolynomial, random_phase_polynomial, render_phasepoly
from .synth import synthesize

log = logging.getLogger(__name__)

DEFAULT_GADGETS = (1, 5, 10, 50, 100, 500, 1000)
RECORD_FIELDS = ("arch", "gadgets", "instance", "cx_count", "cx_depth", "runtime_s", "verified")
SUMMARY_FIELDS = ("arch", "qubits", "gadgets", "instances", "mean_cx_count", "mean_cx_depth", "mean_runtime_s")
METRICS = ("cx_count", "cx_depth", "runtime_s")


class BenchError(RuntimeError):
    pass


@dataclass
class BenchConfig:
    archs: list[str]
    gadgets: list[int]
    instances: int = 20
    seed: int = 0
    out_dir: Path = Path("bench_out")
    qubits: list[int] = field(default_factory=list)
    jobs: int = 1
    record_runtime: bool = True

    def __post_init__(self) -> None:
        if not self.archs:
            raise ValueError("at least one architecture is required")
        if not self.gadgets or any(k < 1 for k in self.gadgets):
            raise ValueError("gadget counts must be positive")
        if self.instances < 1:
            raise ValueError("instances must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if any(n < 1 for n in self.qubits):
            raise ValueError("qubit counts must be positive")
        self.out_dir = Path(self.out_dir)


@dataclass(frozen=True)
class BenchRecord:
    arch: str
    qubits: int
    gadgets: int
    instance: int
    cx_count: int
    cx_depth: int
    runtime_s: float | None
    verified: bool

    def row(self) -> list[str]:
        rt = "" if self.runtime_s is None else f"{self.runtime_s:.4f}"
        return [self.arch, str(self.gadgets), str(self.instance), str(self.cx_count), str(self.cx_depth), rt, str(self.verified).lower()]


@dataclass(frozen=True)
class _Task:
    arch: str
    gadgets: int
    instance: int
    seed: int
    record_runtime: bool


def instance_seed(seed: int, n: int, k: int, i: int) -> str:
    return f"{seed}/{n}/{k}/{i}"


def verify(p: PhasePolynomial, c: Circuit, arch) -> str | None:
    """First violated property, or ``None`` when the circuit implements ``p`` on ``arch``."""
    for g in c.cx_gates():
        if not arch.are_adjacent(g.control, g.target):
            return f"CX({g.control},{g.target}) is not an edge of {arch.name}"
    diffs = extract_phase_polynomial(c).differences(p)
    return diffs[0] if diffs else None


def _run_task(task: _Task) -> tuple[BenchRecord, str | None, str | None]:
    g = load_architecture(task.arch)
    seed = instance_seed(task.seed, g.n, task.gadgets, task.instance)
    p = random_phase_polynomial(g.n, task.gadgets, seed)
    t0 = time.perf_counter()
    c = synthesize(p, g)
    elapsed = time.perf_counter() - t0
    problem = verify(p, c, g)
    rec = BenchRecord(
        arch=g.name,
        qubits=g.n,
        gadgets=task.gadgets,
        instance=task.instance,
        cx_count=cx_count(c),
        cx_depth=cx_depth(c),
        runtime_s=round(elapsed, 4) if task.record_runtime else None,
        verified=problem is None,
    )
    repro = None
    if problem is not None:
        repro = f"# arch {task.arch}\n# seed {seed}\n# failure: {problem}\n" + render_phasepoly(p)
    return rec, problem, repro


def _execute(tasks: list[_Task], jobs: int) -> list[tuple[BenchRecord, str | None, str | None]]:
    if jobs == 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _run_cells(cfg: BenchConfig, cells: list[tuple[str, int]], stem: str) -> list[BenchRecord]:
    tasks = [_Task(a, k, i, cfg.seed, cfg.record_runtime) for a, k in cells for i in range(cfg.instances)]
    results = _execute(tasks, cfg.jobs)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    failed_cells: set[tuple[str, int]] = set()
    for rec, problem, repro in results:
        if problem is None:
            continue
        failed_cells.add((rec.arch, rec.gadgets))
        path = cfg.out_dir / f"repro_{rec.arch}_{rec.gadgets}_{rec.instance}.txt"
        path.write_text(repro)
        log.error("verification failed for %s k=%d instance %d: %s (reproducer: %s)", rec.arch, rec.gadgets, rec.instance, problem, path)

    records = [r for r, _, _ in results]
    order = {cell: idx for idx, cell in enumerate(dict.fromkeys((load_architecture(a).name, k) for a, k in cells))}
    records.sort(key=lambda r: (order[(r.arch, r.gadgets)], r.instance))
    write_records(records, cfg.out_dir / f"{stem}.csv")
    summary = aggregate([r for r in records if (r.arch, r.gadgets) not in failed_cells])
    write_summary(summary, cfg.out_dir / f"{stem}_summary.csv")
    if failed_cells:
        names = ", ".join(f"{a}/k={k}" for a, k in sorted(failed_cells))
        raise BenchError(f"verification failed in cells {names}; reproducers written to {cfg.out_dir}")
    return records


def run_gadget_scaling(cfg: BenchConfig) -> list[BenchRecord]:
    """Every (architecture, gadget count) cell, ``cfg.instances`` instances each.

    Writes ``gadget_scaling.csv`` and ``gadget_scaling_summary.csv`` to ``cfg.out_dir``.
    """
    for a in cfg.archs:
        load_architecture(a)
    cells = [(a, k) for a in cfg.archs for k in cfg.gadgets]
    for a, k in cells:
        n = load_architecture(a).n
        if k > (1 << n) - 1:
            raise BenchError(f"{a} has {n} qubits, too few for {k} distinct gadgets")
    return _run_cells(cfg, cells, "gadget_scaling")


def run_qubit_scaling(cfg: BenchConfig) -> list[BenchRecord]:
    """Families in ``cfg.archs`` (e.g. ``line``) at every size in ``cfg.qubits``.

    Cells where the gadget count exceeds the number of distinct parities are
    skipped with a notice.  On complete graphs a drop in mean CX count with
    growing ``n`` raises a warning, not an error.
    """
    if not cfg.qubits:
        raise ValueError("qubit scaling needs at least one qubit count")
    cells = []
    for fam in cfg.archs:
        for n in cfg.qubits:
            name = f"{fam}_{n}"
            load_architecture(name)
            for k in cfg.gadgets:
                if k > (1 << n) - 1:
                    log.warning("skipping %s with %d gadgets: only %d distinct parities exist", name, k, (1 << n) - 1)
                    continue
                cells.append((name, k))
    if not cells:
        raise BenchError("every qubit-scaling cell was skipped")
    records = _run_cells(cfg, cells, "qubit_scaling")
    _soft_monotone_check(aggregate(records))
    return records


def _soft_monotone_check(summary: list[dict]) -> None:
    by_k: dict[int, list[tuple[int, float]]] = {}
    for row in summary:
        if row["arch"].startswith("complete_"):
            by_k.setdefault(row["gadgets"], []).append((row["qubits"], row["mean_cx_count"]))
    for k, pts in by_k.items():
        pts.sort()
        for (n0, c0), (n1, c1) in zip(pts, pts[1:]):
            if c1 < c0:
                warnings.warn(f"mean CX count on complete graphs dropped from {c0} (n={n0}) to {c1} (n={n1}) at k={k}", stacklevel=3)


def aggregate(records: Iterable[BenchRecord]) -> list[dict]:
    """Mean metrics per (arch, gadgets) cell over verified records, in first-seen order."""
    cells: dict[tuple[str, int], list[BenchRecord]] = {}
    for r in records:
        if r.verified:
            cells.setdefault((r.arch, r.gadgets), []).append(r)
    out = []
    for (arch, k), rs in cells.items():
        runtimes = [r.runtime_s for r in rs if r.runtime_s is not None]
        out.append(
            {
                "arch": arch,
                "qubits": rs[0].qubits,
                "gadgets": k,
                "instances": len(rs),
                "mean_cx_count": fmean(r.cx_count for r in rs),
                "mean_cx_depth": fmean(r.cx_depth for r in rs),
                "mean_runtime_s": fmean(runtimes) if len(runtimes) == len(rs) else None,
            }
        )
    return out


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def summary_to_csv(summary: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_FIELDS)
    for s in summary:
        rt = "" if s["mean_runtime_s"] is None else f"{s['mean_runtime_s']:.4f}"
        w.writerow([s["arch"], s["qubits"], s["gadgets"], s["instances"], f"{s['mean_cx_count']:.2f}", f"{s['mean_cx_depth']:.2f}", rt])
    return buf.getvalue()


def write_records(records: Sequence[BenchRecord], path: Path) -> None:
    Path(path).write_text(records_to_csv(records))


def write_summary(summary: Sequence[dict], path: Path) -> None:
    Path(path).write_text(summary_to_csv(summary))


def _read_summary(path: Path) -> list[dict]:
    text = Path(path).read_text()
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise BenchError(f"{path}: no data rows")
    missing = set(SUMMARY_FIELDS) - set(rows[0])
    if missing:
        raise BenchError(f"{path}: missing columns {sorted(missing)}")
    out = []
    for i, row in enumerate(rows, start=2):
        try:
            out.append(
                {
                    "arch": row["arch"],
                    "qubits": int(row["qubits"]),
                    "gadgets": int(row["gadgets"]),
                    "cx_count": float(row["mean_cx_count"]),
                    "cx_depth": float(row["mean_cx_depth"]),
                    "runtime_s": float(row["mean_runtime_s"]) if row["mean_runtime_s"] else None,
                }
            )
        except (TypeError, ValueError) as exc:
            raise BenchError(f"{path}: malformed row {i}: {exc}") from exc
    return out


def emit_plots(summary_csv: Path, out_dir: Path | None = None) -> list[Path]:
    """One SVG per metric from a summary CSV; returns the written paths.

    The x-axis is the gadget count (log scale) when gadget counts vary,
    otherwise the qubit count.  Runtime is skipped when it was not recorded.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary_csv = Path(summary_csv)
    rows = _read_summary(summary_csv)
    out_dir = Path(out_dir) if out_dir is not None else summary_csv.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = summary_csv.stem.removesuffix("_summary")

    by_gadgets = len({r["gadgets"] for r in rows}) > 1
    xkey = "gadgets" if by_gadgets else "qubits"

    def series_key(r: dict) -> str:
        return r["arch"] if by_gadgets else r["arch"].rsplit("_", 1)[0]

    written = []
    with matplotlib.rc_context({"svg.hashsalt": "archphase", "svg.fonttype": "none"}):
        for metric in METRICS:
            if any(r[metric] is None for r in rows):
                log.info("skipping %s plot: metric not recorded", metric)
                continue
            fig, ax = plt.subplots(figsize=(6, 4))
            groups: dict[str, list[tuple[int, float]]] = {}
            for r in rows:
                groups.setdefault(series_key(r), []).append((r[xkey], r[metric]))
            for name, pts in groups.items():
                pts.sort()
                ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o", label=name)
            if by_gadgets:
                ax.set_xscale("log")
            ax.set_xlabel("phase gadgets" if by_gadgets else "qubits")
            ax.set_ylabel(metric.replace("_", " "))
            ax.legend()
            fig.tight_layout()
            path = out_dir / f"{stem}_{metric}.svg"
            fig.savefig(path, format="svg", metadata={"Date": None})
            plt.close(fig)
            written.append(path)
    return written
