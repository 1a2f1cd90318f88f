"""Parameter sweeps, tallies and output files."""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field

from .dlm import ConfigurationError, check_alpha
from .network import (DataSet, Network, build_malus_network, build_wheeler_network,
                      run_events)
from .oracle import oracle_malus, oracle_wheeler
from .rng import RandomStream

CSV_HEADER = ("experiment", "setting_deg", "config", "n", "n0", "n1",
              "n_exceptional", "f0", "f1", "oracle_p0")
COLD_START_WARMUP = 1000


class OutputError(OSError):
    pass


@dataclass
class SweepRow:
    experiment: str
    setting_deg: float
    config: str
    n: int
    n0: int
    n1: int
    n_exceptional: int
    oracle_p0: float

    @property
    def f0(self) -> float:
        detected = self.n0 + self.n1
        return self.n0 / detected if detected else math.nan

    @property
    def f1(self) -> float:
        return 1.0 - self.f0

    @property
    def exceptional_fraction(self) -> float:
        return self.n_exceptional / self.n if self.n else 0.0

    def as_csv_fields(self) -> list[str]:
        return [self.experiment, f"{self.setting_deg:.6f}", self.config, str(self.n),
                str(self.n0), str(self.n1), str(self.n_exceptional),
                f"{self.f0:.6f}", f"{self.f1:.6f}", f"{self.oracle_p0:.6f}"]


@dataclass
class SweepTable:
    experiment: str
    rows: list[SweepRow] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def by_config(self, config: str) -> list[SweepRow]:
        return [r for r in self.rows if r.config == config]


def _row(experiment: str, setting_deg: float, config: str, data: DataSet,
         warmup: int, oracle_p0: float, eom: int | None = None) -> SweepRow:
    c = data.tally(warmup, eom)
    n = c[0] + c[1] + c["exceptional"]
    return SweepRow(experiment, setting_deg, config, n, c[0], c[1], c["exceptional"], oracle_p0)


def _check_counts(n_per_point: int, n_points: int, warmup: int) -> None:
    if n_per_point < 1:
        raise ConfigurationError(f"events per point must be >= 1, got {n_per_point}")
    if n_points < 1:
        raise ConfigurationError(f"number of points must be >= 1, got {n_points}")
    if not 0 <= warmup < n_per_point:
        raise ConfigurationError(
            f"warmup must lie in [0, events per point), got {warmup} for {n_per_point} events")


def malus_sweep(alpha: float = 0.99, n_per_point: int = 10000, theta_start_deg: float = 0.0,
                theta_step_deg: float = 15.0, n_points: int = 24, seed: int = 0,
                rng_mode: str = "pseudo", warm_start: bool = True,
                warmup: int | None = None) -> SweepTable:
    """Single PBS fed on channel 0 with polarization theta, stepped after each block.

    With ``warm_start`` one network is reused across all points, so the
    learning transient is only paid once.
    """
    alpha = check_alpha(alpha)
    warmup = (0 if warm_start else COLD_START_WARMUP) if warmup is None else warmup
    _check_counts(n_per_point, n_points, warmup)
    root = RandomStream(seed, rng_mode)
    eom_rng = root.split("eom")
    table = SweepTable("malus", params=dict(alpha=alpha, events=n_per_point, seed=seed,
                                            rng_mode=rng_mode, warm_start=warm_start,
                                            warmup=warmup))
    net = build_malus_network(alpha, root.split("malus")) if warm_start else None
    for i in range(n_points):
        theta_deg = theta_start_deg + i * theta_step_deg
        if not warm_start:
            net = build_malus_network(alpha, root.split(f"malus:point:{i}"))
        net.set_setting(math.radians(theta_deg))
        data = run_events(net, n_per_point, "open", eom_rng)
        table.rows.append(_row("malus", theta_deg, "n.a.", data, warmup,
                               oracle_malus(math.radians(theta_deg))[0]))
    return table


def phi_grid(start_deg: float = 0.0, step_deg: float = 15.0, n_points: int = 25) -> list[float]:
    return [start_deg + i * step_deg for i in range(n_points)]


def wheeler_sweep(alpha: float = 0.99, n_per_point: int = 10000,
                  phi_grid_deg: list[float] | None = None, mode: str = "random",
                  seed: int = 0, rng_mode: str = "pseudo", warm_start: bool = True,
                  warmup: int | None = None) -> SweepTable:
    """Mach-Zehnder sweep over the phase shift phi.

    In ``random`` mode every event draws its own EOM choice and each phi gives
    two rows, ``open`` (no voltage) and ``closed`` (voltage), tallied
    separately.
    """
    alpha = check_alpha(alpha)
    if mode not in ("open", "closed", "random"):
        raise ConfigurationError(f"mode must be open, closed or random, got {mode!r}")
    grid = phi_grid() if phi_grid_deg is None else list(phi_grid_deg)
    warmup = (0 if warm_start else COLD_START_WARMUP) if warmup is None else warmup
    _check_counts(n_per_point, len(grid), warmup)
    root = RandomStream(seed, rng_mode)
    eom_rng = root.split("eom")
    table = SweepTable("wheeler", params=dict(alpha=alpha, events=n_per_point, seed=seed,
                                              rng_mode=rng_mode, warm_start=warm_start,
                                              warmup=warmup, mode=mode))
    net: Network | None = build_wheeler_network(alpha, root.split("wheeler")) if warm_start else None
    for i, phi_deg in enumerate(grid):
        if not warm_start:
            net = build_wheeler_network(alpha, root.split(f"wheeler:point:{i}"))
        phi = math.radians(phi_deg)
        net.set_setting(phi)
        data = run_events(net, n_per_point, mode, eom_rng)
        if mode == "random":
            for config, a in (("open", 0), ("closed", 1)):
                table.rows.append(_row("wheeler", phi_deg, config, data, warmup,
                                       oracle_wheeler(phi, config), eom=a))
        else:
            table.rows.append(_row("wheeler", phi_deg, mode, data, warmup,
                                   oracle_wheeler(phi, mode)))
    return table


def format_csv(table: SweepTable | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in (table.rows if table is not None else []):
        writer.writerow(row.as_csv_fields())
    return buf.getvalue()


def write_csv(table: SweepTable | None, path: str | os.PathLike) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(format_csv(table))
    except OSError as exc:
        raise OutputError(f"cannot write CSV to {os.fspath(path)}: {exc.strerror or exc}") from exc


def _oracle_curve(table: SweepTable, config: str, lo: float, hi: float, n: int = 241):
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    if table.experiment == "malus":
        ys = [oracle_malus(math.radians(x))[0] for x in xs]
    else:
        ys = [oracle_wheeler(math.radians(x), config) for x in xs]
    return xs, ys


def plot_table(table: SweepTable):
    """Build a matplotlib Figure of f0/f1 markers with dashed oracle curves.

    Squares are D0, circles D1. For Wheeler tables, open configurations use
    hollow markers and closed ones filled markers.
    """
    from matplotlib.figure import Figure

    fig = Figure(figsize=(6, 4.5))
    ax = fig.subplots()
    ax.set_xlabel("theta (deg)" if table.experiment == "malus" else "phi (deg)")
    ax.set_ylabel("normalized intensity")
    ax.set_ylim(-0.05, 1.05)
    for config in sorted({r.config for r in table.rows}):
        rows = table.by_config(config)
        xs = [r.setting_deg for r in rows]
        face = "none" if config == "open" else None
        tag = "" if config == "n.a." else f" {config}"
        ax.plot(xs, [r.f0 for r in rows], "s", mfc=face, color="C0", label=f"N0/N{tag}")
        ax.plot(xs, [r.f1 for r in rows], "o", mfc=face, color="C3", label=f"N1/N{tag}")
        cx, cy = _oracle_curve(table, config, min(xs), max(xs))
        ax.plot(cx, cy, "--", color="C0", lw=1)
        ax.plot(cx, [1.0 - y for y in cy], "--", color="C3", lw=1)
    if table.rows:
        ax.legend(fontsize="small", loc="upper center", bbox_to_anchor=(0.5, -0.14),
                  ncol=2, frameon=False)
    fig.tight_layout()
    return fig


def emit_plot(table: SweepTable, path: str | os.PathLike) -> None:
    """Write :func:`plot_table` as a self-contained SVG."""
    import matplotlib

    fig = plot_table(table)
    with matplotlib.rc_context({"svg.hashsalt": "dlmoptics", "svg.fonttype": "path"}):
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise OutputError(f"cannot write plot to {os.fspath(path)}: {exc.strerror or exc}") from exc
