"""Per-iteration run records and their CSV form.

A run of ``K`` iterations yields ``K`` step rows (k = 0 .. K-1) plus one
terminal row for the final point, which has no step size or step length
but always carries the full-data objective. Floats are written with
``repr`` so reading the file back reproduces them bit for bit; missing
values are empty cells.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

CSV_HEADER = "k,N_k,alpha_k,zeta_k,theta_k,fev_cum,f_saa,f_full"


@dataclass
class TraceRow:
    """One iteration's record.

    ``f_saa`` is the objective on the iteration's row subset; ``f_full``
    is the diagnostic full-data objective, present only on rows where it
    was sampled. ``fev_cum`` is the oracle meter after the iteration
    finished.
    """

    k: int
    n_k: int
    alpha: float | None
    zeta: float
    theta: float | None
    fev_cum: int
    f_saa: float
    f_full: float | None


def _fmt(v: float | None) -> str:
    return "" if v is None else repr(float(v))


def _parse_opt(s: str) -> float | None:
    return None if s == "" else float(s)


@dataclass
class RunTrace:
    """Complete record of one solver run."""

    rows: list[TraceRow] = field(default_factory=list)
    x_final: np.ndarray | None = None
    n_total: int | None = None
    iterates: list[np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def final_row(self) -> TraceRow:
        return self.rows[-1]

    def to_csv_text(self) -> str:
        out = io.StringIO()
        out.write(CSV_HEADER + "\n")
        for r in self.rows:
            out.write(
                f"{r.k},{r.n_k},{_fmt(r.alpha)},{_fmt(r.zeta)},{_fmt(r.theta)},"
                f"{r.fev_cum},{_fmt(r.f_saa)},{_fmt(r.f_full)}\n"
            )
        return out.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())

    @classmethod
    def from_csv(cls, source) -> "RunTrace":
        """Read rows back from a file path or text stream. The final
        point and pool size are not stored in the file and stay unset."""
        if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
            with open(source, "r") as fh:
                return cls.from_csv(fh)
        header = source.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        rows = []
        for line in source:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 8:
                raise ValueError(f"expected 8 fields, got {len(parts)}: {line!r}")
            rows.append(
                TraceRow(
                    k=int(parts[0]),
                    n_k=int(parts[1]),
                    alpha=_parse_opt(parts[2]),
                    zeta=float(parts[3]),
                    theta=_parse_opt(parts[4]),
                    fev_cum=int(parts[5]),
                    f_saa=float(parts[6]),
                    f_full=_parse_opt(parts[7]),
                )
            )
        return cls(rows=rows)
