from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from statistics import median
from typing import Iterable, Sequence

from ..clustering import ClusterSolution
from ..sets import SolutionFamily, solution_set_distance

CSV_COLUMNS = ("trial", "n", "D_n", "k_elb", "value", "seed")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (trial, n) observation. ``wall_time`` is excluded from equality and CSV."""

    experiment: str
    seed: int
    trial: int
    n: int
    D_n: float
    k_elb: int | None = None
    value: float = math.nan
    m_curve: tuple = ()
    wall_time: float = field(default=0.0, compare=False)

    def row(self) -> dict:
        return {
            "trial": self.trial,
            "n": self.n,
            "D_n": _fmt(self.D_n),
            "k_elb": "" if self.k_elb is None else self.k_elb,
            "value": _fmt(self.value),
            "seed": self.seed,
        }


def _fmt(x: float) -> str:
    return repr(float(x))


def family_distance(sol: ClusterSolution, reference: SolutionFamily) -> float:
    """Solution-set distance of a solver output from a reference family.

    A singular ambient solution has a free center, so its optimal family is
    unbounded and the distance is infinite.
    """
    if sol.singular and not sol.complete:
        return math.inf
    return solution_set_distance(sol.optima, reference)


def records_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_csv(path, records: Iterable[ExperimentRecord]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_csv(records))


def medians_by_n(records: Sequence[ExperimentRecord]) -> dict[int, float]:
    by_n: dict[int, list[float]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r.D_n)
    return {n: float(median(v)) for n, v in sorted(by_n.items())}


def count_inversions(values: Sequence[float]) -> int:
    """Number of adjacent increases in a sequence that should not increase."""
    return sum(1 for a, b in zip(values, values[1:]) if b > a)
