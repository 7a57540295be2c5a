"""Readers and writers for spaces, point sets, measures and solutions."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

import numpy as np

from .errors import InvalidMeasureError, ValidationError
from .measures import DiscreteMeasure
from .metric import EuclideanSpace, FiniteSpace, Space

log = logging.getLogger(__name__)

NORMALIZE_ATOL = 1e-6


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_table(path) -> tuple[list[str] | None, np.ndarray]:
    """Numeric CSV with an optional header row."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValidationError(f"{path}: no rows")
    header = None
    if not all(_is_number(c) for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise ValidationError(f"{path}: header but no data")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError(f"{path}: rows have differing numbers of columns")
    try:
        data = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise ValidationError(f"{path}: non-numeric entry ({exc})") from None
    if header is not None and len(header) != width:
        raise ValidationError(f"{path}: header has {len(header)} columns, data has {width}")
    return header, data


def _check_weights(w: np.ndarray, where: str) -> np.ndarray:
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidMeasureError(f"{where}: weights must be finite and nonnegative")
    total = float(w.sum())
    if abs(total - 1.0) > NORMALIZE_ATOL:
        raise InvalidMeasureError(f"{where}: weights sum to {total!r}, not 1")
    if total != 1.0:
        log.warning("%s: weights sum to %r; renormalising", where, total)
    return w / total


def load_points(path) -> DiscreteMeasure:
    """Points CSV: one point per row; a header ending in ``weight`` marks a weight column.

    Without weights the result is the empirical measure of the rows.
    """
    header, data = read_table(path)
    weights = None
    if header is not None and header[-1].lower() == "weight":
        weights = _check_weights(data[:, -1], str(path))
        data = data[:, :-1]
    if data.shape[1] == 0:
        raise ValidationError(f"{path}: no coordinate columns")
    space = EuclideanSpace(data.shape[1])
    if weights is None:
        return DiscreteMeasure.of(space, list(data), None)
    return DiscreteMeasure.of(space, list(data), weights, normalize=True)


def load_space(path) -> FiniteSpace:
    with open(path) as fh:
        return FiniteSpace.from_json(json.load(fh))


def measure_from_json(obj, space: Space | None = None) -> DiscreteMeasure:
    if "space" in obj:
        space = FiniteSpace.from_json(obj["space"])
    atoms = obj["atoms"]
    w = obj.get("weights")
    if space is None:
        if atoms and isinstance(atoms[0], str):
            raise ValidationError("label atoms need a finite space")
        first = atoms[0]
        space = EuclideanSpace(1 if np.isscalar(first) else len(first))
    if w is None:
        return DiscreteMeasure.of(space, atoms, None)
    w = _check_weights(np.asarray(w, dtype=float), "measure")
    return DiscreteMeasure.of(space, atoms, w, normalize=True)


def load_measure(path, space: Space | None = None) -> DiscreteMeasure:
    """Measure from JSON ``{atoms, weights}`` or CSV rows ``coords..., weight``."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        with open(path) as fh:
            return measure_from_json(json.load(fh), space)
    header, data = read_table(path)
    if data.shape[1] < 2:
        raise ValidationError(f"{path}: need coordinate columns and a weight column")
    w = _check_weights(data[:, -1], str(path))
    return DiscreteMeasure.of(EuclideanSpace(data.shape[1] - 1), list(data[:, :-1]), w, normalize=True)


def write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")
