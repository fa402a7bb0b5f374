"""Deterministic synthetic point generators and a point-file loader.

Four distributions drive the experiments, named by the shape of the
point cloud they produce:

* ``box``    — uniform over the square [0, extent]².
* ``bell``   — isotropic Gaussian centered at (extent/2, extent/2) with
  standard deviation extent/6, so ~99.7% of the mass stays in the box.
* ``disk``   — uniform by area in the disk of radius extent/2 inscribed
  in the box.
* ``circle`` — uniform angle on the boundary of that disk; every point
  lands (up to float rounding) on the circle itself.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(seed)``; each generator draws a fixed sequence of blocks,
so identical specs produce bit-identical output on any platform.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import IO, Iterable, Sequence, Union

import numpy as np

from .predicates import Point

GENERATOR_KINDS = ("box", "bell", "disk", "circle")

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to regenerate a synthetic point set."""

    kind: str
    n: int
    seed: int
    extent: float = 1000.0

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(
                f"unknown generator kind {self.kind!r}; "
                f"expected one of {GENERATOR_KINDS}"
            )
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"point count must be a nonnegative integer, got {self.n!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not (math.isfinite(self.extent) and self.extent > 0):
            raise ValueError(f"extent must be positive and finite, got {self.extent!r}")


def generate(spec: GeneratorSpec) -> list[Point]:
    """Produce the point sequence for a spec; same spec, same bits."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    n = spec.n
    extent = spec.extent
    if n == 0:
        return []
    if spec.kind == "box":
        xy = rng.uniform(0.0, extent, size=(n, 2))
    elif spec.kind == "bell":
        xy = rng.normal(extent / 2.0, extent / 6.0, size=(n, 2))
    elif spec.kind == "disk":
        theta = rng.uniform(0.0, _TWO_PI, size=n)
        radius = (extent / 2.0) * np.sqrt(rng.uniform(0.0, 1.0, size=n))
        xy = np.empty((n, 2))
        xy[:, 0] = extent / 2.0 + radius * np.cos(theta)
        xy[:, 1] = extent / 2.0 + radius * np.sin(theta)
    else:  # circle
        theta = rng.uniform(0.0, _TWO_PI, size=n)
        radius = extent / 2.0
        xy = np.empty((n, 2))
        xy[:, 0] = extent / 2.0 + radius * np.cos(theta)
        xy[:, 1] = extent / 2.0 + radius * np.sin(theta)
    return [(float(x), float(y)) for x, y in xy.tolist()]


class PointFileError(ValueError):
    """A point file violated the one-point-per-line text format."""


def load_points(path: Union[str, os.PathLike]) -> list[Point]:
    """Read a text point file: two floats per line, '#' comments allowed."""
    points: list[Point] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise PointFileError(
                    f"{path}: line {lineno}: expected two values, got {len(fields)}"
                )
            try:
                x, y = float(fields[0]), float(fields[1])
            except ValueError:
                raise PointFileError(
                    f"{path}: line {lineno}: not a pair of numbers: {line!r}"
                ) from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise PointFileError(
                    f"{path}: line {lineno}: non-finite coordinate: {line!r}"
                )
            points.append((x, y))
    return points


def dump_points(points: Iterable[Point], out: Union[str, os.PathLike, IO[str]]) -> None:
    """Write points in the text format load_points reads (full precision)."""

    def _write(fh: IO[str]) -> None:
        for p in points:
            fh.write(f"{p[0]!r} {p[1]!r}\n")

    if hasattr(out, "write"):
        _write(out)  # type: ignore[arg-type]
    else:
        with open(out, "w", encoding="utf-8") as fh:
            _write(fh)
