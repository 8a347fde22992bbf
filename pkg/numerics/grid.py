"""
Uniformly sampled real functions on [0, U].

A GridFunction represents chi, rho, sigma and sigma_k. Values are stored
in linear scale; a companion log-scale array is kept alongside so that
values which underflow double precision still carry their exponent.

File format: CSV with header `u,value`, one row per grid point, first
row `0,1`, values to 12 significant digits.
"""

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple
import math

import numpy as np

from ..core.exceptions import DomainError
from ..utils.csvio import read_table, write_rows

GRID_HEADER = ('u', 'value')


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Function sampled at u = 0, h, 2h, ..., N h.

    Attributes:
        step: Grid step h > 0.
        values: v_0..v_N, v_i approximating f(i h).
        log_values: log v_i; finite even where v_i underflows to 0.
        compact: Zero-extended beyond the last grid point.
        label: Free-form description used in logs.
        jump_index: Grid index whose sample is the midpoint of a jump, if any.
    """
    step: float
    values: np.ndarray
    log_values: Optional[np.ndarray] = None
    compact: bool = False
    label: str = ''
    jump_index: Optional[int] = None

    def __post_init__(self):
        if not (self.step > 0):
            raise DomainError(f"Grid step must be positive, got {self.step}")

        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1 or values.size < 2:
            raise DomainError("Grid needs at least two samples")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

        if self.log_values is None:
            with np.errstate(divide='ignore'):
                logs = np.log(values)
        else:
            logs = np.array(self.log_values, dtype=np.float64, copy=True)
            if logs.shape != values.shape:
                raise DomainError("log_values must match values in shape")
        logs.setflags(write=False)
        object.__setattr__(self, 'log_values', logs)

    @property
    def size(self) -> int:
        """Number of intervals N."""
        return self.values.size - 1

    @property
    def umax(self) -> float:
        return self.size * self.step

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.values.size) * self.step

    def index_of(self, u: float) -> int:
        """Grid index of u, which must lie on the grid."""
        i = int(round(u / self.step))
        if abs(i * self.step - u) > 1e-9 * max(1.0, abs(u)):
            raise DomainError(f"u={u} is not a grid point of step {self.step}")
        return i

    def value_at(self, u: float) -> float:
        """
        Linear interpolation at u.

        Beyond the grid a compact function is 0; anything else is a
        DomainError.
        """
        if u < 0:
            raise DomainError(f"u must be non-negative, got {u}")
        if u > self.umax + 1e-12:
            if self.compact:
                return 0.0
            raise DomainError(f"u={u} beyond grid end {self.umax}")
        return float(np.interp(u, self.points, self.values))

    def log_at(self, u: float) -> float:
        """Log-scale value at u, interpolated linearly in log space."""
        if u > self.umax + 1e-12:
            if self.compact:
                return -math.inf
            raise DomainError(f"u={u} beyond grid end {self.umax}")
        i = u / self.step
        lo = min(int(math.floor(i)), self.size - 1)
        frac = i - lo
        a, b = self.log_values[lo], self.log_values[lo + 1]
        if frac == 0.0:
            return float(a)
        if not (math.isfinite(a) and math.isfinite(b)):
            return float(a) if frac < 0.5 else float(b)
        return float(a + frac * (b - a))

    def padded(self, size: int) -> np.ndarray:
        """
        Values on indices 0..size, zero-extended if compact.

        Raises:
            DomainError: If the grid is too short and not compact.
        """
        if size <= self.size:
            return self.values[:size + 1]
        if not self.compact:
            raise DomainError(
                f"Grid ends at {self.umax}, need {size * self.step} (not compact)"
            )
        out = np.zeros(size + 1)
        out[:self.values.size] = self.values
        return out

    def left_limits(self, size: int) -> np.ndarray:
        """
        padded(size) with the jump sample replaced by its left limit
        2 v_j - v_{j+1} (v_{j+1} = 0 past the grid end).

        Integrals whose upper end sits on the jump take this value there.
        """
        out = np.array(self.padded(size), copy=True)
        j = self.jump_index
        if j is not None and 0 < j <= size:
            right = self.values[j + 1] if j < self.size else 0.0
            out[j] = 2.0 * self.values[j] - right
        return out

    def padded_logs(self, size: int) -> np.ndarray:
        if size <= self.size:
            return self.log_values[:size + 1]
        out = np.full(size + 1, -np.inf)
        out[:self.values.size] = self.log_values
        return out

    def resampled(self, step: float, umax: float = None) -> 'GridFunction':
        """Linear resampling onto a new step (and optionally a new horizon)."""
        umax = self.umax if umax is None else umax
        n = int(math.floor(umax / step + 1e-9))
        points = np.arange(n + 1) * step
        values = np.interp(points, self.points, self.values,
                           right=0.0 if self.compact else self.values[-1])
        if not self.compact and points[-1] > self.umax + 1e-12:
            raise DomainError(f"Cannot resample beyond grid end {self.umax}")
        return GridFunction(step=step, values=values, compact=self.compact,
                            label=f"{self.label} (resampled h={step:g})")

    def check_density(self, unit_index: int) -> None:
        """
        Check the chi/sigma invariants: v_0 = 1, v_i = 1 up to u = 1 except a
        jump midpoint at u = 1 itself, and 0 <= v <= 1.

        Raises:
            DomainError: On violation.
        """
        v = self.values
        if abs(v[0] - 1.0) > 1e-12:
            raise DomainError(f"{self.label or 'grid'}: value at 0 must be 1, got {v[0]}")
        head = v[:min(unit_index, v.size)]
        if np.any(np.abs(head - 1.0) > 1e-12):
            raise DomainError(f"{self.label or 'grid'}: must equal 1 on [0, 1)")
        if np.any(v < -1e-15) or np.any(v > 1.0 + 1e-12):
            raise DomainError(f"{self.label or 'grid'}: values must lie in [0, 1]")

    # File I/O

    def rows(self) -> List[Tuple[float, float]]:
        """(u, value) pairs in grid order."""
        return [(float(u), float(v)) for u, v in zip(self.points, self.values)]

    def to_csv(self, path: str = None, digits: int = 12) -> str:
        return write_rows(GRID_HEADER, self.rows(), path=path, digits=digits)

    @classmethod
    def from_csv(cls, path: str, compact: bool = False, label: str = None,
                 jump_at: float = None) -> 'GridFunction':
        """
        Read a `u,value` grid file.

        Args:
            path: CSV file with header `u,value`.
            compact: The function is zero beyond the last row.
            label: Name used in logs (default: the path).
            jump_at: Grid point whose sample is the mean value of a jump;
                     recorded as jump_index.

        Raises:
            DomainError: On a bad header, an unparsable row, a non-uniform
                         step, first row != (0, 1), or a jump_at that is
                         not a grid point.
        """
        data = np.array(read_table(path, GRID_HEADER, (float, float)), dtype=np.float64)
        if data.shape[0] < 2:
            raise DomainError(f"Grid file has fewer than two rows: {path}")
        if not np.all(np.isfinite(data)):
            raise DomainError(f"Grid file has non-finite entries: {path}")

        u, v = data[:, 0], data[:, 1]
        if u[0] != 0.0 or v[0] != 1.0:
            raise DomainError(f"First grid row must be 0,1: {path}")

        steps = np.diff(u)
        step = float(steps.mean())
        if np.any(np.abs(steps - step) > 1e-9 * max(1.0, u[-1])):
            raise DomainError(f"Grid file is not uniformly spaced: {path}")

        # snap to the exact reciprocal step the writer used
        per_unit = round(1.0 / step)
        if per_unit > 0 and abs(1.0 / step - per_unit) < 1e-6 * per_unit:
            step = 1.0 / per_unit

        grid = cls(step=step, values=v, compact=compact, label=label or str(path))
        if jump_at is None:
            return grid

        j = grid.index_of(jump_at)
        if not 0 < j <= grid.size:
            raise DomainError(f"Jump at {jump_at:g} is outside (0, {grid.umax:g}] in {path}")
        return replace(grid, jump_index=j)


def indicator_chi(T: float, U: float, h: float) -> GridFunction:
    """
    Indicator of [0, T] on a grid of step h up to U, zero-extended.

    The jump at T is sampled at its mean value 1/2 when T is a grid point,
    which keeps trapezoid convolutions second order across the jump; the
    grid records it as jump_index so integrals ending at T use the left
    limit 1 instead.
    """
    if T <= 0:
        raise DomainError(f"T must be positive, got {T}")
    n = int(math.floor(U / h + 1e-9))
    points = np.arange(n + 1) * h
    values = np.where(points < T - 1e-12, 1.0, 0.0)
    on_grid = np.abs(points - T) <= 1e-9
    values[on_grid] = 0.5
    values[0] = 1.0

    jumps = np.flatnonzero(on_grid)
    jump_index = int(jumps[0]) if jumps.size and jumps[0] > 0 else None
    return GridFunction(step=h, values=values, compact=True, label=f"indicator[0,{T:g}]",
                        jump_index=jump_index)
