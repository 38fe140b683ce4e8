"""Dense single-mode Fock-space vectors and ladder-operator actions.

A :class:`FockVector` holds the amplitudes <n|psi> for n = 0 .. D-1 together
with ``spill``, the squared norm that raising operators have pushed past the
cutoff.  Every operation here returns a new vector; nothing is mutated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DimensionError, NormalizationError, TruncationError

# Tail rule used by the adaptive constructors.
TAIL_TOL = 1e-16
TAIL_LEVELS = 8
MAX_DIM = 4096


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class FockVector:
    amp: np.ndarray
    spill: float = 0.0

    def __post_init__(self):
        amp = self.amp
        if not (isinstance(amp, np.ndarray) and amp.dtype == complex and not amp.flags.writeable):
            amp = _frozen(amp)
            object.__setattr__(self, "amp", amp)
        if amp.ndim != 1 or amp.size == 0:
            raise DimensionError(f"amplitudes must be a non-empty 1-d sequence, got shape {amp.shape}")
        if not np.all(np.isfinite(amp)):
            raise NormalizationError("amplitudes contain NaN or Inf")
        spill = float(self.spill)
        if not (spill >= 0.0 and math.isfinite(spill)):
            raise ValueError(f"spill must be finite and non-negative, got {self.spill}")
        object.__setattr__(self, "spill", spill)

    @property
    def dim(self) -> int:
        return self.amp.size

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockVector":
        if not 0 <= n < dim:
            raise DimensionError(f"level {n} outside truncation of dimension {dim}")
        amp = np.zeros(dim, dtype=complex)
        amp[n] = 1.0
        return cls(amp)

    @classmethod
    def vacuum(cls, dim: int) -> "FockVector":
        return cls.basis(0, dim)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def probabilities(self) -> np.ndarray:
        p = np.abs(self.amp) ** 2
        return p / p.sum()

    def padded(self, dim: int) -> "FockVector":
        """Zero-pad (or exactly truncate a zero tail) to ``dim`` levels."""
        if dim >= self.dim:
            amp = np.zeros(dim, dtype=complex)
            amp[: self.dim] = self.amp
            return FockVector(amp, self.spill)
        if np.any(self.amp[dim:] != 0):
            raise DimensionError("cannot shrink a vector with nonzero amplitudes above the new cutoff")
        return FockVector(self.amp[:dim], self.spill)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "amp": [[float(z.real), float(z.imag)] for z in self.amp],
            "spill": self.spill,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "FockVector":
        try:
            amp = [complex(float(re), float(im)) for re, im in data["amp"]]
            dim = int(data.get("dim", len(amp)))
            spill = float(data.get("spill", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed FockVector record: {exc}") from exc
        if dim != len(amp):
            raise DimensionError(f"dim={dim} but {len(amp)} amplitudes given")
        return cls(np.array(amp, dtype=complex), spill)

    @classmethod
    def from_json(cls, text: str) -> "FockVector":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class DiagonalFunction:
    """Tabulated h(n) for an operator-valued function h(N) of the number operator."""

    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1:
            raise DimensionError("diagonal values must be 1-d")
        if not np.all(np.isfinite(values)):
            raise ValueError("diagonal function values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, fn: Callable[[int], complex], dim: int) -> "DiagonalFunction":
        return cls([fn(n) for n in range(dim)])


def _diag_values(h) -> np.ndarray:
    return np.asarray(getattr(h, "values", h), dtype=complex)


def apply_annihilation(v: FockVector) -> FockVector:
    out = np.zeros_like(v.amp)
    out[:-1] = np.sqrt(np.arange(1, v.dim)) * v.amp[1:]
    return FockVector(out, v.spill)


def apply_creation(v: FockVector) -> FockVector:
    out = np.zeros_like(v.amp)
    out[1:] = np.sqrt(np.arange(1, v.dim)) * v.amp[:-1]
    lost = v.dim * abs(v.amp[-1]) ** 2
    return FockVector(out, v.spill + lost)


def apply_diagonal(h, v: FockVector) -> FockVector:
    values = _diag_values(h)
    if values.size < v.dim:
        raise DimensionError(f"diagonal function has {values.size} entries, vector needs {v.dim}")
    return FockVector(values[: v.dim] * v.amp, v.spill)


def apply_power(op: Callable[[FockVector], FockVector], v: FockVector, times: int) -> FockVector:
    for _ in range(times):
        v = op(v)
    return v


def inner(u: FockVector, v: FockVector) -> complex:
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return complex(np.vdot(u.amp, v.amp))


def normalize(v: FockVector) -> FockVector:
    nrm = v.norm()
    if nrm == 0.0 or not math.isfinite(nrm):
        raise NormalizationError("cannot normalize a zero (or non-finite) vector")
    return FockVector(v.amp / nrm, v.spill / nrm**2)


def fidelity(u: FockVector, v: FockVector) -> float:
    """|<u|v>| / (|u||v|); phase-insensitive overlap."""
    return abs(inner(u, v)) / (u.norm() * v.norm())


def infidelity(u: FockVector, v: FockVector) -> float:
    return max(0.0, 1.0 - fidelity(u, v))


def tail_mass(v: FockVector, levels: int = TAIL_LEVELS) -> float:
    """Squared norm carried by the top ``levels`` components, relative to the total."""
    p = np.abs(v.amp) ** 2
    return float(p[-levels:].sum() / p.sum())


def fit_dim(
    build: Callable[[int], FockVector],
    *,
    start: int = 32,
    max_dim: int = MAX_DIM,
    tail_tol: float = TAIL_TOL,
    levels: int = TAIL_LEVELS,
) -> FockVector:
    """Call ``build(D)`` with growing D until the top ``levels`` carry < ``tail_tol``."""
    dim = max(start, levels + 1)
    while True:
        v = build(dim)
        if tail_mass(v, levels) < tail_tol:
            return v
        if dim >= max_dim:
            raise TruncationError(
                f"tail mass {tail_mass(v, levels):.3e} still above {tail_tol:.0e} at maximum dimension {max_dim}"
            )
        dim = min(2 * dim, max_dim)


def exp_apply_raising(g, v: FockVector) -> FockVector:
    """exp(g(N) a^dagger) v by its terminating power series.

    Each term raises the photon number by one, so at most D terms are nonzero
    inside the truncation.  The raised-out part of each term is added to
    ``spill``, using the last tabulated g value for the level just above the
    cutoff.
    """
    values = _diag_values(g)
    if values.size < v.dim:
        raise DimensionError(f"g has {values.size} entries, vector needs {v.dim}")
    values = values[: v.dim]
    edge = abs(values[-1]) ** 2
    total = v.amp.copy()
    term = v.amp.copy()
    sqrt_n = np.sqrt(np.arange(1, v.dim))
    lost = 0.0
    for j in range(1, v.dim + 1):
        lost_amp = math.sqrt(v.dim * edge) * abs(term[-1]) / j
        nxt = np.zeros_like(term)
        nxt[1:] = values[1:] * sqrt_n * term[:-1] / j
        term = nxt
        lost += lost_amp
        if not np.any(term):
            break
        total += term
    if not np.all(np.isfinite(total)):
        raise TruncationError("raising series overflowed")
    return FockVector(total, v.spill + lost**2)


def exp_apply_antihermitian(
    plus_coeff: complex,
    apply_plus: Callable[[FockVector], FockVector],
    apply_minus: Callable[[FockVector], FockVector],
    v: FockVector,
    tol: float = 1e-14,
    *,
    max_terms: int | None = None,
    norm_bound: float | None = None,
) -> FockVector:
    """exp(xi X+ - conj(xi) X-) v with xi = ``plus_coeff``, X- the adjoint of X+.

    The exponent is split into s equal substeps so that each substep's
    Taylor series has terms of bounded size; within a substep terms are added
    until one falls below tol / s relative to the input norm.  ``norm_bound``
    bounds the operator norm of X+ on the truncated space; by default it is
    estimated from the row sums of X+ and X- (exact for nonnegative matrix
    elements, which all ladder realizations here have).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    xi = complex(plus_coeff)
    if xi == 0:
        return v
    vnorm = v.norm()
    if vnorm == 0.0:
        return v
    max_terms = 10 * v.dim if max_terms is None else max_terms

    def generator(w: FockVector) -> tuple[np.ndarray, float]:
        up = apply_plus(w)
        down = apply_minus(w)
        leaked = abs(xi) * math.sqrt(max(up.spill - w.spill, 0.0))
        return xi * up.amp - xi.conjugate() * down.amp, leaked

    if norm_bound is None:
        ones = FockVector(np.ones(v.dim, dtype=complex))
        norm_bound = float(np.max(np.abs(apply_plus(ones).amp) + np.abs(apply_minus(ones).amp)))
    theta = 4.0
    steps = max(1, math.ceil(abs(xi) * norm_bound / theta))

    while True:
        result = _substep_series(generator, v, steps, tol, vnorm, max_terms)
        if result is not None:
            return result
        steps *= 2
        if steps > 1 << 20:
            raise ConvergenceError("substep count exploded while damping term growth", terms=max_terms)


def _substep_series(generator, v, steps, tol, vnorm, max_terms):
    thresh = tol / steps * vnorm
    growth_cap = 1e6 * vnorm
    cur = v
    leak_total = 0.0
    for _ in range(steps):
        total = cur.amp.copy()
        term = cur
        leak_step = 0.0
        for j in range(1, max_terms + 1):
            raw, leaked = generator(term)
            term_amp = raw / (steps * j)
            leak_step += leaked / (steps * j)
            tnorm = float(np.linalg.norm(term_amp))
            if tnorm > growth_cap:
                return None
            total += term_amp
            term = FockVector(term_amp)
            if tnorm < thresh:
                break
        else:
            raise ConvergenceError(
                f"Taylor series did not converge within {max_terms} terms",
                terms=max_terms,
                last_term_norm=tnorm,
                partial_norm=float(np.linalg.norm(total)),
            )
        leak_total += leak_step
        cur = FockVector(total)
    return FockVector(cur.amp, v.spill + leak_total**2)
