"""Nonlinear coherent states: eigenstates of f(N) a (and of g(N) a^k).

States are built either from the amplitude recursion implied by the
eigen-equation or from the exponential form C0 exp(alpha / f(N - 1) a^dagger)|0>.
The module also infers f back from a state, builds the nonlinear function of
an excited state, and checks the operator identities those constructions
rest on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConsistencyError,
    DimensionError,
    DivergenceError,
    DomainError,
    ExponentialFormUnavailable,
    NoStateError,
    ParameterError,
    TruncationError,
)
from .fock import (
    FockVector,
    apply_annihilation,
    apply_creation,
    apply_diagonal,
    apply_power,
    exp_apply_antihermitian,
    exp_apply_raising,
    normalize,
)


@dataclass(frozen=True, eq=False)
class NonlinearFunction:
    """Tabulated f(0 .. D-1).

    ``neg_value`` stands in for f at negative arguments, which only ever
    multiplies a vanishing factor or a zero amplitude.  ``tag`` records a
    closed form when one is known ("one", "excited:m", "nbs:M", "perelomov:k").
    """

    values: np.ndarray
    neg_value: complex = 1.0
    tag: str | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0:
            raise DimensionError("nonlinear function needs a non-empty 1-d table")
        if not np.all(np.isfinite(values)):
            raise ParameterError("nonlinear function values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "neg_value", complex(self.neg_value))

    def __len__(self):
        return self.values.size

    def __call__(self, n: int) -> complex:
        if n < 0:
            return self.neg_value
        return complex(self.values[n])

    def shifted(self, shift: int) -> np.ndarray:
        """Table of f(n + shift) for n = 0 .. D-1 (negative arguments -> neg_value)."""
        idx = np.arange(self.values.size) + shift
        out = np.full(self.values.size, self.neg_value, dtype=complex)
        inside = (idx >= 0) & (idx < self.values.size)
        out[inside] = self.values[idx[inside]]
        return out

    # closed forms

    @classmethod
    def from_callable(cls, fn: Callable[[int], complex], dim: int, tag: str | None = None) -> "NonlinearFunction":
        return cls(np.array([fn(n) for n in range(dim)], dtype=complex), tag=tag)

    @classmethod
    def one(cls, dim: int) -> "NonlinearFunction":
        return cls(np.ones(dim), tag="one")

    @classmethod
    def excited(cls, m: int, dim: int) -> "NonlinearFunction":
        """1 - m / (1 + n), the function of the m-photon-excited coherent state."""
        n = np.arange(dim)
        return cls(1.0 - m / (1.0 + n), tag=f"excited:{m}")

    @classmethod
    def negative_binomial(cls, M: int, dim: int) -> "NonlinearFunction":
        """1 / sqrt(M + n): eigenvalue sqrt(eta) for every eta."""
        if M < 1:
            raise ParameterError("negative binomial function needs M >= 1")
        return cls(1.0 / np.sqrt(M + np.arange(dim)), tag=f"nbs:{M}")

    @classmethod
    def perelomov(cls, k: int, dim: int) -> "NonlinearFunction":
        """g(n) = ((floor(n/k) + 1) n! / (n + k)!)^(1/2) of the k-photon Perelomov state."""
        if k < 1:
            raise ParameterError("photon multiplicity k must be >= 1")
        n = np.arange(dim)
        log_ratio = np.array([math.lgamma(x + 1) - math.lgamma(x + k + 1) for x in n])
        return cls(np.sqrt(n // k + 1) * np.exp(0.5 * log_ratio), tag=f"perelomov:{k}")

    @classmethod
    def from_tag(cls, tag: str, dim: int) -> "NonlinearFunction":
        name, _, arg = tag.partition(":")
        builders = {
            "one": lambda: cls.one(dim),
            "excited": lambda: cls.excited(int(arg), dim),
            "nbs": lambda: cls.negative_binomial(int(arg), dim),
            "perelomov": lambda: cls.perelomov(int(arg), dim),
        }
        if name not in builders:
            raise ParameterError(f"unknown nonlinear-function tag {tag!r}")
        return builders[name]()

    # serialization

    def to_dict(self) -> dict:
        out = {"values": [[float(z.real), float(z.imag)] for z in self.values]}
        if self.tag is not None:
            out["tag"] = self.tag
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "NonlinearFunction":
        try:
            values = [complex(float(re), float(im)) for re, im in data["values"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed NonlinearFunction record: {exc}") from exc
        return cls(values, tag=data.get("tag"))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "NonlinearFunction":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class NlcsSpec:
    alpha: complex
    f: NonlinearFunction

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))


@dataclass(frozen=True)
class NotNlcs:
    """Verdict that a state cannot be an eigenstate of any f(N) a with eigenvalue alpha.

    ``index`` is the level n whose amplitude is nonzero while amp[n + 1] is
    zero; ``obstruction`` is |amp[n]|, so every f gives an eigen-residual of
    at least |alpha| * obstruction.
    """

    reason: str
    index: int
    obstruction: float


def _table(f: NonlinearFunction, dim: int) -> np.ndarray:
    if len(f) < dim:
        raise DomainError(f"f is tabulated on {len(f)} levels, dimension {dim} requested")
    return f.values[:dim]


def build_recursive(spec: NlcsSpec, dim: int) -> FockVector:
    """Unit-norm solution of the amplitude recursion C_{n+1} = alpha C_n / (f(n) sqrt(n+1)).

    Amplitudes at and below the largest zero of f on [0, D-2] vanish; the
    chain starts one level above it.  ``spill`` holds the squared amplitude
    the recursion assigns to level D.
    """
    alpha = spec.alpha
    if alpha == 0:
        raise ParameterError("eigenvalue alpha must be nonzero")
    f = _table(spec.f, dim)
    zeros = np.flatnonzero(f[: dim - 1] == 0)
    start = int(zeros[-1]) + 1 if zeros.size else 0
    if dim > 1 and zeros.size == dim - 1:
        raise NoStateError("f vanishes on all of [0, D-2]; no eigenstate in range")

    # log-magnitude recursion keeps large dynamic ranges finite
    n = np.arange(start, dim - 1)
    fn = f[start : dim - 1]
    steps = np.log(abs(alpha)) - np.log(np.abs(fn)) - 0.5 * np.log(n + 1.0)
    logmag = np.concatenate(([0.0], np.cumsum(steps)))
    phase = np.concatenate(([0.0], np.cumsum(np.angle(alpha) - np.angle(fn))))
    if not np.all(np.isfinite(logmag)):
        raise DivergenceError("amplitude recursion overflowed")
    peak = logmag.max()
    if peak > 700 and logmag[-1] >= peak - 40:
        raise DivergenceError("amplitudes still growing at the truncation edge; state is not normalizable")
    amp = np.zeros(dim, dtype=complex)
    amp[start:] = np.exp(logmag - peak) * np.exp(1j * phase)
    nrm2 = float(np.sum(np.abs(amp) ** 2))
    amp /= math.sqrt(nrm2)
    # weight the recursion would put on level D
    spill = 0.0
    if f[dim - 1] != 0:
        spill = float(abs(alpha * amp[-1] / f[dim - 1]) ** 2 / dim)
    return FockVector(amp, spill)


def build_exponential(spec: NlcsSpec, dim: int) -> FockVector:
    """C0 exp(g(N) a^dagger)|0> with g(n) = alpha / f(n - 1)."""
    f = _table(spec.f, dim)
    if np.any(f[: dim - 1] == 0):
        bad = int(np.flatnonzero(f[: dim - 1] == 0)[0])
        raise ExponentialFormUnavailable(f"f({bad}) = 0, so alpha / f(N - 1) is undefined")
    g = np.empty(dim, dtype=complex)
    g[0] = spec.alpha / spec.f.neg_value
    g[1:] = spec.alpha / f[: dim - 1]
    return normalize(exp_apply_raising(g, FockVector.vacuum(dim)))


def c0_normalization(spec: NlcsSpec, dim: int) -> float:
    """C0 = (sum_n |alpha|^{2n} / (n! |f(n-1)!|^2))^(-1/2), summed in log space over n < D."""
    f = _table(spec.f, dim)
    if np.any(f[: dim - 1] == 0):
        raise ExponentialFormUnavailable("C0 needs f nonvanishing below the cutoff")
    n = np.arange(dim)
    log_ffact = np.concatenate(([0.0], np.cumsum(np.log(np.abs(f[: dim - 1])))))
    log_terms = 2 * n * math.log(abs(spec.alpha)) - np.array([math.lgamma(k + 1) for k in n]) - 2 * log_ffact
    peak = log_terms.max()
    return float(math.exp(-0.5 * (peak + math.log(np.exp(log_terms - peak).sum()))))


def infer_f(v: FockVector, alpha: complex) -> NonlinearFunction | NotNlcs:
    """Recover f from a state by reading the amplitude recursion backwards.

    On the support, f(n) = alpha amp[n] / (sqrt(n+1) amp[n+1]).  Below the
    support f is zero at the level just under it and 1 further down.  Above
    the last inferable level the final value is repeated.
    """
    alpha = complex(alpha)
    if alpha == 0:
        raise ParameterError("eigenvalue alpha must be nonzero")
    amp = v.amp
    nz = np.flatnonzero(amp)
    if nz.size == 0:
        raise DomainError("cannot infer f from the zero vector")
    start, top = int(nz[0]), int(nz[-1])

    gap = np.flatnonzero(amp[start:top] != 0) + start
    gap = gap[amp[gap + 1] == 0]
    if gap.size:
        n = int(gap[0])
        return NotNlcs("amplitude chain breaks inside the support", n, float(abs(amp[n])))
    if top < v.dim - 1 and abs(amp[top]) > _OBSTRUCTION_TOL * v.norm():
        return NotNlcs("finite support with nonzero top amplitude", top, float(abs(amp[top])))

    values = np.ones(v.dim, dtype=complex)
    if start > 0:
        values[start - 1] = 0.0
    n = np.arange(start, top)
    values[start:top] = alpha * amp[start:top] / (np.sqrt(n + 1.0) * amp[start + 1 : top + 1])
    if top > start:
        values[top:] = values[top - 1]
    return NonlinearFunction(values)


# A top amplitude below this (relative to the norm) is treated as numerical tail,
# not as a genuine finite-support obstruction.
_OBSTRUCTION_TOL = 1e-10


def eigen_residual(spec: NlcsSpec, v: FockVector) -> float:
    """||f(N) a v - alpha v|| over components 0 .. D-2."""
    lhs = apply_diagonal(_table(spec.f, v.dim), apply_annihilation(v))
    diff = lhs.amp - spec.alpha * v.amp
    return float(np.linalg.norm(diff[:-1]))


def excite(v: FockVector, m: int, *, spill_tol: float = 1e-12) -> FockVector:
    """Normalized a^dagger^m v."""
    if m < 0:
        raise ParameterError("excitation number m must be non-negative")
    if m == 0:
        return v
    raised = apply_power(apply_creation, v, m)
    added = raised.spill - v.spill
    nrm2 = raised.norm() ** 2
    if nrm2 == 0:
        raise TruncationError("all amplitude was raised out of the truncation")
    if added / (nrm2 + added) > spill_tol:
        raise TruncationError(f"raising by {m} lost relative weight {added / (nrm2 + added):.2e}; increase D")
    return normalize(raised)


def excited_f(f: NonlinearFunction, m: int, alpha: complex) -> NlcsSpec:
    """Spec for the m-excited NLCS: f(n - m) (1 - m / (n + 1)), same eigenvalue."""
    if m < 0:
        raise ParameterError("excitation number m must be non-negative")
    if m >= len(f):
        raise DomainError(f"m={m} is not below the tabulated dimension {len(f)}")
    if m == 0:
        return NlcsSpec(alpha, f)
    n = np.arange(len(f))
    values = f.shifted(-m) * (1.0 - m / (n + 1.0))
    tag = f"excited:{m}" if f.tag == "one" else None
    return NlcsSpec(alpha, NonlinearFunction(values, neg_value=f.neg_value, tag=tag))


def _relative(diff: np.ndarray, ref: np.ndarray) -> float:
    return float(np.linalg.norm(diff) / max(1.0, np.linalg.norm(ref)))


def commutator_check(f: NonlinearFunction, dim: int) -> float:
    """max_n ||([f(N) a, f(N - 1)^{-1} a^dagger] - 1)|n>|| for n <= D-3."""
    table = _table(f, dim)
    if np.any(table[: dim - 1] == 0):
        raise DomainError("commutator identity needs f nonvanishing on [0, D-2]")
    inv_shift = np.empty(dim, dtype=complex)
    inv_shift[0] = 1.0 / f.neg_value
    inv_shift[1:] = 1.0 / table[: dim - 1]

    def lower(w):
        return apply_diagonal(table, apply_annihilation(w))

    def raise_(w):
        return apply_diagonal(inv_shift, apply_creation(w))

    worst = 0.0
    for n in range(dim - 2):
        ket = FockVector.basis(n, dim)
        comm = lower(raise_(ket)).amp - raise_(lower(ket)).amp
        worst = max(worst, _relative(comm - ket.amp, ket.amp))
    return worst


def push_through_check(f: NonlinearFunction, m: int, dim: int) -> float:
    """Worst relative residual of two reordering identities on basis states.

    (i)  a^dagger^m f(N) = f(N - m) a^dagger^m, on levels n with n + m < D;
    (ii) [f(N) a^dagger]^j = a^dagger^j f(N + j) ... f(N + 1) for j <= m,
         on levels n with n + j < D.
    """
    if m < 0 or m >= dim:
        raise ParameterError(f"need 0 <= m < D, got m={m}, D={dim}")
    table = _table(f, dim)
    shifted = f.shifted(-m)[:dim]
    worst = 0.0
    for n in range(dim - m):
        ket = FockVector.basis(n, dim)
        lhs = apply_power(apply_creation, apply_diagonal(table, ket), m)
        rhs = apply_diagonal(shifted, apply_power(apply_creation, ket, m))
        worst = max(worst, _relative(lhs.amp - rhs.amp, rhs.amp))

    def step(w):
        return apply_diagonal(table, apply_creation(w))

    for j in range(1, m + 1):
        prod = np.ones(dim, dtype=complex)
        for i in range(1, j + 1):
            prod *= f.shifted(i)[:dim]
        for n in range(dim - j):
            ket = FockVector.basis(n, dim)
            lhs = apply_power(step, ket, j)
            rhs = apply_power(apply_creation, apply_diagonal(prod, ket), j)
            worst = max(worst, _relative(lhs.amp - rhs.amp, rhs.amp))
    return worst


# Brandt-Greenberg k-photon ladder operators


def _bg_lowering_first(k: int, dim: int) -> np.ndarray:
    """(floor(n/k) (n-k)! / n!)^(1/2): applied before a^k; zero for n < k."""
    n = np.arange(dim)
    out = np.zeros(dim)
    hi = n >= k
    log_ratio = np.array([math.lgamma(x - k + 1) - math.lgamma(x + 1) for x in n[hi]])
    out[hi] = np.sqrt(n[hi] // k) * np.exp(0.5 * log_ratio)
    return out


def _bg_lower(k: int, v: FockVector, g: np.ndarray | None = None) -> FockVector:
    g = NonlinearFunction.perelomov(k, v.dim).values if g is None else g
    return apply_diagonal(g, apply_power(apply_annihilation, v, k))


def brandt_greenberg_lower(k: int, v: FockVector) -> FockVector:
    """A_k v, with A_k = ((floor(N/k) + 1) N! / (N + k)!)^(1/2) a^k.

    The equivalent ordering a^k (floor(N/k) (N - k)! / N!)^(1/2) is evaluated
    as well and must agree.
    """
    if k < 1:
        raise ParameterError("photon multiplicity k must be >= 1")
    out = _bg_lower(k, v)
    other = apply_power(apply_annihilation, apply_diagonal(_bg_lowering_first(k, v.dim), v), k)
    if _relative(out.amp - other.amp, out.amp) > 1e-10:
        raise ConsistencyError("the two orderings of the Brandt-Greenberg operator disagree")
    return out


def brandt_greenberg_ordering_residual(k: int, v: FockVector) -> float:
    """Relative difference between the two orderings of A_k applied to v."""
    out = _bg_lower(k, v)
    other = apply_power(apply_annihilation, apply_diagonal(_bg_lowering_first(k, v.dim), v), k)
    return _relative(out.amp - other.amp, out.amp)


def brandt_greenberg_raise(k: int, v: FockVector, h: np.ndarray | None = None) -> FockVector:
    """A_k^dagger v = (floor(N/k) (N - k)! / N!)^(1/2) a^dagger^k v."""
    if k < 1:
        raise ParameterError("photon multiplicity k must be >= 1")
    h = _bg_lowering_first(k, v.dim) if h is None else h
    raised = apply_power(apply_creation, v, k)
    # A_k^dagger |n> = sqrt(floor(n/k) + 1) |n + k>; levels n >= D - k leave the truncation
    top = np.arange(max(v.dim - k, 0), v.dim)
    lost = float(np.sum((top // k + 1) * np.abs(v.amp[top]) ** 2))
    return FockVector(h * raised.amp, v.spill + lost)


def build_perelomov_k(alpha: complex, k: int, dim: int, tol: float = 1e-14) -> FockVector:
    """exp(alpha A_k^dagger - conj(alpha) A_k)|0>."""
    alpha = complex(alpha)
    if k < 1:
        raise ParameterError("photon multiplicity k must be >= 1")
    if abs(alpha) > 3:
        raise ParameterError("|alpha| <= 3 required for the displacement series")
    h = _bg_lowering_first(k, dim)
    g = NonlinearFunction.perelomov(k, dim).values
    return exp_apply_antihermitian(
        alpha,
        lambda w: brandt_greenberg_raise(k, w, h),
        lambda w: _bg_lower(k, w, g),
        FockVector.vacuum(dim),
        tol,
    )


def multiphoton_residual(g: NonlinearFunction, k: int, alpha: complex, v: FockVector) -> float:
    """||g(N) a^k v - alpha v|| over components 0 .. D-1-k."""
    lhs = apply_diagonal(_table(g, v.dim), apply_power(apply_annihilation, v, k))
    diff = lhs.amp - complex(alpha) * v.amp
    return float(np.linalg.norm(diff[: v.dim - k]))
