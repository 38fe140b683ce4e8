"""Constructors for the named state families and their photon statistics."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import nlcs
from .errors import ParameterError
from .fock import FockVector, apply_annihilation, fit_dim
from .lie import Algebra, Generator, hp_apply
from .specfun import laguerre, log_binomial_array


class Family(str, enum.Enum):
    COHERENT = "Coherent"
    EXCITED_COHERENT = "ExcitedCoherent"
    NEGATIVE_BINOMIAL = "NegativeBinomial"
    BINOMIAL = "Binomial"
    PERELOMOV_K = "PerelomovK"
    CUSTOM_NLCS = "CustomNlcs"


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 < eta < 1.0:
        raise ParameterError(f"eta must lie in the open interval (0, 1), got {eta}")
    return eta


def _check_count(name: str, value, minimum: int = 0) -> int:
    if int(value) != value or value < minimum:
        raise ParameterError(f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def _sized(build, dim):
    return build(dim) if dim is not None else fit_dim(build)


def coherent(alpha: complex, dim: int | None = None) -> FockVector:
    alpha = complex(alpha)

    def build(d):
        n = np.arange(d)
        amp = np.zeros(d, dtype=complex)
        if alpha == 0:
            amp[0] = 1.0
            return FockVector(amp)
        logmag = -abs(alpha) ** 2 / 2 + n * math.log(abs(alpha)) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
        amp = np.exp(logmag - logmag.max()) * np.exp(1j * n * np.angle(alpha))
        return FockVector(amp / np.linalg.norm(amp))

    return _sized(build, dim)


def excited_coherent_norm2(alpha: complex, m: int) -> float:
    """<alpha| a^m a^dagger^m |alpha> = m! L_m(-|alpha|^2)."""
    return math.factorial(m) * laguerre(m, -abs(alpha) ** 2)


def excited_coherent(alpha: complex, m: int, dim: int | None = None) -> FockVector:
    """Normalized a^dagger^m |alpha>: amplitudes proportional to alpha^(n-m) sqrt(n!) / (n-m)! for n >= m."""
    alpha = complex(alpha)
    m = _check_count("m", m)

    def build(d):
        if d <= m:
            raise ParameterError(f"dimension {d} cannot hold level m={m}")
        amp = np.zeros(d, dtype=complex)
        if alpha == 0:
            amp[m] = 1.0
            return FockVector(amp)
        n = np.arange(m, d)
        logmag = (
            -abs(alpha) ** 2 / 2
            + (n - m) * math.log(abs(alpha))
            + 0.5 * np.array([math.lgamma(k + 1) for k in n])
            - np.array([math.lgamma(k - m + 1) for k in n])
            - 0.5 * math.log(excited_coherent_norm2(alpha, m))
        )
        amp[m:] = np.exp(logmag - logmag.max()) * np.exp(1j * (n - m) * np.angle(alpha))
        return FockVector(amp / np.linalg.norm(amp))

    return _sized(build, dim)


def negative_binomial(eta: float, M: int, dim: int | None = None) -> FockVector:
    """(1 - eta)^(M/2) C(M + n - 1, n)^(1/2) eta^(n/2)."""
    eta = _check_eta(eta)
    M = _check_count("M", M, 1)

    def build(d):
        n = np.arange(d)
        logmag = M / 2 * math.log1p(-eta) + 0.5 * log_binomial_array(M + n - 1, n) + n / 2 * math.log(eta)
        amp = np.exp(logmag - logmag.max())
        return FockVector(amp / np.linalg.norm(amp))

    return _sized(build, dim)


def binomial(eta: float, M: int, dim: int | None = None) -> FockVector:
    """[C(M, n) eta^n (1 - eta)^(M - n)]^(1/2) for n <= M, zero above."""
    eta = _check_eta(eta)
    M = _check_count("M", M, 0)
    # one empty level above M keeps the finite support visible to infer_f
    dim = M + 2 if dim is None else dim
    if dim <= M:
        raise ParameterError(f"binomial state needs D > M (D={dim}, M={M})")
    n = np.arange(M + 1)
    logp = log_binomial_array(M, n) + n * math.log(eta) + (M - n) * math.log1p(-eta)
    amp = np.zeros(dim, dtype=complex)
    amp[: M + 1] = np.exp(0.5 * logp)
    return FockVector(amp / np.linalg.norm(amp))


def perelomov_k(alpha: complex, k: int, dim: int | None = None) -> FockVector:
    k = _check_count("k", k, 1)
    return _sized(lambda d: nlcs.build_perelomov_k(alpha, k, d), dim)


def custom_nlcs(spec: nlcs.NlcsSpec, dim: int | None = None) -> FockVector:
    if dim is None:
        dim = len(spec.f)
        return fit_dim(lambda d: nlcs.build_recursive(spec, d), max_dim=dim, start=min(32, dim))
    return nlcs.build_recursive(spec, dim)


@dataclass(frozen=True)
class StateSpec:
    family: Family
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Family(self.family))
        except ValueError as exc:
            raise ParameterError(f"unknown state family {self.family!r}") from exc

    def to_dict(self) -> dict:
        params = {}
        for key, value in self.params.items():
            if isinstance(value, complex):
                value = [value.real, value.imag]
            elif isinstance(value, nlcs.NonlinearFunction):
                value = value.to_dict()
            params[key] = value
        return {"family": self.family.value, "params": params}

    @classmethod
    def from_dict(cls, data: dict) -> "StateSpec":
        if not isinstance(data, dict) or "family" not in data:
            raise ParameterError("state spec needs a 'family' field")
        return cls(data["family"], dict(data.get("params", {})))

    @classmethod
    def from_json(cls, text: str) -> "StateSpec":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParameterError(f"state spec is not valid JSON: {exc}") from exc


def _complex_param(value) -> complex:
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return complex(value)


def build_state(spec: StateSpec, dim: int | None = None) -> FockVector:
    p = spec.params
    try:
        if spec.family is Family.COHERENT:
            return coherent(_complex_param(p["alpha"]), dim)
        if spec.family is Family.EXCITED_COHERENT:
            return excited_coherent(_complex_param(p["alpha"]), p["m"], dim)
        if spec.family is Family.NEGATIVE_BINOMIAL:
            return negative_binomial(p["eta"], p["M"], dim)
        if spec.family is Family.BINOMIAL:
            return binomial(p["eta"], p["M"], dim)
        if spec.family is Family.PERELOMOV_K:
            return perelomov_k(_complex_param(p["alpha"]), p["k"], dim)
        f = p["f"]
        if isinstance(f, str):
            f = nlcs.NonlinearFunction.from_tag(f, dim or 4096)
        elif not isinstance(f, nlcs.NonlinearFunction):
            f = nlcs.NonlinearFunction.from_dict(f)
        return custom_nlcs(nlcs.NlcsSpec(_complex_param(p["alpha"]), f), dim)
    except KeyError as exc:
        raise ParameterError(f"{spec.family.value} spec is missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"bad {spec.family.value} parameters: {exc}") from exc


@dataclass(frozen=True)
class PhotonStats:
    mean: float
    variance: float
    mandel_q: float | None

    def to_dict(self) -> dict:
        return {"mean": self.mean, "variance": self.variance, "mandel_q": self.mandel_q}


def photon_stats(v: FockVector) -> PhotonStats:
    if v.norm() == 0:
        raise ParameterError("photon statistics of the zero vector are undefined")
    p = v.probabilities()
    n = np.arange(v.dim)
    mean = float(np.dot(n, p))
    variance = max(float(np.dot((n - mean) ** 2, p)), 0.0)
    q = variance / mean - 1.0 if mean > 0 else None
    return PhotonStats(mean, variance, q)


def su2_ladder_residual(eta: float, M: int, v: FockVector) -> float:
    """||(sqrt(eta) J0 + sqrt(1 - eta) J-) v - sqrt(eta) M / 2 v||."""
    j0 = hp_apply(Algebra.SU2, Generator.X0, M, v).amp
    jm = hp_apply(Algebra.SU2, Generator.MINUS, M, v).amp
    lhs = math.sqrt(eta) * j0 + math.sqrt(1 - eta) * jm
    return float(np.linalg.norm(lhs - math.sqrt(eta) * M / 2 * v.amp))


def binomial_lowering_residual(eta: float, M: int, v: FockVector) -> float:
    """||a v - sqrt(eta / (1 - eta)) sqrt(M - N) v||."""
    n = np.arange(v.dim)
    rhs = math.sqrt(eta / (1 - eta)) * np.sqrt(np.clip(M - n, 0, None)) * v.amp
    return float(np.linalg.norm(apply_annihilation(v).amp - rhs))


@dataclass(frozen=True)
class NotNlcsWitness:
    eta: float
    M: int
    alpha: complex
    lowering_residual: float
    top_amplitude: float
    expected_top_amplitude: float
    top_component_of_fa: float
    min_residual_bound: float
    verdict: nlcs.NotNlcs | nlcs.NonlinearFunction

    @property
    def is_not_nlcs(self) -> bool:
        return isinstance(self.verdict, nlcs.NotNlcs)

    def to_dict(self) -> dict:
        verdict = (
            {"not_nlcs": True, "reason": self.verdict.reason, "index": self.verdict.index}
            if self.is_not_nlcs
            else {"not_nlcs": False}
        )
        return {
            "eta": self.eta,
            "M": self.M,
            "alpha": [self.alpha.real, self.alpha.imag],
            "lowering_residual": self.lowering_residual,
            "top_amplitude": self.top_amplitude,
            "expected_top_amplitude": self.expected_top_amplitude,
            "top_component_of_fa": self.top_component_of_fa,
            "min_residual_bound": self.min_residual_bound,
            "verdict": verdict,
        }


def binomial_not_nlcs_witness(eta: float, M: int, alpha: complex = 1.0, *, seed: int = 0) -> NotNlcsWitness:
    """Evidence that the binomial state is not an eigenstate of any f(N) a.

    sqrt(M - N) kills |M>, so the lowering relation cannot be inverted: for
    every diagonal f the level-M component of f(N) a v is zero, while that of
    alpha v is alpha eta^(M/2).  A random f is used to confirm the zero
    numerically.
    """
    eta = _check_eta(eta)
    M = _check_count("M", M, 1)
    alpha = complex(alpha)
    v = binomial(eta, M, M + 2)
    rng = np.random.default_rng(seed)
    f = rng.uniform(0.5, 1.5, v.dim) * np.exp(1j * rng.uniform(0, 2 * np.pi, v.dim))
    fa = f * apply_annihilation(v).amp
    top = float(abs(v.amp[M]))
    return NotNlcsWitness(
        eta=eta,
        M=M,
        alpha=alpha,
        lowering_residual=binomial_lowering_residual(eta, M, v),
        top_amplitude=top,
        expected_top_amplitude=eta ** (M / 2),
        top_component_of_fa=float(abs(fa[M])),
        min_residual_bound=abs(alpha) * top,
        verdict=nlcs.infer_f(v, alpha),
    )
