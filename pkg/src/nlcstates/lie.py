"""Holstein-Primakoff SU(1,1) and SU(2) generators and their displacement operators.

SU(1,1): K0 = N + M/2, K+ = a^dagger sqrt(M + N), K- = sqrt(M + N) a.
SU(2):   J0 = N - M/2, J+ = a^dagger sqrt(M - N), J- = sqrt(M - N) a,
         acting on the (M + 1)-dimensional span of |0> .. |M>.

The normal-ordering parameter of the decomposed displacement is called
``tau`` here so it is not confused with the eta of the state families.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .fock import FockVector, exp_apply_antihermitian, exp_apply_raising


class Algebra(str, enum.Enum):
    SU11 = "SU11"
    SU2 = "SU2"


class Generator(str, enum.Enum):
    X0 = "X0"
    PLUS = "Xplus"
    MINUS = "Xminus"


@dataclass(frozen=True)
class DisplacementSpec:
    algebra: Algebra
    M: int
    xi: complex

    def __post_init__(self):
        object.__setattr__(self, "algebra", Algebra(self.algebra))
        object.__setattr__(self, "xi", complex(self.xi))
        if self.M < 0 or int(self.M) != self.M:
            raise ParameterError(f"M must be a non-negative integer, got {self.M}")


def _check_su2_support(M: int, v: FockVector) -> None:
    if v.dim > M + 1 and np.any(v.amp[M + 1 :] != 0):
        raise DomainError(f"SU(2) realization acts on levels 0..{M}; vector has weight above M")


def _diag(algebra: Algebra, M: int, dim: int) -> np.ndarray:
    n = np.arange(dim, dtype=float)
    return n + M / 2 if algebra is Algebra.SU11 else n - M / 2


def _raise_coeffs(algebra: Algebra, M: int, dim: int) -> np.ndarray:
    """c[n] with X+|n> = c[n] |n + 1>, for n = 0 .. D-1."""
    n = np.arange(dim, dtype=float)
    if algebra is Algebra.SU11:
        return np.sqrt((n + 1) * (M + n))
    return np.sqrt((n + 1) * np.clip(M - n, 0, None))


def hp_apply(algebra, generator, M: int, v: FockVector) -> FockVector:
    algebra = Algebra(algebra)
    generator = Generator(generator)
    if M < 0:
        raise ParameterError("M must be non-negative")
    if algebra is Algebra.SU2:
        _check_su2_support(M, v)
    return _hp_apply(algebra, generator, M, v)


def _hp_apply(algebra: Algebra, generator: Generator, M: int, v: FockVector, coeffs=None) -> FockVector:
    if generator is Generator.X0:
        return FockVector(_diag(algebra, M, v.dim) * v.amp, v.spill)
    c = _raise_coeffs(algebra, M, v.dim) if coeffs is None else coeffs
    out = np.zeros_like(v.amp)
    if generator is Generator.PLUS:
        out[1:] = c[:-1] * v.amp[:-1]
        return FockVector(out, v.spill + float(abs(c[-1] * v.amp[-1]) ** 2))
    out[:-1] = c[:-1] * v.amp[1:]
    return FockVector(out, v.spill)


def displace(spec: DisplacementSpec, dim: int, tol: float = 1e-14) -> FockVector:
    """exp(xi X+ - conj(xi) X-)|0>."""
    if spec.algebra is Algebra.SU2 and dim <= spec.M:
        raise ParameterError(f"SU(2) displacement needs D > M (D={dim}, M={spec.M})")
    c = _raise_coeffs(spec.algebra, spec.M, dim)
    return exp_apply_antihermitian(
        spec.xi,
        lambda w: _hp_apply(spec.algebra, Generator.PLUS, spec.M, w, c),
        lambda w: _hp_apply(spec.algebra, Generator.MINUS, spec.M, w, c),
        FockVector.vacuum(dim),
        tol,
    )


def displace_decomposed(algebra, tau: complex, M: int, dim: int) -> FockVector:
    """exp(tau X+) s^X0 exp(-conj(tau) X-)|0>, s = 1 -+ |tau|^2 for SU(1,1) / SU(2).

    The rightmost factor fixes the vacuum and s^X0 only rescales it, so the
    result is exp(tau X+)|0> times s^(+-M/2), with X+ = g(N) a^dagger and
    g(n) = tau sqrt(M +- (n - 1)).
    """
    algebra = Algebra(algebra)
    tau = complex(tau)
    n = np.arange(dim, dtype=float)
    if algebra is Algebra.SU11:
        if abs(tau) >= 1:
            raise DomainError(f"SU(1,1) decomposition requires |tau| < 1, got {abs(tau)}")
        scale = (1 - abs(tau) ** 2) ** (M / 2)
        g = tau * np.sqrt(np.clip(M + n - 1, 0, None))
    else:
        scale = (1 + abs(tau) ** 2) ** (-M / 2)
        g = tau * np.sqrt(np.clip(M - n + 1, 0, None))
    vac = FockVector(scale * FockVector.vacuum(dim).amp)
    return exp_apply_raising(g, vac)


def tau_from_xi(algebra, xi: complex) -> complex:
    """tau = (xi / |xi|) tanh|xi| for SU(1,1), (xi / |xi|) tan|xi| for SU(2)."""
    algebra = Algebra(algebra)
    xi = complex(xi)
    if xi == 0:
        return 0j
    r = abs(xi)
    return xi / r * (math.tanh(r) if algebra is Algebra.SU11 else math.tan(r))


def algebra_commutator_check(algebra, M: int, dim: int) -> float:
    """Worst residual of the three commutation relations on interior basis states.

    [X0, X+] = X+, [X0, X-] = -X-, and [X-, X+] = 2 X0 (SU(1,1)) or
    [X+, X-] = 2 X0 (SU(2)).
    """
    algebra = Algebra(algebra)
    if algebra is Algebra.SU2 and dim <= M + 2:
        raise ParameterError("SU(2) check needs D > M + 2")
    top = dim - 2 if algebra is Algebra.SU11 else M + 1
    c = _raise_coeffs(algebra, M, dim)

    def op(g, w):
        return _hp_apply(algebra, g, M, w, c).amp

    def vec(a):
        return FockVector(a)

    z, p, m = Generator.X0, Generator.PLUS, Generator.MINUS
    sign = 1.0 if algebra is Algebra.SU11 else -1.0
    worst = 0.0
    for n in range(top):
        ket = FockVector.basis(n, dim)
        r1 = op(z, vec(op(p, ket))) - op(p, vec(op(z, ket))) - op(p, ket)
        r2 = op(z, vec(op(m, ket))) - op(m, vec(op(z, ket))) + op(m, ket)
        r3 = sign * (op(m, vec(op(p, ket))) - op(p, vec(op(m, ket)))) - 2 * op(z, ket)
        scale = max(1.0, abs(_diag(algebra, M, dim)[n]))
        worst = max(worst, max(np.linalg.norm(r) for r in (r1, r2, r3)) / scale)
    return worst
