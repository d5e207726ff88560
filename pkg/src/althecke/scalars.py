"""Scalar layer: quantum integers, pinned square roots, tolerant comparison.

Everything downstream works over complex floating point.  The Hecke parameter
xi is either exactly 1 or a primitive e-th root of unity exp(2*pi*i*j/e); its
square root is pinned to the half-angle choice exp(pi*i*j/e) so that every
radical used by the alternating coefficient system is globally consistent.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import gcd, pi

import numpy as np

DEFAULT_TOL = 1e-8


class NonSemisimpleError(ValueError):
    """A quantum integer that must be invertible vanished."""


def approx_eq(a: complex, b: complex, tol: float = DEFAULT_TOL) -> bool:
    """Mixed relative/absolute test: |a - b| <= tol * max(1, |a|, |b|)."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = complex(a)
    b = complex(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def quantum_int(k: int, xi: complex) -> complex:
    """The quantum integer [k].

    [k] = 1 + xi + ... + xi^(k-1) for k >= 0 and -(xi^-1 + ... + xi^k) for
    k < 0, which is (xi^k - 1)/(xi - 1) whenever xi != 1 and plain k at
    xi = 1.  Satisfies [-k] = -xi^(-k) [k].
    """
    if xi == 1:
        return complex(k)
    return (xi ** k - 1) / (xi - 1)


def sqrt_conventional(h: int, xi: complex, sqrt_xi: complex | None = None,
                      tol: float = DEFAULT_TOL) -> complex:
    """A fixed square root of the quantum integer [h], nonzero h.

    Positive h gets the principal complex root.  Negative h is pinned by
    sqrt([h]) = i * sqrt_xi**h * sqrt([-h]), which squares exactly to
    [h] = -xi^h [-h].  At xi = 1 this reduces to i * sqrt(|h|).
    """
    if h == 0:
        raise ValueError("square-root convention is only defined for h != 0")
    if sqrt_xi is None:
        sqrt_xi = cmath.sqrt(xi)
    q = quantum_int(h, xi)
    if abs(q) <= tol:
        raise NonSemisimpleError(f"[{h}] vanishes for this Hecke parameter")
    if h > 0:
        return cmath.sqrt(q)
    return 1j * sqrt_xi ** h * cmath.sqrt(quantum_int(-h, xi))


@dataclass(frozen=True)
class AlgebraParams:
    """The tuple (n, level, e, xi, kappa) fixing one cyclotomic Hecke algebra.

    e is the quantum characteristic of xi; ``None`` encodes infinity, which
    is the characteristic of xi = 1 over the complex numbers.
    """

    n: int
    level: int
    e: int | None
    xi: complex
    sqrt_xi: complex
    kappa: tuple[int, ...]
    tol: float = DEFAULT_TOL
    dtype: type = np.complex128

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        if len(self.kappa) != self.level:
            raise ValueError("multicharge length must equal the level")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.e is None:
            if self.xi != 1:
                raise ValueError("infinite quantum characteristic requires xi = 1")
        else:
            if self.e <= 2:
                raise ValueError("quantum characteristic must exceed 2")
            if self.xi == 1:
                raise ValueError("xi = 1 has infinite quantum characteristic here")
            if not approx_eq(self.xi ** self.e, 1.0, self.tol):
                raise ValueError("xi is not an e-th root of unity")

    @classmethod
    def make(cls, n: int, level: int = 1, e: int | None = 7, j: int = 1,
             xi_one: bool = False, kappa: tuple[int, ...] | None = None,
             tol: float = DEFAULT_TOL, dtype: type = np.complex128) -> "AlgebraParams":
        """Build parameters from CLI-style inputs; xi = exp(2*pi*i*j/e) or 1."""
        if kappa is None:
            if level == 1:
                kappa = (0,)
            else:
                raise ValueError("a multicharge is required when level > 1")
        kappa = tuple(int(k) for k in kappa)
        if xi_one:
            return cls(n, level, None, 1 + 0j, 1 + 0j, kappa, tol, dtype)
        if e is None:
            raise ValueError("e is required unless xi = 1")
        e = int(e)
        if e <= 2:
            raise ValueError("quantum characteristic must exceed 2")
        j = int(j) % e
        if gcd(j, e) != 1:
            raise ValueError(f"exp(2*pi*i*{j}/{e}) is not a primitive {e}-th root")
        xi = cmath.exp(2j * pi * j / e)
        sqrt_xi = cmath.exp(1j * pi * j / e)
        return cls(n, level, e, xi, sqrt_xi, kappa, tol, dtype)

    @property
    def is_symmetric(self) -> bool:
        """Whether kappa equals (-kappa_l, ..., -kappa_1)."""
        return self.kappa == tuple(-k for k in reversed(self.kappa))

    def qint(self, k: int) -> complex:
        return quantum_int(k, self.xi)

    def qsqrt(self, h: int) -> complex:
        return sqrt_conventional(h, self.xi, self.sqrt_xi, self.tol)

    def residue(self, c: int) -> int:
        """Content reduced modulo e; the content itself when e is infinite."""
        return c % self.e if self.e is not None else c

    def residues(self, contents) -> tuple[int, ...]:
        return tuple(self.residue(c) for c in contents)

    def close(self, a: complex, b: complex) -> bool:
        return approx_eq(a, b, self.tol)

    def describe(self) -> str:
        xi_txt = "1" if self.xi == 1 else f"exp(2*pi*i*j/{self.e})"
        e_txt = "inf" if self.e is None else str(self.e)
        return (f"n={self.n} level={self.level} e={e_txt} xi={xi_txt} "
                f"kappa={self.kappa}")
