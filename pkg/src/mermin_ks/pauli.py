"""Symplectic Pauli observables and exact integer matrices.

A Pauli tensor product on ``n`` qubits is stored as ``i**phase * X^x Z^z``
where ``x`` and ``z`` are n-bit masks.  Qubit 1 is the most significant bit,
so the mask bit order matches the computational basis index
``4*b1 + 2*b2 + b3`` used throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

_LETTER_OF = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliObservable:
    """``i**phase_exp`` times the tensor product of ``X^x Z^z`` factors.

    Attributes:
        n_qubits: number of tensor factors.
        x_mask: bit ``n_qubits - q`` set iff qubit ``q`` (1-based) carries X.
        z_mask: same layout for the Z part.
        phase_exp: exponent of the global phase ``i``, reduced mod 4.
    """

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask uses bits beyond n_qubits")
        if self.x_mask < 0 or self.z_mask < 0:
            raise ValueError("masks must be non-negative")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> PauliObservable:
        return cls(n_qubits, 0, 0, 0)

    @property
    def is_hermitian(self) -> bool:
        # (i^p XZ)^dagger = i^(2-p) XZ on every Y-site, so p must match the Y count mod 2
        return (self.phase_exp - (self.x_mask & self.z_mask).bit_count()) % 2 == 0

    @property
    def is_identity(self) -> bool:
        """True for +I only; -I is reported through :attr:`scalar_sign`."""
        return self.x_mask == 0 and self.z_mask == 0 and self.phase_exp == 0

    @property
    def scalar_sign(self) -> int | None:
        """+1 or -1 when the observable is ``+I`` or ``-I``, else None."""
        if self.x_mask or self.z_mask or self.phase_exp % 2:
            return None
        return 1 if self.phase_exp == 0 else -1

    @property
    def letters(self) -> str:
        """Per-qubit letters, with the phase reduced out of any Y factors."""
        out = []
        for q in range(self.n_qubits):
            bit = 1 << (self.n_qubits - 1 - q)
            out.append(_LETTER_OF[bool(self.x_mask & bit), bool(self.z_mask & bit)])
        return "".join(out)

    def label(self) -> str:
        y = (self.x_mask & self.z_mask).bit_count()
        sign = {0: "+", 1: "+i", 2: "-", 3: "-i"}[(self.phase_exp - y) % 4]
        return sign + self.letters

    def __mul__(self, other: PauliObservable) -> PauliObservable:
        return multiply(self, other)

    def __str__(self) -> str:
        return self.label()


def observable_from_letters(letters: Iterable[str] | str) -> PauliObservable:
    """Build the tensor product of single-qubit Paulis, qubit 1 first.

    >>> observable_from_letters("XII")
    PauliObservable(n_qubits=3, x_mask=4, z_mask=0, phase_exp=0)
    """
    letters = [s.upper() for s in letters]
    if not letters:
        raise ValueError("need at least one qubit")
    n = len(letters)
    x = z = phase = 0
    for q, s in enumerate(letters):
        bit = 1 << (n - 1 - q)
        if s == "X":
            x |= bit
        elif s == "Z":
            z |= bit
        elif s == "Y":
            # Y = i X Z
            x |= bit
            z |= bit
            phase += 1
        elif s != "I":
            raise ValueError(f"unknown Pauli letter {s!r}")
    return PauliObservable(n, x, z, phase)


def _same_size(a: PauliObservable, b: PauliObservable) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")


def multiply(a: PauliObservable, b: PauliObservable) -> PauliObservable:
    """Exact operator product ``a @ b``.

    Moving ``Z^{z_a}`` past ``X^{x_b}`` costs a factor ``-1`` per qubit where
    both are present.
    """
    _same_size(a, b)
    swaps = (a.z_mask & b.x_mask).bit_count()
    return PauliObservable(
        a.n_qubits,
        a.x_mask ^ b.x_mask,
        a.z_mask ^ b.z_mask,
        a.phase_exp + b.phase_exp + 2 * swaps,
    )


def product(observables: Sequence[PauliObservable]) -> PauliObservable:
    if not observables:
        raise ValueError("empty product")
    out = observables[0]
    for o in observables[1:]:
        out = multiply(out, o)
    return out


def commutes(a: PauliObservable, b: PauliObservable) -> bool:
    _same_size(a, b)
    form = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return form % 2 == 0


class ExactMatrix:
    """Square integer matrix divided by one positive integer denominator.

    The pair is kept reduced (gcd of all entries and the denominator is 1),
    so equality is plain structural equality.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator: int = 1):
        num = np.array(numerator, dtype=np.int64)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {num.shape}")
        den = int(denominator)
        if den == 0:
            raise ValueError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(den, *(int(v) for v in np.unique(np.abs(num))))
        if g > 1:
            num //= g
            den //= g
        num.flags.writeable = False
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, dim: int) -> ExactMatrix:
        return cls(np.eye(dim, dtype=np.int64))

    @classmethod
    def zeros(cls, dim: int) -> ExactMatrix:
        return cls(np.zeros((dim, dim), dtype=np.int64))

    @classmethod
    def projector(cls, vector: Sequence[int]) -> ExactMatrix:
        """Rank-1 projector ``v v^T / (v . v)`` onto an integer vector."""
        v = np.asarray(vector, dtype=np.int64)
        norm = int(v @ v)
        if norm == 0:
            raise ValueError("zero vector has no projector")
        return cls(np.outer(v, v), norm)

    @property
    def dim(self) -> int:
        return self.numerator.shape[0]

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        den = self.denominator * other.denominator // gcd(self.denominator, other.denominator)
        return ExactMatrix(
            self.numerator * (den // self.denominator)
            + other.numerator * (den // other.denominator),
            den,
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(-self.numerator, self.denominator)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(self.numerator @ other.numerator, self.denominator * other.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.denominator == other.denominator and np.array_equal(
            self.numerator, other.numerator
        )

    def __hash__(self) -> int:
        return hash((self.denominator, self.numerator.tobytes(), self.numerator.shape))

    def __repr__(self) -> str:
        return f"ExactMatrix(denominator={self.denominator}, numerator={self.numerator.tolist()})"

    def trace(self) -> tuple[int, int]:
        """Trace as a reduced (numerator, denominator) pair."""
        t = int(np.trace(self.numerator))
        g = gcd(t, self.denominator)
        return t // g, self.denominator // g

    def is_zero(self) -> bool:
        return not self.numerator.any()

    def is_identity(self) -> bool:
        return self.denominator == 1 and np.array_equal(
            self.numerator, np.eye(self.dim, dtype=np.int64)
        )

    def is_symmetric(self) -> bool:
        return np.array_equal(self.numerator, self.numerator.T)

    def is_projector(self) -> bool:
        """Symmetric and idempotent: ``N N == d N`` in scaled form."""
        n = self.numerator
        return self.is_symmetric() and np.array_equal(n @ n, self.denominator * n)

    def projector_rank(self) -> int:
        """Rank of a projector, read off its trace."""
        if not self.is_projector():
            raise ValueError("not a projector")
        t, d = self.trace()
        if t % d:
            raise ValueError("projector trace is not an integer")
        return t // d

    def apply(self, vector: Sequence[int]) -> np.ndarray:
        """Matrix-vector product; only valid for denominator 1."""
        if self.denominator != 1:
            raise ValueError("apply() needs an integer matrix")
        return self.numerator @ np.asarray(vector, dtype=np.int64)


def to_matrix(a: PauliObservable) -> ExactMatrix:
    """Real integer realization of an X/Z-only observable.

    ``X^x Z^z |j> = (-1)^{popcount(z & j)} |j xor x>``.
    """
    if a.x_mask & a.z_mask:
        raise ValueError(f"{a.label()} contains Y factors; no real realization")
    if a.phase_exp % 2:
        raise ValueError(f"{a.label()} has an imaginary phase; no real realization")
    dim = 1 << a.n_qubits
    sign = -1 if a.phase_exp == 2 else 1
    m = np.zeros((dim, dim), dtype=np.int64)
    for j in range(dim):
        m[j ^ a.x_mask, j] = sign * (-1) ** (a.z_mask & j).bit_count()
    return ExactMatrix(m)
