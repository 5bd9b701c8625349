"""Von Mangoldt values, Chebyshev's psi and truncated prime sums.

A :class:`LambdaTable` stores the prime powers up to a limit together with
log p for each of them, plus compensated running sums of Lambda(n) and
Lambda(n)/n at every prime power. Everything else is a query against those
arrays.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import CapacityError, DomainError, TableRangeError

EULER_GAMMA = 0.57721566490153286061

DEFAULT_LIMIT = 4_000_001
MEMORY_BUDGET = 10**8

CACHE_MAGIC = b"LMTB1"


@dataclass(frozen=True, eq=False)
class LambdaTable:
    limit: int
    prime_powers: np.ndarray = field(repr=False)
    log_p: np.ndarray = field(repr=False)
    psi_checkpoints: np.ndarray = field(repr=False)

    @property
    def lambda_values(self) -> dict[int, float]:
        return dict(zip(self.prime_powers.tolist(), self.log_p.tolist()))

    @cached_property
    def mertens_checkpoints(self) -> np.ndarray:
        """Running sums of Lambda(n)/n at each prime power."""
        return _kernels.kahan_cumsum(self.log_p / self.prime_powers)

    def _check(self, x, what="x"):
        if x > self.limit:
            raise TableRangeError(f"{what}={x} exceeds table limit {self.limit}")

    def count_upto(self, x) -> int:
        """Number of prime powers n <= x."""
        return int(np.searchsorted(self.prime_powers, math.floor(x), side="right"))

    def von_mangoldt(self, n: int) -> float:
        if n < 1:
            raise DomainError("von_mangoldt needs n >= 1")
        self._check(n, "n")
        i = int(np.searchsorted(self.prime_powers, n))
        if i < self.prime_powers.size and self.prime_powers[i] == n:
            return float(self.log_p[i])
        return 0.0

    def psi(self, x: float) -> float:
        if x < 0:
            raise DomainError("psi needs x >= 0")
        self._check(x)
        k = self.count_upto(x)
        return float(self.psi_checkpoints[k - 1]) if k else 0.0

    def mertens_lambda_sum(self, x: float, sigma: float = 1.0) -> float:
        """Sum of Lambda(n)/n^sigma over n <= x, exactly rounded."""
        if x < 2:
            raise DomainError("mertens_lambda_sum needs x >= 2")
        self._check(x)
        k = self.count_upto(x)
        n = self.prime_powers[:k]
        terms = self.log_p[:k] * np.exp(-sigma * np.log(n.astype(np.float64)))
        return math.fsum(terms)

    def truncated_lambda(self, n: int, params: TruncationParams) -> float:
        """Selberg's weight: Lambda(n) up to x, damped by log(xy/n)/log y above."""
        xy = params.x * params.y
        if n > xy:
            raise DomainError(f"n={n} exceeds xy={xy}")
        lam = self.von_mangoldt(n)
        if n <= params.x or lam == 0.0:
            return lam
        return lam * math.log(xy / n) / math.log(params.y)

    def s_xy(self, params: TruncationParams) -> float:
        """Upper bound for the truncated Dirichlet polynomial at real sigma."""
        x, y, sigma = params.x, params.y, params.sigma
        xy = x * y
        self._check(xy, "xy")
        k_x = self.count_upto(x)
        k_xy = self.count_upto(xy)
        n = self.prime_powers[:k_xy].astype(np.float64)
        w = self.log_p[:k_xy] * np.exp(-sigma * np.log(n))
        head = math.fsum(w[:k_x])
        tail = math.fsum(w[k_x:] * np.log(xy / n[k_x:]))
        return head + tail / math.log(y)


@dataclass(frozen=True)
class TruncationParams:
    """The pair (x, y) of the truncated weight, with the sigma it serves.

    Built directly from (x, y), or from (sigma, lambda, log q) through
    y = exp(lambda/(sigma - 1/2)) and x*y = (log q)^2.
    """

    x: float
    y: float
    sigma: float = 1.0
    lam: float | None = None
    q_or_t: float | None = None

    def __post_init__(self):
        if not (0.5 < self.sigma <= 1.0):
            raise DomainError(f"sigma={self.sigma} outside (1/2, 1]")
        if self.x < 2:
            raise DomainError(f"x={self.x} < 2")
        if self.y < 2:
            raise DomainError(f"y={self.y} < 2")

    @classmethod
    def from_sigma_lambda(cls, sigma: float, lam: float, q_or_t: float | None = None, *, log_q: float | None = None):
        if lam <= 0:
            raise DomainError("lambda must be positive")
        if log_q is None:
            if q_or_t is None:
                raise DomainError("need q (or log q)")
            log_q = math.log(q_or_t)
        if not (0.5 < sigma <= 1.0):
            raise DomainError(f"sigma={sigma} outside (1/2, 1]")
        y = math.exp(lam / (sigma - 0.5))
        x = log_q**2 / y
        return cls(x=x, y=y, sigma=sigma, lam=lam, q_or_t=q_or_t if q_or_t is not None else math.exp(log_q))


def build_lambda_table(limit: int = DEFAULT_LIMIT, *, budget: int = MEMORY_BUDGET) -> LambdaTable:
    if limit < 2:
        raise CapacityError(f"limit={limit} < 2")
    if limit > budget:
        raise CapacityError(f"limit={limit} exceeds memory budget {budget}")
    powers, bases = _kernels.prime_powers(int(limit))
    return _assemble(int(limit), np.asarray(powers, dtype=np.int64), np.asarray(bases, dtype=np.int64))


def _assemble(limit, powers, bases):
    log_p = np.log(bases.astype(np.float64))
    psi = _kernels.kahan_cumsum(log_p)
    return LambdaTable(limit=limit, prime_powers=powers, log_p=log_p, psi_checkpoints=psi)


def save_table(table: LambdaTable, path) -> None:
    """Write the prime powers of ``table`` in the versioned binary cache format."""
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", table.limit))
        fh.write(table.prime_powers.astype("<u8").tobytes())


def load_table(path) -> LambdaTable:
    raw = Path(path).read_bytes()
    if raw[:5] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a Lambda table cache (bad magic)")
    (limit,) = struct.unpack_from("<Q", raw, 5)
    powers = np.frombuffer(raw, dtype="<u8", offset=13).astype(np.int64)
    if powers.size and (np.any(np.diff(powers) <= 0) or powers[-1] > limit):
        raise ValueError(f"{path}: corrupt prime-power list")
    # recover the base prime of each power: primes are the entries that are
    # not a higher power of a smaller entry
    bases = powers.copy()
    index = {int(n): i for i, n in enumerate(powers[powers <= math.isqrt(limit)].tolist())}
    for p in sorted(index):
        if bases[index[p]] != p:
            continue
        pk = p * p
        while pk <= limit:
            i = int(np.searchsorted(powers, pk))
            bases[i] = p
            pk *= p
    return _assemble(int(limit), powers, bases)
