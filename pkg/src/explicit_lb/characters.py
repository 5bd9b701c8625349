"""Dirichlet characters with exact rational exponents.

The unit group (Z/qZ)* is split by CRT into cyclic factors: one per odd
prime power p^k (generated by its smallest primitive root), and for 2^k the
factors <-1> (k >= 2) and <5> (k >= 3). A character is the tuple of its
exponent indices on those generators, so chi(g_i) = exp(2 pi i j_i / n_i).

Characters are labelled ``"q.index"`` where ``index`` is the mixed-radix
position of the index tuple in lexicographic order; ``q.0`` is always the
principal character.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import CapacityError, DomainError

MAX_MODULUS = 10**6
_TRIAL_BOUND = 1000


# --------------------------------------------------------------------------
# factorisation


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation: trial division below 1000, Pollard rho above."""
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in range(2, _TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return dict(sorted(out.items()))


def euler_phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def count_primitive(q: int) -> int:
    """Number of primitive characters mod q: sum over d | q of mu(q/d) phi(d)."""
    return sum(mobius(q // d) * euler_phi(d) for d in range(1, q + 1) if q % d == 0)


# --------------------------------------------------------------------------
# group structure


@dataclass(frozen=True)
class _Component:
    prime: int
    modulus: int      # prime power carrying this factor
    generator: int    # -1 is stored as modulus - 1
    order: int


def _smallest_primitive_root(m: int, p: int) -> int:
    order = euler_phi(m)
    qs = list(factorize(order))
    for g in range(2, m):
        if g % p == 0:
            continue
        if all(pow(g, order // r, m) != 1 for r in qs):
            return g
    raise AssertionError(f"no primitive root mod {m}")


class CharacterGroup:
    """Cyclic decomposition of (Z/qZ)* with discrete-log tables."""

    def __init__(self, q: int):
        if not 1 <= q <= MAX_MODULUS:
            raise CapacityError(f"modulus q={q} outside [1, {MAX_MODULUS}]")
        self.q = q
        comps: list[_Component] = []
        for p, k in factorize(q).items():
            m = p**k
            if p == 2:
                if k >= 2:
                    comps.append(_Component(2, m, m - 1, 2))
                if k >= 3:
                    comps.append(_Component(2, m, 5, m // 4))
            else:
                comps.append(_Component(p, m, _smallest_primitive_root(m, p), m // p * (p - 1)))
        self.components = tuple(comps)
        self.orders = tuple(c.order for c in comps)
        self.exponent = math.lcm(*self.orders) if comps else 1
        residues = np.arange(q, dtype=np.int64)
        self.coprime = np.gcd(residues, q) == 1 if q > 1 else np.ones(1, dtype=bool)
        self._logs = [self._dlog_table(i)[residues % c.modulus] for i, c in enumerate(comps)]

    def _dlog_table(self, i: int) -> np.ndarray:
        c = self.components[i]
        m = c.modulus
        table = np.full(m, -1, dtype=np.int64)
        if c.prime == 2:
            # a = (-1)^e * 5^j mod 2^k
            fives = np.full(m, -1, dtype=np.int64)
            v = 1
            for j in range(max(m // 4, 1)):
                fives[v] = j
                fives[m - v] = j
                v = v * 5 % m
            odd = np.arange(1, m, 2)
            if c.generator == m - 1:
                table[odd] = (odd % 4 == 3).astype(np.int64)
            else:
                table[odd] = fives[odd]
            return table
        v = 1
        for j in range(c.order):
            table[v] = j
            v = v * c.generator % m
        return table

    def numerators(self, index: tuple[int, ...]) -> np.ndarray:
        """Exponent numerators over ``self.exponent`` for every residue (−1 where chi = 0)."""
        L = self.exponent
        acc = np.zeros(self.q, dtype=np.int64)
        for j, n_i, logs in zip(index, self.orders, self._logs):
            if j:
                acc += j * (L // n_i) * np.where(logs >= 0, logs, 0)
        acc %= L
        acc[~self.coprime] = -1
        return acc

    def label_index(self, index: tuple[int, ...]) -> int:
        r = 0
        for j, n_i in zip(index, self.orders):
            r = r * n_i + j
        return r

    def index_from_label(self, label: int) -> tuple[int, ...]:
        if not 0 <= label < math.prod(self.orders):
            raise DomainError(f"character index {label} out of range for q={self.q}")
        out = []
        for n_i in reversed(self.orders):
            label, j = divmod(label, n_i)
            out.append(j)
        return tuple(reversed(out))


@lru_cache(maxsize=256)
def character_group(q: int) -> CharacterGroup:
    return CharacterGroup(q)


# --------------------------------------------------------------------------
# characters


def _root_of_unity(num: int, den: int) -> complex:
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den == 1:
        return 1 + 0j
    if den == 2:
        return -1 + 0j
    if den == 4:
        return 1j if num == 1 else -1j
    return cmath.exp(2j * math.pi * num / den)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    index: tuple[int, ...]

    @property
    def group(self) -> CharacterGroup:
        return character_group(self.modulus)

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.group.label_index(self.index)}"

    @property
    def value_exponents(self) -> dict[int, Fraction]:
        """e(a) with chi(a) = exp(2 pi i e(a)), for each residue a coprime to q."""
        L = self.group.exponent
        nums = self.group.numerators(self.index)
        return {a: Fraction(int(v), L) for a, v in enumerate(nums.tolist()) if v >= 0}

    @property
    def parity_a(self) -> int:
        return 0 if self.evaluate(-1) == 1 else 1

    @property
    def is_principal(self) -> bool:
        return not any(self.index)

    @property
    def order(self) -> int:
        return math.lcm(*(n // math.gcd(j, n) for j, n in zip(self.index, self.group.orders))) if self.index else 1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def exponent_numerator(self, n: int) -> int | None:
        q = self.modulus
        r = n % q
        if math.gcd(r, q) != 1:
            return None
        grp = self.group
        L = grp.exponent
        acc = 0
        for j, n_i, logs in zip(self.index, grp.orders, grp._logs):
            acc += j * (L // n_i) * int(logs[r])
        return acc % L

    def evaluate(self, n: int) -> complex:
        num = self.exponent_numerator(n)
        if num is None:
            return 0j
        return _root_of_unity(num, self.group.exponent)

    __call__ = evaluate

    def values(self) -> np.ndarray:
        """chi(a) for a = 0..q-1 as complex128."""
        grp = self.group
        nums = grp.numerators(self.index)
        out = np.exp(2j * np.pi * np.where(nums >= 0, nums, 0) / grp.exponent)
        # quarter turns exactly, so real characters stay exactly real
        L = grp.exponent
        quarter = (nums >= 0) & ((4 * nums) % L == 0)
        out[quarter] = np.array([1, 1j, -1, -1j])[(4 * nums[quarter]) // L]
        out[nums < 0] = 0
        return out

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple((-j) % n for j, n in zip(self.index, self.group.orders)))

    def conductor(self) -> int:
        cond = 1
        grp = self.group
        two_power = 1
        for c, j in zip(grp.components, self.index):
            d = c.order // math.gcd(j, c.order)
            if c.prime == 2:
                if c.generator == c.modulus - 1:
                    if d > 1:
                        two_power = max(two_power, 4)
                elif d > 1:
                    two_power = max(two_power, 4 * d)
            elif d > 1:
                cond *= c.prime ** (1 + _valuation(d, c.prime))
        return cond * two_power

    def __str__(self) -> str:
        return self.label


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in label order."""
    grp = character_group(q)
    return [DirichletCharacter(q, idx) for idx in product(*(range(n) for n in grp.orders))]


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in enumerate_characters(q) if is_primitive(chi)]


def is_primitive(chi: DirichletCharacter) -> bool:
    return chi.conductor() == chi.modulus


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.conjugate()


def evaluate(chi: DirichletCharacter, n: int) -> complex:
    return chi.evaluate(n)


def character_from_label(label: str) -> DirichletCharacter:
    try:
        q_text, i_text = label.split(".")
        q, i = int(q_text), int(i_text)
    except ValueError:
        raise DomainError(f"bad character label {label!r}; expected 'q.index'") from None
    grp = character_group(q)
    return DirichletCharacter(q, grp.index_from_label(i))
