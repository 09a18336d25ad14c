"""Exact arithmetic modulo a prime and canonical projective coordinates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# Residue products k*a must stay exact in 64-bit arithmetic: for p <= 2**31 - 1
# every product of two residues is below 2**62.
MAX_MODULUS = 2**31 - 1

# Witness set for a deterministic Miller-Rabin test, valid for all n < 3.3e24.
_STRONG_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (strong probable prime to a fixed base set)."""
    if n < 2:
        raise ValueError("primality is tested for integers n >= 2 only")
    for q in _STRONG_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _STRONG_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, n + 1, q)))
    return [i for i in range(2, n + 1) if sieve[i]]


@dataclass(frozen=True)
class PrimeModulus:
    """A validated prime modulus p, with 2 <= p <= MAX_MODULUS."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("modulus must be an int")
        if self.p > MAX_MODULUS:
            raise ValueError(f"modulus {self.p} exceeds MAX_MODULUS = 2**31 - 1")
        if self.p < 2 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


def _modulus_value(p: int | PrimeModulus) -> int:
    if isinstance(p, PrimeModulus):
        return p.p
    return PrimeModulus(p).p


def mod_reduce(x: int, p: int | PrimeModulus) -> int:
    """Least nonnegative residue of x modulo p; correct for negative x."""
    return x % _modulus_value(p)


def mod_inverse(a: int, p: int | PrimeModulus) -> int:
    """The inverse of a modulo p, in [1, p-1]."""
    pv = _modulus_value(p)
    a = a % pv
    if a == 0:
        raise ValueError("0 has no inverse")
    return pow(a, -1, pv)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^(d-1)(F_p) stored as its canonical class representative.

    Canonical form: every coordinate is a least nonnegative residue and the
    first nonzero coordinate equals 1. Use canonicalize() to build one from an
    arbitrary representative.
    """

    coords: tuple[int, ...]
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        pv = self.modulus.p
        if not self.coords:
            raise ValueError("a projective point needs at least one coordinate")
        if any(not (0 <= c < pv) for c in self.coords):
            raise ValueError("coordinates must be residues in [0, p-1]")
        lead = next((c for c in self.coords if c), None)
        if lead is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        if lead != 1:
            raise ValueError("not canonical: first nonzero coordinate must be 1")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def d(self) -> int:
        return len(self.coords)


def canonicalize(raw: Sequence[int], p: int | PrimeModulus) -> ProjectivePoint:
    """Canonical representative of the projective class of raw.

    Reduces coordinates mod p and scales so the first nonzero coordinate is 1.
    Any two representatives of the same class yield identical results.
    """
    pm = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
    coords = [x % pm.p for x in raw]
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("the zero vector has no projective class")
    if lead != 1:
        inv = mod_inverse(lead, pm)
        coords = [(inv * c) % pm.p for c in coords]
    return ProjectivePoint(tuple(coords), pm)


def d_star(a: ProjectivePoint) -> int:
    """Number of nonzero coordinates; the same for every class representative."""
    return sum(1 for c in a.coords if c)


def connection_set_canonical(A: Iterable[int], p: int | PrimeModulus) -> tuple[int, ...]:
    """Smallest scalar multiple of the set A: min over c in F_p* of sorted(c*A)."""
    pv = _modulus_value(p)
    elems = tuple(sorted(x % pv for x in A))
    if len(set(elems)) != len(elems) or not elems or elems[0] == 0:
        raise ValueError("connection set must be distinct nonzero residues")
    return min(tuple(sorted((c * a) % pv for a in elems)) for c in range(1, pv))


def canonical_connection_sets(p: int | PrimeModulus, d: int) -> Iterator[tuple[int, ...]]:
    """Each scalar-equivalence class of d-subsets of F_p*, once, in lexicographic order.

    A set is emitted iff it equals its own canonical form, so the stream is the
    sorted list of class representatives.
    """
    pv = _modulus_value(p)
    if d < 1:
        raise ValueError("connection sets need d >= 1")
    for combo in itertools.combinations(range(1, pv), d):
        if connection_set_canonical(combo, pv) == combo:
            yield combo
