"""Ground-truth coset arithmetic on Z/nZ under multiplication by q.

Orbit walks here are the oracle for everything the structured machinery
claims: `enumerate_naive` sweeps all of Z/nZ, `coset_of` materializes a
single orbit, and `size_of` gives the orbit length without walking.
"""

from __future__ import annotations

import math
from array import array
from collections import Counter
from dataclasses import dataclass, field

from .arith import CapacityError, check_capacity, mul_order

ORACLE_CAP = 10**7


def _require_coprime(q: int, n: int) -> None:
    if n < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(q, n) != 1:
        raise ValueError(f"gcd(q={q}, n={n}) must be 1")


def _orbit(q: int, n: int, start: int) -> list[int]:
    first = start % n
    out = [first]
    x = first * q % n
    while x != first:
        out.append(x)
        x = x * q % n
    return out


@dataclass(frozen=True)
class CyclotomicCoset:
    """One orbit of multiplication by q on Z/nZ.

    `rep` is whatever representative the constructing code supplied,
    reduced to [0, n); it need not be the leader. `elements` is only
    filled when the orbit was actually walked.
    """

    q: int
    n: int
    rep: int
    size: int
    elements: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def materialize(self) -> tuple[int, ...]:
        if self.elements is not None:
            return self.elements
        return tuple(_orbit(self.q, self.n, self.rep))

    def leader(self) -> int:
        """Smallest element of the orbit, walking it on demand."""
        if self.elements is not None:
            return min(self.elements)
        return min(_orbit(self.q, self.n, self.rep))


def leader(coset: CyclotomicCoset) -> int:
    return coset.leader()


@dataclass(frozen=True)
class CosetPartition:
    """The complete set of q-cyclotomic cosets modulo n, sorted by rep."""

    q: int
    n: int
    cosets: tuple[CyclotomicCoset, ...]

    def total(self) -> int:
        return sum(c.size for c in self.cosets)

    def size_counter(self) -> Counter:
        return Counter(c.size for c in self.cosets)

    def reps(self) -> list[int]:
        return [c.rep for c in self.cosets]

    def leader_map(self) -> dict[int, int]:
        """leader -> size for every coset (walks each orbit once)."""
        return {c.leader(): c.size for c in self.cosets}

    def validate(self) -> None:
        """Check the partition axioms elementwise (O(n) memory)."""
        seen = bytearray(self.n)
        for c in self.cosets:
            for x in c.materialize():
                if seen[x]:
                    raise AssertionError(f"element {x} covered twice mod {self.n}")
                seen[x] = 1
        if self.total() != self.n:
            raise AssertionError("sizes do not sum to n")
        reps = self.reps()
        if reps != sorted(reps):
            raise AssertionError("cosets are not sorted by representative")


def coset_of(q: int, n: int, gamma: int) -> CyclotomicCoset:
    """The materialized orbit of gamma mod n under multiplication by q."""
    _require_coprime(q, n)
    check_capacity(n)
    elems = _orbit(q, n, gamma)
    return CyclotomicCoset(q, n, gamma % n, len(elems), tuple(elems))


def size_of(q: int, n: int, gamma: int) -> int:
    """Orbit length of gamma mod n, with no orbit walk.

    The orbit of gamma has length ord(q) modulo n/gcd(n, gamma); the
    gcd convention gcd(n, 0) = n makes the zero orbit come out as 1.
    """
    _require_coprime(q, n)
    check_capacity(n)
    return mul_order(q, n // math.gcd(n, gamma % n))


def project(coset: CyclotomicCoset, n_prime: int) -> CyclotomicCoset:
    """Image of a coset under reduction to a divisor modulus."""
    if n_prime < 1 or coset.n % n_prime != 0:
        raise ValueError(f"{n_prime} does not divide the modulus {coset.n}")
    return coset_of(coset.q, n_prime, coset.rep % n_prime)


def _orbit_sweep(q, n, leader_map=False):
    """One pass over Z/nZ: returns (leaders, sizes, per-element leader array).

    The first unvisited residue of each orbit is its leader, because
    residues are tried in increasing order.
    """
    visited = bytearray(n)
    find = visited.find
    reps: list[int] = []
    sizes: list[int] = []
    leaders = array("q", bytes(8 * n)) if leader_map else None
    g = 0
    while True:
        g = find(0, g)
        if g < 0:
            break
        reps.append(g)
        x = g
        size = 0
        if leaders is None:
            while not visited[x]:
                visited[x] = 1
                x = x * q % n
                size += 1
        else:
            while not visited[x]:
                visited[x] = 1
                leaders[x] = g
                x = x * q % n
                size += 1
        sizes.append(size)
    return reps, sizes, leaders


def enumerate_naive(
    q: int, n: int, cap: int = ORACLE_CAP, materialize: bool = False
) -> CosetPartition:
    """Brute-force partition of Z/nZ by a single sweep with a visited mask.

    O(n) time and O(n) bytes; refuses n above `cap` so a typo cannot
    allocate an absurd mask. Representatives are the orbit leaders.
    """
    _require_coprime(q, n)
    check_capacity(n)
    if n > cap:
        raise CapacityError(f"n = {n} exceeds the oracle cap {cap}")
    reps, sizes, _ = _orbit_sweep(q, n)
    cosets = tuple(
        CyclotomicCoset(q, n, r, s, tuple(_orbit(q, n, r)) if materialize else None)
        for r, s in zip(reps, sizes)
    )
    return CosetPartition(q, n, cosets)
