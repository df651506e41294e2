"""Effective dimension of fat-point systems from the rank of an interpolation matrix over F_p.

The points are drawn uniformly at random in an affine chart.  A point of
multiplicity m contributes one row per Hasse derivative of order < m, so
rows for a monomial x^g at P read prod_k C(g_k, b_k) P_k^(g_k - b_k).
Random points can only lower the rank, so the dimension is taken from the
largest rank seen over several independent draws.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .lattice import DivisorClass, virtual_dimension

DEFAULT_PRIME = 2**62 - 57
MIN_PRIME = 2**30
_INT64_SAFE = 2**31  # p^2 must fit in a signed 64-bit word
MAX_RETRIES = 2


class UnsupportedSurface(ValueError):
    pass


@dataclass(frozen=True)
class OracleReport:
    system: DivisorClass
    dimension: int
    h1: int
    rank: int
    rows: int
    cols: int
    prime: int
    seed: int
    trials: int  # number of draws that reached the reported rank
    ranks: tuple = ()
    unstable: bool = False
    empty_system: bool = False

    @property
    def h0(self) -> int:
        return self.dimension + 1


def _check_prime(p: int):
    if p < MIN_PRIME:
        raise ValueError(f"prime {p} is below 2^30")
    from sympy import isprime

    if not isprime(p):
        raise ValueError(f"{p} is not prime")


@lru_cache(maxsize=None)
def _exponents_upto(n: int, d: int) -> tuple:
    """Exponent vectors in N^n of total degree <= d, graded then lexicographic."""
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(n), k):
            g = [0] * n
            for i in combo:
                g[i] += 1
            out.append(tuple(g))
    return tuple(out)


def basis(L: DivisorClass) -> tuple:
    """Monomial exponents spanning the sections of L before imposing the points."""
    s = L.surface
    if s.kind == "P":
        d = L.degrees[0]
        return _exponents_upto(s.n, d) if d >= 0 else ()
    if s.kind == "Hirzebruch":
        a, b = L.degrees
        if a < 0:
            return ()
        return tuple((i, j) for i in range(a + 1) for j in range(b - i * s.e + 1))
    raise UnsupportedSurface(f"no interpolation model for {s}")


def _n_vars(L: DivisorClass) -> int:
    return L.surface.n if L.surface.kind == "P" else 2


def conditions_matrix(L: DivisorClass, points, p: int) -> list:
    """Rows of Hasse-derivative conditions, entries reduced mod p."""
    if L.surface.kind == "K3":
        raise UnsupportedSurface("no interpolation model for K3 surfaces")
    if p < MIN_PRIME:
        raise ValueError(f"prime {p} is below 2^30")
    n = _n_vars(L)
    points = [tuple(int(x) % p for x in P) for P in points]
    if len(points) != L.h:
        raise ValueError(f"{L.h} points needed, got {len(points)}")
    if any(len(P) != n for P in points):
        raise ValueError(f"points must have {n} coordinates")
    if len(set(points)) != len(points):
        raise ValueError("points are not distinct")
    if any(m < 0 for m in L.mults):
        raise ValueError(f"negative multiplicity in {L}")
    cols = basis(L)
    top = max((max(g) for g in cols), default=0)
    rows = []
    for P, m in zip(points, L.mults):
        powers = [[pow(x, t, p) for t in range(top + 1)] for x in P]
        for beta in _exponents_upto(n, m - 1) if m > 0 else ():
            row = []
            for g in cols:
                v = 1
                for k in range(n):
                    if g[k] < beta[k]:
                        v = 0
                        break
                    v = v * comb(g[k], beta[k]) * powers[k][g[k] - beta[k]] % p
                row.append(v)
            rows.append(row)
    return rows


def rank_mod_p(rows, p: int, ncols: int = None) -> int:
    """Rank over F_p by forward elimination."""
    if not rows:
        return 0
    dtype = np.int64 if p < _INT64_SAFE else object
    A = np.array(rows, dtype=dtype) % p
    nrows, ncols = A.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if len(nz) == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = A[rank] * inv % p
        below = A[rank + 1:]
        factors = below[:, col].copy()
        mask = factors != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(factors[mask], A[rank])) % p
        rank += 1
    return rank


def _random_points(rng: np.random.Generator, h: int, n: int, p: int):
    while True:
        if p < _INT64_SAFE:
            pts = [tuple(int(x) for x in rng.integers(0, p, size=n)) for _ in range(h)]
        else:
            # integers() caps at int64; compose two draws for larger primes
            hi = rng.integers(0, 2**62, size=(h, n), dtype=np.int64)
            pts = [tuple(int(x) % p for x in row) for row in hi]
        if len(set(pts)) == h:
            return pts


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def effective_dimension(L: DivisorClass, seed: int = 0, trials: int = 3,
                        prime: int = DEFAULT_PRIME) -> OracleReport:
    if L.surface.kind == "K3":
        raise UnsupportedSurface("effective dimension on K3 surfaces is not computable here")
    if trials < 2:
        raise ValueError("at least two trials are required")
    _check_prime(prime)
    cols = len(basis(L))
    n = _n_vars(L)
    ranks = []
    rows = 0
    for t in range(trials + MAX_RETRIES):
        if t >= trials and ranks.count(max(ranks)) == len(ranks):
            break
        pts = _random_points(_trial_rng(seed, t), L.h, n, prime)
        M = conditions_matrix(L, pts, prime)
        rows = len(M)
        ranks.append(rank_mod_p(M, prime) if cols else 0)
    best = max(ranks)
    dim = cols - best - 1
    nu = virtual_dimension(L)
    if dim >= 0:
        h1, empty = dim - nu, False
    else:
        h1, empty = max(0, -1 - nu), True
    agreeing = ranks.count(best)
    return OracleReport(L, dim, h1, best, rows, cols, prime, seed, agreeing, tuple(ranks),
                        unstable=agreeing < trials, empty_system=empty)


def h1_dimension(L: DivisorClass, **kwargs) -> int:
    return effective_dimension(L, **kwargs).h1


def is_special(report: OracleReport) -> bool:
    return report.dimension > max(virtual_dimension(report.system), -1)
