"""(-1)-classes, quadratic Cremona transformations and Harbourne-Hirschowitz splitting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .lattice import (
    DivisorClass,
    P2,
    SurfaceModel,
    canonical_pairing,
    euler_nu,
    exceptional,
    intersect,
    self_intersection,
)

# every (-1)-class on a blow-up of P^2 at <= 8 points has degree <= 6
FINITE_CASE_MAX_POINTS = 8
FINITE_CASE_MAX_DEGREE = 6


class IncompleteSplitting(RuntimeError):
    def __init__(self, message, splitting=None):
        super().__init__(message)
        self.splitting = splitting


def is_neg_one_class(C: DivisorClass) -> bool:
    return self_intersection(C) == -1 and canonical_pairing(C) == -1


def _multisets(length: int, total: int, squares: int, max_part: int):
    """Nonincreasing tuples of ``length`` integers in [0, max_part] with given sum and sum of squares."""
    out = []

    def rec(prefix, slots, s, q, cap):
        if slots == 0:
            if s == 0 and q == 0:
                out.append(tuple(prefix))
            return
        if s < 0 or q < s or s > slots * cap or q > slots * cap * cap:
            return
        # Cauchy-Schwarz: s^2 <= slots * q
        if s * s > slots * q:
            return
        for c in range(min(cap, s), -1, -1):
            prefix.append(c)
            rec(prefix, slots - 1, s - c, q - c * c, c)
            prefix.pop()

    rec([], length, total, squares, max_part)
    return out


@lru_cache(maxsize=None)
def plane_neg_one_multisets(h: int, degree: int) -> tuple:
    """Sorted multiplicity multisets of (-1)-classes (degree; c) on P^2 blown up at h points, degree >= 1."""
    if degree < 1 or h == 0:
        return ()
    return tuple(_multisets(h, 3 * degree - 1, degree * degree + 1, degree))


@lru_cache(maxsize=None)
def hirzebruch_neg_one_multisets(e: int, h: int, a: int, b: int) -> tuple:
    """Multisets c with (a,b;c) a (-1)-class on F_e blown up at h points.

    Only bidegrees that carry irreducible curves are allowed: the fibre
    (0,1), the section (1,0), and b >= a*e.  Multiplicities are at most a
    (the fibre through a point meets the curve a times), or 1 for fibres.
    """
    if (a, b) == (0, 1):
        cap = 1
    elif (a, b) == (1, 0) or (a >= 1 and b >= a * e):
        cap = a
    else:
        return ()
    total = 2 * b + 2 * a - e * a - 1
    squares = 2 * a * b - e * a * a + 1
    if total < 0 or squares < 0:
        return ()
    return tuple(_multisets(h, total, squares, cap))


def _distinct_permutations(ms):
    return sorted(set(permutations(ms)), reverse=True)


def enumerate_neg_one_classes(h: int, degree_bound: int, model: SurfaceModel = P2,
                              a_bound: int = 2) -> list:
    """All (-1)-classes within the bound, closed under permuting the points.

    On P^2 the bound is on the degree.  On F_e the bound limits the fibre
    degree b to at most a*e + degree_bound, with a <= a_bound.
    """
    if h < 0 or degree_bound < 0:
        raise ValueError("h and degree_bound must be nonnegative")
    out = [exceptional(model, h, i) for i in range(h)]
    if model.kind == "P" and model.n == 2:
        for d in range(1, degree_bound + 1):
            for ms in plane_neg_one_multisets(h, d):
                out.extend(DivisorClass(model, (d,), c) for c in _distinct_permutations(ms))
    elif model.kind == "Hirzebruch":
        for a, b in _hirzebruch_bidegrees(model.e, degree_bound, a_bound):
            for ms in hirzebruch_neg_one_multisets(model.e, h, a, b):
                out.extend(DivisorClass(model, (a, b), c) for c in _distinct_permutations(ms))
    else:
        raise ValueError(f"(-1)-class enumeration not available on {model}")
    return sorted(set(out), key=DivisorClass.sort_key)


def _hirzebruch_bidegrees(e: int, degree_bound: int, a_bound: int):
    yield (0, 1)
    yield (1, 0)
    for a in range(1, a_bound + 1):
        for b in range(max(a * e, 1), a * e + degree_bound + 1):
            yield (a, b)


def _canonical_assignment(ms, mults):
    """Permutation of the multiset ``ms`` minimising sum m_i c_i with the smallest sort key.

    Largest c goes to the largest m; among equal m the earlier index wins.
    """
    order = sorted(range(len(mults)), key=lambda i: (-mults[i], i))
    c = [0] * len(mults)
    for i, v in zip(order, sorted(ms, reverse=True)):
        c[i] = v
    return tuple(c)


def _neg_one_candidates(L: DivisorClass, degree_bound: int, a_bound: int = 2):
    """For each (-1)-multiset, the representative with the most negative pairing against L."""
    s = L.surface
    for i in range(L.h):
        yield exceptional(s, L.h, i)
    if s.kind == "P":
        for d in range(1, degree_bound + 1):
            for ms in plane_neg_one_multisets(L.h, d):
                yield DivisorClass(s, (d,), _canonical_assignment(ms, L.mults))
    else:
        for a, b in _hirzebruch_bidegrees(s.e, degree_bound, a_bound):
            for ms in hirzebruch_neg_one_multisets(s.e, L.h, a, b):
                yield DivisorClass(s, (a, b), _canonical_assignment(ms, L.mults))


def most_negative_neg_one(L: DivisorClass, degree_bound: int, a_bound: int = 2):
    """The (-1)-class C within the bound minimising L.C, ties broken by class order.

    Returns ``(C, L.C)`` or ``None`` when every pairing is nonnegative.
    """
    best = None
    for C in _neg_one_candidates(L, degree_bound, a_bound):
        v = intersect(L, C)
        if v >= 0:
            continue
        if best is None or (v, C.sort_key()) < (best[1], best[0].sort_key()):
            best = (C, v)
    return best


def cremona_step(L: DivisorClass, i: int, j: int, k: int) -> DivisorClass:
    """Quadratic transformation centred at points i, j, k (0-based)."""
    if L.surface.kind != "P" or L.surface.n != 2:
        raise ValueError("Cremona transformations act on P^2 classes only")
    if len({i, j, k}) != 3:
        raise ValueError("Cremona centres must be distinct")
    d = L.degrees[0]
    m = list(L.mults)
    mi, mj, mk = m[i], m[j], m[k]
    m[i] = d - mj - mk
    m[j] = d - mi - mk
    m[k] = d - mi - mj
    return DivisorClass(L.surface, (2 * d - mi - mj - mk,), tuple(m))


def cremona_reduce(L: DivisorClass, max_steps: int = 10_000):
    """Apply Cremona steps at the three largest multiplicities until standard form.

    Returns ``(reduced, standard)`` where ``standard`` means d >= m1+m2+m3 with
    all multiplicities nonnegative; fewer than three points are padded with
    zeros internally.
    """
    pad = max(0, 3 - L.h)
    cur = DivisorClass(L.surface, L.degrees, L.mults + (0,) * pad)
    for _ in range(max_steps):
        if cur.degrees[0] < 0 or any(m < 0 for m in cur.mults):
            break
        order = sorted(range(cur.h), key=lambda t: -cur.mults[t])
        i, j, k = order[:3]
        if cur.degrees[0] >= cur.mults[i] + cur.mults[j] + cur.mults[k]:
            break
        cur = cremona_step(cur, i, j, k)
    standard = (cur.degrees[0] >= 0 and all(m >= 0 for m in cur.mults)
                and cur.degrees[0] >= sum(sorted(cur.mults, reverse=True)[:3]))
    return DivisorClass(L.surface, cur.degrees, cur.mults[:L.h] if pad else cur.mults), standard


@dataclass(frozen=True)
class HHSplitting:
    system: DivisorClass
    components: tuple  # ((C, N), ...) in splitting order
    residual: DivisorClass
    complete: bool
    certificate: str  # how completeness was established
    # the residual reached negative degree: L itself has no effective member
    empty: bool = False

    @property
    def residual_nu(self) -> int:
        return euler_nu(self.residual)

    @property
    def multiplicities(self):
        return tuple(N for _, N in self.components)


def _splitting_complete(M: DivisorClass, degree_bound: int):
    if M.h <= FINITE_CASE_MAX_POINTS and degree_bound >= FINITE_CASE_MAX_DEGREE:
        return True, "finite"
    _, standard = cremona_reduce(M)
    if standard:
        return True, "cremona-standard"
    return False, "none"


def hh_splitting(L: DivisorClass, degree_bound: int = 10, max_steps: int = 10_000) -> HHSplitting:
    if L.surface.kind != "P" or L.surface.n != 2:
        raise ValueError("Harbourne-Hirschowitz splitting is defined on P^2 only")
    if any(m < 0 for m in L.mults):
        raise ValueError(f"negative multiplicity in {L}")
    current = L
    components = []
    for _ in range(max_steps):
        if current.degrees[0] < 0:
            return HHSplitting(L, tuple(components), current, True, "empty", empty=True)
        found = most_negative_neg_one(current, degree_bound)
        if found is None:
            break
        C, v = found
        components.append((C, -v))
        current = current - (-v) * C
    else:
        raise IncompleteSplitting(f"splitting of {L} did not stop after {max_steps} steps")
    complete, how = _splitting_complete(current, degree_bound)
    split = HHSplitting(L, tuple(components), current, complete, how)
    if not complete:
        raise IncompleteSplitting(
            f"residual {current} of {L} is not certified free of negative (-1)-classes "
            f"beyond degree {degree_bound}", split)
    return split


def is_neg_one_special(L: DivisorClass, degree_bound: int = 10):
    """Numerical (-1)-speciality: nu(M) >= 0 and some component splits off at least twice."""
    s = hh_splitting(L, degree_bound)
    return (not s.empty and s.residual_nu >= 0 and any(N >= 2 for _, N in s.components)), s


def config_from_hh(L: DivisorClass, s: HHSplitting):
    """Special effect configuration made of the components splitting off at least twice."""
    from .special import verify_configuration

    steps = [(C, N) for C, N in s.components if N >= 2]
    if not steps:
        raise ValueError(f"no component with N >= 2 in the splitting of {L}")
    return verify_configuration(L, steps)
