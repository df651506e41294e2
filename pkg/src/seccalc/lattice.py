"""Divisor classes on blow-ups of P^n, Hirzebruch surfaces and K3 surfaces.

A class is stored as degree data plus one multiplicity per blown-up point:

* ``P``:          ``dH - sum m_i E_i``            degrees ``(d,)``
* ``Hirzebruch``: ``a h + b F - sum m_i E_i``     degrees ``(a, b)``
* ``K3``:         ``dH - sum m_i E_i``, H^2 = n  degrees ``(d,)``

Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence


class ModelMismatch(ValueError):
    pass


class OverSubtraction(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    kind: str  # "P", "Hirzebruch" or "K3"
    n: int = 2
    e: int = 0

    def __post_init__(self):
        if self.kind == "P":
            if self.n < 2:
                raise ValueError(f"P^n needs n >= 2, got {self.n}")
        elif self.kind == "Hirzebruch":
            if self.e < 0:
                raise ValueError(f"Hirzebruch invariant must be >= 0, got {self.e}")
        elif self.kind == "K3":
            if self.n < 2 or self.n % 2:
                raise ValueError(f"K3 degree H^2 must be even and >= 2, got {self.n}")
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")

    @property
    def is_surface(self) -> bool:
        return self.kind != "P" or self.n == 2

    @property
    def is_rational(self) -> bool:
        return self.kind in ("P", "Hirzebruch")

    @property
    def chi_structure_sheaf(self) -> int:
        # chi(O_X): 1 for rational varieties, 2 for K3
        return 2 if self.kind == "K3" else 1

    def __str__(self):
        if self.kind == "P":
            return f"P{self.n}"
        if self.kind == "Hirzebruch":
            return f"F{self.e}"
        return f"K3(n={self.n})"


def P(n: int = 2) -> SurfaceModel:
    return SurfaceModel("P", n=n)


def F(e: int) -> SurfaceModel:
    return SurfaceModel("Hirzebruch", e=e)


def K3(n: int) -> SurfaceModel:
    return SurfaceModel("K3", n=n)


P2 = P(2)


@dataclass(frozen=True)
class DivisorClass:
    surface: SurfaceModel
    degrees: tuple
    mults: tuple
    # indices whose multiplicity was clamped to 0 when this class was formed
    clamped: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        object.__setattr__(self, "mults", tuple(int(x) for x in self.mults))
        want = 2 if self.surface.kind == "Hirzebruch" else 1
        if len(self.degrees) != want:
            raise ValueError(f"{self.surface} classes need {want} degree entries, got {self.degrees}")

    @property
    def h(self) -> int:
        return len(self.mults)

    @property
    def degree(self) -> int:
        """Total degree for P^n / K3; for Hirzebruch returns ``a`` (use ``degrees``)."""
        return self.degrees[0]

    def __add__(self, other: DivisorClass) -> DivisorClass:
        _check_compatible(self, other)
        return DivisorClass(self.surface,
                            tuple(x + y for x, y in zip(self.degrees, other.degrees)),
                            tuple(x + y for x, y in zip(self.mults, other.mults)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-1) * other

    def __rmul__(self, k: int) -> DivisorClass:
        return DivisorClass(self.surface, tuple(k * x for x in self.degrees),
                            tuple(k * x for x in self.mults))

    def __neg__(self):
        return (-1) * self

    def is_zero(self) -> bool:
        return not any(self.degrees) and not any(self.mults)

    def sort_key(self):
        # E_1 < E_2 < ... ; (1;1,1,0) < (1;1,0,1) < (1;0,1,1)
        return (self.degrees, tuple(-abs(c) for c in self.mults))

    def __str__(self):
        deg = ",".join(str(x) for x in self.degrees)
        return f"({deg};{','.join(str(m) for m in self.mults)})"

    __repr__ = __str__


def plane_class(d: int, *mults: int) -> DivisorClass:
    return DivisorClass(P2, (d,), mults)


def make_class(surface: SurfaceModel, degrees, mults: Sequence[int]) -> DivisorClass:
    if isinstance(degrees, int):
        degrees = (degrees,)
    return DivisorClass(surface, tuple(degrees), tuple(mults))


def exceptional(surface: SurfaceModel, h: int, i: int) -> DivisorClass:
    """The exceptional class E_i (0-based index) on a blow-up at ``h`` points."""
    zero = (0, 0) if surface.kind == "Hirzebruch" else (0,)
    return DivisorClass(surface, zero, tuple(-1 if j == i else 0 for j in range(h)))


def zero_class(surface: SurfaceModel, h: int) -> DivisorClass:
    zero = (0, 0) if surface.kind == "Hirzebruch" else (0,)
    return DivisorClass(surface, zero, (0,) * h)


def _check_compatible(A: DivisorClass, B: DivisorClass):
    if A.surface != B.surface:
        raise ModelMismatch(f"classes live on different models: {A.surface} vs {B.surface}")
    if A.h != B.h:
        raise ModelMismatch(f"point counts differ: {A.h} vs {B.h}")


def intersect(A: DivisorClass, B: DivisorClass) -> int:
    _check_compatible(A, B)
    s = A.surface
    if not s.is_surface:
        raise ModelMismatch(f"no intersection pairing on {s}")
    tail = sum(x * y for x, y in zip(A.mults, B.mults))
    if s.kind == "P":
        return A.degrees[0] * B.degrees[0] - tail
    if s.kind == "K3":
        return s.n * A.degrees[0] * B.degrees[0] - tail
    (a, b), (a2, b2) = A.degrees, B.degrees
    return -s.e * a * a2 + a * b2 + a2 * b - tail


def canonical_class(surface: SurfaceModel, h: int) -> DivisorClass:
    if not surface.is_surface:
        raise ModelMismatch(f"canonical class only implemented on surfaces, not {surface}")
    ones = (-1,) * h
    if surface.kind == "P":
        return DivisorClass(surface, (-3,), ones)
    if surface.kind == "Hirzebruch":
        return DivisorClass(surface, (-2, -(surface.e + 2)), ones)
    return DivisorClass(surface, (0,), ones)


def canonical_pairing(C: DivisorClass) -> int:
    return intersect(C, canonical_class(C.surface, C.h))


def self_intersection(C: DivisorClass) -> int:
    return intersect(C, C)


def arithmetic_genus(C: DivisorClass) -> int:
    twice = self_intersection(C) + canonical_pairing(C)
    if twice % 2:
        raise ValueError(f"C^2 + C.K is odd for {C}; not a lattice class")
    return twice // 2 + 1


def euler_nu(L: DivisorClass) -> int:
    """chi(L) - 1 by Riemann-Roch; defined for every lattice class on a surface."""
    twice = self_intersection(L) - canonical_pairing(L)
    return twice // 2 + L.surface.chi_structure_sheaf - 1


def hirzebruch_h0(e: int, a: int, b: int) -> int:
    """h^0(F_e, a h + b F), zero when a < 0 (F is nef and F.(ah+bF) = a)."""
    if a < 0 or b < 0:
        return 0
    return sum(b - i * e + 1 for i in range(a + 1) if b - i * e >= 0)


def _point_conditions(m: int, n: int) -> int:
    return comb(m + n - 1, n)


def virtual_dimension(L: DivisorClass) -> int:
    """Dimension of the complete system minus the number of point conditions.

    On P^n this is C(d+n, n) - 1 - sum C(m_i+n-1, n).  On F_e the dimension
    of |ah + bF| is taken from its actual h^0 (it agrees with chi - 1 whenever
    b >= ae - 1).  On K3 the closed form d^2 n/2 + 1 - sum m_i(m_i+1)/2 is used
    for every d, including d = 0.
    """
    if any(m < 0 for m in L.mults):
        raise ValueError(f"negative multiplicity in {L}")
    s = L.surface
    if s.kind == "P":
        d = L.degrees[0]
        dim = comb(d + s.n, s.n) - 1 if d >= 0 else -1
        return dim - sum(_point_conditions(m, s.n) for m in L.mults)
    if s.kind == "Hirzebruch":
        a, b = L.degrees
        dim = hirzebruch_h0(s.e, a, b) - 1
        return dim - sum(m * (m + 1) // 2 for m in L.mults)
    d = L.degrees[0]
    return d * d * s.n // 2 - sum(m * (m + 1) // 2 for m in L.mults) + 1


def expected_dimension(L: DivisorClass) -> int:
    return max(virtual_dimension(L), -1)


def subtract(L: DivisorClass, alpha: int, Y: DivisorClass) -> DivisorClass:
    """Residual system ``L - alpha*Y`` with multiplicities clamped at zero."""
    _check_compatible(L, Y)
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    degrees = tuple(x - alpha * y for x, y in zip(L.degrees, Y.degrees))
    if any(x < 0 for x in degrees):
        raise OverSubtraction(f"{L} - {alpha}*{Y} has negative degree {degrees}")
    mults, clamped = [], []
    for i, (m, c) in enumerate(zip(L.mults, Y.mults)):
        r = m - alpha * c
        if r < 0:
            clamped.append(i)
            r = 0
        mults.append(r)
    return DivisorClass(L.surface, degrees, tuple(mults), clamped=tuple(clamped))
