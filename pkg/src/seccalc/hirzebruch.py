"""Linear systems on blow-ups of Hirzebruch surfaces F_e.

Classes are a h + b F - sum m_i E_i with h^2 = -e, h.F = 1, F^2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .lattice import (
    DivisorClass,
    F,
    euler_nu,
    intersect,
    make_class,
    virtual_dimension,
)
from .negone import hirzebruch_neg_one_multisets, most_negative_neg_one
from .special import block_assignments, search_configuration


class IncompleteReduction(RuntimeError):
    def __init__(self, message, reduction=None):
        super().__init__(message)
        self.reduction = reduction


def h0_formula(e: int, a: int, b: int) -> int:
    """h^0(F_e, a h + b F) by the three-case closed form."""
    if a < 0:
        raise ValueError(f"a = {a} is outside the formula domain a >= 0")
    if b < 0:
        return 0
    if e > 0:
        t = b // e + 1  # smallest t with b < t e
        if t <= a:
            return sum(b - i * e + 1 for i in range(t))
    return (2 * b + 2 - a * e) * (a + 1) // 2


def section_class(L: DivisorClass) -> DivisorClass:
    return make_class(L.surface, (1, 0), (0,) * L.h)


@dataclass(frozen=True)
class LafaceEvent:
    kind: str  # "split" or "section"
    curve: DivisorClass
    t: int = 1

    def __str__(self):
        return f"{self.t}*{self.curve}" if self.kind == "split" else f"h={self.curve}"


@dataclass(frozen=True)
class LafaceReduction:
    input: DivisorClass
    steps: tuple
    residual: DivisorClass
    complete: bool = True

    @property
    def nu_input(self) -> int:
        return virtual_dimension(self.input)

    @property
    def nu_residual(self) -> int:
        return residual_nu(self.residual)


def residual_nu(M: DivisorClass) -> int:
    # lattice subtraction can leave negative entries; fall back to chi - 1 then
    if any(m < 0 for m in M.mults) or any(x < 0 for x in M.degrees):
        return euler_nu(M)
    return virtual_dimension(M)


def laface_reduce(L: DivisorClass, degree_bound: int = 8, a_bound: int = 2,
                  max_events: int = 1000) -> LafaceReduction:
    if L.surface.kind != "Hirzebruch":
        raise ValueError(f"Laface reduction lives on Hirzebruch surfaces, not {L.surface}")
    if any(m < 0 for m in L.mults):
        raise ValueError(f"negative multiplicity in {L}")
    current = L
    events = []
    while len(events) < max_events:
        found = most_negative_neg_one(current, degree_bound, a_bound)
        if found is not None:
            E, v = found
            events.append(LafaceEvent("split", E, -v))
            current = current - (-v) * E
            continue
        h = section_class(current)
        if intersect(current, h) < 0:
            events.append(LafaceEvent("section", h))
            current = current - h
            continue
        return LafaceReduction(L, tuple(events), current)
    red = LafaceReduction(L, tuple(events), current, complete=False)
    raise IncompleteReduction(f"reduction of {L} exceeded {max_events} events", red)


def is_laface_special(L: DivisorClass, degree_bound: int = 8, a_bound: int = 2):
    red = laface_reduce(L, degree_bound, a_bound)
    return red.nu_residual > red.nu_input, red


# ---------------------------------------------------------------------------
# numerical special effect search


def hirzebruch_candidates(degree_bound: int = 4, a_bound: int = 2):
    """Fibres through one point, other (-1)-classes, and the section h."""
    def generate(R: DivisorClass):
        e = R.surface.e
        seen = set()
        pairs = [(0, 1), (1, 0)] + [(a, b) for a in range(1, a_bound + 1)
                                    for b in range(max(a * e, 1), a * e + degree_bound + 1)]
        for a, b in pairs:
            for ms in hirzebruch_neg_one_multisets(e, R.h, a, b):
                for c in block_assignments(ms, R.mults):
                    Y = DivisorClass(R.surface, (a, b), c)
                    if Y not in seen:
                        seen.add(Y)
                        yield Y
        h = section_class(R)
        if h not in seen:
            yield h
    return generate


def _fibre_first(Y: DivisorClass):
    return (0 if Y.degrees == (0, 1) else 1, sum(Y.degrees))


def check_numerically_special_fe(L: DivisorClass, degree_bound: int = 4, a_bound: int = 2,
                                 depth: int = 8):
    if L.surface.kind != "Hirzebruch":
        raise ValueError(f"expected a Hirzebruch class, got {L.surface}")
    return search_configuration(L, hirzebruch_candidates(degree_bound, a_bound), depth,
                                priority=_fibre_first)


# ---------------------------------------------------------------------------
# homogeneous (-1)-special systems with multiplicity <= 3


@dataclass(frozen=True)
class TableRow:
    label: str
    params: tuple  # subset of ("e", "d", "r")
    system: Callable  # (e, d, r) -> (e, a, b, m, h)
    vdim: Callable  # (e, d, r) -> int
    dim: Callable


LAFACE_TABLE = (
    TableRow("L_1(4,4,2^5)", (), lambda e, d, r: (1, 4, 4, 2, 5),
             lambda e, d, r: -1, lambda e, d, r: 0),
    TableRow("L_1(6,6,3^5)", (), lambda e, d, r: (1, 6, 6, 3, 5),
             lambda e, d, r: -3, lambda e, d, r: 0),
    TableRow("L_5(4,21,3^10)", (), lambda e, d, r: (5, 4, 21, 3, 10),
             lambda e, d, r: -1, lambda e, d, r: 0),
    TableRow("L_6(4,24,3^11)", (), lambda e, d, r: (6, 4, 24, 3, 11),
             lambda e, d, r: -1, lambda e, d, r: 0),
    TableRow("L_e(2,2d+2e,2^(2d+e+1))", ("e", "d"),
             lambda e, d, r: (e, 2, 2 * d + 2 * e, 2, 2 * d + e + 1),
             lambda e, d, r: -1, lambda e, d, r: 0),
    TableRow("L_e(0,d,2^r)", ("e", "d", "r"), lambda e, d, r: (e, 0, d, 2, r),
             lambda e, d, r: d - 3 * r, lambda e, d, r: d - 2 * r),
    TableRow("L_e(2,4d+3e+1,3^(2d+e+1))", ("e", "d"),
             lambda e, d, r: (e, 2, 4 * d + 3 * e + 1, 3, 2 * d + e + 1),
             lambda e, d, r: -1, lambda e, d, r: 0),
    TableRow("L_e(3,3d+3e+1,3^(2d+e+1))", ("e", "d"),
             lambda e, d, r: (e, 3, 3 * d + 3 * e + 1, 3, 2 * d + e + 1),
             lambda e, d, r: 1, lambda e, d, r: 2),
    TableRow("L_e(3,3d+3e,3^(2d+e+1))", ("e", "d"),
             lambda e, d, r: (e, 3, 3 * d + 3 * e, 3, 2 * d + e + 1),
             lambda e, d, r: -3, lambda e, d, r: 0),
    TableRow("L_e(1,d+e,3^r)", ("e", "d", "r"), lambda e, d, r: (e, 1, d + e, 3, r),
             lambda e, d, r: 2 * d + e - 6 * r + 1, lambda e, d, r: 2 * d + e - 5 * r + 1),
    TableRow("L_e(0,d,3^r)", ("e", "d", "r"), lambda e, d, r: (e, 0, d, 3, r),
             lambda e, d, r: d - 6 * r, lambda e, d, r: d - 3 * r),
)


def instantiate(row: TableRow, e_values=range(0, 5), d_values=range(1, 5), r_values=range(1, 5)):
    """(params, system, vdim, dim) for every grid point where the dim column is >= 0.

    Outside that range the system is empty and cannot be special.
    """
    grid = [(e, d, r) for e in (e_values if "e" in row.params else [None])
            for d in (d_values if "d" in row.params else [None])
            for r in (r_values if "r" in row.params else [None])]
    out = []
    for e, d, r in grid:
        if row.dim(e, d, r) < 0:
            continue
        ee, a, b, m, h = row.system(e, d, r)
        L = make_class(F(ee), (a, b), (m,) * h)
        params = {k: v for k, v in zip("edr", (e, d, r)) if k in row.params}
        out.append((params, L, row.vdim(e, d, r), row.dim(e, d, r)))
    return out


@dataclass(frozen=True)
class RowCheck:
    label: str
    params: dict
    system: DivisorClass
    vdim_expected: int
    vdim: int
    dim_expected: int
    dim: int
    laface_special: bool

    @property
    def ok(self) -> bool:
        return (self.vdim == self.vdim_expected and self.dim == self.dim_expected
                and self.laface_special)


@dataclass(frozen=True)
class TableReport:
    rows: tuple

    @property
    def mismatches(self):
        return tuple(r for r in self.rows if not r.ok)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def table_corpus_check(seed: int = 0, trials: int = 3, prime: int | None = None,
                       e_values=range(0, 5), d_values=range(1, 5), r_values=range(1, 5)):
    from .oracle import DEFAULT_PRIME, effective_dimension

    p = prime or DEFAULT_PRIME
    checks = []
    for row in LAFACE_TABLE:
        for params, L, vdim, dim in instantiate(row, e_values, d_values, r_values):
            rep = effective_dimension(L, seed=seed, trials=trials, prime=p)
            special, _ = is_laface_special(L)
            checks.append(RowCheck(row.label, params, L, vdim, virtual_dimension(L),
                                   dim, rep.dimension, special))
    return TableReport(tuple(checks))
