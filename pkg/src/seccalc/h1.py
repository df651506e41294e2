"""h^1-special effect curves.

For a curve Y on a surface, the restriction L|_Y is a line bundle of degree
L.Y on a curve of arithmetic genus p_a(Y), so its cohomology follows from
Riemann-Roch except in the window 0 <= deg <= 2g-2.  There we use the value
of a general bundle and mark the answer as convention-dependent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import DivisorClass, arithmetic_genus, intersect, virtual_dimension


class HypothesisViolation(ValueError):
    pass


@dataclass(frozen=True)
class RestrictedCohomology:
    degree: int
    genus: int
    h0: int
    h1: int
    convention_dependent: bool = False


@dataclass(frozen=True)
class H1Certificate:
    system: DivisorClass
    curve: DivisorClass
    restricted_degree: int | None
    genus: int | None
    h0_restricted: int | None  # None means indeterminate
    h1_restricted: int | None
    h0_residual_positive: bool | None
    evidence: str  # "oracle", "splitting" or "formula"
    h0_residual: int | None = None
    # restricted values rest on the general-bundle convention; an accepted
    # verdict then holds for a general bundle of that degree only
    convention_dependent: bool = False
    failed: tuple = ()  # subset of ("a", "b", "c")
    verdict: str = "rejected"  # "accepted", "rejected" or "indeterminate"

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"


def _check_hypotheses(L: DivisorClass, Y: DivisorClass):
    if L.surface != Y.surface or L.h != Y.h:
        raise ValueError(f"{L} and {Y} live on different models")
    if L == Y:
        raise HypothesisViolation(f"O(Y) is isomorphic to L = {L}")


def restricted_cohomology(L: DivisorClass, Y: DivisorClass) -> RestrictedCohomology:
    _check_hypotheses(L, Y)
    if not L.surface.is_surface:
        raise ValueError(f"curve restriction needs a surface, not {L.surface}")
    deg = intersect(L, Y)
    g = arithmetic_genus(Y)
    if g < 0:
        raise HypothesisViolation(f"{Y} has arithmetic genus {g} and is not an irreducible curve")
    if deg < 0:
        return RestrictedCohomology(deg, g, 0, g - 1 - deg)
    if deg > 2 * g - 2:
        return RestrictedCohomology(deg, g, deg - g + 1, 0)
    h0 = max(0, deg - g + 1)
    return RestrictedCohomology(deg, g, h0, h0 - deg + g - 1, convention_dependent=True)


@dataclass(frozen=True)
class SplittingWitness:
    """L - Y written as sum_i N_i C_i + residual, with the residual nonempty."""
    components: tuple  # ((C, N), ...)
    residual: DivisorClass


def _residual_evidence(L, Y, evidence, oracle_options):
    R = L - Y
    if any(m < 0 for m in R.mults):
        R = DivisorClass(R.surface, R.degrees, tuple(max(0, m) for m in R.mults))
    if any(x < 0 for x in R.degrees):
        return False, "formula", 0
    if isinstance(evidence, SplittingWitness):
        total = evidence.residual
        for C, N in evidence.components:
            total = total + N * C
        if total != L - Y:
            raise ValueError("splitting witness does not add up to L - Y")
        return virtual_dimension(evidence.residual) >= 0, "splitting", None
    if evidence == "oracle":
        from .oracle import effective_dimension

        rep = effective_dimension(R, **(oracle_options or {}))
        return rep.dimension >= 0, "oracle", rep.dimension + 1
    if evidence == "formula":
        return virtual_dimension(R) >= 0, "formula", None
    raise ValueError(f"unknown evidence {evidence!r}")


def _verdict(h0r, h1r, positive):
    failed = []
    if h0r is None or h1r is None:
        return (), "indeterminate"
    if h0r != 0:
        failed.append("a")
    if not positive:
        failed.append("b")
    if h1r <= 0:
        failed.append("c")
    if failed:
        return tuple(failed), "rejected"
    return (), "accepted"


def check_h1_sec(L: DivisorClass, Y: DivisorClass, evidence="oracle",
                 oracle_options=None) -> H1Certificate:
    """Assemble the three conditions for Y to be an h^1-special effect curve of L.

    ``evidence`` decides how h^0(L - Y) > 0 is established: ``"oracle"``
    (P^n and F_e), a :class:`SplittingWitness`, or ``"formula"``
    (nu(L - Y) >= 0, the only option on K3).  On P^3 and P^4 the curve is a
    hypersurface and the restricted cohomology comes from the restriction
    sequence with oracle values for L and L - Y.
    """
    _check_hypotheses(L, Y)
    if not L.surface.is_surface:
        return _check_hypersurface(L, Y, oracle_options)
    rc = restricted_cohomology(L, Y)
    positive, source, h0_res = _residual_evidence(L, Y, evidence, oracle_options)
    failed, verdict = _verdict(rc.h0, rc.h1, positive)
    return H1Certificate(L, Y, rc.degree, rc.genus, rc.h0, rc.h1, positive, source, h0_res,
                         rc.convention_dependent, failed, verdict)


def _check_hypersurface(L, Y, oracle_options):
    """h^0(L|_Y) = h^0(L) - h^0(L-Y) and h^1(L|_Y) = h^1(L) when h^1(L-Y) = 0."""
    from .oracle import effective_dimension

    opts = oracle_options or {}
    full = effective_dimension(L, **opts)
    R = L - Y
    if any(x < 0 for x in R.degrees) or any(m < 0 for m in R.mults):
        raise ValueError(f"L - Y = {R} is not a system of hypersurfaces")
    res = effective_dimension(R, **opts)
    positive = res.dimension >= 0
    if res.h1 != 0 or res.empty_system or full.empty_system:
        failed, verdict, h0r, h1r = (), "indeterminate", None, None
    else:
        h0r = full.h0 - res.h0
        h1r = full.h1
        failed, verdict = _verdict(h0r, h1r, positive)
    return H1Certificate(L, Y, None, None, h0r, h1r, positive, "oracle", res.h0, False,
                         failed, verdict)
