"""alpha-special effect curves and special effect configurations.

Checking works on every model (P^n, F_e, K3).  The searches run on P^2;
the Hirzebruch module plugs its own candidate generator into
:func:`search_configuration`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .lattice import (
    DivisorClass,
    OverSubtraction,
    arithmetic_genus,
    intersect,
    self_intersection,
    subtract,
    virtual_dimension,
)
from .negone import is_neg_one_class, plane_neg_one_multisets

# rejection reasons, one per failed clause
ZERO_CURVE = "zero-curve"
NEGATIVE_CURVE_MULTS = "negative-curve-mults"
BAD_ALPHA = "alpha-not-positive"
CONDITION_ISTAR = "condition-istar"
DEGREE_BOUND = "degree-bound"
MULTIPLICITY_BOUND = "multiplicity-bound"
NO_GAIN = "condition-ii"
MAXIMALITY_VALUE = "maximality-value"
MAXIMALITY_STRICT = "maximality-strict"
LEMMA_BOUND = "lemma-bound"
RESIDUAL_NEGATIVE = "residual-negative"
FINAL_NEGATIVE = "final-negative"

# decomposition search is skipped above this many sub-classes
_HEURISTIC_LIMIT = 20_000


class NotSpecialEffect(ValueError):
    def __init__(self, reason: str, message: str, certificate=None):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
        self.certificate = certificate


class ConfigurationError(ValueError):
    def __init__(self, step: int, reason: str, message: str):
        super().__init__(f"step {step}: {reason}: {message}")
        self.step = step
        self.reason = reason


@dataclass(frozen=True)
class AlphaCertificate:
    system: DivisorClass
    curve: DivisorClass
    alpha: int
    nu_trace: tuple  # nu(L - beta Y) for beta = 0..alpha(+1 when admissible)
    is_full_curve: bool
    use_istar: bool = True
    curve_check: str = "unverified"  # "neg-one", "heuristic" or "unverified"
    clamped: tuple = ()

    @property
    def residual(self) -> DivisorClass:
        return subtract(self.system, self.alpha, self.curve)

    @property
    def gain(self) -> int:
        return self.nu_trace[self.alpha] - self.nu_trace[0]


@dataclass(frozen=True)
class ConfigCertificate:
    system: DivisorClass
    steps: tuple  # ((curve, alpha, trace), ...)
    final_nu: int
    certificates: tuple = field(default=(), compare=False, repr=False)

    @property
    def multiplicities(self):
        return tuple(a for _, a, _ in self.steps)

    @property
    def residual(self) -> DivisorClass:
        R = self.system
        for Y, a, _ in self.steps:
            R = subtract(R, a, Y)
        return R


def nu(L: DivisorClass) -> int:
    return virtual_dimension(L)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def degree_limit(L: DivisorClass, Y: DivisorClass):
    """Largest beta with beta*deg(Y) <= deg(L) componentwise (None if unbounded)."""
    limits = [x // y for x, y in zip(L.degrees, Y.degrees) if y > 0]
    return min(limits) if limits else None


def multiplicity_limit(L: DivisorClass, Y: DivisorClass):
    """min of ceil(m_i / c_i) over points with c_i > 0 (None if Y has no support)."""
    limits = [_ceil_div(m, c) for m, c in zip(L.mults, Y.mults) if c > 0]
    return min(limits) if limits else None


def admissible_range(L: DivisorClass, Y: DivisorClass) -> int:
    bounds = [b for b in (degree_limit(L, Y), multiplicity_limit(L, Y)) if b is not None]
    if not bounds:
        raise NotSpecialEffect(ZERO_CURVE, f"{Y} imposes no bound on alpha")
    return min(bounds)


def nu_values(L: DivisorClass, Y: DivisorClass, top: int) -> list:
    out = [nu(L)]
    for beta in range(1, top + 1):
        out.append(nu(subtract(L, beta, Y)))
    return out


def _is_obviously_reducible(Y: DivisorClass) -> bool:
    """Y = A + B with A, B nonzero, nonnegative, nu >= 0 each and A.B = 0."""
    ranges = [range(x + 1) for x in Y.degrees] + [range(c + 1) for c in Y.mults]
    for parts in product(*ranges):
        k = len(Y.degrees)
        A = DivisorClass(Y.surface, parts[:k], parts[k:])
        B = Y - A
        if A.is_zero() or B.is_zero():
            continue
        if A.sort_key() > B.sort_key():
            continue  # each split once
        if nu(A) >= 0 and nu(B) >= 0 and intersect(A, B) == 0:
            return True
    return False


def irreducibility_heuristic(Y: DivisorClass) -> str:
    """Classify a candidate curve class.

    Returns ``"neg-one"`` for a (-1)-class, ``"heuristic"`` when Y^2 >= 0,
    p_a >= 0, nu(|Y|) >= 0 and no obvious orthogonal splitting exists,
    ``"rejected"`` when one of those tests fails and ``"unverified"`` when
    the test does not apply (no pairing, or the class is too large to scan).
    """
    if not Y.surface.is_surface or any(c < 0 for c in Y.mults):
        return "unverified"
    if is_neg_one_class(Y) and any(Y.degrees):
        return "neg-one"
    if self_intersection(Y) < 0 or arithmetic_genus(Y) < 0 or nu(Y) < 0:
        return "rejected"
    size = 1
    for x in Y.degrees + Y.mults:
        size *= x + 1
    if size > _HEURISTIC_LIMIT:
        return "unverified"
    return "rejected" if _is_obviously_reducible(Y) else "heuristic"


def _evaluate(L: DivisorClass, Y: DivisorClass, alpha: int, use_istar: bool,
              curve_check=None) -> AlphaCertificate:
    if L.surface != Y.surface or L.h != Y.h:
        raise ValueError(f"{L} and {Y} live on different models")
    if Y.is_zero():
        raise NotSpecialEffect(ZERO_CURVE, "the curve class is zero")
    if any(c < 0 for c in Y.mults) or any(x < 0 for x in Y.degrees):
        raise NotSpecialEffect(NEGATIVE_CURVE_MULTS, f"{Y} has negative entries")
    if alpha < 1:
        raise NotSpecialEffect(BAD_ALPHA, f"alpha = {alpha}")
    if not any(Y.degrees):
        raise NotSpecialEffect(ZERO_CURVE, f"{Y} has zero degree")

    nu_y = nu(Y)
    if use_istar and nu_y < 0:
        raise NotSpecialEffect(CONDITION_ISTAR, f"nu(|Y|) = {nu_y} < 0")
    # without (i*), condition (i) is a statement about the supplied curve
    # itself and is taken on trust

    dlim = degree_limit(L, Y)
    if dlim is not None and alpha > dlim:
        raise NotSpecialEffect(DEGREE_BOUND, f"{alpha}*{Y.degrees} exceeds {L.degrees}")
    mlim = multiplicity_limit(L, Y)
    if mlim is not None and alpha > mlim:
        raise NotSpecialEffect(MULTIPLICITY_BOUND, f"alpha = {alpha} > min ceil(m/c) = {mlim}")
    top = admissible_range(L, Y)

    values = nu_values(L, Y, top)
    if values[alpha] <= values[0]:
        raise NotSpecialEffect(NO_GAIN, f"nu(L - {alpha}Y) = {values[alpha]} <= nu(L) = {values[0]}")
    for beta in range(1, top + 1):
        if values[beta] > values[alpha]:
            raise NotSpecialEffect(MAXIMALITY_VALUE,
                                   f"beta = {beta} gives nu = {values[beta]} > {values[alpha]}")
    for beta in range(alpha + 1, top + 1):
        if values[beta] >= values[alpha]:
            raise NotSpecialEffect(MAXIMALITY_STRICT,
                                   f"beta = {beta} > alpha keeps nu = {values[beta]}")

    if _lemma_applies(L) and use_istar:
        if not 2 * intersect(L, Y) < (alpha + 1) * self_intersection(Y):
            raise NotSpecialEffect(LEMMA_BOUND,
                                   f"2 L.Y = {2 * intersect(L, Y)} not below "
                                   f"(alpha+1) Y^2 = {(alpha + 1) * self_intersection(Y)}")

    trace = tuple(values[: min(alpha + 1, top) + 1])
    residual = subtract(L, alpha, Y)
    return AlphaCertificate(
        system=L, curve=Y, alpha=alpha, nu_trace=trace,
        is_full_curve=values[alpha] >= 0, use_istar=use_istar,
        curve_check=curve_check if curve_check is not None else irreducibility_heuristic(Y),
        clamped=residual.clamped,
    )


def _lemma_applies(L: DivisorClass) -> bool:
    # the bounds are proved for plane systems; K3 (Y^2 = 0 curves) and
    # Hirzebruch classes with the h^0-based nu violate them
    return L.surface.kind == "P" and L.surface.n == 2


def check_alpha_property(L: DivisorClass, Y: DivisorClass, alpha: int,
                         use_istar: bool = True) -> AlphaCertificate:
    """Certificate that Y has the alpha-special effect property for L.

    Raises :class:`NotSpecialEffect` whose ``reason`` names the first failed
    clause.  A user-supplied Y is trusted to be irreducible; the certificate's
    ``curve_check`` records what the heuristic made of it.
    """
    return _evaluate(L, Y, alpha, use_istar)


def check_alpha_curve(L: DivisorClass, Y: DivisorClass, alpha: int,
                      use_istar: bool = True) -> AlphaCertificate:
    cert = _evaluate(L, Y, alpha, use_istar)
    if not cert.is_full_curve:
        raise NotSpecialEffect(RESIDUAL_NEGATIVE,
                               f"property holds but nu(L - {alpha}Y) = {cert.nu_trace[alpha]} < 0",
                               certificate=cert)
    return cert


def best_alpha(L: DivisorClass, Y: DivisorClass, use_istar: bool = True):
    """The only alpha that can satisfy the maximality clauses, with its certificate, or None."""
    try:
        top = admissible_range(L, Y)
    except NotSpecialEffect:
        return None
    if top < 1:
        return None
    values = nu_values(L, Y, top)
    best = max(values[1:])
    alpha = max(b for b in range(1, top + 1) if values[b] == best)
    try:
        return _evaluate(L, Y, alpha, use_istar, curve_check="search")
    except NotSpecialEffect:
        return None


def verify_configuration(L: DivisorClass, steps, use_istar: bool = True) -> ConfigCertificate:
    steps = list(steps)
    if not steps:
        raise ValueError("a configuration needs at least one curve")
    R = L
    done, certs = [], []
    for j, (Y, alpha) in enumerate(steps):
        try:
            cert = _evaluate(R, Y, alpha, use_istar)
        except NotSpecialEffect as exc:
            raise ConfigurationError(j, exc.reason, str(exc)) from exc
        certs.append(cert)
        done.append((Y, alpha, cert.nu_trace))
        R = subtract(R, alpha, Y)
    final = nu(R)
    if final < 0:
        raise ConfigurationError(len(steps), FINAL_NEGATIVE, f"nu of the final residual {R} is {final}")
    return ConfigCertificate(L, tuple(done), final, tuple(certs))


def validate_lemma_bounds(cert: AlphaCertificate, h0_residual=None) -> bool:
    """Re-check the two lemma inequalities on an accepted plane certificate.

    ``h0_residual`` is h^0(L - alpha Y) when an oracle has computed it.  For
    certificates on other surfaces the lemmas are not claimed and the result
    is True.
    """
    if not _lemma_applies(cert.system):
        return True
    L, Y, a = cert.system, cert.curve, cert.alpha
    ok = 2 * intersect(L, Y) < (a + 1) * self_intersection(Y)
    if h0_residual is not None and h0_residual >= 1:
        ok = ok and self_intersection(Y) <= -1
    return ok


# ---------------------------------------------------------------------------
# searches


def _plane_curve_vectors(L: DivisorClass, e: int, c_bound: int):
    """All c with 0 <= c_i <= min(c_bound, e), c_i = 0 where m_i = 0, and nu(|(e;c)|) >= 0."""
    budget = (e + 1) * (e + 2) // 2 - 1  # dim |eH|
    caps = [0 if m == 0 else min(c_bound, e) for m in L.mults]

    def rec(i, left, c):
        if i == len(caps):
            yield tuple(c)
            return
        for v in range(caps[i] + 1):
            cost = v * (v + 1) // 2
            if cost > left:
                break
            c.append(v)
            yield from rec(i + 1, left - cost, c)
            c.pop()

    yield from rec(0, budget, [])


def find_alpha_curves(L: DivisorClass, e_bound: int = 4, c_bound: int = 2) -> list:
    if L.surface.kind != "P" or L.surface.n != 2:
        raise ValueError("curve search is implemented on P^2")
    found = []
    for e in range(1, e_bound + 1):
        for c in _plane_curve_vectors(L, e, c_bound):
            Y = DivisorClass(L.surface, (e,), c)
            cert = best_alpha(L, Y)
            if cert is None or not cert.is_full_curve:
                continue
            check = irreducibility_heuristic(Y)
            if check == "rejected":
                continue
            found.append(AlphaCertificate(L, Y, cert.alpha, cert.nu_trace, True, True, check,
                                          cert.clamped))
    found.sort(key=lambda c: (c.curve.degrees, c.alpha, c.curve.sort_key()))
    return found


def _submultisets(counter: Counter, k: int):
    """Nonincreasing k-tuples drawn from the multiset ``counter``, with the leftover."""
    values = sorted((v for v in counter if counter[v] > 0), reverse=True)

    def rec(idx, need, chosen, left):
        if need == 0:
            yield tuple(chosen), left
            return
        if idx == len(values):
            return
        v = values[idx]
        for take in range(min(need, left[v]), -1, -1):
            nxt = left.copy()
            nxt[v] -= take
            yield from rec(idx + 1, need - take, chosen + [v] * take, nxt)

    yield from rec(0, k, [], Counter(counter))


def block_assignments(ms, mults):
    """Placements of the multiset ``ms`` on the points, one per orbit of the
    symmetry permuting points of equal multiplicity.  Points with m = 0 only
    receive zeros."""
    blocks = {}
    for i, m in enumerate(mults):
        blocks.setdefault(m, []).append(i)
    pool = Counter(ms)
    zeros = blocks.pop(0, [])
    if pool[0] < len(zeros):
        return
    pool[0] -= len(zeros)
    order = sorted(blocks.items(), key=lambda kv: -kv[0])
    c = [0] * len(mults)

    def rec(bi, left):
        if bi == len(order):
            yield tuple(c)
            return
        idx = order[bi][1]
        for chosen, rest in _submultisets(left, len(idx)):
            for i, v in zip(idx, chosen):
                c[i] = v
            yield from rec(bi + 1, rest)
        for i in idx:
            c[i] = 0

    yield from rec(0, pool)


def plane_candidates(e_bound: int, c_bound: int):
    """Candidate generator for P^2: (-1)-classes of degree <= e_bound and multiplicity <= c_bound.

    Classes with Y^2 >= 0 are never tried: a final step needs Y^2 <= -1
    by the second lemma bound, and in practice they never beat a (-1)-curve.
    """
    def generate(R: DivisorClass):
        for e in range(1, e_bound + 1):
            for ms in plane_neg_one_multisets(R.h, e):
                if ms and ms[0] > c_bound:
                    continue
                for c in block_assignments(ms, R.mults):
                    yield DivisorClass(R.surface, (e,), c)
    return generate


def search_configuration(L: DivisorClass, candidates, depth: int = 8, priority=None):
    """Depth-first search for a special effect configuration.

    At each residual every candidate is given its unique admissible alpha;
    options are tried by largest alpha first, then ``priority`` (default:
    smallest degree), then class order.  Failed residuals are memoised up to
    permutation of the points.  Returns a verified :class:`ConfigCertificate`
    or None.
    """
    if priority is None:
        priority = lambda Y: sum(Y.degrees)  # noqa: E731
    failed = set()

    def rec(R, left):
        if left == 0:
            return None
        key = (R.degrees, tuple(sorted(R.mults)), left)
        if key in failed:
            return None
        options = []
        for Y in candidates(R):
            cert = best_alpha(R, Y)
            if cert is not None:
                options.append((-cert.alpha, priority(Y), Y.sort_key(), cert))
        options.sort(key=lambda t: t[:3])
        for *_, cert in options:
            step = (cert.curve, cert.alpha)
            if cert.is_full_curve:
                return [step]
            rest = rec(cert.residual, left - 1)
            if rest is not None:
                return [step] + rest
        failed.add(key)
        return None

    try:
        steps = rec(L, depth)
    except OverSubtraction:
        return None
    if steps is None:
        return None
    return verify_configuration(L, steps)


def greedy_configuration(L: DivisorClass, e_bound: int = 4, c_bound: int = 2, depth: int = 8):
    if L.surface.kind != "P" or L.surface.n != 2:
        raise ValueError("configuration search is implemented on P^2")
    return search_configuration(L, plane_candidates(e_bound, c_bound), depth)


# ---------------------------------------------------------------------------
# homogeneous systems with a smooth curve through every point


@dataclass(frozen=True)
class HomogeneousFamily:
    e: int  # degree of the curve Y
    h: int  # number of points
    members: tuple  # ((m, d, alphas), ...)

    def d_range(self, m: int):
        ds = [d for mm, d, _ in self.members if mm == m]
        return (min(ds), max(ds)) if ds else None

    @property
    def description(self) -> str:
        return f"L(d; m^{self.h}) with a degree-{self.e} curve through all {self.h} points"


def _homogeneous_nu(d: int, m: int, h: int) -> int:
    return d * (d + 3) // 2 - h * m * (m + 1) // 2


def homogeneous_solutions(e_max: int, h_max: int, m_max: int, d_max: int):
    """All (e, h, m, d, alpha) with Y = (e; 1^h) satisfying the three inequalities.

    The inequalities are: |Y| is nonempty through h general points,
    nu(L - alpha Y) > nu(L) and nu(L - alpha Y) >= 0, with 1 <= alpha <= m
    and alpha*e <= d.  L - alpha Y = (d - alpha e; (m - alpha)^h).
    """
    if min(e_max, h_max, m_max, d_max) < 1:
        raise ValueError("bounds must be positive")
    out = []
    for e in range(1, e_max + 1):
        for h in range(1, h_max + 1):
            if e * (e + 3) < 2 * h:
                continue
            for m in range(1, m_max + 1):
                for d in range(1, d_max + 1):
                    base = _homogeneous_nu(d, m, h)
                    for alpha in range(1, m + 1):
                        if alpha * e > d:
                            break
                        after = _homogeneous_nu(d - alpha * e, m - alpha, h)
                        if after > base and after >= 0:
                            out.append((e, h, m, d, alpha))
    return out


def homogeneous_smooth_search(e_max: int = 5, h_max: int = 12, m_max: int = 12,
                              d_max: int = 30) -> list:
    groups = {}
    for e, h, m, d, alpha in homogeneous_solutions(e_max, h_max, m_max, d_max):
        groups.setdefault((e, h), {}).setdefault((m, d), []).append(alpha)
    return [
        HomogeneousFamily(e, h, tuple((m, d, tuple(a)) for (m, d), a in sorted(members.items())))
        for (e, h), members in sorted(groups.items())
    ]
