"""Bound functions and per-instance lower-bound certificates.

Two proof routes, dispatched on whether x1 + x2 > 1:

* Case 1 splits off the two largest weights, leaving the tail r.  The target
  probability is at least (term2 + term4)/4 with the second-moment link
  term2 = 1 - m2/(1+x1-x2)^2 and the fourth-moment link
  term4 = 1 - m4/(1+x1+x2)^4, floored by 93/256.
* Case 2 partitions sign sequences by the first prefix that crosses
  1 - x_{k+1}.  The conditional success probability given a crossing at k is
  at least max(g_k, h_k) evaluated at x_{k+1}, where g_k comes from the
  sortedness bound on prefix mass and h_k from the Cauchy bound; both are
  floored by g_2(1/3) = 9/25 = 0.36.

``hybrid_bound`` sharpens Case 2 with the exact event probabilities, and
``decomposition_check`` re-derives every Case-1 chain link against the exact
engine.  Certificates never self-claim soundness: ``sound_against`` is the
recomputed exact probability attached when the engine runs.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .engine import (
    DEFAULT_FULL_LIMIT,
    prefix_partition,
    signed_sum_probability,
    threshold_probability,
)
from .errors import InputError, SoundnessError, WrongCaseError
from .moments import tail_moments
from .render import render_number
from .weights import EXACT, CaseTag, Value, WeightVector, case_of

CASE1_FLOOR = Fraction(93, 256)
CASE2_FLOOR = Fraction(9, 25)
THEOREM_FLOOR = Fraction(9, 25)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InputError(f"invalid input: k must be an integer >= 2, got {k!r}")


def _coerce_x(x):
    if isinstance(x, bool):
        raise InputError("invalid input: bool is not a bound argument")
    if isinstance(x, int):
        return Fraction(x)
    return x


def g(k: int, x):
    """g_k(x) = (1 - (1 - k x^2) / (2 - x)^2) / 2 on x in [0, 1].

    Lower-bounds the conditional success probability through the tail
    second moment bounded by 1 - k x^2 (prefix weights all >= x_{k+1}).
    Exceeds 1 for large x; certificates clamp it.
    """
    _check_k(k)
    x = _coerce_x(x)
    if x < 0 or x > 1:
        raise InputError(f"domain error: x must be in [0, 1], got {x}")
    den = (2 - x) ** 2
    return (1 - (1 - k * x * x) / den) / 2


def h(k: int, x):
    """h_k(x) = (1 - (1 - (1-x)^2/k) / (2 - x)^2) / 2 on x in [0, 1].

    Same shape with the tail second moment bounded by 1 - (1-x)^2/k (Cauchy
    bound on the prefix mass forced by the crossing).
    """
    _check_k(k)
    x = _coerce_x(x)
    if x < 0 or x > 1:
        raise InputError(f"domain error: x must be in [0, 1], got {x}")
    den = (2 - x) ** 2
    return (1 - (1 - (1 - x) ** 2 / k) / den) / 2


def crossing_point(k: int, *, check: bool = True) -> Fraction:
    """The unique x in [0, 1] with g_k(x) = h_k(x): x = 1/(k+1).

    With ``check`` the identity is re-evaluated exactly; failure would mean
    a broken formula, not a data problem.
    """
    _check_k(k)
    cp = Fraction(1, k + 1)
    if check and g(k, cp) != h(k, cp):
        raise SoundnessError(f"crossing identity failed at k={k}")
    return cp


def minmax_bound(k: int, *, verify_grid: int = 0, tol: Optional[float] = None) -> Fraction:
    """min over [0,1] of max(g_k, h_k), attained at the crossing: g_k(1/(k+1)).

    ``verify_grid > 0`` additionally grid-minimizes max(g, h) in float and
    checks agreement.  The minimum sits at a kink, so the grid overshoots by
    up to |slope| * cell; the default tolerance is one cell width (slopes of
    g and h near the crossing are below 1).
    """
    value = g(k, crossing_point(k, check=False))
    if verify_grid:
        if verify_grid < 3:
            raise InputError("invalid input: verify_grid must be >= 3")
        if tol is None:
            tol = 1.0 / (verify_grid - 1)
        import numpy as np

        xs = np.linspace(0.0, 1.0, verify_grid)
        grid_min = float(np.maximum(_g_np(k, xs), _h_np(k, xs)).min())
        if not -1e-12 <= grid_min - float(value) <= tol:
            raise SoundnessError(
                f"min-max grid check failed at k={k}: grid {grid_min} vs {float(value)}"
            )
    return value


def _g_np(k, xs):
    return (1.0 - (1.0 - k * xs * xs) / (2.0 - xs) ** 2) / 2.0


def _h_np(k, xs):
    return (1.0 - (1.0 - (1.0 - xs) ** 2 / k) / (2.0 - xs) ** 2) / 2.0


def clamp01(value):
    """Clamp a bound value into [0, 1]; conditional bounds are probabilities."""
    if value < 0:
        return value - value  # typed zero
    if value > 1:
        return 1 - (value - value)  # typed one
    return value


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class Case1Data:
    m2: Value
    m4: Value
    denom2: Value
    denom4: Value
    term2: Value
    term4: Value


@dataclass(frozen=True)
class Case2Entry:
    k: int
    x_next: Value
    g_value: Value
    h_value: Value
    max_value: Value  # clamped to [0, 1]


@dataclass(frozen=True)
class Case2Data:
    per_k: tuple[Case2Entry, ...]
    argmin_k: Optional[int]


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable record of the inequality chain applied to one
    instance and the certified lower bound it produced."""

    case: CaseTag
    final_bound: Value
    intermediates: Union[Case1Data, Case2Data]
    mode: str
    sound_against: Optional[Value] = None

    @property
    def floor(self) -> Fraction:
        return CASE1_FLOOR if self.case is CaseTag.CASE1 else CASE2_FLOOR

    def to_json_dict(self) -> dict:
        doc: dict = {"case": self.case.value}
        if isinstance(self.intermediates, Case1Data):
            d = self.intermediates
            doc["intermediates"] = {
                name: render_number(getattr(d, name), self.mode)
                for name in ("m2", "m4", "denom2", "denom4", "term2", "term4")
            }
        else:
            doc["intermediates"] = {
                "per_k": [
                    {
                        "k": e.k,
                        "x_next": render_number(e.x_next, self.mode),
                        "g": render_number(e.g_value, self.mode),
                        "h": render_number(e.h_value, self.mode),
                        "max": render_number(e.max_value, self.mode),
                    }
                    for e in self.intermediates.per_k
                ],
                "argmin_k": self.intermediates.argmin_k,
            }
        doc["final_bound"] = render_number(self.final_bound, self.mode)
        if self.sound_against is not None:
            doc["sound_against"] = render_number(self.sound_against, self.mode)
        return doc


def verify_certificate(cert: Certificate) -> None:
    """Raise SoundnessError if the certificate violates its floor or its
    attached exact probability."""
    if cert.final_bound < cert.floor:
        raise SoundnessError(
            f"certified bound {cert.final_bound} below the {cert.case.value} "
            f"floor {cert.floor}"
        )
    if cert.sound_against is not None and cert.final_bound > cert.sound_against:
        raise SoundnessError(
            f"certified bound {cert.final_bound} exceeds the exact probability "
            f"{cert.sound_against}"
        )


def _case1_terms(w: WeightVector) -> Case1Data:
    tm = tail_moments(w, 2)
    x1, x2 = w.values[0], w.values[1]
    denom2 = (1 + x1 - x2) ** 2
    denom4 = (1 + x1 + x2) ** 4
    term2 = 1 - tm.m2 / denom2
    term4 = 1 - tm.m4 / denom4
    return Case1Data(
        m2=tm.m2, m4=tm.m4, denom2=denom2, denom4=denom4, term2=term2, term4=term4
    )


def _attach_exact(cert: Certificate, w: WeightVector, limit: Optional[int]) -> Certificate:
    p = threshold_probability(w, Fraction(1) if w.mode == EXACT else 1.0, limit=limit)
    cert = dataclasses.replace(cert, sound_against=p)
    if cert.final_bound > p:
        raise SoundnessError(
            f"certified bound {cert.final_bound} exceeds the exact probability {p}"
        )
    return cert


def case1_certificate(
    w: WeightVector, *, exact_check: bool = False, limit: Optional[int] = None
) -> Certificate:
    """Certificate for x1 + x2 > 1: final_bound = (term2 + term4)/4 >= 93/256."""
    if case_of(w) is not CaseTag.CASE1:
        raise WrongCaseError("not case 1: x1 + x2 <= 1")
    data = _case1_terms(w)
    final = (data.term2 + data.term4) / 4
    cert = Certificate(case=CaseTag.CASE1, final_bound=final, intermediates=data, mode=w.mode)
    if exact_check:
        cert = _attach_exact(cert, w, limit)
    return cert


def case2_certificate(
    w: WeightVector, *, exact_check: bool = False, limit: Optional[int] = None
) -> Certificate:
    """Certificate for x1 + x2 <= 1.

    For n <= 2 the sum can never leave [-1, 1], so the bound is 1.  Otherwise
    the bound is min over ALL k in {2..n-1} of the clamped max(g_k, h_k) at
    x_{k+1} - conservative whether or not the event A_k has positive
    probability, which keeps the certificate O(n) with no enumeration.
    """
    if case_of(w) is not CaseTag.CASE2:
        raise WrongCaseError("not case 2: x1 + x2 > 1")
    one = Fraction(1) if w.mode == EXACT else 1.0
    if w.n <= 2:
        cert = Certificate(
            case=CaseTag.CASE2,
            final_bound=one,
            intermediates=Case2Data(per_k=(), argmin_k=None),
            mode=w.mode,
        )
    else:
        entries = []
        for k in range(2, w.n):
            x_next = w.values[k]
            gv = g(k, x_next)
            hv = h(k, x_next)
            mv = clamp01(gv if gv >= hv else hv)
            entries.append(Case2Entry(k=k, x_next=x_next, g_value=gv, h_value=hv, max_value=mv))
        argmin = min(entries, key=lambda e: (e.max_value, e.k))
        final = argmin.max_value if argmin.max_value < one else one
        cert = Certificate(
            case=CaseTag.CASE2,
            final_bound=final,
            intermediates=Case2Data(per_k=tuple(entries), argmin_k=argmin.k),
            mode=w.mode,
        )
    if exact_check:
        cert = _attach_exact(cert, w, limit)
    return cert


def theorem_bound(
    w: WeightVector,
    *,
    exact_check="auto",
    limit: Optional[int] = None,
) -> Certificate:
    """Dispatch on the case of w; the resulting bound is >= 0.36 for every
    valid weight vector.

    ``exact_check`` may be True, False, or "auto" (check when n is within
    the full-enumeration limit, where the engine is desk-fast in both
    modes).  When checking, the exact probability is attached as
    ``sound_against`` and the bound is asserted not to exceed it.
    """
    if exact_check == "auto":
        do_check = w.n <= DEFAULT_FULL_LIMIT
    else:
        do_check = bool(exact_check)
    if case_of(w) is CaseTag.CASE1:
        return case1_certificate(w, exact_check=do_check, limit=limit)
    return case2_certificate(w, exact_check=do_check, limit=limit)


def hybrid_bound(w: WeightVector, *, limit: Optional[int] = None):
    """Exact-partition refinement of the Case-2 certificate:

        sum_k Pr(A_k) * clamp(max(g_k, h_k)(x_{k+1})) + Pr(A_n) * 1

    Sits between the O(n) certificate and the exact probability.
    """
    if case_of(w) is not CaseTag.CASE2:
        raise WrongCaseError("not case 2: x1 + x2 > 1")
    one = Fraction(1) if w.mode == EXACT else 1.0
    if w.n == 1:
        return one
    report = prefix_partition(w, limit=limit)
    total = one - one  # typed zero
    for k in range(2, w.n):
        p = report.prob(k)
        if p == 0:
            continue
        gv = g(k, w.values[k])
        hv = h(k, w.values[k])
        total = total + p * clamp01(gv if gv >= hv else hv)
    total = total + report.prob(w.n) * one
    return total


@dataclass(frozen=True)
class DecompositionReport:
    """Both sides of the Case-1 splitting identity plus each moment link,
    all recomputed exactly."""

    lhs: Value            # Pr(|eps . x| <= 1)
    rhs: Value            # (p_plus + p_minus)/4
    p_plus: Value         # Pr(|r| <= 1 + x1 + x2)
    p_minus: Value        # Pr(|r| <= 1 + x1 - x2)
    t_plus: Value
    t_minus: Value
    term2: Value
    term4: Value
    mode: str

    def to_json_dict(self) -> dict:
        return {
            name: render_number(getattr(self, name), self.mode)
            for name in ("lhs", "rhs", "p_plus", "p_minus", "t_plus", "t_minus", "term2", "term4")
        }


def decomposition_check(w: WeightVector, *, limit: Optional[int] = None) -> DecompositionReport:
    """Verify the Case-1 chain against the exact engine.

    Checks LHS >= (p_plus + p_minus)/4 and each Chebyshev link
    (p_minus >= term2, p_plus >= term4); raises SoundnessError on any
    violation, otherwise returns the report.
    """
    if case_of(w) is not CaseTag.CASE1:
        raise WrongCaseError("not case 1: x1 + x2 <= 1")
    data = _case1_terms(w)
    x1, x2 = w.values[0], w.values[1]
    t_plus = 1 + x1 + x2
    t_minus = 1 + x1 - x2
    tail = w.values[2:]
    one = Fraction(1) if w.mode == EXACT else 1.0
    lhs = threshold_probability(w, one, limit=limit)
    p_plus = signed_sum_probability(tail, t_plus, w.mode, limit=limit)
    p_minus = signed_sum_probability(tail, t_minus, w.mode, limit=limit)
    rhs = (p_plus + p_minus) / 4
    report = DecompositionReport(
        lhs=lhs,
        rhs=rhs,
        p_plus=p_plus,
        p_minus=p_minus,
        t_plus=t_plus,
        t_minus=t_minus,
        term2=data.term2,
        term4=data.term4,
        mode=w.mode,
    )
    if lhs < rhs:
        raise SoundnessError(f"decomposition failed: LHS {lhs} < RHS {rhs}")
    if p_minus < data.term2:
        raise SoundnessError(
            f"second-moment link failed: Pr(|r| <= 1+x1-x2) = {p_minus} < term2 = {data.term2}"
        )
    if p_plus < data.term4:
        raise SoundnessError(
            f"fourth-moment link failed: Pr(|r| <= 1+x1+x2) = {p_plus} < term4 = {data.term4}"
        )
    return report
