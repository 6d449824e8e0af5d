"""Frequency sets below an exponent budget and their exact cardinality.

The frequencies h with weight omega**E(h) above a threshold are exactly
those with E(h) = sum_j a_j*|h_j|**b_j below a budget x; the budget that
corresponds to accuracy eps is log(eps^-2)/log(omega^-1).  Cardinalities
are computed by a dimension recurrence, members by a matching recursive
enumeration, and both sides are bracketed by closed-form products.

All threshold comparisons happen in exponent space with a strict ``<``
and no epsilon: forming omega**(-huge) would overflow, and a silent
tolerance would desynchronize counting from enumeration.  Callers who
want boundary robustness perturb x themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, InvalidParameterError
from .params import KorobovParams, a_values, b_values

__all__ = [
    "DEFAULT_SET_CAP",
    "IndexSet",
    "weight_exponent",
    "exponent_budget",
    "count_below",
    "enumerate_below",
    "last_active_coordinate",
    "count_product_bounds",
    "count_growth_bound",
]

DEFAULT_SET_CAP = 10**6


def weight_exponent(params: KorobovParams, h: Sequence[int]) -> float:
    """E(h) = sum_j a_j * |h_j|**b_j; the weight of h is omega**E(h).

    Work in this exponent and compare exponents directly; never form
    omega**(-E) for large E.
    """
    av, bv = a_values(params), b_values(params)
    if len(h) != params.s:
        raise InvalidParameterError(
            "term_undefined", f"frequency has length {len(h)}, expected {params.s}"
        )
    total = 0.0
    for hj, aj, bj in zip(h, av, bv):
        if hj:
            total += _pow_term(aj, hj, bj)
    return total


def exponent_budget(omega: float, eps: float) -> float:
    """Budget x with {E(h) < x} = {weight(h) > eps**2}: log(eps^-2)/log(omega^-1)."""
    if not (0.0 < eps < 1.0):
        raise InvalidParameterError("term_undefined", f"eps must lie in (0,1), got {eps}")
    if not (0.0 < omega < 1.0):
        raise InvalidParameterError("omega_out_of_range", f"omega must lie in (0,1), got {omega}")
    return 2.0 * math.log(1.0 / eps) / math.log(1.0 / omega)


def _pow_term(a: float, h: int, b: float) -> float:
    """a * |h|**b, saturating to inf instead of raising on overflow; an
    overflowed term is above every finite budget, which is the correct
    outcome for all comparisons here."""
    if not h:
        return 0.0
    try:
        return a * float(abs(h)) ** b
    except OverflowError:
        return math.inf


def _max_h_below(a: float, b: float, x: float) -> int:
    """Largest integer h >= 1 with a*h**b < x, or 0 when none exists.

    A float guess from the inverted closed form is corrected by direct
    strict comparisons, so the boundary is decided by the same arithmetic
    used everywhere else.
    """
    if not (a < x):
        return 0
    k = max(1, int(math.floor((x / a) ** (1.0 / b))))
    while _pow_term(a, k + 1, b) < x:
        k += 1
    while k >= 1 and not (_pow_term(a, k, b) < x):
        k -= 1
    return k


def _count(av: Sequence[float], bv: Sequence[float], x: float) -> int:
    """|{h in Z^s : sum a_j|h_j|^{b_j} < x}| by recursion over dimensions.

    Identical float keys mean identical subproblems, so memoizing on the
    remaining budget is always sound.
    """
    memo: dict[tuple[float, int], int] = {}

    def rec(budget: float, dim: int) -> int:
        if budget <= 0.0:
            return 0
        if dim == 0:
            return 1
        a, b = av[dim - 1], bv[dim - 1]
        if dim == 1:
            return 2 * _max_h_below(a, b, budget) + 1
        key = (budget, dim)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = rec(budget, dim - 1)
        for h in range(1, _max_h_below(a, b, budget) + 1):
            total += 2 * rec(budget - a * float(h) ** b, dim - 1)
        memo[key] = total
        return total

    return rec(float(x), len(av))


def count_below(params: KorobovParams, x: float) -> int:
    """Number of frequencies with exponent strictly below x.

    Returns 0 for x <= 0 and 1 (the origin alone) for x in (0, a_1].
    """
    return _count(a_values(params), b_values(params), x)


def _enumerate(av: Sequence[float], bv: Sequence[float], x: float) -> list[tuple[int, ...]]:
    s = len(av)
    out: list[tuple[int, ...]] = []
    prefix = [0] * s

    def rec(budget: float, dim: int) -> None:
        # Fills coordinates dim..s with every admissible tail.
        if dim > s:
            out.append(tuple(prefix))
            return
        a, b = av[dim - 1], bv[dim - 1]
        prefix[dim - 1] = 0
        rec(budget, dim + 1)
        for h in range(1, _max_h_below(a, b, budget) + 1):
            rest = budget - a * float(h) ** b
            for sign in (-1, 1):
                prefix[dim - 1] = sign * h
                rec(rest, dim + 1)
        prefix[dim - 1] = 0

    if x > 0.0:
        rec(float(x), 1)
    return out


@dataclass(frozen=True)
class IndexSet:
    """Enumerated {h : exponent(h) < threshold} with its exact count.

    Members are listed by nondecreasing exponent, ties broken by plain
    lexicographic order on the component vector (negatives first).
    """

    params: KorobovParams
    threshold: float
    members: tuple[tuple[int, ...], ...]
    count: int

    def __post_init__(self):
        if self.count != len(self.members):
            raise ValueError("count does not match the member list")

    def __contains__(self, h) -> bool:
        return weight_exponent(self.params, h) < self.threshold

    def exponents(self) -> list[float]:
        return [weight_exponent(self.params, h) for h in self.members]


def enumerate_below(
    params: KorobovParams, x: float, cap: int = DEFAULT_SET_CAP
) -> IndexSet:
    """Materialize the frequency set below budget x.

    The cardinality is checked against ``cap`` first (counting is cheap),
    so the error carries the true size.
    """
    total = count_below(params, x)
    if total > cap:
        raise CapExceeded("index set size", cap, needed=total)
    members = _enumerate(a_values(params), b_values(params), x)
    members.sort(key=lambda h: (weight_exponent(params, h), h))
    return IndexSet(params=params, threshold=float(x), members=tuple(members), count=len(members))


def last_active_coordinate(params: KorobovParams, x: float) -> float:
    """sup{j : a_j < x}, the last coordinate the budget can reach.

    Returns ``math.inf`` for bounded families once x exceeds their
    supremum; callers working at dimension s cap the result at s.
    Undefined (raises) for x <= a_1.
    """
    a1 = params.a.term(1)
    if not (x > a1):
        raise InvalidParameterError(
            "term_undefined", f"no coordinate is active: x = {x} <= a_1 = {a1}"
        )
    return params.a.sup_index_below(x)


def count_product_bounds(
    params: KorobovParams,
    x: float,
    alphas: Sequence[float] | None = None,
) -> tuple[float, float]:
    """Closed-form sandwich for the exact count.

    ``lower <= count_below(params, x) <= upper`` where both sides are
    products of per-coordinate odd interval sizes.  The split weights
    ``alphas`` default to alpha_j = (j-1)/j, which turns the lower bound
    into the product over 2*ceil((x/(a_j*s))**(1/b_j)) - 1.
    """
    av, bv = a_values(params), b_values(params)
    s = params.s
    if not (x > av[0]):
        raise InvalidParameterError(
            "term_undefined", f"product bounds need x > a_1, got x = {x}, a_1 = {av[0]}"
        )
    if alphas is None:
        alpha = [(j - 1.0) / j for j in range(1, s + 1)]
    else:
        alpha = [float(v) for v in alphas]
        if len(alpha) != s:
            raise InvalidParameterError(
                "term_undefined", f"need {s} split weights, got {len(alpha)}"
            )
        if any(not (0.0 <= v <= 1.0) for v in alpha):
            raise InvalidParameterError("term_undefined", "split weights must lie in [0,1]")

    j_active = last_active_coordinate(params, x)
    top = s if math.isinf(j_active) else min(s, int(j_active))

    lower = 1.0
    upper = 1.0
    for j in range(1, top + 1):
        aj, bj = av[j - 1], bv[j - 1]
        shrink = (1.0 - alpha[j - 1]) * math.prod(alpha[j:])
        lower *= 2.0 * math.ceil((x * shrink / aj) ** (1.0 / bj)) - 1.0
        upper *= 2.0 * math.ceil((x / aj) ** (1.0 / bj)) - 1.0
    return lower, upper


def count_growth_bound(
    params: KorobovParams, x: float, delta: float, j_star: int
) -> float:
    """Polynomial-in-x ceiling 3**j_star * x**(B_s + log(3)/delta).

    Valid once a_j >= exp(delta*j) from coordinate j_star on; that
    hypothesis is verified term by term up to s and the first failing
    coordinate is reported.
    """
    av, bv = a_values(params), b_values(params)
    if not (x > av[0]):
        raise InvalidParameterError(
            "term_undefined", f"growth bound needs x > a_1, got x = {x}"
        )
    if not (delta > 0.0):
        raise InvalidParameterError("term_undefined", f"delta must be positive, got {delta}")
    if not (isinstance(j_star, int) and j_star >= 1):
        raise InvalidParameterError("term_undefined", f"j_star must be a positive integer, got {j_star!r}")
    for j in range(j_star, params.s + 1):
        if not (av[j - 1] >= math.exp(delta * j)):
            raise InvalidParameterError(
                "term_undefined",
                f"a_{j} = {av[j-1]} < exp(delta*{j}) = {math.exp(delta * j)}",
            )
    b_sum = sum(1.0 / b for b in bv)
    return 3.0**j_star * x ** (b_sum + math.log(3.0) / delta)
