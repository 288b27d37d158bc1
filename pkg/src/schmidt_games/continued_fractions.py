"""Continuants, cylinder intervals, and Stern-Brocot/Farey enumeration.

Everything here is exact: words are tuples of positive integer digits,
continuants are integers from the classic recurrence, and cylinder endpoints
are Fractions.  A cylinder is the closed interval of numbers whose expansion
starts with a given digit word; its length obeys
len = 1 / (q_n * (q_n + q_{n-1})).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Optional

from .game_engine import Ball
from .rationals import to_fraction


@dataclass(frozen=True)
class CFWord:
    digits: tuple

    def __post_init__(self):
        if any(d < 1 for d in self.digits):
            raise ValueError("partial quotients must be >= 1")
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))

    def __len__(self):
        return len(self.digits)

    def child(self, digit: int) -> "CFWord":
        return CFWord(self.digits + (digit,))


@dataclass(frozen=True)
class Cylinder:
    word: CFWord
    lo: Fraction
    hi: Fraction
    q_n: int
    q_prev: int

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = to_fraction(x)
        return self.lo <= x <= self.hi


def continuants(word: CFWord) -> tuple:
    """(q_n, q_{n-1}) from q_n = a_n q_{n-1} + q_{n-2}, q_0 = 1, q_{-1} = 0."""
    q_prev, q = 0, 1
    for a in word.digits:
        q, q_prev = a * q + q_prev, q
    return q, q_prev


def _convergent_pair(word: CFWord):
    """Numerator/denominator pairs (p_n, q_n) and (p_{n-1}, q_{n-1}) for [0; word]."""
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    for a in word.digits:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return p, q, p_prev, q_prev


def cylinder_interval(word: CFWord) -> Cylinder:
    """Exact closed interval of numbers whose expansion starts with ``word``.

    Endpoints are the convergent p_n/q_n and the adjacent value
    (p_n + p_{n-1})/(q_n + q_{n-1}); which one is the left end depends on the
    parity of n and is determined by comparison rather than assumed.
    """
    if len(word) == 0:
        return Cylinder(word, Fraction(0), Fraction(1), 1, 0)
    p, q, p_prev, q_prev = _convergent_pair(word)
    a = Fraction(p, q)
    b = Fraction(p + p_prev, q + q_prev)
    lo, hi = (a, b) if a < b else (b, a)
    return Cylinder(word, lo, hi, q, q_prev)


def words_at_depth(alphabet: Iterable[int], depth: int):
    """All digit words of exactly the given length, in lexicographic order."""
    alphabet = tuple(sorted(set(int(a) for a in alphabet)))
    words = [()]
    for _ in range(depth):
        words = [w + (d,) for w in words for d in alphabet]
    return [CFWord(w) for w in words]


@dataclass
class RatioReport:
    alphabet: tuple
    max_depth: int
    checked: int
    min_ratio: Fraction
    max_ratio: Fraction
    min_word: tuple
    max_word: tuple
    lower: Fraction = Fraction(1, 12)
    upper: Fraction = Fraction(1, 2)

    @property
    def ok(self) -> bool:
        return self.lower < self.min_ratio and self.max_ratio < self.upper


def ratio_bounds_check(max_depth: int, alphabet=(1, 3)) -> RatioReport:
    """Exact child/parent cylinder length ratios over all words to max_depth.

    Ratios are taken for parents of depth >= 1 (the depth-0 root has length 1
    and its children sit exactly at the 1/2 boundary).  Returns the extremal
    observed ratios; ``ok`` says every ratio lies strictly in (1/12, 1/2).
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    alphabet = tuple(sorted(set(int(a) for a in alphabet)))
    best = None  # (min_ratio, word), (max_ratio, word)
    worst = None
    checked = 0
    # DFS carrying continuants; ratio needs only (q_n, q_{n-1}) of the parent.
    stack = [((d,), *continuants(CFWord((d,)))) for d in alphabet]
    while stack:
        word, q, q_prev = stack.pop()
        if len(word) >= max_depth:
            continue
        parent_len = Fraction(1, q * (q + q_prev))
        for d in alphabet:
            q_child, q_child_prev = d * q + q_prev, q
            child_len = Fraction(1, q_child * (q_child + q_child_prev))
            ratio = child_len / parent_len
            checked += 1
            cw = word + (d,)
            if best is None or ratio < best[0]:
                best = (ratio, cw)
            if worst is None or ratio > worst[0]:
                worst = (ratio, cw)
            stack.append((cw, q_child, q_child_prev))
    return RatioReport(alphabet=alphabet, max_depth=max_depth, checked=checked,
                       min_ratio=best[0], max_ratio=worst[0],
                       min_word=best[1], max_word=worst[1])


def cf_of_rational(x) -> CFWord:
    """Canonical expansion [0; a_1, ..., a_n] of a rational in [0, 1].

    The Euclidean algorithm ends with a_n >= 2 automatically for x in (0, 1);
    0 maps to the empty word and 1 to the single digit (1,).
    """
    x = to_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("expected a rational in [0, 1]")
    if x == 0:
        return CFWord(())
    if x == 1:
        return CFWord((1,))
    digits = []
    num, den = x.denominator, x.numerator  # start from 1/x
    while den:
        a, r = divmod(num, den)
        digits.append(a)
        num, den = den, r
    return CFWord(tuple(digits))


def cf_prefix_of_interval(lo, hi) -> CFWord:
    """Longest digit word w with [lo, hi] contained in the cylinder of w.

    Valid for every x in [lo, hi]: all of them start with these digits.
    Implemented by exact cylinder descent (not by comparing endpoint
    expansions, which overstates the prefix when an endpoint is a convergent).
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo >= hi:
        raise ValueError("need lo < hi")
    if lo < 0 or hi > 1:
        return CFWord(())
    digits = []
    p, q, p_prev, q_prev = 0, 1, 1, 0
    while True:
        # Pull both endpoints back through the Moebius map of the current word:
        # x = (p + p_prev t)/(q + q_prev t), so t = (p - q x)/(q_prev x - p_prev).
        ts = []
        for x in (lo, hi):
            den = q_prev * x - p_prev
            if den == 0:
                return CFWord(tuple(digits))
            ts.append((p - q * x) / den)
        t_min, t_max = min(ts), max(ts)
        if t_min <= 0 or t_max > 1:
            return CFWord(tuple(digits))
        d = floor(Fraction(1) / t_max)
        if d < 1 or t_min < Fraction(1, d + 1):
            return CFWord(tuple(digits))
        digits.append(d)
        p, p_prev = d * p + p_prev, p
        q, q_prev = d * q + q_prev, q


def quotient_bound_certificate(ball: Ball) -> Optional[int]:
    """Largest forced partial quotient for every point of a 1-d ball.

    If the ball sits inside some cylinder, returns the maximum digit of the
    forced prefix, usable as bounded-partial-quotient evidence; None when the
    ball is not inside any depth-1 cylinder.
    """
    c = to_fraction(ball.center.coords[0])
    r = to_fraction(ball.radius)
    lo, hi = c - r, c + r
    if lo < 0 or hi > 1:
        raise ValueError("ball must lie within [0, 1]")
    prefix = cf_prefix_of_interval(lo, hi)
    if len(prefix) == 0:
        return None
    return max(prefix.digits)


def convergents_of(x):
    """All convergents (p_k, q_k) of a nonnegative rational, k >= 0."""
    x = to_fraction(x)
    if x < 0:
        raise ValueError("expected nonnegative")
    a0 = x.numerator // x.denominator
    digits = [a0] + list(cf_of_rational(x - a0).digits)
    out = []
    p_prev, p = 1, digits[0]
    q_prev, q = 0, 1
    out.append((p, q))
    for a in digits[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out


# --- Stern-Brocot / Farey machinery ------------------------------------------

def farey_bracket(x, qmax: int):
    """Neighbors (lo, hi) in the Farey sequence F_qmax with lo <= x < hi.

    Descends the Stern-Brocot tree with run-length batching, so the cost is
    O(log) in the denominators rather than the number of mediant steps.
    """
    x = to_fraction(x)
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    n = x.numerator // x.denominator
    lo_p, lo_q = n, 1
    hi_p, hi_q = n + 1, 1
    while lo_q + hi_q <= qmax:
        # A > 0 measures how far hi is above x, B >= 0 how far x is above lo.
        A = hi_p - x * hi_q
        B = x * lo_q - lo_p
        if B > 0 and A - B <= 0:
            # mediant <= x: batch right-steps lo <- lo + k*hi while still <= x
            k_val = floor(B / A)
            k_den = (qmax - lo_q) // hi_q
            k = min(k_val, k_den)
            if k == 0:
                break
            lo_p += k * hi_p
            lo_q += k * hi_q
        else:
            # mediant > x: batch left-steps hi <- hi + k*lo while still > x
            if B == 0:
                k = (qmax - hi_q) // lo_q
            else:
                k = min(ceil(A / B) - 1, (qmax - hi_q) // lo_q)
            if k == 0:
                break
            hi_p += k * lo_p
            hi_q += k * lo_q
    return Fraction(lo_p, lo_q), Fraction(hi_p, hi_q)


def farey_next(a: Fraction, b: Fraction, qmax: int) -> Fraction:
    """Successor of b in F_qmax given its predecessor a (standard recurrence)."""
    k = (qmax + a.denominator) // b.denominator
    return Fraction(k * b.numerator - a.numerator,
                    k * b.denominator - a.denominator)


def farey_cover(lo, hi, qmax: int):
    """Consecutive F_qmax fractions f_0 <= lo, ..., f_m >= hi.

    Every reduced p/q with q <= qmax and lo <= p/q <= hi appears; the first
    and last entries act as sentinels just outside (or on) the endpoints.
    Consecutive entries are Farey neighbors, so completeness of the list is
    checkable via the determinant identity q*p' - p*q' = 1 plus q + q' > qmax.
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    a, b = farey_bracket(lo, qmax)
    out = [a, b]
    while out[-1] < hi:
        a, b = out[-2], out[-1]
        out.append(farey_next(a, b, qmax))
    return out


def fractions_in_interval(lo, hi, qmax: int):
    """Reduced fractions p/q with q <= qmax inside the closed interval."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    return [f for f in farey_cover(lo, hi, qmax) if lo <= f <= hi]


def simplest_between(lo, hi) -> Fraction:
    """Smallest-denominator fraction in the closed interval [lo, hi]."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    if lo == hi:
        return lo
    sign = 1
    if hi <= 0:
        lo, hi, sign = -hi, -lo, -1
    elif lo < 0:
        return Fraction(0)
    n = ceil(lo)
    if n <= hi:
        return sign * Fraction(n)
    a = floor(lo)
    inner = simplest_between(1 / (hi - a), 1 / (lo - a))
    return sign * (a + 1 / inner)
