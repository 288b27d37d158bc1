"""Support oracles: the compact sets that constrain ball centers.

An oracle answers exact membership queries and enumerates representative
support points inside a ball at a requested resolution depth (every enumerated
point is a genuine member, and the enumeration at depth n covers the support
intersected with the ball to resolution contraction^n * diameter).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import product
from typing import Optional

from .game_engine import Ball, Point
from .rationals import to_fraction


class SupportOracle(ABC):
    name = "abstract"
    dim = 1

    @abstractmethod
    def contains(self, point: Point) -> bool:
        ...

    @abstractmethod
    def enumerate_in_ball(self, ball: Ball, depth: int) -> list:
        ...

    @property
    def diameter(self) -> Optional[Fraction]:
        """Diameter of the support; None when unbounded."""
        return None

    def depth_for_radius(self, radius, extra: int = 2) -> int:
        """Enumeration depth that resolves a ball of the given radius."""
        return max(1, extra)


def _levels_to_resolve(radius, contraction: int, extra: int) -> int:
    """Smallest n with contraction^-n <= radius, plus a safety margin."""
    r = to_fraction(radius)
    if r >= 1:
        return extra
    # bit-length arithmetic avoids float underflow for very deep radii
    inv = r.denominator // r.numerator
    import math
    level = int(math.ceil(inv.bit_length() / math.log2(contraction))) + 1
    while contraction ** (level - 1) * r.numerator >= r.denominator and level > 0:
        level -= 1
    return level + extra


class FullSpace(SupportOracle):
    """All of R^d: membership is trivial, enumeration is a dyadic grid."""

    name = "full"

    def __init__(self, dim: int = 1):
        self.dim = dim

    def contains(self, point: Point) -> bool:
        return point.dim == self.dim

    def enumerate_in_ball(self, ball: Ball, depth: int) -> list:
        steps = 2 ** depth
        axes = []
        r = to_fraction(ball.radius)
        for c in ball.center:
            c = to_fraction(c)
            axes.append([c + r * Fraction(2 * j - steps, steps)
                         for j in range(steps + 1)])
        pts = []
        for combo in product(*axes):
            p = Point(tuple(combo))
            if ball.contains_point(p):
                pts.append(p)
        return pts


class IntervalSupport(SupportOracle):
    """A closed interval [lo, hi] in R^1."""

    name = "interval"

    def __init__(self, lo=0, hi=1):
        self.lo = to_fraction(lo)
        self.hi = to_fraction(hi)
        if self.lo >= self.hi:
            raise ValueError("empty interval")

    @property
    def diameter(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, point: Point) -> bool:
        x = to_fraction(point.coords[0])
        return self.lo <= x <= self.hi

    def enumerate_in_ball(self, ball: Ball, depth: int) -> list:
        steps = 2 ** depth
        c = to_fraction(ball.center.coords[0])
        r = to_fraction(ball.radius)
        lo = max(self.lo, c - r)
        hi = min(self.hi, c + r)
        if lo > hi:
            return []
        return [Point((lo + (hi - lo) * Fraction(j, steps),))
                for j in range(steps + 1)]


class MiddleThirdCantor(SupportOracle):
    """The middle-third Cantor set in [0,1] with exact rational membership.

    Level-j construction intervals are [a/3^j, (a+1)/3^j] for ternary strings a
    over digits {0,2}; both endpoints of every such interval belong to the set,
    which is what the enumeration returns.
    """

    name = "cantor"

    def __init__(self):
        self._enum_cache = {}

    @property
    def diameter(self) -> Fraction:
        return Fraction(1)

    def depth_for_radius(self, radius, extra: int = 2) -> int:
        return _levels_to_resolve(radius, 3, extra)

    def contains(self, point: Point) -> bool:
        x = to_fraction(point.coords[0])
        if x < 0 or x > 1:
            return False
        # Ternary digit automaton on the integer pair (num, den); rationals
        # cycle, so a seen-set on the numerator terminates.
        num, den = x.numerator, x.denominator
        seen = set()
        while True:
            if num == 0 or num == den:
                return True
            if num in seen:
                return True  # cycle closed without hitting a forced 1-digit
            seen.add(num)
            num *= 3
            if num < den:
                continue
            if num > 2 * den:
                num -= 2 * den
            elif num == den or num == 2 * den:
                return True  # endpoint: 1/3 = 0.0222..., 2/3 = 0.2000...
            else:
                return False  # digit 1 is unavoidable

    def enumerate_in_ball(self, ball: Ball, depth: int) -> list:
        c = to_fraction(ball.center.coords[0])
        r = to_fraction(ball.radius)
        key = (c, r, depth)
        hit = self._enum_cache.get(key)
        if hit is not None:
            return hit
        lo, hi = c - r, c + r
        # BFS over construction intervals (a, j) ~ [a/3^j, (a+1)/3^j].
        frontier = [(0, 0)]
        for j in range(depth):
            nxt = []
            scale = 3 ** (j + 1)
            for a, _ in frontier:
                for child in (3 * a, 3 * a + 2):
                    if Fraction(child, scale) <= hi and Fraction(child + 1, scale) >= lo:
                        nxt.append((child, j + 1))
            frontier = nxt
        pts = set()
        scale = 3 ** depth
        for a, _ in frontier:
            for num in (a, a + 1):
                x = Fraction(num, scale)
                if lo <= x <= hi:
                    pts.add(x)
        out = [Point((x,)) for x in sorted(pts)]
        if len(self._enum_cache) > 4096:
            self._enum_cache.clear()
        self._enum_cache[key] = out
        return out


class CF13Support(SupportOracle):
    """Closure of the numbers whose partial quotients all lie in {1,3}.

    No rational belongs to this set (members have infinite expansions), so
    exact membership of a Fraction is always False; ``contains`` instead
    reports membership of the depth-capped cylinder cover, which is what ball
    queries and enumeration need.  Enumerated representatives are cylinder
    interval midpoints at the requested depth.
    """

    name = "cf13"

    def __init__(self, cover_depth: int = 12):
        self.cover_depth = cover_depth

    @property
    def diameter(self) -> Fraction:
        return Fraction(3, 4)  # hull [1/4, 1]

    def depth_for_radius(self, radius, extra: int = 2) -> int:
        # cylinder lengths shrink by a factor > 2 per digit
        return _levels_to_resolve(radius, 2, extra)

    def contains(self, point: Point) -> bool:
        from .continued_fractions import CFWord, cylinder_interval
        x = to_fraction(point.coords[0])
        words = [()]
        for _ in range(self.cover_depth):
            nxt = []
            for w in words:
                for d in (1, 3):
                    cyl = cylinder_interval(CFWord(w + (d,)))
                    if cyl.lo <= x <= cyl.hi:
                        nxt.append(w + (d,))
            if not nxt:
                return False
            words = nxt
        return True

    def enumerate_in_ball(self, ball: Ball, depth: int) -> list:
        from .continued_fractions import CFWord, cylinder_interval
        c = to_fraction(ball.center.coords[0])
        r = to_fraction(ball.radius)
        lo, hi = c - r, c + r
        words = [()]
        for _ in range(depth):
            nxt = []
            for w in words:
                for d in (1, 3):
                    cyl = cylinder_interval(CFWord(w + (d,)))
                    if cyl.lo <= hi and cyl.hi >= lo:
                        nxt.append(w + (d,))
            words = nxt
        pts = []
        for w in words:
            cyl = cylinder_interval(CFWord(w))
            mid = (cyl.lo + cyl.hi) / 2
            if lo <= mid <= hi:
                pts.append(Point((mid,)))
        return sorted(pts, key=lambda p: p.coords)


SUPPORT_REGISTRY = {
    "cantor": MiddleThirdCantor,
    "interval": IntervalSupport,
    "full": FullSpace,
    "cf13": CF13Support,
}


def make_support(name: str, dim: int = 1) -> SupportOracle:
    if name in (None, "none"):
        return None
    if name == "full":
        return FullSpace(dim)
    try:
        return SUPPORT_REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown support {name!r}; "
                         f"choose from {sorted(SUPPORT_REGISTRY)} or 'none'")
