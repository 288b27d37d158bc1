"""Player strategies: the exact zero-centered Black play on the Cantor set,
a certificate-emitting rational-avoidance White, the gradient-push White that
enacts the minor-growing induction at desk scale, and adversarial baselines.

Strategies are stateful per game (stage bookkeeping, certificates, logs) and
must not be shared between concurrent games.  Every strategy reads the
required radius off the transcript so radii match the engine bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Callable, Optional, Sequence

from .continued_fractions import farey_cover, simplest_between
from .game_engine import Ball, Point, Transcript, WHITE
from .linear_forms import (
    LinearFormsMatrix,
    alpha1_upper_bound,
    ball_grid,
    d_nu,
    default_quality_cap_rule,
    grad_d_nu,
    minor_vector,
)
from .rationals import to_fraction


class Strategy:
    """Move producer: consumes the transcript so far, returns the next ball."""

    name = "abstract"

    @property
    def params(self) -> dict:
        return {}

    def next_move(self, t: Transcript) -> Ball:
        raise NotImplementedError


class LazyStrategy(Strategy):
    """Recenter on the previous ball's center (always legal on any support)."""

    name = "lazy"

    def next_move(self, t: Transcript) -> Ball:
        return Ball(t.last_ball.center, t.required_radius())


# Legal-candidate memo shared by random strategies: a pure function of the
# (support, previous ball, slack, depth) query, so sharing across games is safe.
_legal_candidates_cache = {}


def legal_support_candidates(support, prev: Ball, slack, depth: int) -> list:
    key = (id(support), prev.center.coords, to_fraction(prev.radius),
           to_fraction(slack), depth)
    hit = _legal_candidates_cache.get(key)
    if hit is not None:
        return hit
    slack = to_fraction(slack)
    if prev.dim == 1:
        c = to_fraction(prev.center.coords[0])
        out = [p for p in support.enumerate_in_ball(prev, depth)
               if abs(to_fraction(p.coords[0]) - c) <= slack]
    else:
        out = [p for p in support.enumerate_in_ball(prev, depth)
               if p.exact().dist_sq(prev.center.exact()) <= slack * slack]
    if len(_legal_candidates_cache) > 4096:
        _legal_candidates_cache.clear()
    _legal_candidates_cache[key] = out
    return out


class RandomSupportStrategy(Strategy):
    """Uniform choice among enumerated legal support centers (seeded)."""

    name = "random"

    def __init__(self, rng, extra_depth: int = 2):
        self.rng = rng
        self.extra_depth = extra_depth

    @property
    def params(self) -> dict:
        return {"extra_depth": self.extra_depth}

    def next_move(self, t: Transcript) -> Ball:
        prev = t.last_ball
        radius = t.required_radius()
        support = t.config.support
        if support is None:
            return Ball(prev.center, radius)
        slack = to_fraction(prev.radius) - to_fraction(radius)
        depth = support.depth_for_radius(prev.radius, self.extra_depth)
        candidates = legal_support_candidates(support, prev, slack, depth)
        if not candidates:
            return Ball(prev.center, radius)
        return Ball(self.rng.choice(candidates), radius)


# --- the exact zero-centered Black play -----------------------------------------

@dataclass(frozen=True)
class WindimParams:
    """Game parameters alpha = 1/3 + 3^-N, beta = 1/(3^{N-1}+1); their product
    is exactly 3^-N, so Black's radii are 3^{-Nk} when rho(U(0)) = 1."""
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")

    @property
    def alpha(self) -> Fraction:
        return Fraction(3 ** (self.N - 1) + 1, 3 ** self.N)

    @property
    def beta(self) -> Fraction:
        return Fraction(1, 3 ** (self.N - 1) + 1)


class ZeroCenteredBlack(Strategy):
    """Black recenters every ball at 0.

    On the middle-third Cantor set with the windim parameters this is legal
    against any legal White play: White's center can reach at most
    3^{-(Nk+1)}, which is exactly the slack Black needs.
    """

    name = "cantor-zero"

    def __init__(self, params: WindimParams):
        self.windim = params

    @property
    def params(self) -> dict:
        return {"N": self.windim.N}

    def next_move(self, t: Transcript) -> Ball:
        zero = Point(tuple(Fraction(0) for _ in range(t.config.dim)))
        return Ball(zero, t.required_radius())


def black_cantor_zero(params: WindimParams) -> Strategy:
    return ZeroCenteredBlack(params)


# --- adversarial baselines -------------------------------------------------------

class TargetStrategy(Strategy):
    """Move the center as far toward a fixed target as legality allows."""

    name = "target"

    def __init__(self, target: Point):
        self.target = target

    @property
    def params(self) -> dict:
        return {"target": [str(c) for c in self.target.coords]}

    def next_move(self, t: Transcript) -> Ball:
        prev = t.last_ball
        radius = t.required_radius()
        slack = to_fraction(prev.radius) - to_fraction(radius)
        support = t.config.support
        if support is None or prev.dim == 1 and hasattr(support, "lo"):
            center = self._clamped_center(prev, slack, support)
            return Ball(center, radius)
        depth = support.depth_for_radius(prev.radius, 2)
        candidates = [p for p in support.enumerate_in_ball(prev, depth)
                      if p.exact().dist_sq(prev.center.exact()) <= slack * slack]
        if not candidates:
            return Ball(prev.center, radius)
        best = min(candidates,
                   key=lambda p: (p.exact().dist_sq(self.target.exact()), p.coords))
        return Ball(best, radius)

    def _clamped_center(self, prev: Ball, slack, support) -> Point:
        if prev.dim == 1:
            c = to_fraction(prev.center.coords[0])
            x = to_fraction(self.target.coords[0])
            lo, hi = c - slack, c + slack
            if support is not None:
                lo, hi = max(lo, support.lo), min(hi, support.hi)
            return Point((min(max(x, lo), hi),))
        # unconstrained d-dim: step along the segment toward the target
        c = prev.center
        d2 = c.exact().dist_sq(self.target.exact())
        if d2 <= slack * slack:
            return self.target
        scale = float(slack) / sqrt(float(d2))
        coords = tuple(float(a) + scale * (float(b) - float(a)) * (1 - 1e-12)
                       for a, b in zip(c.coords, self.target.coords))
        return Point(coords)


def black_target(target: Point) -> Strategy:
    return TargetStrategy(target)


class RationalChaserBlack(Strategy):
    """Chase the simplest fraction inside the current ball (1-d, seeded).

    Each turn the chaser retargets the smallest-denominator rational in the
    previous ball (or in a seeded-random half of it, for variety across seeds)
    and steps toward it as far as legality allows.
    """

    name = "rational-chaser"

    def __init__(self, rng):
        self.rng = rng

    def next_move(self, t: Transcript) -> Ball:
        prev = t.last_ball
        c = to_fraction(prev.center.coords[0])
        r = to_fraction(prev.radius)
        lo, hi = c - r, c + r
        pick = self.rng.random()
        if pick < 0.25:
            target = simplest_between(lo, c)
        elif pick < 0.5:
            target = simplest_between(c, hi)
        else:
            target = simplest_between(lo, hi)
        return TargetStrategy(Point((target,))).next_move(t)


# --- rational avoidance White ----------------------------------------------------

@dataclass(frozen=True)
class QualityCertificate:
    """Exact per-round soundness record for the avoidance strategy.

    Claim: for every x in ``ball`` and every 1 <= q <= cap, q*<q x> >= bound.
    ``fractions`` lists consecutive Farey-F_cap fractions covering ``region``
    (first <= region lo, last >= region hi), so completeness is checkable from
    the neighbor identity q p' - p q' = 1 alone; ``margin`` is the inflation
    that floors the contribution of everything outside the region.
    """
    round_index: int
    cap: int
    ball_center: Fraction
    ball_radius: Fraction
    region_lo: Fraction
    region_hi: Fraction
    fractions: tuple
    margin: Fraction
    bound: Fraction


def _interval_dist(x, lo, hi):
    if x < lo:
        return lo - x
    if x > hi:
        return x - hi
    return Fraction(0)


def build_quality_certificate(round_index: int, ball: Ball, cap: int
                              ) -> QualityCertificate:
    """Certify min q<qx> over the ball for q <= cap, exactly.

    For x in the ball and its nearest fraction p/q: either p/q lies in the
    margin-inflated region (then listed, and q<qx> = q^2|x - p/q| >=
    q^2 dist(p/q, ball)), or it is at least ``margin`` away from x.
    """
    w = to_fraction(ball.center.coords[0])
    r = to_fraction(ball.radius)
    margin = r
    lo, hi = w - r - margin, w + r + margin
    fracs = tuple(farey_cover(lo, hi, cap))
    bound = margin
    for f in fracs:
        if lo <= f <= hi:
            contrib = f.denominator ** 2 * _interval_dist(f, w - r, w + r)
            bound = min(bound, contrib)
    return QualityCertificate(round_index, cap, w, r, lo, hi, fracs, margin, bound)


def verify_quality_certificate(cert: QualityCertificate) -> bool:
    """Independent exact check of a certificate via the Farey-neighbor
    characterization; raises ValueError on any defect."""
    fr = cert.fractions
    if not fr or fr[0] > cert.region_lo or fr[-1] < cert.region_hi:
        raise ValueError("fraction list does not bracket the region")
    for f in fr:
        if f.denominator > cert.cap:
            raise ValueError(f"{f} exceeds the denominator cap")
    for a, b in zip(fr, fr[1:]):
        if not a < b:
            raise ValueError("fractions not increasing")
        det = (a.denominator * b.numerator - a.numerator * b.denominator)
        if det != 1:
            raise ValueError(f"{a},{b} are not Stern-Brocot neighbors")
        if a.denominator + b.denominator <= cert.cap:
            raise ValueError(f"gap between {a} and {b} admits a capped mediant")
    if cert.bound > cert.margin:
        raise ValueError("bound exceeds the outside-region floor")
    blo = cert.ball_center - cert.ball_radius
    bhi = cert.ball_center + cert.ball_radius
    for f in fr:
        if cert.region_lo <= f <= cert.region_hi:
            contrib = f.denominator ** 2 * _interval_dist(f, blo, bhi)
            if cert.bound > contrib:
                raise ValueError(f"bound exceeds contribution of {f}")
    return True


class RationalAvoidWhite(Strategy):
    """Maximize the minimal distance to every capped fraction near the ball.

    Each turn: enumerate the 'dangerous' reduced fractions with denominator at
    most cap(rho) that intersect the inflated previous ball, pick the legal
    center farthest from all of them (ties toward the smaller center), and
    emit an exact lower-bound certificate for q<qx> on the returned ball.
    """

    name = "rational-avoid"

    def __init__(self, cap_rule: Callable = default_quality_cap_rule):
        self.cap_rule = cap_rule
        self.certificates = []

    def next_move(self, t: Transcript) -> Ball:
        prev = t.last_ball
        radius = to_fraction(t.required_radius())
        c = to_fraction(prev.center.coords[0])
        rho = to_fraction(prev.radius)
        slack = rho - radius
        lo, hi = c - slack, c + slack
        support = t.config.support
        if support is not None and hasattr(support, "lo"):
            lo, hi = max(lo, support.lo), min(hi, support.hi)
        cap = max(1, int(self.cap_rule(rho)))
        # one inflated region covers every admissible White ball
        search_lo = lo - 3 * radius
        search_hi = hi + 3 * radius
        dangerous = [f for f in farey_cover(search_lo, search_hi, cap)
                     if search_lo <= f <= search_hi]
        candidates = [lo, hi]
        inside = sorted(f for f in dangerous if lo < f < hi)
        for a, b in zip(inside, inside[1:]):
            candidates.append((a + b) / 2)
        if support is not None and not hasattr(support, "lo"):
            depth = support.depth_for_radius(prev.radius, 3)
            candidates = [to_fraction(p.coords[0])
                          for p in support.enumerate_in_ball(prev, depth)
                          if lo <= to_fraction(p.coords[0]) <= hi]
            if not candidates:
                raise RuntimeError("no legal support center at this depth")
        def score(x):
            return min((abs(x - f) for f in dangerous), default=Fraction(1))
        best = max(candidates, key=lambda x: (score(x), -x))
        ball = Ball(Point((best,)), radius)
        self.certificates.append(
            build_quality_certificate(t.rounds_played(), ball, cap))
        return ball


def white_rational_avoid(cap_rule: Callable = default_quality_cap_rule) -> RationalAvoidWhite:
    return RationalAvoidWhite(cap_rule)


# --- good points and the gradient push --------------------------------------------

def find_good_point(support, poly: Callable, omega: Ball, depth: int,
                    theta: float = 1.0) -> Point:
    """Point of the support inside omega nearly maximizing |poly|.

    Enumerates support representatives at the given depth and returns the
    exact sampled argmax (ties toward lexicographically smaller coordinates),
    so the guarantee |poly(result)| >= theta * sampled max holds for any
    theta <= 1.
    """
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    pts = support.enumerate_in_ball(omega, depth)
    if not pts:
        raise ValueError("empty enumeration: depth too small or omega off-support")
    best = None
    best_val = None
    for p in sorted(pts, key=lambda p: tuple(float(c) for c in p.coords)):
        v = abs(float(poly(p)))
        if best_val is None or v > best_val:
            best, best_val = p, v
    return best


@dataclass
class GradientPushParams:
    """Configuration of the minor-growing White strategy.

    The underlying lemmas only prove these constants exist; running the moves
    needs concrete values.  ``mu_schedule`` lists mu_0..mu_N; the smallness
    constraint on sqrt(alpha1) is validated against the checkable entries.
    """
    M: int
    N: int
    psi: float
    epsilon0: float
    alpha1: float
    mu_schedule: tuple
    R: float = 2.0
    C1: float = 0.5
    C2: float = 1.0
    C3_min: Optional[float] = None
    C4: Optional[float] = None
    activation_radius: float = 1.0
    grid_depth: int = 2
    enum_depth: int = 4
    theta: float = 1.0
    gradient_tolerance: float = 1e-12

    def __post_init__(self):
        if len(self.mu_schedule) < self.N + 1:
            raise ValueError("mu_schedule must provide mu_0..mu_N")
        if not 0 < self.epsilon0 < 1:
            raise ValueError("epsilon0 must lie in (0,1)")
        if self.mu_schedule[0] * self.psi >= 1:
            raise ValueError("mu_0 must be below 1/psi for the base stage")
        bound = alpha1_upper_bound(self.psi, self.epsilon0, self.N,
                                   self.C3_min, self.C4)
        if sqrt(self.alpha1) >= bound:
            raise ValueError(
                f"sqrt(alpha1) = {sqrt(self.alpha1):.3g} must be below {bound:.3g}")

    def psi_nu(self, nu: int) -> float:
        return (self.epsilon0 / 2) ** nu * self.psi


class GradientPushWhite(Strategy):
    """Stage-driven White: wait for the radius thresholds, then push the
    center along the gradient of the leading pairing determinant.

    Stage nu ends at the first Black ball below mu_nu * rho0 with the minor
    norm |M_nu| grown past its floor; between thresholds the strategy plays
    lazily (any legal filler is admissible there).  The push move lands at
    distance (1 - alpha1) * rho from the center, so the returned ball is
    internally tangent; on enumerable supports the landing point is refined
    to the best support point of the surrounding omega ball.
    """

    name = "gradient-push"

    def __init__(self, params: GradientPushParams, ys: Sequence, support=None):
        self.p = params
        self.ys = [tuple(float(c) for c in y) for y in ys]
        self.support = support
        self.log = []
        self._active = False
        self._rho0 = None
        self._stage = 0
        self._waiting_for_j = False
        self._i_radius = None
        self._j_threshold = None
        self._done = False

    @property
    def params(self) -> dict:
        return {"M": self.p.M, "N": self.p.N, "psi": self.p.psi,
                "alpha1": self.p.alpha1, "stage": self._stage}

    def _lazy(self, t: Transcript) -> Ball:
        return Ball(t.last_ball.center, t.required_radius())

    def _matrix_at(self, coords) -> LinearFormsMatrix:
        return LinearFormsMatrix.from_point(
            tuple(float(c) for c in coords), self.p.M, self.p.N)

    def next_move(self, t: Transcript) -> Ball:
        p = self.p
        if float(t.config.alpha) != float(p.alpha1):
            raise ValueError("game alpha must equal the strategy's alpha1")
        prev = t.last_ball
        rho = float(prev.radius)
        if self._done:
            return self._lazy(t)
        if not self._active:
            if rho < min(1.0, p.activation_radius):
                self._active = True
                self._rho0 = rho
                self._i_radius = None
                self._waiting_for_j = False
            else:
                return self._lazy(t)
        if not self._waiting_for_j:
            # waiting for U(i_stage): radius below mu_stage * rho0
            if rho < p.mu_schedule[self._stage] * self._rho0:
                self.log.append({"event": "stage-ball", "stage": self._stage,
                                 "rho": rho})
                self._i_radius = rho
                self._stage += 1
                if self._stage > p.N:
                    self._done = True
                    return self._lazy(t)
                self._j_threshold = (0.5 * p.C1 * self._i_radius *
                                     min(p.psi_nu(self._stage),
                                         0.125 * p.psi_nu(p.N) * p.C4 / p.C2))
                self._waiting_for_j = True
            return self._lazy(t)
        if rho >= self._j_threshold:
            return self._lazy(t)
        # prev is U(j_nu): decide between the trivial wait and the push
        self._waiting_for_j = False
        nu = self._stage
        center = self._matrix_at(prev.center.coords)
        grid = ball_grid(center.flat(), rho, p.grid_depth)
        norms = []
        prev_norms = []
        for pt in grid:
            A = LinearFormsMatrix.from_point(pt, p.M, p.N)
            norms.append((minor_vector(A, self.ys, nu).norm, pt))
            prev_norms.append(minor_vector(A, self.ys, nu - 1).norm)
        min_norm, argmin_pt = min(norms, key=lambda v: v[0])
        m_prev_hat = max(prev_norms)
        mu_nu = p.mu_schedule[nu]
        floor_bound = p.psi_nu(nu) * self._rho0 * mu_nu * m_prev_hat
        k_ratio = rho / self._rho0
        if min_norm > floor_bound:
            self.log.append({"event": "trivial", "stage": nu, "rho": rho,
                             "min_norm": min_norm, "floor": floor_bound})
            return self._lazy(t)
        grad = grad_d_nu(self._matrix_at(argmin_pt), self.ys, nu)
        gnorm = sqrt(sum(g * g for g in grad))
        if gnorm < p.gradient_tolerance:
            self.log.append({"event": "degenerate-gradient", "stage": nu,
                             "rho": rho, "grad_norm": gnorm})
            return self._lazy(t)
        sign = 1.0 if d_nu(center, self.ys, nu) >= 0 else -1.0
        radius = t.required_radius()
        landing = self._pushed_point(prev, radius, sign, grad, gnorm, rho)
        if landing is None:
            self.log.append({"event": "push-clipped", "stage": nu, "rho": rho})
            return self._lazy(t)
        if self.support is not None:
            # exact omega radius keeps every enumerated point strictly legal
            omega_r = to_fraction(prev.radius) * (1 - to_fraction(p.alpha1))
            omega = Ball(prev.center, omega_r)
            landing = find_good_point(
                self.support,
                lambda q: d_nu(self._matrix_at(q.coords), self.ys, nu),
                omega, p.enum_depth, p.theta)
        pushed_value = d_nu(self._matrix_at(landing.coords), self.ys, nu)
        self.log.append({
            "event": "push", "stage": nu, "rho": rho, "rho0": self._rho0,
            "sign": sign, "grad_norm": gnorm, "k_ratio": k_ratio,
            "m_prev_hat": m_prev_hat, "pushed_value": pushed_value,
            "chain_floor": (None if p.C4 is None else
                            (15.0 / 32.0) * p.C4 * k_ratio * self._rho0 * m_prev_hat),
        })
        return Ball(landing, radius)

    def _pushed_point(self, prev: Ball, radius, sign, grad, gnorm, rho):
        """Center pushed by (1-alpha1)*rho along the gradient, shrunk just
        enough that the exact containment check accepts it despite float
        rounding of the coordinate sums."""
        from .game_engine import validate_containment
        scale = (1.0 - self.p.alpha1) / gnorm
        for _ in range(200):
            pushed = Point(tuple(float(c) + sign * scale * rho * g
                                 for c, g in zip(prev.center.coords, grad)))
            if validate_containment(Ball(pushed, radius), prev):
                return pushed
            scale *= 1.0 - 1e-3
        return None


def white_gradient_push(params: GradientPushParams, ys: Sequence,
                        support=None) -> GradientPushWhite:
    return GradientPushWhite(params, ys, support)
