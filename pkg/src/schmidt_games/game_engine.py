"""Rules, legality and execution of the (alpha,beta) nested-ball game.

The board object is a closed Euclidean ball in R^d.  Legality is decided in
exact rational arithmetic on squared norms: float inputs are converted exactly
to Fractions first, so there is never a tolerance inside the engine.  Games
whose radii/centers are Fractions therefore produce exactly reproducible
transcripts; strategies that work in floats own whatever safety margin they
need to stay strictly legal.

Move policy: an illegal move does not raise.  It is recorded, the transcript
is truncated and the offender is named, so adversarial strategies can be
tested right at the edge of legality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rationals import format_rational, to_fraction

WHITE = "white"
BLACK = "black"


@dataclass(frozen=True)
class Point:
    coords: tuple

    @staticmethod
    def of(*coords) -> "Point":
        return Point(tuple(to_fraction(c) if not isinstance(c, float) else c
                           for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def exact(self) -> "Point":
        """Copy with every coordinate coerced to an exact Fraction."""
        return Point(tuple(to_fraction(c) for c in self.coords))

    def dist_sq(self, other: "Point"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return sum((a - b) * (a - b) for a, b in zip(self.coords, other.coords))

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: object  # Fraction in exact games, float in estimation contexts

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return self.center.dim

    def contains_point(self, p: Point) -> bool:
        d2 = to_fraction(p.exact().dist_sq(self.center.exact()))
        r = to_fraction(self.radius)
        return d2 <= r * r


def ball1(lo, hi) -> Ball:
    """One-dimensional ball from interval endpoints."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    return Ball(Point(((lo + hi) / 2,)), (hi - lo) / 2)


def validate_containment(inner: Ball, outer: Ball) -> bool:
    """Exact closed-ball containment test: |c_in - c_out|^2 <= (r_out - r_in)^2.

    Coordinates and radii are coerced to Fractions (exactly, including floats)
    before comparing, so the result is never subject to rounding.
    """
    if inner.dim != outer.dim:
        raise ValueError(f"dimension mismatch: {inner.dim} vs {outer.dim}")
    r_in = to_fraction(inner.radius)
    r_out = to_fraction(outer.radius)
    if r_in > r_out:
        return False
    gap = r_out - r_in
    d2 = inner.center.exact().dist_sq(outer.center.exact())
    return d2 <= gap * gap


def balls_disjoint(a: Ball, b: Ball) -> bool:
    """Exact test for empty intersection of two closed balls."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    s = to_fraction(a.radius) + to_fraction(b.radius)
    return a.center.exact().dist_sq(b.center.exact()) > s * s


@dataclass(frozen=True)
class GameConfig:
    alpha: Fraction
    beta: Fraction
    dim: int = 1
    support: Optional[object] = None      # SupportOracle; None = all of R^d
    max_rounds: int = 1000
    initial_radius: Optional[Fraction] = None  # informative: Black's free rho

    def __post_init__(self):
        a, b = to_fraction(self.alpha), to_fraction(self.beta)
        if not (0 < a < 1 and 0 < b < 1):
            raise ValueError("alpha and beta must lie strictly in (0,1)")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if self.dim < 1:
            raise ValueError("dimension must be positive")


@dataclass
class Transcript:
    """Alternating ball record U(0), W(0), U(1), ... with per-move legality."""

    config: GameConfig
    balls: list = field(default_factory=list)
    legality: list = field(default_factory=list)  # one flag per move (balls[1:])
    forfeited_by: Optional[str] = None
    violations: list = field(default_factory=list)

    def mover_for_next(self) -> str:
        # U(0) is Black's; the k-th subsequent move alternates White/Black.
        return WHITE if len(self.balls) % 2 == 1 else BLACK

    def required_radius(self):
        # exact product: float radii are taken at their exact binary value, so
        # strategies and the legality check agree bit for bit
        last = to_fraction(self.balls[-1].radius)
        factor = self.config.alpha if self.mover_for_next() == WHITE else self.config.beta
        return factor * last

    @property
    def last_ball(self) -> Ball:
        return self.balls[-1]

    def rounds_played(self) -> int:
        return (len(self.balls) - 1) // 2

    def is_legal(self) -> bool:
        return self.forfeited_by is None and all(self.legality)

    def contains_point_everywhere(self, p: Point) -> bool:
        return all(b.contains_point(p) for b in self.balls)


def move_violations(cfg: GameConfig, previous: Ball, proposed: Ball, mover: str) -> list:
    """Diagnostic list of rule violations for a proposed move (empty = legal)."""
    problems = []
    if proposed.dim != previous.dim:
        return [f"dimension mismatch: {proposed.dim} vs {previous.dim}"]
    factor = cfg.alpha if mover == WHITE else cfg.beta
    required = to_fraction(factor) * to_fraction(previous.radius)
    if to_fraction(proposed.radius) != required:
        problems.append(
            f"wrong radius: got {proposed.radius}, required {required}")
    if not validate_containment(proposed, previous):
        problems.append("containment violated")
    if cfg.support is not None and not cfg.support.contains(proposed.center):
        problems.append("center outside support")
    return problems


def legal_move(cfg: GameConfig, previous: Ball, proposed: Ball, mover: str) -> bool:
    """True iff the radius is exactly the required multiple, the proposed ball
    sits inside the previous one, and (in the support-constrained variant) the
    center lies on the support."""
    return not move_violations(cfg, previous, proposed, mover)


def play(cfg: GameConfig, white, black, initial: Ball, rounds: Optional[int] = None) -> Transcript:
    """Run the game for the given number of rounds (White then Black per round).

    Preconditions: the initial ball is Black's U(0); its center must lie on the
    support and, for a bounded support, its radius must not exceed the support
    diameter.  The transcript is truncated at the first illegal move and the
    offender recorded; no exception is raised for illegal play.
    """
    if rounds is None:
        rounds = cfg.max_rounds
    if cfg.support is not None:
        if not cfg.support.contains(initial.center):
            raise ValueError("initial ball must be centered on the support")
        diam = cfg.support.diameter
        if diam is not None and to_fraction(initial.radius) > to_fraction(diam):
            raise ValueError("initial radius exceeds the support diameter")
    t = Transcript(config=cfg, balls=[initial])
    for _ in range(rounds):
        for strategy in (white, black):
            mover = t.mover_for_next()
            proposed = strategy.next_move(t)
            problems = move_violations(cfg, t.last_ball, proposed, mover)
            t.balls.append(proposed)
            t.legality.append(not problems)
            if problems:
                t.forfeited_by = mover
                t.violations = problems
                return t
    return t


def limit_enclosure(t: Transcript) -> Ball:
    """Smallest recorded enclosure of the game's limit point (the last ball)."""
    if not t.balls:
        raise ValueError("empty transcript")
    if not t.is_legal():
        raise ValueError(f"illegal transcript (forfeited by {t.forfeited_by}: "
                         f"{'; '.join(t.violations)})")
    return t.balls[-1]


# --- serialization -----------------------------------------------------------
#
# Rationals travel as "p/q" strings so a round trip through JSON is exact.

def _ball_to_obj(b: Ball) -> dict:
    return {
        "center": [format_rational(to_fraction(c)) for c in b.center],
        "radius": format_rational(to_fraction(b.radius)),
    }


def _ball_from_obj(obj: dict) -> Ball:
    center = Point(tuple(to_fraction(c) for c in obj["center"]))
    return Ball(center, to_fraction(obj["radius"]))


def transcript_to_obj(t: Transcript) -> dict:
    cfg = t.config
    return {
        "config": {
            "alpha": format_rational(cfg.alpha),
            "beta": format_rational(cfg.beta),
            "dim": cfg.dim,
            "support": getattr(cfg.support, "name", None),
            "max_rounds": cfg.max_rounds,
            "initial_radius": (format_rational(cfg.initial_radius)
                               if cfg.initial_radius is not None else None),
        },
        "balls": [_ball_to_obj(b) for b in t.balls],
        "legality": list(t.legality),
        "forfeited_by": t.forfeited_by,
        "violations": list(t.violations),
    }


def transcript_to_json(t: Transcript) -> str:
    return json.dumps(transcript_to_obj(t), sort_keys=True, indent=2)


def transcript_from_json(text: str, support_registry=None) -> Transcript:
    obj = json.loads(text)
    c = obj["config"]
    support = None
    if c.get("support") is not None and support_registry is not None:
        support = support_registry[c["support"]]
    cfg = GameConfig(
        alpha=to_fraction(c["alpha"]),
        beta=to_fraction(c["beta"]),
        dim=c["dim"],
        support=support,
        max_rounds=c["max_rounds"],
        initial_radius=(to_fraction(c["initial_radius"])
                        if c.get("initial_radius") else None),
    )
    t = Transcript(config=cfg,
                   balls=[_ball_from_obj(b) for b in obj["balls"]],
                   legality=list(obj["legality"]),
                   forfeited_by=obj.get("forfeited_by"),
                   violations=list(obj.get("violations", [])))
    return t
