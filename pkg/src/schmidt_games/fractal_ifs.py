"""Contracting-similarity systems, attractor cells, and dimension estimators.

Attractor approximations carry cells as balls: a similarity maps a ball to a
ball exactly (center through the map, radius scaled by the ratio), so the
depth-n cell set is an exact outer cover of the attractor with Hausdorff error
(max ratio)^n * diam(seed).  Rational systems (Cantor, Sierpinski) stay in
exact arithmetic end to end; rotations with irrational entries (Koch) run in
floats and are flagged as such by ``is_exact``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import cos, log, pi, sin, sqrt
from typing import Optional, Sequence

from .game_engine import Ball, Point, validate_containment
from .rationals import to_fraction


@dataclass(frozen=True)
class Similarity:
    """x -> ratio * Theta(x) + shift with Theta orthogonal and 0 < ratio < 1."""
    ratio: object
    theta: tuple   # d x d rows
    shift: tuple

    def __post_init__(self):
        if not 0 < float(self.ratio) < 1:
            raise ValueError("similarity must be contracting: 0 < ratio < 1")
        d = len(self.shift)
        rows = tuple(tuple(r) for r in self.theta)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError("orthogonal part has wrong shape")
        for i in range(d):
            for j in range(d):
                dot = sum(rows[i][k] * rows[j][k] for k in range(d))
                want = 1 if i == j else 0
                if abs(float(dot) - want) > 1e-10:
                    raise ValueError("matrix is not orthogonal to 1e-10")
        object.__setattr__(self, "theta", rows)
        object.__setattr__(self, "shift", tuple(self.shift))

    @property
    def dim(self) -> int:
        return len(self.shift)

    @property
    def is_exact(self) -> bool:
        vals = [self.ratio, *self.shift] + [v for r in self.theta for v in r]
        return all(not isinstance(v, float) for v in vals)

    def apply_point(self, p: Point) -> Point:
        coords = tuple(
            self.ratio * sum(self.theta[i][k] * p.coords[k]
                             for k in range(self.dim)) + self.shift[i]
            for i in range(self.dim))
        return Point(coords)

    def apply_ball(self, b: Ball) -> Ball:
        return Ball(self.apply_point(b.center), self.ratio * to_fraction(b.radius)
                    if not isinstance(self.ratio, float) and not isinstance(b.radius, float)
                    else float(self.ratio) * float(b.radius))

    def compose(self, inner: "Similarity") -> "Similarity":
        """self after inner: x -> self(inner(x))."""
        d = self.dim
        theta = tuple(tuple(sum(self.theta[i][k] * inner.theta[k][j]
                                for k in range(d)) for j in range(d))
                      for i in range(d))
        shift = tuple(self.ratio * sum(self.theta[i][k] * inner.shift[k]
                                       for k in range(d)) + self.shift[i]
                      for i in range(d))
        return Similarity(self.ratio * inner.ratio, theta, shift)


def similarity_1d(ratio, shift, reflect: bool = False) -> Similarity:
    sign = -1 if reflect else 1
    return Similarity(to_fraction(ratio), ((sign,),), (to_fraction(shift),))


def similarity_scale_2d(ratio, shift, angle: float = 0.0) -> Similarity:
    if angle == 0.0:
        theta = ((1, 0), (0, 1))
    else:
        theta = ((cos(angle), -sin(angle)), (sin(angle), cos(angle)))
    return Similarity(ratio, theta, tuple(shift))


@dataclass(frozen=True)
class IFS:
    maps: tuple
    name: str = "ifs"

    def __post_init__(self):
        if not self.maps:
            raise ValueError("need at least one map")
        dims = {m.dim for m in self.maps}
        if len(dims) != 1:
            raise ValueError("maps disagree on dimension")
        object.__setattr__(self, "maps", tuple(self.maps))

    @property
    def dim(self) -> int:
        return self.maps[0].dim

    @property
    def is_exact(self) -> bool:
        return all(m.is_exact for m in self.maps)

    @property
    def ratios(self) -> tuple:
        return tuple(m.ratio for m in self.maps)


def cantor_ifs() -> IFS:
    return IFS((similarity_1d(Fraction(1, 3), 0),
                similarity_1d(Fraction(1, 3), Fraction(2, 3))), name="cantor")


def full_interval_ifs() -> IFS:
    """Two half-scale maps whose attractor is all of [0,1] (Lebesgue control)."""
    return IFS((similarity_1d(Fraction(1, 2), 0),
                similarity_1d(Fraction(1, 2), Fraction(1, 2))), name="interval")


def sierpinski_ifs() -> IFS:
    half = Fraction(1, 2)
    corners = ((0, 0), (half, 0), (Fraction(1, 4), sqrt(3) / 4))
    maps = tuple(similarity_scale_2d(half, c) for c in corners)
    return IFS(maps, name="sierpinski")


def koch_ifs() -> IFS:
    """Four third-scale maps generating the Koch curve over [0,1] x {0}."""
    r = 1.0 / 3.0
    a = pi / 3.0
    maps = (
        similarity_scale_2d(r, (0.0, 0.0)),
        similarity_scale_2d(r, (1.0 / 3.0, 0.0), angle=a),
        similarity_scale_2d(r, (0.5, sqrt(3.0) / 6.0), angle=-a),
        similarity_scale_2d(r, (2.0 / 3.0, 0.0)),
    )
    return IFS(maps, name="koch")


IFS_PRESETS = {
    "cantor": cantor_ifs,
    "koch": koch_ifs,
    "sierpinski": sierpinski_ifs,
    "interval": full_interval_ifs,
}


@dataclass
class AttractorApprox:
    ifs: IFS
    depth: int
    seed: Ball
    cells: list  # (word over map indices, Ball)

    @property
    def max_cell_radius(self) -> float:
        return max(float(b.radius) for _, b in self.cells)


def _seed_invariant(ifs: IFS, seed: Ball) -> bool:
    return all(validate_containment(m.apply_ball(seed), seed) for m in ifs.maps)


def _invariant_seed(ifs: IFS, seed: Ball) -> Ball:
    """Double the seed radius (same center) until it contains its map images;
    an already-invariant seed is returned untouched."""
    r = seed.radius
    for _ in range(128):
        ball = Ball(seed.center, r)
        if _seed_invariant(ifs, ball):
            return ball
        r = r * 2
    raise ValueError("could not find an invariant seed ball")


def iterate_attractor(ifs: IFS, depth: int, seed: Ball,
                      cell_cap: int = 2_000_000) -> AttractorApprox:
    """Depth-n Hutchinson iteration: m^depth ball cells whose union contains
    the attractor.  The seed is enlarged automatically if it does not already
    contain its own images."""
    if len(ifs.maps) ** depth > cell_cap:
        raise ValueError(f"cell count {len(ifs.maps)**depth} exceeds cap {cell_cap}")
    seed = _invariant_seed(ifs, seed)
    cells = [((), seed)]
    for _ in range(depth):
        nxt = []
        for word, ball in cells:
            for k, m in enumerate(ifs.maps):
                # prepend so that cell(u + v) lies inside cell(u)
                nxt.append(((k,) + word, m.apply_ball(ball)))
        cells = nxt
    cells.sort(key=lambda wb: wb[0])
    return AttractorApprox(ifs=ifs, depth=depth, seed=seed, cells=cells)


def similarity_dimension(ifs: IFS) -> float:
    """The unique s with sum(ratio_i^s) = 1 (closed form for equal ratios)."""
    ratios = ifs.ratios
    first = ratios[0]
    if all(r == first for r in ratios):
        # log m / log(1/r); exact rationals feed log() without float division
        if isinstance(first, Fraction):
            inv = Fraction(first.denominator, first.numerator)
            return log(len(ratios)) / log(inv)
        return log(len(ratios)) / log(1.0 / float(first))
    lo, hi = 0.0, float(ifs.dim) + 1.0
    def excess(s):
        return sum(float(r) ** s for r in ratios) - 1.0
    while excess(hi) > 0:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Box:
    """Axis-aligned open box, the open-set-condition candidate."""
    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(a >= b for a, b in zip(self.lo, self.hi)):
            raise ValueError("degenerate box")
        object.__setattr__(self, "lo", tuple(self.lo))
        object.__setattr__(self, "hi", tuple(self.hi))


@dataclass(frozen=True)
class OSCResult:
    satisfied: bool
    exact: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.satisfied


def _image_box(m: Similarity, box: Box):
    """Bounding box of the image of a box (the exact image for signed
    permutation matrices, an outer approximation otherwise)."""
    d = m.dim
    los, his = [], []
    corners = itertools.product(*[(box.lo[k], box.hi[k]) for k in range(d)])
    pts = [m.apply_point(Point(tuple(c))).coords for c in corners]
    for i in range(d):
        vals = [p[i] for p in pts]
        los.append(min(vals))
        his.append(max(vals))
    return los, his


def _is_signed_permutation(theta) -> bool:
    for row in theta:
        nz = [v for v in row if v != 0]
        if len(nz) != 1 or abs(nz[0]) != 1:
            return False
    return True


def check_open_set_condition(ifs: IFS, candidate: Box) -> OSCResult:
    """Verify phi_i(U) inside U and pairwise disjoint images, for an open box U.

    Exact for rational data with signed-permutation rotation parts; otherwise
    the images are replaced by outer bounding boxes, which can only produce
    false negatives (flagged as non-exact)."""
    exact = ifs.is_exact and all(_is_signed_permutation(m.theta) for m in ifs.maps)
    boxes = [_image_box(m, candidate) for m in ifs.maps]
    for k, (lo, hi) in enumerate(boxes):
        inside = all(a >= b for a, b in zip(lo, candidate.lo)) and \
                 all(a <= b for a, b in zip(hi, candidate.hi))
        if not inside:
            return OSCResult(False, exact, f"image of map {k} leaves the box")
    for a in range(len(boxes)):
        for b in range(a + 1, len(boxes)):
            lo1, hi1 = boxes[a]
            lo2, hi2 = boxes[b]
            separated = any(h1 <= l2 or h2 <= l1
                            for l1, h1, l2, h2 in zip(lo1, hi1, lo2, hi2))
            if not separated:
                return OSCResult(False, exact,
                                 f"images of maps {a} and {b} may overlap")
    return OSCResult(True, exact)


@dataclass
class BoxCountFit:
    estimate: float
    intercept: float
    scales: list
    counts: list
    residuals: list
    r_squared: float


def box_count(approx: AttractorApprox, eps) -> int:
    """Number of eps-grid boxes whose intersection with the cell union has
    positive extent (touching only a gridline face does not count)."""
    eps = to_fraction(eps) if not isinstance(eps, float) else eps
    boxes = set()
    for _, ball in approx.cells:
        ranges = []
        for c in ball.center.coords:
            c = to_fraction(c)
            r = to_fraction(ball.radius)
            lo, hi = (c - r) / to_fraction(eps), (c + r) / to_fraction(eps)
            j_lo = lo.numerator // lo.denominator
            # exclusive upper: a cell ending exactly on a gridline stays left
            j_hi = -((-hi.numerator) // hi.denominator) - 1  # ceil(hi) - 1
            ranges.append(range(j_lo, max(j_lo, j_hi) + 1))
        boxes.update(itertools.product(*ranges))
    return len(boxes)


def box_counting_dimension(approx: AttractorApprox, scales: Sequence) -> BoxCountFit:
    """Least-squares slope of log N(eps) against log(1/eps).

    Scales must number at least 4 and span at least two decades relative to
    the cell size for the fit to be declared meaningful."""
    import numpy as np
    scales = [to_fraction(s) for s in scales]
    if len(scales) < 4:
        raise ValueError("need at least 4 scales")
    if max(scales) / min(scales) < 100:
        raise ValueError("scales must span at least two decades")
    counts = [box_count(approx, s) for s in scales]
    xs = np.array([log(1.0 / float(s)) for s in scales])
    ys = np.array([log(max(1, n)) for n in counts])
    slope, intercept = np.polyfit(xs, ys, 1)
    pred = slope * xs + intercept
    resid = (ys - pred).tolist()
    ss_res = float(np.sum((ys - pred) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return BoxCountFit(estimate=float(slope), intercept=float(intercept),
                       scales=[float(s) for s in scales], counts=counts,
                       residuals=resid, r_squared=r2)


def default_seed(ifs: IFS) -> Ball:
    """A convenient seed ball around the unit cell of the presets."""
    if ifs.dim == 1:
        return Ball(Point((Fraction(1, 2),)), Fraction(1, 2))
    center = Point(tuple([Fraction(1, 2)] * ifs.dim))
    return Ball(center, Fraction(1))
