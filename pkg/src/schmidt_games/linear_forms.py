"""Lattice distances, badness quality, extended vectors, minors and windows.

Conventions.  An M x N matrix of form coefficients gamma_{ij} is identified
with a point of R^H (H = M*N, row-major).  Extended vectors live in R^L with
L = M + N:

    A_i = (gamma_{i1}, ..., gamma_{iN}, e_i block)      i = 1..M
    B_j = (gamma_{1j}, ..., gamma_{Mj}, e_j block)      j = 1..N

Integer witnesses X = (x, tail) pair a nonzero integer prefix with the tail
that nearly cancels the forms; any solution of a window system has form values
below 1/2, so tails only ever need the two integers nearest the negated form
value.

Exactness: rational matrices are enumerated in exact arithmetic (including the
window comparisons against powers R^e, done by cross-multiplying integer
powers); float matrices run in floats, which is the estimation path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, floor, inf, isqrt, log, sqrt, comb
from typing import Optional, Sequence

from .rationals import frac_part, nearest_int_dist, to_fraction


# --- distances ----------------------------------------------------------------

def dist_to_lattice(v: Sequence) -> object:
    """Sup-norm distance from a vector to the integer lattice, in [0, 1/2]."""
    return max((nearest_int_dist(c) for c in v), default=0)


def dist_to_lattice_lower(v: Sequence) -> object:
    """One-sided variant: sup-norm of fractional parts {c} (distance down to
    the lattice floor).  This is the convention the badness reports use; see
    ``badness_infimum``."""
    return max((frac_part(c) for c in v), default=0)


# --- matrices and extended vectors ---------------------------------------------

@dataclass(frozen=True)
class LinearFormsMatrix:
    entries: tuple  # tuple of M rows, each a tuple of N numbers

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @staticmethod
    def from_rows(rows) -> "LinearFormsMatrix":
        return LinearFormsMatrix(tuple(tuple(v) for v in rows))

    @staticmethod
    def from_point(coords, M: int, N: int) -> "LinearFormsMatrix":
        coords = tuple(coords)
        if len(coords) != M * N:
            raise ValueError("coordinate count does not match M*N")
        return LinearFormsMatrix(tuple(tuple(coords[i * N:(i + 1) * N])
                                       for i in range(M)))

    @property
    def M(self) -> int:
        return len(self.entries)

    @property
    def N(self) -> int:
        return len(self.entries[0])

    @property
    def H(self) -> int:
        return self.M * self.N

    @property
    def L(self) -> int:
        return self.M + self.N

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(v, float) for row in self.entries for v in row)

    def flat(self) -> tuple:
        return tuple(v for row in self.entries for v in row)

    def transpose(self) -> "LinearFormsMatrix":
        return LinearFormsMatrix(tuple(zip(*self.entries)))

    def row_extended(self, i: int) -> tuple:
        """A_i in R^L (1-based i)."""
        e = [0] * self.M
        e[i - 1] = 1
        return tuple(self.entries[i - 1]) + tuple(e)

    def col_extended(self, j: int) -> tuple:
        """B_j in R^L (1-based j)."""
        e = [0] * self.N
        e[j - 1] = 1
        return tuple(row[j - 1] for row in self.entries) + tuple(e)


@dataclass(frozen=True)
class ExtendedVectors:
    rows: tuple  # A_1..A_M
    cols: tuple  # B_1..B_N


def extended_vectors(A: LinearFormsMatrix) -> ExtendedVectors:
    return ExtendedVectors(
        rows=tuple(A.row_extended(i) for i in range(1, A.M + 1)),
        cols=tuple(A.col_extended(j) for j in range(1, A.N + 1)),
    )


@dataclass(frozen=True)
class IntegerWitness:
    vector: tuple  # in Z^L
    side: str      # "x": leading N entries nonzero prefix; "y": leading M

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(v) for v in self.vector))
        if self.side not in ("x", "y"):
            raise ValueError("side must be 'x' or 'y'")

    def prefix(self, A: LinearFormsMatrix) -> tuple:
        k = A.N if self.side == "x" else A.M
        return self.vector[:k]


def form_values(A: LinearFormsMatrix, w: IntegerWitness) -> tuple:
    """(|A_1.X|, ..., |A_M.X|) for an x-side witness, (|B_j.Y|) for y-side."""
    if len(w.vector) != A.L:
        raise ValueError("witness length must be M+N")
    if w.side == "x":
        vecs = [A.row_extended(i) for i in range(1, A.M + 1)]
    else:
        vecs = [A.col_extended(j) for j in range(1, A.N + 1)]
    return tuple(abs(sum(a * b for a, b in zip(v, w.vector))) for v in vecs)


# --- badness by exhaustive enumeration -----------------------------------------

def _canonical_int_vectors(dim: int, cap: int):
    """Nonzero integer vectors with sup-norm <= cap, one per {v,-v} pair
    (first nonzero entry positive), in lexicographic order."""
    rng = range(-cap, cap + 1)
    for v in itertools.product(rng, repeat=dim):
        for c in v:
            if c > 0:
                break
            if c < 0:
                v = None
                break
        else:
            continue  # all zero
        if v is not None:
            yield v


def _enumeration_size(dim: int, cap: int) -> int:
    return ((2 * cap + 1) ** dim - 1) // 2


class EnumerationLimit(RuntimeError):
    """Raised when a declared exhaustive-search cap would be exceeded."""


def badness_infimum(A: LinearFormsMatrix, x_cap: int, convention: str = "lower",
                    limit: int = 20_000_000):
    """Minimum of ||x||_inf^N * q(Ax)^M over integer x with 0 < ||x||_inf <= x_cap.

    The enumeration identifies x with -x (leading sign canonicalized).  Under
    the default one-sided convention, q measures each form value down to the
    lattice floor (sup of fractional parts); with convention="nearest" it is
    the textbook two-sided nearest-integer distance, under which the two
    members of a +-x pair are averaged into one by symmetry.  The one-sided
    reading makes the golden-ratio minima walk down the lower convergents
    toward 1/sqrt(5) instead of being frozen by the q=1 term.

    Returns (value, witness) where witness is the minimizing integer prefix x.
    """
    if x_cap < 1:
        raise ValueError("x_cap must be >= 1")
    if _enumeration_size(A.N, x_cap) > limit:
        raise EnumerationLimit(
            f"{_enumeration_size(A.N, x_cap)} candidates exceed limit {limit}")
    measure = dist_to_lattice_lower if convention == "lower" else dist_to_lattice
    if convention not in ("lower", "nearest"):
        raise ValueError("convention must be 'lower' or 'nearest'")
    best = None
    best_x = None
    for x in _canonical_int_vectors(A.N, x_cap):
        norm = max(abs(c) for c in x)
        rowvals = [sum(g * c for g, c in zip(row, x)) for row in A.entries]
        q = measure(rowvals)
        value = norm ** A.N * q ** A.M
        if best is None or value < best:
            best, best_x = value, x
            if best == 0:
                break
    return best, best_x


def badness_running_minima(A: LinearFormsMatrix, x_cap: int,
                           convention: str = "lower"):
    """(cap, running minimum, witness) at every cap where the minimum improves.

    Only meaningful for N = 1 (a single integer multiplier); used by the
    reporting path.
    """
    if A.N != 1:
        raise ValueError("running minima are reported for N = 1 only")
    measure = dist_to_lattice_lower if convention == "lower" else dist_to_lattice
    out = []
    best = None
    for q in range(1, x_cap + 1):
        rowvals = [row[0] * q for row in A.entries]
        value = q ** A.N * measure(rowvals) ** A.M
        if best is None or value < best:
            best = value
            out.append((q, value, (q,)))
    return out


# --- minor vectors and their determinants ---------------------------------------

def _det(matrix) -> object:
    """Determinant by Laplace expansion (exact on exact inputs; sizes are tiny)."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = 0
    first = matrix[0]
    rest = matrix[1:]
    for col, a in enumerate(first):
        if a == 0:
            continue
        sub = [row[:col] + row[col + 1:] for row in rest]
        term = a * _det(sub)
        total = total + term if col % 2 == 0 else total - term
    return total


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def check_orthonormal(ys: Sequence, tol: float = 1e-10) -> None:
    """Raise unless the vectors are pairwise orthonormal to the tolerance."""
    for i, u in enumerate(ys):
        for j, v in enumerate(ys):
            want = 1 if i == j else 0
            got = _dot(u, v)
            if abs(float(got) - want) > tol:
                raise ValueError(
                    f"vectors are not orthonormal: <Y{i+1},Y{j+1}> = {float(got)}")


@dataclass(frozen=True)
class MinorVector:
    nu: int
    entries: tuple  # absolute minor determinants, lexicographic index order

    @property
    def norm(self) -> float:
        return sqrt(sum(float(e) * float(e) for e in self.entries))


def _pairing_matrix(vectors, ys, row_idx, col_idx):
    return [[_dot(vectors[i], ys[j]) for j in col_idx] for i in row_idx]


def minor_vector(A: LinearFormsMatrix, ys: Sequence, nu: int,
                 primed: bool = False) -> MinorVector:
    """All C(n,nu)^2 absolute nu x nu minors of the pairing (B_i . Y_j).

    ``primed`` switches to the A_i side with M-indexing.  Index subsets are
    ordered lexicographically; nu in {-1, 0} gives the one-dimensional vector
    (1).  Ys must be orthonormal in R^L (checked to 1e-10).
    """
    n = A.M if primed else A.N
    if nu in (-1, 0):
        return MinorVector(nu, (1,))
    if not 1 <= nu <= n:
        raise ValueError(f"nu must lie in -1..{n}")
    if len(ys) < n:
        raise ValueError(f"need {n} orthonormal vectors")
    check_orthonormal(ys)
    if primed:
        vectors = [A.row_extended(i) for i in range(1, A.M + 1)]
    else:
        vectors = [A.col_extended(j) for j in range(1, A.N + 1)]
    combos = list(itertools.combinations(range(n), nu))
    entries = []
    for rows in combos:
        for cols in combos:
            entries.append(abs(_det(_pairing_matrix(vectors, ys, rows, cols))))
    return MinorVector(nu, tuple(entries))


def mean_value_constant(N: int) -> int:
    """C = N * max_nu C(N, nu), the minor-vector Lipschitz factor."""
    return N * max(comb(N, nu) for nu in range(N + 1))


@dataclass(frozen=True)
class GridBound:
    """Grid maximum plus a Lipschitz over-approximation gap: the true sup lies
    in [value, value + gap]."""
    value: float
    gap: float

    @property
    def upper(self) -> float:
        return self.value + self.gap


def ball_grid(center: Sequence, radius: float, depth: int):
    """Deterministic dyadic grid inside a Euclidean ball; grids are nested in
    depth.  Always contains the center."""
    center = [float(c) for c in center]
    r = float(radius)
    steps = 2 ** depth
    axes = [[c + r * (2 * j - steps) / steps for j in range(steps + 1)]
            for c in center]
    pts = []
    for combo in itertools.product(*axes):
        if sum((a - b) ** 2 for a, b in zip(combo, center)) <= r * r:
            pts.append(combo)
    if tuple(center) not in pts:
        pts.append(tuple(center))
    return pts


def minor_sup_on_ball(center_matrix: LinearFormsMatrix, radius, ys, nu: int,
                      grid_depth: int = 2, primed: bool = False) -> GridBound:
    """Grid estimate of M_nu(B) = max over the ball of |M_nu(A)|.

    The ball lives in R^H around the given matrix.  Reported with a
    Lipschitz-based gap so consumers can use [value, value+gap] as a bracket.
    """
    if nu in (-1, 0):
        return GridBound(1.0, 0.0)
    M, N = center_matrix.M, center_matrix.N
    r = float(radius)
    if r == 0:
        return GridBound(minor_vector(center_matrix, ys, nu, primed).norm, 0.0)
    best = 0.0
    prev_best = 0.0
    for pt in ball_grid(center_matrix.flat(), r, grid_depth):
        A = LinearFormsMatrix.from_point(pt, M, N)
        best = max(best, minor_vector(A, ys, nu, primed).norm)
        prev_best = max(prev_best, minor_vector(A, ys, nu - 1, primed).norm)
    h = 2.0 * r / (2 ** grid_depth)
    cover = h * sqrt(M * N)
    gap = 2.0 * mean_value_constant(N if not primed else M) * cover * prev_best
    return GridBound(best, gap)


def d_nu(A: LinearFormsMatrix, ys: Sequence, nu: int):
    """Leading nu x nu pairing determinant det(B_i . Y_j), 1 <= i,j <= nu."""
    if not 1 <= nu <= A.N:
        raise ValueError("nu out of range")
    vectors = [A.col_extended(j) for j in range(1, nu + 1)]
    return _det([[_dot(b, ys[j]) for j in range(nu)] for b in vectors])


def grad_d_nu(A: LinearFormsMatrix, ys: Sequence, nu: int) -> tuple:
    """Gradient of d_nu with respect to the gamma_{ij}, flattened row-major.

    d_nu is multilinear in the first nu columns of the matrix; entry (j,l) of
    the pairing depends on gamma_{aj} through Y_l[a], so the cofactor
    expansion gives the partials directly.
    """
    if not 1 <= nu <= A.N:
        raise ValueError("nu out of range")
    vectors = [A.col_extended(j) for j in range(1, nu + 1)]
    m = [[_dot(b, ys[j]) for j in range(nu)] for b in vectors]
    cof = [[0] * nu for _ in range(nu)]
    for i in range(nu):
        for j in range(nu):
            sub = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            sign = 1 if (i + j) % 2 == 0 else -1
            cof[i][j] = sign * _det(sub)
    grad = [0.0] * A.H
    for j in range(nu):           # column index of the matrix, 0-based
        for a in range(A.M):      # row index, 0-based
            grad[a * A.N + j] = sum(cof[j][l] * ys[l][a] for l in range(nu))
    return tuple(grad)


# --- exact powers of R and the stage windows ------------------------------------

@dataclass(frozen=True)
class Power:
    """R^exponent with R rational > 1 and a rational exponent.

    Comparisons against rationals are exact: v < R^(p/q) iff v^q < R^p, done on
    integers.  Floats fall back to logarithms only in ``__float__``.
    """
    base: Fraction
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base", to_fraction(self.base))
        object.__setattr__(self, "exponent", to_fraction(self.exponent))
        if self.base <= 1:
            raise ValueError("base must exceed 1")

    def __float__(self) -> float:
        try:
            return exp(float(self.exponent) * log(float(self.base)))
        except OverflowError:
            return inf

    def cmp(self, value) -> int:
        """Sign of (value - R^exponent), computed exactly for rational value."""
        if isinstance(value, float):
            value = to_fraction(value)
        else:
            value = to_fraction(value)
        if value <= 0:
            return -1
        p = self.exponent.numerator
        q = self.exponent.denominator
        lhs = value ** q
        rhs = self.base ** p
        if lhs < rhs:
            return -1
        if lhs > rhs:
            return 1
        return 0

    def admits_below(self, value) -> bool:
        """True iff value < R^exponent (exact)."""
        return self.cmp(value) < 0

    def scaled(self, extra_exponent) -> "Power":
        return Power(self.base, self.exponent + to_fraction(extra_exponent))

    def int_cap_below(self) -> int:
        """Largest integer n with n < R^exponent (0 when the power is <= 1)."""
        f = float(self)
        n = max(0, floor(f) + 2)
        while n > 0 and not self.admits_below(n):
            n -= 1
        return n


@dataclass(frozen=True)
class TheoremSchedule:
    """Stage bookkeeping: R > 1, lambda = N/L, delta = R^{-N L^2} and its
    transpose-side twin delta^T = R^{-M L^2}."""
    R: Fraction
    M: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "R", to_fraction(self.R))
        if self.R <= 1:
            raise ValueError("R must exceed 1")

    @property
    def L(self) -> int:
        return self.M + self.N

    @property
    def lam(self) -> Fraction:
        return Fraction(self.N, self.L)

    @property
    def delta(self) -> Power:
        return Power(self.R, -self.N * self.L ** 2)

    @property
    def delta_T(self) -> Power:
        return Power(self.R, -self.M * self.L ** 2)


@dataclass(frozen=True)
class StageWindows:
    stage: int
    x_norm_bound: Power       # 0 < ||x||_inf < this
    x_form_bound: Power       # ||A(X)||_inf < this
    y_norm_bound: Power       # 0 < ||y||_inf < this
    y_form_bound: Power       # ||B(Y)||_inf < this
    x_radius_threshold: Power  # balls below this radius must kill the x-window
    y_radius_threshold: Power  # and this one the y-window


def schedule_windows(s: TheoremSchedule, i: int) -> StageWindows:
    if i < 0:
        raise ValueError("stage must be >= 0")
    M, N, L, lam = s.M, s.N, s.L, s.lam
    dx = -N * L ** 2
    dy = -M * L ** 2
    return StageWindows(
        stage=i,
        x_norm_bound=Power(s.R, dx + M * (lam + i)),
        x_form_bound=Power(s.R, dx - N * (lam + i) - M),
        y_norm_bound=Power(s.R, dy + N * (1 + i)),
        y_form_bound=Power(s.R, dy - M * (1 + i) - N),
        x_radius_threshold=Power(s.R, -L * (lam + i)),
        y_radius_threshold=Power(s.R, -L * (1 + i)),
    )


def _nearest_tails(value):
    """The two integers nearest -value (one when -value is an exact integer)."""
    v = -value
    if isinstance(v, float):
        lo = floor(v)
    else:
        v = to_fraction(v)
        lo = v.numerator // v.denominator
    cands = {lo, lo + 1}
    return sorted(cands)


def _window_solutions_side(A: LinearFormsMatrix, window: StageWindows,
                           side: str, limit: int):
    if side == "x":
        dim, nforms = A.N, A.M
        norm_bound, form_bound = window.x_norm_bound, window.x_form_bound
        vecs = [A.row_extended(i) for i in range(1, A.M + 1)]
    else:
        dim, nforms = A.M, A.N
        norm_bound, form_bound = window.y_norm_bound, window.y_form_bound
        vecs = [A.col_extended(j) for j in range(1, A.N + 1)]
    cap = norm_bound.int_cap_below()
    if cap == 0:
        return
    if _enumeration_size(dim, cap) > limit:
        raise EnumerationLimit(
            f"window enumerates {_enumeration_size(dim, cap)} prefixes > {limit}")
    exact = A.is_exact
    for prefix in _canonical_int_vectors(dim, cap):
        if side == "x":
            formvals = [sum(row[j] * prefix[j] for j in range(dim))
                        for row in A.entries]
        else:
            formvals = [sum(A.entries[i][j] * prefix[i] for i in range(dim))
                        for j in range(A.N)]
        tails = []
        ok = True
        for v in formvals:
            good = [t for t in _nearest_tails(v)
                    if (form_bound.admits_below(abs(v + t)) if exact
                        else abs(v + t) < float(form_bound))]
            if not good:
                ok = False
                break
            tails.append(good)
        if not ok:
            continue
        for tail in itertools.product(*tails):
            yield IntegerWitness(tuple(prefix) + tail, side)


def window_has_solution(A: LinearFormsMatrix, window: StageWindows,
                        side: str = "x", limit: int = 2_000_000
                        ) -> Optional[IntegerWitness]:
    """First integer witness of the stage window system, or None.

    The integer tail only needs the two integers nearest each negated form
    value: any solution has form values below 1/2.
    """
    for w in _window_solutions_side(A, window, side, limit):
        return w
    return None


def window_solutions(A: LinearFormsMatrix, window: StageWindows,
                     side: str = "y", limit: int = 2_000_000) -> list:
    """All window witnesses on the requested side (sign-canonicalized)."""
    return list(_window_solutions_side(A, window, side, limit))


def integer_rank(vectors) -> int:
    """Exact rank of a family of integer (or rational) vectors."""
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        lead = rows[0]
        for r in rows[1:]:
            if r[col] != 0:
                f = r[col] / lead[col]
                for k in range(col, ncols):
                    r[k] -= f * lead[k]
        rows = rows[1:]
        rank += 1
        col += 1
    return rank


def solution_space_rank(As, window: StageWindows, side: str = "y",
                        limit: int = 2_000_000) -> int:
    """Rank of the span of witnesses valid at every matrix in ``As``.

    ``As`` may be a single matrix or an iterable (grid samples of a ball); a
    witness counts only if it solves the window system at all of them.
    """
    if isinstance(As, LinearFormsMatrix):
        As = [As]
    As = list(As)
    common = None
    for A in As:
        found = {w.vector for w in _window_solutions_side(A, window, side, limit)}
        common = found if common is None else (common & found)
        if not common:
            return 0
    return integer_rank(sorted(common))


def final_badness_bound(s: TheoremSchedule) -> Power:
    """The guaranteed badness constant delta^L * R^{-NM - M^2} (as an exact
    power of R; float() it for reporting)."""
    expo = (-s.N * s.L ** 2) * s.L - s.N * s.M - s.M ** 2
    return Power(s.R, expo)


# --- named constants record -----------------------------------------------------

def alpha1_upper_bound(psi: float, epsilon0: float, N: int,
                       C3_min: Optional[float], C4: Optional[float]) -> float:
    """Upper bound that sqrt(alpha1) must stay below, from the checkable parts
    of the smallness constraint; None entries are skipped."""
    psi_N = (epsilon0 / 2) ** N * psi
    mx = max(comb(N, nu) for nu in range(N + 1))
    cands = [0.5, 0.25 * psi_N * epsilon0 / (N * mx)]
    if C3_min is not None:
        cands.append(C3_min)
    if C4 is not None:
        cands.append((15.0 / 32.0) * C4 / psi)
    return min(cands)


@dataclass
class TheoremConstants:
    """User-supplied constants of the existential lemmas, plus derived pieces.

    The proofs only assert these exist; running the machinery requires
    concrete values, so they are configuration with validated inequalities.
    """
    M: int
    N: int
    sigma: Optional[float] = None
    psi: float = 1.0
    epsilon0: float = 0.5
    K: Optional[float] = None
    delta: Optional[float] = None
    alpha1: Optional[float] = None
    alpha2: Optional[float] = None
    mu: tuple = ()          # mu_0 .. mu_N
    c: tuple = ()           # c_{nu-1} floor factors
    C1: Optional[float] = None
    C2: Optional[float] = None
    C3_min: Optional[float] = None
    C4: Optional[float] = None

    @property
    def L(self) -> int:
        return self.M + self.N

    def psi_nu(self, nu: int) -> float:
        return (self.epsilon0 / 2) ** nu * self.psi

    @staticmethod
    def psi_default(L: int, epsilon0: float) -> float:
        """The corollary-level choice L * sqrt(L) * (2/epsilon0)^L."""
        return L * sqrt(L) * (2.0 / epsilon0) ** L

    @staticmethod
    def sigma_from_points(points) -> float:
        """3 * max Euclidean norm over a sample of the support."""
        return 3.0 * max(sqrt(sum(float(c) ** 2 for c in p)) for p in points)

    def validate(self) -> None:
        if not 0 < self.epsilon0 < 1:
            raise ValueError("epsilon0 must lie in (0,1)")
        if self.K is not None and self.delta is not None:
            if self.K * self.epsilon0 ** self.delta >= 0.5:
                raise ValueError("epsilon0 too large: K*eps0^delta must be < 1/2")
        if self.alpha1 is not None:
            bound = alpha1_upper_bound(self.psi, self.epsilon0, self.N,
                                       self.C3_min, self.C4)
            if sqrt(self.alpha1) >= bound:
                raise ValueError(
                    f"sqrt(alpha1) = {sqrt(self.alpha1):.6g} must be below {bound:.6g}")


def quality_floor_on_interval(lo, hi, qmax: int) -> Fraction:
    """Exact lower bound of q * <q x> (nearest-integer distance) over all
    x in [lo, hi] and all integers 1 <= q <= qmax.

    Zero exactly when some q*[lo, hi] contains an integer.
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    best = None
    for q in range(1, qmax + 1):
        a, b = q * lo, q * hi
        n = a.numerator // a.denominator  # floor(a)
        if n + 1 <= b:
            return Fraction(0)  # an integer falls inside q*[lo, hi]
        d = min(a - n, n + 1 - b)
        val = q * d
        if best is None or val < best:
            best = val
    return best


def default_quality_cap_rule(radius) -> int:
    """Denominator cap growing like radius^(-1/2); scaled down by 8 so that
    distinct capped fractions are at least 64*radius apart and at most one can
    threaten any one ball."""
    r = to_fraction(radius)
    if r >= 1:
        return 1
    return max(1, isqrt(int(1 / r)) // 8)
