"""Fat-point conditions on |O(n,1)| and constructors for weight strata.

The coefficient space of (P, Q) has dimension 2n+2.  A fat point (m*x, D_i)
asks the fiber form a0*P + a1*Q over the theta a_i = [a0:a1] to vanish to
order m at x; each order contributes one linear functional (a Taylor
coefficient in the affine chart around x).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .binform import ProjPoint, root_multiplicity_at
from .graph import (
    DEFAULT_THETAS,
    Classification,
    GraphCurve,
    ThetaConfig,
    classify,
    fiber_form,
    profile,
)
from .linalg import nullspace, primitive_integer_vector, rank

DEFAULT_BOUND = 100
DEFAULT_ATTEMPTS = 64
POINT_BOUND = 10


class LinearSystemError(ValueError):
    pass


class GeneralMemberError(RuntimeError):
    """Rejection sampling ran out of attempts; ``diagnostics`` describes the last try."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class DimensionAnomaly(ArithmeticError):
    pass


@dataclass(frozen=True)
class FatPoint:
    theta: int
    x: ProjPoint
    m: int

    def __post_init__(self):
        if self.theta not in (1, 2, 3, 4):
            raise LinearSystemError("theta index must be in 1..4")
        if not isinstance(self.x, ProjPoint):
            object.__setattr__(self, "x", ProjPoint(*self.x))
        if self.m < 1:
            raise LinearSystemError("multiplicity must be positive")

    def to_json(self) -> dict:
        return {"theta": self.theta, "x": self.x.to_json(), "m": self.m}


@dataclass(frozen=True)
class FatPointScheme:
    points: tuple[FatPoint, ...] = ()

    def __post_init__(self):
        pts = tuple(p if isinstance(p, FatPoint) else FatPoint(*p) for p in self.points)
        keys = [(p.theta, p.x) for p in pts]
        if len(set(keys)) != len(keys):
            raise LinearSystemError("fat points must have distinct (theta, x) supports")
        object.__setattr__(self, "points", pts)

    @property
    def degree(self) -> int:
        return sum(p.m for p in self.points)

    def thetas(self) -> set[int]:
        return {p.theta for p in self.points}

    def on_theta(self, i: int) -> list[FatPoint]:
        return [p for p in self.points if p.theta == i]

    def union(self, other: "FatPointScheme") -> "FatPointScheme":
        return FatPointScheme(self.points + other.points)

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "FatPointScheme":
        if not isinstance(data, dict) or "points" not in data:
            raise ValueError("scheme must be an object with 'points'")
        return cls(tuple(FatPoint(p["theta"], ProjPoint(*p["x"]), p["m"]) for p in data["points"]))


@dataclass(frozen=True)
class ConditionMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int
    rank: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rank", rank(self.rows) if self.rows else 0)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols


def taylor_functional(degree: int, x: ProjPoint, j: int) -> list[Fraction]:
    """Weights w_k with sum_k w_k c_k = j-th Taylor coefficient at x of sum c_k s^k t^(d-k).

    Chart u = s/t unless x = [1:0], where v = t/s is used.
    """
    if x.x1 == 0:
        return [Fraction(1 if k == degree - j else 0) for k in range(degree + 1)]
    u = Fraction(x.x0, x.x1)
    return [Fraction(comb(k, j)) * u ** (k - j) if k >= j else Fraction(0) for k in range(degree + 1)]


def condition_matrix(Z: FatPointScheme, n: int, T: ThetaConfig = DEFAULT_THETAS) -> ConditionMatrix:
    if n < 1:
        raise LinearSystemError("n must be positive")
    rows = []
    for pt in Z.points:
        if pt.m > n + 1:
            raise LinearSystemError("condition exceeds fiber degree")
        a = T[pt.theta]
        for j in range(pt.m):
            w = taylor_functional(n, pt.x, j)
            rows.append(tuple([a.x0 * c for c in w] + [a.x1 * c for c in w]))
    return ConditionMatrix(tuple(rows), 2 * n + 2)


def h0(Z: FatPointScheme, n: int, T: ThetaConfig = DEFAULT_THETAS) -> int:
    """dim H^0(I_Z(n,1)) = 2n+2 - rank of the conditions."""
    return 2 * n + 2 - condition_matrix(Z, n, T).rank


def kernel_basis(Z: FatPointScheme, n: int, T: ThetaConfig = DEFAULT_THETAS) -> list[list[int]]:
    """Primitive integer basis of the coefficient vectors (P | Q) satisfying Z."""
    M = condition_matrix(Z, n, T)
    basis = nullspace(M.rows, M.ncols)
    if not basis:
        raise LinearSystemError("empty linear system")
    return [primitive_integer_vector(v) for v in basis]


def _diagnose(D: GraphCurve, Z: FatPointScheme, T: ThetaConfig) -> list[str]:
    if not D.smooth:
        return ["not smooth"]
    problems = []
    for pt in Z.points:
        got = root_multiplicity_at(fiber_form(D, T[pt.theta]), pt.x)
        if got != pt.m:
            problems.append(f"multiplicity {got} != {pt.m} at {pt.x} on theta {pt.theta}")
    for i in range(1, 5):
        ms = [pt.m for pt in Z.on_theta(i)]
        want = tuple(sorted(ms + [1] * (D.n - sum(ms)), reverse=True))
        got = profile(D, T[i]).multiplicities
        if got != want:
            problems.append(f"theta {i} profile {got} != {want}")
    return problems


def general_member(
    Z: FatPointScheme,
    n: int,
    seed=0,
    max_attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    T: ThetaConfig = DEFAULT_THETAS,
) -> GraphCurve:
    """Random smooth member of |I_Z(n,1)| with exactly the prescribed contact.

    Checked: smoothness, the multiplicity at every point of Z is exactly the
    prescribed one, and every theta line meets the curve transversally away
    from Z.
    """
    basis = kernel_basis(Z, n, T)
    rng = random.Random(seed)
    diagnostics: dict = {}
    for attempt in range(1, max_attempts + 1):
        lam = [0] * len(basis)
        while not any(lam):
            lam = [rng.randint(-bound, bound) for _ in basis]
        v = [sum(l * b[k] for l, b in zip(lam, basis)) for k in range(2 * n + 2)]
        D = GraphCurve.from_vector(primitive_integer_vector(v), n)
        problems = _diagnose(D, Z, T)
        if not problems:
            return D
        diagnostics = {"attempt": attempt, "curve": D.to_json(), "problems": problems}
    raise GeneralMemberError("no general member found", diagnostics)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Construction:
    """A witness curve for a stratum together with its rank certificate."""

    curve: GraphCurve
    scheme: FatPointScheme
    classification: Classification
    deg_Z: int
    rank: int
    h0: int
    moving_points: int
    codimension_bound: int | None = None

    @property
    def codimension(self) -> int:
        return self.rank - self.moving_points

    @property
    def certificate(self) -> dict:
        return {"deg_Z": self.deg_Z, "rank": self.rank, "h0": self.h0}

    def to_json(self) -> dict:
        out = {
            "curve": self.curve.to_json(),
            "scheme": self.scheme.to_json(),
            "classification": self.classification.to_json(),
            "certificate": self.certificate,
            "codimension": self.codimension,
        }
        if self.codimension_bound is not None:
            out["codimension_bound"] = self.codimension_bound
            out["bound_attained"] = self.codimension == self.codimension_bound
        return out


def random_point(rng: random.Random, bound: int = POINT_BOUND) -> ProjPoint:
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if a or b:
            return ProjPoint(a, b)


def distinct_points(count: int, rng: random.Random, bound: int = POINT_BOUND) -> list[ProjPoint]:
    pts: list[ProjPoint] = []
    while len(pts) < count:
        p = random_point(rng, bound)
        if p not in pts:
            pts.append(p)
    return pts


def _build(Z: FatPointScheme, n: int, rng: random.Random, moving: int, T: ThetaConfig,
           max_attempts: int, codimension_bound: int | None = None) -> Construction:
    M = condition_matrix(Z, n, T)
    D = general_member(Z, n, seed=rng.getrandbits(64), max_attempts=max_attempts, T=T)
    return Construction(D, Z, classify(D, T), Z.degree, M.rank, 2 * n + 2 - M.rank, moving,
                        codimension_bound)


def _check_indices(indices: Sequence[int]) -> None:
    if any(i not in (1, 2, 3, 4) for i in indices):
        raise LinearSystemError("theta index must be in 1..4")
    if len(set(indices)) != len(indices):
        raise LinearSystemError("theta indices must be distinct")


def construct_profile(
    theta: int,
    reduced_profile: Iterable[int],
    n: int,
    seed=0,
    T: ThetaConfig = DEFAULT_THETAS,
    max_attempts: int = DEFAULT_ATTEMPTS,
) -> Construction:
    """Curve whose restricted profile at ``theta`` is ``reduced_profile``, transversal elsewhere."""
    ms = sorted((int(m) for m in reduced_profile), reverse=True)
    _check_indices([theta])
    if n < 2:
        raise LinearSystemError("n below theorem threshold")
    if not ms or any(m < 2 for m in ms):
        raise LinearSystemError("restricted profile entries must be at least 2")
    if sum(ms) > n:
        raise LinearSystemError("restricted profile exceeds the fiber degree n")
    rng = random.Random(seed)
    xs = distinct_points(len(ms), rng)
    Z = FatPointScheme(tuple(FatPoint(theta, x, m) for x, m in zip(xs, ms)))
    return _build(Z, n, rng, len(ms), T, max_attempts, codimension_bound=sum(ms) - len(ms))


def construct_tangency_stratum(
    pattern: Sequence[int],
    n: int,
    seed=0,
    T: ThetaConfig = DEFAULT_THETAS,
    max_attempts: int = DEFAULT_ATTEMPTS,
) -> Construction:
    """Simple tangency with each listed theta line and transversality to the others."""
    pattern = list(pattern)
    _check_indices(pattern)
    if len(pattern) > 3:
        raise LinearSystemError("at most three tangencies are supported")
    if n < 2 or (len(pattern) == 3 and n < 4):
        raise LinearSystemError("n below theorem threshold")
    rng = random.Random(seed)
    # a graph meets each vertical line once, so the tangency points need distinct x
    xs = distinct_points(len(pattern), rng)
    Z = FatPointScheme(tuple(FatPoint(i, x, 2) for i, x in zip(pattern, xs)))
    return _build(Z, n, rng, len(pattern), T, max_attempts)


def construct_max_weight(
    i1: int,
    i2: int,
    n: int,
    seed=0,
    T: ThetaConfig = DEFAULT_THETAS,
    max_attempts: int = DEFAULT_ATTEMPTS,
) -> Construction:
    """Curve with profile (n) at thetas i1 and i2, hence weight 2n-2."""
    _check_indices([i1, i2])
    if n < 2:
        raise LinearSystemError("n below theorem threshold")
    rng = random.Random(seed)
    p, q = distinct_points(2, rng)
    Z = FatPointScheme((FatPoint(i1, p, n), FatPoint(i2, q, n)))
    dim = h0(Z, n, T)
    if dim != 2:
        raise DimensionAnomaly(f"dimension anomaly: h0 = {dim}, expected 2")
    return _build(Z, n, rng, 2, T, max_attempts)
