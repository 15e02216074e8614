"""Bidegree (n, 1) curves on P^1 x P^1 and their theta-fiber invariants.

A curve D = {u*P(s,t) + v*Q(s,t) = 0} is the graph of the degree-n map
x -> [-Q(x) : P(x)].  Its intersection with the horizontal line over a point
a = [a0:a1] of the second factor is the root scheme of the fiber form
a0*P + a1*Q.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .binform import (
    BinaryForm,
    IntegerForm,
    ProjPoint,
    bf_gcd,
    bf_resultant,
    root_multiplicity_at,
    squarefree_decomposition,
    sylvester_matrix,
)
from .linalg import bareiss_det

REGULAR = "regular"
IRREGULAR = "irregular"


class NotSmoothError(ValueError):
    """The graph has a vertical component, so the invariant is undefined."""


@dataclass(frozen=True)
class GraphCurve:
    """The divisor u*P + v*Q = 0 of bidegree (n, 1)."""

    n: int
    P: BinaryForm
    Q: BinaryForm
    smooth: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.P.degree != self.n or self.Q.degree != self.n:
            raise ValueError(f"P and Q must both have degree n = {self.n}")
        if self.P.is_zero() and self.Q.is_zero():
            raise ValueError("P and Q cannot both vanish")
        object.__setattr__(self, "smooth", bf_resultant(self.P, self.Q) != 0)

    @classmethod
    def from_coeffs(cls, P: Sequence, Q: Sequence) -> "GraphCurve":
        if len(P) != len(Q):
            raise ValueError("P and Q need the same number of coefficients")
        n = len(P) - 1
        return cls(n, BinaryForm(n, P), BinaryForm(n, Q))

    @classmethod
    def from_vector(cls, v: Sequence, n: int) -> "GraphCurve":
        """Split a length 2n+2 coefficient vector into (P, Q)."""
        if len(v) != 2 * n + 2:
            raise ValueError(f"expected {2 * n + 2} coefficients")
        return cls(n, BinaryForm(n, v[: n + 1]), BinaryForm(n, v[n + 1:]))

    def to_vector(self) -> list[Fraction]:
        return list(self.P.coeffs) + list(self.Q.coeffs)

    def vertical_components(self) -> BinaryForm:
        """gcd(P, Q); its roots x give the vertical lines {x} x P^1 inside D."""
        return bf_gcd(self.P, self.Q)

    def point_over(self, x) -> ProjPoint:
        """The unique point of the second factor lying on D over x (smooth D)."""
        return ProjPoint(-self.Q(x), self.P(x))

    def scaled(self, c) -> "GraphCurve":
        return GraphCurve(self.n, self.P.scale(c), self.Q.scale(c))

    def swapped(self) -> "GraphCurve":
        """Image under the coordinate change s <-> t."""
        return GraphCurve(self.n, BinaryForm(self.n, self.P.coeffs[::-1]),
                          BinaryForm(self.n, self.Q.coeffs[::-1]))

    def to_json(self) -> dict:
        return {"n": self.n, "P": self.P.to_json(), "Q": self.Q.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "GraphCurve":
        if not isinstance(data, dict) or not {"n", "P", "Q"} <= data.keys():
            raise ValueError("curve must be an object with 'n', 'P' and 'Q'")
        return cls(data["n"], BinaryForm.from_json(data["P"]), BinaryForm.from_json(data["Q"]))


@dataclass(frozen=True)
class ThetaConfig:
    """Four distinct points a_1..a_4 of the second factor; D_i is the line over a_i."""

    thetas: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(*p) for p in self.thetas)
        if len(pts) != 4:
            raise ValueError("exactly four thetas are required")
        if len(set(pts)) != 4:
            raise ValueError("thetas must be pairwise distinct")
        object.__setattr__(self, "thetas", pts)

    def __getitem__(self, i: int) -> ProjPoint:
        """1-based access, matching theta indices 1..4."""
        if not 1 <= i <= 4:
            raise IndexError("theta index must be in 1..4")
        return self.thetas[i - 1]

    def __iter__(self):
        return iter(self.thetas)

    def to_json(self) -> dict:
        return {"thetas": [p.to_json() for p in self.thetas]}

    @classmethod
    def from_json(cls, data: dict) -> "ThetaConfig":
        if not isinstance(data, dict) or "thetas" not in data:
            raise ValueError("theta config must be an object with 'thetas'")
        return cls(tuple(ProjPoint(*p) for p in data["thetas"]))


DEFAULT_THETAS = ThetaConfig((ProjPoint(1, 0), ProjPoint(0, 1), ProjPoint(1, 1), ProjPoint(1, -1)))


@dataclass(frozen=True)
class Profile:
    """Intersection multiplicities of D with one theta line, largest first."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(sorted((int(m) for m in self.multiplicities), reverse=True))
        if any(m < 1 for m in ms):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "multiplicities", ms)

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def length(self) -> int:
        return sum(1 for m in self.multiplicities if m >= 2)

    @property
    def reduced(self) -> tuple[int, ...]:
        return self.multiplicities[: self.length]

    @property
    def weight(self) -> int:
        return self.n - len(self.multiplicities)

    @property
    def non_decreasing(self) -> tuple[int, ...]:
        return self.multiplicities[::-1]

    @property
    def counts(self) -> dict[int, int]:
        """The raw multiset: multiplicity -> number of points."""
        return dict(sorted(Counter(self.multiplicities).items()))

    def to_json(self) -> dict:
        return {"multiplicities": list(self.multiplicities), "length": self.length,
                "reduced": list(self.reduced), "weight": self.weight}


@dataclass(frozen=True)
class Classification:
    kind: str
    per_theta_weights: tuple[int, int, int, int]
    total_weight: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "weights": list(self.per_theta_weights), "total": self.total_weight}

    @classmethod
    def from_json(cls, data: dict) -> "Classification":
        return cls(data["kind"], tuple(data["weights"]), data["total"])


def _require_smooth(D: GraphCurve) -> None:
    if not D.smooth:
        raise NotSmoothError("graph has vertical component")


def is_smooth(D: GraphCurve) -> bool:
    return D.smooth


def fiber_form(D: GraphCurve, a) -> BinaryForm:
    """a0*P + a1*Q, whose roots are D intersected with the line over a."""
    if not isinstance(a, ProjPoint):
        a = ProjPoint(*a)
    f = D.P.scale(a.x0) + D.Q.scale(a.x1)
    if f.is_zero():
        raise NotSmoothError(f"vertical component at fiber {a}")
    return f


def profile(D: GraphCurve, a) -> Profile:
    _require_smooth(D)
    sqf = squarefree_decomposition(fiber_form(D, a))
    return Profile(tuple(sqf.multiplicities()))


def weight(D: GraphCurve, a) -> int:
    return profile(D, a).weight


def weight_total(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> int:
    return sum(weight(D, a) for a in T)


def classify(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> Classification:
    weights = tuple(profile(D, a).weight for a in T)
    total = sum(weights)
    return Classification(IRREGULAR if total > 0 else REGULAR, weights, total)


def ramification_divisor(D: GraphCurve) -> BinaryForm:
    """Jacobian P_s*Q_t - P_t*Q_s of degree 2n-2.

    A root of multiplicity mu is a point with ramification index mu + 1 for
    the projection of D to the second factor.
    """
    if D.n < 1:
        raise ValueError("ramification needs n >= 1")
    _require_smooth(D)
    return D.P.diff_s() * D.Q.diff_t() - D.P.diff_t() * D.Q.diff_s()


def pencil_discriminant(D: GraphCurve) -> BinaryForm:
    """Discriminant of a0*P + a1*Q as a form of degree 2n-2 in (a0, a1).

    Res_(s,t)(F, dF/ds) is computed over Q[a0, a1] by Bareiss elimination
    with binary-form entries; it equals F(1, 0) times the discriminant, so
    that linear factor is divided out exactly.
    """
    _require_smooth(D)
    if D.n < 2:
        raise ValueError("pencil discriminant needs n >= 2")
    n = D.n
    den = 1
    for c in D.P.coeffs + D.Q.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    p = [int(c * den) for c in D.P.coeffs]
    q = [int(c * den) for c in D.Q.coeffs]
    # coefficient of s^k t^(n-k) in a0*P + a1*Q, as a linear form in (a0, a1)
    F = [IntegerForm(1, (q[k], p[k])) for k in range(n + 1)]
    Fs = [F[k] * k for k in range(1, n + 1)]
    res = bareiss_det(sylvester_matrix(F, Fs))
    lead = F[n]
    if not lead:
        raise NotSmoothError("vertical component at [1:0]")
    disc = (res // lead).to_form()
    if not disc:
        raise ArithmeticError("inseparable pencil")
    return disc.primitive()


def weight_at(D: GraphCurve, a) -> int:
    """Vanishing order of the pencil discriminant at a."""
    return root_multiplicity_at(pencil_discriminant(D), a)


@dataclass(frozen=True)
class RamificationReport:
    jacobian_degree: int
    jacobian_squarefree: bool
    discriminant_squarefree: bool
    per_theta_weights: tuple[int, int, int, int]
    total_weight: int
    ramification_count: int
    discriminant_count: int
    rh_ok: bool

    @property
    def weight_outside_thetas(self) -> int:
        return self.ramification_count - self.total_weight

    def to_json(self) -> dict:
        return {
            "jacobian_degree": self.jacobian_degree,
            "jacobian_squarefree": self.jacobian_squarefree,
            "discriminant_squarefree": self.discriminant_squarefree,
            "weights": list(self.per_theta_weights),
            "total": self.total_weight,
            "ramification_count": self.ramification_count,
            "discriminant_count": self.discriminant_count,
            "weight_outside_thetas": self.weight_outside_thetas,
            "rh_ok": self.rh_ok,
        }


def ramification_report(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> RamificationReport:
    J = ramification_divisor(D)
    disc = pencil_discriminant(D)
    j_sqf = squarefree_decomposition(J) if J.degree else None
    d_sqf = squarefree_decomposition(disc) if disc.degree else None
    weights = classify(D, T).per_theta_weights
    j_count = j_sqf.weighted_degree() if j_sqf else 0
    d_count = d_sqf.weighted_degree() if d_sqf else 0
    target = 2 * D.n - 2
    return RamificationReport(
        jacobian_degree=J.degree,
        jacobian_squarefree=j_sqf.is_squarefree() if j_sqf else True,
        discriminant_squarefree=d_sqf.is_squarefree() if d_sqf else True,
        per_theta_weights=weights,
        total_weight=sum(weights),
        ramification_count=j_count,
        discriminant_count=d_count,
        rh_ok=J.degree == target and j_count == target and d_count == target,
    )


def random_curve(n: int, bound: int, rng: random.Random) -> GraphCurve:
    """Curve with integer coefficients uniform in [-bound, bound] (never both zero)."""
    while True:
        P = [rng.randint(-bound, bound) for _ in range(n + 1)]
        Q = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if any(P) or any(Q):
            return GraphCurve.from_coeffs(P, Q)


def random_smooth_curve(n: int, bound: int, rng: random.Random) -> GraphCurve:
    while True:
        D = random_curve(n, bound, rng)
        if D.smooth:
            return D

