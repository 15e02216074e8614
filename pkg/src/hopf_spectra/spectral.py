"""Invariants of the spectral double cover of a smooth graph.

The cover is branched over the 4n points where D meets the theta lines.  At
a point of multiplicity m the local model is y^2 = x^m, an A_(m-1)
singularity with delta invariant floor(m/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binform import S as S_FORM, T as T_FORM, BinaryForm, ProjPoint, squarefree_decomposition
from .graph import (
    DEFAULT_THETAS,
    GraphCurve,
    NotSmoothError,
    Profile,
    ThetaConfig,
    fiber_form,
)


class ParityViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class SingularPoint:
    """Points of the spectral curve over the roots of one irreducible factor.

    The ``count`` conjugate points (the degree of ``factor``) all have the
    same type; ``point`` is set when the factor is linear.
    """

    theta: int
    factor: BinaryForm
    mult: int
    point: ProjPoint | None = None

    @property
    def count(self) -> int:
        return self.factor.degree

    @property
    def type(self) -> str:
        return f"A{self.mult - 1}"

    @property
    def delta(self) -> int:
        return self.mult // 2

    def to_json(self) -> dict:
        out = {"theta": self.theta, "factor": self.factor.to_json(), "mult": self.mult,
               "type": self.type, "delta": self.delta, "count": self.count}
        if self.point is not None:
            out["point"] = self.point.to_json()
        return out


@dataclass(frozen=True)
class SpectralData:
    n: int
    branch_profiles: tuple[Profile, Profile, Profile, Profile]
    singular_points: tuple[SingularPoint, ...]
    irreducible: bool = True  # always, for a smooth graph; never computed

    @property
    def branch_degree(self) -> int:
        return sum(p.n for p in self.branch_profiles)

    @property
    def arithmetic_genus(self) -> int:
        return 2 * self.n - 1

    @property
    def total_delta(self) -> int:
        return sum(sp.delta * sp.count for sp in self.singular_points)

    @property
    def geometric_genus(self) -> int:
        return self.arithmetic_genus - self.total_delta

    @property
    def smooth(self) -> bool:
        return not self.singular_points

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "branch_profiles": [p.to_json() for p in self.branch_profiles],
            "branch_degree": self.branch_degree,
            "singular_points": [sp.to_json() for sp in self.singular_points],
            "arithmetic_genus": self.arithmetic_genus,
            "geometric_genus": self.geometric_genus,
            "smooth": self.smooth,
            "irreducible": self.irreducible,
        }


def irreducible_factors(f: BinaryForm) -> list[BinaryForm]:
    """Monic irreducible factors over Q of a squarefree form."""
    import sympy

    out = []
    if f.s_order():
        out.append(S_FORM)
    if f.t_order():
        out.append(T_FORM)
    a, b = f.s_order(), f.t_order()
    core = f.coeffs[a:f.degree - b + 1]
    if len(core) > 1:
        x = sympy.Symbol("x")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(core)],
                          x, domain=sympy.QQ)
        for g, _ in poly.factor_list()[1]:
            coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
            out.append(BinaryForm(len(coeffs) - 1, coeffs).monic())
    return sorted(out, key=lambda g: (g.degree, g.coeffs))


def linear_root(g: BinaryForm) -> ProjPoint:
    # g = c0*t + c1*s vanishes at [-c0 : c1]
    c0, c1 = g.coeffs
    return ProjPoint(-c0, c1)


def spectral_invariants(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> SpectralData:
    if not D.smooth:
        raise NotSmoothError("graph has vertical component")
    profiles = []
    singular = []
    for i, a in enumerate(T, start=1):
        sqf = squarefree_decomposition(fiber_form(D, a))
        profiles.append(Profile(tuple(sqf.multiplicities())))
        for k, part in sqf.parts:
            if k < 2:
                continue
            for g in irreducible_factors(part):
                pt = linear_root(g) if g.degree == 1 else None
                singular.append(SingularPoint(i, g, k, pt))
    return SpectralData(D.n, tuple(profiles), tuple(singular))


def is_spectral_smooth(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> bool:
    return spectral_invariants(D, T).smooth


def odd_branch_count(S: SpectralData) -> int:
    """Distinct branch points whose multiplicity is odd."""
    return sum(1 for p in S.branch_profiles for m in p.multiplicities if m % 2)


def parity_genus(S: SpectralData) -> int:
    """Genus of the normalized cover: a double cover of P^1 branched at the odd points."""
    b_odd = odd_branch_count(S)
    if b_odd % 2:
        raise ParityViolation("parity violation")
    return b_odd // 2 - 1


def genus_parity_check(S: SpectralData) -> bool:
    return S.geometric_genus == parity_genus(S)
