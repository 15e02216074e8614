"""Property suites: the structural results as exact, checkable statements.

Each suite returns a SuiteResult; failures carry enough data (usually the
offending curve as JSON) to reproduce them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb

from .betti import betti_regular_locus
from .binform import root_multiplicity_at, squarefree_decomposition
from .graph import (
    DEFAULT_THETAS,
    REGULAR,
    classify,
    pencil_discriminant,
    profile,
    ramification_divisor,
    random_smooth_curve,
)
from .linalg import rank
from .linsys import (
    FatPoint,
    FatPointScheme,
    GeneralMemberError,
    condition_matrix,
    construct_max_weight,
    construct_profile,
    construct_tangency_stratum,
    distinct_points,
    h0,
    random_point,
    taylor_functional,
)
from .spectral import genus_parity_check, parity_genus, spectral_invariants
from .survey import survey

MAX_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    n: int
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def fail(self, **certificate) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(certificate)
        else:
            self.info["suppressed_failures"] = self.info.get("suppressed_failures", 0) + 1

    def to_json(self) -> dict:
        return {"suite": self.name, "n": self.n, "passed": self.passed, "checked": self.checked,
                "failures": self.failures, **self.info}


def _rng(seed, *key) -> random.Random:
    return random.Random(":".join(str(k) for k in (seed, *key)))


@lru_cache(maxsize=64)
def smooth_sample(n: int, count: int, bound: int, seed) -> tuple:
    rng = _rng(seed, "sample", n, bound)
    return tuple(random_smooth_curve(n, bound, rng) for _ in range(count))


def restricted_profiles(n: int) -> list[tuple[int, ...]]:
    """All non-increasing tuples of integers >= 2 with sum <= n."""
    out = []

    def extend(prefix, largest, remaining):
        if prefix:
            out.append(tuple(prefix))
        for m in range(min(largest, remaining), 1, -1):
            extend(prefix + [m], m, remaining - m)

    extend([], n, n)
    return sorted(out)


@dataclass(frozen=True)
class Built:
    kind: str  # "maxweight", "tangency" or "profile"
    key: tuple  # (i1, i2), the theta pattern, or (theta, reduced profile)
    result: object  # Construction, or the GeneralMemberError raised

    @property
    def ok(self) -> bool:
        return not isinstance(self.result, Exception)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.key}"


@lru_cache(maxsize=32)
def constructions(n: int, seed, profiles: bool = True) -> tuple[Built, ...]:
    """Every constructor target for this n."""
    out = []

    def attempt(kind, key, build):
        try:
            out.append(Built(kind, key, build()))
        except GeneralMemberError as exc:
            out.append(Built(kind, key, exc))

    for i1, i2 in permutations(range(1, 5), 2):
        attempt("maxweight", (i1, i2),
                lambda: construct_max_weight(i1, i2, n, seed=_seed(seed, "mw", n, i1, i2)))
    for size in (1, 2, 3):
        if size == 3 and n < 4:
            continue
        for pat in permutations(range(1, 5), size):
            attempt("tangency", pat,
                    lambda: construct_tangency_stratum(pat, n, seed=_seed(seed, "tan", n, pat)))
    if profiles:
        for theta in range(1, 5):
            for prof in restricted_profiles(n):
                attempt("profile", (theta, prof),
                        lambda: construct_profile(theta, prof, n, seed=_seed(seed, "prof", n, theta, prof)))
    return tuple(out)


def _seed(seed, *key) -> int:
    return _rng(seed, *key).getrandbits(64)


def _built(n: int, seed, profiles: bool = True) -> list[Built]:
    return [b for b in constructions(n, seed, profiles) if b.ok]


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_weight_bound(n: int, samples: int = 500, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("weight_bound", n)
    limit = 2 * n - 2
    for D in smooth_sample(n, samples, bound, seed):
        res.checked += 1
        w = classify(D).total_weight
        if w > limit:
            res.fail(curve=D.to_json(), weight=w)
    attained = []
    for b in _built(n, seed):
        res.checked += 1
        c = b.result
        w = c.classification.total_weight
        if w > limit:
            res.fail(label=b.label, curve=c.curve.to_json(), weight=w)
        if b.kind == "maxweight":
            attained.append(w == limit)
            if w != limit:
                res.fail(label=b.label, curve=c.curve.to_json(), weight=w, expected=limit)
    if not attained:
        res.fail(reason="no max-weight construction succeeded")
    res.info["max_weight_attained"] = all(attained) and bool(attained)
    return res


def suite_riemann_hurwitz(n: int, samples: int = 500, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("riemann_hurwitz", n)
    target = 2 * n - 2
    for D in smooth_sample(n, samples, bound, seed):
        res.checked += 1
        J = ramification_divisor(D)
        disc = pencil_discriminant(D)
        count = squarefree_decomposition(disc).weighted_degree() if disc.degree else 0
        if J.degree != target or not J or disc.degree != target or count != target:
            res.fail(curve=D.to_json(), jacobian_degree=J.degree, discriminant_count=count)
    return res


def suite_dual_weight(n: int, samples: int = 100, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("dual_weight", n)
    rng = _rng(seed, "dual", n)
    curves = list(smooth_sample(n, samples, bound, seed))
    curves += [b.result.curve for b in _built(n, seed, profiles=n <= 6)]
    for D in curves:
        disc = pencil_discriminant(D)
        points = list(DEFAULT_THETAS) + [random_point(rng, 50)]
        for a in points:
            res.checked += 1
            w = profile(D, a).weight
            order = root_multiplicity_at(disc, a)
            if w != order:
                res.fail(curve=D.to_json(), point=a.to_json(), weight=w, discriminant_order=order)
    return res


def suite_dichotomy(n: int, samples: int = 100, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("spectral_dichotomy", n)
    for D in smooth_sample(n, samples, bound, seed):
        res.checked += 1
        S = spectral_invariants(D)
        if S.smooth != (classify(D).kind == REGULAR):
            res.fail(curve=D.to_json(), spectral_smooth=S.smooth)
    for b in _built(n, seed):
        res.checked += 1
        S = spectral_invariants(b.result.curve)
        regular = b.result.classification.kind == REGULAR
        if S.smooth != regular or S.arithmetic_genus != 2 * n - 1:
            res.fail(label=b.label, curve=b.result.curve.to_json(), spectral_smooth=S.smooth)
    # irregular witnesses with a single tangency, one per theta
    singles = {b.key: b for b in constructions(n, seed) if b.kind == "tangency" and len(b.key) == 1}
    for i in range(1, 5):
        b = singles.get((i,))
        res.checked += 1
        if b is None or not b.ok:
            res.fail(label=f"tangency{(i,)}", reason="single-theta witness not constructed")
            continue
        S = spectral_invariants(b.result.curve)
        if S.smooth or S.arithmetic_genus != 2 * n - 1:
            res.fail(label=b.label, curve=b.result.curve.to_json(), spectral_smooth=S.smooth)
    return res


def suite_genus(n: int, samples: int = 100, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("genus_parity", n)
    curves = [("random", D) for D in smooth_sample(n, samples, bound, seed)]
    curves += [(b.label, b.result.curve) for b in _built(n, seed)]
    for label, D in curves:
        res.checked += 1
        S = spectral_invariants(D)
        g_delta = 2 * n - 1 - S.total_delta
        if g_delta != parity_genus(S) or not genus_parity_check(S) or S.geometric_genus < 1:
            res.fail(label=label, curve=D.to_json(), delta_genus=g_delta, parity_genus=parity_genus(S))
    return res


def _random_composition(total: int, rng: random.Random) -> list[int]:
    parts = []
    while total:
        m = rng.randint(1, total)
        parts.append(m)
        total -= m
    return parts


def evaluation_row(x, b, n: int) -> list:
    """The condition that (x, b) lies on the curve: b0*P(x) + b1*Q(x) = 0."""
    w = taylor_functional(n, x, 0)
    return [b.x0 * c for c in w] + [b.x1 * c for c in w]


def suite_interpolation(n: int, trials: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("interpolation", n)
    rng = _rng(seed, "interp", n)
    for _ in range(trials):
        theta = rng.randint(1, 4)
        ms = _random_composition(rng.randint(1, n), rng)
        xs = distinct_points(len(ms), rng)
        Z = FatPointScheme(tuple(FatPoint(theta, x, m) for x, m in zip(xs, ms)))
        M = condition_matrix(Z, n)
        res.checked += 1
        if 2 * n + 2 - M.rank != 2 * n + 2 - Z.degree:
            res.fail(scheme=Z.to_json(), rank=M.rank)
        # one more simple point off the support imposes one more condition
        while True:
            q, b = random_point(rng, 50), random_point(rng, 50)
            if not (b == DEFAULT_THETAS[theta] and q in xs):
                break
        res.checked += 1
        extra = rank(list(M.rows) + [evaluation_row(q, b, n)])
        if extra != M.rank + 1:
            res.fail(scheme=Z.to_json(), extra_point=[q.to_json(), b.to_json()], rank=extra)
    p, q = distinct_points(2, rng)
    Z = FatPointScheme((FatPoint(1, p, n), FatPoint(2, q, n)))
    res.checked += 1
    dim = h0(Z, n)
    res.info["max_weight_h0"] = dim
    if dim != 2:
        res.fail(scheme=Z.to_json(), h0=dim)
    return res


def suite_strata(n: int, seed=0, profiles: bool | None = None) -> SuiteResult:
    """Tangency patterns, max-weight and restricted-profile constructors."""
    res = SuiteResult("strata", n)
    if profiles is None:
        profiles = n <= 5
    codims = {}
    for b in constructions(n, seed, profiles):
        res.checked += 1
        if not b.ok:
            res.fail(label=b.label, error=str(b.result), diagnostics=b.result.diagnostics)
            continue
        c = b.result
        w = c.classification.per_theta_weights
        if not c.curve.smooth:
            res.fail(label=b.label, curve=c.curve.to_json(), reason="not smooth")
        if b.kind == "tangency":
            want = tuple(1 if i in b.key else 0 for i in range(1, 5))
            if w != want or c.codimension != len(b.key):
                res.fail(label=b.label, weights=list(w), codimension=c.codimension)
            codims.setdefault(len(b.key), set()).add(c.codimension)
        elif b.kind == "maxweight":
            i1, i2 = b.key
            if w[i1 - 1] != n - 1 or w[i2 - 1] != n - 1 or sum(w) != 2 * n - 2 or c.h0 != 2:
                res.fail(label=b.label, weights=list(w), h0=c.h0)
        else:
            theta, prof = b.key
            got = profile(c.curve, DEFAULT_THETAS[theta]).reduced
            others = [w[j] for j in range(4) if j != theta - 1]
            if got != prof or any(others) or c.codimension > sum(prof) - len(prof):
                res.fail(label=b.label, reduced=list(got), weights=list(w), codimension=c.codimension)
    res.info["codimensions"] = {k: sorted(v) for k, v in sorted(codims.items())}
    return res


N2_WEIGHT_VECTORS = frozenset(
    w for w in (tuple((b >> k) & 1 for k in range(4)) for b in range(16)) if sum(w) <= 2
)


def suite_n2_weights(samples: int = 500, bound: int = 100, seed=0) -> SuiteResult:
    """n = 2: realized weight vectors are exactly the 0/1 vectors of total at most 2."""
    res = SuiteResult("n2_weight_vectors", 2)
    realized = set()
    for b in constructions(2, seed):
        res.checked += 1
        if not b.ok:
            res.fail(label=b.label, error=str(b.result))
            continue
        w = b.result.classification.per_theta_weights
        realized.add(w)
        if max(w) >= 2:
            res.fail(label=b.label, weights=list(w))
    empty = construct_tangency_stratum((), 2, seed=_seed(seed, "tan", 2, ()))
    realized.add(empty.classification.per_theta_weights)
    for D in smooth_sample(2, samples, bound, seed):
        res.checked += 1
        w = classify(D).per_theta_weights
        realized.add(w)
        if max(w) >= 2 or sum(w) > 2:
            res.fail(curve=D.to_json(), weights=list(w))
    res.info["realized"] = sorted(list(w) for w in realized)
    if realized != N2_WEIGHT_VECTORS:
        res.fail(missing=sorted(list(w) for w in N2_WEIGHT_VECTORS - realized),
                 unexpected=sorted(list(w) for w in realized - N2_WEIGHT_VECTORS))
    return res


def suite_genericity(n: int, samples: int = 200, bound: int = 100, seed=0) -> SuiteResult:
    res = SuiteResult("genericity", n)
    stats = survey(n, samples, bound, seed)
    res.checked = stats.counts.smooth
    for exc in stats.exceptions:
        res.fail(**exc)
    res.info["fraction"] = stats.generic / stats.counts.smooth if stats.counts.smooth else 0.0
    return res


def suite_kunneth(n: int, trials: int = 20, seed=0) -> SuiteResult:
    res = SuiteResult("kunneth", n)
    res.checked += 1
    torus = betti_regular_locus(n, [1])
    if torus != [comb(4 * n - 2, k) for k in range(4 * n - 1)]:
        res.fail(betti_a=[1], output=torus)
    rng = _rng(seed, "betti", n)
    inputs = [[1] * (2 * n + 2)] + [
        [rng.randint(0, 9) for _ in range(rng.randint(1, 2 * n + 2))] for _ in range(trials)
    ]
    for b in inputs:
        if not any(b):
            b[0] = 1
        res.checked += 1
        out = betti_regular_locus(n, b)
        if len(out) - 1 >= 6 * n or sum(out) != sum(b) * 2 ** (4 * n - 2):
            res.fail(betti_a=b, output=out)
    return res


def suite_determinism(n: int, seed=0) -> SuiteResult:
    res = SuiteResult("determinism", n)
    res.checked += 1
    if survey(n, 20, 100, seed).to_csv() != survey(n, 20, 100, seed).to_csv():
        res.fail(reason="survey CSV differs between identical runs")
    for build in (lambda: construct_max_weight(1, 2, n, seed=seed),
                  lambda: construct_tangency_stratum((1, 3), n, seed=seed)):
        res.checked += 1
        a, b = build().to_json(), build().to_json()
        if a != b:
            res.fail(first=a, second=b)
    return res


def run_all(n_min: int, n_max: int, seed=0, samples: int = 100, survey_samples: int = 50) -> list[SuiteResult]:
    """Every suite for every n in range; sample counts are scaled down for quick runs."""
    if not 2 <= n_min <= n_max:
        raise ValueError("need 2 <= n_min <= n_max")
    results = []
    for n in range(n_min, n_max + 1):
        results += [
            suite_weight_bound(n, samples, seed=seed),
            suite_riemann_hurwitz(n, samples, seed=seed),
            suite_dual_weight(n, samples, seed=seed),
            suite_dichotomy(n, samples, seed=seed),
            suite_genus(n, samples, seed=seed),
            suite_interpolation(n, samples, seed=seed),
            suite_strata(n, seed=seed),
            suite_genericity(n, survey_samples, seed=seed),
            suite_kunneth(n, seed=seed),
            suite_determinism(n, seed=seed),
        ]
        if n == 2:
            results.append(suite_n2_weights(samples, seed=seed))
    return results
