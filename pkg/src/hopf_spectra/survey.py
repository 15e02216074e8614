"""Randomized survey of curves in |O(n,1)|: how often is ramification generic?"""

from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .graph import DEFAULT_THETAS, ThetaConfig, classify, random_curve, ramification_report

CSV_COLUMNS = ["n", "samples", "bound", "seed", "smooth", "regular", "irregular",
               "ordinary_ram", "distinct_images", "rh_ok"]


@dataclass
class SurveyCounts:
    smooth: int = 0
    regular: int = 0
    irregular: int = 0
    ordinary_ramification: int = 0
    distinct_branch_images: int = 0
    rh_identity_ok: int = 0

    def add(self, other: "SurveyCounts") -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)


@dataclass
class SurveyStats:
    n: int
    samples: int
    coefficient_bound: int
    seed: int
    counts: SurveyCounts = field(default_factory=SurveyCounts)
    exceptions: list = field(default_factory=list)

    def fractions(self) -> dict[str, float]:
        """smooth is relative to all samples, everything else to the smooth ones."""
        c = self.counts
        smooth = c.smooth or 1
        return {
            "smooth": c.smooth / self.samples,
            "regular": c.regular / smooth,
            "irregular": c.irregular / smooth,
            "ordinary_ramification": c.ordinary_ramification / smooth,
            "distinct_branch_images": c.distinct_branch_images / smooth,
            "rh_identity_ok": c.rh_identity_ok / smooth,
        }

    @property
    def generic(self) -> int:
        """Smooth samples with both squarefree J and squarefree discriminant."""
        return self.counts.smooth - len(self.exceptions)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "coefficient_bound": self.coefficient_bound,
            "seed": self.seed,
            "counts": asdict(self.counts),
            "fractions": self.fractions(),
            "exceptions": self.exceptions,
        }

    def to_csv(self) -> str:
        c = self.counts
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerow([self.n, self.samples, self.coefficient_bound, self.seed, c.smooth,
                         c.regular, c.irregular, c.ordinary_ramification,
                         c.distinct_branch_images, c.rh_identity_ok])
        return buf.getvalue()


def sample_rng(seed: int, index: int) -> random.Random:
    # string seeds are hashed with sha512, independent of PYTHONHASHSEED
    return random.Random(f"{seed}:{index}")


def _run_sample(args) -> tuple[SurveyCounts, dict | None]:
    n, bound, seed, index, T = args
    D = random_curve(n, bound, sample_rng(seed, index))
    c = SurveyCounts()
    if not D.smooth:
        return c, None
    c.smooth = 1
    if classify(D, T).total_weight:
        c.irregular = 1
    else:
        c.regular = 1
    rep = ramification_report(D, T)
    c.ordinary_ramification = int(rep.jacobian_squarefree)
    c.distinct_branch_images = int(rep.discriminant_squarefree)
    c.rh_identity_ok = int(rep.rh_ok)
    exception = None
    if not (rep.jacobian_squarefree and rep.discriminant_squarefree):
        exception = {"index": index, "curve": D.to_json(), "report": rep.to_json()}
    return c, exception


def survey(n: int, samples: int, bound: int = 100, seed: int = 0, jobs: int = 1,
           T: ThetaConfig = DEFAULT_THETAS) -> SurveyStats:
    if n < 2:
        raise ValueError("survey needs n >= 2")
    if samples < 1:
        raise ValueError("survey needs at least one sample")
    stats = SurveyStats(n, samples, bound, seed)
    tasks = [(n, bound, seed, i, T) for i in range(samples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_sample, tasks, chunksize=16))
    else:
        results = [_run_sample(t) for t in tasks]
    for counts, exception in results:
        stats.counts.add(counts)
        if exception is not None:
            stats.exceptions.append(exception)
    return stats
