"""Closed-form bounds on the ``N``-matrix trace norms of biseparable states,
the GME threshold, per-state verdicts, and an empirical soundness probe.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict, field
import math

import numpy as np

from . import bloch, states
from .errors import DimensionError

FLAGS = ("gme_detected", "not_fully_separable", "not_separable_1_23",
         "not_separable_2_13", "not_separable_3_12")
_KEYS = ("1_23", "2_13", "3_12")


@dataclass(frozen=True)
class BoundTable:
    d: int
    b1_case_i: float
    b1_case_ii: float
    b2_case_i: float
    b2_case_ii: float
    b3_case_i: float
    b3_case_ii: float
    M: float

    def case_i(self, key):
        return getattr(self, f"b{_KEYS.index(key) + 1}_case_i")

    def separable_bound(self, key):
        """Largest bound a biseparable state can reach across ``key``."""
        i = _KEYS.index(key) + 1
        return max(getattr(self, f"b{i}_case_i"), getattr(self, f"b{i}_case_ii"))

    def as_dict(self):
        return asdict(self)


def lemma_bounds(d):
    """Upper bounds on ``|N^{f|gh}|_tr`` for the two canonical cases, and ``M``."""
    if int(d) != d or d < 2:
        raise DimensionError(f"local dimension must be an integer >= 2, got {d}")
    d = int(d)
    a = 2 - 2 / d
    c = 1 - 2 / d
    b1_i = math.sqrt(a * (225 * a + 2))
    b1_ii = math.sqrt(233 * a) + 15 * math.sqrt(c * a)
    tail = sum(math.sqrt(1 / (k * (k + 1))) * math.sqrt(1 / (k + 1) - 1 / d)
               for k in range(1, d - 1))
    b2_i = 4 * (4 * tail + 2 * (d * d - 1) / d)
    b2_ii = 4 * math.sqrt(a) * (1 + math.sqrt(c))
    return BoundTable(d, b1_i, b1_ii, b2_i, b2_ii, b1_i, b1_ii, max(b1_i, b1_ii, b2_i))


@dataclass(frozen=True)
class CriterionReport:
    d: int
    norms: dict
    t_value: float
    bounds: BoundTable
    verdicts: dict
    margins: dict

    def as_dict(self):
        return {"d": self.d, "norms": dict(self.norms), "t_value": self.t_value,
                "bounds": self.bounds.as_dict(), "verdicts": dict(self.verdicts),
                "margins": dict(self.margins)}

    @classmethod
    def from_dict(cls, data):
        return cls(data["d"], dict(data["norms"]), data["t_value"],
                   BoundTable(**data["bounds"]), dict(data["verdicts"]), dict(data["margins"]))


def report_from_norms(d, norms, bounds=None):
    """Build verdicts and margins from already-computed trace norms."""
    bounds = bounds or lemma_bounds(d)
    norms = dict(zip(_KEYS, (float(n) for n in norms)))
    t = sum(norms.values()) / 3.0
    margins = {"gme_detected": t - bounds.M}
    verdicts = {"gme_detected": t > bounds.M}
    for k in _KEYS:
        margins[f"not_separable_{k}"] = norms[k] - bounds.separable_bound(k)
        verdicts[f"not_separable_{k}"] = norms[k] > bounds.separable_bound(k)
    fs = [norms[k] - bounds.case_i(k) for k in _KEYS]
    margins["not_fully_separable"] = max(fs)
    verdicts["not_fully_separable"] = any(norms[k] > bounds.case_i(k) for k in _KEYS)
    return CriterionReport(d, norms, t, bounds,
                           {f: verdicts[f] for f in FLAGS}, {f: margins[f] for f in FLAGS})


def evaluate(rho, config=bloch.DEFAULT_SLICES, imag_tol=bloch.IMAG_TOL):
    """Run every rule on ``rho``; margins are ``statistic - threshold``."""
    norms = bloch.slices(bloch.extract(rho, imag_tol), config).norms()
    return report_from_norms(rho.d, norms)


# Published comparison lines, kept only as plot references
_SQRT_W = (math.sqrt(2941 / 18 - 5 * math.sqrt(5657) / 6)
           + math.sqrt(2941 / 18 + 5 * math.sqrt(5657) / 6) + 10)

REFERENCE_LINES = {
    "example1": {
        "f1": ((2 * _SQRT_W + 28 / 3) / 3, -math.sqrt(233)),
        "f2": (math.sqrt(17 / 9) + 2 * math.sqrt(8 / 9), -(6 + math.sqrt(3)) / 3),
        "f3": (math.sqrt(66) / 12, -0.5),
    },
    "example2": {
        "f4": (2.372684, -2.177324),
        "f5": (34.5797, -27.6257),
    },
}


def reference_lines(example_id):
    """Affine lines ``{name: (slope, intercept)}`` for plotting."""
    try:
        return dict(REFERENCE_LINES[example_id])
    except KeyError:
        raise ValueError(f"unknown example {example_id!r}; choose from "
                         f"{sorted(REFERENCE_LINES)}") from None


def line_zero(line):
    slope, intercept = line
    return -intercept / slope


@dataclass
class ProbeFinding:
    bipartition: str
    trial: int
    norms: dict
    t_value: float
    exceeded: list
    amplitudes: list = field(repr=False)


@dataclass
class ProbeResult:
    d: int
    trials: int
    seed: int
    bounds: BoundTable
    max_norm: dict
    max_t_value: dict
    findings: list

    def summary(self):
        out = {}
        for k in states.BIPARTITIONS:
            key = k.replace("|", "_")
            out[k] = {
                "max_norm": self.max_norm[k],
                "bound": self.bounds.separable_bound(key),
                "max_t_value": self.max_t_value[k],
                "M": self.bounds.M,
                "n_findings": sum(1 for f in self.findings if f.bipartition == k),
            }
        return out


def _complex_pairs(a):
    return [[float(z.real), float(z.imag)] for z in a]


def _probe_one(args):
    d, bipartition, trial, seq, config, bounds, psi = args
    if psi is None:
        psi = states.random_biseparable(d, bipartition, np.random.default_rng(seq))
    norms = bloch.n_norms(psi.density(), config)
    named = dict(zip(_KEYS, norms))
    t = sum(norms) / 3.0
    key = bipartition.replace("|", "_")
    exceeded = []
    if named[key] > bounds.separable_bound(key):
        exceeded.append(f"norm_{key}")
    if t > bounds.M:
        exceeded.append("t_value")
    finding = None
    if exceeded:
        finding = ProbeFinding(bipartition, trial, named, t, exceeded,
                               _complex_pairs(psi.amplitudes))
    return bipartition, named[key], t, finding


def soundness_probe(d, trials, seed=0, workers=1, inject=(), config=bloch.DEFAULT_SLICES):
    """Sample biseparable pure states and compare their statistics to the bounds.

    Each trial owns an independent stream spawned from ``seed``; results are
    merged in trial order, so output does not depend on ``workers``.
    ``inject`` is a sequence of ``(bipartition, PureState)`` fixtures that are
    evaluated ahead of the random trials (trial index ``-1``).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    bounds = lemma_bounds(d)
    root = np.random.SeedSequence(seed)
    children = root.spawn(trials * len(states.BIPARTITIONS))
    jobs = [(d, bp, -1, None, config, bounds, psi) for bp, psi in inject]
    for i, bp in enumerate(states.BIPARTITIONS):
        jobs += [(d, bp, t, children[i * trials + t], config, bounds, None)
                 for t in range(trials)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(_probe_one, jobs))
    else:
        results = [_probe_one(j) for j in jobs]
    max_norm = {bp: 0.0 for bp in states.BIPARTITIONS}
    max_t = {bp: 0.0 for bp in states.BIPARTITIONS}
    findings = []
    for bp, n, t, finding in results:
        max_norm[bp] = max(max_norm[bp], n)
        max_t[bp] = max(max_t[bp], t)
        if finding is not None:
            findings.append(finding)
    return ProbeResult(d, trials, seed, bounds, max_norm, max_t, findings)
