"""Sweeps over families of linear systems with oracle checks and a JSONL result cache."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__
from .core import LinearSystem, canonicalize
from .dimensions import (
    Classification,
    ContainmentPolicy,
    DimensionReport,
    EXHAUSTIVE_MAX_POINTS,
    dimension_report,
    linear_expected_dimension,
    n3_condition,
)
from .oracle import OracleConfig, OracleResult, apolarity_dimension, interpolation_dimension
from .picard import Effectivity, effectivity

CHECKS = ("vdim-floor", "weak-conjecture", "ldim-theorems", "cross-oracle", "expected")
DEFAULT_CHECKS = ("vdim-floor", "weak-conjecture", "ldim-theorems")

DEGREE10_P3 = [
    (5,) * 9,
    (5,) * 8 + (4,),
    (5,) * 8 + (3, 2),
    (5,) * 8 + (3,),
    (5,) * 8 + (2, 2),
    (5,) * 8 + (2,),
    (5,) * 7 + (4, 4, 2),
    (5,) * 7 + (4, 3, 3),
    (5,) * 7 + (4, 4),
]


@dataclass(frozen=True)
class SweepSpec:
    """A family of systems. ``mult`` is a homogeneous multiplicity; ``systems`` an explicit list.

    With ``s_range`` unset, each ``(n, d)`` grows ``s`` from 1 until the
    oracle and ``ldim`` both report an empty system; adding points keeps it
    empty from then on.
    """

    name: str
    n_range: tuple[int, int] = (1, 1)
    d_range: tuple[int, int] = (0, 0)
    mult: int | None = None
    s_range: tuple[int, int] | None = None
    systems: tuple[LinearSystem, ...] = ()
    checks: tuple[str, ...] = DEFAULT_CHECKS
    expected_special: frozenset[str] | None = None
    expected_linearly_special: frozenset[str] | None = None

    def __post_init__(self):
        for lo, hi in (self.n_range, self.d_range) + ((self.s_range,) if self.s_range else ()):
            if lo > hi:
                raise ValueError(f"empty range ({lo}, {hi}) in sweep {self.name}")
        if self.n_range[0] < 1 or self.d_range[0] < 0:
            raise ValueError("ranges need n >= 1 and d >= 0")
        if not self.systems and self.mult is None:
            raise ValueError(f"sweep {self.name}: give a multiplicity pattern or explicit systems")
        if self.mult is not None and self.mult < 1:
            raise ValueError(f"multiplicity must be positive, got {self.mult}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


def _names(*items: tuple[int, int, tuple[int, ...]]) -> frozenset[str]:
    return frozenset(str(canonicalize(n, d, m)) for n, d, m in items)


def _triples(n: int, d: int, ss: Iterable[int]) -> list[tuple[int, int, tuple[int, ...]]]:
    return [(n, d, (3,) * s) for s in ss]


PRESETS: dict[str, SweepSpec] = {
    "triple-p3": SweepSpec(
        "triple-p3", (3, 3), (3, 8), mult=3, checks=DEFAULT_CHECKS + ("expected",),
        expected_special=_names(*_triples(3, 3, (2, 3)), *_triples(3, 4, (2, 3, 4)), (3, 6, (3,) * 9)),
        expected_linearly_special=_names((3, 6, (3,) * 9)),
    ),
    "triple-p4": SweepSpec(
        "triple-p4", (4, 4), (3, 6), mult=3, checks=DEFAULT_CHECKS + ("expected",),
        expected_special=_names(*_triples(4, 3, (2, 3, 4)), *_triples(4, 4, (2, 3, 4, 5)), (4, 6, (3,) * 14)),
        expected_linearly_special=_names((4, 6, (3,) * 14)),
    ),
    "triple-p5": SweepSpec(
        "triple-p5", (5, 5), (3, 6), mult=3, checks=DEFAULT_CHECKS + ("expected",),
        expected_special=_names(*_triples(5, 3, range(2, 6)), *_triples(5, 4, range(2, 7))),
        expected_linearly_special=frozenset(),
    ),
    "deg10-p3": SweepSpec(
        "deg10-p3", systems=tuple(canonicalize(3, 10, m) for m in DEGREE10_P3),
        checks=("vdim-floor", "cross-oracle"),
    ),
}


def cache_key(L: LinearSystem, cfg: OracleConfig, policy: ContainmentPolicy) -> str:
    return f"{L.key()}|p{cfg.prime_bits}t{cfg.trials}s{cfg.seed}|{policy.value}"


@dataclass
class CacheRecord:
    key: str
    report: DimensionReport
    oracle: OracleResult
    version: str = __version__
    timestamp: float = field(default_factory=time.time)
    apolarity: OracleResult | None = None
    ldim_exhaustive: int | None = None

    @property
    def system(self) -> LinearSystem:
        return self.report.system

    def to_json(self) -> dict:
        out = {
            "key": self.key, "version": self.version, "timestamp": self.timestamp,
            "report": self.report.to_json(), "oracle": self.oracle.to_json(),
        }
        if self.apolarity is not None:
            out["apolarity"] = self.apolarity.to_json()
        if self.ldim_exhaustive is not None:
            out["ldim_exhaustive"] = self.ldim_exhaustive
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CacheRecord":
        return cls(
            obj["key"], DimensionReport.from_json(obj["report"]), OracleResult.from_json(obj["oracle"]),
            obj["version"], obj["timestamp"],
            OracleResult.from_json(obj["apolarity"]) if "apolarity" in obj else None,
            obj.get("ldim_exhaustive"),
        )


class ResultCache:
    """Append-only JSONL file of records; entries written by another tool version are ignored."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.records: dict[str, CacheRecord] = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = CacheRecord.from_json(json.loads(line))
                    if rec.version == __version__:
                        self.records[rec.key] = rec

    def get(self, key: str) -> CacheRecord | None:
        return self.records.get(key)

    def put(self, rec: CacheRecord) -> None:
        self.records[rec.key] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec.to_json()) + "\n")


def evaluate(L: LinearSystem, cfg: OracleConfig, policy: ContainmentPolicy, checks: Iterable[str]) -> CacheRecord:
    """Oracle run plus dimension report; the apolarity route runs when cross-checking is requested."""
    oracle = interpolation_dimension(L, cfg)
    report = dimension_report(L, oracle.dim, policy)
    apol = None
    if "cross-oracle" in checks and all(m <= L.d for m in L.mults):
        apol = apolarity_dimension(L, cfg)
    exhaustive = None
    if L.s <= EXHAUSTIVE_MAX_POINTS:
        exhaustive = linear_expected_dimension(L, ContainmentPolicy.EXHAUSTIVE)
    return CacheRecord(cache_key(L, cfg, policy), report, oracle, apolarity=apol, ldim_exhaustive=exhaustive)


def theorem_applies(L: LinearSystem) -> bool:
    """Whether ``dim = ldim`` is proven: non-empty with at most n+2 points, or the b(L) bound."""
    if L.s <= L.n + 2:
        return effectivity(L) is Effectivity.NONEMPTY
    return n3_condition(L).satisfied


def violations(rec: CacheRecord, checks: Iterable[str]) -> list[str]:
    r = rec.report
    dim = rec.oracle.dim
    found = []
    if "vdim-floor" in checks and dim < r.vdim:
        found.append(f"{r.system}: oracle dim {dim} < vdim {r.vdim}")
    if "weak-conjecture" in checks and r.ldim > dim:
        found.append(f"{r.system}: ldim {r.ldim} > oracle dim {dim}")
    if "ldim-theorems" in checks and theorem_applies(r.system) and r.ldim != dim:
        found.append(f"{r.system}: proven regime but ldim {r.ldim} != oracle dim {dim}")
    if "cross-oracle" in checks and rec.apolarity is not None and rec.apolarity.dim != dim:
        found.append(f"{r.system}: interpolation {dim} != apolarity {rec.apolarity.dim}")
    return found


def _sort_key(L: LinearSystem):
    return (L.n, L.d, L.s, L.mults)


@dataclass
class SweepSummary:
    name: str
    records: list[CacheRecord]
    violations: list[str]
    computed: int
    cached: int
    policy_disagreements: list[str]

    def special(self) -> set[str]:
        return {str(r.system) for r in self.records if r.oracle.dim > r.report.edim}

    def linearly_special(self) -> set[str]:
        return {str(r.system) for r in self.records if r.report.classification is Classification.LINEARLY_SPECIAL}

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {c.value: 0 for c in Classification}
        for r in self.records:
            out[r.report.classification.value] += 1
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name, "instances": len(self.records), "computed": self.computed, "cached": self.cached,
            "classification": self.counts(), "special": sorted(self.special()),
            "linearly_special": sorted(self.linearly_special()),
            "policy_disagreements": self.policy_disagreements, "violations": self.violations,
        }


def _fixed_groups(spec: SweepSpec) -> list[tuple]:
    if spec.systems:
        return [("fixed", tuple(spec.systems))]
    groups = []
    for n in range(spec.n_range[0], spec.n_range[1] + 1):
        for d in range(spec.d_range[0], spec.d_range[1] + 1):
            if spec.s_range is None:
                groups.append(("grow", n, d, spec.mult))
            else:
                lo, hi = spec.s_range
                groups.append(("fixed", tuple(canonicalize(n, d, (spec.mult,) * s) for s in range(lo, hi + 1))))
    return groups


GROW_LIMIT = 200


def _systems(group) -> Iterator[LinearSystem]:
    if group[0] == "fixed":
        yield from group[1]
        return
    _, n, d, m = group
    for s in range(1, GROW_LIMIT + 1):
        yield canonicalize(n, d, (m,) * s)


def _run_group(group, cfg: OracleConfig, policy: ContainmentPolicy, checks: tuple[str, ...],
               known: dict[str, CacheRecord]) -> list[tuple[CacheRecord, bool]]:
    out = []
    for L in _systems(group):
        rec = known.get(cache_key(L, cfg, policy))
        hit = rec is not None
        if not hit:
            rec = evaluate(L, cfg, policy, checks)
        out.append((rec, hit))
        if group[0] == "grow" and rec.oracle.dim == -1 and rec.report.ldim == -1:
            break
    return out


def run_sweep(spec: SweepSpec, cfg: OracleConfig | None = None, policy: ContainmentPolicy = ContainmentPolicy.DELETION,
              cache: ResultCache | None = None, workers: int = 1) -> SweepSummary:
    """Evaluate every system of the family; records come back sorted by canonical key."""
    cfg = cfg or OracleConfig()
    groups = _fixed_groups(spec)
    known = dict(cache.records) if cache else {}
    if workers > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_group, groups, [cfg] * len(groups), [policy] * len(groups),
                                    [spec.checks] * len(groups), [known] * len(groups)))
    else:
        results = [_run_group(g, cfg, policy, spec.checks, known) for g in groups]
    records, computed, cached = [], 0, 0
    for part in results:
        for rec, hit in part:
            records.append(rec)
            if hit:
                cached += 1
            else:
                computed += 1
                if cache is not None:
                    cache.put(rec)
    records.sort(key=lambda r: _sort_key(r.system))
    found = [v for r in records for v in violations(r, spec.checks)]
    summary = SweepSummary(spec.name, records, found, computed, cached, [
        str(r.system) for r in records if r.ldim_exhaustive is not None and r.ldim_exhaustive != r.report.ldim
    ])
    if "expected" in spec.checks:
        if spec.expected_special is not None and summary.special() != spec.expected_special:
            found.append(f"special set {sorted(summary.special())} != expected {sorted(spec.expected_special)}")
        if spec.expected_linearly_special is not None and summary.linearly_special() != spec.expected_linearly_special:
            found.append(f"linearly special set {sorted(summary.linearly_special())} != expected "
                         f"{sorted(spec.expected_linearly_special)}")
    return summary


def matrix_cost(L: LinearSystem) -> int:
    """Rough elimination cost ``rows * cols * min(rows, cols)`` of the interpolation matrix."""
    cols = math.comb(L.n + L.d, L.n)
    rows = sum(math.comb(L.n + m - 1, L.n) for m in L.mults)
    return rows * cols * min(rows, cols)
