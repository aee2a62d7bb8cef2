"""Verification runs over enumeration scopes, plus the targeted searches.

Work is cut into chunks in stream order; each chunk runs inside a compiled
driver and chunk results are merged in chunk order, so a report does not depend
on the worker count.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import _kernels as K
from .digraph import Digraph, parse, serialize
from .families import (
    RNG_NAME,
    EnumerationScope,
    complement_patterns,
    pair_list,
    sample_condition_m,
    sample_density,
)
from .registry import REMARK_CASE, TheoremCase, get_case

log = logging.getLogger(__name__)

EXHAUSTIVE_CHUNK = 1 << 16
COMPLEMENT_CHUNK = 1 << 18
BATCH_CHUNK = 4096
DEFAULT_MAX_FAILURES = 100


@dataclass
class VerificationReport:
    theorem_id: str
    scope: dict
    digraphs_examined: int
    hypothesis_hits: int
    conclusion_failures: list[dict]
    failure_count: int
    vacuous: bool
    runtime_ms: int
    tool_version: str
    rng_name: str
    label: str
    stats: dict = field(default_factory=dict)
    persisted: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, *, include_runtime: bool = True) -> str:
        d = self.to_dict()
        if not include_runtime:
            d.pop("runtime_ms")
        return json.dumps(d, sort_keys=True, indent=2) + "\n"


def default_threads() -> int:
    env = os.environ.get("HAMLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer HAMLAB_THREADS=%r", env)
    return 1


# -- chunk planning and execution ------------------------------------------------------


def _plan(scope: EnumerationScope, rows: np.ndarray | None) -> list[tuple]:
    n = scope.n
    if scope.mode == "exhaustive":
        total = 1 << (n * (n - 1))
        return [("x", a, min(a + EXHAUSTIVE_CHUNK, total)) for a in range(0, total, EXHAUSTIVE_CHUNK)]
    if scope.mode == "exhaustive_complement":
        P = n * (n - 1) // 2
        chunks = []
        for pat in complement_patterns(n, scope.pair_budget):
            total = 3 ** (P - pat.bit_count())
            chunks += [("c", pat, a, min(a + COMPLEMENT_CHUNK, total)) for a in range(0, total, COMPLEMENT_CHUNK)]
        return chunks
    return [("b", a, min(a + BATCH_CHUNK, len(rows))) for a in range(0, len(rows), BATCH_CHUNK)]


# set in the parent before forking, inherited by workers
_JOB: dict = {}


def _run_chunk(chunk) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    code, n, prefilter, cap = _JOB["code"], _JOB["n"], _JOB["prefilter"], _JOB["cap"]
    fails = np.zeros((cap, n), np.int64)
    stats = np.zeros(K.N_STATS, np.int64)
    counts = np.zeros(3, np.int64)
    if chunk[0] == "x":
        K.run_exhaustive(code, n, chunk[1], chunk[2], prefilter, fails, stats, counts)
    elif chunk[0] == "c":
        K.run_complement(code, n, _JOB["pu"], _JOB["pv"], chunk[1], chunk[2], chunk[3], prefilter, fails, stats, counts)
    else:
        K.run_batch(code, n, _JOB["rows"], chunk[1], chunk[2], prefilter, fails, stats, counts)
    return counts, stats, fails[: min(int(counts[2]), cap)].copy()


def _execute(code: int, scope: EnumerationScope, rows, cap: int, threads: int, stop_at_first: bool = False):
    n = scope.n
    pu, pv = (np.array(pair_list(n), np.int64).T if n > 1 else (np.zeros(0, np.int64),) * 2)
    _JOB.update(code=code, n=n, prefilter=scope.prefilter_codes, cap=cap, rows=rows,
                pu=np.ascontiguousarray(pu), pv=np.ascontiguousarray(pv))
    chunks = _plan(scope, rows)
    counts = np.zeros(3, np.int64)
    stats = np.zeros(K.N_STATS, np.int64)
    fails = []

    def absorb(res):
        c, s, f = res
        counts[:] += c
        stats[:] += s
        fails.extend(tuple(int(x) for x in r) for r in f)

    try:
        if threads <= 1 or len(chunks) <= 1 or stop_at_first:
            for ch in chunks:
                absorb(_run_chunk(ch))
                if stop_at_first and counts[2]:
                    break
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as ex:
                for res in ex.map(_run_chunk, chunks, chunksize=max(1, len(chunks) // (threads * 8))):
                    absorb(res)
    finally:
        _JOB.clear()
    return counts, stats, fails


def _sample(scope: EnumerationScope, case: TheoremCase) -> tuple[np.ndarray, str]:
    sampler = scope.sampler or case.default_sampler
    if sampler == "condition_m" and scope.n >= 4:
        return sample_condition_m(scope.n, scope.sample_count, scope.seed, pair_budget=scope.pair_budget), sampler
    return sample_density(scope.n, scope.sample_count, scope.seed), "density"


def verify(
    theorem_id: str,
    scope: EnumerationScope,
    threads: int | None = None,
    out_dir: str | os.PathLike | None = None,
    max_failures: int = DEFAULT_MAX_FAILURES,
    _case: TheoremCase | None = None,
) -> VerificationReport:
    """Run one registry case over every digraph of ``scope``.

    Failures are replayed through the plain-Python check, sorted by their DG
    serialization and truncated to ``max_failures`` (``failure_count`` keeps the
    full number).  With ``out_dir`` each reported failure is written there as
    ``<theorem_id>-<index>.dg``.
    """
    case = _case or get_case(theorem_id)
    threads = default_threads() if threads is None else max(1, threads)
    t0 = time.perf_counter()
    rows = None
    scope_dict = scope.to_dict()
    if scope.mode == "sampled":
        rows, sampler = _sample(scope, case)
        scope_dict["sampler"] = sampler
        scope_dict["samples_drawn"] = int(len(rows))
        if len(rows) < scope.sample_count:
            log.warning("sampler produced %d of %d requested digraphs", len(rows), scope.sample_count)
    counts, stats, fails = _execute(case.code, scope, rows, max_failures, threads)

    digraphs = sorted({serialize(Digraph(scope.n, r)) for r in fails})[:max_failures]
    failures = []
    for text in digraphs:
        D = parse(text)
        outcome = case.evaluate(D)
        detail = outcome.detail if outcome.status == 2 else f"replay mismatch: Python check returned status {outcome.status}"
        failures.append({"digraph": text, "detail": detail})

    persisted = []
    if out_dir is not None and failures:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(failures):
            name = f"{case.id}-{i}.dg"
            (out / name).write_text(f["digraph"])
            persisted.append(name)

    labels = case.stats_labels
    return VerificationReport(
        theorem_id=case.id,
        scope=scope_dict,
        digraphs_examined=int(counts[0]),
        hypothesis_hits=int(counts[1]),
        conclusion_failures=failures,
        failure_count=int(counts[2]),
        vacuous=bool(counts[1] == 0),
        runtime_ms=int((time.perf_counter() - t0) * 1000),
        tool_version=__version__,
        rng_name=RNG_NAME,
        label=case.label,
        stats={lab: int(stats[i]) for i, lab in enumerate(labels)},
        persisted=persisted,
    )


def explore_problem_1_17(scope: EnumerationScope, threads: int | None = None,
                         out_dir: str | os.PathLike | None = None) -> VerificationReport:
    """Search for non-pancyclic digraphs in the open-problem class.

    Any failure is an open-problem candidate, not a refutation of anything proved.
    """
    return verify("problem-1.17", scope, threads=threads, out_dir=out_dir)


def find_remark_witness(n: int) -> Digraph | None:
    """First digraph, in complement-enumeration order over single non-adjacent
    pairs, that is strong, not 2-strong and non-Hamiltonian."""
    if n < 5:
        raise ValueError("the search is defined for n >= 5")
    if n > 7:
        raise ValueError("complement enumeration is limited to n <= 7")
    scope = EnumerationScope(n, "exhaustive_complement", pair_budget=1)
    # pattern 0 (no non-adjacent pair) cannot hit, so its chunk is cheap to skip past
    _, _, fails = _execute(K.T_REMARK, scope, None, 1, 1, stop_at_first=True)
    if not fails:
        log.error("no remark witness at n=%d: search space exhausted", n)
        return None
    D = Digraph(n, fails[0])
    if REMARK_CASE.evaluate(D).status != 2:
        raise RuntimeError("kernel and Python checks disagree on the remark witness")
    return D


# -- sharpness search --------------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessExhibit:
    shape: tuple[int, int, int, int]
    digraph: Digraph
    min_pair_pair_sum: int | None


def partition_maximal(y: int, z: int, r1: int, r2: int) -> Digraph:
    """Arc-maximal digraph that admits the partition Y, Z, R1, R2 of the given sizes
    (vertices laid out in that order).  It has no cycle factor when y > z."""
    n = y + z + r1 + r2
    Y = range(0, y)
    R1 = range(y + z, y + z + r1)
    R2 = range(y + z + r1, n)
    banned = {(a, b) for a in Y for b in Y}
    banned |= {(a, b) for a in Y for b in R1}
    banned |= {(a, b) for a in R2 for b in [*R1, *Y]}
    return Digraph.from_arcs(n, ((u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in banned))


def sharpness_search(n_max: int = 8, n_min: int = 4) -> list[SharpnessExhibit]:
    """2-strong digraphs without a cycle factor whose two-pair degree sums are all
    at least 4n-4.

    Adding arcs never destroys 2-strongness or the degree-sum condition, and any
    digraph without a cycle factor is a spanning subdigraph of the maximal digraph
    of its partition shape, so checking one maximal digraph per shape is exhaustive.
    """
    found = []
    for n in range(n_min, n_max + 1):
        for y in range(1, n + 1):
            for z in range(0, y):
                for r1 in range(0, n - y - z + 1):
                    r2 = n - y - z - r1
                    D = partition_maximal(y, z, r1, r2)
                    out = D.to_array()
                    inn = K.make_in_rows(out, n)
                    deg = np.array([D.degree(v) for v in range(n)], np.int64)
                    if K.is_two_strong(out, inn, n) and K.condition_m_relaxed(out, inn, n, deg):
                        c, a, b = K.two_smallest_pair_sums(out, inn, n, deg)
                        found.append(SharpnessExhibit((y, z, r1, r2), D, int(a + b) if c >= 2 else None))
    return found


def write_report(report: VerificationReport, path: str | os.PathLike) -> None:
    Path(path).write_text(report.to_json())
