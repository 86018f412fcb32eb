"""Pairwise, single-source, global, and Steiner vertex connectivity.

Three layers:

- definitional solvers (apvc_naive, ssvc, global_vc, steiner_vc) that run one
  max flow per pair;
- the sampled capped solver: t random terminal sets, capped element
  connectivity inside each, entrywise minima as estimates that never
  undershoot min(kappa, k);
- degree-split fast solvers (fast_apvc, fast_ssvc) that route high-degree
  pairs to direct flow and everything touching a low-degree vertex through
  the capped solver, which is exact there because kappa is at most the
  smaller endpoint degree.

Every randomized routine takes an explicit seed, and each sample set gets
its own derived RNG, so serial and parallel runs draw identical sets.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InconsistencyError, QueryError
from .flow import ConnectivitySweep
from .graphs import Edge, Graph, canonical_edge, emit_graph, parse_graph

DIAG = -1  # diagonal sentinel: kappa(v, v) is undefined

# Pluggable capped element-connectivity provider, so a faster backend (for
# example a Gomory-Hu style tree) can replace the per-pair flow sweep.
ElementOracle = Callable[[Graph, frozenset, int, int, int], int]


@dataclass
class ConnectivityMatrix:
    """Symmetric pairwise connectivity values; optionally capped at k."""

    n: int
    values: np.ndarray
    cap: int | None = None

    @classmethod
    def empty(cls, n: int, cap: int | None = None) -> "ConnectivityMatrix":
        fill = cap if cap is not None else 0
        values = np.full((n, n), fill, dtype=np.int64)
        np.fill_diagonal(values, DIAG)
        return cls(n, values, cap)

    def entry(self, u: int, v: int) -> int:
        return int(self.values[u, v])

    def put(self, u: int, v: int, value: int) -> None:
        self.values[u, v] = value
        self.values[v, u] = value

    def validate(self) -> None:
        assert self.values.shape == (self.n, self.n)
        assert (self.values == self.values.T).all(), "matrix not symmetric"
        assert (np.diag(self.values) == DIAG).all(), "diagonal sentinel missing"
        off = self.values[~np.eye(self.n, dtype=bool)]
        assert (off >= 0).all(), "negative connectivity entry"
        if self.cap is not None:
            assert (off <= self.cap).all(), "entry above the cap"

    def min_offdiag(self) -> int:
        assert self.n >= 2
        return int(min(self.values[u, v] for u in range(self.n) for v in range(u + 1, self.n)))

    def to_tsv(self) -> str:
        lines = [str(self.n)]
        lines += ["\t".join(str(int(x)) for x in row) for row in self.values]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str, cap: int | None = None) -> "ConnectivityMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n = int(lines[0])
        values = np.array(
            [[int(x) for x in ln.split("\t")] for ln in lines[1 : n + 1]], dtype=np.int64
        ).reshape(n, n)
        return cls(n, values, cap)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConnectivityMatrix)
            and self.n == other.n
            and bool((self.values == other.values).all())
        )


@dataclass(frozen=True)
class SampleFamily:
    """The t random terminal sets of the capped solver."""

    k: int
    t: int
    sets: tuple[tuple[int, ...], ...]
    seed: int

    def validate(self, n: int) -> None:
        assert self.t == len(self.sets)
        for u_i in self.sets:
            assert list(u_i) == sorted(set(u_i))
            assert all(0 <= v < n for v in u_i)


@dataclass(frozen=True)
class DegreeSplit:
    """Partition of V by the degree threshold k."""

    k: int
    high: tuple[int, ...]
    low: tuple[int, ...]

    def validate(self, g: Graph) -> None:
        assert sorted(self.high + self.low) == list(range(g.n))
        assert all(g.degree(v) > self.k for v in self.high)
        assert all(g.degree(v) <= self.k for v in self.low)
        if self.k >= 1:
            assert len(self.high) <= 2 * g.m / self.k


def degree_split(g: Graph, k: int) -> DegreeSplit:
    high = tuple(v for v in range(g.n) if g.degree(v) > k)
    low = tuple(v for v in range(g.n) if g.degree(v) <= k)
    return DegreeSplit(k, high, low)


# ---------------------------------------------------------------------------
# Definitional solvers.
# ---------------------------------------------------------------------------


def _all_pairs(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


def _vc_pairs_worker(payload: tuple[str, list[Edge]]) -> list[int]:
    text, pairs = payload
    sweep = ConnectivitySweep(parse_graph(text))
    return [sweep.query(u, v) for u, v in pairs]


def _solve_pairs(g: Graph, pairs: Sequence[Edge], threads: int) -> dict[Edge, int]:
    """One exact flow per pair, optionally fanned out over worker processes."""
    if threads <= 1 or len(pairs) < 32:
        sweep = ConnectivitySweep(g)
        return {p: sweep.query(*p) for p in pairs}
    text = emit_graph(g)
    chunks = [list(pairs[i::threads]) for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_vc_pairs_worker, [(text, ch) for ch in chunks]))
    out: dict[Edge, int] = {}
    for chunk, vals in zip(chunks, results):
        out.update(zip(chunk, vals))
    return out


def apvc_naive(g: Graph, threads: int = 1) -> ConnectivityMatrix:
    """kappa for every pair, by one max flow each."""
    mat = ConnectivityMatrix.empty(g.n)
    for (u, v), value in _solve_pairs(g, _all_pairs(g.n), threads).items():
        mat.put(u, v, value)
    return mat


def ssvc(g: Graph, s: int) -> list[int]:
    """kappa(s, v) for every v; the source slot holds the diagonal sentinel."""
    if not 0 <= s < g.n:
        raise QueryError(f"source {s} out of range for n={g.n}")
    sweep = ConnectivitySweep(g)
    return [DIAG if v == s else sweep.query(s, v) for v in range(g.n)]


def _min_over_pairs(g: Graph, pairs: Iterable[Edge], cutoff: int | None) -> int:
    """min kappa over the pairs; queries are capped at the running minimum."""
    sweep = ConnectivitySweep(g)
    best = cutoff
    for u, v in pairs:
        best = sweep.query(u, v, cutoff=best)
        if best == 0:
            break
    assert best is not None
    return best


def global_vc(g: Graph) -> int:
    """min over all pairs (definitional sweep)."""
    if g.n < 2:
        raise QueryError(f"global connectivity needs n >= 2, got n={g.n}")
    return _min_over_pairs(g, _all_pairs(g.n), None)


def steiner_vc(g: Graph, terminals: Iterable[int], cutoff: int | None = None) -> int:
    """min kappa over terminal pairs; with a cutoff, min(true value, cutoff)."""
    term = sorted(set(terminals))
    if len(term) < 2:
        raise QueryError(f"need at least 2 terminals, got {len(term)}")
    for x in term:
        if not 0 <= x < g.n:
            raise QueryError(f"terminal {x} out of range for n={g.n}")
    return _min_over_pairs(g, itertools.combinations(term, 2), cutoff)


# ---------------------------------------------------------------------------
# Sampled capped solver.
# ---------------------------------------------------------------------------


def sample_set_count(n: int, k: int, c: float) -> int:
    return math.ceil(c * k * k * math.log(n)) if n >= 2 else 0

# A set much larger than its n/k expectation only hurts running time, never
# correctness, so oversized draws are redrawn instead of aborting the run.
_RESAMPLE_ATTEMPTS = 1000


def _size_limit(n: int, k: int) -> int:
    return math.ceil(4.0 * (n / k) * math.log(max(n, 2))) + 4


def draw_sample_family(
    n: int, k: int, seed: int, c: float = 4.0, force: int | None = None
) -> SampleFamily:
    """t = ceil(c k^2 ln n) subsets, each vertex kept with probability 1/k."""
    if k < 1:
        raise QueryError(f"cap must be >= 1, got {k}")
    t = sample_set_count(n, k, c)
    limit = _size_limit(n, k)
    p = 1.0 / k
    sets = []
    for i in range(t):
        rng = random.Random(seed * 1_000_003 + i)
        for _ in range(_RESAMPLE_ATTEMPTS):
            drawn = [v for v in range(n) if rng.random() < p]
            if len(drawn) <= limit:
                break
        if force is not None and force not in drawn:
            drawn = sorted(drawn + [force])
        sets.append(tuple(drawn))
    fam = SampleFamily(k=k, t=t, sets=tuple(sets), seed=seed)
    fam.validate(n)
    return fam


def _element_chunk_worker(
    payload: tuple[str, int, list[tuple[tuple[int, ...], list[Edge]]]]
) -> list[tuple[Edge, int]]:
    text, k, jobs = payload
    g = parse_graph(text)
    out: list[tuple[Edge, int]] = []
    for terminals, pairs in jobs:
        sweep = ConnectivitySweep(g, terminals=terminals)
        out.extend((p, sweep.query(*p, cutoff=k)) for p in pairs)
    return out


def _sampled_estimates(
    g: Graph,
    fam: SampleFamily,
    pairs: Sequence[Edge],
    threads: int,
    oracle: ElementOracle | None,
) -> dict[Edge, int]:
    """min over co-samples of min(kappa'_{G,U_i}, k); k when never co-sampled."""
    k = fam.k
    est = {p: k for p in pairs}
    wanted: dict[int, set[Edge]] = {}
    for p in pairs:
        u, v = p
        for i, u_i in enumerate(fam.sets):
            # sets are sorted tuples; membership scan is fine at these sizes
            if u in u_i and v in u_i:
                wanted.setdefault(i, set()).add(p)
    jobs = [(fam.sets[i], sorted(ps)) for i, ps in sorted(wanted.items())]

    if oracle is not None:
        for terminals, ps in jobs:
            tset = frozenset(terminals)
            for p in ps:
                a_i = oracle(g, tset, p[0], p[1], k)
                if a_i < est[p]:
                    est[p] = a_i
        return est

    if threads <= 1 or len(jobs) < 8:
        for terminals, ps in jobs:
            sweep = ConnectivitySweep(g, terminals=terminals)
            for p in ps:
                # capping at the running estimate cannot raise the final min
                a_i = sweep.query(*p, cutoff=est[p])
                if a_i < est[p]:
                    est[p] = a_i
        return est

    text = emit_graph(g)
    chunks = [jobs[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = pool.map(_element_chunk_worker, [(text, k, ch) for ch in chunks if ch])
        for part in results:
            for p, a_i in part:
                if a_i < est[p]:
                    est[p] = a_i
    return est


def _verified_entry(sweep: ConnectivitySweep, pair: Edge, est: int, k: int) -> int:
    """Settle one pair exactly: a direct capped flow can only confirm or lower
    the sampled estimate, never raise it."""
    if est == 0:
        return 0
    exact = sweep.query(*pair, cutoff=min(est, k))
    assert exact <= est, "sampled estimate undershot the true value"
    return exact


def capped_apvc_sampled(
    g: Graph,
    k: int,
    seed: int,
    fallback: bool = True,
    c: float = 4.0,
    threads: int = 1,
    pairs: Sequence[Edge] | None = None,
    oracle: ElementOracle | None = None,
    force: int | None = None,
) -> ConnectivityMatrix:
    """All-pairs min(kappa, k) by random terminal sampling.

    With fallback, every requested pair is settled by one direct capped flow
    whose cutoff is the sampled estimate, so the result is exactly
    min(kappa, k). Without fallback the raw estimates are returned: entrywise
    >= min(kappa, k) always, equal with high probability. `pairs` restricts
    the computation (other entries keep the cap value); `force` puts one
    vertex into every sample set.
    """
    if pairs is None:
        wanted = _all_pairs(g.n)
    else:
        wanted = sorted({canonical_edge(*p) for p in pairs})
    fam = draw_sample_family(g.n, k, seed, c=c, force=force)
    est = _sampled_estimates(g, fam, wanted, threads, oracle)
    mat = ConnectivityMatrix.empty(g.n, cap=k)
    if fallback:
        sweep = ConnectivitySweep(g)
        for p in wanted:
            mat.put(*p, _verified_entry(sweep, p, est[p], k))
    else:
        for p in wanted:
            mat.put(*p, est[p])
    return mat


def capped_ssvc_sampled(
    g: Graph,
    s: int,
    k: int,
    seed: int,
    fallback: bool = True,
    c: float = 4.0,
    threads: int = 1,
    targets: Iterable[int] | None = None,
) -> list[int]:
    """Single-source variant: s joins every sample set, so each target only
    has to be co-sampled with itself present."""
    if not 0 <= s < g.n:
        raise QueryError(f"source {s} out of range for n={g.n}")
    if targets is None:
        targets = [v for v in range(g.n) if v != s]
    pairs = [canonical_edge(s, v) for v in targets if v != s]
    mat = capped_apvc_sampled(
        g, k, seed, fallback=fallback, c=c, threads=threads, pairs=pairs, force=s
    )
    out = [DIAG if v == s else k for v in range(g.n)]
    for p in pairs:
        v = p[0] if p[1] == s else p[1]
        out[v] = mat.entry(s, v)
    return out


# ---------------------------------------------------------------------------
# Degree-split fast solvers.
# ---------------------------------------------------------------------------


def default_apvc_threshold(m: int, mode: str = "default") -> int:
    if mode == "gh":
        return math.ceil(math.sqrt(m))
    if mode == "default":
        return math.ceil(m ** (2.0 / 5.0))
    raise ValueError(f"unknown mode {mode!r}")


def default_ssvc_threshold(m: int) -> int:
    return math.ceil(m ** (1.0 / 3.0))


def fast_apvc(
    g: Graph,
    k: int | None = None,
    seed: int = 0,
    c: float = 4.0,
    threads: int = 1,
    mode: str = "default",
) -> ConnectivityMatrix:
    """Exact APVC via the degree split.

    Pairs inside the high-degree part get direct max flows. Any pair with a
    low-degree endpoint has kappa <= k, so the capped sampled solver (with
    fallback) already returns it exactly.
    """
    if k is None:
        k = default_apvc_threshold(g.m, mode)
    split = degree_split(g, k)
    split.validate(g)
    high = set(split.high)
    all_pairs = _all_pairs(g.n)
    high_pairs = [p for p in all_pairs if p[0] in high and p[1] in high]
    low_pairs = [p for p in all_pairs if p[0] not in high or p[1] not in high]

    mat = ConnectivityMatrix.empty(g.n)
    for p, value in _solve_pairs(g, high_pairs, threads).items():
        mat.put(*p, value)
    if low_pairs:
        if k == 0:
            # every low vertex is isolated, so those pairs are disconnected
            for p in low_pairs:
                mat.put(*p, 0)
        else:
            capped = capped_apvc_sampled(
                g, k, seed, fallback=True, c=c, threads=threads, pairs=low_pairs
            )
            for p in low_pairs:
                value = capped.entry(*p)
                assert value <= k
                mat.put(*p, value)
    return mat


def fast_ssvc(
    g: Graph,
    s: int,
    k: int | None = None,
    seed: int = 0,
    c: float = 4.0,
    threads: int = 1,
) -> list[int]:
    """Exact SSVC via the same split, with s forced into every sample set."""
    if not 0 <= s < g.n:
        raise QueryError(f"source {s} out of range for n={g.n}")
    if k is None:
        k = default_ssvc_threshold(g.m)
    split = degree_split(g, k)
    split.validate(g)
    high = set(split.high)
    out = [DIAG] * g.n
    high_targets = [v for v in split.high if v != s] if s in high else []
    low_targets = [v for v in range(g.n) if v != s and (s not in high or v not in high)]

    if high_targets:
        sweep = ConnectivitySweep(g)
        for v in high_targets:
            out[v] = sweep.query(s, v)
    if low_targets:
        if k == 0:
            for v in low_targets:
                out[v] = 0
        else:
            capped = capped_ssvc_sampled(
                g, s, k, seed, fallback=True, c=c, threads=threads, targets=low_targets
            )
            for v in low_targets:
                out[v] = capped[v]
    return out


def apvc_via_ssvc(g: Graph) -> ConnectivityMatrix:
    """APVC by treating every vertex as a source; sanity-checks symmetry."""
    mat = ConnectivityMatrix.empty(g.n)
    rows = [ssvc(g, s) for s in range(g.n)]
    for u in range(g.n):
        for v in range(g.n):
            if u != v and rows[u][v] != rows[v][u]:
                raise InconsistencyError(
                    f"ssvc rows disagree at ({u}, {v}): {rows[u][v]} vs {rows[v][u]}"
                )
            mat.values[u, v] = rows[u][v]
    return mat
