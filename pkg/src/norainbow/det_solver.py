"""Deterministic branching local search over frozen candidate pairs.

Every start is an r-subset F given the colors 1..r in node order plus a
uniform background color; the search recolors one unfrozen node of a
nearly-frozen rainbow edge per level, freezing it, until it either proves
the start hopeless or can exhibit a certificate. The radius bound keeps
each start's tree at most (r-1)-ary of bounded depth.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from typing import Callable, Iterator, Optional

from .hypergraph import (
    COLORABLE,
    NOT_COLORABLE,
    CandidatePair,
    Hypergraph,
    SearchOutcome,
    SearchState,
    SearchStats,
    background_completion,
    is_no_rainbow_coloring,
    validate_candidate_pair,
)

TraceFn = Callable[[int, str, SearchState], None]


def search_radius(n: int, r: int) -> int:
    """Maximum Hamming distance a start must explore: floor((r-1)n/r).
    Distances are integers, so flooring the bound loses nothing."""
    if r < 2 or n < r:
        raise ValueError(f"need n >= r >= 2, got n={n}, r={r}")
    return (r - 1) * n // r


def enumerate_initial_pairs(hg: Hypergraph) -> Iterator[CandidatePair]:
    """Yield every start: for each r-subset F (ascending) and each background
    color b in 1..r, the coloring giving F's nodes colors 1..r in node order
    and b everywhere else. Exactly C(n, r) * r pairs."""
    if hg.n < hg.r:
        raise ValueError(f"no surjective start exists for n={hg.n} < r={hg.r}")
    for subset in itertools.combinations(range(hg.n), hg.r):
        frozen = frozenset(subset)
        for b in range(1, hg.r + 1):
            coloring = [b] * hg.n
            for color, v in enumerate(subset, start=1):
                coloring[v] = color
            yield CandidatePair(coloring, frozen)


def initial_pair_count(n: int, r: int) -> int:
    return math.comb(n, r) * r


def local_search(
    hg: Hypergraph,
    pair: CandidatePair,
    radius: int,
    trace: Optional[TraceFn] = None,
) -> SearchOutcome:
    """Bounded-radius search from one candidate pair.

    Case order per level: out of budget with a rainbow edge -> fail; fully
    frozen rainbow edge -> fail; no rainbow edge -> certify the current
    coloring; no edge with exactly r-1 frozen nodes -> certify the background
    completion; otherwise recolor the unique unfrozen node of the lowest
    qualifying rainbow edge to each of the other r-1 colors, freeze it, and
    recurse with one less budget.

    When a rainbow edge exists but no rainbow edge has exactly one unfrozen
    node, a fallback expansion branches over every unfrozen node of the
    lowest-index rainbow edge with the most frozen members; such calls and
    their subtrees are counted in stats.fallback_nodes, keeping
    stats.recursion_nodes under the (r-1)-ary tree bound.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    validate_candidate_pair(hg, pair.coloring, pair.frozen)
    stats = SearchStats(trials=1)
    t0 = time.perf_counter()
    state = SearchState(hg, pair.coloring, pair.frozen)
    certificate = _search(hg, state, radius, 0, stats, True, trace)
    stats.elapsed = time.perf_counter() - t0
    stats.max_start_nodes = stats.recursion_nodes
    if certificate is None:
        return SearchOutcome(NOT_COLORABLE, None, stats)
    if not is_no_rainbow_coloring(hg, certificate):
        raise RuntimeError("internal error: search produced an invalid certificate")
    return SearchOutcome(COLORABLE, certificate, stats)


def _search(
    hg: Hypergraph,
    state: SearchState,
    budget: int,
    depth: int,
    stats: SearchStats,
    standard_mode: bool,
    trace: Optional[TraceFn],
) -> Optional[list[int]]:
    if standard_mode:
        stats.recursion_nodes += 1
    else:
        stats.fallback_nodes += 1
    if trace is not None:
        trace(depth, "standard" if standard_mode else "fallback", state)

    has_rainbow = state.rainbow_edges > 0
    if budget == 0 and has_rainbow:
        return None
    if state.frozen_rainbow_edges > 0:
        return None
    if not has_rainbow:
        return list(state.coloring)
    if state.near_frozen_edges == 0:
        return background_completion(hg, state.coloring, state.frozen)

    target = state.branch_target()
    if target is not None:
        v = target.node
        old = state.coloring[v]
        state.freeze(v)
        for color in range(1, hg.r + 1):
            if color == old:
                continue
            state.recolor(v, color)
            found = _search(hg, state, budget - 1, depth + 1, stats, standard_mode, trace)
            if found is not None:
                return found
        state.recolor(v, old)
        state.unfreeze(v)
        return None

    # No rainbow edge has exactly one unfrozen node, yet some non-rainbow
    # edge has r-1 frozen members, so neither exit above applies. Branch
    # wider: every unfrozen node of the chosen rainbow edge, every color.
    ei = state.fallback_edge()
    unfrozen = [v for v in hg.edges[ei] if v not in state.frozen]
    for v in unfrozen:
        old = state.coloring[v]
        state.freeze(v)
        for color in range(1, hg.r + 1):
            if color == old:
                continue
            state.recolor(v, color)
            found = _search(hg, state, budget - 1, depth + 1, stats, False, trace)
            if found is not None:
                return found
        state.recolor(v, old)
        state.unfreeze(v)
    return None


def det_nrc(
    hg: Hypergraph,
    radius: Optional[int] = None,
    workers: int = 1,
    trace: Optional[TraceFn] = None,
) -> SearchOutcome:
    """Decide no-rainbow r-colorability by trying every initial candidate
    pair at the full search radius; stops at the first certified success.

    n < r admits no surjective coloring, so the answer is immediate. With
    workers > 1 the starts are searched in parallel chunks; the decision is
    unchanged but stats may differ from a sequential run.
    """
    t0 = time.perf_counter()
    stats = SearchStats()
    if hg.n < hg.r:
        stats.elapsed = time.perf_counter() - t0
        return SearchOutcome(NOT_COLORABLE, None, stats)
    if radius is None:
        radius = search_radius(hg.n, hg.r)
    if workers > 1:
        return _det_parallel(hg, radius, workers, t0)
    for pair in enumerate_initial_pairs(hg):
        outcome = local_search(hg, pair, radius, trace)
        stats.absorb(outcome.stats)
        if outcome.colorable:
            stats.elapsed = time.perf_counter() - t0
            return SearchOutcome(COLORABLE, outcome.certificate, stats)
    stats.elapsed = time.perf_counter() - t0
    return SearchOutcome(NOT_COLORABLE, None, stats)


def _det_chunk(args) -> dict:
    n, r, edges, radius, start, stop = args
    hg = Hypergraph(n, r, edges)
    stats = SearchStats()
    certificate = None
    for pair in itertools.islice(enumerate_initial_pairs(hg), start, stop):
        outcome = local_search(hg, pair, radius)
        stats.absorb(outcome.stats)
        if outcome.colorable:
            certificate = outcome.certificate
            break
    return {
        "certificate": certificate,
        "recursion_nodes": stats.recursion_nodes,
        "fallback_nodes": stats.fallback_nodes,
        "trials": stats.trials,
        "max_start_nodes": stats.max_start_nodes,
    }


def _det_parallel(hg: Hypergraph, radius: int, workers: int, t0: float) -> SearchOutcome:
    total = initial_pair_count(hg.n, hg.r)
    chunks = max(1, min(4 * workers, total))
    step = -(-total // chunks)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    args = [(hg.n, hg.r, hg.edges, radius, lo, hi) for lo, hi in bounds]
    stats = SearchStats()
    certificate = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(_det_chunk, a): i for i, a in enumerate(args)}
        pending = set(futures)
        results: dict[int, dict] = {}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                results[futures[fut]] = fut.result()
            if any(res["certificate"] is not None for res in results.values()):
                for fut in pending:
                    fut.cancel()
                pending = set()
    for idx in sorted(results):
        res = results[idx]
        stats.recursion_nodes += res["recursion_nodes"]
        stats.fallback_nodes += res["fallback_nodes"]
        stats.trials += res["trials"]
        stats.max_start_nodes = max(stats.max_start_nodes, res["max_start_nodes"])
        if certificate is None and res["certificate"] is not None:
            certificate = res["certificate"]
    stats.elapsed = time.perf_counter() - t0
    if certificate is not None:
        if not is_no_rainbow_coloring(hg, certificate):
            raise RuntimeError("internal error: parallel search returned invalid certificate")
        return SearchOutcome(COLORABLE, certificate, stats)
    return SearchOutcome(NOT_COLORABLE, None, stats)
