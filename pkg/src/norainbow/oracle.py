"""Brute-force ground truth by exhaustive enumeration of all r^n colorings.

oracle_decide counts every surjective no-rainbow coloring exactly, with no
symmetry shortcuts; the enumeration is chunked through numpy so that desk
sizes (r=3 up to n=16, r=4 up to n=13) are tractable. oracle_verify_certificate
is a deliberately naive, standalone re-statement of the definition used to
cross-check every certificate any solver emits.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .hypergraph import COLORABLE, NOT_COLORABLE, Hypergraph

DEFAULT_BUDGET = 10**8
BUDGET_ENV_VAR = "NRC_ORACLE_BUDGET"


@dataclass
class OracleReport:
    decision: str
    witness_count: int
    sample_witness: Optional[list[int]]


def resolve_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def oracle_decide(hg: Hypergraph, budget: Optional[int] = None) -> OracleReport:
    """Enumerate all r^n colorings in base-r counting order (node 0 most
    significant) and count the surjective ones inducing no rainbow edge.
    The sample witness is the first in enumeration order.

    Refuses instances needing more than the budget (parameter, else the
    NRC_ORACLE_BUDGET environment variable, else 10^8 colorings).
    """
    budget = resolve_budget(budget)
    total = hg.r**hg.n
    if total > budget:
        raise ValueError(
            f"enumeration needs {total} colorings, over budget {budget}; "
            f"pass budget>={total} to force"
        )
    if hg.n == 0:
        return OracleReport(NOT_COLORABLE, 0, None)

    n, r = hg.n, hg.r
    powers = np.array([r ** (n - 1 - k) for k in range(n)], dtype=np.int64)
    edges_arr = np.array(hg.edges, dtype=np.int64) if hg.m else None
    per_row = max(1, hg.m * r + n * r)
    chunk = int(max(1024, min(1 << 16, 10**7 // per_row)))

    witness_count = 0
    sample: Optional[list[int]] = None
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        colorings = (idx[:, None] // powers[None, :]) % r  # colors 0..r-1
        valid = np.ones(hi - lo, dtype=bool)
        for c in range(r):
            valid &= (colorings == c).any(axis=1)
        if edges_arr is not None and valid.any():
            on_edges = colorings[:, edges_arr]  # (rows, m, r)
            on_edges = np.sort(on_edges, axis=2)
            rainbow = (np.diff(on_edges, axis=2) != 0).all(axis=2)  # (rows, m)
            valid &= ~rainbow.any(axis=1)
        found = int(valid.sum())
        if found and sample is None:
            row = int(np.argmax(valid))
            sample = [int(c) + 1 for c in colorings[row]]
        witness_count += found

    decision = COLORABLE if witness_count > 0 else NOT_COLORABLE
    return OracleReport(decision, witness_count, sample)


def oracle_verify_certificate(hg: Hypergraph, coloring: list[int]) -> bool:
    """Definition-level certificate check, independent of the solver-side
    predicates: the coloring maps into 1..r, each color appears on some
    node, and no edge carries every color."""
    if len(coloring) != hg.n:
        raise ValueError(f"certificate length {len(coloring)} != n={hg.n}")
    for c in coloring:
        if not 1 <= c <= hg.r:
            return False
    for color in range(1, hg.r + 1):
        if not any(coloring[v] == color for v in range(hg.n)):
            return False
    for e in hg.edges:
        if all(any(coloring[v] == color for v in e) for color in range(1, hg.r + 1)):
            return False
    return True
