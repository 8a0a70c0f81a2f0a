"""Reproducible instance families: uniform random, planted-satisfiable,
and complete (never colorable) hypergraphs."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

from .hypergraph import Hypergraph, format_certificate, parse_certificate

# below this many r-subsets, sample by enumeration; above it, by rejection
_ENUMERATE_LIMIT = 200_000


@dataclass(frozen=True)
class InstanceSpec:
    """Generator parameters for one reproducible instance."""

    family: str  # random | planted | complete
    n: int
    r: int
    m: int = 0
    seed: int = 0

    def generate(self) -> tuple[Hypergraph, Optional[list[int]]]:
        if self.n < self.r:
            raise ValueError(f"instance spec needs n >= r, got n={self.n}, r={self.r}")
        if self.family == "random":
            return gen_random(self.n, self.m, self.r, self.seed), None
        if self.family == "planted":
            return gen_planted(self.n, self.m, self.r, self.seed)
        if self.family == "complete":
            return gen_complete(self.n, self.r), None
        raise ValueError(f"unknown instance family {self.family!r}")

    def instance_id(self) -> str:
        if self.family == "complete":
            return f"complete:r={self.r},n={self.n}"
        return f"{self.family}:r={self.r},n={self.n},m={self.m},seed={self.seed}"


def gen_random(n: int, m: int, r: int, seed: int) -> Hypergraph:
    """m distinct edges drawn uniformly without replacement from all
    r-subsets of the n nodes; a pure function of its arguments."""
    limit = math.comb(n, r)
    if m > limit:
        raise ValueError(f"m={m} exceeds the {limit} distinct r-subsets of {n} nodes")
    rng = random.Random(seed)
    if limit <= _ENUMERATE_LIMIT:
        population = list(itertools.combinations(range(n), r))
        edges = rng.sample(population, m)
    else:
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < m:
            chosen.add(tuple(sorted(rng.sample(range(n), r))))
        edges = sorted(chosen)
    return Hypergraph(n, r, tuple(edges))


def gen_planted(n: int, m: int, r: int, seed: int) -> tuple[Hypergraph, list[int]]:
    """Draw a uniform surjective coloring, then m distinct r-subsets that are
    NOT rainbow under it. The coloring is a valid witness by construction.

    Subsets are rejection-sampled; more than 1000*m rejections means the
    request is infeasible (n = r being the canonical case: every full-size
    subset of a bijection is rainbow).
    """
    if n < r:
        raise ValueError(f"no surjective coloring exists for n={n} < r={r}")
    if m > math.comb(n, r):
        raise ValueError(f"m={m} exceeds the {math.comb(n, r)} distinct r-subsets")
    rng = random.Random(seed)
    while True:
        witness = [rng.randint(1, r) for _ in range(n)]
        if set(witness) == set(range(1, r + 1)):
            break
    chosen: set[tuple[int, ...]] = set()
    rejections = 0
    while len(chosen) < m:
        edge = tuple(sorted(rng.sample(range(n), r)))
        if edge in chosen or len({witness[v] for v in edge}) == r:
            rejections += 1
            if rejections > 1000 * m:
                raise ValueError(
                    f"infeasible: could not find {m} non-rainbow r-subsets "
                    f"for n={n}, r={r} (planted coloring leaves too few)"
                )
            continue
        chosen.add(edge)
    return Hypergraph(n, r, tuple(sorted(chosen))), witness


def gen_complete(n: int, r: int) -> Hypergraph:
    """All C(n, r) subsets as edges. Never colorable: any surjective coloring
    has one node of each color, and that r-set is a rainbow edge."""
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    return Hypergraph(n, r, tuple(itertools.combinations(range(n), r)))


def planted_comment(witness: list[int]) -> str:
    """Comment line carrying the planted witness; parsers skip it."""
    return "c planted: " + format_certificate(witness)


def read_planted_witness(text: str) -> Optional[list[int]]:
    """Recover the witness from a planted instance's comment, if present."""
    for line in text.splitlines():
        tokens = line.split()
        if tokens[:2] == ["c", "planted:"]:
            return parse_certificate(" ".join(tokens[2:]))
    return None
