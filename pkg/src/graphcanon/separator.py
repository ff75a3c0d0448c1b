"""Canonical labeling by balanced-separator recursion over a pluggable invariant.

The recursion at depth d works on a colored scope graph H: it enumerates the
separating r-sequences, picks the one whose individualized coloring minimizes
the invariant, puts the sequence vertices first, splits the rest into flaps
colored by their adjacency pattern toward the separator, orders flap blocks by
their invariant codes, and recurses (or solves flaps of at most r vertices by
trying every bijection). Colors introduced at depth d live in the block
((d-1)*(2^r+r), d*(2^r+r)], so no two depths ever collide.

Literal label values from the construction can exceed n, so every assignment is
realized as a rank in a global order and flattened to 1..n at the end.

Input graphs are expected to be uncolored, or at least colored outside the
recursion's reserved ranges: an input color inside ((d-1)*(2^r+r), d*(2^r+r)]
for some reachable depth d can alias a pattern color, since color sets absorb
duplicates. Recursion-introduced colors never collide with each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ContractViolationError, OracleCapacityError
from .graph import (
    ColoredGraph,
    Labeling,
    apply_permutation,
    are_isomorphic_bf,
    encode,
    encoded_length,
    resolve_cap,
)
from .invariant import BruteForceBackend, InvariantBackend
from .parallel import RunStats, parallel_map


@dataclass(frozen=True)
class SeparatorRun:
    """Fixed parameters of one separator-canonization run."""

    r: int
    block_width: int
    backend: InvariantBackend
    check: bool = False
    oracle_cap: int | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ContractViolationError("separator size bound must be at least 1")
        if self.block_width != 2**self.r + self.r:
            raise ContractViolationError("color block width must equal 2^r + r")


@dataclass(frozen=True)
class Flap:
    """One component of scope-minus-separator, colored by its adjacency pattern."""

    graph: ColoredGraph
    origin: dict  # flap vertex -> vertex of the parent scope


def is_separator(graph: ColoredGraph, vertex_set) -> bool:
    """True when every component of G minus the set has at most n/2 vertices.

    n is the order of this graph; the comparison is exact (2*size <= n).
    """
    xs = set(vertex_set)
    if not xs <= set(graph.vertices):
        raise ContractViolationError("separator candidates must be vertices of the graph")
    rest = [v for v in graph.vertices if v not in xs]
    sub, _ = graph.induced_subgraph(rest)
    return all(2 * len(comp) <= graph.n for comp in sub.components())


def mark_separating_sequences(graph: ColoredGraph, r: int):
    """All ordered r-sequences of distinct vertices whose set is a separator,
    in lexicographic order. Empty when none exist."""
    out = []
    for combo in itertools.combinations(graph.vertices, r):
        if is_separator(graph, combo):
            out.extend(itertools.permutations(combo))
    out.sort()
    return out


def decompose_flaps(graph: ColoredGraph, sequence, depth: int, run: SeparatorRun):
    """One flap per component of scope-minus-separator.

    Each flap vertex gains the pattern color
    (d-1)*W + r + 1 + sum of 2^(i-1) over the sequence positions i it is
    adjacent to, on top of its inherited colors. Flaps are renumbered 1..t and
    keep their origin maps; they are ordered by smallest original vertex.
    """
    sequence = tuple(sequence)
    if len(set(sequence)) != len(sequence):
        raise ContractViolationError("separator sequence has repeated vertices")
    if not is_separator(graph, sequence):
        raise ContractViolationError("sequence is not a separator of this scope")
    xs = set(sequence)
    base = (depth - 1) * run.block_width + run.r + 1
    rest = [v for v in graph.vertices if v not in xs]
    sub, sub_origin = graph.induced_subgraph(rest)
    flaps = []
    for comp in sorted(sub.components(), key=min):
        originals = sorted(sub_origin[v] for v in comp)
        fgraph, origin = graph.induced_subgraph(originals)
        pattern = {}
        for local, orig in origin.items():
            offset = sum(
                1 << i for i, s in enumerate(sequence) if graph.has_edge(orig, s)
            )
            pattern[local] = [base + offset]
        flaps.append(Flap(fgraph.with_extra_colors(pattern), origin))
    return flaps


def _min_code_over(backend, graphs, workers, stats) -> int:
    """Index of the code-minimal graph; the first index wins ties.

    For the brute-force backend the scan threads a running bound through the
    candidates, which prunes most of them outright; the selected index is
    identical to the unbounded parallel evaluation. Raw-byte bounds equal the
    code order only at a fixed encoded length, hence the guard.
    """
    if isinstance(backend, BruteForceBackend) and len(graphs) > 1:
        if len({encoded_length(g) for g in graphs}) == 1:
            best_idx = None
            bound = None
            for i, g in enumerate(graphs):
                code = backend.code_bounded(g, bound, stats)
                if code is not None and (bound is None or code.data < bound):
                    best_idx, bound = i, code.data
            return best_idx
    codes = parallel_map(lambda g: backend.code(g, stats), graphs, workers)
    return min(range(len(codes)), key=lambda i: (codes[i], i))


def canon_separator(
    graph: ColoredGraph,
    r: int,
    backend: InvariantBackend,
    check: bool = False,
    workers: int = 1,
    stats: RunStats | None = None,
    oracle_cap: int | None = None,
) -> Labeling:
    """Canonical labeling of the graph, given an invariant complete for the
    colorings arising in the run. Falls back to the identity labeling (with a
    diagnostic) when no separating r-sequence exists at the top level."""
    stats = stats if stats is not None else RunStats(workers)
    run = SeparatorRun(r, 2**r + r, backend, check, oracle_cap)
    order = _rank_scope(graph, 1, run, stats, workers)
    return Labeling.from_position_order(order)


def _rank_scope(scope: ColoredGraph, depth: int, run: SeparatorRun, stats, workers):
    stats.observe_depth(depth)
    if scope.n <= run.r:
        return _base_case(scope, run, stats)
    sequences = mark_separating_sequences(scope, run.r)
    if not sequences:
        stats.diagnose(
            f"no separating {run.r}-sequence at depth {depth}; identity fallback"
        )
        return list(scope.vertices)

    base = (depth - 1) * run.block_width
    individualized = [
        scope.with_extra_colors({v: [base + i + 1] for i, v in enumerate(seq)})
        for seq in sequences
    ]
    best_idx = _min_code_over(run.backend, individualized, workers, stats)
    chosen = sequences[best_idx]

    flaps = decompose_flaps(scope, chosen, depth, run)
    flap_codes = parallel_map(
        lambda fl: run.backend.code(fl.graph, stats), flaps, workers
    )
    if run.check:
        _cross_check_flaps(flaps, flap_codes, run, stats)

    blocks = sorted(
        range(len(flaps)),
        key=lambda i: (flap_codes[i], min(flaps[i].origin.values())),
    )

    def rank_flap(i: int):
        flap = flaps[i]
        if flap.graph.n > run.r:
            local = _rank_scope(flap.graph, depth + 1, run, stats, workers)
        else:
            local = _base_case(flap.graph, run, stats)
        return [flap.origin[v] for v in local]

    child_orders = parallel_map(rank_flap, blocks, workers)
    order = list(chosen)
    for sub in child_orders:
        order.extend(sub)
    return order


def _base_case(scope: ColoredGraph, run: SeparatorRun, stats):
    """Scopes of at most r vertices: try every bijection tau, color each vertex
    with (largest color present) + tau(v), keep the code-minimal tau."""
    if scope.n == 0:
        return []
    top = max((c for cs in scope.colors.values() for c in cs), default=0)
    perms = list(itertools.permutations(range(1, scope.n + 1)))
    candidates = [
        scope.with_extra_colors({v: [top + perm[v - 1]] for v in scope.vertices})
        for perm in perms
    ]
    best_idx = _min_code_over(run.backend, candidates, 1, stats)
    chosen = perms[best_idx]
    return sorted(scope.vertices, key=lambda v: chosen[v - 1])


def _cross_check_flaps(flaps, flap_codes, run: SeparatorRun, stats):
    """Equal-code flap pairs must be isomorphic when the backend is complete;
    brute force verifies this for flaps within the oracle cap."""
    cap = resolve_cap(run.oracle_cap)
    by_code: dict = {}
    for i, code in enumerate(flap_codes):
        by_code.setdefault(code, []).append(i)
    for code, idxs in by_code.items():
        for a, b in itertools.combinations(idxs, 2):
            ga, gb = flaps[a].graph, flaps[b].graph
            if max(ga.n, gb.n) > cap:
                continue
            try:
                witness = are_isomorphic_bf(ga, gb, cap)
            except OracleCapacityError:
                continue
            if witness is None:
                stats.diagnose(
                    "invariant failure: flaps with equal codes are not isomorphic"
                )


def find_isomorphism(
    graph: ColoredGraph,
    other: ColoredGraph,
    r: int,
    backend: InvariantBackend,
    check: bool = False,
    workers: int = 1,
    stats: RunStats | None = None,
    oracle_cap: int | None = None,
) -> Labeling | None:
    """Isomorphism from two canonical labelings, verified before returning.

    Equal canonical forms from an incomplete invariant can lie; the candidate
    mapping is checked edge by edge and color by color, and a failure is
    reported as an invariant diagnostic with None returned.
    """
    stats = stats if stats is not None else RunStats(workers)
    if graph.n != other.n:
        return None
    sig_g = canon_separator(graph, r, backend, check, workers, stats, oracle_cap)
    sig_h = canon_separator(other, r, backend, check, workers, stats, oracle_cap)
    if encode(apply_permutation(graph, sig_g)) != encode(apply_permutation(other, sig_h)):
        return None
    mapping = sig_h.inverse().compose(sig_g)
    if _is_isomorphism(graph, other, mapping):
        return mapping
    stats.diagnose(
        "invariant failure: equal canonical codes but the induced map is not an isomorphism"
    )
    return None


def _is_isomorphism(graph: ColoredGraph, other: ColoredGraph, mapping: Labeling) -> bool:
    if len(graph.edges) != len(other.edges):
        return False
    for u, v in graph.edges:
        if not other.has_edge(mapping[u], mapping[v]):
            return False
    for v in graph.vertices:
        if graph.color_set(v) != other.color_set(mapping[v]):
            return False
    return True
