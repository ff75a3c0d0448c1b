"""Canonical labeling by individualization, for graphs of bounded rigidity index.

A sequence s = (v_1..v_r) is probed by giving v_i color i and, one vertex at a
time, an extra color r+1; the sequence is fixing when the invariant codes of
those per-vertex colorings are pairwise distinct. With a complete invariant
this agrees exactly with the automorphism-based fixing test, which is what
rigidity_consistency_check demonstrates.

The individualization colors are the literal values 1..r+1, which assumes the
input carries no colors of its own in that range; precolored inputs would need
an offset scheme and are not supported here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ContractViolationError, InvariantFailureError
from .graph import ColoredGraph, Labeling, encoded_length
from .invariant import BruteForceBackend, InvariantBackend
from .oracles import automorphisms, pointwise_fixed
from .parallel import RunStats, parallel_map


@dataclass(frozen=True)
class FixingCandidate:
    """One probed sequence: its per-vertex codes and whether they were distinct."""

    sequence: tuple
    per_vertex_codes: dict
    fixing: bool


def individualize(graph: ColoredGraph, sequence) -> ColoredGraph:
    """Color i added onto the i-th sequence vertex, i = 1..r."""
    seq = tuple(sequence)
    if len(set(seq)) != len(seq):
        raise ContractViolationError("individualization sequence has repeated vertices")
    return graph.with_extra_colors({v: [i + 1] for i, v in enumerate(seq)})


def individualize_plus(graph: ColoredGraph, sequence, vertex: int) -> ColoredGraph:
    """individualize(...) with color r+1 additionally on `vertex`.

    The vertex may itself belong to the sequence; color sets simply stack.
    """
    seq = tuple(sequence)
    return individualize(graph, seq).with_extra_colors({vertex: [len(seq) + 1]})


def _probe(graph: ColoredGraph, sequence, backend: InvariantBackend, stats=None) -> FixingCandidate:
    codes = {
        v: backend.code(individualize_plus(graph, sequence, v), stats)
        for v in graph.vertices
    }
    fixing = len(set(codes.values())) == graph.n
    return FixingCandidate(tuple(sequence), codes, fixing)


def is_fixing_by_invariant(graph: ColoredGraph, sequence, backend: InvariantBackend) -> bool:
    """True when the per-vertex individualized codes are pairwise distinct."""
    return _probe(graph, sequence, backend).fixing


def is_fixing_bf(graph: ColoredGraph, vertex_set, cap: int | None = None) -> bool:
    """Exact fixing-set test: no non-trivial automorphism fixes the set pointwise."""
    group = automorphisms(graph, cap)
    return not pointwise_fixed(group, set(vertex_set))


def canon_rigidity(
    graph: ColoredGraph,
    r: int,
    backend: InvariantBackend,
    workers: int = 1,
    stats: RunStats | None = None,
) -> Labeling:
    """Canonical labeling when some fixing r-sequence exists, else the identity
    with a diagnostic flag.

    The chosen sequence minimizes the code of its individualized coloring;
    sequence vertices receive labels 1..r, and the rest are ranked by their
    per-vertex codes (distinct by the fixing property) shifted by r.
    """
    stats = stats if stats is not None else RunStats(workers)
    stats.observe_depth(1)
    sequences = list(itertools.permutations(graph.vertices, r))
    probes = parallel_map(
        lambda s: _probe(graph, s, backend, stats), sequences, workers
    )
    fixing = [p for p in probes if p.fixing]
    if not fixing:
        stats.diagnose(f"no fixing {r}-sequence; identity fallback")
        return Labeling.identity(graph.n)

    chosen = _min_sequence_code(graph, [p.sequence for p in fixing], backend, workers, stats)
    codes = next(p.per_vertex_codes for p in fixing if p.sequence == chosen)

    labels = {v: i + 1 for i, v in enumerate(chosen)}
    rest = [v for v in graph.vertices if v not in labels]
    rest.sort(key=lambda v: codes[v])
    for i in range(len(rest) - 1):
        if codes[rest[i]] == codes[rest[i + 1]]:
            raise InvariantFailureError(
                "per-vertex codes tied on a sequence marked fixing; invariant is incomplete"
            )
    for i, v in enumerate(rest):
        labels[v] = r + 1 + i
    return Labeling(labels[v] for v in graph.vertices)


def _min_sequence_code(graph, sequences, backend, workers, stats):
    """Sequence whose individualized coloring has the minimal code; lexicographically
    first sequence among ties. Bounded scan for the brute-force backend."""
    colorings = [individualize(graph, s) for s in sequences]
    if isinstance(backend, BruteForceBackend) and len(colorings) > 1:
        if len({encoded_length(g) for g in colorings}) == 1:
            best_idx, bound = None, None
            for i, g in enumerate(colorings):
                code = backend.code_bounded(g, bound, stats)
                if code is not None and (bound is None or code.data < bound):
                    best_idx, bound = i, code.data
            return sequences[best_idx]
    codes = parallel_map(lambda g: backend.code(g, stats), colorings, workers)
    best = min(range(len(codes)), key=lambda i: (codes[i], sequences[i]))
    return sequences[best]


@dataclass(frozen=True)
class ConsistencyReport:
    """Agreement between the invariant fixing test and the automorphism oracle."""

    n: int
    r: int
    checked: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def rigidity_consistency_check(
    graph: ColoredGraph,
    r: int,
    backend: InvariantBackend | None = None,
    cap: int | None = None,
) -> ConsistencyReport:
    """For every r-sequence, compare is_fixing_by_invariant (with a complete
    backend, brute force by default) against the automorphism-based test."""
    backend = backend if backend is not None else BruteForceBackend(cap)
    group = automorphisms(graph, cap)
    mismatches = []
    checked = 0
    for seq in itertools.permutations(graph.vertices, r):
        by_invariant = is_fixing_by_invariant(graph, seq, backend)
        by_oracle = not pointwise_fixed(group, set(seq))
        checked += 1
        if by_invariant != by_oracle:
            mismatches.append((seq, by_invariant, by_oracle))
    return ConsistencyReport(graph.n, r, checked, tuple(mismatches))
