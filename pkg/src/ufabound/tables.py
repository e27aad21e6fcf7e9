"""Prefix and suffix tables: crossing behaviour of a two-way automaton.

A prefix table f maps each state u in {1..n} to the non-empty set of
states in which the automaton can leave a fixed prefix to the right after
entering it in state u; some state whose value is contained in all other
values must exist (a starting state), and f at a starting state is the set
of states reachable from the initial configuration.  A suffix table g maps
each state to the set of states in which the automaton can leave a fixed
suffix to the left, with a special marker for states from which it can
accept outright; any accepting entry is saturated to the full set.

Tables double as bipartite graphs: left vertices feed right vertices
through a prefix table's arcs, right vertices feed left vertices through a
suffix table's arcs, and acceptance of the combined string is exactly the
existence of a path from the starting state to an accepting right vertex.

``values`` tuples are bit masks over {1..n} (see :mod:`ufabound.statesets`)
with values[u-1] holding the set for state u.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import exact_linalg
from .errors import CapacityError
from .statesets import (check_n, elements, format_set, full_mask, is_subset,
                        mask_of, parse_set)

ENUMERATION_MAX_N = 4


@dataclass(frozen=True)
class PrefixTable:
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "values", tuple(self.values))
        full = full_mask(self.n)
        if len(self.values) != self.n:
            raise ValueError("a prefix table needs one value per state")
        common = full
        for v in self.values:
            if v == 0:
                raise ValueError("prefix table values must be non-empty")
            if not is_subset(v, full):
                raise ValueError("value out of range")
            common &= v
        if common not in self.values:
            raise ValueError("no starting state: some value must be contained in all others")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "PrefixTable":
        return cls(n, tuple(mask_of(s) for s in sets))

    def value(self, u: int) -> int:
        return self.values[u - 1]


@dataclass(frozen=True)
class SuffixTable:
    n: int
    values: tuple[int, ...]       # values[v-1] = g(v) restricted to {1..n}
    accept_flags: int             # mask of states whose value contains Accept

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "values", tuple(self.values))
        full = full_mask(self.n)
        if len(self.values) != self.n:
            raise ValueError("a suffix table needs one value per state")
        if self.accept_flags == 0:
            raise ValueError("some state must lead to acceptance")
        if not is_subset(self.accept_flags, full):
            raise ValueError("accept flags out of range")
        for v, val in enumerate(self.values, start=1):
            if not is_subset(val, full):
                raise ValueError("value out of range")
            if self.accept_flags >> v & 1 and val != full:
                raise ValueError("an accepting entry must carry the full set")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]],
                  accept: Iterable[int]) -> "SuffixTable":
        return cls(n, tuple(mask_of(s) for s in sets), mask_of(accept))

    def value(self, v: int) -> int:
        return self.values[v - 1]


@dataclass(frozen=True)
class BipartiteArcGraph:
    """Arcs between left and right copies of {1..n}.

    left_to_right[u-1] is the mask of right vertices with an arc from
    (L, u); right_to_left[v-1] the mask of left vertices reachable from
    (R, v).
    """

    n: int
    left_to_right: tuple[int, ...]
    right_to_left: tuple[int, ...]

    def __post_init__(self):
        check_n(self.n)
        full = full_mask(self.n)
        for arcs in (self.left_to_right, self.right_to_left):
            if len(arcs) != self.n or any(not is_subset(m, full) for m in arcs):
                raise ValueError("bad arc masks")

    def union(self, other: "BipartiteArcGraph") -> "BipartiteArcGraph":
        if self.n != other.n:
            raise ValueError("mismatched sizes")
        return BipartiteArcGraph(
            self.n,
            tuple(a | b for a, b in zip(self.left_to_right, other.left_to_right)),
            tuple(a | b for a, b in zip(self.right_to_left, other.right_to_left)))


def prefix_graph(f: PrefixTable) -> BipartiteArcGraph:
    return BipartiteArcGraph(f.n, f.values, (0,) * f.n)


def suffix_graph(g: SuffixTable) -> BipartiteArcGraph:
    return BipartiteArcGraph(g.n, (0,) * g.n, g.values)


def haspath(graph: BipartiteArcGraph, start: int, targets: int) -> bool:
    """Is some right vertex in ``targets`` reachable from left vertex ``start``?

    Arcs only run left-to-right and right-to-left, so reachable-set masks
    grow monotonically side by side until they stabilize.
    """
    if not 1 <= start <= graph.n:
        raise ValueError(f"start vertex {start} out of range")
    lmask = 1 << start
    rmask = 0
    while True:
        new_r = rmask
        m = lmask
        while m:
            low = m & -m
            m ^= low
            new_r |= graph.left_to_right[low.bit_length() - 2]
        if new_r & targets:
            return True
        new_l = lmask
        m = new_r
        while m:
            low = m & -m
            m ^= low
            new_l |= graph.right_to_left[low.bit_length() - 2]
        if new_l == lmask and new_r == rmask:
            return False
        lmask, rmask = new_l, new_r


def starting_state(f: PrefixTable) -> int:
    """The minimal state whose value is contained in every other value."""
    common = full_mask(f.n)
    for v in f.values:
        common &= v
    return f.values.index(common) + 1


def table_size(f: PrefixTable) -> int:
    """Total number of arcs: the sum of value sizes."""
    return sum(v.bit_count() for v in f.values)


def augment(f: PrefixTable, u1: int, u2: int, v1: int, v2: int
            ) -> tuple[PrefixTable, PrefixTable, PrefixTable]:
    """Add the missing cross arcs (u1, v2) and (u2, v1), separately and jointly.

    Requires v1 in f(u1) and v2 in f(u2) while neither cross arc exists.
    All three results are valid prefix tables sharing f's starting state.
    """
    if u1 == u2 or v1 == v2:
        raise ValueError("indices must be distinct")
    for x in (u1, u2, v1, v2):
        if not 1 <= x <= f.n:
            raise ValueError(f"index {x} out of range")
    a, b = f.value(u1), f.value(u2)
    if not (a >> v1 & 1 and b >> v2 & 1):
        raise ValueError("v1 must lie in f(u1) and v2 in f(u2)")
    if a >> v2 & 1 or b >> v1 & 1:
        raise ValueError("the cross arcs must be absent from f")

    def patched(add1: bool, add2: bool) -> PrefixTable:
        vals = list(f.values)
        if add1:
            vals[u1 - 1] |= 1 << v2
        if add2:
            vals[u2 - 1] |= 1 << v1
        return PrefixTable(f.n, tuple(vals))

    return patched(True, False), patched(False, True), patched(True, True)


def _unordered_witness(f: PrefixTable):
    # literal scan for a pair of states with cross-missing arcs
    for u1, u2 in itertools.permutations(range(1, f.n + 1), 2):
        a, b = f.value(u1), f.value(u2)
        for v1 in elements(a & ~b):
            for v2 in elements(b & ~a):
                return (u1, u2, v1, v2)
    return None


def is_ordered(f: PrefixTable) -> bool:
    """True iff the values of f form a chain under inclusion.

    Both available characterizations (no cross-missing arc quadruple, and
    pairwise comparability of values) are evaluated and must agree; the
    agreement is a structural fact this package re-checks on every call.
    """
    quadruple_free = _unordered_witness(f) is None
    chain = all(is_subset(a, b) or is_subset(b, a)
                for a, b in itertools.combinations(f.values, 2))
    assert quadruple_free == chain, f"orderedness characterizations disagree on {f}"
    return chain


@dataclass(frozen=True)
class LayerStructure:
    """The chain of a table's distinct values and the derived layer maps.

    nested_sets is S_0 < S_1 < ... < S_k with S_k the full set (appended
    when the table never takes that value); rank_k counts the distinct
    values other than the full set.  prefix_layer[u-1] locates f(u) in the
    chain, suffix_layer[v-1] is the first chain index whose set contains v.
    """

    rank_k: int
    nested_sets: tuple[int, ...]
    prefix_layer: tuple[int, ...]
    suffix_layer: tuple[int, ...]


def layer_structure(f: PrefixTable) -> LayerStructure:
    if not is_ordered(f):
        raise ValueError("layer structure is defined for ordered tables only")
    full = full_mask(f.n)
    chain = sorted(set(f.values), key=int.bit_count)
    rank_k = sum(1 for s in chain if s != full)
    if chain[-1] != full:
        chain.append(full)
    index = {s: i for i, s in enumerate(chain)}
    pl = tuple(index[v] for v in f.values)
    sl = []
    for v in range(1, f.n + 1):
        sl.append(next(i for i, s in enumerate(chain) if s >> v & 1))
    return LayerStructure(rank_k, tuple(chain), pl, tuple(sl))


def table_rank_via_matrix(f: PrefixTable) -> int:
    """Rank of the complement matrix (1 at (u, v) iff v not in f(u)).

    Must coincide with the chain length from :func:`layer_structure`; the
    equality is asserted here as a cross-check between the combinatorial
    and the linear-algebraic views.
    """
    ls = layer_structure(f)
    full = full_mask(f.n)
    rows = [[(~f.value(u) & full) >> v & 1 for v in range(1, f.n + 1)]
            for u in range(1, f.n + 1)]
    r = exact_linalg.rank_exact(rows)
    assert r == ls.rank_k, f"matrix rank {r} != layer rank {ls.rank_k}"
    return r


def _cumulative_reach(f: PrefixTable, ls0: LayerStructure) -> list[int]:
    # reach[i] = union of f(u) over all u whose prefix layer in ls0 is <= i
    reach = [0] * (ls0.rank_k + 1)
    for u in range(1, f.n + 1):
        reach[ls0.prefix_layer[u - 1]] |= f.value(u)
    for i in range(1, ls0.rank_k + 1):
        reach[i] |= reach[i - 1]
    return reach


def _require_ordered(f: PrefixTable) -> None:
    if not is_ordered(f):
        raise ValueError("operation is defined for ordered tables only")


def breaks_through(f: PrefixTable, f0: PrefixTable, i: int) -> bool:
    """Does f, from f0's layers up to i, reach past f0's suffix layer i?"""
    ls0 = layer_structure(f0)
    if not 0 <= i < ls0.rank_k:
        raise ValueError(f"layer {i} out of range 0..{ls0.rank_k - 1}")
    _require_ordered(f)
    reach = _cumulative_reach(f, ls0)
    above = full_mask(f.n) & ~ls0.nested_sets[i]
    return bool(reach[i] & above)


def break_set(f: PrefixTable, f0: PrefixTable) -> set[int]:
    ls0 = layer_structure(f0)
    _require_ordered(f)
    reach = _cumulative_reach(f, ls0)
    full = full_mask(f.n)
    return {i for i in range(ls0.rank_k)
            if reach[i] & (full & ~ls0.nested_sets[i])}


def drops_down(f: PrefixTable, f0: PrefixTable, i: int) -> bool:
    """Does f, from f0's layers up to i, stay strictly below suffix layer i?"""
    ls0 = layer_structure(f0)
    if not 0 <= i < ls0.rank_k:
        raise ValueError(f"layer {i} out of range 0..{ls0.rank_k - 1}")
    _require_ordered(f)
    reach = _cumulative_reach(f, ls0)
    below = ls0.nested_sets[i - 1] if i >= 1 else 0
    return is_subset(reach[i], below)


def drop_layers(f: PrefixTable, f0: PrefixTable) -> set[int]:
    """Layers of f0 from which f drops down."""
    ls0 = layer_structure(f0)
    _require_ordered(f)
    reach = _cumulative_reach(f, ls0)
    out = set()
    for i in range(ls0.rank_k):
        below = ls0.nested_sets[i - 1] if i >= 1 else 0
        if is_subset(reach[i], below):
            out.add(i)
    return out


def _check_enumeration_size(n: int) -> None:
    check_n(n)
    if n > ENUMERATION_MAX_N:
        raise CapacityError(
            f"exhaustive table enumeration is limited to n <= {ENUMERATION_MAX_N}")


def enumerate_prefix_tables(n: int) -> list[PrefixTable]:
    """All prefix tables on {1..n}, ordered by their value-mask tuples."""
    _check_enumeration_size(n)
    full = full_mask(n)
    nonempty = [m for m in range(2, full + 1) if m and is_subset(m, full)]
    out = []
    for values in itertools.product(nonempty, repeat=n):
        common = full
        for v in values:
            common &= v
        if common in values:
            out.append(PrefixTable(n, values))
    return out


def enumerate_suffix_tables(n: int) -> list[SuffixTable]:
    """All suffix tables on {1..n}, accept flags most significant."""
    _check_enumeration_size(n)
    full = full_mask(n)
    subsets = [m for m in range(0, full + 1) if is_subset(m, full)]
    accept_masks = [m for m in subsets if m]
    out = []
    for accept in accept_masks:
        free = [v for v in range(1, n + 1) if not accept >> v & 1]
        for assignment in itertools.product(subsets, repeat=len(free)):
            values = [full] * n
            for v, val in zip(free, assignment):
                values[v - 1] = val
            out.append(SuffixTable(n, tuple(values), accept))
    return out


def enumerate_ordered_prefix_tables_by_filter(n: int) -> list[PrefixTable]:
    return [f for f in enumerate_prefix_tables(n) if is_ordered(f)]


# ---------------------------------------------------------------------------
# text serialization: "n; f(1); f(2); ..." with comma-separated 1-based
# states, "-" for the empty set, and "A" marking an accepting suffix entry

def prefix_table_to_text(f: PrefixTable) -> str:
    return "; ".join([str(f.n)] + [format_set(v) for v in f.values])


def prefix_table_from_text(text: str) -> PrefixTable:
    parts = [p.strip() for p in text.split(";")]
    n = int(parts[0])
    if len(parts) != n + 1:
        raise ValueError(f"expected {n} values, got {len(parts) - 1}")
    return PrefixTable(n, tuple(parse_set(p, n) for p in parts[1:]))


def suffix_table_to_text(g: SuffixTable) -> str:
    parts = [str(g.n)]
    for v in range(1, g.n + 1):
        parts.append("A" if g.accept_flags >> v & 1 else format_set(g.value(v)))
    return "; ".join(parts)


def suffix_table_from_text(text: str) -> SuffixTable:
    parts = [p.strip() for p in text.split(";")]
    n = int(parts[0])
    if len(parts) != n + 1:
        raise ValueError(f"expected {n} values, got {len(parts) - 1}")
    full = full_mask(n)
    values = []
    accept = 0
    for v, part in enumerate(parts[1:], start=1):
        if part == "A":
            accept |= 1 << v
            values.append(full)
        else:
            values.append(parse_set(part, n))
    return SuffixTable(n, tuple(values), accept)
