"""The universal witness automaton and its acceptance matrices.

The automaton of size n reads three-letter strings: a letter naming a
starting state, a letter carrying a whole prefix table, and a letter
carrying a whole suffix table.  Its alphabet (one letter per table) is
astronomically large, so it is represented by a transition oracle that is
evaluated per concrete letter; a concrete two-way automaton over just the
letters of one input string can be materialized on demand and fed to the
generic simulator.

The acceptance matrix has one row per prefix table and one column per
suffix table; the reduced matrix keeps only the rows of ordered prefix
tables.  Entries are decided through bipartite-graph reachability, which
agrees with direct two-way simulation (that agreement is a checkable
invariant, exercised in the test suite).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .automata import LEFT_MARKER, RIGHT_MARKER, TwoWayNfa, twonfa_accepts
from .errors import CapacityError
from .statesets import elements, full_mask
from .tables import (BipartiteArcGraph, PrefixTable,
                     SuffixTable, enumerate_prefix_tables,
                     enumerate_suffix_tables, haspath, is_ordered,
                     layer_structure, prefix_graph, prefix_table_to_text,
                     starting_state, suffix_graph, suffix_table_to_text)

MATRIX_MAX_N = 4


@dataclass(frozen=True)
class StartState:
    """Letter that forces the automaton into a given state, moving right."""
    index: int


@dataclass(frozen=True)
class PrefixSym:
    """Letter carrying a prefix table; always moves right through it."""
    table: PrefixTable


@dataclass(frozen=True)
class SuffixSym:
    """Letter carrying a suffix table; accepting entries move right, the
    rest bounce back left."""
    table: SuffixTable


GammaSymbol = Union[StartState, PrefixSym, SuffixSym]


@dataclass(frozen=True)
class WitnessAutomaton:
    """Transition oracle over the symbolic alphabet, states {1..n}.

    Initial state 1; every state is accepting.  There are no moves on the
    right marker, so reaching it in any state accepts.
    """

    n: int

    @property
    def initial(self) -> frozenset[int]:
        return frozenset({1})

    @property
    def accepting(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def transitions(self, state: int, symbol) -> frozenset[tuple[int, int]]:
        if not 1 <= state <= self.n:
            raise ValueError(f"state {state} out of range")
        if symbol == LEFT_MARKER:
            return frozenset({(state, +1)})
        if symbol == RIGHT_MARKER:
            return frozenset()
        if isinstance(symbol, StartState):
            if not 1 <= symbol.index <= self.n:
                raise ValueError("start-state letter out of range")
            return frozenset({(symbol.index, +1)})
        if isinstance(symbol, PrefixSym):
            self._check_payload(symbol.table.n)
            return frozenset((v, +1) for v in elements(symbol.table.value(state)))
        if isinstance(symbol, SuffixSym):
            self._check_payload(symbol.table.n)
            g = symbol.table
            if g.accept_flags >> state & 1:
                return frozenset({(state, +1)})
            return frozenset((v, -1) for v in elements(g.value(state)))
        raise ValueError(f"not a letter of this alphabet: {symbol!r}")

    def _check_payload(self, table_n: int) -> None:
        if table_n != self.n:
            raise ValueError("letter payload has the wrong size")

    def concretize(self, symbols: Sequence[GammaSymbol]) -> tuple[TwoWayNfa, list[int]]:
        """A plain two-way automaton over just the letters of ``symbols``.

        Returns the automaton (0-based states) and the input word as
        symbol ids.
        """
        ids: dict[GammaSymbol, int] = {}
        for s in symbols:
            ids.setdefault(s, len(ids))
        trans: dict = {}
        for q in range(1, self.n + 1):
            trans[(q - 1, LEFT_MARKER)] = {(q - 1, +1)}
            for sym, c in ids.items():
                moves = {(t - 1, d) for t, d in self.transitions(q, sym)}
                if moves:
                    trans[(q - 1, c)] = moves
        nfa = TwoWayNfa(self.n, max(len(ids), 1), frozenset({0}), trans,
                        frozenset(range(self.n)))
        return nfa, [ids[s] for s in symbols]

    def accepts(self, symbols: Sequence[GammaSymbol]) -> bool:
        nfa, word = self.concretize(symbols)
        return twonfa_accepts(nfa, word)


def encode_string(f: PrefixTable, g: SuffixTable) -> tuple[GammaSymbol, ...]:
    """The canonical three-letter input for a table pair."""
    if f.n != g.n:
        raise ValueError("tables must have equal n")
    return (StartState(starting_state(f)), PrefixSym(f), SuffixSym(g))


def decode_string(symbols: Sequence[GammaSymbol]) -> tuple[PrefixTable, SuffixTable]:
    """Inverse of :func:`encode_string`; rejects non-canonical strings."""
    if (len(symbols) != 3
            or not isinstance(symbols[0], StartState)
            or not isinstance(symbols[1], PrefixSym)
            or not isinstance(symbols[2], SuffixSym)):
        raise ValueError("expected [start letter, prefix letter, suffix letter]")
    f, g = symbols[1].table, symbols[2].table
    if symbols[0].index != starting_state(f):
        raise ValueError("start letter does not name the table's starting state")
    if f.n != g.n:
        raise ValueError("tables must have equal n")
    return f, g


def table_pair_graph(f: PrefixTable, g: SuffixTable) -> BipartiteArcGraph:
    return prefix_graph(f).union(suffix_graph(g))


def m_entry(f: PrefixTable, g: SuffixTable, cross_check: bool = False) -> int:
    """Acceptance of the encoded pair: 1 iff the combined graph has a path
    from the starting state to an accepting right vertex.

    With ``cross_check`` the entry is recomputed by simulating the witness
    automaton on the encoded string, and the two answers must agree.
    """
    if f.n != g.n:
        raise ValueError("tables must have equal n")
    entry = int(haspath(table_pair_graph(f, g), starting_state(f), g.accept_flags))
    if cross_check:
        simulated = int(WitnessAutomaton(f.n).accepts(encode_string(f, g)))
        assert simulated == entry, (
            f"graph reachability ({entry}) and simulation ({simulated}) "
            f"disagree on {f}, {g}")
    return entry


# ---------------------------------------------------------------------------
# acceptance matrices

@dataclass(frozen=True)
class BoolMatrix:
    """A dense 0/1 matrix with labelled rows and columns.

    Each row is packed into one int, bit j = column j.
    """

    row_labels: tuple
    col_labels: tuple
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_labels) != len(self.bits):
            raise ValueError("one label per row required")
        if len(self.col_labels) != self.cols:
            raise ValueError("one label per column required")
        if any(b >> self.cols for b in self.bits):
            raise ValueError("row bits exceed the column count")

    @property
    def rows(self) -> int:
        return len(self.bits)

    def entry(self, i: int, j: int) -> int:
        return self.bits[i] >> j & 1

    def row_list(self, i: int) -> list[int]:
        b = self.bits[i]
        return [b >> j & 1 for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [self.row_list(i) for i in range(self.rows)]

    def to_numpy(self, dtype=np.int8) -> np.ndarray:
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=dtype)
        nbytes = (self.cols + 7) // 8
        raw = np.frombuffer(
            b"".join(b.to_bytes(nbytes, "little") for b in self.bits), dtype=np.uint8)
        unpacked = np.unpackbits(raw.reshape(self.rows, nbytes),
                                 axis=1, bitorder="little")[:, :self.cols]
        return unpacked.astype(dtype)

    def select(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BoolMatrix":
        col_idx = list(col_idx)
        bits = []
        for i in row_idx:
            b = self.bits[i]
            packed = 0
            for jj, j in enumerate(col_idx):
                packed |= (b >> j & 1) << jj
            bits.append(packed)
        return BoolMatrix(tuple(self.row_labels[i] for i in row_idx),
                          tuple(self.col_labels[j] for j in col_idx),
                          len(col_idx), tuple(bits))


def _suffix_arc_maps(n: int, suffixes: Sequence[SuffixTable]):
    # per suffix table: lookup from a right-vertex mask to the mask of left
    # vertices reachable through it, plus its accepting mask
    size = 1 << (n + 1)
    vals = np.zeros((len(suffixes), n + 1), dtype=np.int32)
    for j, g in enumerate(suffixes):
        for v in range(1, n + 1):
            vals[j, v] = g.value(v)
    gmap = np.zeros((len(suffixes), size), dtype=np.int32)
    for mask in range(1, size):
        low = mask & -mask
        gmap[:, mask] = gmap[:, mask ^ low] | vals[:, low.bit_length() - 1]
    amask = np.array([g.accept_flags for g in suffixes], dtype=np.int32)
    return gmap, amask


def _row_bits(f: PrefixTable, gmap: np.ndarray, amask: np.ndarray) -> int:
    # one matrix row: run the alternating reachability over all columns at once
    n = f.n
    size = 1 << (n + 1)
    fmap = np.zeros(size, dtype=np.int32)
    contrib = [0] + list(f.values)
    for mask in range(1, size):
        low = mask & -mask
        fmap[mask] = fmap[mask ^ low] | contrib[low.bit_length() - 1]
    num = gmap.shape[0]
    cols = np.arange(num)
    left = np.full(num, 1 << starting_state(f), dtype=np.int32)
    right = np.zeros(num, dtype=np.int32)
    for _ in range(2 * n + 2):
        right = right | fmap[left]
        left = left | gmap[cols, right]
    hits = (right & amask) != 0
    packed = np.packbits(hits, bitorder="little").tobytes()
    return int.from_bytes(packed, "little")


def _build_matrix(prefixes: Sequence[PrefixTable], suffixes: Sequence[SuffixTable],
                  n: int, jobs: int) -> BoolMatrix:
    gmap, amask = _suffix_arc_maps(n, suffixes)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            bits = list(pool.map(lambda f: _row_bits(f, gmap, amask), prefixes))
    else:
        bits = [_row_bits(f, gmap, amask) for f in prefixes]
    return BoolMatrix(tuple(prefixes), tuple(suffixes), len(suffixes), tuple(bits))


def _check_matrix_size(n: int) -> None:
    if not 1 <= n <= MATRIX_MAX_N:
        raise CapacityError(f"acceptance matrices are supported for n <= {MATRIX_MAX_N}")


def build_M(n: int, jobs: int = 1) -> BoolMatrix:
    """Acceptance matrix over all prefix tables x all suffix tables."""
    _check_matrix_size(n)
    return _build_matrix(enumerate_prefix_tables(n), enumerate_suffix_tables(n),
                         n, jobs)


def build_K(n: int, jobs: int = 1) -> BoolMatrix:
    """The row-submatrix of the acceptance matrix on ordered prefix tables."""
    _check_matrix_size(n)
    ordered = [f for f in enumerate_prefix_tables(n) if is_ordered(f)]
    return _build_matrix(ordered, enumerate_suffix_tables(n), n, jobs)


# ---------------------------------------------------------------------------
# the staged suffix-table family used in the independence argument

def build_g_I(f0: PrefixTable, stage_layers: set[int] | frozenset[int]) -> SuffixTable:
    """Suffix table that mirrors f0's layers, staging a breakthrough at
    each layer in ``stage_layers``.

    A right vertex on suffix layer s feeds exactly the left vertices on
    prefix layers up to s (or up to s+1 where a breakthrough is staged);
    entries that would reach past the top layer accept outright.
    """
    ls = layer_structure(f0)
    k = ls.rank_k
    stage = set(stage_layers)
    if not stage <= set(range(k)):
        raise ValueError(f"stage layers must lie in 0..{k - 1}")
    full = full_mask(f0.n)
    # left vertices on prefix layer <= j, for each j
    pl_le = [0] * (k + 1)
    for u in range(1, f0.n + 1):
        pl_le[ls.prefix_layer[u - 1]] |= 1 << u
    for j in range(1, k + 1):
        pl_le[j] |= pl_le[j - 1]
    values = []
    accept = 0
    for v in range(1, f0.n + 1):
        s = ls.suffix_layer[v - 1]
        if s not in stage and s < k:
            values.append(pl_le[s])
        elif s in stage and s + 1 < k:
            values.append(pl_le[s + 1])
        else:
            values.append(full)
            accept |= 1 << v
    return SuffixTable(f0.n, tuple(values), accept)


# ---------------------------------------------------------------------------
# matrix text format: "rows cols" on the first line, then one line of
# contiguous 0/1 characters per row; when the labels are tables, companion
# .rows/.cols files carry them in the table text serialization

def format_matrix(m: BoolMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        b = m.bits[i]
        lines.append("".join("1" if b >> j & 1 else "0" for j in range(m.cols)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BoolMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        rows, cols = map(int, lines[0].split())
    except ValueError:
        raise ValueError("first line must be 'rows cols'") from None
    if len(lines) != rows + 1:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    bits = []
    for ln in lines[1:]:
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError("rows must be contiguous 0/1 strings of the stated width")
        b = 0
        for j, ch in enumerate(ln):
            if ch == "1":
                b |= 1 << j
        bits.append(b)
    return BoolMatrix(tuple(range(rows)), tuple(range(cols)), cols, tuple(bits))


def save_matrix(m: BoolMatrix, path: str, labels: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(m))
    if not labels:
        return
    if all(isinstance(lbl, PrefixTable) for lbl in m.row_labels):
        with open(path + ".rows", "w", encoding="utf-8") as fh:
            for lbl in m.row_labels:
                fh.write(prefix_table_to_text(lbl) + "\n")
    if all(isinstance(lbl, SuffixTable) for lbl in m.col_labels):
        with open(path + ".cols", "w", encoding="utf-8") as fh:
            for lbl in m.col_labels:
                fh.write(suffix_table_to_text(lbl) + "\n")


def load_matrix(path: str) -> BoolMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())
