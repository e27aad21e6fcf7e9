"""State-complexity experiments: two-way NFAs versus unambiguous automata.

The package builds the universal witness automaton for a given number of
states, materializes its acceptance matrix over prefix and suffix tables,
computes exact matrix ranks over the rationals and over prime fields, and
counts ordered prefix tables in closed form; the rank and the count must
meet.  A companion module extracts the same table structure from arbitrary
two-way automata and checks that no choice of automaton and string sets
produces a higher rank.
"""

from .automata import (LEFT_MARKER, RIGHT_MARKER, Configuration, Nfa, TwoWayNfa,
                       count_accepting_paths, dump_automaton, is_unambiguous,
                       load_automaton, nfa_accepts, twonfa_accepts)
from .combinatorics import (NestedSetSequence, PrefixLayerFunction,
                            asymptotic_floor, count_ordered_prefix_tables,
                            enumerate_ordered_prefix_tables, p_count, s_count,
                            stirling2, table1_row)
from .crossing import (CrossingProfile, OptimalityReport, prefix_profile,
                       prefix_table_of, random_two_way_nfa, schmidt_matrix,
                       suffix_profile, suffix_table_of, verify_optimality)
from .errors import CapacityError
from .exact_linalg import IntMatrix, rank_exact, rank_mod_p
from .tables import (BipartiteArcGraph, LayerStructure, PrefixTable, SuffixTable,
                     augment, break_set, breaks_through, drops_down,
                     enumerate_prefix_tables, enumerate_suffix_tables, haspath,
                     is_ordered, layer_structure, starting_state, table_size,
                     table_rank_via_matrix)
from .witness import (BoolMatrix, GammaSymbol, PrefixSym, StartState, SuffixSym,
                      WitnessAutomaton, build_K, build_M, build_g_I,
                      decode_string, encode_string, m_entry)

__all__ = [name for name in dir() if not name.startswith("_")]
