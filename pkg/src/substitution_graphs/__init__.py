"""Configuration graphs of primitive aperiodic substitutions and the Zorro construction."""
from .config_graph import (
    BipartiteMultigraph,
    ConfigurationGraph,
    Periodicity,
    PeriodicityVerdict,
    Unsupported,
    classify,
    configuration_graph,
    is_undecided,
    isomorphic,
)
from .generators import (
    CompletionWindow,
    Generator,
    completion_window,
    enumerate_basic,
    extend_left,
    extend_right,
    g_related,
    is_basic,
    left_tail_equivalent,
    reduce_to_basic,
    right_tail_equivalent,
    validate_generator,
)
from .letter_graphs import (
    EndpointMap,
    Side,
    is_subfixed,
    l2_fast,
    least_segregating,
    ll_graph,
    ls_graph,
    rl_graph,
    rs_graph,
    subfixing_power,
)
from .words import (
    LanguageSlice,
    Substitution,
    apply,
    is_postfix_free,
    is_prefix_free,
    is_primitive,
    language_n,
    power,
    word,
)
from .zorro import detect_case, realize, verify_roundtrip

__version__ = "0.1.0"
