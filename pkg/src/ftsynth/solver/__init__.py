from .search import SearchResult, forward_search, search_strategies
from .encode import CnfInstance, encode_bounded_witness, encode_bounded_witness_interleaved
from .cnf import solve_cnf
from .dimacs import dump_dimacs, dump_varmap, load_dimacs, run_external
from .extract import extract_strategy

__all__ = [
    "CnfInstance",
    "SearchResult",
    "dump_dimacs",
    "dump_varmap",
    "encode_bounded_witness",
    "encode_bounded_witness_interleaved",
    "extract_strategy",
    "forward_search",
    "load_dimacs",
    "run_external",
    "search_strategies",
    "solve_cnf",
]
