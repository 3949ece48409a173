"""Model inference for component-based system logs.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._prins import (  # noqa: F401
    Gfsm,
    Log,
    LogEntry,
    LogSet,
    Rational,
    build_pta,
    duplicate,
    generate_corpus,
    hybrid_determinize,
    infer,
    infer_all,
    infer_component,
    isomorphic,
    kfold_evaluate,
    lds,
    model_from_json,
    mutate_negative,
    parse_logs,
    parse_logs_file,
    partition,
    powerset,
    project,
    stitch,
    stitch_only,
)

__all__ = [
    "Gfsm",
    "Log",
    "LogEntry",
    "LogSet",
    "Rational",
    "build_pta",
    "duplicate",
    "generate_corpus",
    "hybrid_determinize",
    "infer",
    "infer_all",
    "infer_component",
    "isomorphic",
    "kfold_evaluate",
    "lds",
    "model_from_json",
    "mutate_negative",
    "parse_logs",
    "parse_logs_file",
    "partition",
    "powerset",
    "project",
    "stitch",
    "stitch_only",
]
