"""IFC checker and reference interpreter for annotated control blocks."""

from ._p4ifc import (
    CompileError,
    EvalError,
    Lattice,
    LatticeError,
    check,
    corpus_cases,
    corpus_file,
    nicheck,
    run,
)

__all__ = [
    "CompileError",
    "EvalError",
    "Lattice",
    "LatticeError",
    "check",
    "corpus_cases",
    "corpus_file",
    "nicheck",
    "run",
]
