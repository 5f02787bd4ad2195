"""Variational iteration solver for a radial epitaxial-growth boundary value problem."""

from ._core import (
    AmbiguousClassification,
    BoundaryKind,
    BranchLabel,
    BranchRoot,
    CriticalEstimate,
    DomainError,
    Error,
    InvalidBracket,
    IterationBudgetExceeded,
    IvpOverflow,
    NonIntegrableDefect,
    NonRecoverable,
    NotTwoBranches,
    SolutionBranch,
    boundary_residual,
    default_iterations,
    find_branches,
    find_critical_lambda,
    iterate,
    linear_approximation,
    oracle_branches,
    run_cli,
    solve,
    symbolic_iterate,
)

__all__ = [
    "AmbiguousClassification",
    "BoundaryKind",
    "BranchLabel",
    "BranchRoot",
    "CriticalEstimate",
    "DomainError",
    "Error",
    "InvalidBracket",
    "IterationBudgetExceeded",
    "IvpOverflow",
    "NonIntegrableDefect",
    "NonRecoverable",
    "NotTwoBranches",
    "SolutionBranch",
    "boundary_residual",
    "default_iterations",
    "find_branches",
    "find_critical_lambda",
    "iterate",
    "linear_approximation",
    "oracle_branches",
    "run_cli",
    "solve",
    "symbolic_iterate",
]
