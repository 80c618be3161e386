"""Duality-diagram multivariate analysis."""

from ._ddiag import (
    SUMMARY_SCHEMA_VERSION,
    CaTriplet,
    DdiagError,
    DiagramEigen,
    OperatorEigen,
    PcaivResult,
    StatisResult,
    Triplet,
    ca,
    chi2,
    covv,
    pca,
    pcaiv,
    principal_components,
    run,
    rv,
    spd_power,
    statis,
    sym_eigen,
)

__all__ = [
    "SUMMARY_SCHEMA_VERSION",
    "CaTriplet",
    "DdiagError",
    "DiagramEigen",
    "OperatorEigen",
    "PcaivResult",
    "StatisResult",
    "Triplet",
    "ca",
    "chi2",
    "covv",
    "pca",
    "pcaiv",
    "principal_components",
    "run",
    "rv",
    "spd_power",
    "statis",
    "sym_eigen",
]
