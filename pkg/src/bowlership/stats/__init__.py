from .mannwhitney import EXACT, NORMAL_APPROX, MWResult, mann_whitney
from .normality import (
    ANDERSON_DARLING,
    CHI_SQUARE,
    SHAPIRO_WILK,
    TESTS,
    NormalityVerdict,
    anderson_darling,
    chi_square_normality,
    normality_battery,
    shapiro_wilk,
)

__all__ = [
    "EXACT",
    "NORMAL_APPROX",
    "MWResult",
    "mann_whitney",
    "ANDERSON_DARLING",
    "CHI_SQUARE",
    "SHAPIRO_WILK",
    "TESTS",
    "NormalityVerdict",
    "anderson_darling",
    "chi_square_normality",
    "normality_battery",
    "shapiro_wilk",
]
