from src.error.errors import (
    IntrinLipError,
    InvalidSpec,
    InvalidArgument,
    DecompositionFailure,
    SearchBudgetExceeded,
    DegenerateSample,
    OutsideDomain,
    AxisMissing,
    WrongNormalSide,
    NotASubgroup,
    PremiseFailed,
    NotConverged,
)
