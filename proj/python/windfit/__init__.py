"""Wind-speed distribution fitting: six families, MLE, goodness of fit, power density."""

from ._windfit import (  # noqa: F401
    DistParams,
    DivergentMoment,
    DomainError,
    DegenerateSample,
    Family,
    InvalidParams,
    ParseError,
    WindfitError,
    cdf,
    describe,
    fit_mle,
    gof,
    loglik,
    p_model,
    p_ref,
    pde,
    pdf,
    quantile,
    run_csv,
    sample,
)

__all__ = [name for name in dir() if not name.startswith("_")]
