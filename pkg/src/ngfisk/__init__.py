"""Tilted log-logistic (NG-Fisk) lifetime distribution toolkit."""

from ._kernels import BACKEND
from .data import DATA_FT, Dataset, describe, ingest, load_builtin
from .distribution import (
    EffectiveBurrParams,
    NgFiskParams,
    cdf,
    central_moment,
    chf,
    effective_burr,
    galton_skewness,
    hazard,
    mean,
    median,
    moors_kurtosis,
    order_stat_pdf,
    pdf,
    quantile,
    raw_moment,
    rhr,
    sample,
    sf,
    survival_hazard_chf_rhr,
    variance,
)
from .estimation import (
    DEFAULT_BOX,
    FitResult,
    ParamBox,
    fit_generic,
    fit_mle,
    hessian_std_errors,
    log_likelihood,
    observed_info_se,
    percentile_ci,
    score,
)
from .family import (
    Baseline,
    FamilyParams,
    fisk_baseline,
    ngx_cdf,
    ngx_chf,
    ngx_hazard,
    ngx_pdf,
    ngx_quantile,
    ngx_rhr,
    ngx_sf,
)
from .competitors import (
    COMPETITORS,
    CompetitorFamily,
    CompetitorModel,
    competitor_cdf,
    competitor_from_fit,
    competitor_pdf,
    fit_competitor,
    get_family,
)
from .selection import (
    InfoCriteria,
    ModelScore,
    compare_models,
    cramer_von_mises,
    info_criteria,
    rank_models,
    score_model,
)
from .simstudy import (
    ConvergenceInfo,
    SimCase,
    SimRow,
    SimSummary,
    aggregate,
    run_case,
)

__version__ = "0.1.0"
