"""Correlations, percentile ranks, one-way ANOVA and post-hoc comparisons."""

import logging
import math
from collections.abc import Mapping, Sequence
from itertools import combinations
from typing import Optional

import numpy as np
from scipy import stats as sps

from .errors import StatsError
from .models import AnovaResult, CorrelationMatrix, PairComparison

logger = logging.getLogger(__name__)

TUKEY = "tukey"
BONFERRONI = "bonferroni"


def _pair(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise StatsError(f"sequences differ in length ({x.size} vs {y.size})")
    if x.size < 3:
        raise StatsError(f"need at least 3 observations, got {x.size}")
    return x, y


def _product_moment(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        logger.warning("Correlation undefined for constant input")
        return None
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(max(r, -1.0), 1.0)


def pearson(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Product-moment correlation; None when either input is constant."""
    return _product_moment(*_pair(x, y))


def spearman(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Pearson correlation of average ranks."""
    x, y = _pair(x, y)
    return _product_moment(sps.rankdata(x), sps.rankdata(y))


def correlation_p_value(r: Optional[float], n: int) -> Optional[float]:
    """Two-tailed p-value from the t approximation with n-2 degrees of freedom."""
    if r is None or n < 3:
        return None
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * sps.t.sf(abs(t), n - 2))


def correlation_matrix(table: Mapping[str, Sequence[float]], variables: Sequence[str]) -> CorrelationMatrix:
    """Pearson and Spearman matrices over the rows complete for all ``variables``."""
    missing = [name for name in variables if name not in table]
    if missing:
        raise StatsError(f"unknown variable '{missing[0]}'")
    columns = []
    for name in variables:
        try:
            columns.append(np.asarray(table[name], dtype=np.float64))
        except (TypeError, ValueError):
            raise StatsError(f"variable '{name}' is not numeric") from None
    data = np.column_stack(columns)
    complete = ~np.isnan(data).any(axis=1)
    dropped = int((~complete).sum())
    if dropped:
        logger.info("Dropping %d rows with missing values", dropped)
    data = data[complete]
    n = data.shape[0]

    k = len(variables)
    pearson_m: list[list[Optional[float]]] = [[None] * k for _ in range(k)]
    spearman_m: list[list[Optional[float]]] = [[None] * k for _ in range(k)]
    for a in range(k):
        pearson_m[a][a] = spearman_m[a][a] = 1.0
        for b in range(a + 1, k):
            pearson_m[a][b] = pearson_m[b][a] = pearson(data[:, a], data[:, b])
            spearman_m[a][b] = spearman_m[b][a] = spearman(data[:, a], data[:, b])

    def p_values(matrix: list[list[Optional[float]]]) -> list[list[Optional[float]]]:
        return [
            [None if a == b else correlation_p_value(matrix[a][b], n) for b in range(k)]
            for a in range(k)
        ]

    return CorrelationMatrix(
        variables=list(variables),
        n=n,
        pearson=pearson_m,
        spearman=spearman_m,
        pearson_p=p_values(pearson_m),
        spearman_p=p_values(spearman_m),
    )


def percentile_rank(values: Sequence[float], focal: float) -> float:
    """100 * (count below + half the count equal) / n."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise StatsError("percentile rank of an empty sample")
    below = int((values < focal).sum())
    equal = int((values == focal).sum())
    return 100.0 * (below + 0.5 * equal) / values.size


def percentile_ranks(values: Sequence[Optional[float]]) -> list[Optional[float]]:
    """percentile_rank of every defined value within the defined values."""
    present = np.array([value for value in values if value is not None], dtype=np.float64)
    if present.size == 0:
        return [None] * len(values)
    ordered = np.sort(present)
    below = np.searchsorted(ordered, present, side="left")
    upto = np.searchsorted(ordered, present, side="right")
    ranks = iter(100.0 * (below + 0.5 * (upto - below)) / present.size)
    return [None if value is None else float(next(ranks)) for value in values]


def studentized_range_quantile(alpha: float, k: int, df: float) -> float:
    """Upper-alpha quantile of the studentized range for k means and df degrees of freedom."""
    return float(sps.studentized_range.ppf(1.0 - alpha, k, df))


def _homogeneous_subsets(
    names: list[str],
    means: np.ndarray,
    significant: dict[frozenset[str], bool],
) -> list[list[str]]:
    """Maximal runs of mean-ordered groups whose extreme pair does not differ."""
    order = [names[index] for index in np.argsort(means, kind="stable")]
    runs: list[tuple[int, int]] = []
    for start in range(len(order)):
        end = start
        while end + 1 < len(order) and not significant[frozenset((order[start], order[end + 1]))]:
            end += 1
        if not any(s <= start and end <= e for s, e in runs):
            runs.append((start, end))
    return [order[start:end + 1] for start, end in runs]


def anova_tukey(
    groups: Sequence[Sequence[float]],
    alpha: float = 0.05,
    names: Optional[Sequence[str]] = None,
    posthoc: str = TUKEY,
) -> AnovaResult:
    """One-way ANOVA with Tukey-Kramer (or Bonferroni t) pairwise comparisons."""
    if len(groups) < 2:
        raise StatsError("ANOVA needs at least 2 groups")
    if not 0 < alpha < 1:
        raise StatsError(f"alpha must lie in (0, 1), got {alpha}")
    if posthoc not in (TUKEY, BONFERRONI):
        raise StatsError(f"unknown post-hoc test '{posthoc}'")
    names = list(names) if names is not None else [str(index + 1) for index in range(len(groups))]
    samples = [np.asarray(group, dtype=np.float64) for group in groups]
    for name, sample in zip(names, samples):
        if sample.size < 2:
            raise StatsError(f"group '{name}' has fewer than 2 observations")

    k = len(samples)
    sizes = np.array([sample.size for sample in samples])
    n = int(sizes.sum())
    means = np.array([sample.mean() for sample in samples])
    grand_mean = np.concatenate(samples).mean()
    ss_between = float((sizes * (means - grand_mean) ** 2).sum())
    ss_within = float(sum(((sample - sample.mean()) ** 2).sum() for sample in samples))
    df_between, df_within = k - 1, n - k
    ms_between = ss_between / df_between
    ms_within = ss_within / df_within

    degenerate = ms_within == 0
    if degenerate:
        logger.warning("Zero within-group variance; every nonzero difference is significant")
        f_statistic = math.inf if ms_between > 0 else 0.0
        p_value = 0.0 if ms_between > 0 else 1.0
    else:
        f_statistic = ms_between / ms_within
        p_value = float(sps.f.sf(f_statistic, df_between, df_within))

    critical = None
    if posthoc == TUKEY:
        critical = studentized_range_quantile(alpha, k, df_within)
    comparisons = k * (k - 1) // 2
    pairs = []
    significant: dict[frozenset[str], bool] = {}
    for a, b in combinations(range(k), 2):
        difference = float(means[a] - means[b])
        if posthoc == TUKEY:
            # Tukey-Kramer standard error for unequal group sizes.
            se = math.sqrt(ms_within / 2.0 * (1.0 / sizes[a] + 1.0 / sizes[b]))
        else:
            se = math.sqrt(ms_within * (1.0 / sizes[a] + 1.0 / sizes[b]))
        if se == 0:
            statistic = math.inf if difference != 0 else 0.0
            pair_p = 0.0 if difference != 0 else 1.0
            is_significant = difference != 0
        elif posthoc == TUKEY:
            statistic = abs(difference) / se
            pair_p = float(sps.studentized_range.sf(statistic, k, df_within))
            is_significant = abs(difference) > critical * se
        else:
            statistic = abs(difference) / se
            pair_p = min(1.0, float(2.0 * sps.t.sf(statistic, df_within)) * comparisons)
            is_significant = pair_p < alpha
        significant[frozenset((names[a], names[b]))] = is_significant
        pairs.append(PairComparison(
            group_a=names[a],
            group_b=names[b],
            mean_difference=difference,
            statistic=statistic,
            p_value=pair_p,
            significant=is_significant,
        ))

    return AnovaResult(
        groups=names,
        means=means.tolist(),
        k=k,
        n=n,
        f_statistic=f_statistic,
        df_between=df_between,
        df_within=df_within,
        p_value=p_value,
        alpha=alpha,
        posthoc=posthoc,
        critical_value=critical,
        pairs=pairs,
        homogeneous_subsets=_homogeneous_subsets(names, means, significant),
        degenerate=degenerate,
    )
