"""
Boosting configuration.
"""
from dataclasses import asdict, dataclass, fields, replace

from detector.exceptions import ConfigurationError

LEVEL_WISE = 'level_wise'
LEAF_WISE = 'leaf_wise'
GROWTH_STRATEGIES = (LEVEL_WISE, LEAF_WISE)

EXACT = 'exact'
HISTOGRAM = 'histogram'
GOSS = 'goss'
AUTO = 'auto'
SPLIT_METHODS = (AUTO, EXACT, HISTOGRAM, GOSS)


@dataclass(frozen=True)
class GbdtConfig:
    """
    Tree-growth and boosting knobs.

    ``split_method='auto'`` picks exact scanning below ``histogram_min_rows``
    training rows and histograms at or above it. ``min_child_weight`` bounds
    the hessian sum of each child under level-wise growth;
    ``min_child_samples`` bounds the row count of each child under leaf-wise
    growth.
    """
    growth: str = LEVEL_WISE
    split_method: str = AUTO
    max_depth: int = 5
    max_leaves: int = 25
    feature_subsample: float = 0.7
    min_loss_reduction: float = 0.01
    l2_lambda: float = 1.0
    min_child_weight: float = 1.2
    min_child_samples: int = 2
    n_estimators: int = 60
    learning_rate: float = 0.01
    goss_a: float = 0.2
    goss_b: float = 0.1
    histogram_bins: int = 256
    histogram_min_rows: int = 50_000

    def __post_init__(self):
        if self.growth not in GROWTH_STRATEGIES:
            raise ConfigurationError(f"growth must be one of {GROWTH_STRATEGIES}, got {self.growth!r}")
        if self.split_method not in SPLIT_METHODS:
            raise ConfigurationError(f"split_method must be one of {SPLIT_METHODS}, got {self.split_method!r}")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ConfigurationError(f"learning_rate must lie in (0, 1], got {self.learning_rate}")
        if not 0.0 < self.feature_subsample <= 1.0:
            raise ConfigurationError(f"feature_subsample must lie in (0, 1], got {self.feature_subsample}")
        # a = 1 keeps every row, b is then irrelevant
        if not 0.0 < self.goss_a <= 1.0 or (self.goss_a < 1.0 and not 0.0 < self.goss_b <= 1.0 - self.goss_a):
            raise ConfigurationError(f"GOSS fractions need a, b > 0 and a + b <= 1, got {self.goss_a}, {self.goss_b}")
        if self.max_depth < 1 or self.max_leaves < 2:
            raise ConfigurationError("max_depth must be >= 1 and max_leaves >= 2")
        if self.n_estimators < 0 or self.histogram_bins < 2:
            raise ConfigurationError("n_estimators must be >= 0 and histogram_bins >= 2")
        if self.l2_lambda < 0 or self.min_loss_reduction < 0:
            raise ConfigurationError("l2_lambda and min_loss_reduction must be non-negative")

    @property
    def leaf_wise(self) -> bool:
        return self.growth == LEAF_WISE

    def resolve_split_method(self, n_rows: int) -> str:
        if self.split_method != AUTO:
            return self.split_method
        return HISTOGRAM if n_rows >= self.histogram_min_rows else EXACT

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'GbdtConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown boosting options: {', '.join(unknown)}")
        return cls(**data)

    def with_overrides(self, **overrides) -> 'GbdtConfig':
        return replace(self, **overrides)


def level_wise_config(**overrides) -> GbdtConfig:
    """Level-wise growth, exact or histogram splits chosen by training size."""
    return GbdtConfig.from_dict({'growth': LEVEL_WISE, 'split_method': AUTO, **overrides})


def leaf_wise_config(**overrides) -> GbdtConfig:
    """Best-first leaf-wise growth with gradient-based one-side sampling."""
    return GbdtConfig.from_dict({'growth': LEAF_WISE, 'split_method': GOSS, **overrides})
