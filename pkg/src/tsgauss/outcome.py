"""Result record shared by every hypothesis test in the package."""

from dataclasses import asdict, dataclass

TEST_NAMES = (
    "LjungBox",
    "ADF",
    "PhillipsPerron",
    "KPSS",
    "Epps",
    "LobatoVelasco",
    "RandomProjection",
)

NON_STATIONARY = "X is non stationary"
STATIONARY = "X is stationary"
GAUSSIAN_MARGINAL = "X_t is a Gaussian random variable"
GAUSSIAN_PROCESS = "X is a Gaussian process"


@dataclass(frozen=True)
class TestOutcome:
    """One test's statistic and p-value.

    ``p_bound`` is ``"exact"``, ``"below"`` or ``"above"``. For the bounded
    cases ``p_value`` holds the table edge (e.g. 0.01 for "< .01").
    """

    __test__ = False  # keep pytest from collecting this class

    test_name: str
    statistic: float
    p_value: float
    p_bound: str = "exact"
    null_hypothesis: str = ""
    df: float | None = None

    def __post_init__(self):
        if self.test_name not in TEST_NAMES:
            raise ValueError(f"unknown test {self.test_name!r}")
        if self.p_bound not in ("exact", "below", "above"):
            raise ValueError(f"bad p_bound {self.p_bound!r}")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")

    def rejects(self, alpha=0.05):
        return self.p_value < alpha

    def format_p(self, digits=3):
        text = f"{self.p_value:.{digits}f}"
        if self.p_bound == "below":
            return "<" + text
        if self.p_bound == "above":
            return ">" + text
        return text

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)
