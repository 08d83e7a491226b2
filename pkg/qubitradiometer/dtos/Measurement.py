# Standard library
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Measurement:
    value: float
    sigma: float = 0.0

    def __iter__(self):
        yield self.value
        yield self.sigma

    @property
    def relative(self) -> float:
        return self.sigma / abs(self.value) if self.value else math.inf

    def within(self, truth: float, k: float = 2.0) -> bool:
        if not math.isfinite(self.sigma):
            return False

        return bool(abs(self.value - truth) <= k * self.sigma)

    def to_dict(self) -> dict:
        return {"value": self.value, "sigma": self.sigma}
