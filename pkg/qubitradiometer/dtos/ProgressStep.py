# Standard library
from dataclasses import dataclass
from typing import Optional


@dataclass
class ProgressStep:
    index: int
    message: str
    start_time: Optional[float] = None
    end_time: Optional[float] = None
    value: Optional[float] = None
    num_points: Optional[int] = 0
    result: Optional[dict] = None
