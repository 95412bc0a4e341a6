"""
Bounded FIFO replay memory.
"""
from collections import deque
from dataclasses import dataclass
from typing import List

import numpy as np

from detector.exceptions import TrainingError


@dataclass(frozen=True)
class Experience:
    state: np.ndarray
    action: int
    reward: int


class ReplayMemory:
    """Holds at most ``capacity`` experiences; the oldest is evicted first."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise TrainingError(f"replay memory capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._items = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def append(self, experience: Experience):
        self._items.append(experience)

    def sample(self, size: int, rng: np.random.Generator) -> List[Experience]:
        """Uniform draw without replacement."""
        items = list(self._items)
        picks = rng.choice(len(items), size=size, replace=False)
        return [items[i] for i in picks]


def remember(memory: ReplayMemory, experience: Experience) -> None:
    memory.append(experience)
