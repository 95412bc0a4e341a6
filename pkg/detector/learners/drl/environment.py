"""
Classification environment: each state is a flow, each action a class guess.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from detector.exceptions import EpisodeFinishedError


@dataclass
class Environment:
    """
    One episode over a fixed sequence of flows.

    Attributes:
        features: Flow feature rows of the episode
        targets: True class of every row
        episode_step_budget: Steps before the episode ends
        cursor: Index of the current row
    """
    features: np.ndarray
    targets: np.ndarray
    episode_step_budget: int
    cursor: int = 0

    def __post_init__(self):
        self.episode_step_budget = min(self.episode_step_budget, self.features.shape[0])

    @classmethod
    def draw(cls, X: np.ndarray, y: np.ndarray, budget: int, rng: np.random.Generator) -> 'Environment':
        """Episode of ``budget`` rows drawn uniformly from a training set."""
        rows = rng.choice(X.shape[0], size=budget, replace=budget > X.shape[0])
        return cls(features=X[rows], targets=y[rows], episode_step_budget=budget)

    @property
    def done(self) -> bool:
        return self.cursor >= self.episode_step_budget

    @property
    def state(self) -> Optional[np.ndarray]:
        return None if self.done else self.features[self.cursor]


def env_step(env: Environment, action: int) -> Tuple[int, Optional[np.ndarray], bool]:
    """
    Score an action against the current flow and advance.

    Returns:
        tuple: (reward 1 or 0, next state or None, episode done)

    Raises:
        EpisodeFinishedError: The step budget is already spent
    """
    if env.done:
        raise EpisodeFinishedError("episode already finished")
    reward = int(action == env.targets[env.cursor])
    env.cursor += 1
    return reward, env.state, env.done
