"""
Learning-process constants of the reinforcement-learning detector.
"""
from dataclasses import asdict, dataclass, fields
import math

from detector.exceptions import ConfigurationError

SYNC_PER_EPISODE = 'episode'


@dataclass(frozen=True)
class AgentConfig:
    """
    Attributes:
        exploration_rate: Initial epsilon
        exploration_decay: Subtracted from epsilon after every replay
        exploration_floor: Lowest epsilon
        replays_per_episode: Experience replays at the end of each episode
        replay_epochs: Passes over a sampled minibatch per replay
        min_stable_episodes: Previous episodes the latest loss is compared with
        stability_range: Largest allowed loss difference to count as stable
        minibatch_fraction: Minibatch size as a share of the training set
        memory_fraction: Replay memory capacity as a share of the training set
        target_sync: When the target network copies the active one
        max_episodes: Episode cap when the loss never stabilizes
        learning_rate: Adam learning rate
    """
    exploration_rate: float = 0.2
    exploration_decay: float = 0.01
    exploration_floor: float = 0.05
    replays_per_episode: int = 2
    replay_epochs: int = 20
    min_stable_episodes: int = 3
    stability_range: float = 0.05
    minibatch_fraction: float = 0.025
    memory_fraction: float = 0.0375
    target_sync: str = SYNC_PER_EPISODE
    max_episodes: int = 1000
    learning_rate: float = 0.001

    def __post_init__(self):
        if not 0.0 <= self.exploration_floor <= self.exploration_rate <= 1.0:
            raise ConfigurationError("exploration rates must satisfy 0 <= floor <= epsilon <= 1")
        for name in ('minibatch_fraction', 'memory_fraction'):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ConfigurationError(f"{name} must lie in (0, 1), got {value}")
        if self.target_sync != SYNC_PER_EPISODE:
            raise ConfigurationError(f"unsupported target sync policy {self.target_sync!r}")
        if self.replays_per_episode < 1 or self.replay_epochs < 1 or self.max_episodes < 1:
            raise ConfigurationError("replays, epochs and max_episodes must be positive")

    def minibatch_size(self, n_rows: int) -> int:
        return max(1, math.ceil(self.minibatch_fraction * n_rows))

    def memory_capacity(self, n_rows: int) -> int:
        return max(self.minibatch_size(n_rows), math.ceil(self.memory_fraction * n_rows))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'AgentConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown agent options: {', '.join(unknown)}")
        return cls(**data)
