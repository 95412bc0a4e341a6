"""
Epsilon-greedy agent with an active and a target network.
"""
from dataclasses import dataclass, field
import logging
from typing import List, Optional

import numpy as np

from detector.learners.neuralnet import AdamState, Mlp, forward, train_step
from .config import AgentConfig
from .memory import Experience, ReplayMemory

logger = logging.getLogger(__name__)


@dataclass
class Agent:
    """
    Attributes:
        active: Network being trained
        target: Delayed copy used to build replay targets
        memory: Replay memory
        epsilon: Current exploration rate
        n_classes: Action count (2 for the binary sigmoid head)
        minibatch_size: Experiences per replay
        loss_history: Mean replay loss per finished episode
        last_replay_losses: Per-epoch losses of the latest replay
    """
    active: Mlp
    target: Mlp
    memory: ReplayMemory
    config: AgentConfig
    n_classes: int
    minibatch_size: int
    epsilon: float = 0.2
    optimizer: Optional[AdamState] = None
    loss_history: List[float] = field(default_factory=list)
    last_replay_losses: List[float] = field(default_factory=list)

    def __post_init__(self):
        if self.optimizer is None:
            self.optimizer = AdamState.for_parameters(self.active.parameters(), self.config.learning_rate)

    @classmethod
    def create(cls, n_features: int, n_classes: int, n_rows: int, config: AgentConfig, rng: np.random.Generator) -> 'Agent':
        """Fresh agent sized for a training set of ``n_rows`` flows."""
        n_outputs = 1 if n_classes == 2 else n_classes
        active = Mlp.initialize(n_features, n_outputs, rng)
        return cls(
            active=active,
            target=active.copy(),
            memory=ReplayMemory(config.memory_capacity(n_rows)),
            config=config,
            n_classes=n_classes,
            minibatch_size=config.minibatch_size(n_rows),
            epsilon=config.exploration_rate,
        )

    @property
    def binary(self) -> bool:
        return self.n_classes == 2


def select_action(agent: Agent, state: np.ndarray, rng: np.random.Generator) -> int:
    """Random class with probability epsilon, otherwise the active network's prediction."""
    if rng.random() < agent.epsilon:
        return int(rng.integers(agent.n_classes))
    return int(agent.active.predict(state)[0])


def replay_targets(agent: Agent, batch: List[Experience]) -> np.ndarray:
    """
    Training targets for a replay minibatch.

    Sigmoid head: the reward for action 1 and ``1 - reward`` for action 0.
    Softmax head: a correct action yields its one-hot vector; a wrong action
    takes the target network's output, zeroes the action's entry and
    renormalizes (uniform over the other classes when nothing is left).
    No future-reward term enters either case.
    """
    actions = np.array([e.action for e in batch])
    rewards = np.array([e.reward for e in batch], dtype=float)
    if agent.binary:
        return np.where(actions == 1, rewards, 1.0 - rewards)

    states = np.vstack([e.state for e in batch])
    soft, _ = forward(agent.target, states)
    targets = soft.copy()
    rows = np.arange(len(batch))
    targets[rows, actions] = 0.0
    mass = targets.sum(axis=1, keepdims=True)
    uniform = np.full_like(targets, 1.0 / (agent.n_classes - 1))
    uniform[rows, actions] = 0.0
    targets = np.where(mass > 0, targets / np.where(mass > 0, mass, 1.0), uniform)

    correct = rewards == 1
    targets[correct] = 0.0
    targets[rows[correct], actions[correct]] = 1.0
    return targets


def decay_epsilon(agent: Agent) -> None:
    agent.epsilon = round(max(agent.config.exploration_floor, agent.epsilon - agent.config.exploration_decay), 10)


def experience_replay(agent: Agent, rng: np.random.Generator) -> Optional[float]:
    """
    Train the active network on a random minibatch, then decay epsilon.

    Returns:
        float: Mean loss over the replay epochs, or None when the memory holds
        fewer experiences than a minibatch (nothing is trained, epsilon kept)
    """
    if len(agent.memory) < agent.minibatch_size:
        logger.warning(f"Replay skipped: memory holds {len(agent.memory)} of {agent.minibatch_size} experiences")
        return None

    batch = agent.memory.sample(agent.minibatch_size, rng)
    states = np.vstack([e.state for e in batch])
    targets = replay_targets(agent, batch)

    losses = []
    for _ in range(agent.config.replay_epochs):
        agent.active, loss = train_step(agent.active, agent.optimizer, states, targets)
        losses.append(loss)
    agent.last_replay_losses = losses
    decay_epsilon(agent)
    return float(np.mean(losses))


def sync_target(agent: Agent) -> None:
    """Copy the active network's parameters into the target network."""
    agent.target = agent.active.copy()


def is_stable(loss_history: List[float], window: int = 3, value_range: float = 0.05) -> bool:
    """
    Whether the latest loss lies within ``value_range`` of each of the
    previous ``window`` losses.
    """
    if len(loss_history) < window + 1:
        return False
    latest = loss_history[-1]
    return all(abs(latest - previous) <= value_range for previous in loss_history[-window - 1:-1])
