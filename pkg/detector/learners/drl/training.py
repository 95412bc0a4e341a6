"""
Episode loop and the reinforcement-learning detector.
"""
from dataclasses import dataclass, field
import logging
import math
from typing import List, Optional

import numpy as np

from detector.exceptions import TrainingError
from detector.learners.base import Learner, register_learner
from detector.learners.neuralnet import Mlp
from .agent import Agent, experience_replay, is_stable, select_action, sync_target
from .config import AgentConfig
from .environment import Environment, env_step
from .memory import Experience, remember

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpisodeLogEntry:
    episode: int
    epsilon: float
    mean_loss: float

    def as_row(self) -> dict:
        return {'episode': self.episode, 'epsilon': self.epsilon, 'mean_loss': self.mean_loss}


@dataclass
class DrlTrainingResult:
    """
    Attributes:
        network: Active network at the stability stop, or the lowest-loss
            snapshot when training hit the episode cap
        converged: Whether the loss stabilized
        episodes: Per-episode epsilon and mean replay loss
    """
    network: Mlp
    converged: bool
    episodes: List[EpisodeLogEntry] = field(default_factory=list)


def run_episode(agent: Agent, env: Environment, rng: np.random.Generator) -> None:
    """Interact until the step budget is spent, storing every experience."""
    state = env.state
    done = env.done
    while not done:
        action = select_action(agent, state, rng)
        reward, next_state, done = env_step(env, action)
        remember(agent.memory, Experience(state=state, action=action, reward=reward))
        state = next_state


def train_agent(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    config: AgentConfig = AgentConfig(),
    seed: int = 1,
) -> DrlTrainingResult:
    """
    Train an agent until its per-episode replay loss stabilizes.

    Every episode draws memory-capacity-many training flows, plays them,
    runs the configured number of replays and then syncs the target network.

    Raises:
        TrainingError: Empty training set
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if not X.shape[0]:
        raise TrainingError("reinforcement learning needs a non-empty training set")

    rng = np.random.default_rng(seed)
    agent = Agent.create(X.shape[1], n_classes, X.shape[0], config, rng)
    budget = agent.memory.capacity
    episodes: List[EpisodeLogEntry] = []
    best_loss, best_network = math.inf, agent.active.copy()

    for episode in range(config.max_episodes):
        run_episode(agent, Environment.draw(X, y, budget, rng), rng)
        losses = [loss for loss in (experience_replay(agent, rng) for _ in range(config.replays_per_episode))
                  if loss is not None]
        sync_target(agent)

        mean_loss = float(np.mean(losses)) if losses else math.nan
        agent.loss_history.append(mean_loss)
        episodes.append(EpisodeLogEntry(episode=episode, epsilon=agent.epsilon, mean_loss=mean_loss))
        logger.debug(f"Episode {episode}: loss {mean_loss:.5f}, epsilon {agent.epsilon:.2f}",
                     extra={'episode': episode, 'epsilon': agent.epsilon})

        if mean_loss < best_loss:
            best_loss, best_network = mean_loss, agent.active.copy()
        if is_stable(agent.loss_history, config.min_stable_episodes, config.stability_range):
            logger.info(f"Replay loss stable after {episode + 1} episodes")
            return DrlTrainingResult(network=agent.active, converged=True, episodes=episodes)

    logger.warning(f"Replay loss did not stabilize within {config.max_episodes} episodes; "
                   f"returning the lowest-loss network ({best_loss:.5f})")
    return DrlTrainingResult(network=best_network, converged=False, episodes=episodes)


@register_learner
class ReinforcementDetector(Learner):
    """Classifier trained as an epsilon-greedy agent with experience replay."""

    kind = 'drl'
    display_name = 'DRL'

    def __init__(self, seed: int = 1, **params):
        super().__init__(seed=seed, **params)
        self.network: Optional[Mlp] = None
        self.converged: Optional[bool] = None
        self.episodes: List[EpisodeLogEntry] = []

    def _fit(self, X, y, n_classes):
        result = train_agent(X, y, n_classes, AgentConfig.from_dict(self.params), self.seed)
        self.network, self.converged, self.episodes = result.network, result.converged, result.episodes

    def _predict(self, X):
        return self.network.predict(X)

    def model_to_dict(self) -> dict:
        return {'network': self.network.to_dict(), 'converged': self.converged}

    def model_from_dict(self, data: dict) -> None:
        self.network = Mlp.from_dict(data['network'])
        self.converged = data.get('converged')
