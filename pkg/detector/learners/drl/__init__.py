"""
Reinforcement-learning detector: environment, replay memory, agent and training loop.
"""
from .agent import Agent, decay_epsilon, experience_replay, is_stable, replay_targets, select_action, sync_target
from .config import AgentConfig
from .environment import Environment, env_step
from .memory import Experience, ReplayMemory, remember
from .training import DrlTrainingResult, EpisodeLogEntry, ReinforcementDetector, run_episode, train_agent

__all__ = [
    'Agent',
    'AgentConfig',
    'DrlTrainingResult',
    'Environment',
    'EpisodeLogEntry',
    'Experience',
    'ReinforcementDetector',
    'ReplayMemory',
    'decay_epsilon',
    'env_step',
    'experience_replay',
    'is_stable',
    'remember',
    'replay_targets',
    'run_episode',
    'select_action',
    'sync_target',
    'train_agent',
]
