import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from detector.exceptions import ConfigurationError, EpisodeFinishedError, TrainingError
from detector.learners import ReinforcementDetector, load_learner, save_learner
from detector.learners.drl import (
    Agent,
    AgentConfig,
    Environment,
    Experience,
    ReplayMemory,
    env_step,
    experience_replay,
    is_stable,
    remember,
    replay_targets,
    select_action,
    sync_target,
    train_agent,
)
from detector.metrics import evaluate_predictions
from detector.preprocessing import Scenario


def separable_flows(n_rows: int, n_features: int = 10, seed: int = 0):
    """Benign rows near 0.1, malicious rows near 0.9 in every feature."""
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, size=n_rows)
    X = np.where(y[:, None] == 1, 0.8, 0.0) + rng.uniform(0.0, 0.2, size=(n_rows, n_features))
    return X, y


def filled_agent(n_classes: int = 2, n_rows: int = 400, **config):
    rng = np.random.default_rng(0)
    agent = Agent.create(3, n_classes, n_rows, AgentConfig(**config), rng)
    for i in range(agent.memory.capacity):
        remember(agent.memory, Experience(state=rng.normal(size=3), action=i % n_classes, reward=i % 2))
    return agent


class ConfigTest(SimpleTestCase):

    def test_sizes_scale_with_the_training_set(self):
        config = AgentConfig()
        self.assertEqual(config.minibatch_size(16_000), 400)
        self.assertEqual(config.memory_capacity(16_000), 600)
        self.assertEqual(config.minibatch_size(10), 1)

    def test_invalid_values(self):
        with self.assertRaises(ConfigurationError):
            AgentConfig(exploration_floor=0.3)
        with self.assertRaises(ConfigurationError):
            AgentConfig.from_dict({'gamma': 0.9})


class MemoryTest(SimpleTestCase):

    def test_oldest_experience_is_evicted(self):
        memory = ReplayMemory(3)
        for i in range(5):
            remember(memory, Experience(state=np.array([i]), action=0, reward=0))
        self.assertEqual(len(memory), 3)
        self.assertEqual([int(e.state[0]) for e in memory], [2, 3, 4])

    def test_sample_without_replacement(self):
        memory = ReplayMemory(10)
        for i in range(10):
            remember(memory, Experience(state=np.array([i]), action=0, reward=0))
        picked = memory.sample(10, np.random.default_rng(1))
        self.assertEqual(sorted(int(e.state[0]) for e in picked), list(range(10)))

    def test_capacity_must_be_positive(self):
        with self.assertRaises(TrainingError):
            ReplayMemory(0)

    def test_agent_memory_never_exceeds_its_capacity(self):
        agent = Agent.create(3, 2, 16_000, AgentConfig(), np.random.default_rng(0))
        for _ in range(700):
            remember(agent.memory, Experience(state=np.zeros(3), action=0, reward=1))
        self.assertEqual(agent.memory.capacity, 600)
        self.assertEqual(len(agent.memory), 600)


class EnvironmentTest(SimpleTestCase):

    def test_rewards_and_episode_end(self):
        env = Environment(features=np.eye(3), targets=np.array([1, 0, 2]), episode_step_budget=10)
        self.assertEqual(env.episode_step_budget, 3)

        self.assertEqual(env_step(env, 1)[0], 1)
        reward, state, done = env_step(env, 1)
        self.assertEqual((reward, done), (0, False))
        self.assertTrue(np.array_equal(state, [0.0, 0.0, 1.0]))
        reward, state, done = env_step(env, 2)
        self.assertEqual((reward, state, done), (1, None, True))

        with self.assertRaises(EpisodeFinishedError):
            env_step(env, 0)

    def test_draw_takes_budget_rows(self):
        X, y = separable_flows(50)
        env = Environment.draw(X, y, 20, np.random.default_rng(2))
        self.assertEqual(env.features.shape, (20, 10))
        self.assertEqual(env.episode_step_budget, 20)


class AgentTest(SimpleTestCase):

    def test_exploration_share(self):
        agent = Agent.create(2, 4, 100, AgentConfig(), np.random.default_rng(0))
        # zero network: uniform softmax, so greedy actions are always class 0
        agent.active = agent.active.with_parameters([p * 0.0 for p in agent.active.parameters()])
        rng = np.random.default_rng(1)
        actions = np.array([select_action(agent, np.zeros(2), rng) for _ in range(10_000)])
        self.assertAlmostEqual(float(np.mean(actions != 0)), 0.2 * 0.75, delta=0.015)

    def test_binary_replay_targets(self):
        agent = filled_agent()
        batch = [
            Experience(state=np.zeros(3), action=1, reward=1),
            Experience(state=np.zeros(3), action=1, reward=0),
            Experience(state=np.zeros(3), action=0, reward=1),
            Experience(state=np.zeros(3), action=0, reward=0),
        ]
        self.assertEqual(replay_targets(agent, batch).tolist(), [1.0, 0.0, 0.0, 1.0])

    def test_multiclass_replay_targets(self):
        agent = filled_agent(n_classes=3)
        batch = [
            Experience(state=np.ones(3), action=2, reward=1),
            Experience(state=np.ones(3), action=2, reward=0),
        ]
        targets = replay_targets(agent, batch)
        self.assertEqual(targets[0].tolist(), [0.0, 0.0, 1.0])
        self.assertEqual(targets[1, 2], 0.0)
        self.assertAlmostEqual(float(targets[1].sum()), 1.0)

    def test_epsilon_decays_to_the_floor(self):
        agent = filled_agent(replay_epochs=1)
        rng = np.random.default_rng(3)
        trace = []
        for _ in range(20):
            self.assertIsNotNone(experience_replay(agent, rng))
            trace.append(agent.epsilon)
        self.assertEqual(trace, [round(max(0.05, 0.2 - 0.01 * (i + 1)), 10) for i in range(20)])

    def test_replay_waits_for_a_full_minibatch(self):
        agent = Agent.create(3, 2, 400, AgentConfig(), np.random.default_rng(0))
        remember(agent.memory, Experience(state=np.zeros(3), action=0, reward=1))
        with self.assertLogs('detector.learners.drl.agent', level='WARNING'):
            self.assertIsNone(experience_replay(agent, np.random.default_rng(1)))
        self.assertEqual(agent.epsilon, 0.2)

    def test_sync_copies_parameters(self):
        agent = filled_agent(replay_epochs=2)
        experience_replay(agent, np.random.default_rng(4))
        self.assertFalse(np.array_equal(agent.active.weights[0], agent.target.weights[0]))
        sync_target(agent)
        for active, target in zip(agent.active.parameters(), agent.target.parameters()):
            self.assertTrue(np.array_equal(active, target))
            self.assertIsNot(active, target)

    def test_stability_window(self):
        self.assertFalse(is_stable([1.0, 1.0, 1.0]))
        self.assertTrue(is_stable([2.0, 1.0, 0.98, 0.97, 0.99]))
        self.assertFalse(is_stable([1.0, 0.9, 0.97, 0.99]))
        self.assertTrue(is_stable([0.5, 0.5, 0.5, 0.54]))


class TrainingTest(SimpleTestCase):

    def test_separable_flows_are_learned(self):
        X, y = separable_flows(10_000)
        X_eval, y_eval = separable_flows(2_000, seed=1)

        result = train_agent(X, y, 2, AgentConfig(max_episodes=200), seed=1)

        self.assertTrue(result.converged)
        self.assertLessEqual(len(result.episodes), 200)
        report = evaluate_predictions(y_eval, result.network.predict(X_eval), ['Benign', 'Malicious'], Scenario.BINARY)
        self.assertGreaterEqual(report.binary.f1, 0.95)

    def test_episode_cap_stops_training(self):
        X, y = separable_flows(400)
        result = train_agent(X, y, 2, AgentConfig(max_episodes=2, stability_range=1e-12), seed=2)
        self.assertFalse(result.converged)
        self.assertEqual(len(result.episodes), 2)
        self.assertEqual([e.episode for e in result.episodes], [0, 1])

    def test_empty_training_set(self):
        with self.assertRaises(TrainingError):
            train_agent(np.zeros((0, 3)), np.zeros(0, dtype=int), 2)

    def test_detector_round_trip(self):
        X, y = separable_flows(800, n_features=4, seed=3)
        detector = ReinforcementDetector(max_episodes=5, seed=2).fit(X, y)
        self.assertLessEqual(len(detector.episodes), 5)

        with tempfile.TemporaryDirectory() as tmp:
            loaded = load_learner(save_learner(detector, Path(tmp) / 'drl.json'))
        self.assertIsInstance(loaded, ReinforcementDetector)
        self.assertTrue(np.array_equal(loaded.predict(X), detector.predict(X)))
        self.assertEqual(loaded.converged, detector.converged)
