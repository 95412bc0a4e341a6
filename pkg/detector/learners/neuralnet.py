"""
Feed-forward network NF-20-20-(1 | NC) with manual backpropagation and Adam.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from detector.exceptions import DimensionMismatchError

HIDDEN_UNITS = (20, 20)
PROBABILITY_CLAMP = 1e-15


@dataclass
class Mlp:
    """
    Dense network with ReLU hidden layers.

    The output layer is a single sigmoid unit when ``n_outputs == 1`` and a
    softmax over ``n_outputs`` classes otherwise.
    """
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def __post_init__(self):
        for i in range(1, len(self.weights)):
            if self.weights[i].shape[0] != self.weights[i - 1].shape[1]:
                raise DimensionMismatchError(self.weights[i - 1].shape[1], self.weights[i].shape[0])
        for weight, bias in zip(self.weights, self.biases):
            if bias.shape != (weight.shape[1],):
                raise DimensionMismatchError(weight.shape[1], bias.shape[0])

    @classmethod
    def initialize(
        cls,
        n_features: int,
        n_outputs: int,
        rng: np.random.Generator,
        hidden: Sequence[int] = HIDDEN_UNITS,
    ) -> 'Mlp':
        """He-uniform weights (limit ``sqrt(6 / fan_in)``), zero biases."""
        sizes = [n_features, *hidden, n_outputs]
        weights, biases = [], []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            limit = np.sqrt(6.0 / fan_in)
            weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            biases.append(np.zeros(fan_out))
        return cls(weights=weights, biases=biases)

    @property
    def n_features(self) -> int:
        return self.weights[0].shape[0]

    @property
    def n_outputs(self) -> int:
        return self.weights[-1].shape[1]

    @property
    def layer_sizes(self) -> List[int]:
        return [self.n_features] + [w.shape[1] for w in self.weights]

    def parameters(self) -> List[np.ndarray]:
        """Parameters in ``[W1, b1, W2, b2, ...]`` order."""
        return [p for pair in zip(self.weights, self.biases) for p in pair]

    def with_parameters(self, parameters: Sequence[np.ndarray]) -> 'Mlp':
        return Mlp(weights=list(parameters[0::2]), biases=list(parameters[1::2]))

    def copy(self) -> 'Mlp':
        return self.with_parameters([p.copy() for p in self.parameters()])

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Class indices: sigmoid head above 0.5, else softmax argmax."""
        output, _ = forward(self, X)
        if self.n_outputs == 1:
            return (output[:, 0] > 0.5).astype(int)
        return np.argmax(output, axis=1)

    def to_dict(self) -> dict:
        return {'layer_sizes': self.layer_sizes, 'weights': self.weights, 'biases': self.biases}

    @classmethod
    def from_dict(cls, data: dict) -> 'Mlp':
        net = cls(
            weights=[np.asarray(w, dtype=float) for w in data['weights']],
            biases=[np.asarray(b, dtype=float) for b in data['biases']],
        )
        if net.layer_sizes != list(data.get('layer_sizes', net.layer_sizes)):
            raise DimensionMismatchError(len(data['layer_sizes']), len(net.layer_sizes))
        return net


@dataclass
class ForwardCache:
    inputs: List[np.ndarray]
    pre_activations: List[np.ndarray]


def _output_activation(z: np.ndarray) -> np.ndarray:
    if z.shape[1] == 1:
        return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))
    shifted = z - z.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def forward(net: Mlp, X: np.ndarray) -> Tuple[np.ndarray, ForwardCache]:
    """
    Affine/ReLU hidden layers, then sigmoid or softmax.

    Args:
        net: Network
        X: One feature vector or a (batch, NF) matrix

    Returns:
        tuple: ((batch, n_outputs) outputs, cache for ``backward``)
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != net.n_features:
        raise DimensionMismatchError(net.n_features, X.shape[1])

    cache = ForwardCache(inputs=[], pre_activations=[])
    activation = X
    last = len(net.weights) - 1
    for i, (weight, bias) in enumerate(zip(net.weights, net.biases)):
        cache.inputs.append(activation)
        z = activation @ weight + bias
        cache.pre_activations.append(z)
        activation = _output_activation(z) if i == last else np.maximum(z, 0.0)
    return activation, cache


def _as_target_matrix(output: np.ndarray, target) -> np.ndarray:
    target = np.asarray(target, dtype=float)
    if output.shape[1] == 1:
        return target.reshape(-1, 1)
    if target.ndim == 2 or (output.shape[0] == 1 and target.size == output.size):
        return target.reshape(output.shape)
    # class indices
    encoded = np.zeros_like(output)
    encoded[np.arange(output.shape[0]), target.astype(int)] = 1.0
    return encoded


def cross_entropy_loss(output: np.ndarray, target) -> float:
    """
    Mean cross-entropy over the batch.

    A sigmoid head takes targets in [0, 1]; a softmax head takes class
    indices or per-row target distributions.
    """
    output = np.atleast_2d(output)
    targets = _as_target_matrix(output, target)
    p = np.clip(output, PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)
    if output.shape[1] == 1:
        losses = -(targets * np.log(p) + (1.0 - targets) * np.log(1.0 - p))[:, 0]
    else:
        losses = -(targets * np.log(p)).sum(axis=1)
    return float(losses.mean())


def backward(net: Mlp, cache: ForwardCache, output: np.ndarray, target) -> List[np.ndarray]:
    """
    Gradients of ``cross_entropy_loss`` w.r.t. every parameter.

    Returns:
        list: Gradients in ``Mlp.parameters()`` order
    """
    targets = _as_target_matrix(output, target)
    batch = output.shape[0]
    delta = (output - targets) / batch
    grads: List[Optional[np.ndarray]] = [None] * (2 * len(net.weights))

    for i in reversed(range(len(net.weights))):
        grads[2 * i] = cache.inputs[i].T @ delta
        grads[2 * i + 1] = delta.sum(axis=0)
        if i:
            delta = (delta @ net.weights[i].T) * (cache.pre_activations[i - 1] > 0)
    return grads


@dataclass
class AdamState:
    """First/second moment estimates and step counter."""
    first_moments: List[np.ndarray]
    second_moments: List[np.ndarray]
    step: int = 0
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    @classmethod
    def for_parameters(cls, parameters: Sequence[np.ndarray], learning_rate: float = 0.001) -> 'AdamState':
        return cls(
            first_moments=[np.zeros_like(p) for p in parameters],
            second_moments=[np.zeros_like(p) for p in parameters],
            learning_rate=learning_rate,
        )


def adam_step(state: AdamState, parameters: Sequence[np.ndarray], grads: Sequence[np.ndarray]) -> List[np.ndarray]:
    """One bias-corrected Adam update; returns new parameter arrays and advances ``state``."""
    state.step += 1
    correction1 = 1.0 - state.beta1 ** state.step
    correction2 = 1.0 - state.beta2 ** state.step
    updated = []
    for i, (param, grad) in enumerate(zip(parameters, grads)):
        if param.shape != grad.shape:
            raise DimensionMismatchError(param.size, grad.size)
        m = state.beta1 * state.first_moments[i] + (1.0 - state.beta1) * grad
        v = state.beta2 * state.second_moments[i] + (1.0 - state.beta2) * grad * grad
        state.first_moments[i], state.second_moments[i] = m, v
        updated.append(param - state.learning_rate * (m / correction1) / (np.sqrt(v / correction2) + state.epsilon))
    return updated


def train_step(net: Mlp, state: AdamState, X: np.ndarray, target) -> Tuple[Mlp, float]:
    """Forward, backward and one Adam update on a batch; returns the new net and the pre-update loss."""
    output, cache = forward(net, X)
    loss = cross_entropy_loss(output, target)
    grads = backward(net, cache, output, target)
    return net.with_parameters(adam_step(state, net.parameters(), grads)), loss
