"""Markov-game primitives: joint actions, transitions, trajectories, rollouts.

Every environment in this package is a fully cooperative Markov game: all
agents receive the same scalar team reward.  Episodes are truncated at a
configurable horizon, so discounted sums are always finite.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np


class ConfigurationError(Exception):
    """A component was wired up inconsistently (agent counts, dimensions)."""


class DivergenceError(RuntimeError):
    """Training produced non-finite parameters and was aborted."""


class UnsupportedOperationError(Exception):
    """The requested computation needs an oracle this environment lacks."""


def obs_key(observation: np.ndarray) -> bytes:
    """Exact hash key for an observation vector (float64 byte image)."""
    return np.ascontiguousarray(observation, dtype=np.float64).tobytes()


@dataclass(frozen=True)
class GameSpec:
    """Static description of a cooperative Markov game."""

    n_agents: int
    action_counts: tuple[int, ...]
    observation_dim: int
    discount: float
    horizon: int

    def __post_init__(self) -> None:
        if self.n_agents < 2:
            raise ConfigurationError(f"need at least 2 agents, got {self.n_agents}")
        if len(self.action_counts) != self.n_agents:
            raise ConfigurationError("action_counts must have one entry per agent")
        if any(a < 2 for a in self.action_counts):
            raise ConfigurationError("every agent needs at least 2 actions")
        if not 0.0 <= self.discount < 1.0:
            raise ConfigurationError(f"discount must be in [0, 1), got {self.discount}")
        if self.horizon < 1:
            raise ConfigurationError("horizon must be positive")


@dataclass(frozen=True)
class JointAction:
    """One action index per agent, in agent order."""

    actions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.actions)

    def __getitem__(self, i: int) -> int:
        return self.actions[i]

    def others(self, i: int) -> tuple[int, ...]:
        """Actions of all agents except ``i``, in ascending agent order."""
        return self.actions[:i] + self.actions[i + 1 :]

    def validate(self, spec: GameSpec) -> None:
        if len(self.actions) != spec.n_agents:
            raise ValueError(
                f"joint action has {len(self.actions)} entries for {spec.n_agents} agents"
            )
        for i, (a, count) in enumerate(zip(self.actions, spec.action_counts)):
            if not 0 <= a < count:
                raise ValueError(f"action {a} out of range [0, {count}) for agent {i}")


@dataclass(frozen=True, eq=False)
class Transition:
    """A single environment step under the joint policy."""

    state: object
    observations: tuple[np.ndarray, ...]
    joint_action: JointAction
    reward: float
    next_state: object
    next_observations: tuple[np.ndarray, ...]
    terminal: bool

    def __post_init__(self) -> None:
        if not np.isfinite(self.reward):
            raise ValueError(f"non-finite reward {self.reward}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Ordered transitions from one episode, plus the seed that produced it."""

    transitions: tuple[Transition, ...]
    seed: int = 0

    def __len__(self) -> int:
        return len(self.transitions)

    def __iter__(self) -> Iterator[Transition]:
        return iter(self.transitions)

    def is_contiguous(self) -> bool:
        pairs = zip(self.transitions, self.transitions[1:])
        return all(a.next_state == b.state for a, b in pairs)


def _stream_id(part: int | str) -> int:
    if isinstance(part, int):
        return part
    digest = hashlib.blake2s(part.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class SeededRng:
    """Deterministic random stream addressed by (seed, stream path).

    Built on a counter-based bit generator so that any (seed, stream)
    pair reproduces the same draws bit-for-bit across runs and machines,
    and sibling streams (``split``) are statistically independent.  Use
    one stream per (run, agent, purpose) so that consuming draws in one
    place never perturbs another.
    """

    def __init__(self, seed: int, stream: tuple[int | str, ...] = ()):
        self.seed = int(seed)
        self.stream = tuple(_stream_id(p) for p in stream)
        self._generator: np.random.Generator | None = None

    def split(self, *parts: int | str) -> "SeededRng":
        """Child stream with the given path appended; independent of self."""
        return SeededRng(self.seed, self.stream + parts)

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
            self._generator = np.random.Generator(np.random.Philox(seq))
        return self._generator

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, stream={self.stream})"


def rollout(env, joint_policy: Sequence, horizon: int, rng: SeededRng) -> Trajectory:
    """Play ``joint_policy`` in ``env`` for at most ``horizon`` steps.

    Each agent's action is sampled from its own policy at its local
    observation.  Stops early when the environment reports a terminal
    state.  ``rng`` drives both the environment reset and the action
    sampling, so replaying the same stream reproduces the trajectory.
    """
    spec: GameSpec = env.spec
    if len(joint_policy) != spec.n_agents:
        raise ConfigurationError(
            f"env has {spec.n_agents} agents but {len(joint_policy)} policies given"
        )
    for i, policy in enumerate(joint_policy):
        if policy.n_actions != spec.action_counts[i]:
            raise ConfigurationError(
                f"policy {i} has {policy.n_actions} actions, env expects "
                f"{spec.action_counts[i]}"
            )

    gen = rng.generator
    state, observations = env.reset(gen)
    transitions: list[Transition] = []
    for _ in range(horizon):
        actions = JointAction(
            tuple(
                policy.sample_action(obs, gen)
                for policy, obs in zip(joint_policy, observations)
            )
        )
        next_state, next_observations, reward, terminal = env.step(state, actions, gen)
        transitions.append(
            Transition(
                state=state,
                observations=observations,
                joint_action=actions,
                reward=reward,
                next_state=next_state,
                next_observations=next_observations,
                terminal=terminal,
            )
        )
        if terminal:
            break
        state, observations = next_state, next_observations
    return Trajectory(tuple(transitions), seed=rng.seed)


def discounted_return(trajectory: Trajectory, discount: float) -> float:
    """Sum of ``discount**t * reward_t`` over the trajectory."""
    if len(trajectory) == 0:
        raise ValueError("discounted_return needs a non-empty trajectory")
    total = 0.0
    weight = 1.0
    for transition in trajectory:
        total += weight * transition.reward
        weight *= discount
    return total
