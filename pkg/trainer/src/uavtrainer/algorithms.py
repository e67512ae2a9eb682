"""Compact off-policy actor-critic learners: SAC, DDPG and TD3.

All three share the same network shape (two hidden layers, 400 then 300
rectified-linear units), a ring replay buffer, and Polyak-averaged target
networks.  Policies emit actions in [-1, 1]; the environment wrapper maps
them to the rotor range.  Hyperparameters follow the values published for
the reference implementations and are exposed on each learner as
`.hyperparameters` so runs can log them verbatim.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
import torch
from torch import nn

HIDDEN = (400, 300)
LOG_STD_MIN, LOG_STD_MAX = -20.0, 2.0

ALGORITHMS = ("SAC", "DDPG", "TD3")


def mlp(in_dim: int, out_dim: int) -> nn.Sequential:
    return nn.Sequential(
        nn.Linear(in_dim, HIDDEN[0]), nn.ReLU(),
        nn.Linear(HIDDEN[0], HIDDEN[1]), nn.ReLU(),
        nn.Linear(HIDDEN[1], out_dim))


class ReplayBuffer:
    def __init__(self, capacity: int, obs_dim: int, act_dim: int,
                 rng: np.random.Generator):
        self.capacity = capacity
        self.rng = rng
        self.obs = np.zeros((capacity, obs_dim), dtype=np.float32)
        self.act = np.zeros((capacity, act_dim), dtype=np.float32)
        self.rew = np.zeros(capacity, dtype=np.float32)
        self.nxt = np.zeros((capacity, obs_dim), dtype=np.float32)
        self.done = np.zeros(capacity, dtype=np.float32)
        self.size = 0
        self._head = 0

    def push(self, obs, act, rew, nxt, done) -> None:
        i = self._head
        self.obs[i] = obs
        self.act[i] = act
        self.rew[i] = rew
        self.nxt[i] = nxt
        self.done[i] = float(done)
        self._head = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch: int):
        idx = self.rng.integers(0, self.size, size=batch)
        to = torch.from_numpy
        return (to(self.obs[idx]), to(self.act[idx]), to(self.rew[idx]),
                to(self.nxt[idx]), to(self.done[idx]))


class GaussianActor(nn.Module):
    """Squashed-Gaussian policy head for SAC."""

    def __init__(self, obs_dim: int, act_dim: int):
        super().__init__()
        self.trunk = nn.Sequential(
            nn.Linear(obs_dim, HIDDEN[0]), nn.ReLU(),
            nn.Linear(HIDDEN[0], HIDDEN[1]), nn.ReLU())
        self.mu = nn.Linear(HIDDEN[1], act_dim)
        self.log_std = nn.Linear(HIDDEN[1], act_dim)

    def forward(self, obs, deterministic: bool = False, with_logprob: bool = True):
        h = self.trunk(obs)
        mu = self.mu(h)
        log_std = torch.clamp(self.log_std(h), LOG_STD_MIN, LOG_STD_MAX)
        std = torch.exp(log_std)
        dist = torch.distributions.Normal(mu, std)
        raw = mu if deterministic else dist.rsample()
        action = torch.tanh(raw)
        if not with_logprob:
            return action, None
        # change of variables for the tanh squash
        logp = dist.log_prob(raw).sum(-1)
        logp = logp - (2.0 * (math.log(2.0) - raw
                              - nn.functional.softplus(-2.0 * raw))).sum(-1)
        return action, logp


class QNetwork(nn.Module):
    def __init__(self, obs_dim: int, act_dim: int):
        super().__init__()
        self.net = mlp(obs_dim + act_dim, 1)

    def forward(self, obs, act):
        return self.net(torch.cat([obs, act], dim=-1)).squeeze(-1)


def _polyak(target: nn.Module, source: nn.Module, tau: float) -> None:
    with torch.no_grad():
        for tp, sp in zip(target.parameters(), source.parameters()):
            tp.mul_(1.0 - tau).add_(sp, alpha=tau)


def _clone(module: nn.Module) -> nn.Module:
    import copy
    target = copy.deepcopy(module)
    for p in target.parameters():
        p.requires_grad_(False)
    return target


class _OffPolicyBase:
    """Shared replay/update scheduling for the three learners."""

    DEFAULTS: dict = {}

    def __init__(self, obs_dim: int, act_dim: int, seed: int = 0, **overrides):
        unknown = set(overrides) - set(self.DEFAULTS)
        if unknown:
            raise ValueError(f"unknown hyperparameters: {sorted(unknown)}")
        self.hp = dict(self.DEFAULTS, **overrides)
        self.obs_dim = obs_dim
        self.act_dim = act_dim
        self.seed = seed
        torch.manual_seed(seed)
        self.rng = np.random.default_rng(seed)
        self.buffer = ReplayBuffer(int(self.hp["buffer_size"]), obs_dim,
                                   act_dim, self.rng)
        self.steps = 0
        self.updates = 0
        self._build()

    @property
    def hyperparameters(self) -> dict:
        return dict(self.hp, algorithm=type(self).__name__,
                    hidden_layers=list(HIDDEN), activation="relu",
                    seed=self.seed)

    def observe(self, obs, act, rew, nxt, done) -> None:
        self.buffer.push(obs, act, rew, nxt, done)
        self.steps += 1
        if (self.buffer.size >= self.hp["learning_starts"]
                and self.steps % self.hp["train_freq"] == 0):
            for _ in range(self.hp["gradient_steps"]):
                self._update(self.buffer.sample(int(self.hp["batch_size"])))
                self.updates += 1

    def act(self, obs: np.ndarray, deterministic: bool = False) -> np.ndarray:
        raise NotImplementedError

    def _build(self) -> None:
        raise NotImplementedError

    def _update(self, batch) -> None:
        raise NotImplementedError


class SAC(_OffPolicyBase):
    DEFAULTS = {
        "learning_rate": 3e-4, "buffer_size": 1_000_000,
        "learning_starts": 100, "batch_size": 256, "tau": 0.005,
        "gamma": 0.99, "train_freq": 1, "gradient_steps": 1,
        "ent_coef": "auto",
    }

    def _build(self) -> None:
        lr = self.hp["learning_rate"]
        self.actor = GaussianActor(self.obs_dim, self.act_dim)
        self.q1 = QNetwork(self.obs_dim, self.act_dim)
        self.q2 = QNetwork(self.obs_dim, self.act_dim)
        self.q1_target = _clone(self.q1)
        self.q2_target = _clone(self.q2)
        self.actor_opt = torch.optim.Adam(self.actor.parameters(), lr=lr)
        self.q_opt = torch.optim.Adam(
            list(self.q1.parameters()) + list(self.q2.parameters()), lr=lr)
        self.target_entropy = -float(self.act_dim)
        if self.hp["ent_coef"] == "auto":
            self.log_alpha = torch.zeros(1, requires_grad=True)
            self.alpha_opt = torch.optim.Adam([self.log_alpha], lr=lr)
        else:
            self.log_alpha = torch.tensor([math.log(float(self.hp["ent_coef"]))])
            self.alpha_opt = None

    def act(self, obs: np.ndarray, deterministic: bool = False) -> np.ndarray:
        with torch.no_grad():
            t = torch.as_tensor(obs, dtype=torch.float32).unsqueeze(0)
            action, _ = self.actor(t, deterministic=deterministic,
                                   with_logprob=False)
        return action.squeeze(0).numpy()

    def _update(self, batch) -> None:
        obs, act, rew, nxt, done = batch
        gamma, tau = self.hp["gamma"], self.hp["tau"]
        alpha = self.log_alpha.exp().detach()

        with torch.no_grad():
            nxt_act, nxt_logp = self.actor(nxt)
            target_q = torch.min(self.q1_target(nxt, nxt_act),
                                 self.q2_target(nxt, nxt_act))
            backup = rew + gamma * (1.0 - done) * (target_q - alpha * nxt_logp)
        q_loss = (nn.functional.mse_loss(self.q1(obs, act), backup)
                  + nn.functional.mse_loss(self.q2(obs, act), backup))
        self.q_opt.zero_grad()
        q_loss.backward()
        self.q_opt.step()

        new_act, logp = self.actor(obs)
        q_new = torch.min(self.q1(obs, new_act), self.q2(obs, new_act))
        actor_loss = (alpha * logp - q_new).mean()
        self.actor_opt.zero_grad()
        actor_loss.backward()
        self.actor_opt.step()

        if self.alpha_opt is not None:
            alpha_loss = -(self.log_alpha
                           * (logp + self.target_entropy).detach()).mean()
            self.alpha_opt.zero_grad()
            alpha_loss.backward()
            self.alpha_opt.step()

        _polyak(self.q1_target, self.q1, tau)
        _polyak(self.q2_target, self.q2, tau)


class _DeterministicActorCritic(_OffPolicyBase):
    """Shared machinery for DDPG and TD3."""

    def _build_common(self, twin: bool) -> None:
        lr = self.hp["learning_rate"]
        self.actor = nn.Sequential(mlp(self.obs_dim, self.act_dim), nn.Tanh())
        self.actor_target = _clone(self.actor)
        self.q1 = QNetwork(self.obs_dim, self.act_dim)
        self.q1_target = _clone(self.q1)
        params = list(self.q1.parameters())
        if twin:
            self.q2 = QNetwork(self.obs_dim, self.act_dim)
            self.q2_target = _clone(self.q2)
            params += list(self.q2.parameters())
        self.actor_opt = torch.optim.Adam(self.actor.parameters(), lr=lr)
        self.q_opt = torch.optim.Adam(params, lr=lr)

    def act(self, obs: np.ndarray, deterministic: bool = False) -> np.ndarray:
        with torch.no_grad():
            t = torch.as_tensor(obs, dtype=torch.float32).unsqueeze(0)
            action = self.actor(t).squeeze(0).numpy()
        if not deterministic:
            action = action + self.rng.normal(
                0.0, self.hp["exploration_noise"], size=self.act_dim)
        return np.clip(action, -1.0, 1.0)


class DDPG(_DeterministicActorCritic):
    DEFAULTS = {
        "learning_rate": 1e-3, "buffer_size": 1_000_000,
        "learning_starts": 100, "batch_size": 256, "tau": 0.005,
        "gamma": 0.99, "train_freq": 1, "gradient_steps": 1,
        "exploration_noise": 0.1,
    }

    def _build(self) -> None:
        self._build_common(twin=False)

    def _update(self, batch) -> None:
        obs, act, rew, nxt, done = batch
        gamma, tau = self.hp["gamma"], self.hp["tau"]
        with torch.no_grad():
            backup = rew + gamma * (1.0 - done) * self.q1_target(
                nxt, self.actor_target(nxt))
        q_loss = nn.functional.mse_loss(self.q1(obs, act), backup)
        self.q_opt.zero_grad()
        q_loss.backward()
        self.q_opt.step()

        actor_loss = -self.q1(obs, self.actor(obs)).mean()
        self.actor_opt.zero_grad()
        actor_loss.backward()
        self.actor_opt.step()

        _polyak(self.q1_target, self.q1, tau)
        _polyak(self.actor_target, self.actor, tau)


class TD3(_DeterministicActorCritic):
    DEFAULTS = {
        "learning_rate": 1e-3, "buffer_size": 1_000_000,
        "learning_starts": 100, "batch_size": 256, "tau": 0.005,
        "gamma": 0.99, "train_freq": 1, "gradient_steps": 1,
        "exploration_noise": 0.1, "policy_delay": 2,
        "target_policy_noise": 0.2, "target_noise_clip": 0.5,
    }

    def _build(self) -> None:
        self._build_common(twin=True)

    def _update(self, batch) -> None:
        obs, act, rew, nxt, done = batch
        gamma, tau = self.hp["gamma"], self.hp["tau"]
        with torch.no_grad():
            noise = torch.clamp(
                torch.randn_like(act) * self.hp["target_policy_noise"],
                -self.hp["target_noise_clip"], self.hp["target_noise_clip"])
            nxt_act = torch.clamp(self.actor_target(nxt) + noise, -1.0, 1.0)
            target_q = torch.min(self.q1_target(nxt, nxt_act),
                                 self.q2_target(nxt, nxt_act))
            backup = rew + gamma * (1.0 - done) * target_q
        q_loss = (nn.functional.mse_loss(self.q1(obs, act), backup)
                  + nn.functional.mse_loss(self.q2(obs, act), backup))
        self.q_opt.zero_grad()
        q_loss.backward()
        self.q_opt.step()

        if self.updates % self.hp["policy_delay"] == 0:
            actor_loss = -self.q1(obs, self.actor(obs)).mean()
            self.actor_opt.zero_grad()
            actor_loss.backward()
            self.actor_opt.step()
            _polyak(self.actor_target, self.actor, tau)
        _polyak(self.q1_target, self.q1, tau)
        _polyak(self.q2_target, self.q2, tau)


def make_learner(name: str, obs_dim: int, act_dim: int, seed: int = 0,
                 **overrides):
    table = {"SAC": SAC, "DDPG": DDPG, "TD3": TD3}
    if name.upper() not in table:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {ALGORITHMS}")
    return table[name.upper()](obs_dim, act_dim, seed=seed, **overrides)
