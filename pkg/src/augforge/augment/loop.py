"""Iteratively append synthetic samples and track the best classifier scores.

Each iteration trains a fresh generative model on the original training
data (seed = base seed + iteration, so iterations differ), produces one
synthetic row per train row and per eval row, appends them to growing
train/eval pools with their source labels, retrains the DNN evaluator on
the pools, and scores it on the untouched original eval and test sets.
Best (score, iteration) pairs update on >=, so a later tie wins.

The gated variant computes the mean normalized pairwise distance between
the candidate train batch and the original training set, and appends only
when that distance strictly improves on the best accepted batch so far;
rejected batches leave the pools and the classifier untouched.

A generative-training failure marks the iteration failed and the loop
continues; if every iteration fails the run itself fails.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from ..classify import DnnConfig, evaluate, train_dnn
from ..errors import RejectedInput, TrainingFailure
from ..genmodels import TrainConfig, train_model
from .similarity import pairwise_similarity


@dataclass
class IterationRecord:
    iteration: int
    accepted: bool
    s_eval: float = None
    s_test: float = None
    similarity: float = None
    train_pool_rows: int = 0
    eval_pool_rows: int = 0
    failed: bool = False

    def to_dict(self):
        return dict(self.__dict__)


@dataclass
class AugmentationState:
    """The growing pools plus the running best scores."""

    recon_x: np.ndarray
    recon_y: np.ndarray
    recon_x2: np.ndarray
    recon_y2: np.ndarray
    score_eval: tuple = (0.0, 0)
    score_test: tuple = (0.0, 0)

    def append(self, x_syn, y_syn, x2_syn, y2_syn):
        self.recon_x = np.concatenate([self.recon_x, x_syn])
        self.recon_y = np.concatenate([self.recon_y, y_syn])
        self.recon_x2 = np.concatenate([self.recon_x2, x2_syn])
        self.recon_y2 = np.concatenate([self.recon_y2, y2_syn])


@dataclass
class AugmentationResult:
    model_kind: str
    gated: bool
    seed: int
    n_train: int
    n_eval: int
    iterations: list = field(default_factory=list)
    score_eval: tuple = (0.0, 0)
    score_test: tuple = (0.0, 0)

    @property
    def accepted_count(self):
        return sum(1 for r in self.iterations if r.accepted)

    def synthetic_rows_at(self, iteration):
        """Synthetic train rows present after the given iteration:
        accepted iterations so far times the train-set size."""
        accepted = sum(1 for r in self.iterations if r.accepted and r.iteration <= iteration)
        return accepted * self.n_train

    def to_dict(self):
        return {
            "model_kind": self.model_kind,
            "gated": self.gated,
            "seed": self.seed,
            "n_train": self.n_train,
            "n_eval": self.n_eval,
            "iterations": [r.to_dict() for r in self.iterations],
            "score_eval": list(self.score_eval),
            "score_test": list(self.score_test),
            "synthetic_rows_at_best_eval": self.synthetic_rows_at(self.score_eval[1]),
            "synthetic_rows_at_best_test": self.synthetic_rows_at(self.score_test[1]),
        }

    @classmethod
    def from_dict(cls, d):
        result = cls(
            model_kind=d["model_kind"],
            gated=d["gated"],
            seed=d["seed"],
            n_train=d["n_train"],
            n_eval=d["n_eval"],
            iterations=[
                IterationRecord(**{k: v for k, v in r.items()}) for r in d["iterations"]
            ],
            score_eval=tuple(d["score_eval"]),
            score_test=tuple(d["score_test"]),
        )
        return result


def _default_synthesizer(model_kind, gen_cfg):
    def synthesize(split, iteration):
        cfg = replace(gen_cfg, seed=gen_cfg.seed + iteration)
        model = train_model(model_kind, split.X_train, split.Y_train, cfg)
        rng = np.random.default_rng(cfg.seed)
        x_syn = model.produce_synthetic(split.X_train, split.Y_train, rng)
        x2_syn = model.produce_synthetic(split.X_eval, split.Y_eval, rng)
        return x_syn, x2_syn

    return synthesize


def _default_evaluator(clf_cfg, n_classes):
    def score(pool_x, pool_y, pool_x2, pool_y2, split, iteration):
        cfg = replace(clf_cfg, seed=clf_cfg.seed + iteration)
        model = train_dnn(pool_x, pool_y, pool_x2, pool_y2, n_classes=n_classes, cfg=cfg)
        s_eval = evaluate(model, split.X_eval, split.Y_eval).f_score
        s_test = evaluate(model, split.X_test, split.Y_test).f_score
        return s_eval, s_test

    return score


def run_augmentation(split, model_kind, n_iterations, gen_cfg=None, clf_cfg=None,
                     seed=0, gated=False, synthesizer=None, evaluator=None):
    if n_iterations < 1:
        raise RejectedInput(f"need at least one iteration, got {n_iterations}")
    # the run seed governs both training stages; per-iteration seeds offset it
    gen_cfg = replace(gen_cfg or TrainConfig(), seed=seed)
    clf_cfg = replace(clf_cfg or DnnConfig(), seed=seed)
    if synthesizer is None:
        synthesizer = _default_synthesizer(model_kind, gen_cfg)
    if evaluator is None:
        evaluator = _default_evaluator(clf_cfg, split.n_classes)

    state = AugmentationState(
        recon_x=split.X_train.copy(),
        recon_y=split.Y_train.copy(),
        recon_x2=split.X_eval.copy(),
        recon_y2=split.Y_eval.copy(),
    )
    result = AugmentationResult(
        model_kind=model_kind,
        gated=gated,
        seed=seed,
        n_train=len(split.X_train),
        n_eval=len(split.X_eval),
    )
    best_distance = np.inf
    failures = 0
    for iteration in range(1, n_iterations + 1):
        try:
            x_syn, x2_syn = synthesizer(split, iteration)
        except TrainingFailure:
            failures += 1
            result.iterations.append(
                IterationRecord(
                    iteration=iteration,
                    accepted=False,
                    failed=True,
                    train_pool_rows=len(state.recon_x),
                    eval_pool_rows=len(state.recon_x2),
                )
            )
            continue

        similarity = pairwise_similarity(x_syn, split.X_train).mean_distance
        if gated and not similarity < best_distance:
            result.iterations.append(
                IterationRecord(
                    iteration=iteration,
                    accepted=False,
                    similarity=similarity,
                    train_pool_rows=len(state.recon_x),
                    eval_pool_rows=len(state.recon_x2),
                )
            )
            continue
        if gated:
            best_distance = similarity

        state.append(x_syn, split.Y_train, x2_syn, split.Y_eval)
        s_eval, s_test = evaluator(
            state.recon_x, state.recon_y, state.recon_x2, state.recon_y2, split, iteration
        )
        if s_eval >= state.score_eval[0]:
            state.score_eval = (s_eval, iteration)
        if s_test >= state.score_test[0]:
            state.score_test = (s_test, iteration)
        result.iterations.append(
            IterationRecord(
                iteration=iteration,
                accepted=True,
                s_eval=s_eval,
                s_test=s_test,
                similarity=similarity,
                train_pool_rows=len(state.recon_x),
                eval_pool_rows=len(state.recon_x2),
            )
        )
    if failures == n_iterations:
        raise TrainingFailure(f"all {n_iterations} augmentation iterations failed")
    result.score_eval = state.score_eval
    result.score_test = state.score_test
    return result


def run_gated_augmentation(split, model_kind, n_iterations, gen_cfg=None, clf_cfg=None,
                           seed=0, synthesizer=None, evaluator=None):
    return run_augmentation(
        split,
        model_kind,
        n_iterations,
        gen_cfg=gen_cfg,
        clf_cfg=clf_cfg,
        seed=seed,
        gated=True,
        synthesizer=synthesizer,
        evaluator=evaluator,
    )
