import numpy as np
import pytest

from augforge.augment import (
    AugmentationResult,
    Split,
    pairwise_similarity,
    read_trace_csv,
    run_augmentation,
    run_gated_augmentation,
    write_trace_csv,
)
from augforge.classify import DnnConfig
from augforge.errors import ConfigError, RejectedInput, ShapeMismatch, TrainingFailure
from augforge.genmodels import TrainConfig


def toy_split(n_train=10, n_eval=4, n_test=6, n_features=3, seed=0):
    rng = np.random.default_rng(seed)

    def part(n):
        return rng.random((n, n_features)), rng.integers(0, 2, size=n)

    xt, yt = part(n_train)
    xe, ye = part(n_eval)
    xs, ys = part(n_test)
    yt[:2] = [0, 1]  # make sure both classes appear in train
    return Split(X_train=xt, Y_train=yt, X_eval=xe, Y_eval=ye, X_test=xs, Y_test=ys)


def noisy_synthesizer(seed=0):
    def synthesize(split, iteration):
        rng = np.random.default_rng(seed + iteration)
        return (
            np.clip(split.X_train + rng.normal(scale=0.05, size=split.X_train.shape), 0, 1),
            np.clip(split.X_eval + rng.normal(scale=0.05, size=split.X_eval.shape), 0, 1),
        )

    return synthesize


def constant_evaluator(value=0.5):
    def score(pool_x, pool_y, pool_x2, pool_y2, split, iteration):
        return value, value

    return score


# ------------------------------------------------------------- similarity


def test_similarity_identity_is_zero():
    A = np.random.default_rng(0).random((4, 3))
    report = pairwise_similarity(A, A)
    assert report.mean_distance == 0.0
    assert np.all(report.per_column == 0.0)


def test_similarity_maximal_separation():
    report = pairwise_similarity(np.zeros((3, 2)), np.ones((3, 2)))
    assert report.mean_distance == 1.0


def test_similarity_hand_case():
    report = pairwise_similarity(np.array([[0.0, 0.0]]), np.array([[1.0, 0.0]]))
    assert report.mean_distance == pytest.approx(0.5)


def test_similarity_cross_pairs_when_heights_differ():
    # pairs: |0-1| and |1-1| -> mean 0.5
    report = pairwise_similarity(np.array([[0.0], [1.0]]), np.array([[1.0]]))
    assert report.mean_distance == pytest.approx(0.5)


def test_similarity_rejects_empty_and_mismatched():
    with pytest.raises(RejectedInput):
        pairwise_similarity(np.zeros((0, 2)), np.zeros((2, 2)))
    with pytest.raises(ShapeMismatch):
        pairwise_similarity(np.zeros((2, 2)), np.zeros((2, 3)))


# -------------------------------------------------------- ungated loop


def test_single_iteration_bookkeeping():
    split = toy_split()
    result = run_augmentation(
        split, "vae", 1, synthesizer=noisy_synthesizer(), evaluator=constant_evaluator(0.5)
    )
    assert result.score_eval == (0.5, 1)
    assert result.score_test == (0.5, 1)


def test_pool_size_law():
    split = toy_split(n_train=10, n_eval=4)
    result = run_augmentation(
        split, "vae", 5, synthesizer=noisy_synthesizer(), evaluator=constant_evaluator()
    )
    for r in result.iterations:
        assert r.train_pool_rows == (r.iteration + 1) * 10
        assert r.eval_pool_rows == (r.iteration + 1) * 4
    assert result.synthetic_rows_at(5) == 50


def test_constant_scores_last_tie_wins():
    split = toy_split()
    result = run_augmentation(
        split, "vae", 7, synthesizer=noisy_synthesizer(), evaluator=constant_evaluator(0.4)
    )
    assert result.score_eval == (0.4, 7)
    assert result.score_test == (0.4, 7)


def test_best_score_is_trace_maximum():
    split = toy_split()
    scores = iter([0.3, 0.8, 0.5, 0.8, 0.2])

    def varying(pool_x, pool_y, pool_x2, pool_y2, split, iteration):
        s = next(scores)
        return s, s / 2

    result = run_augmentation(split, "vae", 5, synthesizer=noisy_synthesizer(), evaluator=varying)
    recorded = [r.s_eval for r in result.iterations]
    assert result.score_eval[0] == max(recorded)
    assert result.score_eval == (0.8, 4)  # >= keeps the later tie
    assert result.score_test == (0.4, 4)


def test_appended_labels_mirror_source_labels():
    split = toy_split(n_train=8, n_eval=3)
    seen = {}

    def capturing(pool_x, pool_y, pool_x2, pool_y2, split_, iteration):
        seen[iteration] = (pool_y.copy(), pool_y2.copy())
        return 0.5, 0.5

    run_augmentation(split, "vae", 3, synthesizer=noisy_synthesizer(), evaluator=capturing)
    for i, (pool_y, pool_y2) in seen.items():
        assert np.array_equal(pool_y, np.tile(split.Y_train, i + 1))
        assert np.array_equal(pool_y2, np.tile(split.Y_eval, i + 1))


def test_originals_never_mutated():
    split = toy_split()
    x_eval = split.X_eval.copy()
    x_test = split.X_test.copy()
    x_train = split.X_train.copy()
    run_augmentation(
        split, "vae", 3, synthesizer=noisy_synthesizer(), evaluator=constant_evaluator()
    )
    assert np.array_equal(split.X_eval, x_eval)
    assert np.array_equal(split.X_test, x_test)
    assert np.array_equal(split.X_train, x_train)


def test_failed_iterations_recorded_and_skipped():
    split = toy_split()
    good = noisy_synthesizer()

    def flaky(split_, iteration):
        if iteration == 2:
            raise TrainingFailure("boom", epoch=1)
        return good(split_, iteration)

    result = run_augmentation(split, "vae", 3, synthesizer=flaky, evaluator=constant_evaluator())
    flags = [(r.iteration, r.accepted, r.failed) for r in result.iterations]
    assert flags == [(1, True, False), (2, False, True), (3, True, False)]
    assert result.iterations[1].train_pool_rows == result.iterations[0].train_pool_rows


def test_all_failures_raise():
    split = toy_split()

    def always_fails(split_, iteration):
        raise TrainingFailure("boom")

    with pytest.raises(TrainingFailure):
        run_augmentation(split, "vae", 3, synthesizer=always_fails, evaluator=constant_evaluator())


def test_scores_within_unit_interval_and_needs_iterations():
    split = toy_split()
    with pytest.raises(RejectedInput):
        run_augmentation(split, "vae", 0, evaluator=constant_evaluator())


# ---------------------------------------------------------- gated loop


def test_gate_accepts_perfect_reconstruction():
    split = toy_split()

    def perfect(split_, iteration):
        return split_.X_train.copy(), split_.X_eval.copy()

    result = run_gated_augmentation(
        split, "vae", 1, synthesizer=perfect, evaluator=constant_evaluator()
    )
    assert result.iterations[0].accepted
    assert result.iterations[0].similarity == 0.0


def test_gate_freezes_pool_after_noise_turns_bad():
    split = toy_split(n_train=10)
    good = noisy_synthesizer()

    def good_then_noise(split_, iteration):
        if iteration == 1:
            return good(split_, iteration)
        rng = np.random.default_rng(100 + iteration)
        return rng.random(split_.X_train.shape), rng.random(split_.X_eval.shape)

    result = run_gated_augmentation(
        split, "vae", 4, synthesizer=good_then_noise, evaluator=constant_evaluator()
    )
    assert [r.accepted for r in result.iterations] == [True, False, False, False]
    assert result.iterations[-1].train_pool_rows == 2 * 10
    assert result.accepted_count == 1


def test_gate_accepts_only_strict_improvements():
    split = toy_split()
    distances = {1: 0.3, 2: 0.3, 3: 0.2, 4: 0.25}

    def fixed_distance(split_, iteration):
        d = distances[iteration]
        return np.clip(split_.X_train + d, 0, 1), np.clip(split_.X_eval + d, 0, 1)

    # X_train + d has exact mean distance d when X_train + d stays in [0,1]
    split.X_train[...] = np.clip(split.X_train, 0.0, 0.6)
    split.X_eval[...] = np.clip(split.X_eval, 0.0, 0.6)
    result = run_gated_augmentation(
        split, "vae", 4, synthesizer=fixed_distance, evaluator=constant_evaluator()
    )
    assert [r.accepted for r in result.iterations] == [True, False, True, False]
    sims = [r.similarity for r in result.iterations if r.accepted]
    assert sims == sorted(sims, reverse=True)  # strictly improving
    assert result.accepted_count <= 4


# ----------------------------------------------------- trace round trips


def run_small(gated=False):
    split = toy_split()
    scores = {1: 0.3, 2: 0.9, 3: 0.6}

    def ev(pool_x, pool_y, pool_x2, pool_y2, split_, iteration):
        return scores[iteration], scores[iteration] / 3

    return run_augmentation(
        split, "vae", 3, gated=gated, synthesizer=noisy_synthesizer(), evaluator=ev
    )


def test_trace_csv_roundtrip(tmp_path):
    result = run_small()
    path = write_trace_csv(result, tmp_path / "trace.csv")
    rows = read_trace_csv(path)
    assert len(rows) == 3
    assert rows[1]["S_eval"] == result.iterations[1].s_eval
    assert rows[0]["accepted"] is True


def test_trace_csv_header_contract(tmp_path):
    result = run_small()
    path = write_trace_csv(result, tmp_path / "trace.csv")
    header = path.read_text().splitlines()[0]
    assert header == "iteration,accepted,S_eval,S_test,similarity,train_pool_rows"


def test_trace_csv_missing_column_rejected(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("iteration,accepted\n1,true\n")
    with pytest.raises(ConfigError, match="S_eval"):
        read_trace_csv(p)


def test_result_json_roundtrip():
    result = run_small()
    back = AugmentationResult.from_dict(result.to_dict())
    assert back.score_eval == result.score_eval
    assert back.score_test == result.score_test
    assert [r.to_dict() for r in back.iterations] == [r.to_dict() for r in result.iterations]


def test_trace_json_file(tmp_path):
    import json

    from augforge.augment import write_trace_json

    result = run_small()
    path = write_trace_json(result, tmp_path / "trace.json")
    doc = json.loads(path.read_text())
    back = AugmentationResult.from_dict(doc)
    assert back.score_eval == result.score_eval
    assert doc["synthetic_rows_at_best_eval"] == result.synthetic_rows_at(result.score_eval[1])


def test_rerun_same_seed_bit_identical(tmp_path):
    split = toy_split()
    cfg = TrainConfig(
        epochs=8,
        latent_dim=2,
        enc_hidden=(8,),
        dec_hidden=(8,),
        gen_hidden=(8,),
        disc_hidden=(8,),
        dropout=0.0,
    )
    clf = DnnConfig(hidden=(8, 4), max_epochs=10, patience=3)
    a = run_augmentation(split, "vae", 2, gen_cfg=cfg, clf_cfg=clf, seed=11)
    b = run_augmentation(split, "vae", 2, gen_cfg=cfg, clf_cfg=clf, seed=11)
    pa = write_trace_csv(a, tmp_path / "a.csv")
    pb = write_trace_csv(b, tmp_path / "b.csv")
    assert pa.read_bytes() == pb.read_bytes()


def test_end_to_end_with_real_models():
    # tiny but real: every stage trains
    rng = np.random.default_rng(5)
    n = 24
    X = np.concatenate([rng.random((n, 3)) * 0.4, rng.random((n, 3)) * 0.4 + 0.6])
    Y = np.array([0] * n + [1] * n)
    order = rng.permutation(2 * n)
    X, Y = X[order], Y[order]
    split = Split(
        X_train=X[:32], Y_train=Y[:32], X_eval=X[32:40], Y_eval=Y[32:40],
        X_test=X[40:], Y_test=Y[40:],
    )
    cfg = TrainConfig(
        epochs=30, latent_dim=2, enc_hidden=(8,), dec_hidden=(8,),
        gen_hidden=(8,), disc_hidden=(8,), dropout=0.0,
    )
    clf = DnnConfig(hidden=(8, 4), max_epochs=40, patience=5)
    for kind in ("vae", "cgan", "vae_sgan"):
        result = run_augmentation(split, kind, 2, gen_cfg=cfg, clf_cfg=clf, seed=3)
        assert result.accepted_count == 2
        for r in result.iterations:
            assert 0.0 <= r.s_eval <= 1.0
            assert 0.0 <= r.s_test <= 1.0
        assert 1 <= result.score_eval[1] <= 2
