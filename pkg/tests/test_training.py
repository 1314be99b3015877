import random

import pytest

from tangoseg import (
    BigramStats,
    Corpus,
    ParameterError,
    SstParams,
    TangoParams,
    UnsupportedOrderError,
    build_table,
    generate_corpus,
    grid_to_tsv,
    make_zipf_lexicon,
    read_tango_params,
    segment,
    split_heldout,
    sst_grid,
    sst_segment,
    tango_grid,
    train_sst,
    train_tango,
    write_tango_params,
)
from tangoseg.metrics import _prf


@pytest.fixture(scope="module")
def toy_setup():
    lexicon = make_zipf_lexicon(20, 5, seed=3)
    raw, _ = generate_corpus(lexicon, target_chars=30_000, seed=4)
    table = build_table(Corpus(raw), range(2, 7))
    stats = BigramStats.from_corpus(raw)
    _, train_anns = generate_corpus(lexicon, sequences=6, seed=5)
    return table, stats, train_anns


def pooled_score(pairs, criterion):
    matched = proposed = gold = 0
    for pred, ann in pairs:
        golds = set(ann.words if criterion.startswith("word") else ann.morpheme_brackets)
        matched += len(set(pred.brackets) & golds)
        proposed += len(pred.brackets)
        gold += len(golds)
    p, r, f = _prf(matched, proposed, gold)
    if criterion.endswith("precision"):
        return p
    if criterion.endswith("recall"):
        return r
    return f


class TestGridEnumeration:
    def test_tango_grid_size_and_order(self):
        grid = list(tango_grid())
        assert len(grid) == 31 * 20
        subsets = []
        for subset, _ in grid:
            if not subsets or subsets[-1] != subset:
                subsets.append(subset)
        assert subsets[:7] == [(2,), (3,), (4,), (5,), (6,), (2, 3), (2, 4)]
        assert subsets[-1] == (2, 3, 4, 5, 6)
        assert len(subsets) == 31
        # thresholds descend within a subset: larger t preferred on ties
        first_block = [t for subset, t in grid if subset == (2,)]
        assert first_block == sorted(first_block, reverse=True)
        assert first_block[0] == 1.0 and first_block[-1] == 0.05

    def test_sst_grid_size_and_order(self):
        grid = list(sst_grid())
        assert len(grid) == 5 ** 7
        assert grid[0] == (0.0, (0.0,) * 6)
        assert grid[1] == (0.0, (0.0, 0.0, 0.0, 0.0, 0.0, 50.0))
        vectors = [(theta,) + es for theta, es in grid]
        assert vectors == sorted(vectors)


class TestTrainTango:
    def test_matches_exhaustive_oracle(self, toy_setup):
        table, _, train_anns = toy_setup
        result = train_tango(train_anns, table, "word-f")
        best = None
        for subset, t in tango_grid():
            params = TangoParams(frozenset(subset), t)
            pairs = [(segment(ann.sequence, params, table), ann) for ann in train_anns]
            score = pooled_score(pairs, "word-f")
            if best is None or score > best[1]:
                best = (params, score)
        assert result.params == best[0]
        assert result.score == best[1]

    def test_grid_table_is_complete_and_consistent(self, toy_setup):
        table, _, train_anns = toy_setup
        result = train_tango(train_anns, table, "word-recall")
        assert len(result.grid) == 620
        assert result.score == max(score for _, score in result.grid)
        rng = random.Random(89)
        for params, recorded in rng.sample(result.grid, 10):
            pairs = [(segment(ann.sequence, params, table), ann) for ann in train_anns]
            assert recorded == pooled_score(pairs, "word-recall")

    def test_all_tied_grid_prefers_small_n_and_large_t(self):
        # a table with no repeated grams votes 0 everywhere, so every
        # setting leaves every sequence whole and all 620 scores tie
        table = build_table(Corpus(["QRSTUVW"]), range(2, 7))
        assert table.counts == {}
        train_anns = [
            ann for _, ann in [generate_corpus(make_zipf_lexicon(5, 2, seed=1), sequences=3, seed=2)]
        ][0]
        result = train_tango(train_anns, table, "word-f")
        assert sorted(result.params.orders) == [2]
        assert result.params.threshold == 1.0
        assert len({score for _, score in result.grid}) == 1

    def test_determinism(self, toy_setup):
        table, _, train_anns = toy_setup
        first = train_tango(train_anns, table, "word-f")
        second = train_tango(train_anns, table, "word-f")
        assert first.params == second.params
        assert first.score == second.score

    def test_condition_flags_are_trained_through(self, toy_setup):
        table, _, train_anns = toy_setup
        result = train_tango(train_anns, table, "word-f", use_threshold=False)
        assert result.params.use_threshold is False
        best = None
        for subset, t in tango_grid():
            params = TangoParams(frozenset(subset), t, use_threshold=False)
            pairs = [(segment(ann.sequence, params, table), ann) for ann in train_anns]
            score = pooled_score(pairs, "word-f")
            if best is None or score > best[1]:
                best = (params, score)
        assert result.params == best[0]

    def test_morpheme_criterion(self, toy_setup):
        table, _, train_anns = toy_setup
        result = train_tango(train_anns, table, "morpheme-precision")
        params = result.params
        pairs = [(segment(ann.sequence, params, table), ann) for ann in train_anns]
        assert result.score == pooled_score(pairs, "morpheme-precision")

    def test_rejects_bad_criterion(self, toy_setup):
        table, _, train_anns = toy_setup
        with pytest.raises(ParameterError, match="not\\s+admissible"):
            train_tango(train_anns, table, "compatible-rate")

    def test_rejects_empty_train_set(self, toy_setup):
        table, _, _ = toy_setup
        with pytest.raises(ParameterError):
            train_tango([], table, "word-f")

    def test_rejects_table_without_full_orders(self, toy_setup):
        _, _, train_anns = toy_setup
        small = build_table(Corpus(["ABABAB"]), {2, 3})
        with pytest.raises(UnsupportedOrderError):
            train_tango(train_anns, small, "word-f")


class TestTrainSst:
    def test_single_sequence_matches_exhaustive_oracle(self, toy_setup):
        _, stats, train_anns = toy_setup
        train = train_anns[:1]
        result = train_sst(train, stats, "word-f")
        best = None
        for theta, es in sst_grid():
            params = SstParams(theta, es)
            pairs = [(sst_segment(ann.sequence, params, stats), ann) for ann in train]
            score = pooled_score(pairs, "word-f")
            if best is None or score > best[1]:
                best = (params, score)
        assert result.params == best[0]
        assert result.score == best[1]

    def test_cached_profiles_equal_direct_evaluation(self, toy_setup):
        _, stats, train_anns = toy_setup
        result = train_sst(train_anns[:3], stats, "word-f")
        rng = random.Random(97)
        sampled = rng.sample(result.grid, 25) + [(result.params, result.score)]
        for params, recorded in sampled:
            pairs = [
                (sst_segment(ann.sequence, params, stats), ann) for ann in train_anns[:3]
            ]
            assert recorded == pooled_score(pairs, "word-f")

    def test_all_tied_grid_returns_zero_vector(self):
        # four-character sequences have a single-position dts profile,
        # which is never a peak: every setting predicts no boundary
        from tangoseg import TwoLevelAnnotation

        stats = BigramStats.from_corpus(["ABCABCABC", "CABCAB", "BCABCA"])
        anns = [
            TwoLevelAnnotation.from_segments([["AB"], ["CA"]]),
            TwoLevelAnnotation.from_segments([["BC"], ["AB"]]),
            TwoLevelAnnotation.from_segments([["CA"], ["BC"]]),
        ]
        assert all(len(a.sequence) == 4 for a in anns)
        result = train_sst(anns, stats, "word-f")
        assert result.params.theta == 0.0
        assert result.params.extremum_thresholds == (0.0,) * 6
        assert len({score for _, score in result.grid}) == 1

    def test_determinism(self, toy_setup):
        _, stats, train_anns = toy_setup
        first = train_sst(train_anns[:2], stats, "word-f")
        second = train_sst(train_anns[:2], stats, "word-f")
        assert first.params == second.params

    def test_estimator_carried_into_params(self, toy_setup):
        _, stats, train_anns = toy_setup
        result = train_sst(train_anns[:2], stats.using("ele"), "word-f")
        assert result.params.estimator == "ele"

    def test_rejects_bad_criterion(self, toy_setup):
        _, stats, train_anns = toy_setup
        with pytest.raises(ParameterError):
            train_sst(train_anns, stats, "all-compatible")


class TestSplitHeldout:
    def test_sizes_and_disjointness(self):
        items = [f"seq{i}" for i in range(10)]
        train, test = split_heldout(items, 2, seed=0)
        assert len(train) == 2 and len(test) == 8
        assert not set(train) & set(test)
        assert sorted(train + test) == sorted(items)

    def test_duplicates_dropped_from_train(self):
        items = ["a", "b", "c", "a", "d"]
        for seed in range(20):
            train, test = split_heldout(items, 2, seed=seed)
            assert not set(train) & set(test)

    def test_deterministic(self):
        items = [f"seq{i}" for i in range(30)]
        assert split_heldout(items, 5, seed=42) == split_heldout(items, 5, seed=42)

    def test_key_function(self):
        items = [("a", 1), ("a", 2), ("b", 3), ("c", 4)]
        for seed in range(10):
            train, test = split_heldout(items, 2, seed=seed, key=lambda t: t[0])
            train_keys = {t[0] for t in train}
            test_keys = {t[0] for t in test}
            assert not train_keys & test_keys

    def test_train_n_too_large(self):
        with pytest.raises(ParameterError):
            split_heldout(["a", "b"], 2, seed=0)


class TestParamsFiles:
    def test_tango_roundtrip(self, tmp_path):
        params = TangoParams(frozenset({2, 4}), 0.4)
        path = tmp_path / "tango.params"
        write_tango_params(params, path)
        assert path.read_text() == "N=2,4\nt=0.4\n"
        assert read_tango_params(path) == params

    def test_flags_applied_at_read_time(self, tmp_path):
        path = tmp_path / "tango.params"
        write_tango_params(TangoParams(frozenset({2}), 0.5), path)
        loaded = read_tango_params(path, use_threshold=False)
        assert loaded.use_threshold is False

    def test_grid_tsv_headers(self, toy_setup):
        table, stats, train_anns = toy_setup
        tango_result = train_tango(train_anns[:2], table, "word-f")
        text = grid_to_tsv(tango_result)
        assert text.startswith("N\tt\tscore\n")
        assert len(text.splitlines()) == 621


class TestTinyTrainingRobustness:
    def test_five_versus_fifty_sequences(self):
        lexicon = make_zipf_lexicon(30, 6, seed=21)
        raw, _ = generate_corpus(lexicon, target_chars=60_000, seed=22)
        table = build_table(Corpus(raw), range(2, 7))
        _, pool = generate_corpus(lexicon, sequences=100, seed=23)
        train5, train50, test = pool[:5], pool[5:55], pool[55:]

        scores = {}
        for name, train in (("5", train5), ("50", train50)):
            params = train_tango(train, table, "word-f").params
            pairs = [(segment(ann.sequence, params, table), ann) for ann in test]
            scores[name] = pooled_score(pairs, "word-f")
        gap = scores["50"] - scores["5"]
        print(
            f"tiny-training harness: word-F {scores['5']:.2f} (5 seqs) vs "
            f"{scores['50']:.2f} (50 seqs), gap {gap:+.2f}"
        )
        assert scores["5"] > 0.0
        assert scores["50"] > 0.0
