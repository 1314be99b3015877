"""Which boundary condition earns its keep?

The segmenter can place a boundary at a vote local maximum, at votes
meeting the threshold, or either.  Local maxima cannot be adjacent, so the
threshold is what allows single-character segments; the threshold alone
misses soft peaks.  This script trains each variant separately under
several criteria and tabulates held-out scores.
"""

from tangoseg import (
    Corpus,
    build_table,
    generate_corpus,
    make_zipf_lexicon,
    score_set,
    segment,
    train_tango,
)

lexicon = make_zipf_lexicon(n_stems=40, n_suffixes=8, seed=7)
raw, _ = generate_corpus(lexicon, target_chars=200_000, seed=8)
table = build_table(Corpus(raw), range(2, 7))
_, train_anns = generate_corpus(lexicon, sequences=25, seed=11)
_, test_anns = generate_corpus(lexicon, sequences=150, seed=12)

conditions = [
    ("local max only", dict(use_local_max=True, use_threshold=False)),
    ("threshold only", dict(use_local_max=False, use_threshold=True)),
    ("both", dict(use_local_max=True, use_threshold=True)),
]

print(f"{'criterion':<20}{'condition':<18}{'N':<14}{'t':>5}   word-P  word-R  word-F")
for criterion in ("word-precision", "word-recall", "word-f"):
    for label, flags in conditions:
        result = train_tango(train_anns, table, criterion, **flags)
        pairs = [(segment(a.sequence, result.params, table), a) for a in test_anns]
        report = score_set(pairs)
        orders = "{" + ",".join(str(n) for n in result.params.sorted_orders) + "}"
        print(
            f"{criterion:<20}{label:<18}{orders:<14}{result.params.threshold:>5.2f}"
            f"   {report.word_precision:6.2f}  {report.word_recall:6.2f}  {report.word_f:6.2f}"
        )
    print()
