"""The whole pipeline on synthetic data: corpus, table, training, scoring.

A toy lexicon of weighted stems and single-character suffixes generates an
unsegmented training corpus plus small annotated sets.  Grid search picks
the order set and threshold on just five annotated sequences; the trained
segmenter is then scored on two hundred held-out sequences.
"""

from tangoseg import (
    Corpus,
    build_table,
    format_report,
    generate_corpus,
    make_zipf_lexicon,
    score_set,
    segment,
    serialize_flat,
    train_tango,
)

lexicon = make_zipf_lexicon(n_stems=40, n_suffixes=8, seed=7)
raw, _ = generate_corpus(lexicon, target_chars=200_000, seed=8)
print(f"unsegmented corpus: {len(raw)} sequences, {sum(map(len, raw))} characters")

table = build_table(Corpus(raw), range(2, 7))
print(f"count table: {len(table.counts)} grams over orders {sorted(table.orders)}")

_, train_anns = generate_corpus(lexicon, sequences=5, seed=9)
_, test_anns = generate_corpus(lexicon, sequences=200, seed=10)

result = train_tango(train_anns, table, "word-f")
orders = sorted(result.params.orders)
print(f"\ntrained on 5 sequences: N={orders}, t={result.params.threshold:g} "
      f"(training word-F {result.score:.1f})")

pairs = [(segment(ann.sequence, result.params, table), ann) for ann in test_anns]
print("\nsample segmentations (predicted vs gold word level):")
for pred, gold in pairs[:5]:
    print(f"  {serialize_flat(pred)}")
    print(f"  {serialize_flat(gold.word_segmentation)}   <- gold")

print("\nheld-out scores over 200 sequences:")
print(format_report(score_set(pairs)))
