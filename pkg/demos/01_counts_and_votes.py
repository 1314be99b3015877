"""Counts to votes to boundaries, on a corpus small enough to read.

The corpus repeats two 'words' (ABCD and WXYZ) on separate lines, so every
n-gram inside a word is frequent while every n-gram straddling the AB CD /
WX YZ seam is rare.  The vote profile of the concatenation ABCDWXYZ then
peaks exactly at the seam.
"""

from tangoseg import Corpus, TangoParams, build_table, place_boundaries, serialize_flat, vote_profile

corpus = Corpus(["ABCD"] * 9 + ["WXYZ"] * 9)
table = build_table(corpus, {2, 3, 4})

print(f"corpus: {len(corpus.sequences)} sequences, {corpus.total_chars} characters")
print(f"table:  {len(table.counts)} stored grams (singletons pruned)")
for gram in ("AB", "CD", "DW", "ABCD", "BCDW"):
    print(f"  count({gram!r}) = {table.count(gram)}")

seq = "ABCDWXYZ"
profile = vote_profile(seq, {2, 3, 4}, table, keep_per_order=True)

print(f"\nvote profile of {seq!r} (gap k sits after the k-th character):")
for i, v in enumerate(profile.votes):
    gap = f"{seq[i]}-{seq[i + 1]}"
    bar = "#" * round(v * 40)
    per_order = "  ".join(
        f"n={n}:{profile.per_order[n][i]:.2f}" for n in sorted(profile.per_order)
    )
    print(f"  k={i + 1} {gap}:  {v:5.2f}  {bar:<40}  ({per_order})")

for lm, th, label in ((True, False, "local max only"),
                      (False, True, "threshold only"),
                      (True, True, "both conditions")):
    params = TangoParams(frozenset({2, 3, 4}), 0.5, use_local_max=lm, use_threshold=th)
    seg = place_boundaries(profile, params)
    print(f"\n{label:>15} (t=0.5): {serialize_flat(seg)}")
