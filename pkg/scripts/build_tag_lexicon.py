#!/usr/bin/env python3
"""Regenerate the bundled tag-frequency lexicon from the Brown corpus.

The engine only needs per-word tag occurrence counts; this script derives
them from NLTK's Brown corpus under the universal tagset and writes the
same line format the package ships (word<TAB>TAG:count,...).

Requires the corpus data, which is not bundled here:

    pip install nltk
    python -m nltk.downloader brown universal_tagset
    python scripts/build_tag_lexicon.py --min-count 2 -o src/specinfer/data/tag_lexicon.txt
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter, defaultdict
from pathlib import Path

KEPT_TAGS = {"NOUN", "VERB", "ADJ", "ADV", "DET", "ADP", "PRON", "CONJ", "NUM", "PRT"}


def build(min_count: int) -> dict[str, Counter]:
    try:
        from nltk.corpus import brown
    except ImportError:
        sys.exit("nltk is required: pip install nltk && python -m nltk.downloader brown universal_tagset")
    table: dict[str, Counter] = defaultdict(Counter)
    for word, tag in brown.tagged_words(tagset="universal"):
        if tag in KEPT_TAGS and word.isalpha():
            table[word.lower()][tag] += 1
    return {
        word: counts
        for word, counts in table.items()
        if sum(counts.values()) >= min_count
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-o", "--output", type=Path, required=True)
    parser.add_argument("--min-count", type=int, default=2, help="drop words rarer than this")
    args = parser.parse_args()

    table = build(args.min_count)
    lines = ["# Generated by scripts/build_tag_lexicon.py from the Brown corpus."]
    for word in sorted(table):
        counts = table[word].most_common()
        lines.append(word + "\t" + ",".join(f"{tag}:{n}" for tag, n in counts))
    args.output.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(table)} words to {args.output}")


if __name__ == "__main__":
    main()
