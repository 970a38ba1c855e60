#!/usr/bin/env python3
"""Extract a lexicon TSV from WordNet for a list of terms.

Output lines: term<TAB>sense_rank<TAB>lexname<TAB>hypernym>chain, one per
sense, sorted by (term, rank). Senses follow NLTK's synsets() order (nouns,
then verbs, adjectives, adverbs; most frequent first within each part of
speech). The hypernym chain follows the first (instance) hypernym upward,
nearest parent first.

Usage:
    extract_lexicon.py VOCAB [VOCAB ...] [--extra WORD ...] > lexicon.tsv

Needs nltk with the WordNet corpus available (nltk.download('wordnet') or a
wordnet/ directory under an NLTK data path).
"""

import argparse
import sys

from nltk.corpus import wordnet as wn


def chain(synset):
    out = []
    seen = set()
    current = synset
    while True:
        parents = current.hypernyms() or current.instance_hypernyms()
        if not parents or parents[0].name() in seen:
            return out
        current = parents[0]
        seen.add(current.name())
        out.append(current.name())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("vocab", nargs="*", help="vocabulary files, one term per line")
    ap.add_argument("--extra", nargs="*", default=[], help="additional terms")
    args = ap.parse_args()

    terms = set(args.extra)
    for path in args.vocab:
        with open(path, encoding="utf-8") as f:
            terms.update(line.strip() for line in f if line.strip())

    out = sys.stdout
    out.write("# term\tsense_rank\tcategory\thypernyms (nearest first)\n")
    out.write("# extracted from WordNet 3.0 with scripts/extract_lexicon.py\n")
    for term in sorted(terms):
        for rank, synset in enumerate(wn.synsets(term), start=1):
            out.write(f"{term}\t{rank}\t{synset.lexname()}\t{'>'.join(chain(synset))}\n")


if __name__ == "__main__":
    main()
