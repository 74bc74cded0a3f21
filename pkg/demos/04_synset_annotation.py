"""Annotating topics with synsets: the cross-lingual pivot.

Loads a small lemma-to-synset lexicon, annotates each topic with the
union of its top-5 words' senses (every sense counts, no
disambiguation) and converts a document's topic-space hash code into
synset space.
"""

import tempfile
from pathlib import Path

import numpy as np

from synsim import (
    Vocabulary,
    annotate_all,
    build_topic_hash,
    load_lexicon,
    to_synset_hash,
    top_words,
)
from synsim.topics import TopicModel

LEXICON_TSV = """\
radio.n.01\tradio
radio.v.01\tradio
equipment.n.01\tequipment
network.n.01\tnetwork
network.n.05\tnetwork
communication.n.01\tcommunication
regulative.s.01\tregulatory
harvest.n.01\tharvest
harvest.v.01\tharvest
grain.n.01\tgrain
soil.n.02\tsoil
farm.n.01\tfarm
crop.n.01\tcrop
"""


def crafted_model():
    """Two topics with hand-set word counts, standing in for a trained model."""
    media = ["radio", "equipment", "network", "communication", "regulatory"]
    farming = ["harvest", "grain", "soil", "farm", "crop"]
    terms = sorted(media + farming)
    vocab = Vocabulary(terms, [0.5] * len(terms))
    counts = np.zeros((2, len(terms)), dtype=np.int64)
    for k, group in enumerate([media, farming]):
        for rank, word in enumerate(group):
            counts[k, vocab.index[word]] = 500 - 50 * rank
    return TopicModel(2, 0.1, 0.01, vocab, counts, counts.sum(axis=1),
                      seed=0, iterations=1, lang="en")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "en.tsv"
        path.write_text(LEXICON_TSV, encoding="utf-8")
        lexicon = load_lexicon(path, "en")
    print(f"lexicon: {len(lexicon)} lemmas")
    print("senses of 'radio':", sorted(lexicon.synsets_of("radio")))

    model = crafted_model()
    annotations = annotate_all(model, lexicon, n=5)
    for k, ann in annotations.items():
        words = [w for w, _ in top_words(model, k, 5)]
        print(f"\ntopic {k} top words: {words}")
        print(f"  annotation ({len(ann.synsets)} synsets): {sorted(ann.synsets)}")

    theta = [0.7, 0.3]
    topic_code = build_topic_hash(theta, num_levels=3, cap=12)
    synset_code = to_synset_hash(topic_code, annotations)
    print(f"\ndocument theta {theta}")
    print("topic-space levels: ", [sorted(l) for l in topic_code.levels])
    print("synset-space levels:", [sorted(l) for l in synset_code.levels])


if __name__ == "__main__":
    main()
