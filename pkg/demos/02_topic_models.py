"""Collapsed Gibbs training, topic inspection and fold-in inference.

Builds a small synthetic corpus with two obvious themes, trains an LDA
model, prints the per-topic top words, folds in an unseen document and
shows that a fixed seed reproduces the model exactly.
"""

import numpy as np

from synsim import Vocabulary, infer, top_words, train_labeled_lda, train_lda
from synsim.rng import substream

MUSIC = ["guitar", "drum", "melody", "chord", "rhythm", "stage"]
SPACE = ["orbit", "rocket", "lunar", "probe", "thrust", "module"]


def synthetic_corpus(n_docs=80, doc_len=30, seed=7):
    rng = substream(seed, "demo-topics")
    vocab = Vocabulary(sorted(MUSIC + SPACE), [0.5] * 12)
    bows, themes = [], []
    for d in range(n_docs):
        theme = MUSIC if d % 2 == 0 else SPACE
        themes.append("music" if d % 2 == 0 else "space")
        words = rng.choice(6, size=doc_len)
        bow = {}
        for w in words:
            tid = vocab.index[theme[w]]
            bow[tid] = bow.get(tid, 0) + 1
        bows.append(bow)
    return vocab, bows, themes


def main():
    vocab, bows, themes = synthetic_corpus()

    model = train_lda(bows, vocab, K=2, alpha=0.1, beta=0.01,
                      iterations=200, seed=42, lang="en")
    print("trained K=2 model on", len(bows), "documents")
    for k in range(model.K):
        words = ", ".join(w for w, _ in top_words(model, k, 5))
        print(f"  topic {k}: {words}")

    unseen = {vocab.index["rocket"]: 3, vocab.index["orbit"]: 2}
    theta = infer(model, unseen, iterations=100, burn_in=50, seed=1)
    print(f"\nunseen 'rocket orbit' document -> theta {np.round(theta, 3)}")
    print("dominant topic:", int(theta.argmax()))

    again = train_lda(bows, vocab, K=2, alpha=0.1, beta=0.01,
                      iterations=200, seed=42, lang="en")
    print("\nsame seed reproduces counts exactly:",
          np.array_equal(model.topic_word_counts, again.topic_word_counts))

    labeled = train_labeled_lda(
        bows, [{t} for t in themes], ["music", "space"], vocab,
        iterations=100, seed=3, lang="en",
    )
    print("\nsupervised variant (one topic per label):")
    for k, label in enumerate(labeled.topic_labels):
        words = ", ".join(w for w, _ in top_words(labeled, k, 3))
        print(f"  {label}: {words}")


if __name__ == "__main__":
    main()
