"""Numba kernels for collapsed Gibbs sampling.

The kernels consume pre-generated uniform deviates (one per token per
sweep) so that all randomness stays in numpy generator streams and a
run is reproducible bit-for-bit. ``gibbs_sweep`` performs one full
resampling pass during training; ``fold_in`` estimates a single new
document's topic proportions against frozen topic-word counts.
"""

from numba import njit


@njit(cache=True)
def gibbs_sweep(
    doc_of,
    word_of,
    z,
    n_dk,
    n_kw,
    n_k,
    alpha,
    beta,
    uniforms,
    buf,
    allowed_idx,
    allowed_off,
    restricted,
):
    """Resample every token's topic once, updating counts in place.

    When ``restricted`` is set, document d may only use the topics in
    allowed_idx[allowed_off[d]:allowed_off[d+1]]; otherwise all K
    topics are admissible and the CSR arrays are ignored.
    """
    K, V = n_kw.shape
    vbeta = V * beta
    for t in range(doc_of.shape[0]):
        d = doc_of[t]
        w = word_of[t]
        k_old = z[t]
        n_dk[d, k_old] -= 1
        n_kw[k_old, w] -= 1
        n_k[k_old] -= 1
        if restricted:
            start = allowed_off[d]
            end = allowed_off[d + 1]
            total = 0.0
            for i in range(start, end):
                k = allowed_idx[i]
                wt = (n_dk[d, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + vbeta)
                buf[i - start] = wt
                total += wt
            r = uniforms[t] * total
            acc = 0.0
            k_new = allowed_idx[end - 1]
            for i in range(start, end):
                acc += buf[i - start]
                if r < acc:
                    k_new = allowed_idx[i]
                    break
        else:
            total = 0.0
            for k in range(K):
                wt = (n_dk[d, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + vbeta)
                buf[k] = wt
                total += wt
            r = uniforms[t] * total
            acc = 0.0
            k_new = K - 1
            for k in range(K):
                acc += buf[k]
                if r < acc:
                    k_new = k
                    break
        z[t] = k_new
        n_dk[d, k_new] += 1
        n_kw[k_new, w] += 1
        n_k[k_new] += 1


@njit(cache=True)
def fold_in(
    word_of,
    z,
    doc_topic,
    n_kw,
    n_k,
    alpha,
    beta,
    uniforms,
    burn_in,
    theta_acc,
    buf,
):
    """Gibbs fold-in for one document with frozen topic-word counts.

    ``uniforms`` is (n_sweeps, n_tokens); after ``burn_in`` sweeps the
    smoothed topic proportions of each sweep are accumulated into
    ``theta_acc``.
    """
    K, V = n_kw.shape
    vbeta = V * beta
    n_tokens = word_of.shape[0]
    kalpha = K * alpha
    for s in range(uniforms.shape[0]):
        for t in range(n_tokens):
            w = word_of[t]
            k_old = z[t]
            doc_topic[k_old] -= 1
            total = 0.0
            for k in range(K):
                wt = (doc_topic[k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + vbeta)
                buf[k] = wt
                total += wt
            r = uniforms[s, t] * total
            acc = 0.0
            k_new = K - 1
            for k in range(K):
                acc += buf[k]
                if r < acc:
                    k_new = k
                    break
            z[t] = k_new
            doc_topic[k_new] += 1
        if s >= burn_in:
            denom = n_tokens + kalpha
            for k in range(K):
                theta_acc[k] += (doc_topic[k] + alpha) / denom
