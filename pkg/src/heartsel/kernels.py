"""Hot inner loops, each as a numba kernel plus a numpy twin.

The public functions at the bottom dispatch on :func:`heartsel._accel.numba_enabled`.
Both paths follow the same arithmetic order where that matters for tie-breaking
(split scores, distance ranks), so they agree on decisions, not just to a tolerance.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit, numba_enabled

# ---------------------------------------------------------------------------
# ANOVA sums of squares
# ---------------------------------------------------------------------------


@njit
def _anova_ss_numba(X, codes, n_groups):
    p, q = X.shape
    ssb = np.zeros(q)
    ssw = np.zeros(q)
    counts = np.zeros(n_groups)
    for i in range(p):
        counts[codes[i]] += 1.0
    for j in range(q):
        sums = np.zeros(n_groups)
        total = 0.0
        for i in range(p):
            sums[codes[i]] += X[i, j]
            total += X[i, j]
        grand = total / p
        means = sums / counts
        b = 0.0
        for g in range(n_groups):
            d = means[g] - grand
            b += counts[g] * d * d
        w = 0.0
        for i in range(p):
            d = X[i, j] - means[codes[i]]
            w += d * d
        ssb[j] = b
        ssw[j] = w
    return ssb, ssw


def _anova_ss_numpy(X, codes, n_groups):
    p = X.shape[0]
    counts = np.bincount(codes, minlength=n_groups).astype(np.float64)
    onehot = np.zeros((n_groups, p))
    onehot[codes, np.arange(p)] = 1.0
    means = (onehot @ X) / counts[:, None]
    grand = X.mean(axis=0)
    ssb = (counts[:, None] * (means - grand) ** 2).sum(axis=0)
    ssw = ((X - means[codes]) ** 2).sum(axis=0)
    return ssb, ssw


# ---------------------------------------------------------------------------
# Gini split search (weighted, binary labels)
# ---------------------------------------------------------------------------


@njit
def _best_split_numba(X, y, w, idx, features):
    n = idx.shape[0]
    tot0 = 0.0
    tot1 = 0.0
    for t in range(n):
        r = idx[t]
        if y[r] == 1:
            tot1 += w[r]
        else:
            tot0 += w[r]
    best_feat = -1
    best_thr = 0.0
    best_score = -np.inf
    vals = np.empty(n)
    for fi in range(features.shape[0]):
        f = features[fi]
        for t in range(n):
            vals[t] = X[idx[t], f]
        order = np.argsort(vals, kind="mergesort")
        l0 = 0.0
        l1 = 0.0
        for t in range(n - 1):
            r = idx[order[t]]
            if y[r] == 1:
                l1 += w[r]
            else:
                l0 += w[r]
            a = vals[order[t]]
            b = vals[order[t + 1]]
            if not (a < b):
                continue
            r0 = tot0 - l0
            r1 = tot1 - l1
            wl = l0 + l1
            wr = r0 + r1
            if wl <= 0.0 or wr <= 0.0:
                continue
            score = (l0 * l0 + l1 * l1) / wl + (r0 * r0 + r1 * r1) / wr
            if score > best_score:
                best_score = score
                best_feat = f
                thr = (a + b) / 2.0
                if thr >= b:
                    thr = a
                best_thr = thr
    return best_feat, best_thr, best_score


def _best_split_numpy(X, y, w, idx, features):
    yy = y[idx]
    ww = w[idx]
    w1 = np.where(yy == 1, ww, 0.0)
    w0 = np.where(yy == 1, 0.0, ww)
    tot0 = 0.0
    tot1 = 0.0
    for v0, v1 in zip(w0, w1):
        tot0 += v0
        tot1 += v1
    best_feat, best_thr, best_score = -1, 0.0, -np.inf
    for f in features:
        vals = X[idx, f]
        order = np.argsort(vals, kind="stable")
        xs = vals[order]
        l0 = np.cumsum(w0[order])[:-1]
        l1 = np.cumsum(w1[order])[:-1]
        r0 = tot0 - l0
        r1 = tot1 - l1
        wl = l0 + l1
        wr = r0 + r1
        ok = (xs[:-1] < xs[1:]) & (wl > 0.0) & (wr > 0.0)
        if not ok.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            score = (l0 * l0 + l1 * l1) / wl + (r0 * r0 + r1 * r1) / wr
        score = np.where(ok, score, -np.inf)
        t = int(np.argmax(score))
        if score[t] > best_score:
            best_score = float(score[t])
            best_feat = int(f)
            a, b = xs[t], xs[t + 1]
            thr = (a + b) / 2.0
            best_thr = float(a if thr >= b else thr)
    return best_feat, best_thr, best_score


# ---------------------------------------------------------------------------
# Tree traversal
# ---------------------------------------------------------------------------


@njit
def _tree_leaf_values_numba(X, feature, threshold, left, right, value):
    n = X.shape[0]
    out = np.empty(n)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out


def _tree_leaf_values_numpy(X, feature, threshold, left, right, value):
    node = np.zeros(X.shape[0], dtype=np.int64)
    rows = np.arange(X.shape[0])
    active = feature[node] >= 0
    while active.any():
        cur = node[active]
        go_left = X[rows[active], feature[cur]] <= threshold[cur]
        node[active] = np.where(go_left, left[cur], right[cur])
        active = feature[node] >= 0
    return value[node]


# ---------------------------------------------------------------------------
# k nearest neighbours
# ---------------------------------------------------------------------------


@njit
def _knn_fraction_numba(X_train, y_train, X_query, k):
    m = X_query.shape[0]
    n, q = X_train.shape
    out = np.empty(m)
    d = np.empty(n)
    for i in range(m):
        for r in range(n):
            s = 0.0
            for j in range(q):
                diff = X_train[r, j] - X_query[i, j]
                s += diff * diff
            d[r] = s
        order = np.argsort(d, kind="mergesort")
        votes = 0.0
        for t in range(k):
            votes += y_train[order[t]]
        out[i] = votes / k
    return out


def _knn_fraction_numpy(X_train, y_train, X_query, k, chunk=256):
    out = np.empty(X_query.shape[0])
    q = X_train.shape[1]
    for start in range(0, X_query.shape[0], chunk):
        block = X_query[start : start + chunk]
        d = np.zeros((block.shape[0], X_train.shape[0]))
        for j in range(q):
            diff = X_train[None, :, j] - block[:, None, j]
            d += diff * diff
        nearest = np.argsort(d, axis=1, kind="stable")[:, :k]
        out[start : start + chunk] = y_train[nearest].sum(axis=1) / k
    return out


# ---------------------------------------------------------------------------
# Full-batch logistic regression with step halving
# ---------------------------------------------------------------------------


@njit
def _logistic_loss_numba(X, y, w, b, l2):
    n, q = X.shape
    total = 0.0
    for i in range(n):
        z = b
        for j in range(q):
            z += w[j] * X[i, j]
        # log(1 + e^z) - y z, evaluated without overflow
        total += max(z, 0.0) + np.log1p(np.exp(-abs(z))) - y[i] * z
    reg = 0.0
    for j in range(q):
        reg += w[j] * w[j]
    return total / n + 0.5 * l2 * reg


@njit
def _logistic_descent_numba(X, y, l2, lr, epochs, max_halvings):
    n, q = X.shape
    w = np.zeros(q)
    b = 0.0
    gw = np.empty(q)
    w_new = np.empty(q)
    history = np.empty(epochs + 1)
    loss = _logistic_loss_numba(X, y, w, b, l2)
    history[0] = loss
    count = 1
    accepted = lr
    for _ in range(epochs):
        for j in range(q):
            gw[j] = 0.0
        gb = 0.0
        for i in range(n):
            z = b
            for j in range(q):
                z += w[j] * X[i, j]
            if z >= 0:
                p = 1.0 / (1.0 + np.exp(-z))
            else:
                ez = np.exp(z)
                p = ez / (1.0 + ez)
            r = p - y[i]
            gb += r
            for j in range(q):
                gw[j] += r * X[i, j]
        for j in range(q):
            gw[j] = gw[j] / n + l2 * w[j]
        gb /= n
        step = min(lr, 2.0 * accepted)
        found = False
        b_new = b
        new_loss = loss
        for _h in range(max_halvings):
            for j in range(q):
                w_new[j] = w[j] - step * gw[j]
            b_new = b - step * gb
            new_loss = _logistic_loss_numba(X, y, w_new, b_new, l2)
            if new_loss <= loss:
                found = True
                break
            step /= 2.0
        if not found:
            history[count] = loss
            count += 1
            break
        for j in range(q):
            w[j] = w_new[j]
        b = b_new
        loss = new_loss
        accepted = step
        history[count] = loss
        count += 1
    return w, b, history[:count]


def _logistic_loss_numpy(X, y, w, b, l2):
    z = X @ w + b
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (w @ w))


def _logistic_descent_numpy(X, y, l2, lr, epochs, max_halvings):
    w = np.zeros(X.shape[1])
    b = 0.0
    loss = _logistic_loss_numpy(X, y, w, b, l2)
    history = [loss]
    accepted = lr
    for _ in range(epochs):
        z = X @ w + b
        p = np.empty_like(z)
        pos = z >= 0
        p[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
        ez = np.exp(z[~pos])
        p[~pos] = ez / (1.0 + ez)
        r = p - y
        gw = X.T @ r / X.shape[0] + l2 * w
        gb = float(r.mean())
        step = min(lr, 2.0 * accepted)
        for _h in range(max_halvings):
            w_new = w - step * gw
            b_new = b - step * gb
            new_loss = _logistic_loss_numpy(X, y, w_new, b_new, l2)
            if new_loss <= loss:
                break
            step /= 2.0
        else:
            history.append(loss)
            break
        w, b, loss, accepted = w_new, b_new, new_loss, step
        history.append(loss)
    return w, b, np.array(history)


# ---------------------------------------------------------------------------
# Per-sample online learners. ``orders`` is an (epochs, n) array of row orders
# drawn by the caller, so both paths consume identical randomness.
# ---------------------------------------------------------------------------


@njit
def _sgd_logistic_numba(X, y, w, b, lr, orders):
    n_epochs, n = orders.shape
    q = X.shape[1]
    for e in range(n_epochs):
        for t in range(n):
            r = orders[e, t]
            z = b
            for j in range(q):
                z += w[j] * X[r, j]
            if z >= 0:
                p = 1.0 / (1.0 + np.exp(-z))
            else:
                ez = np.exp(z)
                p = ez / (1.0 + ez)
            g = p - y[r]
            for j in range(q):
                w[j] -= lr * g * X[r, j]
            b -= lr * g
    return w, b


def _sgd_logistic_numpy(X, y, w, b, lr, orders):
    for order in orders:
        for r in order:
            z = b + float(X[r] @ w)
            if z >= 0:
                p = 1.0 / (1.0 + np.exp(-z))
            else:
                ez = np.exp(z)
                p = ez / (1.0 + ez)
            g = p - y[r]
            w -= lr * g * X[r]
            b -= lr * g
    return w, b


@njit
def _perceptron_numba(X, ys, w, b, orders):
    n_epochs, n = orders.shape
    q = X.shape[1]
    for e in range(n_epochs):
        for t in range(n):
            r = orders[e, t]
            z = b
            for j in range(q):
                z += w[j] * X[r, j]
            if ys[r] * z <= 0.0:
                for j in range(q):
                    w[j] += ys[r] * X[r, j]
                b += ys[r]
    return w, b


def _perceptron_numpy(X, ys, w, b, orders):
    for order in orders:
        for r in order:
            z = b + float(X[r] @ w)
            if ys[r] * z <= 0.0:
                w += ys[r] * X[r]
                b += ys[r]
    return w, b


@njit
def _passive_aggressive_numba(X, ys, w, b, C, orders):
    n_epochs, n = orders.shape
    q = X.shape[1]
    for e in range(n_epochs):
        for t in range(n):
            r = orders[e, t]
            z = b
            norm = 1.0
            for j in range(q):
                z += w[j] * X[r, j]
                norm += X[r, j] * X[r, j]
            loss = 1.0 - ys[r] * z
            if loss > 0.0:
                tau = loss / norm
                if tau > C:
                    tau = C
                for j in range(q):
                    w[j] += tau * ys[r] * X[r, j]
                b += tau * ys[r]
    return w, b


def _passive_aggressive_numpy(X, ys, w, b, C, orders):
    norms = 1.0 + (X * X).sum(axis=1)
    for order in orders:
        for r in order:
            loss = 1.0 - ys[r] * (b + float(X[r] @ w))
            if loss > 0.0:
                tau = min(C, loss / norms[r])
                w += tau * ys[r] * X[r]
                b += tau * ys[r]
    return w, b


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def anova_sums_of_squares(X, codes, n_groups):
    """Between- and within-group sums of squares for every column of ``X``."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    if numba_enabled():
        return _anova_ss_numba(X, codes, int(n_groups))
    return _anova_ss_numpy(X, codes, int(n_groups))


def best_split(X, y, w, idx, features):
    """Best Gini split of rows ``idx`` over ``features``.

    Returns ``(feature, threshold, score)``; ``feature == -1`` when every
    candidate column is constant on the node. ``score`` is the weighted sum of
    squared child class masses over child mass (larger is purer).
    """
    if numba_enabled():
        f, t, s = _best_split_numba(X, y, w, idx, features)
        return int(f), float(t), float(s)
    return _best_split_numpy(X, y, w, idx, features)


def tree_leaf_values(X, feature, threshold, left, right, value):
    X = np.ascontiguousarray(X, dtype=np.float64)
    if numba_enabled():
        return _tree_leaf_values_numba(X, feature, threshold, left, right, value)
    return _tree_leaf_values_numpy(X, feature, threshold, left, right, value)


def knn_fraction(X_train, y_train, X_query, k):
    """Fraction of class-1 labels among the ``k`` nearest training rows.

    Distance ties go to the lower training row index.
    """
    X_train = np.ascontiguousarray(X_train, dtype=np.float64)
    X_query = np.ascontiguousarray(X_query, dtype=np.float64)
    y_train = np.ascontiguousarray(y_train, dtype=np.float64)
    if numba_enabled():
        return _knn_fraction_numba(X_train, y_train, X_query, int(k))
    return _knn_fraction_numpy(X_train, y_train, X_query, int(k))


def sgd_logistic(X, y, w, b, lr, orders):
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    w = np.array(w, dtype=np.float64)
    if numba_enabled():
        w, b = _sgd_logistic_numba(X, y, w, float(b), float(lr), orders)
    else:
        w, b = _sgd_logistic_numpy(X, y, w, float(b), float(lr), orders)
    return w, float(b)


def logistic_descent(X, y, l2, lr, epochs, max_halvings=60):
    """Full-batch gradient descent on mean log-loss plus ``l2/2 * ||w||^2``.

    Starts from zero weights. Each epoch tries twice the last accepted step
    (capped at ``lr``) and halves it until the loss does not increase; if no
    step in ``max_halvings`` tries qualifies, training stops. Returns
    ``(w, b, loss_history)``.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if numba_enabled():
        w, b, h = _logistic_descent_numba(X, y, float(l2), float(lr), int(epochs), int(max_halvings))
    else:
        w, b, h = _logistic_descent_numpy(X, y, float(l2), float(lr), int(epochs), int(max_halvings))
    return w, float(b), h


def perceptron(X, ys, w, b, orders):
    X = np.ascontiguousarray(X, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    w = np.array(w, dtype=np.float64)
    if numba_enabled():
        w, b = _perceptron_numba(X, ys, w, float(b), orders)
    else:
        w, b = _perceptron_numpy(X, ys, w, float(b), orders)
    return w, float(b)


def passive_aggressive(X, ys, w, b, C, orders):
    X = np.ascontiguousarray(X, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    w = np.array(w, dtype=np.float64)
    if numba_enabled():
        w, b = _passive_aggressive_numba(X, ys, w, float(b), float(C), orders)
    else:
        w, b = _passive_aggressive_numpy(X, ys, w, float(b), float(C), orders)
    return w, float(b)
