from __future__ import annotations

import numpy as np

from ..preprocess import STREAM_MODEL, make_rng
from .base import PROBABILITY, Estimator, sigmoid


class MLP(Estimator):
    """One hidden ReLU layer, sigmoid output, log-loss, Adam on minibatches."""

    score_kind = PROBABILITY

    def __init__(
        self,
        seed=0,
        hidden_units=100,
        learning_rate=1e-3,
        epochs=200,
        batch_size=32,
        l2=1e-4,
    ):
        super().__init__(
            seed,
            hidden_units=hidden_units,
            learning_rate=learning_rate,
            epochs=epochs,
            batch_size=batch_size,
            l2=l2,
        )

    def _fit(self, X, y):
        rng = make_rng(self.seed, STREAM_MODEL)
        n, q = X.shape
        h = int(self.hidden_units)
        params = [
            rng.normal(0.0, np.sqrt(2.0 / max(q, 1)), size=(q, h)),
            np.zeros(h),
            rng.normal(0.0, np.sqrt(1.0 / h), size=h),
            np.zeros(1),
        ]
        m = [np.zeros_like(p) for p in params]
        v = [np.zeros_like(p) for p in params]
        beta1, beta2, eps = 0.9, 0.999, 1e-8
        yf = y.astype(np.float64)
        step = 0
        bs = int(self.batch_size)
        for _ in range(int(self.epochs)):
            order = rng.permutation(n)
            for start in range(0, n, bs):
                rows = order[start : start + bs]
                Xb, yb = X[rows], yf[rows]
                W1, b1, w2, b2 = params
                pre = Xb @ W1 + b1
                hid = np.maximum(pre, 0.0)
                out = sigmoid(hid @ w2 + b2[0])
                d_out = (out - yb) / rows.size
                g_w2 = hid.T @ d_out + self.l2 * w2
                g_b2 = np.array([d_out.sum()])
                d_hid = np.outer(d_out, w2) * (pre > 0)
                g_W1 = Xb.T @ d_hid + self.l2 * W1
                g_b1 = d_hid.sum(axis=0)
                step += 1
                for i, g in enumerate((g_W1, g_b1, g_w2, g_b2)):
                    m[i] = beta1 * m[i] + (1 - beta1) * g
                    v[i] = beta2 * v[i] + (1 - beta2) * g * g
                    m_hat = m[i] / (1 - beta1**step)
                    v_hat = v[i] / (1 - beta2**step)
                    params[i] = params[i] - self.learning_rate * m_hat / (np.sqrt(v_hat) + eps)
        self.W1_, self.b1_, self.w2_, self.b2_ = params

    def decision_function(self, X):
        X = self._check(X)
        hid = np.maximum(X @ self.W1_ + self.b1_, 0.0)
        return sigmoid(hid @ self.w2_ + self.b2_[0])
