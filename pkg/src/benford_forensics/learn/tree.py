from dataclasses import dataclass

import numpy as np

LEAF = -1
# gains closer than this count as ties and fall back to index order
_TIE_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class TreeModel:
    """CART classifier stored as flat node arrays.

    Internal node i sends ``x[feature[i]] <= threshold[i]`` to ``left[i]`` and
    everything else to ``right[i]``. Leaves have ``feature == -1`` and carry
    their class in ``value``.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    n_classes: int
    n_features: int
    criterion: str = "gini"

    kind = "tree"

    @property
    def n_nodes(self):
        return len(self.feature)

    def depth(self, node=0):
        if self.feature[node] == LEAF:
            return 0
        return 1 + max(self.depth(self.left[node]), self.depth(self.right[node]))

    def apply(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.empty(len(X), dtype=np.int64)
        for i, x in enumerate(X):
            node = 0
            while self.feature[node] != LEAF:
                node = self.left[node] if x[self.feature[node]] <= self.threshold[node] else self.right[node]
            out[i] = node
        return out

    def predict(self, X):
        return self.value[self.apply(X)]

    def predict_proba(self, X):
        pred = self.predict(X)
        out = np.zeros((len(pred), self.n_classes))
        out[np.arange(len(pred)), pred] = 1.0
        return out


def gini(counts):
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return 1.0 - float(np.dot(p, p))


def _best_split(X, y, n_classes):
    """Lowest weighted child Gini over all midpoint thresholds.

    Returns (feature, threshold) or None when every feature is constant.
    """
    n, n_feat = X.shape
    best = None
    best_impurity = np.inf
    for f in range(n_feat):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        onehot = np.zeros((n, n_classes))
        onehot[np.arange(n), y[order]] = 1.0
        left_counts = np.cumsum(onehot, axis=0)[:-1]   # row i: split after position i
        right_counts = onehot.sum(axis=0) - left_counts
        boundaries = np.flatnonzero(xs[1:] > xs[:-1])
        if boundaries.size == 0:
            continue
        lc = left_counts[boundaries]
        rc = right_counts[boundaries]
        nl = lc.sum(axis=1)
        nr = rc.sum(axis=1)
        gl = 1.0 - ((lc / nl[:, None]) ** 2).sum(axis=1)
        gr = 1.0 - ((rc / nr[:, None]) ** 2).sum(axis=1)
        weighted = (nl * gl + nr * gr) / n
        i = int(np.argmin(weighted))  # first minimum = lowest threshold
        if weighted[i] < best_impurity - _TIE_EPS:
            best_impurity = weighted[i]
            b = boundaries[i]
            threshold = 0.5 * (xs[b] + xs[b + 1])
            # the midpoint of two adjacent doubles can round onto the upper one
            if not xs[b] <= threshold < xs[b + 1]:
                threshold = xs[b]
            best = (f, float(threshold))
    return best


def train_decision_tree(train, max_depth=None, min_leaf=1):
    """Greedy CART on Gini impurity.

    Splits are taken even when they do not lower impurity (this is what lets
    XOR-like data be separated); growth stops at pure nodes, at nodes whose
    features are all constant, or at ``max_depth``. Majority-class ties at a
    leaf go to the lowest class index.
    """
    X, y = train.X, train.y
    n_classes = max(train.n_classes, int(y.max()) + 1 if len(y) else 0)
    feature, threshold, left, right, value = [], [], [], [], []

    def new_node():
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(0)
        return len(feature) - 1

    root = new_node()
    stack = [(root, np.arange(len(y)), 0)]
    while stack:
        node, idx, depth = stack.pop()
        counts = np.bincount(y[idx], minlength=n_classes)
        value[node] = int(np.argmax(counts))
        if np.count_nonzero(counts) <= 1 or (max_depth is not None and depth >= max_depth):
            continue
        split = _best_split(X[idx], y[idx], n_classes)
        if split is None:
            continue
        f, t = split
        go_left = X[idx, f] <= t
        if go_left.sum() < min_leaf or (~go_left).sum() < min_leaf:
            continue
        feature[node], threshold[node] = f, t
        left[node] = new_node()
        right[node] = new_node()
        # right pushed first so the left subtree is numbered first
        stack.append((right[node], idx[~go_left], depth + 1))
        stack.append((left[node], idx[go_left], depth + 1))

    return TreeModel(np.array(feature), np.array(threshold), np.array(left),
                     np.array(right), np.array(value), n_classes, X.shape[1])
