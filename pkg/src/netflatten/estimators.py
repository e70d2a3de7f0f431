"""scikit-learn style wrappers.

The estimators accept a :class:`~netflatten.graph.Graph`, a list of node
pairs or an ``(m, 2)`` edge array, a square adjacency matrix (dense or scipy
sparse), or a networkx graph with integer nodes, so they slot into pipelines
and ``clone``/``get_params`` work as usual. A 2x2 ndarray is read as an
adjacency matrix.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import centrality
from .curve import DistanceDistribution, GammaParams, fit_gamma, fit_gamma_moments, gamma_pdf
from .graph import Graph, GraphError, from_edge_list, isolate_nodes
from .isolation import scenario1, scenario2


def check_graph(X) -> Graph:
    """Coerce supported graph inputs to a :class:`Graph`."""
    if isinstance(X, Graph):
        return X
    if hasattr(X, "number_of_nodes") and hasattr(X, "edges"):
        n = X.number_of_nodes()
        if set(X.nodes()) != set(range(n)):
            raise GraphError("networkx input needs integer nodes 0..n-1")
        edges = [(u, v) for u, v in X.edges()]
        return from_edge_list(edges, n=n) if edges else Graph(n, [[] for _ in range(n)])
    if sparse.issparse(X):
        A = sparse.coo_matrix(X)
        if A.shape[0] != A.shape[1]:
            raise GraphError(f"adjacency matrix must be square, got {A.shape}")
        return _from_pairs(zip(A.row, A.col), A.shape[0])
    # a plain list of pairs is always an edge list, even when it happens to be 2x2
    pair_list = isinstance(X, (list, tuple)) and all(len(p) == 2 for p in X)
    X = check_array(X, dtype=None, ensure_min_samples=1)
    if X.shape[1] == 2 and (pair_list or X.shape[0] != 2):
        return from_edge_list(X.astype(np.int64))
    if X.shape[0] == X.shape[1]:
        rows, cols = np.nonzero(X)
        return _from_pairs(zip(rows, cols), X.shape[0])
    raise GraphError(f"cannot interpret array of shape {X.shape} as a graph")


def _from_pairs(pairs, n: int) -> Graph:
    pairs = [(int(a), int(b)) for a, b in pairs if a != b]
    if not pairs:
        return Graph(n, [[] for _ in range(n)])
    return from_edge_list(pairs, n=n)


class GammaCurveFit(BaseEstimator):
    """Method-of-moments Gamma fit.

    ``fit`` takes either a :class:`DistanceDistribution` (its source shell is
    dropped) or a 1-D sample of positive values with optional weights.
    """

    def fit(self, X, y=None, sample_weight=None):
        if isinstance(X, DistanceDistribution):
            params = fit_gamma(X)
        else:
            x = check_array(X, ensure_2d=False, dtype=float).ravel()
            params = fit_gamma_moments(x, sample_weight)
        self.params_ = params
        self.k_ = params.k
        self.theta_ = params.theta
        return self

    def pdf(self, X) -> np.ndarray:
        check_is_fitted(self, "params_")
        x = check_array(X, ensure_2d=False, dtype=float).ravel()
        return np.array([gamma_pdf(v, self.params_) for v in x])

    def score_samples(self, X) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(X))


class CentralityRanker(TransformerMixin, BaseEstimator):
    def __init__(self, measure="degree", kappa=centrality.DEFAULT_KAPPA,
                 damping=centrality.DEFAULT_DAMPING, top=None):
        self.measure = measure
        self.kappa = kappa
        self.damping = damping
        self.top = top

    def _score(self, X) -> centrality.CentralityScores:
        return centrality.compute(check_graph(X), self.measure, self.kappa, self.damping)

    def fit(self, X, y=None):
        self.scores_ = self._score(X)
        self.ranking_ = centrality.ranking(self.scores_)
        self.top_ = (
            centrality.rank_top(self.scores_, self.top) if self.top else self.ranking_.tolist()
        )
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "scores_")
        return self._score(X).scores


class TargetedIsolation(TransformerMixin, BaseEstimator):
    """Pick isolation targets on ``fit``; cut their links on ``transform``.

    With ``threshold`` set, nodes are added until the curve peak drops to that
    fraction of its intact value; otherwise the top ``fraction`` are taken.
    """

    def __init__(self, measure="degree", fraction=0.05, threshold=None, trials=None,
                 recompute=False, kappa=centrality.DEFAULT_KAPPA,
                 damping=centrality.DEFAULT_DAMPING, random_state=None):
        self.measure = measure
        self.fraction = fraction
        self.threshold = threshold
        self.trials = trials
        self.recompute = recompute
        self.kappa = kappa
        self.damping = damping
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        kw = dict(recompute=self.recompute, kappa=self.kappa, damping=self.damping)
        if self.threshold is not None:
            rep = scenario2(g, self.measure, self.threshold, self.trials, self.random_state, **kw)
        else:
            rep = scenario1(g, self.measure, self.fraction, self.trials, self.random_state, **kw)
        self.n_nodes_ = g.n
        self.report_ = rep
        self.targets_ = list(rep.plan.targets)
        self.skipped_ = list(rep.plan.skipped)
        self.peak_drop_ = rep.peak_drop
        self.gamma_before_: GammaParams | None = rep.gamma_before
        self.gamma_after_: GammaParams | None = rep.gamma_after
        return self

    def transform(self, X) -> Graph:
        check_is_fitted(self, "targets_")
        g = check_graph(X)
        if g.n != self.n_nodes_:
            raise GraphError(f"fitted on {self.n_nodes_} nodes, got {g.n}")
        return isolate_nodes(g, self.targets_) if self.targets_ else g
