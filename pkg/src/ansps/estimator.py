"""Scikit-learn estimator wrapping the solver as a linear classifier."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array, check_X_y

from .data import Dataset
from .hinge import HingeProblem
from .regions import L2Ball
from .solver import SolverConfig, run


class ANSPSClassifier(BaseEstimator, ClassifierMixin):
    """Linear binary classifier trained by the adaptive-sample solver.

    Minimizes the ball-constrained regularized hinge loss over the
    training rows; the decision function is the plain inner product with
    the learned weights (no intercept).

    Parameters
    ----------
    delta : float, default=10.0
        Squared-norm regularization weight. Also sets the default
        feasible ball (squared radius ``1/delta``, or 0.1 when
        ``delta=0``).
    radius : float, optional
        Override the feasible ball radius.
    strategy : {'ansps', 'heur', 'full'}, default='ansps'
        Sample-size schedule.
    spectral : {'bb1', 'bb2', 'abb', 'abbmin', 'const'}, default='abbmin'
        Step-scale rule.
    nonmonotone : {'max', 'cca', 'mon', 'ada'}, default='ada'
        Reference-value rule for step acceptance.
    c2 : float, default=100.0
    eta : float, default=1e-4
    m : int, default=2
    r : float, default=1.1
    n0_frac : float, default=0.1
    max_iter : int, default=1000
    fev_budget : int, optional
        Scalar-product budget; unlimited when None.
    random_state : int, default=0
        Seed for the data permutation and the start point. Runs are
        deterministic for a fixed seed.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
        Learned weights.
    classes_ : ndarray of shape (2,)
        Class labels; the second one is the positive class.
    trace_ : RunTrace
        Full per-iteration record of the fit.
    n_iter_ : int
        Iterations run.
    """

    def __init__(
        self,
        delta: float = 10.0,
        radius: float | None = None,
        strategy: str = "ansps",
        spectral: str = "abbmin",
        nonmonotone: str = "ada",
        c2: float = 100.0,
        eta: float = 1e-4,
        m: int = 2,
        r: float = 1.1,
        n0_frac: float = 0.1,
        max_iter: int = 1000,
        fev_budget: int | None = None,
        random_state: int = 0,
    ):
        self.delta = delta
        self.radius = radius
        self.strategy = strategy
        self.spectral = spectral
        self.nonmonotone = nonmonotone
        self.c2 = c2
        self.eta = eta
        self.m = m
        self.r = r
        self.n0_frac = n0_frac
        self.max_iter = max_iter
        self.fev_budget = fev_budget
        self.random_state = random_state

    def fit(self, X, y):
        X, y = check_X_y(X, y, accept_sparse="csr")
        classes = np.unique(y)
        if len(classes) != 2:
            raise ValueError(f"need exactly 2 classes, got {len(classes)}")
        self.classes_ = classes
        signs = np.where(y == classes[1], 1.0, -1.0)
        dataset = Dataset(sp.csr_matrix(X, dtype=float), signs)
        region = L2Ball(self.radius) if self.radius is not None else None
        problem = HingeProblem(dataset, delta=self.delta, region=region)
        config = SolverConfig(
            strategy=self.strategy,
            spectral=self.spectral,
            nonmonotone=self.nonmonotone,
            c2=self.c2,
            eta=self.eta,
            m=self.m,
            r=self.r,
            n0_frac=self.n0_frac,
            seed=self.random_state if self.random_state is not None else 0,
            max_iterations=self.max_iter,
            fev_budget=self.fev_budget,
        )
        trace = run(problem, config)
        self.coef_ = trace.x_final
        self.trace_ = trace
        self.n_features_in_ = X.shape[1]
        self.n_iter_ = trace.final_row.k
        return self

    def decision_function(self, X):
        if not hasattr(self, "coef_"):
            raise NotFittedError("fit the classifier before predicting")
        X = check_array(X, accept_sparse="csr")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, classifier was fit with {self.n_features_in_}"
            )
        return np.asarray(X @ self.coef_).ravel()

    def predict(self, X):
        scores = self.decision_function(X)
        return self.classes_[(scores > 0).astype(int)]
