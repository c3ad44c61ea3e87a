"""scikit-learn style front end for translator classification.

:class:`TranslatorClassifier` treats an initial condition ``(s0, dV0)`` as a
sample and its translator type as the label.  ``fit`` computes the boundary
data of the space (no training data is needed, the classifier is exact up to
integration error); ``predict`` integrates and classifies; ``transform``
returns the endpoint locations of each maximal solution.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DomainError, Unclassified
from .rank1 import TranslatorType, classify, default_config, solve_maximal, type_mapping
from .spaces import RankOneSpace

__all__ = ["TranslatorClassifier"]


class TranslatorClassifier(ClassifierMixin, TransformerMixin, BaseEstimator):
    """Classify profile initial conditions into translator types I-V.

    Parameters
    ----------
    kind : str
        Space family: ``sphere``, ``cp``, ``hp`` or ``cayley``.
    n : int
        Dimension parameter of the family.
    rtol, atol : float
        Integrator tolerances.
    y_max : float
        Slope magnitude treated as a vertical tangent.
    coefficient_variant : str
        Coefficient choice for the Cayley plane (``paper`` or ``rootsum``).
    on_unclassified : {"raise", "label"}
        Whether an endpoint pair outside the five types raises or is labelled
        ``"Unclassified"``.

    Attributes
    ----------
    space_ : RankOneSpace
    alpha_ : float
        Numerical domain length.
    boundary_ : BoundaryData
    classes_ : ndarray of str
        The five type labels.
    """

    def __init__(
        self,
        kind="cp",
        n=2,
        rtol=1e-7,
        atol=1e-10,
        y_max=1e4,
        coefficient_variant="paper",
        on_unclassified="raise",
    ):
        self.kind = kind
        self.n = n
        self.rtol = rtol
        self.atol = atol
        self.y_max = y_max
        self.coefficient_variant = coefficient_variant
        self.on_unclassified = on_unclassified

    def fit(self, X=None, y=None):
        """Build the space and its boundary data; ``X`` and ``y`` are ignored."""
        if self.on_unclassified not in ("raise", "label"):
            raise DomainError("on_unclassified must be 'raise' or 'label'")
        self.space_ = RankOneSpace.make(
            self.kind, self.n, coefficient_variant=self.coefficient_variant
        )
        self.boundary_ = self.space_.boundary
        self.alpha_ = self.boundary_.alpha_numeric
        self.config_ = default_config(rtol=self.rtol, atol=self.atol, y_max=self.y_max)
        self.classes_ = np.array([t.value for t in TranslatorType])
        self.type_map_ = type_mapping()
        if X is not None:
            self._validate(X)
        return self

    def _validate(self, X):
        X = check_array(X, dtype=float, ensure_min_features=2)
        if X.shape[1] != 2:
            raise DomainError("expected columns (s0, dV0)")
        if np.any(X[:, 0] <= 0) or np.any(X[:, 0] >= self.alpha_):
            raise DomainError(f"s0 must lie in (0, {self.alpha_})")
        return X

    def _solve(self, row):
        return solve_maximal(self.space_, row[0], 0.0, row[1], self.config_)

    def predict(self, X):
        """Translator type label for each row ``(s0, dV0)``."""
        check_is_fitted(self, "space_")
        X = self._validate(X)
        out = np.empty(len(X), dtype=object)
        for i, row in enumerate(X):
            tr = self._solve(row)
            try:
                out[i] = classify(tr).value
            except Unclassified:
                if self.on_unclassified == "raise":
                    raise
                out[i] = "Unclassified"
        return out

    def transform(self, X):
        """Left and right endpoint locations of each maximal solution."""
        check_is_fitted(self, "space_")
        X = self._validate(X)
        out = np.empty((len(X), 2))
        for i, row in enumerate(X):
            tr = self._solve(row)
            out[i] = (tr.left_event.location, tr.right_event.location)
        return out

    def score(self, X, y, sample_weight=None):
        """Fraction of rows whose predicted type matches ``y``."""
        pred = self.predict(X)
        y = np.asarray(y, dtype=object)
        w = np.ones(len(y)) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        return float(np.sum(w * (pred == y)) / np.sum(w))
