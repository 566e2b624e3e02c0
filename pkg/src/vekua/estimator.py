"""scikit-learn style wrapper: P as a transformer on Fourier data.

``transform`` solves P u = f for each f, ``inverse_transform`` applies P.
Samples are FourierData objects rather than rows of a numeric array, so the
wrapper follows the estimator conventions (constructor parameters, fit,
fitted attributes with a trailing underscore) without the array checks.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import classify_gh, classify_gs
from .coeffs import plancherel_norm
from .operator import apply
from .solve import residual, solve
from .validation import check_fourier_batch, check_operator_params


class VekuaOperator(TransformerMixin, BaseEstimator):
    """P u = X u - q u - p conj(u) with X = sum c_j d_j + sum a_j d0^(j).

    Parameters
    ----------
    torus_coeffs, su2_coeffs : sequences of exact reals ("1", "1/2√5", ...)
    q, p : exact complex constants ([re, im] pairs or strings)
    mode : "exact" or "float", passed to solve
    xi_max : truncation used by ``fit`` when classify=True
    classify : run the GH / GS classification during fit
    """

    def __init__(self, torus_coeffs=(1,), su2_coeffs=(), q=0, p=1, mode=None, xi_max=50, classify=False):
        self.torus_coeffs = torus_coeffs
        self.su2_coeffs = su2_coeffs
        self.q = q
        self.p = p
        self.mode = mode
        self.xi_max = xi_max
        self.classify = classify

    def fit(self, X=None, y=None):
        self.operator_ = check_operator_params(self.torus_coeffs, self.su2_coeffs, self.q, self.p)
        if X is not None:
            check_fourier_batch(X, self.operator_.group)
        if self.classify:
            self.gh_verdict_ = classify_gh(self.operator_, self.xi_max)
            self.gs_verdict_ = classify_gs(self.operator_, self.xi_max)
        return self

    def transform(self, X):
        """Canonical solutions u of P u = f (a list, one per input)."""
        check_is_fitted(self, "operator_")
        return [solve(self.operator_, f, self.mode) for f in check_fourier_batch(X, self.operator_.group)]

    def inverse_transform(self, X):
        check_is_fitted(self, "operator_")
        return [apply(self.operator_, u) for u in check_fourier_batch(X, self.operator_.group)]

    def score(self, X, y=None) -> float:
        """Minus the mean relative residual of P(transform(f)) - f."""
        check_is_fitted(self, "operator_")
        batch = check_fourier_batch(X, self.operator_.group)
        total = 0.0
        for f, u in zip(batch, self.transform(batch)):
            ref = f if u.exact == f.exact else f.to_float()
            total += residual(self.operator_, u, ref) / max(plancherel_norm(f), 1e-300)
        return -total / max(len(batch), 1)
