"""scikit-learn style front ends.

Rows of ``X`` are points given as sequences of rationals (ints, Fractions
or strings like "3/2"); outputs stay exact, so plain lists of Fractions are
returned instead of float arrays.
"""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .context import resolve
from .exact import as_rational, parse_rational
from .positivity.chain import beta_chain, sample_region
from .positivity.signs import tits_signs
from .positivity.symbolic import region_symbolic
from .positivity.theorems import positive_element, verify_flag


def _rows(X, m: int) -> list[list[Fraction]]:
    out = []
    for r, row in enumerate(X):
        vals = [parse_rational(v) if isinstance(v, str) else as_rational(v) for v in row]
        if len(vals) != m:
            raise ValueError(f"row {r} has {len(vals)} entries, expected {m}")
        out.append(vals)
    return out


class _RegionBase(BaseEstimator):
    def __init__(self, quiver=None, type=None, word=None):
        self.quiver = quiver
        self.type = type
        self.word = word

    def _setup(self):
        if self.quiver is None and self.type is None:
            raise ValueError("set quiver or type")
        ctx = resolve(quiver=self.quiver, type=self.type, word=self.word)
        self.context_ = ctx
        self.word_ = ctx.word
        self.signs_ = tits_signs(ctx.algebra, ctx.word)
        self.n_features_in_ = len(ctx.word)


class TotalPositivityRegion(_RegionBase):
    """Membership in the region of a reduced word.

    ``fit`` ignores its data and sets up the word, the signs and (with
    ``symbolic=True``) the cleared inequalities.
    """

    def __init__(self, quiver=None, type=None, word=None, symbolic=True):
        super().__init__(quiver, type, word)
        self.symbolic = symbolic

    def fit(self, X=None, y=None):
        self._setup()
        self.region_ = region_symbolic(self.context_.system, self.word_) if self.symbolic else None
        return self

    def chains(self, X):
        check_is_fitted(self, "word_")
        return [beta_chain(self.context_.system, self.word_, row) for row in _rows(X, self.n_features_in_)]

    def predict(self, X):
        return [c.member for c in self.chains(X)]

    def decision_function(self, X):
        """min_k β_k over the computed β's (positive exactly on the region)."""
        return [min(b for b in c.betas if b is not None) for c in self.chains(X)]

    def betas(self, X):
        return [c.betas for c in self.chains(X)]

    def inequalities(self):
        check_is_fitted(self, "region_")
        if self.region_ is None:
            raise ValueError("fit with symbolic=True to get the inequalities")
        return self.region_.nontrivial()


class PositiveParametrization(_RegionBase, TransformerMixin):
    """a ∈ ℝ₊^m (lower-word coordinates) <-> b in the region.

    ``transform`` runs the forward chain, ``inverse_transform`` the β chain
    back to a^{(0)}.  ``element`` gives the root-ordered product u^±(b).
    """

    def __init__(self, quiver=None, type=None, word=None, side=1):
        super().__init__(quiver, type, word)
        self.side = side

    def fit(self, X=None, y=None):
        self._setup()
        return self

    def transform(self, X):
        check_is_fitted(self, "word_")
        return [list(sample_region(self.context_.system, self.word_, a)) for a in _rows(X, self.n_features_in_)]

    def inverse_transform(self, X):
        check_is_fitted(self, "word_")
        out = []
        for b in _rows(X, self.n_features_in_):
            chain = beta_chain(self.context_.system, self.word_, b)
            if not chain.member:
                raise ValueError(f"{[str(v) for v in b]} is not in the region ({chain.status} at β_{chain.index})")
            out.append(list(chain.a0))
        return out

    def element(self, b):
        check_is_fitted(self, "word_")
        return positive_element(self.context_.algebra, self.word_, b, self.side, self.signs_)

    def verify(self, X) -> list[bool]:
        check_is_fitted(self, "word_")
        alg = self.context_.algebra
        return [verify_flag(alg, self.word_, b, self.side) for b in _rows(X, self.n_features_in_)]
