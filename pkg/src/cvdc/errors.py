"""Exception and warning types shared across the package."""


class UnphysicalStateError(ValueError):
    """Covariance matrix violates the uncertainty relation (or is malformed)."""


class TriangleError(ValueError):
    """Local-variance triple violates the pure-state triangle inequality."""


class SingleQuadratureRegimeError(ValueError):
    """Encoding budget too small for two-quadrature encoding.

    Carries the offending budget ``n_s`` and the ``boundary`` it must exceed,
    so a caller can decide how much to raise the photon budget.
    """

    def __init__(self, n_s: float, boundary: float):
        self.n_s = n_s
        self.boundary = boundary
        super().__init__(
            f"encoding budget n_s={n_s:.6g} does not exceed the "
            f"single-quadrature boundary {boundary:.6g}; two-quadrature "
            "encoding is not possible for this channel"
        )


class SqueezeBracketError(RuntimeError):
    """Variance-product minimizer hit the search bracket boundary."""


class UnprovenRegimeWarning(UserWarning):
    """State lies outside the hypotheses of the monogamy proof."""
