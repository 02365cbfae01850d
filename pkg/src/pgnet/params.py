"""Model parameters for the Poisson-growth attachment process."""

import math
from dataclasses import dataclass

from .errors import ParamError


@dataclass(frozen=True)
class ModelParams:
    """Parameters (a, b, lam) of the growth process.

    Each new node brings a Poisson(lam) number of edges whose endpoints are
    drawn proportionally to the attachment weight

        r(k) = k + a   for k >= 1,      r(0) = b.

    Valid domain: lam > 0, a >= -1, b >= 0. The plain one-parameter form
    r(k) = k + a for all k additionally needs a = b >= 0.
    """

    a: float
    b: float
    lam: float

    def __post_init__(self):
        for name in ("a", "b", "lam"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ParamError(f"{name} must be a finite number, got {v!r}")
        if self.lam <= 0:
            raise ParamError(f"lam must be positive, got {self.lam}")
        if self.a < -1:
            raise ParamError(f"a must be >= -1, got {self.a}")
        if self.b < 0:
            raise ParamError(f"b must be >= 0, got {self.b}")

    @classmethod
    def plain(cls, a, lam):
        """Plain attachment function r(k) = k + a; requires a >= 0."""
        if a < 0:
            raise ParamError(f"plain form needs a >= 0, got {a}")
        return cls(a=float(a), b=float(a), lam=float(lam))

    @property
    def is_plain(self):
        return self.a == self.b

    def weight(self, k):
        """Attachment weight r(k) of a node with degree k."""
        if k < 0:
            raise ParamError(f"degree must be >= 0, got {k}")
        return self.b if k == 0 else k + self.a
