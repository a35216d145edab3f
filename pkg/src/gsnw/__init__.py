"""Schmidt-number lower bounds for two-mode states from their covariance matrix."""

__version__ = "0.1.0"
