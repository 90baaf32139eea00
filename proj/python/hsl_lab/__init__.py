"""Verification laboratory for the homogeneous singular solutions of
uniformly elliptic Hessian and Isaacs equations.

The compiled extension carries the actual operations; this package only
re-exports them. When running from a build tree the extension may sit on
sys.path as a top-level module instead of inside the package.
"""

try:
    from ._hsl import (
        __version__,
        c_delta,
        cone_lambda,
        cubic_form,
        eigenvalues,
        hessian,
        interlacing,
        invariants,
        run_check,
        run_suite,
        site_from_invariants,
        suite_names,
        w_delta,
    )
except ImportError:
    from _hsl import (
        __version__,
        c_delta,
        cone_lambda,
        cubic_form,
        eigenvalues,
        hessian,
        interlacing,
        invariants,
        run_check,
        run_suite,
        site_from_invariants,
        suite_names,
        w_delta,
    )

__all__ = [
    "__version__",
    "c_delta",
    "cone_lambda",
    "cubic_form",
    "eigenvalues",
    "hessian",
    "interlacing",
    "invariants",
    "run_check",
    "run_suite",
    "site_from_invariants",
    "suite_names",
    "w_delta",
]
