"""Optional numba acceleration.

Set ``WSC_DISABLE_NUMBA=1`` to force the pure-numpy kernels; numba is also
skipped silently when it is not importable.
"""
import os

_disabled = os.environ.get("WSC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _disabled:
        raise ImportError
    from numba import njit
    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func
        return decorator
