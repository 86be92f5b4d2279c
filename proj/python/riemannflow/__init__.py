try:
    from ._riemannflow import *  # noqa: F401,F403
except ImportError:  # running from a build tree where the module is top-level
    from _riemannflow import *  # noqa: F401,F403
