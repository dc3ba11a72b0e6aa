"""Energy-time optimal trajectory planning for wheeled mobile robots.

Thin wrapper re-exporting the compiled core.  The extension lives inside
the package in an installed wheel; in a plain CMake build it sits on
PYTHONPATH as a top-level module, so fall back to that.
"""

try:
    from ._etoc import *  # noqa: F401,F403
    from . import _etoc as _core
except ImportError:  # pragma: no cover - CMake build tree layout
    from _etoc import *  # noqa: F401,F403
    import _etoc as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "1.0.0"
