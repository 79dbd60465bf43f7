"""Downlink UAV-relay network simulator and trajectory planner."""

try:
    # Installed layout: the extension lives inside the package.
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:
    # Plain-CMake development layout: the extension sits on sys.path.
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
