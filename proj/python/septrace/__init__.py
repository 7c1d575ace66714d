"""Trace reconstruction for separated strings over the deletion channel."""

try:
    from ._septrace import *  # noqa: F401,F403  (installed package layout)
    from ._septrace import __doc__ as _doc
except ImportError:  # in-tree build: the module sits next to the package on sys.path
    from _septrace import *  # noqa: F401,F403
    from _septrace import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
