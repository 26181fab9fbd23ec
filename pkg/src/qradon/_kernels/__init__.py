"""Projection kernel dispatch: compiled extension if built, NumPy otherwise."""

from . import _py

try:
    from . import _cy as _impl

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on the build
    _impl = _py
    HAVE_COMPILED = False

forward_project = _impl.forward_project
back_project = _impl.back_project


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "numpy"
