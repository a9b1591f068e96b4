"""Kernel backend selection.

``SPECSHARE_BACKEND`` may be ``auto`` (default: compiled if importable),
``compiled`` (fail if the extension is missing) or ``python``.
"""
import os

from . import _pykernels

ENV_VAR = "SPECSHARE_BACKEND"


def _compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


def load(choice=None):
    choice = (choice or os.environ.get(ENV_VAR, "auto")).lower()
    if choice == "python":
        return "python", _pykernels
    if choice not in ("auto", "compiled"):
        raise ValueError(f"unknown kernel backend {choice!r}")
    mod = _compiled()
    if mod is None:
        if choice == "compiled":
            raise ImportError("compiled kernels requested but specshare.mc_oracle._ckernels is not built")
        return "python", _pykernels
    return "compiled", mod


def available():
    names = ["python"]
    if _compiled() is not None:
        names.insert(0, "compiled")
    return names


BACKEND, kernels = load()
