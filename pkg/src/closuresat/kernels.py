"""Backend selection for the closure kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module. Set ``CLOSURESAT_BACKEND=python`` to force the fallback.
"""

import importlib
import os

_BACKENDS = {"compiled": "closuresat._kernels", "python": "closuresat._pykernels"}


def load(name: str):
    """Import a backend module by name (``"compiled"`` or ``"python"``)."""
    try:
        return importlib.import_module(_BACKENDS[name])
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None


def available() -> list[str]:
    names = []
    for name in _BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _default():
    forced = os.environ.get("CLOSURESAT_BACKEND", "").strip().lower()
    if forced and forced != "auto":
        return load(forced)
    try:
        return load("compiled")
    except ImportError:
        return load("python")


active = _default()
BACKEND = active.BACKEND


def use(name: str) -> str:
    """Switch the process-wide backend; returns the previous backend name."""
    global active, BACKEND
    previous = BACKEND
    active = _default() if name == "auto" else load(name)
    BACKEND = active.BACKEND
    return previous
