"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when importable; otherwise, or
when the environment variable ``BLOSSOMSPIN_PURE_PYTHON`` is set to a
non-empty value other than ``0``, the numpy implementation in ``_pykernels``
is used. ``BACKEND`` names the active choice.
"""

import os

from . import _pykernels

_force_python = os.environ.get("BLOSSOMSPIN_PURE_PYTHON", "") not in ("", "0")

_impl = _pykernels
BACKEND = "python"
if not _force_python:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

bernstein_row = _impl.bernstein_row
de_casteljau = _impl.de_casteljau
subdivide = _impl.subdivide
fs_area_midpoint = _impl.fs_area_midpoint
precess_rotation = _impl.precess_rotation
precess_rk4 = _impl.precess_rk4


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
