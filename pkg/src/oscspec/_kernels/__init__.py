"""Hot numeric kernels: compiled extension when available, numpy fallback otherwise.

Set OSCSPEC_PURE_KERNELS=1 to force the pure-Python implementation.
"""

import os

if os.environ.get("OSCSPEC_PURE_KERNELS"):
    from . import _pykernels as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _cykernels as _impl

        IMPLEMENTATION = "cython"
    except ImportError:
        from . import _pykernels as _impl

        IMPLEMENTATION = "python"

numerov_count = _impl.numerov_count
numerov_forward = _impl.numerov_forward
numerov_backward = _impl.numerov_backward
continue_sqrt = _impl.continue_sqrt
