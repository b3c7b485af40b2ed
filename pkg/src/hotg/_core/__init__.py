"""Hot kernels: term representation and the rewriting inner loops.

The compiled extension ``_cterms`` is used when it was built and importable;
otherwise the pure-Python ``_pyterms`` takes over.  Set ``HOTG_PURE_PYTHON=1``
to force the fallback.
"""

import os

from . import _pyterms

_NAMES = (
    "BACKEND",
    "Type", "Prop", "Ind", "Arrow", "TVar",
    "Term", "Var", "Const", "Ref", "App", "Lam", "Imp", "All",
    "T_PROP", "T_IND", "T_ARROW", "T_TVAR",
    "VAR", "CONST", "REF", "APP", "LAM", "IMP", "ALL",
    "lift", "subst", "occurs", "type_inst", "term_inst",
    "beta_nf", "eta_contract", "nf", "size",
)


def _load_compiled():
    if os.environ.get("HOTG_PURE_PYTHON"):
        return None
    try:
        from . import _cterms
    except ImportError:
        return None
    return _cterms


compiled = _load_compiled()
backend = compiled if compiled is not None else _pyterms

globals().update({name: getattr(backend, name) for name in _NAMES})

__all__ = list(_NAMES) + ["backend", "compiled"]
