"""Python facade over the native similarity-selection core."""

import json

try:
    from ._irtune_core import *  # noqa: F401,F403
    from . import _irtune_core as _core
except ImportError:  # test-tree layout: extension sits on PYTHONPATH
    from _irtune_core import *  # noqa: F401,F403
    import _irtune_core as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")] + ["select_report"]


def select_report(index, topics, configs, k=100, jobs=1, benchmark_id="benchmark"):
    """Run label-free selection and return the report as a dict."""
    raw = _core.select(index, topics, configs, k=k, jobs=jobs, benchmark_id=benchmark_id)
    return json.loads(raw)
