"""Phased-MIMO radar beampattern and SINR analysis toolkit."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_experiment_json  # noqa: F401


def run_experiment(config, out_dir):
    """Run an experiment from a config dict or JSON string.

    Returns the list of CSV files written to ``out_dir``.
    """
    if isinstance(config, dict):
        config = _json.dumps(config)
    return run_experiment_json(config, str(out_dir))
