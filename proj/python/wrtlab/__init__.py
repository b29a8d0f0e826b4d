"""Weighted recursive trees, preferential attachment trees and their limits."""

import json

from ._core import *  # noqa: F401,F403
from ._core import _run_acceptance, _run_experiment, build_id

__version__ = "0.1.0"


def run_experiment(config):
    """Run an experiment from a config dict and return the summary dict."""
    return json.loads(_run_experiment(json.dumps(config)))


def run_acceptance(level="fast", only=(), seed=20190611):
    """Run acceptance criteria and return the report dict."""
    return json.loads(_run_acceptance(level, list(only), seed))
