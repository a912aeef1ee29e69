"""Polarization-interferometry simulator for the PBS-locked two-path
interferometer with output analyzers."""

__version__ = "0.1.0"

from . import coherence, engine, jones, montecarlo, netlist, oracle, scenarios, verify

__all__ = [
    "__version__", "coherence", "engine", "jones", "montecarlo",
    "netlist", "oracle", "scenarios", "verify",
]
