"""Capacities of mixed unitary channels generated by projective group
representations.

The heavy lifting lives in the compiled extension ``_covacap``; this package
wraps it with dict-in / dict-out conveniences.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

try:
    from . import _covacap as _core  # packaged layout (installed wheel)
except ImportError:  # pragma: no cover - build-tree layout
    import _covacap as _core

CovacapError = _core.CovacapError

__version__ = _core.__version__
__all__ = [
    "CovacapError",
    "capacity",
    "describe",
    "majorizes",
    "qubit_capacity_from_lambdas",
    "theorem_capacity",
    "verify",
]


def _as_config_text(config: dict[str, Any] | str | Path) -> str:
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, Path):
        return Path(config).read_text()
    text = str(config)
    if text.lstrip().startswith("{"):
        return text
    return Path(text).read_text()


def _run(command: str, config: dict[str, Any] | str | Path, level: int = 1):
    report_json, exit_code = _core.run_command(
        command, _as_config_text(config), level
    )
    return json.loads(report_json), exit_code


def describe(config: dict[str, Any] | str | Path) -> tuple[dict, int]:
    """Group, representation and subgroup facts for a channel config."""
    return _run("describe", config)


def capacity(config: dict[str, Any] | str | Path) -> tuple[dict, int]:
    """Closed-form capacity with numerical cross-check.

    Exit code 0 means the closed form applies and the optimizer agrees;
    2 means the hypotheses fail and only bounds are reported.
    """
    return _run("capacity", config)


def verify(config: dict[str, Any] | str | Path, level: int = 1) -> tuple[dict, int]:
    """Sampling oracles for the majorization claims (level 2 adds tensor
    extensions, products, weak additivity and the twirl identity)."""
    return _run("verify", config, level)


def theorem_capacity(n: int, p: list[str], log_base: float = 2.0):
    """Closed-form (entropy_p, capacity) from exact "num/den" coset weights."""
    return _core.theorem_capacity(n, p, log_base)


def qubit_capacity_from_lambdas(
    lambda_x: float, lambda_y: float, lambda_z: float, log_base: float = 2.0
) -> float:
    """Qubit capacity from the three signed channel eigenvalues."""
    return _core.qubit_capacity_from_lambdas(lambda_x, lambda_y, lambda_z, log_base)


def majorizes(mu: list[float], nu: list[float], tol: float = 1e-9) -> bool:
    """Does mu majorize nu?"""
    return _core.majorizes(mu, nu, tol)
