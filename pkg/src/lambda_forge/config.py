"""Run configuration: a flat key = value text file.

Example (curve backend)::

    backend = curve
    curve_a_invariants = 0, -1, 1, -10, -20
    conductor = 11
    p = 7
    lambda_g = 0
    mu_zero = true
    surjective_mod_p = true
    optimal_level_asserted = true

Table backend replaces the curve keys with ``table_path`` (relative paths
resolve against the config file) and a ``level`` key.  Threshold keys are
optional and default sensibly.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .curves import NAIVE_COUNT_LIMIT, CurveModel
from .errors import ConfigError
from .forms import CoefficientTable, FormContext, load_coefficients
from .iwasawa import S_ELL_EXPONENT_CAP

_REQUIRED_COMMON = ("backend", "p", "lambda_g", "mu_zero", "surjective_mod_p")
_BOOL_VALUES = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


@dataclass
class RunConfig:
    backend: str
    p: int
    lambda_g: int
    mu_zero: bool
    surjective_mod_p: bool
    level: int
    optimal_level_asserted: bool = True
    curve: CurveModel | None = None
    table_path: Path | None = None
    naive_count_limit: int = NAIVE_COUNT_LIMIT
    s_ell_cap: int = S_ELL_EXPONENT_CAP
    sigma_band: float = 3.0
    min_expected_hits: int = 30
    sieve_max: int = 10**8
    carayol_trial_bound: int = 10**6
    threads: int = 0
    source: Path | None = field(default=None, compare=False)

    def assertions(self) -> dict:
        """The attested hypotheses, echoed verbatim into every report."""
        return {
            "lambda_g_certified": self.lambda_g,
            "mu_zero": self.mu_zero,
            "surjective_mod_p": self.surjective_mod_p,
            "optimal_level": self.optimal_level_asserted,
            "status": "asserted by configuration, not verified by this tool",
        }


def _parse_entries(path: Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{path}:{lineno}: empty key or value")
        if key in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate key `{key}`")
        entries[key] = value
    return entries


def _get_int(entries: dict[str, str], key: str, path: Path) -> int:
    try:
        return int(entries[key])
    except ValueError:
        raise ConfigError(f"{path}: key `{key}` must be an integer, got {entries[key]!r}")


def _get_bool(entries: dict[str, str], key: str, path: Path) -> bool:
    value = entries[key].lower()
    if value not in _BOOL_VALUES:
        raise ConfigError(f"{path}: key `{key}` must be true/false, got {entries[key]!r}")
    return _BOOL_VALUES[value]


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    entries = _parse_entries(path)

    for key in _REQUIRED_COMMON:
        if key not in entries:
            raise ConfigError(f"{path}: missing config key `{key}`")

    backend = entries["backend"]
    if backend not in ("curve", "table"):
        raise ConfigError(f"{path}: backend must be 'curve' or 'table', got {backend!r}")

    curve = None
    table_path = None
    if backend == "curve":
        for key in ("curve_a_invariants", "conductor"):
            if key not in entries:
                raise ConfigError(f"{path}: missing config key `{key}`")
        try:
            coeffs = [int(c.strip()) for c in entries["curve_a_invariants"].split(",")]
        except ValueError:
            raise ConfigError(f"{path}: curve_a_invariants must be 5 integers")
        if len(coeffs) != 5:
            raise ConfigError(
                f"{path}: curve_a_invariants needs 5 entries a1,a2,a3,a4,a6, got {len(coeffs)}"
            )
        conductor = _get_int(entries, "conductor", path)
        disc = _get_int(entries, "discriminant", path) if "discriminant" in entries else 0
        try:
            curve = CurveModel(*coeffs, conductor=conductor, discriminant=disc)
        except ValueError as exc:
            raise ConfigError(f"{path}: bad curve: {exc}")
        level = _get_int(entries, "level", path) if "level" in entries else conductor
        if level != conductor:
            raise ConfigError(
                f"{path}: level {level} != conductor {conductor}; "
                "a curve-backed form lives at its conductor"
            )
    else:
        for key in ("table_path", "level"):
            if key not in entries:
                raise ConfigError(f"{path}: missing config key `{key}`")
        table_path = Path(entries["table_path"])
        if not table_path.is_absolute():
            table_path = path.parent / table_path
        level = _get_int(entries, "level", path)

    cfg = RunConfig(
        backend=backend,
        p=_get_int(entries, "p", path),
        lambda_g=_get_int(entries, "lambda_g", path),
        mu_zero=_get_bool(entries, "mu_zero", path),
        surjective_mod_p=_get_bool(entries, "surjective_mod_p", path),
        level=level,
        curve=curve,
        table_path=table_path,
        source=path,
    )
    if "optimal_level_asserted" in entries:
        cfg.optimal_level_asserted = _get_bool(entries, "optimal_level_asserted", path)
    for key in (
        "naive_count_limit",
        "s_ell_cap",
        "min_expected_hits",
        "sieve_max",
        "carayol_trial_bound",
        "threads",
    ):
        if key in entries:
            setattr(cfg, key, _get_int(entries, key, path))
    if "sigma_band" in entries:
        try:
            cfg.sigma_band = float(entries["sigma_band"])
        except ValueError:
            raise ConfigError(f"{path}: key `sigma_band` must be a number")

    known = {
        "backend", "p", "lambda_g", "mu_zero", "surjective_mod_p", "level",
        "curve_a_invariants", "conductor", "discriminant", "table_path",
        "optimal_level_asserted", "naive_count_limit", "s_ell_cap", "sigma_band",
        "min_expected_hits", "sieve_max", "carayol_trial_bound", "threads",
    }
    unknown = set(entries) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")
    return cfg


def build_context(cfg: RunConfig) -> FormContext:
    """Construct the immutable FormContext a run works against."""
    backend: CurveModel | CoefficientTable
    if cfg.backend == "curve":
        assert cfg.curve is not None
        backend = cfg.curve
    else:
        assert cfg.table_path is not None
        if not cfg.table_path.is_file():
            raise ConfigError(f"coefficient table not found: {cfg.table_path}")
        backend = load_coefficients(cfg.table_path, cfg.level)
    return FormContext(
        level=cfg.level,
        p=cfg.p,
        lambda_g=cfg.lambda_g,
        mu_zero=cfg.mu_zero,
        surjective_mod_p=cfg.surjective_mod_p,
        backend=backend,
        optimal_level_asserted=cfg.optimal_level_asserted,
        naive_limit=cfg.naive_count_limit,
    )
