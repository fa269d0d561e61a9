"""Run configuration loader for the CLI.

Config files are flat ``key = value`` text with dotted section prefixes::

    # reference device
    qubit.e_c_ghz = 2.5
    qubit.e_j_ghz = 9.0
    qubit.e_l_ghz = 0.52
    qubit.flux_phi = pi

Files ending in ``.yaml``/``.yml`` may use nested mappings instead; they are flattened to the
same dotted keys and validated identically.
"""

import logging
import math
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union

import yaml

from ..models.circuit import FullCircuitModel
from ..models.noise import NoiseSpec
from ..models.qubit import LAMBDA_PRESETS, QubitSpec
from ..models.spectrum import SolverSettings
from ..oracle.circuit import MAX_ORACLE_CHARGE, MAX_ORACLE_N, circuit_model
from ..physics.params import derive_shared_scales
from ..utils.export import flatten_dict

logger = logging.getLogger(__name__)

ENV_LOG_LEVEL = "FLUXOPT_LOG_LEVEL"
ENV_JOBS = "FLUXOPT_JOBS"

DEFAULT_DERIVE_N_VALUES = [2, 5, 10, 20, 43, 68, 100]
DEFAULT_ORACLE_N = 2
DEFAULT_ORACLE_N_MAX = 8
DEFAULT_ORACLE_SCAN_POINTS = 41
OUTPUT_FORMATS = ("csv", "json")


class ConfigError(Exception):
    """Raised when a run configuration cannot be parsed or validated."""

    def __init__(
        self,
        message: str,
        path: Optional[Union[str, Path]] = None,
        line: Optional[int] = None,
        key: Optional[str] = None,
    ):
        self.message = message
        self.path = str(path) if path is not None else None
        self.line = line
        self.key = key
        super().__init__(self._render())

    def _render(self) -> str:
        location = self.path or "<config>"
        if self.line is not None:
            location = f"{location}:{self.line}"
        if self.key:
            return f"{location}: {self.key}: {self.message}"
        return f"{location}: {self.message}"


def _parse_float(raw: Any) -> float:
    if isinstance(raw, bool):
        raise ValueError(f"expected a number, got {raw!r}")
    value = float(raw)
    if math.isnan(value):
        raise ValueError("NaN is not allowed")
    return value


def _parse_int(raw: Any) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"expected an integer, got {raw!r}")
    if isinstance(raw, float):
        if not raw.is_integer():
            raise ValueError(f"expected an integer, got {raw!r}")
        return int(raw)
    return int(str(raw).strip())


def _parse_phase(raw: Any) -> float:
    """Radians, or a multiple of pi written as ``pi``, ``-pi``, ``0.5*pi`` or ``pi/2``."""
    text = str(raw).strip().lower().replace(" ", "")
    if "pi" not in text:
        return _parse_float(text)
    if text in ("pi", "+pi"):
        return math.pi
    if text == "-pi":
        return -math.pi
    if text.endswith("*pi"):
        return _parse_float(text[: -len("*pi")]) * math.pi
    if text.startswith("pi/"):
        return math.pi / _parse_float(text[len("pi/") :])
    raise ValueError(f"unrecognized phase {raw!r}")


def _parse_lambda(raw: Any) -> float:
    text = str(raw).strip().lower()
    if text in LAMBDA_PRESETS:
        return LAMBDA_PRESETS[text]
    try:
        return _parse_float(text)
    except ValueError:
        presets = ", ".join(sorted(LAMBDA_PRESETS))
        raise ValueError(f"expected a number or one of {presets}, got {raw!r}") from None


def _parse_format(raw: Any) -> str:
    text = str(raw).strip().lower()
    if text not in OUTPUT_FORMATS:
        raise ValueError(f"expected one of {', '.join(OUTPUT_FORMATS)}, got {raw!r}")
    return text


def _parse_n_values(raw: Any) -> List[int]:
    values = [_parse_int(part) for part in str(raw).split(",") if part.strip()]
    if not values:
        raise ValueError("expected a comma-separated list of junction counts")
    return values


def _parse_path(raw: Any) -> str:
    text = str(raw).strip()
    if not text:
        raise ValueError("path must not be empty")
    return text


KEY_PARSERS: Dict[str, Callable[[Any], Any]] = {
    "qubit.e_c_ghz": _parse_float,
    "qubit.e_j_ghz": _parse_float,
    "qubit.e_l_ghz": _parse_float,
    "qubit.flux_phi": _parse_phase,
    "qubit.lambda": _parse_lambda,
    "qubit.cd_ratio": _parse_float,
    "noise.a_low_e": _parse_float,
    "noise.a_high_e_per_sqrthz": _parse_float,
    "noise.f_ref_ghz": _parse_float,
    "noise.dephasing_factor": _parse_float,
    "noise.emission_factor": _parse_float,
    "sweep.n_min": _parse_int,
    "sweep.n_max": _parse_int,
    "sweep.jobs": _parse_int,
    "solver.points_per_period": _parse_int,
    "solver.theta_max": _parse_float,
    "solver.tolerance": _parse_float,
    "solver.max_refinements": _parse_int,
    "solver.n_levels": _parse_int,
    "output.path": _parse_path,
    "output.format": _parse_format,
    "derive.n_values": _parse_n_values,
    "oracle.n": _parse_int,
    "oracle.e_ja_ghz": _parse_float,
    "oracle.e_ca_ghz": _parse_float,
    "oracle.e_jb_ghz": _parse_float,
    "oracle.e_cb_ghz": _parse_float,
    "oracle.cd_a": _parse_float,
    "oracle.cd_b": _parse_float,
    "oracle.n_max": _parse_int,
    "oracle.scan_points": _parse_int,
}

# Dataclass field -> config key, for attributing validation errors
QUBIT_FIELDS = {
    "e_c": "qubit.e_c_ghz",
    "e_j": "qubit.e_j_ghz",
    "e_l": "qubit.e_l_ghz",
    "flux_phi": "qubit.flux_phi",
    "lam": "qubit.lambda",
    "cd_ratio": "qubit.cd_ratio",
}
NOISE_FIELDS = {
    "a_low": "noise.a_low_e",
    "a_high": "noise.a_high_e_per_sqrthz",
    "f_ref": "noise.f_ref_ghz",
    "cd_ratio": "qubit.cd_ratio",
    "dephasing_factor": "noise.dephasing_factor",
    "emission_factor": "noise.emission_factor",
}
SOLVER_FIELDS = {
    "points_per_period": "solver.points_per_period",
    "theta_max": "solver.theta_max",
    "tolerance": "solver.tolerance",
    "max_refinements": "solver.max_refinements",
    "n_levels": "solver.n_levels",
}
REQUIRED_QUBIT_KEYS = ("qubit.e_c_ghz", "qubit.e_j_ghz", "qubit.e_l_ghz")


class RunConfig:
    """Run configuration: qubit, noise, sweep, solver, output, derive and oracle settings."""

    def __init__(self) -> None:
        """Initialize an empty configuration; every section falls back to its defaults."""
        self.path: Optional[str] = None
        self.values: Dict[str, Any] = {}
        self.lines: Dict[str, Optional[int]] = {}
        self.sources: Dict[str, str] = {}

    @classmethod
    def load(cls, config_file: Union[str, Path]) -> "RunConfig":
        """Load configuration from a file, then apply environment overrides.

        Priority (highest to lowest):
        1. Explicit overrides (command-line flags, applied by the caller)
        2. Environment variables
        3. Config file
        4. Defaults

        Raises:
            ConfigError: If the file is missing, malformed or fails validation
        """
        config = cls()
        path = Path(config_file)
        if not path.is_file():
            raise ConfigError("config file not found", path=path)

        config.path = str(path)
        config._load_from_file(path)
        config._load_from_env()
        config.validate()

        logger.info(f"Loaded configuration from {path} ({len(config.values)} keys)")
        return config

    def _load_from_file(self, config_path: Path) -> None:
        if config_path.suffix.lower() in (".yaml", ".yml"):
            self._load_yaml(config_path)
        else:
            self._load_flat(config_path)

    def _load_flat(self, config_path: Path) -> None:
        with open(config_path, "r", encoding="utf-8") as f:
            for number, raw_line in enumerate(f, start=1):
                line = raw_line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"expected 'key = value', got {line!r}", path=config_path, line=number)
                key, value = (part.strip() for part in line.split("=", 1))
                if key in self.values:
                    raise ConfigError(
                        f"duplicate key (first set on line {self.lines[key]})", path=config_path, line=number, key=key
                    )
                self.set(key, value, source=str(config_path), line=number)

    def _load_yaml(self, config_path: Path) -> None:
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ConfigError(f"invalid YAML: {e}", path=config_path, line=line) from e

        if data is None:
            return
        if not isinstance(data, dict):
            raise ConfigError("top level must be a mapping", path=config_path)

        for key, value in flatten_dict(data).items():
            self.set(key, value, source=str(config_path))

    def _load_from_env(self) -> None:
        """Load configuration from environment variables."""
        jobs = os.getenv(ENV_JOBS)
        if jobs:
            self.set("sweep.jobs", jobs, source=f"${ENV_JOBS}")

    def set(self, key: str, raw: Any, source: str = "<command line>", line: Optional[int] = None) -> None:
        """Parse and store one value under its dotted key.

        Raises:
            ConfigError: If the key is unknown or the value does not parse
        """
        parser = KEY_PARSERS.get(key)
        if parser is None:
            raise ConfigError("unknown key", path=source, line=line, key=key)
        try:
            value = parser(raw)
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e) or f"invalid value {raw!r}", path=source, line=line, key=key) from None

        self.values[key] = value
        self.lines[key] = line
        self.sources[key] = source

    def get(self, key: str, default: Any = None) -> Any:
        """Stored value for a dotted key, or the default."""
        return self.values.get(key, default)

    def error(self, key: str, message: str) -> ConfigError:
        """ConfigError attributed to where a key was set."""
        return ConfigError(message, path=self.sources.get(key, self.path), line=self.lines.get(key), key=key)

    def _build(self, factory: Type[Any], fields: Dict[str, str], **kwargs: Any) -> Any:
        try:
            return factory(**kwargs)
        except ValueError as e:
            message = str(e)
            field = message.split(" ", 1)[0]
            key = fields.get(field, next(iter(fields.values())))
            raise self.error(key, message) from None

    def qubit_spec(self) -> QubitSpec:
        """Build the QubitSpec.

        Raises:
            ConfigError: If a required energy is missing or a value is out of range
        """
        for key in REQUIRED_QUBIT_KEYS:
            if key not in self.values:
                raise ConfigError("required key missing", path=self.path, key=key)

        kwargs: Dict[str, Any] = {
            "e_c": self.values["qubit.e_c_ghz"],
            "e_j": self.values["qubit.e_j_ghz"],
            "e_l": self.values["qubit.e_l_ghz"],
        }
        for field, key in (("flux_phi", "qubit.flux_phi"), ("lam", "qubit.lambda"), ("cd_ratio", "qubit.cd_ratio")):
            if key in self.values:
                kwargs[field] = self.values[key]
        return self._build(QubitSpec, QUBIT_FIELDS, **kwargs)

    def noise_spec(self) -> NoiseSpec:
        """Build the NoiseSpec; cd_ratio is taken from the qubit section."""
        kwargs: Dict[str, Any] = {}
        for field, key in (
            ("a_low", "noise.a_low_e"),
            ("a_high", "noise.a_high_e_per_sqrthz"),
            ("f_ref", "noise.f_ref_ghz"),
            ("cd_ratio", "qubit.cd_ratio"),
            ("dephasing_factor", "noise.dephasing_factor"),
            ("emission_factor", "noise.emission_factor"),
        ):
            if key in self.values:
                kwargs[field] = self.values[key]
        return self._build(NoiseSpec, NOISE_FIELDS, **kwargs)

    def solver_settings(self) -> SolverSettings:
        """Build SolverSettings from any solver.* overrides."""
        kwargs = {field: self.values[key] for field, key in SOLVER_FIELDS.items() if key in self.values}
        return self._build(SolverSettings, SOLVER_FIELDS, **kwargs)

    @property
    def n_min(self) -> Optional[int]:
        return self.get("sweep.n_min")

    @property
    def n_max(self) -> Optional[int]:
        return self.get("sweep.n_max")

    @property
    def jobs(self) -> int:
        return self.get("sweep.jobs", 1)

    @property
    def output_path(self) -> Optional[str]:
        return self.get("output.path")

    @property
    def output_format(self) -> str:
        return self.get("output.format", "csv")

    @property
    def n_values(self) -> List[int]:
        return list(self.get("derive.n_values", DEFAULT_DERIVE_N_VALUES))

    @property
    def scan_points(self) -> int:
        return self.get("oracle.scan_points", DEFAULT_ORACLE_SCAN_POINTS)

    @property
    def oracle_lambda(self) -> float:
        """Broadening factor of the oracle's tight-binding comparison, from qubit.lambda."""
        return self.get("qubit.lambda", 1.0)

    def _oracle_energies(self, n: int) -> Tuple[float, float, float, float]:
        """(E_J^a, E_C^a, E_J^b, e^2/2C^b), defaulting to the array that realizes the qubit section."""
        explicit = {
            key: self.values[key]
            for key in ("oracle.e_ja_ghz", "oracle.e_ca_ghz", "oracle.e_jb_ghz", "oracle.e_cb_ghz")
            if key in self.values
        }
        if len(explicit) == 4:
            return (
                explicit["oracle.e_ja_ghz"],
                explicit["oracle.e_ca_ghz"],
                explicit["oracle.e_jb_ghz"],
                explicit["oracle.e_cb_ghz"],
            )

        spec = self.qubit_spec()
        try:
            scales = derive_shared_scales(spec)
        except ValueError as e:
            raise self.error("qubit.e_j_ghz", str(e)) from None
        return (
            explicit.get("oracle.e_ja_ghz", n * spec.e_l),
            explicit.get("oracle.e_ca_ghz", scales.script_e_ca / n),
            explicit.get("oracle.e_jb_ghz", spec.e_j),
            explicit.get("oracle.e_cb_ghz", scales.e_cb),
        )

    def oracle_model(self) -> FullCircuitModel:
        """Build the full-circuit oracle model.

        Energies not given under oracle.* are those of the array realizing the qubit section
        at oracle.n junctions.
        """
        n = self.get("oracle.n", DEFAULT_ORACLE_N)
        e_ja, e_ca, e_jb, e_cb = self._oracle_energies(n)
        flux_phi = self.values.get("qubit.flux_phi", math.pi)
        try:
            return circuit_model(
                n=n,
                e_ja=e_ja,
                e_ca=e_ca,
                e_jb=e_jb,
                e_cb=e_cb,
                flux_phi=flux_phi,
                n_max=self.get("oracle.n_max", DEFAULT_ORACLE_N_MAX),
                cd_a=self.get("oracle.cd_a", 0.0),
                cd_b=self.get("oracle.cd_b", 0.0),
            )
        except ValueError as e:
            key = next((k for k in ("oracle.n", "oracle.n_max") if k in self.values), "oracle.n")
            raise self.error(key, str(e)) from None

    def validate(self) -> None:
        """Check every configured section builds into valid objects.

        Raises:
            ConfigError: On the first violation, attributed to its key
        """
        if any(key in self.values for key in REQUIRED_QUBIT_KEYS):
            self.qubit_spec()
        self.noise_spec()
        self.solver_settings()

        for key in ("sweep.n_min", "sweep.n_max", "sweep.jobs", "oracle.n", "oracle.n_max"):
            if key in self.values and self.values[key] < 1:
                raise self.error(key, f"must be at least 1, got {self.values[key]}")
        for key, limit in (("oracle.n", MAX_ORACLE_N), ("oracle.n_max", MAX_ORACLE_CHARGE)):
            if self.values.get(key, 0) > limit:
                raise self.error(key, f"exact diagonalization supports at most {limit}, got {self.values[key]}")
        if self.n_min is not None and self.n_max is not None and self.n_min > self.n_max:
            raise self.error("sweep.n_max", f"must not be below sweep.n_min={self.n_min}, got {self.n_max}")
        if any(n < 1 for n in self.n_values):
            raise self.error("derive.n_values", "junction counts must be at least 1")
        if self.scan_points < 3:
            raise self.error("oracle.scan_points", f"must be at least 3, got {self.scan_points}")
        for key in ("oracle.cd_a", "oracle.cd_b"):
            if self.values.get(key, 0.0) < 0:
                raise self.error(key, "ground capacitance fractions must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary.

        Returns:
            Configured dotted keys and their parsed values
        """
        return {
            "path": self.path,
            **{key: self.values[key] for key in sorted(self.values)},
        }
