"""INI-style experiment configuration.

Every key has a default, so an empty file is a valid configuration. Keys
accepted per section are listed in ``SCHEMA``; anything else is rejected.
List-valued keys (comma separated) drive sweeps in ``ugclass evaluate``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

from ._util import default_theta_grid
from .baselines import DEFAULT_NUM_WORLDS
from .bayes import DEFAULT_DELTA_S
from .errors import ConfigError
from .evaluation import CLASSIFIERS, ClassifierSpec, SplitSpec
from .perturb import PerturbationConfig

SCHEMA = {
    "data": {"graph", "labels", "truth"},
    "classifier": {"name", "delta_s", "alpha", "beta", "theta_grid", "delta_e", "max_iterations",
                   "num_worlds", "time_budget", "promote_fraction"},
    "perturbation": {"phi", "sigma", "edge_removal", "label_ratio"},
    "split": {"train_ratio", "repeats"},
    "run": {"seed"},
    "output": {"dir", "timing"},
    "ingest": {"kind", "input", "output"},
}


def _floats(raw: str) -> list:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {raw!r}") from None


def _optional_int(raw: str):
    raw = raw.strip().lower()
    if raw in ("", "none"):
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"expected an integer or 'none', got {raw!r}") from None


def _budget(raw: str):
    raw = raw.strip().lower()
    if raw in ("", "none"):
        return None
    if raw == "ubayes":
        return "ubayes"
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"time_budget must be seconds, 'none' or 'ubayes', got {raw!r}") from None


@dataclass
class ExperimentConfig:
    graph: Path | None = None
    labels: Path | None = None
    truth: Path | None = None
    classifiers: list = field(default_factory=lambda: ["ubayes"])
    delta_s: float = DEFAULT_DELTA_S
    alpha: float = 0.2
    beta: float = 0.1
    theta_grid: tuple = field(default_factory=lambda: tuple(default_theta_grid()))
    delta_e: float = 0.5
    max_iterations: int | None = None
    num_worlds: int = DEFAULT_NUM_WORLDS
    time_budget: float | str | None = None
    promote_fraction: float = 1.0
    phi: list = field(default_factory=lambda: [3.0])
    sigma: list = field(default_factory=lambda: [0.25])
    edge_removal: list = field(default_factory=lambda: [0.0])
    label_ratio: list = field(default_factory=lambda: [1.0])
    train_ratio: float = 2 / 3
    repeats: int = 5
    seed: int = 0
    out_dir: Path = Path("out")
    timing: bool = True
    ingest_kind: str | None = None
    ingest_input: Path | None = None
    ingest_output: Path | None = None

    def classifier_spec(self, name: str) -> ClassifierSpec:
        return ClassifierSpec(
            name=name, delta_s=self.delta_s, alpha=self.alpha, beta=self.beta,
            theta_grid=tuple(self.theta_grid), delta_e=self.delta_e, max_iterations=self.max_iterations,
            num_worlds=self.num_worlds, time_budget=self.time_budget, promote_fraction=self.promote_fraction,
        )

    def perturbations(self) -> list:
        """Cartesian product of the perturbation sweep values, phi varying slowest."""
        return [
            PerturbationConfig(phi=phi, sigma=sigma, edge_removal=er, label_ratio=lr, seed=self.seed)
            for phi in self.phi for sigma in self.sigma for er in self.edge_removal for lr in self.label_ratio
        ]

    def split_spec(self) -> SplitSpec:
        return SplitSpec(self.train_ratio, self.repeats, self.seed)

    def parameters(self) -> dict:
        """Classifier parameters as plain JSON-ready values."""
        return {
            "delta_s": self.delta_s, "alpha": self.alpha, "beta": self.beta,
            "theta_grid": list(self.theta_grid), "delta_e": self.delta_e,
            "max_iterations": self.max_iterations, "num_worlds": self.num_worlds,
            "time_budget": self.time_budget, "promote_fraction": self.promote_fraction,
        }

    def override(self, **kw) -> "ExperimentConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def parse_config(text: str, base_dir: Path | str = ".") -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__", inline_comment_prefixes=(";",))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        unknown = set(parser[section]) - SCHEMA[section]
        if unknown:
            raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")

    base = Path(base_dir)
    cfg = ExperimentConfig()

    def get(section, key):
        return parser.get(section, key, fallback=None)

    def path(section, key):
        raw = get(section, key)
        return None if raw is None else base / raw.strip()

    def number(section, key, cast=float):
        raw = get(section, key)
        if raw is None:
            return None
        try:
            return cast(raw.strip())
        except ValueError:
            raise ConfigError(f"[{section}] {key}: cannot parse {raw!r}") from None

    cfg.graph, cfg.labels, cfg.truth = path("data", "graph"), path("data", "labels"), path("data", "truth")
    if (raw := get("classifier", "name")) is not None:
        names = [x.strip() for x in raw.split(",") if x.strip()]
        for n in names:
            if n not in CLASSIFIERS:
                raise ConfigError(f"unknown classifier {n!r}; expected one of {', '.join(CLASSIFIERS)}")
        cfg.classifiers = names
    for key in ("delta_s", "alpha", "beta", "delta_e", "promote_fraction"):
        if (v := number("classifier", key)) is not None:
            setattr(cfg, key, v)
    if (raw := get("classifier", "theta_grid")) is not None:
        cfg.theta_grid = tuple(_floats(raw))
    if (raw := get("classifier", "max_iterations")) is not None:
        cfg.max_iterations = _optional_int(raw)
    if (v := number("classifier", "num_worlds", int)) is not None:
        cfg.num_worlds = v
    if (raw := get("classifier", "time_budget")) is not None:
        cfg.time_budget = _budget(raw)
    for key in ("phi", "sigma", "edge_removal", "label_ratio"):
        if (raw := get("perturbation", key)) is not None:
            setattr(cfg, key, _floats(raw))
    if (v := number("split", "train_ratio")) is not None:
        cfg.train_ratio = v
    if (v := number("split", "repeats", int)) is not None:
        cfg.repeats = v
    if (v := number("run", "seed", int)) is not None:
        cfg.seed = v
    if (p := path("output", "dir")) is not None:
        cfg.out_dir = p
    if (raw := get("output", "timing")) is not None:
        try:
            cfg.timing = parser.getboolean("output", "timing")
        except ValueError:
            raise ConfigError(f"[output] timing: expected a boolean, got {raw!r}") from None
    if (raw := get("ingest", "kind")) is not None:
        if raw.strip() not in ("cooccurrence", "citation"):
            raise ConfigError(f"[ingest] kind must be 'cooccurrence' or 'citation', got {raw!r}")
        cfg.ingest_kind = raw.strip()
    cfg.ingest_input, cfg.ingest_output = path("ingest", "input"), path("ingest", "output")
    return cfg


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    return parse_config(text, path.parent)
