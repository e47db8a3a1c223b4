"""Experiment specifications, their defaults, and the INI-style config format.

A config file has an optional ``[common]`` section and one section per
experiment, named like the CLI subcommand::

    [common]
    seed = 7
    trials = 100000

    [fading-cdf]
    a = 0.6

Keys are the long CLI flag names (``sigma-u2`` and ``sigma_u2`` are both
accepted). Values from the experiment section override ``[common]``, and
command-line flags override both. The resolved specification is written
next to every CSV as ``<out>.spec`` in the same format, under a single
``[experiment]`` section, and :func:`parse_spec_text` reads it back.
"""

from __future__ import annotations

import configparser
import enum
import io
import math
from dataclasses import dataclass
from typing import Any, Mapping

from ..channel import RayleighChannel, ReceiverConfig, StaticChannel
from ..hpa import HpaParams
from ..model import INF, GaussMarkovModel
from ..streams import check_seed


class SpecError(ValueError):
    """Invalid or inconsistent experiment specification."""


class Kind(str, enum.Enum):
    MMSE_VS_TIME = "mmse-vs-time"
    TRADEOFF_STATIC = "tradeoff"
    FADING_CDF = "fading-cdf"
    FADING_TRADEOFF = "fading-tradeoff"
    HPA_MMSE = "hpa-mmse"
    MONTE_CARLO_MSE = "mc-mse"


@dataclass(frozen=True)
class ExperimentSpec:
    kind: Kind
    model: GaussMarkovModel
    cfg: ReceiverConfig
    channel: StaticChannel | RayleighChannel
    hpa: HpaParams | None = None
    n_max: int = 50
    rho_grid: tuple[float, ...] = ()
    trials: int = 100_000
    seed: int = 0
    out_path: str = ""
    # mmse-vs-time sweeps the excitation variance as well as rho
    sigma_u2_grid: tuple[float, ...] = ()
    # time indices of the static tradeoff; INF adds the asymptotic rows
    n_grid: tuple[Any, ...] = ()
    dump_realizations: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise SpecError(f"trials must be >= 1, got {self.trials}")
        if self.n_max < 0:
            raise SpecError(f"n_max must be >= 0, got {self.n_max}")
        for r in self.rho_grid:
            if not 0.0 <= r <= 1.0:
                raise SpecError(f"rho grid values must lie in [0, 1], got {r}")
        if self.kind is Kind.HPA_MMSE and self.hpa is None:
            raise SpecError("hpa-mmse needs amplifier parameters (a_sat, beta)")
        if self.dump_realizations < 0:
            raise SpecError("dump_realizations must be >= 0")
        try:
            check_seed(self.seed)
        except (TypeError, ValueError) as exc:
            raise SpecError(str(exc)) from exc


# ---------------------------------------------------------------- defaults

_STATIC_BASE = dict(a=0.8, sigma02=0.1, mu0=0.0, sigma_v2=1.0, sigma_q2=0.5, gain2=1.0, zeta=1.0)

DEFAULTS: dict[Kind, dict[str, Any]] = {
    Kind.MMSE_VS_TIME: dict(
        _STATIC_BASE, channel="static", sigma_u2=[0.0001, 0.001, 0.02], rho=[0.1, 0.9], n_max=50, trials=1, seed=0,
    ),
    Kind.TRADEOFF_STATIC: dict(
        _STATIC_BASE,
        channel="static",
        sigma_u2=0.001,
        rho=[round(0.05 * i, 2) for i in range(21)],
        n=[0, 1, 2, 5, 10, 30, 200, "inf"],
        n_max=200,
        trials=1,
        seed=0,
    ),
    Kind.FADING_CDF: dict(
        a=0.9, sigma02=0.1, mu0=0.0, sigma_u2=0.002, sigma_v2=1.0, sigma_q2=0.5, zeta=1.0,
        channel="rayleigh", lam=1.0, rho=[0.9], n_max=10, trials=100_000, seed=0,
    ),
    Kind.FADING_TRADEOFF: dict(
        a=0.3, sigma02=0.1, mu0=0.0, sigma_u2=0.003, sigma_v2=1.0, sigma_q2=0.5, zeta=1.0,
        channel="rayleigh", lam=1.0, rho=[round(0.1 * i, 1) for i in range(1, 11)],
        n_max=100, trials=100_000, seed=0,
    ),
    Kind.HPA_MMSE: dict(
        a=0.8, sigma02=0.01, mu0=0.0, sigma_u2=0.01, sigma_v2=1.0, sigma_q2=0.5, gain2=1.0, zeta=1.0,
        channel="static", rho=[0.9], a_sat=0.02, beta=1.0, n_max=50, trials=100_000, seed=0,
    ),
    Kind.MONTE_CARLO_MSE: dict(
        _STATIC_BASE, channel="static", sigma_u2=0.001, rho=[0.9], lam=1.0, n_max=30, trials=100_000, seed=0,
    ),
}

_FLOAT_KEYS = ("a", "sigma_v2", "sigma_q2", "sigma02", "mu0", "lam", "gain2", "zeta", "a_sat", "beta")
_INT_KEYS = ("trials", "seed", "n_max", "dump_realizations")
_LIST_KEYS = ("rho", "sigma_u2", "n")
_ALIASES = {"lambda": "lam", "out_path": "out"}
KNOWN_KEYS = set(_FLOAT_KEYS) | set(_INT_KEYS) | set(_LIST_KEYS) | {"channel", "out", "kind", "h"}


def normalize_key(key: str) -> str:
    key = key.strip().lower().replace("-", "_")
    return _ALIASES.get(key, key)


def _parse_horizon(text):
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity"):
        return INF
    if text is INF:
        return INF
    value = float(text)
    if math.isinf(value):
        return INF
    if value != int(value) or value < 0:
        raise SpecError(f"time index must be a nonnegative integer or inf, got {text!r}")
    return int(value)


def _as_list(value) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, str):
        return [v for v in (s.strip() for s in value.split(",")) if v]
    return [value]


def _coerce(key: str, value):
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            f = float(value)
            if f != int(f):
                raise ValueError
            return int(f)
        if key == "n":
            return [_parse_horizon(v) for v in _as_list(value)]
        if key in _LIST_KEYS:
            return [float(v) for v in _as_list(value)]
        if key == "h":
            return complex(str(value).replace(" ", ""))
        return str(value).strip()
    except (TypeError, ValueError) as exc:
        raise SpecError(f"invalid value for {key}: {value!r}") from exc


def _section(parser: configparser.ConfigParser, name: str) -> dict[str, Any]:
    if not parser.has_section(name):
        return {}
    out = {}
    for k, v in parser.items(name, raw=True):
        key = normalize_key(k)
        if key not in KNOWN_KEYS:
            raise SpecError(f"unknown config key {k!r} in section [{name}]")
        out[key] = v
    return out


def read_config(text: str, kind: Kind) -> dict[str, Any]:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"malformed config: {exc}".splitlines()[0]) from exc
    values = _section(parser, "common")
    values.update(_section(parser, kind.value))
    values.update(_section(parser, "experiment"))
    return values


def resolve(kind: Kind, config_text: str | None = None, overrides: Mapping[str, Any] | None = None) -> ExperimentSpec:
    """Merge defaults, config file and flag overrides into an :class:`ExperimentSpec`."""
    values = dict(DEFAULTS[kind])
    if config_text:
        values.update({k: _coerce(k, v) for k, v in read_config(config_text, kind).items() if k != "kind"})
    for k, v in (overrides or {}).items():
        if v is not None:
            key = normalize_key(k)
            values[key] = _coerce(key, v)
            if key == "gain2":
                values.pop("h", None)
    return build_spec(kind, values)


def build_spec(kind: Kind, values: Mapping[str, Any]) -> ExperimentSpec:
    rho = _as_list(values["rho"])
    sigma_u2 = _as_list(values["sigma_u2"])
    if not rho:
        raise SpecError("rho grid is empty")
    if not sigma_u2:
        raise SpecError("sigma_u2 is empty")
    if kind is not Kind.MMSE_VS_TIME and len(sigma_u2) != 1:
        raise SpecError(f"{kind.value} takes a single sigma_u2")
    try:
        model = GaussMarkovModel(
            a=values["a"], sigma_u2=sigma_u2[0], mu0=values["mu0"], sigma02=values["sigma02"]
        )
        cfg = ReceiverConfig(
            rho=rho[0], sigma_v2=values["sigma_v2"], sigma_q2=values["sigma_q2"], zeta=values["zeta"]
        )
        channel_name = str(values.get("channel", "static")).lower()
        if channel_name == "static":
            if "h" in values:
                channel = StaticChannel(h=values["h"])
            else:
                gain2 = values.get("gain2", 1.0)
                if gain2 < 0:
                    raise SpecError(f"gain2 must be >= 0, got {gain2}")
                channel = StaticChannel(h=math.sqrt(gain2))
        elif channel_name == "rayleigh":
            channel = RayleighChannel(lam=values.get("lam", 1.0))
        else:
            raise SpecError(f"channel must be 'static' or 'rayleigh', got {channel_name!r}")
        hpa = None
        if kind is Kind.HPA_MMSE or "a_sat" in values:
            hpa = HpaParams(a_sat=values.get("a_sat", 1.0), beta=values.get("beta", 1.0))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from exc
    n_grid = tuple(_parse_horizon(v) for v in _as_list(values.get("n", [])))
    return ExperimentSpec(
        kind=kind,
        model=model,
        cfg=cfg,
        channel=channel,
        hpa=hpa,
        n_max=int(values["n_max"]),
        rho_grid=tuple(float(r) for r in rho),
        trials=int(values["trials"]),
        seed=int(values["seed"]),
        out_path=str(values.get("out", "")),
        sigma_u2_grid=tuple(float(s) for s in sigma_u2) if kind is Kind.MMSE_VS_TIME else (),
        n_grid=n_grid,
        dump_realizations=int(values.get("dump_realizations", 0)),
    )


def _fmt(value) -> str:
    if value is INF:
        return "inf"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def spec_values(spec: ExperimentSpec) -> dict[str, str]:
    """Flat key/value view of a spec, formatted for exact round-tripping."""
    out = {
        "kind": spec.kind.value,
        "a": _fmt(spec.model.a),
        "sigma_u2": ", ".join(_fmt(s) for s in (spec.sigma_u2_grid or (spec.model.sigma_u2,))),
        "mu0": _fmt(spec.model.mu0),
        "sigma02": _fmt(spec.model.sigma02),
        "rho": ", ".join(_fmt(r) for r in spec.rho_grid),
        "sigma_v2": _fmt(spec.cfg.sigma_v2),
        "sigma_q2": _fmt(spec.cfg.sigma_q2),
        "zeta": _fmt(spec.cfg.zeta),
    }
    if isinstance(spec.channel, StaticChannel):
        out["channel"] = "static"
        out["h"] = repr(spec.channel.h)
    else:
        out["channel"] = "rayleigh"
        out["lam"] = _fmt(spec.channel.lam)
    if spec.hpa is not None:
        out["a_sat"] = _fmt(spec.hpa.a_sat)
        out["beta"] = _fmt(spec.hpa.beta)
    out["n_max"] = str(spec.n_max)
    if spec.n_grid:
        out["n"] = ", ".join(_fmt(n) for n in spec.n_grid)
    out["trials"] = str(spec.trials)
    out["seed"] = str(spec.seed)
    out["dump_realizations"] = str(spec.dump_realizations)
    out["out"] = spec.out_path
    return out


def format_spec(spec: ExperimentSpec) -> str:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    parser.optionxform = str
    parser["experiment"] = spec_values(spec)
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue().rstrip("\n") + "\n"


def parse_spec_text(text: str) -> ExperimentSpec:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    parser.read_string(text)
    raw = _section(parser, "experiment")
    if "kind" not in raw:
        raise SpecError("spec text has no kind")
    kind = Kind(raw.pop("kind"))
    values: dict[str, Any] = {"n": []}
    values.update({k: _coerce(k, v) for k, v in raw.items()})
    return build_spec(kind, values)


__all__ = [
    "DEFAULTS",
    "ExperimentSpec",
    "Kind",
    "SpecError",
    "build_spec",
    "format_spec",
    "parse_spec_text",
    "resolve",
]
