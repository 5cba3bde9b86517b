"""Run configuration: defaults, a flat ``key = value`` file, and overrides.

Precedence is command-line flags over the config file over defaults. Per-
format thresholds apply when ``t_i`` / ``t_p`` are left unset.
"""

from dataclasses import asdict, dataclass, fields

from .errors import BowlershipError
from .ingest import ODI, normalize_format
from .network import ALL_OVERS, ECONOMY
from .pairing import FORMAT_DEFAULTS


@dataclass
class RunConfig:
    corpus_dir: str = None
    format: str = None
    t_i: int = None
    t_p: int = None
    alpha: float = 0.05
    exact_cutoff: int = 20
    individual_set: str = ALL_OVERS
    charge_extras: bool = True
    normality_floor: float = None
    seed: int = 0
    output_dir: str = "out"
    team: str = None
    k: int = 5
    metric: str = ECONOMY
    layout: str = "dot"

    def resolved(self):
        """Copy with the format normalized and per-format defaults filled in."""
        out = RunConfig(**asdict(self))
        out.format = normalize_format(out.format or ODI)
        d_i, d_p = FORMAT_DEFAULTS[out.format]
        out.t_i = d_i if out.t_i is None else out.t_i
        out.t_p = d_p if out.t_p is None else out.t_p
        if out.normality_floor is None:
            out.normality_floor = out.t_i
        if out.t_i <= 0 or out.t_p < 2 or out.k < 1 or not 0 < out.alpha < 1:
            raise BowlershipError("BAD_CONFIG", f"invalid thresholds in {out}")
        return out


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_ALIASES = {"ti": "t_i", "tp": "t_p", "out": "output_dir", "corpus": "corpus_dir"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _coerce(key, raw):
    kind = _TYPES[key]
    if raw is None:
        return None
    if kind is bool:
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise BowlershipError("BAD_CONFIG", f"{key}: not a boolean: {raw!r}")
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
    except ValueError:
        raise BowlershipError("BAD_CONFIG", f"{key}: cannot parse {raw!r}")
    return str(raw)


def normalize_key(key):
    key = key.strip().lower().replace("-", "_")
    key = _ALIASES.get(key, key)
    if key not in _TYPES:
        raise BowlershipError("BAD_CONFIG", f"unknown config key {key!r}")
    return key


def parse_config_text(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BowlershipError("BAD_CONFIG", f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = normalize_key(key)
        values[key] = _coerce(key, value.strip())
    return values


def build_config(file_path=None, overrides=None):
    values = {}
    if file_path:
        with open(file_path, encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    for key, value in (overrides or {}).items():
        if value is not None:
            key = normalize_key(key)
            values[key] = _coerce(key, value)
    return RunConfig(**values)
