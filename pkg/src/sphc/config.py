"""Key-value configuration: field polynomials, guards and defaults.

The packaged ``fields.cfg`` supplies defaults; a file named by the
``SPHC_CONFIG`` environment variable overrides individual keys.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources

from .gf import DEFAULT_POLYNOMIALS, FieldError, field_for_q, is_irreducible


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    polynomials: dict = field(default_factory=lambda: dict(DEFAULT_POLYNOMIALS))
    memory_limit: int = 2 * 1024**3
    probe_qs: tuple = (2, 4)
    max_rank: int = 6
    a_outer_max_m: int = 4
    d_outer_max_n: int = 6
    format: str = "json"

    def field(self, q: int):
        return field_for_q(q, self.polynomials)


def parse_config_text(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def _int(value: str, key: str) -> int:
    try:
        return int(value, 0)
    except ValueError:
        raise ConfigError(f"{key}: {value!r} is not an integer") from None


def build_config(entries: dict[str, str]) -> Config:
    polys = dict(DEFAULT_POLYNOMIALS)
    kw: dict = {}
    for key, value in entries.items():
        if key.startswith("poly."):
            k = _int(key[5:], key)
            p = _int(value, key)
            if not 1 <= k <= 8 or p.bit_length() - 1 != k or not is_irreducible(p):
                raise ConfigError(f"{key} = {value}: not an irreducible polynomial of degree {k}")
            polys[k] = p
        elif key in ("memory_limit", "max_rank", "a_outer_max_m", "d_outer_max_n"):
            kw[key] = _int(value, key)
        elif key == "probe_qs":
            qs = tuple(_int(v.strip(), key) for v in value.split(",") if v.strip())
            for q in qs:
                if q < 2 or q & (q - 1) or q > 256:
                    raise ConfigError(f"probe q={q} is not a power of 2 in 2..256")
            kw[key] = qs
        elif key == "format":
            if value not in ("json", "csv"):
                raise ConfigError(f"format must be json or csv, not {value!r}")
            kw[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return Config(polynomials=polys, **kw)


def load_config(path: str | None = None) -> Config:
    entries = parse_config_text(resources.files("sphc").joinpath("fields.cfg").read_text())
    path = path or os.environ.get("SPHC_CONFIG")
    if path:
        try:
            with open(path) as fh:
                entries.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        return build_config(entries)
    except FieldError as exc:
        raise ConfigError(str(exc)) from None
