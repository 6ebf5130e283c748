"""Run configuration: strict JSON ingestion and a stable digest."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .confmod import ManifoldSpec, Primitive
from .errors import ConfigError, ParseError
from .exactlin import format_rational, parse_rational
from .fpgroup import GroupSpec, format_word, parse_word

PRESETS = {
    "s1xd3": {"hat_rank": 0, "p3": [], "p4": [], "p5": []},
    "demo": {"hat_rank": 1, "p3": [{"name": "x1", "fiber": False}], "p4": ["y1"], "p5": ["z1"]},
}

_TOP_KEYS = {"manifold", "window"}
_MANIFOLD_KEYS = {"preset", "hat_rank", "p3", "p4", "p5", "c3_correction", "c4_correction"}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(extra)}")


def _names(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ConfigError(f"{where} must be a list of names")
    return value


def _p3(value) -> list[dict]:
    if not isinstance(value, list):
        raise ConfigError("p3 must be a list")
    out = []
    for item in value:
        if isinstance(item, str):
            item = {"name": item}
        if not isinstance(item, dict):
            raise ConfigError("p3 entries are names or {name, fiber} objects")
        _reject_unknown(item, {"name", "fiber"}, "p3 entry")
        if not isinstance(item.get("name"), str) or not isinstance(item.get("fiber", False), bool):
            raise ConfigError("p3 entry needs a string name and a boolean fiber flag")
        out.append({"name": item["name"], "fiber": item.get("fiber", False)})
    return out


def _correction(value, group: GroupSpec, where: str) -> list[tuple[str, list[tuple[str, str]]]]:
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must map primitive names to term lists")
    out = []
    for name in sorted(value):
        terms = value[name]
        if not isinstance(terms, list):
            raise ConfigError(f"{where}[{name}] must be a list")
        norm = []
        for t in terms:
            if not isinstance(t, dict):
                raise ConfigError(f"{where}[{name}] entries are objects")
            _reject_unknown(t, {"word", "coeff"}, f"{where}[{name}] entry")
            try:
                w = parse_word(str(t.get("word", "")), group)
                c = parse_rational(t.get("coeff", "1"))
            except (ParseError, ValueError) as exc:
                raise ConfigError(f"{where}[{name}]: {exc}") from None
            norm.append((format_word(w), format_rational(c)))
        out.append((name, norm))
    return out


@dataclass(frozen=True)
class RunConfig:
    spec: ManifoldSpec
    canonical: str

    @property
    def window(self) -> int:
        return self.spec.window

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical.encode("ascii")).hexdigest()


def load_config(data: dict[str, Any]) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    _reject_unknown(data, _TOP_KEYS, "configuration")
    window = data.get("window", 1)
    if not isinstance(window, int) or isinstance(window, bool) or window < 1:
        raise ConfigError("window must be a positive integer")
    man = data.get("manifold", {"preset": "s1xd3"})
    if not isinstance(man, dict):
        raise ConfigError("manifold must be an object")
    _reject_unknown(man, _MANIFOLD_KEYS, "manifold")
    fields = {"hat_rank": 0, "p3": [], "p4": [], "p5": []}
    if "preset" in man:
        if man["preset"] not in PRESETS:
            raise ConfigError(f"unknown preset {man['preset']!r}; choose from {', '.join(sorted(PRESETS))}")
        fields.update(json.loads(json.dumps(PRESETS[man["preset"]])))
    for key in ("hat_rank", "p3", "p4", "p5"):
        if key in man:
            fields[key] = man[key]
    hat_rank = fields["hat_rank"]
    if not isinstance(hat_rank, int) or isinstance(hat_rank, bool) or hat_rank < 0:
        raise ConfigError("hat_rank must be a nonnegative integer")
    group = GroupSpec(hat_rank)
    p3 = _p3(fields["p3"])
    p4 = _names(fields["p4"], "p4")
    p5 = _names(fields["p5"], "p5")
    c3 = _correction(man.get("c3_correction", {}), group, "c3_correction")
    c4 = _correction(man.get("c4_correction", {}), group, "c4_correction")
    spec = ManifoldSpec(
        group=group,
        p3=tuple(Primitive(p["name"], p["fiber"]) for p in p3),
        p4=tuple(p4),
        p5=tuple(p5),
        window=window,
        c3_correction=tuple(
            (name, tuple((parse_word(w, group), Fraction(c)) for w, c in terms)) for name, terms in c3
        ),
        c4_correction=tuple((name, tuple((parse_word(w, group), Fraction(c)) for w, c in terms)) for name, terms in c4),
    )
    canonical = json.dumps(
        {
            "manifold": {
                "hat_rank": hat_rank,
                "p3": p3,
                "p4": p4,
                "p5": p5,
                "c3_correction": {n: [{"word": w, "coeff": c} for w, c in ts] for n, ts in c3},
                "c4_correction": {n: [{"word": w, "coeff": c} for w, c in ts] for n, ts in c4},
            },
            "window": window,
        },
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=True,
    )
    return RunConfig(spec, canonical)


def load_config_file(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    return load_config(data)


def preset_config(name: str, window: int = 1) -> RunConfig:
    return load_config({"manifold": {"preset": name}, "window": window})
