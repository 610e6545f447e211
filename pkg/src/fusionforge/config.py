"""JSON extension configs: discovery, parameter substitution and construction.

A config is either a single stage or ``{"stages": [...]}``.  A stage is

``{"algebra": {...}, "spectrum": [...], "sectors": {...}, "ambient": "Z2xZ2"}``

or ``{"kind": "simple_current", "algebra": {...}, "order": m, "names": {...}}``.
Sector entries are ``{"weight": [...]}``, ``{"orbit": [...], "order": m}``,
``{"label": "z2"}`` or ``{"pair": [left, right]}`` (product bases), each with
an optional ``"mult"``.  Strings may contain ``{tau1}``..``{tau5}``, filled from
the ``tau`` parameter.
"""
from __future__ import annotations

import copy
import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import DomainError
from .extension import ExtensionSpec, SimpleCurrentExtension, simple_current_extension
from .fusionring import FusionRing, ProductRing, Sector, pointed_ring, weight_ring
from .kacmoody import AlgebraId, orbit, parse_weight

ENV_VAR = "FUSIONFORGE_CONFIG_DIR"


def config_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("fusionforge") / "configs"))


def available_configs() -> list[str]:
    return sorted(p.stem for p in config_dir().glob("*.json"))


def _substitute(obj, params: dict):
    if isinstance(obj, str):
        tau = params.get("tau")
        if tau is not None:
            obj = re.sub(r"\{tau(\d)\}", lambda m: str(tau[int(m.group(1)) - 1]), obj)
        return obj
    if isinstance(obj, list):
        return [_substitute(x, params) for x in obj]
    if isinstance(obj, dict):
        return {k: _substitute(v, params) for k, v in obj.items()}
    return obj


def load_config(ref, **params) -> dict:
    """Load by bundled name or by path; ``params`` override the config's ``parameters``."""
    path = Path(ref)
    if not path.suffix:
        path = config_dir() / f"{ref}.json"
    if not path.exists():
        raise DomainError(f"no config {ref!r} (looked in {path.parent})")
    cfg = json.loads(path.read_text())
    merged = dict(cfg.get("parameters", {}))
    merged.update({k: v for k, v in params.items() if v is not None})
    if "tau" in merged:
        tau = [int(x) for x in merged["tau"]]
        if sorted(tau) != [1, 2, 3, 4, 5]:
            raise DomainError(f"tau must be a permutation of 1..5, got {tau}")
        merged["tau"] = tau
    out = _substitute({k: v for k, v in cfg.items() if k != "parameters"}, merged)
    out["parameters"] = merged
    out.setdefault("name", path.stem)
    return out


# ---------------------------------------------------------------------------
# construction


def algebra_from(d: dict) -> AlgebraId:
    return AlgebraId(d["series"], int(d["rank"]), int(d["level"]))


_extensions: dict = {}


def _extension(d: dict) -> SimpleCurrentExtension:
    key = json.dumps(d, sort_keys=True)
    if key not in _extensions:
        _extensions[key] = simple_current_extension(algebra_from(d["algebra"]), int(d["order"]),
                                                    names=d.get("names"))
    return _extensions[key]


def build_ring(d) -> FusionRing:
    if isinstance(d, str):
        return pointed_ring(d)
    kind = d.get("kind", "verlinde")
    if kind == "verlinde":
        return weight_ring(algebra_from(d["algebra"]))
    if kind == "simple_current":
        return _extension(d).ring
    if kind == "pointed":
        return pointed_ring(d["group"], d.get("order"), d.get("names"))
    if kind == "product":
        return ProductRing(build_ring(d["left"]), build_ring(d["right"]))
    raise DomainError(f"unknown ring kind {kind!r}")


def _label(ring: FusionRing, x):
    if isinstance(x, list):
        return ",".join(map(str, x))
    return x


def build_sector(ring: FusionRing, entries) -> Sector:
    out = ring.zero
    for e in entries:
        m = int(e.get("mult", 1))
        if "weight" in e:
            s = ring.simple(_label(ring, e["weight"]))
        elif "orbit" in e:
            alg = getattr(ring, "algebra", None)
            if alg is None:
                raise DomainError("orbit entries need an affine-algebra ring")
            w = parse_weight(alg, _label(ring, e["orbit"]))
            s = Sector(ring, {ring.index(x): 1 for x in set(orbit(w, e.get("order")))})
        elif "label" in e:
            s = ring.simple(e["label"])
        elif "pair" in e:
            if not isinstance(ring, ProductRing):
                raise DomainError("pair entries need a product ring")
            a, b = e["pair"]
            s = Sector(ring, {ring.index((ring.left.labels[ring.left.index(_label(ring.left, a))],
                                          ring.right.labels[ring.right.index(_label(ring.right, b))])): 1})
        else:
            raise DomainError(f"cannot read sector entry {e}")
        out = out + s * m
    return out


@dataclass
class Stage:
    name: str
    spec: ExtensionSpec
    generators: list
    raw: dict
    resolve: str = "raise"
    depth: int = 4
    extension: SimpleCurrentExtension | None = None


@dataclass
class Config:
    name: str
    stages: list
    raw: dict = field(repr=False, default_factory=dict)

    def stage(self, name: str | None = None) -> Stage:
        if name is None:
            return self.stages[0]
        for s in self.stages:
            if s.name == name:
                return s
        raise DomainError(f"config {self.name!r} has no stage {name!r}")


def _build_stage(d: dict, default_name: str) -> Stage:
    name = d.get("name", default_name)
    if d.get("kind") == "simple_current":
        ext = _extension(d)
        spec = ext.spec
        base = spec.base
    else:
        base = build_ring(d["base"]) if "base" in d else weight_ring(algebra_from(d["algebra"]))
        theta = build_sector(base, d["spectrum"])
        sectors = {k: build_sector(base, v) for k, v in d.get("sectors", {}).items()}
        ambient = build_ring(d["ambient"]) if "ambient" in d else None
        spec = ExtensionSpec(base, theta, sectors, ambient, new_names=tuple(d.get("new_names", ())),
                             name=d.get("title", name))
        ext = None
    gens = [_label(base, g) for g in d.get("generators", [])]
    return Stage(name, spec, gens, d, d.get("resolve", "raise"), int(d.get("depth", 4)), ext)


def build(cfg) -> Config:
    """Config name, path or loaded dict -> :class:`Config` with built specs."""
    if not isinstance(cfg, dict):
        cfg = load_config(cfg)
    cfg = copy.deepcopy(cfg)
    stages = cfg.get("stages", [cfg])
    built = [_build_stage(s, f"{cfg.get('name', 'stage')}[{k}]") for k, s in enumerate(stages)]
    if len(built) == 1 and "stages" not in cfg:
        built[0].name = cfg.get("name", built[0].name)
    return Config(cfg.get("name", ""), built, cfg)
