"""JSON serialization, fixture lookup and run manifests.

Exported documents use fixed keys. Fractions are written as strings such as
"1/3" so that exports stay exact and byte-stable.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .complex import HomologyProfile
from .consheaf import LagrangianCycle
from .cycles import CappedCycle
from .errors import SkeletteError
from .fltz import build_fltz
from .lattice.fan import fan_from_json
from .torus import TorusCell

FIXTURE_ENV = "SKELETTE_FIXTURES"
PACKAGE_FIXTURES = Path(__file__).parent / "fixtures"


def fixture_dir():
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else PACKAGE_FIXTURES


def resolve_path(path):
    """An existing path as given, else a name looked up in the fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    parts = p.parts
    rel = Path(*parts[1:]) if len(parts) > 1 and parts[0] == "fixtures" else p
    q = fixture_dir() / rel
    if q.exists():
        return q
    raise FileNotFoundError(path)


def load_json(path):
    with open(resolve_path(path), encoding="utf-8") as fh:
        return json.load(fh)


def load_fan(path):
    return fan_from_json(load_json(path))


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _q(x):
    return str(Fraction(x))


def _unq(s):
    return Fraction(s)


# ---------------------------------------------------------------------------
# FLTZ skeleton

def torus_to_json(tc):
    return {"n": tc.n,
            "cells": [{"id": c.id, "dim": c.dim, "point": [_q(x) for x in c.point],
                       "faces": [[f, k, list(t)] for f, k, t in c.faces]}
                      for c in tc.cells],
            "identifications": [[c, f, list(t)] for c, f, t in tc.identifications()]}


def torus_cells_from_json(data):
    return [TorusCell(c["id"], c["dim"], None, tuple(_unq(x) for x in c["point"]), None,
                      [(f, k, tuple(t)) for f, k, t in c["faces"]])
            for c in data["cells"]]


def fltz_to_json(skel):
    out = {"fan": skel.fan.to_json(),
           "strata": [{"coneRays": list(s.cone.rays),
                       "cosetRep": [_q(x) for x in s.rep],
                       "baseDim": s.base_dim} for s in skel.strata],
           "boundaryPoints": sum(1 for s in skel.strata if s.cone.dim)}
    if skel.base_refinement is not None:
        out["baseRefinement"] = torus_to_json(skel.base_refinement)
    return out


def fltz_from_json(data):
    """Rebuild the skeleton from its fan and check it against the exported records."""
    fan = fan_from_json(data["fan"])
    skel = build_fltz(fan)
    if fltz_strata_from_json(data) != _strata_key(skel.strata):
        raise SkeletteError("exported strata do not match the rebuilt skeleton")
    if "baseRefinement" in data:
        cells = torus_cells_from_json(data["baseRefinement"])
        if [_cell_key(c) for c in cells] != [_cell_key(c) for c in skel.base_refinement.cells]:
            raise SkeletteError("exported base refinement does not match the rebuilt one")
    return skel


def fltz_strata_from_json(data):
    return [(tuple(s["coneRays"]), tuple(_unq(x) for x in s["cosetRep"]), s["baseDim"])
            for s in data["strata"]]


def _strata_key(strata):
    return [(s.cone.rays, tuple(Fraction(x) for x in s.rep), s.base_dim) for s in strata]


def _cell_key(c):
    return (c.id, c.dim, tuple(c.point), tuple(c.faces))


# ---------------------------------------------------------------------------
# homology

def homology_from_json(data):
    ks = sorted(int(k) for k in data)
    return HomologyProfile(tuple(data[str(k)]["rank"] for k in ks),
                           tuple(tuple(data[str(k)]["torsion"]) for k in ks))


# ---------------------------------------------------------------------------
# cycles

def lagrangian_cycle_from_json(data, lam):
    return LagrangianCycle(lam, {(r["baseCellId"], tuple(r["coneRays"])): r["weight"]
                                 for r in data})


def capped_cycle_from_json(data, C):
    weights = {}
    for name in ("cylinder", "collar", "cap"):
        for r in data.get(name, []):
            weights[r["cellId"]] = r["weight"]
    return CappedCycle(C, weights)


# ---------------------------------------------------------------------------
# run manifest

@dataclass(frozen=True)
class RunManifest:
    command: str
    fan_source: str
    options: dict = field(default_factory=dict)
    tool_version: str = __version__
    input_hash: str = ""

    @classmethod
    def for_inputs(cls, command, fan_source, options, inputs):
        h = hashlib.sha256()
        for p in inputs:
            data = resolve_path(p).read_bytes()
            h.update(len(data).to_bytes(8, "big"))
            h.update(data)
        return cls(command, str(fan_source), dict(sorted(options.items())), __version__,
                   h.hexdigest())

    def to_json(self):
        return {"command": self.command, "fanSource": self.fan_source,
                "options": self.options, "toolVersion": self.tool_version,
                "inputHash": self.input_hash}

    @classmethod
    def from_json(cls, data):
        return cls(data["command"], data["fanSource"], dict(data["options"]),
                   data["toolVersion"], data["inputHash"])

