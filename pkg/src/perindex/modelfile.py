"""JSON model files and JSON reports."""
from __future__ import annotations

import json

from .abelian import group_to_dict, parse_group
from .errors import MalformedModelError
from .forms2 import Z2Trilinear
from .model6 import SixManifoldModel

SCHEMA_VERSION = "1"


def model_to_dict(m: SixManifoldModel) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "manifold": {
            "H2": group_to_dict(m.H2),
            "H3": group_to_dict(m.H3),
            "dim_W": m.dim_W,
            "red2": [list(r) for r in m.red2],
            "bock": [list(r) for r in m.bock],
            "T": [list(t) for t in m.T.triples()],
            "v2": list(m.v2),
            "c1": None if m.c1 is None else list(m.c1),
        },
    }
    if m.name is not None:
        doc["name"] = m.name
    return doc


def model_from_dict(doc) -> SixManifoldModel:
    if not isinstance(doc, dict):
        raise MalformedModelError("model file must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise MalformedModelError(f"unrecognized schema_version {version!r}")
    man = doc.get("manifold")
    if not isinstance(man, dict):
        raise MalformedModelError("missing 'manifold' object")
    missing = [k for k in ("H2", "H3", "dim_W", "red2", "bock", "T", "v2") if k not in man]
    if missing:
        raise MalformedModelError(f"manifold is missing fields {missing}")
    try:
        H2, H3 = parse_group(man["H2"]), parse_group(man["H3"])
        dim = int(man["dim_W"])
        T = Z2Trilinear.from_triples(dim, man["T"])
        return SixManifoldModel(H2, H3, dim, man["red2"], man["bock"], T, man["v2"],
                                man.get("c1"), doc.get("name"))
    except MalformedModelError:
        raise
    except (TypeError, ValueError, AttributeError) as exc:
        raise MalformedModelError(f"bad model data: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_model(m: SixManifoldModel, path):
    with open(path, "w") as fh:
        fh.write(dumps(model_to_dict(m)))


def load_model(path) -> SixManifoldModel:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedModelError(f"{path}: invalid JSON: {exc}") from exc
    return model_from_dict(doc)


def report_to_dict(rep) -> dict:
    return {
        "alpha": list(rep.alpha),
        "period": rep.period,
        "index_exact": rep.index,
        "index_interval": None if rep.index_interval is None else list(rep.index_interval),
        "regime": rep.regime.value,
        "epsilon_bound": rep.epsilon_bound,
        "tpic": rep.tpic_holds,
        "certificate_e_x": None if rep.certificate is None else list(rep.certificate),
    }


def reports_to_json(m: SixManifoldModel, reports) -> str:
    return dumps({"model": m.name, "spin_c": m.is_spin_c,
                  "classes": [report_to_dict(r) for r in reports]})
