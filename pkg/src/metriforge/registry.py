"""Build a :class:`Metric` from a JSON-style configuration.

Accepted forms::

    {"family": "poset", "params": {"n": 3, "relations": [[1, 3]]}}
    {"poset": {"n": 3, "relations": [[1, 3]]}}          # nested shorthand
    "edit:IDS", "hamming", "lee:5", "kendall"            # string shorthand

Positions and labels in configs are 1-based.
"""

from __future__ import annotations

import json
import os

from . import asymmetric, combinatorial, editperm, poset, ringlee, subspace
from .config import DomainError
from .core import Metric, hamming, lee
from .fields import Alphabet


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise DomainError(f"missing parameter {key!r}")
        return default
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise DomainError(f"parameter {key!r} must be an integer, got {v!r}")
    return v


def _opt_int(params: dict, key: str):
    return _int(params, key) if key in params else None


def _field(params: dict) -> Alphabet:
    q = _int(params, "q", 2)
    return Alphabet(q, poly=params.get("field-poly") or params.get("poly"))


def _hamming(p):
    return hamming(_int(p, "q", 2), _opt_int(p, "n"), _field(p))


def _lee(p):
    return lee(_int(p, "q"), _opt_int(p, "n"))


def _subspace(p):
    F = _field(p)
    subs = p.get("subspaces")
    if not subs:
        raise DomainError("missing parameter 'subspaces'")
    n = _int(p, "n", len(subs[0][0]))
    return subspace.SubspaceFamily(F, n, tuple(tuple(map(tuple, S)) for S in subs)).metric()


def _projective(p):
    if "vectors" not in p:
        raise DomainError("missing parameter 'vectors'")
    return subspace.ProjectiveFamily(_field(p), tuple(map(tuple, p["vectors"]))).metric()


def _phase(p):
    return subspace.phase_rotation_metric(_int(p, "n"))


def _covering(p):
    sets = p.get("covering")
    if sets is None:
        raise DomainError("missing parameter 'covering'")
    n = _int(p, "n", max((max(s) for s in sets if s), default=0))
    return combinatorial.Covering.from_one_based(n, sets).metric(_field(p))


def _burst(p):
    cov = combinatorial.burst_covering(_int(p, "n"), _int(p, "b"), bool(p.get("cyclic", False)))
    return cov.metric(_field(p), "burst")


def _burst2d(p):
    cov = combinatorial.burst2d_covering(_int(p, "n1"), _int(p, "n2"), _int(p, "b1"), _int(p, "b2"))
    return cov.metric(_field(p), "burst2d")


def _poset_of(p) -> poset.Poset:
    return poset.Poset.from_relations(_int(p, "n"), p.get("relations", []))


def _poset(p):
    return _poset_of(p).metric(_field(p))


def _posetblock(p):
    if "pi" not in p:
        raise DomainError("missing parameter 'pi'")
    return poset.PosetBlock(_poset_of(p), p["pi"]).metric(_field(p))


def _digraph(p):
    return poset.Digraph.from_one_based(_int(p, "n"), p.get("edges", [])).metric(_field(p))


def _pomset(p):
    rel = [(tuple(u), tuple(v)) for u, v in p.get("relations", [])]
    return poset.Pomset.from_one_based(_int(p, "q"), _int(p, "n"), rel).metric()


def _mannheim(p):
    return ringlee.GaussianModulus(_int(p, "a"), _int(p, "b", 0)).metric(_opt_int(p, "n"))


def _ej(p):
    return ringlee.EisensteinModulus(_int(p, "p")).metric(_opt_int(p, "n"))


def _ldlee(p):
    if "phi" not in p:
        raise DomainError("missing parameter 'phi'")
    return ringlee.LdimPhi(_int(p, "l"), _int(p, "q"), p["phi"], p.get("poly")).metric(_opt_int(p, "n"))


def _ks(p):
    if "classes" not in p:
        raise DomainError("missing parameter 'classes'")
    return ringlee.KSPartition(_int(p, "q"), p["classes"]).metric(_opt_int(p, "n"))


def _spotty(p):
    cfg = ringlee.SpottyConfig(_int(p, "b"), _int(p, "t"), str(p.get("inner", "H")), _int(p, "q", 2))
    return cfg.metric(_opt_int(p, "n"))


def _asym(p):
    return asymmetric.asymmetric_metric(_opt_int(p, "n"))


def _genasym(p):
    return asymmetric.gen_asymmetric_metric(_opt_int(p, "q"), _opt_int(p, "n"))


def _edit(p):
    return editperm.edit_metric(p.get("ops", "ID"), _opt_int(p, "q"))


def _edit_star(p):
    return editperm.edit_star_metric(_opt_int(p, "q"))


def _kendall(p):
    return editperm.kendall_metric(_opt_int(p, "n"))


def _perm_l1(p):
    return editperm.perm_l1_metric(_opt_int(p, "n"))


FAMILIES = {
    "hamming": _hamming,
    "lee": _lee,
    "subspace": _subspace,
    "projective": _projective,
    "phase-rotation": _phase,
    "combinatorial": _covering,
    "covering": _covering,
    "burst": _burst,
    "burst2d": _burst2d,
    "poset": _poset,
    "posetblock": _posetblock,
    "digraph": _digraph,
    "pomset": _pomset,
    "mannheim": _mannheim,
    "ej": _ej,
    "ldlee": _ldlee,
    "ks": _ks,
    "spotty": _spotty,
    "asymmetric": _asym,
    "genasym": _genasym,
    "edit": _edit,
    "edit-star": _edit_star,
    "kendall": _kendall,
    "perm-l1": _perm_l1,
}


def _from_string(s: str):
    name, _, arg = s.partition(":")
    name = name.strip().lower()
    if name == "edit":
        return "edit", {"ops": arg or "ID"}
    if name in ("lee", "hamming") and arg:
        try:
            return name, {"q": int(arg)}
        except ValueError:
            raise DomainError(f"bad alphabet size in {s!r}") from None
    if arg:
        raise DomainError(f"shorthand {s!r} takes no argument")
    return name, {}


def normalize(config) -> tuple[str, dict]:
    """Return ``(family, params)`` for any accepted configuration form."""
    if isinstance(config, str):
        return _from_string(config)
    if not isinstance(config, dict):
        raise DomainError("metric config must be a JSON object or a shorthand string")
    if "family" in config:
        fam = config["family"]
        params = config.get("params", {})
        if isinstance(fam, str) and ":" in fam:
            base, extra = _from_string(fam)
            return base, {**extra, **params}
    else:
        keys = [k for k in config if k in FAMILIES]
        if len(keys) != 1:
            raise DomainError("metric config needs a 'family' field or exactly one family key")
        fam = keys[0]
        inner = config[fam]
        if fam == "covering" and isinstance(inner, list):
            inner = {"covering": inner}
        if not isinstance(inner, dict):
            raise DomainError(f"field {fam!r} must be an object")
        params = dict(inner)
        # sibling keys such as "q" or "n" refine the nested block
        for k, v in config.items():
            if k != fam:
                params.setdefault(k, v)
    if not isinstance(params, dict):
        raise DomainError("field 'params' must be an object")
    return fam, params


def build_metric(config) -> Metric:
    fam, params = normalize(config)
    if fam not in FAMILIES:
        raise DomainError(f"field 'family': unknown metric family {fam!r}")
    try:
        return FAMILIES[fam](params)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad parameters for {fam!r}: {exc}") from None


def load_metric(spec: str) -> Metric:
    """``spec`` is a path to a JSON file, an inline JSON document, or a shorthand string."""
    text = spec
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
    text = text.strip()
    if text.startswith(("{", '"')):
        try:
            config = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"metric config is not valid JSON: {exc}") from None
    else:
        config = text
    return build_metric(config)
