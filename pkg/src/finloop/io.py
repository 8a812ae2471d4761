"""Reading and writing the structured text formats.

One YAML document per object.  Groupoids: ``objects``, ``morphisms`` (records
with id/src/tgt), ``compose`` (triples [after, first, result]), with
``identities`` and ``inverses`` either explicit or derived.  Groups: either a
``table`` (indices) or ``perm_generators`` in cycle notation on 1..n.
Spaces: ``points`` plus ``relations`` pairs generating the preorder.
Functors: inline ``domain``/``codomain`` documents with object/morphism maps.
"""

from __future__ import annotations

import json

import yaml

from .cech import OpenCover, finite_space
from .errors import ParseError
from .functor import GroupoidFunctor
from .group import FiniteGroup
from .groupoid import FiniteGroupoid


def _load(text):
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"not valid YAML: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("expected a mapping at the top level")
    return doc


# ---------------------------------------------------------------------------
# groupoids


def parse_groupoid(text):
    doc = _load(text) if isinstance(text, str) else text
    return groupoid_from_document(doc)


def groupoid_from_document(doc):
    for key in ("objects", "morphisms", "compose"):
        if key not in doc:
            raise ParseError(f"groupoid document is missing '{key}'")
    objects = list(doc["objects"])
    obj_pos = {o: i for i, o in enumerate(objects)}
    if len(obj_pos) != len(objects):
        raise ParseError("duplicate object identifiers")

    mids, source, target = [], [], []
    mor_pos = {}
    for rec in doc["morphisms"]:
        try:
            mid, src, tgt = rec["id"], rec["src"], rec["tgt"]
        except (TypeError, KeyError):
            raise ParseError(f"bad morphism record: {rec!r}") from None
        if mid in mor_pos:
            raise ParseError(f"duplicate morphism id {mid!r}")
        if src not in obj_pos or tgt not in obj_pos:
            raise ParseError(f"morphism {mid!r} uses undeclared objects")
        mor_pos[mid] = len(mids)
        mids.append(mid)
        source.append(obj_pos[src])
        target.append(obj_pos[tgt])

    compose = {}
    for triple in doc["compose"]:
        if len(triple) != 3:
            raise ParseError(f"compose entries are triples, got {triple!r}")
        after, first, result = triple
        for m in (after, first, result):
            if m not in mor_pos:
                raise ParseError(f"compose mentions unknown morphism {m!r}")
        compose[(mor_pos[after], mor_pos[first])] = mor_pos[result]

    n = len(objects)
    if "identities" in doc:
        ident_map = doc["identities"]
        try:
            identity = tuple(mor_pos[ident_map[o]] for o in objects)
        except KeyError as e:
            raise ParseError(f"identities: unknown name {e}") from None
    else:
        identity = _derive_identities(n, source, target, compose)

    if "inverses" in doc:
        inv_map = doc["inverses"]
        try:
            inverse = tuple(mor_pos[inv_map[m]] for m in mids)
        except KeyError as e:
            raise ParseError(f"inverses: unknown name {e}") from None
    else:
        inverse = _derive_inverses(source, target, compose, identity)

    return FiniteGroupoid(n, tuple(source), tuple(target), identity, inverse,
                          compose, tuple(objects), tuple(mids),
                          str(doc.get("name", "groupoid")))


def _derive_identities(n, source, target, compose):
    identity = []
    for x in range(n):
        found = None
        for e in range(len(source)):
            if source[e] != x or target[e] != x:
                continue
            if all(compose.get((m, e)) == m
                   for m in range(len(source)) if source[m] == x) and \
               all(compose.get((e, m)) == m
                   for m in range(len(source)) if target[m] == x):
                found = e
                break
        if found is None:
            raise ParseError(f"cannot derive an identity at object index {x}")
        identity.append(found)
    return tuple(identity)


def _derive_inverses(source, target, compose, identity):
    inverse = []
    for m in range(len(source)):
        found = None
        for w in range(len(source)):
            if source[w] == target[m] and target[w] == source[m] and \
               compose.get((w, m)) == identity[source[m]] and \
               compose.get((m, w)) == identity[target[m]]:
                found = w
                break
        if found is None:
            raise ParseError(f"cannot derive an inverse for morphism index {m}")
        inverse.append(found)
    return tuple(inverse)


def groupoid_to_document(g):
    """Serializable document; composition is materialized."""
    doc = {
        "name": g.name,
        "objects": [_plain(g.object_label(x)) for x in range(g.n_objects)],
        "morphisms": [{"id": _plain(g.morphism_label(m)),
                       "src": _plain(g.object_label(g.source[m])),
                       "tgt": _plain(g.object_label(g.target[m]))}
                      for m in range(g.n_morphisms)],
        "compose": sorted([_plain(g.morphism_label(m2)),
                           _plain(g.morphism_label(m1)),
                           _plain(g.morphism_label(g.compose(m2, m1)))]
                          for m2, m1 in g.composable_pairs()),
        "identities": {_plain(g.object_label(x)): _plain(g.morphism_label(g.identity[x]))
                       for x in range(g.n_objects)},
        "inverses": {_plain(g.morphism_label(m)): _plain(g.morphism_label(g.inverse(m)))
                     for m in range(g.n_morphisms)},
    }
    return doc


def _plain(label):
    """Make a label YAML/JSON-safe and hashable as a string when composite."""
    if isinstance(label, (str, int, float, bool)):
        return label
    return str(label)


# ---------------------------------------------------------------------------
# groups


def parse_group(text):
    doc = _load(text) if isinstance(text, str) else text
    return group_from_document(doc)


def group_from_document(doc):
    name = str(doc.get("name", "G"))
    if "table" in doc:
        table = doc["table"]
        try:
            grp = FiniteGroup.from_table(table, labels=doc.get("labels"), name=name)
        except Exception as e:
            raise ParseError(f"bad group table: {e}") from None
        grp.validate()
        return grp
    if "perm_generators" in doc:
        gens = doc["perm_generators"]
        if not isinstance(gens, list):
            raise ParseError("perm_generators must be a list of cycle strings")
        return FiniteGroup.from_permutations(gens, doc.get("n_points"), name=name)
    raise ParseError("group document needs 'table' or 'perm_generators'")


def group_to_document(group):
    return {
        "name": group.name,
        "table": [list(row) for row in group.table],
        "labels": [_plain(l) for l in group.labels],
    }


# ---------------------------------------------------------------------------
# finite spaces and covers


def parse_space(text):
    doc = _load(text) if isinstance(text, str) else text
    if "points" not in doc:
        raise ParseError("space document is missing 'points'")
    rels = doc.get("relations", [])
    for pair in rels:
        if len(pair) != 2:
            raise ParseError(f"relations are pairs, got {pair!r}")
    try:
        return finite_space(tuple(doc["points"]), [tuple(p) for p in rels])
    except Exception as e:
        raise ParseError(str(e)) from None


def parse_cover(text, space):
    doc = _load(text) if isinstance(text, str) else text
    if "cover" not in doc:
        raise ParseError("cover document is missing 'cover'")
    idx = {p: i for i, p in enumerate(space.points)}
    sets = []
    for entry in doc["cover"]:
        try:
            sets.append(frozenset(idx[p] for p in entry))
        except KeyError as e:
            raise ParseError(f"cover uses unknown point {e}") from None
    try:
        return OpenCover(space, tuple(sets))
    except Exception as e:
        raise ParseError(str(e)) from None


# ---------------------------------------------------------------------------
# functors


def parse_functor(text):
    doc = _load(text) if isinstance(text, str) else text
    for key in ("domain", "codomain", "object_map", "morphism_map"):
        if key not in doc:
            raise ParseError(f"functor document is missing '{key}'")
    dom = groupoid_from_document(doc["domain"])
    cod = groupoid_from_document(doc["codomain"])
    dom_obj = {dom.object_label(x): x for x in range(dom.n_objects)}
    cod_obj = {cod.object_label(x): x for x in range(cod.n_objects)}
    dom_mor = {dom.morphism_label(m): m for m in range(dom.n_morphisms)}
    cod_mor = {cod.morphism_label(m): m for m in range(cod.n_morphisms)}
    try:
        omap = [None] * dom.n_objects
        for k, v in doc["object_map"].items():
            omap[dom_obj[k]] = cod_obj[v]
        mmap = [None] * dom.n_morphisms
        for k, v in doc["morphism_map"].items():
            mmap[dom_mor[k]] = cod_mor[v]
    except KeyError as e:
        raise ParseError(f"functor maps mention unknown name {e}") from None
    if None in omap or None in mmap:
        raise ParseError("functor maps must cover every object and morphism")
    return GroupoidFunctor(dom, cod, tuple(omap), tuple(mmap),
                           str(doc.get("name", "f")))


def functor_to_document(f):
    return {
        "name": f.name,
        "object_map": {_plain(f.domain.object_label(x)):
                       _plain(f.codomain.object_label(f.on_object(x)))
                       for x in range(f.domain.n_objects)},
        "morphism_map": {_plain(f.domain.morphism_label(m)):
                         _plain(f.codomain.morphism_label(f.on_morphism(m)))
                         for m in range(f.domain.n_morphisms)},
    }


def dump_structured(payload):
    """Deterministic JSON for golden-file comparisons."""
    return json.dumps(payload, sort_keys=True, indent=2, default=str)


def dump_yaml(payload):
    return yaml.safe_dump(payload, sort_keys=False)
