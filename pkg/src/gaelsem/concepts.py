"""Conceptual spaces: property schema, descriptor tables, hypernym trees.

A noun's concept is one convex set per schema property (FULL standing for
the whole property domain when nothing was said about it) together with an
up-closed set of hypernym-tree nodes.  Concepts are built from descriptors:
adjectives looked up in a per-language value table and co-occurring nouns
located in the tree.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .corpus import CorpusDoc


class ConceptError(Exception):
    pass


TASTE_VERTICES = {
    "Salt": (1.0, 0.0, 0.0),
    "Sour": (-0.5, -math.sqrt(3) / 2, 0.0),
    "Bitter": (-0.5, math.sqrt(3) / 2, 0.0),
    "Sweet": (0.0, 0.0, math.sqrt(2)),
}

_CUBE_CORNERS = tuple(
    (float(x), float(y), float(z)) for x in (0, 1) for y in (0, 1) for z in (0, 1)
)


@dataclass(frozen=True)
class Property:
    name: str
    dimension: int
    domain_generators: tuple  # vertices whose hull is the whole domain


#: The default schema: four ordering scales, sight (colour, intensity),
#: savour (the taste tetrahedron) and sensation (temperature, density, mass,
#: texture), 15 numeric dimensions in total.
DEFAULT_SCHEMA: tuple[Property, ...] = (
    Property("dimension", 1, ((0.0,), (1.0,))),
    Property("age", 1, ((0.0,), (1.0,))),
    Property("value", 1, ((0.0,), (1.0,))),
    Property("speed", 1, ((0.0,), (1.0,))),
    Property("colour", 3, _CUBE_CORNERS),
    Property("intensity", 1, ((0.0,), (1.0,))),
    Property("taste", 3, tuple(TASTE_VERTICES.values())),
    Property("temperature", 1, ((0.0,), (1.0,))),
    Property("density", 1, ((0.0,), (1.0,))),
    Property("mass", 1, ((0.0,), (1.0,))),
    Property("texture", 1, ((0.0,), (1.0,))),
)


def schema_property(name: str, schema=DEFAULT_SCHEMA) -> Property:
    for prop in schema:
        if prop.name == name:
            return prop
    raise ConceptError("unknown property %r" % name)


@dataclass(frozen=True)
class ConvexSet:
    """Convex hull of finitely many generator points; FULL = whole domain."""
    generators: tuple = ()
    full: bool = False

    @staticmethod
    def full_set() -> "ConvexSet":
        return ConvexSet(full=True)

    @staticmethod
    def hull(points) -> "ConvexSet":
        unique = []
        for p in points:
            tp = tuple(float(x) for x in p)
            if tp not in unique:
                unique.append(tp)
        if not unique:
            raise ConceptError("a non-FULL convex set needs at least one generator")
        return ConvexSet(generators=tuple(unique))

    def resolved(self, prop: Property) -> tuple:
        """Generator points, with FULL expanded to the domain's vertices."""
        return prop.domain_generators if self.full else self.generators

    def same_as(self, other: "ConvexSet", places: int = 9) -> bool:
        if self.full or other.full:
            return self.full == other.full
        def canon(gen):
            return {tuple(round(x, places) for x in p) for p in gen}
        return canon(self.generators) == canon(other.generators)


_RGB = re.compile(r"rgb\((\d+),\s*(\d+),\s*(\d+)\)")


class AdjectiveTable:
    """adjective -> (property, point); loaded from one mapping per line.

    Line format: adjective, property name, then the point, tab separated.
    Points are plain numbers, an ``rgb(r,g,b)`` triple on the 8-bit scale
    (divided by 255 onto the unit cube), or a ``@Vertex`` reference to a
    taste tetrahedron corner.
    """

    def __init__(self, language: str, entries: Optional[dict] = None,
                 schema=DEFAULT_SCHEMA):
        self.language = language
        self.schema = schema
        self.entries: dict[str, tuple[str, tuple]] = entries or {}
        self.display: dict[str, str] = {k: k for k in self.entries}

    def add(self, adjective: str, prop_name: str, point):
        prop = schema_property(prop_name, self.schema)
        pt = tuple(float(x) for x in point)
        if len(pt) != prop.dimension:
            raise ConceptError(
                "%r: point of dimension %d for property %s (needs %d)"
                % (adjective, len(pt), prop_name, prop.dimension))
        self.entries[adjective.lower()] = (prop_name, pt)
        self.display[adjective.lower()] = adjective

    def get(self, adjective: str):
        return self.entries.get(adjective.lower())

    def phrases(self):
        return list(self.entries)

    def canonical(self, adjective: str) -> str:
        return self.display.get(adjective.lower(), adjective)


def load_adjective_table(path, language: str, schema=DEFAULT_SCHEMA) -> AdjectiveTable:
    table = AdjectiveTable(language, schema=schema)
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t") if p.strip()]
        if len(parts) != 3:
            raise ConceptError("bad adjective table line %r in %s" % (line, path))
        adjective, prop_name, value = parts
        m = _RGB.fullmatch(value)
        if m:
            point = tuple(int(g) / 255 for g in m.groups())
        elif value.startswith("@"):
            vertex = value[1:]
            if vertex not in TASTE_VERTICES:
                raise ConceptError("unknown taste vertex %r" % vertex)
            point = TASTE_VERTICES[vertex]
        else:
            point = tuple(float(v) for v in value.split())
        table.add(adjective, prop_name, point)
    return table


@dataclass
class TreeNode:
    node_id: str
    parent: Optional[str]
    label: str


class HypernymTree:
    """Rooted tree of synset nodes; joins are least common ancestors."""

    def __init__(self, nodes: Sequence[TreeNode], language: str = ""):
        self.language = language
        self.nodes = {n.node_id: n for n in nodes}
        roots = [n.node_id for n in nodes if n.parent is None]
        if len(roots) != 1:
            raise ConceptError("tree must have exactly one root, found %r" % roots)
        self.root = roots[0]
        self.by_label = {n.label.lower(): n.node_id for n in nodes}
        for n in nodes:
            if n.parent is not None and n.parent not in self.nodes:
                raise ConceptError("node %s has unknown parent %s" % (n.node_id, n.parent))
        # acyclicity: every node must reach the root
        for n in nodes:
            self.path_to_root(n.node_id)

    def path_to_root(self, node_id: str) -> list[str]:
        if node_id not in self.nodes:
            raise ConceptError("unknown tree node %r" % node_id)
        path = []
        seen = set()
        cur: Optional[str] = node_id
        while cur is not None:
            if cur in seen:
                raise ConceptError("cycle through node %s" % cur)
            seen.add(cur)
            path.append(cur)
            cur = self.nodes[cur].parent
        return path

    def lookup_label(self, label: str) -> Optional[str]:
        return self.by_label.get(label.lower())

    def join(self, node_ids: Sequence[str]) -> str:
        """Least common ancestor (the semilattice join of the nodes)."""
        if not node_ids:
            raise ConceptError("join of no nodes")
        paths = [list(reversed(self.path_to_root(n))) for n in node_ids]
        deepest = None
        for level in range(min(len(p) for p in paths)):
            step = {p[level] for p in paths}
            if len(step) == 1:
                deepest = step.pop()
            else:
                break
        if deepest is None:
            raise ConceptError("nodes share no ancestor")
        return deepest

    def structure_signature(self):
        return sorted((nid, n.parent) for nid, n in self.nodes.items())


def load_tree(path, language: str = "") -> HypernymTree:
    """One node per line: ``id parent-id label...`` with ``-`` for the root."""
    nodes = []
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) < 3:
            raise ConceptError("bad tree line %r in %s" % (line, path))
        node_id, parent, label = parts
        nodes.append(TreeNode(node_id, None if parent == "-" else parent, label))
    return HypernymTree(nodes, language)


def check_tree_alignment(a: HypernymTree, b: HypernymTree):
    """Two language trees must declare the identical node-id structure."""
    if a.structure_signature() != b.structure_signature():
        raise ConceptError("hypernym trees are not aligned (node ids/parents differ)")


@dataclass
class Concept:
    name: str
    language: str
    properties: dict[str, ConvexSet]
    tree_nodes: frozenset[str]
    dropped_adjectives: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        props = {}
        for name, cset in self.properties.items():
            if cset.full:
                props[name] = {"full": True}
            else:
                props[name] = {"full": False,
                               "generators": [list(p) for p in cset.generators]}
        payload = {
            "name": self.name,
            "language": self.language,
            "properties": props,
            "tree_nodes": sorted(self.tree_nodes, key=_node_sort_key),
            "dropped_adjectives": self.dropped_adjectives,
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)

    @staticmethod
    def from_json(text: str) -> "Concept":
        payload = json.loads(text)
        props = {}
        for name, spec in payload["properties"].items():
            if spec.get("full"):
                props[name] = ConvexSet.full_set()
            else:
                props[name] = ConvexSet.hull(spec["generators"])
        return Concept(
            name=payload["name"],
            language=payload.get("language", ""),
            properties=props,
            tree_nodes=frozenset(payload["tree_nodes"]),
            dropped_adjectives=payload.get("dropped_adjectives", []),
        )


def _node_sort_key(node_id: str):
    digits = "".join(ch for ch in node_id if ch.isdigit())
    return (int(digits) if digits else 0, node_id)


#: a descriptor this close after a negating word is not asserted of the noun
_NEGATORS = {"not", "ní", "níl"}
_NEGATION_WINDOW = 2


def extract_descriptors(doc: CorpusDoc, noun: str, table: AdjectiveTable,
                        tree: HypernymTree):
    """Words co-sentential with the noun, split into adjectives and nouns.

    Adjective phrases are matched against the value table longest-first
    (so "very hot" wins over "hot" where both could match); noun descriptors
    are tokens carrying a tree label.  Descriptors inside a short window
    after a negator ("a star, not a planet") are skipped.  The noun itself
    is excluded and duplicates are removed, keeping first-seen order.
    """
    noun_low = noun.lower()
    adjectives: list[str] = []
    nouns: list[str] = []
    phrases = sorted(table.phrases(), key=lambda p: -len(p.split()))
    for sent in doc.sentences:
        keys = [t.key.lower() for t in sent]
        if noun_low not in keys:
            continue

        def negated(pos):
            lo = max(0, pos - _NEGATION_WINDOW)
            return any(k in _NEGATORS for k in keys[lo:pos])

        i = 0
        while i < len(keys):
            hit = None
            for phrase in phrases:
                parts = phrase.split()
                if keys[i:i + len(parts)] == parts:
                    hit = phrase
                    break
            if hit is not None:
                shown = table.canonical(hit)
                if shown not in adjectives and not negated(i):
                    adjectives.append(shown)
                i += len(hit.split())
                continue
            key = keys[i]
            if key != noun_low and not negated(i) and tree.lookup_label(key) is not None:
                label = tree.nodes[tree.lookup_label(key)].label
                if label not in nouns:
                    nouns.append(label)
            i += 1
    if not adjectives and not nouns:
        import warnings

        warnings.warn("no descriptors found for %r" % noun)
    return adjectives, nouns


def build_concept(name: str, adjectives: Sequence[str], noun_descriptors: Sequence[str],
                  table: AdjectiveTable, tree: HypernymTree,
                  schema=DEFAULT_SCHEMA) -> Concept:
    """Hull the table points per property; union root paths for the tree set.

    Adjectives missing from the value table are dropped (and recorded);
    properties nobody mentioned stay FULL.  The tree set always contains the
    root, is closed under parents by construction, and noun descriptors
    without a tree node are ignored.
    """
    points: dict[str, list] = {}
    dropped = []
    for adjective in adjectives:
        entry = table.get(adjective)
        if entry is None:
            dropped.append(adjective)
            continue
        prop_name, point = entry
        points.setdefault(prop_name, []).append(point)
    properties = {}
    for prop in schema:
        if prop.name in points:
            properties[prop.name] = ConvexSet.hull(points[prop.name])
        else:
            properties[prop.name] = ConvexSet.full_set()
    nodes = {tree.root}
    for label in noun_descriptors:
        node = tree.lookup_label(label)
        if node is not None:
            nodes.update(tree.path_to_root(node))
    return Concept(name=name, language=table.language, properties=properties,
                   tree_nodes=frozenset(nodes), dropped_adjectives=dropped)
