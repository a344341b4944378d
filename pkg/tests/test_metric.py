import itertools
import random

import pytest

from gaelsem.concepts import (
    ConvexSet,
    DEFAULT_SCHEMA,
    TASTE_VERTICES,
    schema_property,
)
from gaelsem.metric import (
    MetricError,
    concept_distance,
    directed_hausdorff,
    hausdorff,
    point_to_hull_l1,
    ranking_has_tie,
    translate_noun,
    tree_set_distance,
)

TEMP = schema_property("temperature")
COLOUR = schema_property("colour")
TASTE = schema_property("taste")


def test_two_points_one_dim():
    assert hausdorff(ConvexSet.hull([(0.7,)]), ConvexSet.hull([(0.8,)]), TEMP) \
        == pytest.approx(0.1)


def test_full_interval_vs_point():
    assert hausdorff(ConvexSet.full_set(), ConvexSet.hull([(0.7,)]), TEMP) \
        == pytest.approx(0.7)
    assert hausdorff(ConvexSet.full_set(), ConvexSet.hull([(0.1,)]), TEMP) \
        == pytest.approx(0.9)


def test_identity_distance():
    sets = [ConvexSet.full_set(), ConvexSet.hull([(0.3,), (0.9,)]),
            ConvexSet.hull([TASTE_VERTICES["Bitter"], TASTE_VERTICES["Sweet"]])]
    props = [TEMP, TEMP, TASTE]
    for cset, prop in zip(sets, props):
        assert hausdorff(cset, cset, prop) == pytest.approx(0.0, abs=1e-9)


def test_point_to_hull_interior_and_exterior():
    gens = [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)]
    assert point_to_hull_l1((0.25, 0.25, 0.0), gens) == pytest.approx(0.0, abs=1e-9)
    assert point_to_hull_l1((1.0, 1.0, 0.0), gens) == pytest.approx(1.0, abs=1e-9)
    assert point_to_hull_l1((0.0, 0.0, 1.0), gens) == pytest.approx(1.0, abs=1e-9)


def _grid_hull_points(gens, step):
    """Dense grid over the hull; boxes gridded directly, else by weights."""
    import numpy as np

    gens = np.asarray([tuple(g) for g in gens], dtype=float)
    n_gen, dim = gens.shape
    lo, hi = gens.min(axis=0), gens.max(axis=0)
    corner_count = 2 ** dim
    corners = {tuple(lo[d] if b else hi[d] for d, b in enumerate(bits))
               for bits in np.ndindex(*([2] * dim))}
    if n_gen == corner_count and {tuple(g) for g in gens} == corners:
        axes = [np.arange(lo[d], hi[d] + step / 2, step) for d in range(dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)
    steps = int(round(1 / step))
    weight_sets = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            weight_sets.append(prefix + [remaining])
            return
        for w in range(remaining + 1):
            rec(prefix + [w], remaining - w, slots - 1)

    rec([], steps, n_gen)
    weights = np.asarray(weight_sets, dtype=float) / steps
    return weights @ gens


def _grid_directed(xgens, ygens, step=0.05):
    import numpy as np

    xs = _grid_hull_points(xgens, step)
    ys = _grid_hull_points(ygens, step)
    best = np.full(len(xs), np.inf)
    for chunk in np.array_split(ys, max(1, len(ys) // 2048)):
        dists = np.abs(xs[:, None, :] - chunk[None, :, :]).sum(axis=2).min(axis=1)
        best = np.minimum(best, dists)
    return float(best.max())


@pytest.mark.parametrize("xgens,ygens", [
    ([(0.0,), (1.0,)], [(0.7,)]),
    ([(0.2,), (0.4,)], [(0.5,), (0.9,)]),
    ([(0.0,), (0.3,)], [(0.0,), (1.0,)]),
])
def test_grid_oracle_one_dim(xgens, ygens):
    grid = max(_grid_directed(xgens, ygens, 0.01), _grid_directed(ygens, xgens, 0.01))
    exact = max(directed_hausdorff(xgens, ygens), directed_hausdorff(ygens, xgens))
    assert exact == pytest.approx(grid, abs=0.02)


def test_grid_oracle_product_space_sums_components():
    """On a product of 1-D properties the joint directed distance is the sum."""
    x1, y1 = [(0.0,), (1.0,)], [(0.7,)]
    x2, y2 = [(0.2,)], [(0.5,), (0.6,)]
    joint_x = [(a[0], b[0]) for a in x1 for b in x2]
    joint_y = [(a[0], b[0]) for a in y1 for b in y2]
    joint = _grid_directed(joint_x, joint_y, 0.01)
    split = directed_hausdorff(x1, y1) + directed_hausdorff(x2, y2)
    assert split == pytest.approx(joint, abs=0.02)


def test_grid_oracle_colour_hulls():
    red, green = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
    orange = (1.0, 165 / 255, 0.0)
    brown = (0.6, 76 / 255, 0.0)
    apple = [red, green]
    jupiter = [orange, brown, red]
    exact = max(directed_hausdorff(apple, jupiter), directed_hausdorff(jupiter, apple))
    grid = max(_grid_directed(apple, jupiter, 0.02), _grid_directed(jupiter, apple, 0.02))
    assert exact == pytest.approx(grid, abs=0.02)


def test_grid_oracle_taste_tetrahedron():
    hull = [TASTE_VERTICES["Bitter"], TASTE_VERTICES["Sweet"]]
    full = list(TASTE_VERTICES.values())
    exact = max(directed_hausdorff(hull, full), directed_hausdorff(full, hull))
    grid = max(_grid_directed(hull, full, 0.05), _grid_directed(full, hull, 0.05))
    assert exact == pytest.approx(grid, abs=0.1)


def test_tree_set_distance_examples(concepts_en):
    d4 = concepts_en["Apple"].tree_nodes
    d2 = concepts_en["Jupiter"].tree_nodes
    d1 = concepts_en["Venus"].tree_nodes
    assert tree_set_distance(d4, d2) == 4
    assert tree_set_distance(d4, d4) == 0
    assert tree_set_distance(frozenset({"e0"}), d1) == 12


def test_tree_set_distance_rejects_foreign_nodes():
    with pytest.raises(MetricError):
        tree_set_distance(frozenset({"e0"}), frozenset({"zz"}), universe={"e0"})


def test_published_distances(concepts_en, concepts_ga):
    jug = concept_distance(concepts_en["Jupiter"], concepts_ga["Iúpatar"])
    assert jug.total == pytest.approx(0.3, abs=1e-9)
    assert jug.tree_distance == 0
    assert jug.per_property["dimension"] == pytest.approx(0.1, abs=1e-9)
    assert jug.per_property["intensity"] == pytest.approx(0.1, abs=1e-9)
    assert jug.per_property["temperature"] == pytest.approx(0.1, abs=1e-9)
    assert concept_distance(concepts_en["Apple"], concepts_ga["Úll"]).total \
        == pytest.approx(0.0, abs=1e-9)
    for concept in concepts_en.values():
        assert concept_distance(concept, concept).total == pytest.approx(0.0, abs=1e-9)


def test_report_total_is_sum(concepts_en, concepts_ga):
    rep = concept_distance(concepts_en["Mars"], concepts_ga["Iúpatar"])
    assert rep.total == pytest.approx(sum(rep.per_property.values()) + rep.tree_distance)


def test_translation_five_of_five(concepts_en, concepts_ga):
    targets = {"Véineas": "Venus", "Iúpatar": "Jupiter", "Mars": "Mars",
               "Úll": "Apple", "Grian": "Sun"}
    for query, want in targets.items():
        ranked = translate_noun(concepts_ga[query], concepts_en)
        assert ranked[0][0] == want
    ranked = translate_noun(concepts_ga["Grian"], concepts_en)
    assert ranked[0][1].total == pytest.approx(0.25, abs=1e-9)


def test_translation_identical_candidate_first(concepts_en):
    ranked = translate_noun(concepts_en["Mars"], concepts_en)
    assert ranked[0][0] == "Mars"
    assert ranked[0][1].total == pytest.approx(0.0, abs=1e-9)
    assert not ranking_has_tie(ranked)


def test_translation_requires_candidates(concepts_en):
    with pytest.raises(MetricError):
        translate_noun(concepts_en["Mars"], {})


def _random_concept(rng):
    from gaelsem.concepts import Concept

    properties = {}
    for prop in DEFAULT_SCHEMA:
        roll = rng.random()
        if roll < 0.4:
            properties[prop.name] = ConvexSet.full_set()
        else:
            count = rng.randint(1, min(3, len(prop.domain_generators)))
            gens = []
            for _ in range(count):
                weights = [rng.random() for _ in prop.domain_generators]
                total = sum(weights)
                point = tuple(
                    sum(w / total * g[d] for w, g in zip(weights, prop.domain_generators))
                    for d in range(prop.dimension))
                gens.append(point)
            properties[prop.name] = ConvexSet.hull(gens)
    # random up-closed tree set over the fixture tree
    from gaelsem import resources

    tree = resources.load_concept_resources("en").tree
    nodes = {"e0"}
    for node in rng.sample(list(tree.nodes), rng.randint(0, 8)):
        nodes.update(tree.path_to_root(node))
    return Concept("rand", "en", properties, frozenset(nodes))


def test_metric_axioms_on_fixture_pairs(concepts_en, concepts_ga):
    universe = list(concepts_en.values()) + list(concepts_ga.values())
    n = len(universe)
    dist = [[0.0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        d_ab = concept_distance(universe[i], universe[j]).total
        d_ba = concept_distance(universe[j], universe[i]).total
        assert d_ab == pytest.approx(d_ba, abs=1e-9)
        assert d_ab >= 0
        dist[i][j] = dist[j][i] = d_ab
    for a, b, c in itertools.combinations(range(n), 3):
        assert dist[a][c] <= dist[a][b] + dist[b][c] + 1e-7


def test_metric_axioms_on_random_concepts():
    rng = random.Random(23)
    concepts = [_random_concept(rng) for _ in range(100)]
    pairs = [(rng.randrange(100), rng.randrange(100)) for _ in range(40)]
    for i, j in pairs:
        d_ij = concept_distance(concepts[i], concepts[j]).total
        d_ji = concept_distance(concepts[j], concepts[i]).total
        assert d_ij == pytest.approx(d_ji, abs=1e-7)
    triples = [(rng.randrange(100), rng.randrange(100), rng.randrange(100))
               for _ in range(25)]
    for i, j, k in triples:
        ab = concept_distance(concepts[i], concepts[j]).total
        bc = concept_distance(concepts[j], concepts[k]).total
        ac = concept_distance(concepts[i], concepts[k]).total
        assert ac <= ab + bc + 1e-6


def test_zero_distance_implies_equal_sets(concepts_en, concepts_ga):
    universe = list(concepts_en.items()) + [("ga:" + k, v) for k, v in concepts_ga.items()]
    for (na, ca), (nb, cb) in itertools.combinations(universe, 2):
        if concept_distance(ca, cb).total < 1e-12:
            assert ca.tree_nodes == cb.tree_nodes, (na, nb)
            for prop in ca.properties:
                assert hausdorff(ca.properties[prop], cb.properties[prop],
                                 schema_property(prop)) == pytest.approx(0.0, abs=1e-12)


def test_concept_distance_schema_mismatch(concepts_en):
    from gaelsem.concepts import Concept

    apple = concepts_en["Apple"]
    trimmed = Concept("odd", "en",
                      {k: v for k, v in apple.properties.items() if k != "taste"},
                      apple.tree_nodes)
    with pytest.raises(MetricError):
        concept_distance(apple, trimmed)
