import random
from fractions import Fraction

import pytest

from tdlcinv.euler import HaarValue
from tdlcinv.groups import FiniteGroup, Hom
from tdlcinv.graphs_of_groups import (
    NotHomomorphism,
    PiRepresentation,
    PiWord,
    aut_tree_chi,
    build_gog,
    cycle_index_ratio_products,
    load_gog,
)
from tdlcinv.serre_graphs import SerreGraph

from fuzzers import random_gog, trivial_hom


def edge_of_groups(group_u, group_w, edge_group=None, embed_to=None, embed_from=None):
    """Single geometric edge u -- w."""
    edge_group = edge_group or FiniteGroup.trivial()
    return build_gog(
        ["u", "w"],
        [("e", "u", "w")],
        {"u": group_u, "w": group_w},
        {"e": edge_group},
        {
            ("e", "+"): embed_to or trivial_hom(group_w),
            ("e", "-"): embed_from or trivial_hom(group_u),
        },
    )


def loop_of_groups(vertex_group, edge_group=None, embed_to=None, embed_from=None):
    """Single loop at one vertex."""
    edge_group = edge_group or FiniteGroup.trivial()
    return build_gog(
        ["v"],
        [("e", "v", "v")],
        {"v": vertex_group},
        {"e": edge_group},
        {
            ("e", "+"): embed_to or trivial_hom(vertex_group),
            ("e", "-"): embed_from or trivial_hom(vertex_group),
        },
    )


def single_vertex(group):
    return build_gog(["v"], [], {"v": group}, {}, {})


def c2_star_c3():
    return edge_of_groups(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3))


def c4_loop_over_c2():
    c4, c2 = FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)
    embed = Hom.from_generator_images(c2, c4, [1], [2])  # the unique index-2 embedding
    return loop_of_groups(c4, c2, embed_to=embed, embed_from=embed)


def test_validate_reports_indices():
    indices = c2_star_c3().validate()
    assert indices[("e", "+")] == 3  # edge group trivial inside C3
    assert indices[("e", "-")] == 2


def test_validate_loop_c4_over_c2():
    indices = c4_loop_over_c2().validate()
    assert indices[("e", "+")] == indices[("e", "-")] == 2


def test_validate_rejects_non_homomorphism():
    c2, c4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(4)
    bad = Hom(c2, c4, [0, 1])  # generator of order 2 to element of order 4
    gog = loop_of_groups(c4, c2, embed_to=bad, embed_from=Hom.from_generator_images(c2, c4, [1], [2]))
    with pytest.raises(NotHomomorphism):
        gog.validate()


def test_unimodularity_tree_always_true():
    assert c2_star_c3().unimodularity_check()
    assert single_vertex(FiniteGroup.cyclic(5)).unimodularity_check()


def test_unimodularity_loop_equal_indices():
    assert c4_loop_over_c2().unimodularity_check()


def test_cycle_ratio_products_detect_ascending_datum():
    # declared indices in the profinite style: one direction index 2, the
    # other index 1 around a loop; the cycle product is 2, not 1
    graph = SerreGraph.from_geometric(["v"], [("v", "v")])
    products = cycle_index_ratio_products(graph, {0: 2, 1: 1})
    assert products == [Fraction(2)]
    balanced = cycle_index_ratio_products(graph, {0: 2, 1: 2})
    assert balanced == [Fraction(1)]


def test_euler_characteristic_values():
    assert c2_star_c3().euler_characteristic() == HaarValue(Fraction(-1, 6), "1")
    z_loop = loop_of_groups(FiniteGroup.trivial())
    assert z_loop.euler_characteristic() == HaarValue(0, "1")
    for n in (1, 2, 3, 7):
        gog = single_vertex(FiniteGroup.cyclic(n))
        assert gog.euler_characteristic() == HaarValue(Fraction(1, n), "1")


def test_bass_serre_ball_c2_star_c3():
    ball = c2_star_c3().bass_serre_ball(2)
    assert ball.graph_invariants()[2]  # a tree
    # base vertex sits at C2: degree 2, neighbors have degree 3
    root = ball.vertices[0]
    assert ball.degree(root) == 2
    depth_one = [v for v in ball.vertices if len(v) == 1]
    assert all(ball.degree(v) == 3 for v in depth_one)


def test_bass_serre_ball_z_is_a_path():
    for radius in (0, 1, 3):
        ball = loop_of_groups(FiniteGroup.trivial()).bass_serre_ball(radius)
        assert len(ball.vertices) == 2 * radius + 1
        assert ball.graph_invariants() == (0, 1, True)


def test_bass_serre_ball_single_vertex():
    ball = single_vertex(FiniteGroup.cyclic(3)).bass_serre_ball(4)
    assert len(ball.vertices) == 1


def test_bass_serre_degrees_match_indices():
    # loop C4 over C2: each tree vertex has degree 2 + 2 = 4
    ball = c4_loop_over_c2().bass_serre_ball(2)
    assert ball.graph_invariants()[2]
    inner = [v for v in ball.vertices if len(v) < 2]
    assert all(ball.degree(v) == 4 for v in inner)


def test_fuzzed_instances_unimodular_and_trees():
    rng = random.Random(17)
    for _ in range(30):
        gog = random_gog(rng, allow_surjective=True)
        assert gog.unimodularity_check()
        ball = gog.bass_serre_ball(rng.randint(0, 2))
        assert ball.graph_invariants()[2]


def test_fuzzed_noncompact_chi_nonpositive():
    # no embedding is surjective and there is at least one edge, so the
    # fundamental group is infinite and the characteristic cannot be positive
    rng = random.Random(23)
    done = 0
    while done < 40:
        gog = random_gog(rng, allow_surjective=False)
        if not gog.graph.edges:
            continue
        assert gog.euler_characteristic().coeff <= 0
        done += 1


def test_ball_degree_formula_on_fuzzed_instances():
    rng = random.Random(29)
    for _ in range(10):
        gog = random_gog(rng, allow_surjective=True)
        ball = gog.bass_serre_ball(2)
        radius_positions = {v: len(v) for v in ball.vertices}
        for v in ball.vertices:
            if radius_positions[v] >= 2:
                continue  # frontier vertices are truncated
            at = gog._word_end_vertex(v)
            expected = sum(
                gog.vertex_groups[at].order // gog.edge_groups[e].order
                for e in gog.graph.star(at)
            )
            assert ball.degree(v) == expected


def test_aut_tree_chi_values():
    assert aut_tree_chi(2) == HaarValue(Fraction(-1, 3), "G_e")
    assert aut_tree_chi(1) == HaarValue(0, "G_e")
    for d in range(1, 21):
        assert aut_tree_chi(d).coeff == Fraction(1 - d, 1 + d)


def test_pi_word_orders_in_free_product():
    gog = c2_star_c3()
    a = PiWord.vertex_element(gog, "u", 1)  # order 2
    b = PiWord.vertex_element(gog, "w", 1)  # order 3
    assert (a * a).is_identity()
    assert not (b * b).is_identity()
    assert (b * b * b).is_identity()
    ab = a * b
    assert not (ab * ab).is_identity()  # infinite order in the free product


def test_pi_word_stable_letter_infinite_order():
    gog = loop_of_groups(FiniteGroup.trivial())
    t = PiWord.stable_letter(gog, ("e", "+"))
    power = t
    for _ in range(5):
        assert not power.is_identity()
        power = power * t
    assert (t * t.inverse()).is_identity()


def test_pi_word_hnn_relation():
    # loop C4 over C2 embedded by the same map on both sides: the stable
    # letter commutes with the image of C2
    gog = c4_loop_over_c2()
    t = PiWord.stable_letter(gog, ("e", "+"))
    image = PiWord.vertex_element(gog, "v", 2)
    left = t * image
    right = image * t
    assert left == right


def test_pi_word_random_products_cancel():
    rng = random.Random(31)
    gogs = [c2_star_c3(), c4_loop_over_c2(), loop_of_groups(FiniteGroup.trivial())]
    for _ in range(10_000):
        gog = rng.choice(gogs)
        letters = []
        for _ in range(rng.randint(1, 6)):
            if gog.stable_letters() and rng.random() < 0.4:
                letters.append(PiWord.stable_letter(gog, rng.choice(gog.stable_letters())))
            else:
                v = rng.choice(list(gog.graph.vertices))
                group = gog.vertex_groups[v]
                letters.append(PiWord.vertex_element(gog, v, rng.randrange(group.order)))
        word = PiWord.identity(gog)
        for letter in letters:
            word = word * letter
        back = PiWord.identity(gog)
        for letter in reversed(letters):
            back = back * letter.inverse()
        assert (word * back).is_identity()
        assert word.inverse() == back


def test_tree_action_cohomology_trivial_coefficients():
    gog = c2_star_c3()
    assert gog.tree_action_cohomology(PiRepresentation.trivial(gog)) == (1, 0)
    z_loop = loop_of_groups(FiniteGroup.trivial())
    assert z_loop.tree_action_cohomology(PiRepresentation.trivial(z_loop)) == (1, 1)


def test_tree_action_cohomology_trivial_matches_cycle_rank():
    rng = random.Random(37)
    for _ in range(20):
        gog = random_gog(rng, allow_surjective=True)
        h0, h1 = gog.tree_action_cohomology(PiRepresentation.trivial(gog))
        assert h0 == 1
        assert h1 == gog.graph.graph_invariants()[0]


def test_tree_action_cohomology_sign_representation():
    # C2 * C2 with both generators acting by -1: no invariants, one-dim H^1
    c2 = FiniteGroup.cyclic(2)
    gog = edge_of_groups(c2, c2)
    sign = PiRepresentation(
        1,
        {"u": [[[1]], [[-1]]], "w": [[[1]], [[-1]]]},
        {},
    )
    assert gog.tree_action_cohomology(sign) == (0, 1)


def test_representation_validation_catches_singular_stable_letter():
    from tdlcinv.graphs_of_groups import NotInvertible

    gog = c4_loop_over_c2()
    bad = PiRepresentation(
        1,
        {"v": [[[1]], [[-1]], [[1]], [[-1]]]},
        {("e", "+"): [[0]]},  # singular stable letter
    )
    with pytest.raises(NotInvertible):
        gog.tree_action_cohomology(bad)


def test_representation_validation_catches_relation_violation():
    from tdlcinv.graphs_of_groups import RelationViolated

    c2 = FiniteGroup.cyclic(2)
    ident = Hom.identity_map(c2)
    gog = edge_of_groups(c2, c2, edge_group=c2, embed_to=ident, embed_from=ident)
    # both embeddings are the identity but the two vertex actions disagree
    bad = PiRepresentation(1, {"u": [[[1]], [[-1]]], "w": [[[1]], [[1]]]}, {})
    with pytest.raises(RelationViolated):
        gog.tree_action_cohomology(bad)


def test_tree_action_cohomology_two_dimensional():
    # u swaps coordinates, w negates: invariants are the diagonal line on
    # the u side and zero on the w side; the trivial edge space is Q^2, so
    # the difference map has rank one and the frozen answer is (0, 1)
    c2 = FiniteGroup.cyclic(2)
    gog = edge_of_groups(c2, c2)
    rep = PiRepresentation(
        2,
        {
            "u": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
            "w": [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]],
        },
        {},
    )
    assert gog.tree_action_cohomology(rep) == (0, 1)


def test_disconnected_graph_rejected():
    from tdlcinv.graphs_of_groups import Disconnected

    c2 = FiniteGroup.cyclic(2)
    with pytest.raises(Disconnected):
        build_gog(["u", "w"], [], {"u": c2, "w": c2}, {}, {})


def test_load_gog_json():
    gog = load_gog(
        {
            "vertices": ["u", "w"],
            "vertex_groups": {"u": "C2", "w": "C3"},
            "edges": [{"id": "e", "from": "u", "to": "w", "group": "1"}],
        }
    )
    assert gog.euler_characteristic().coeff == Fraction(-1, 6)


def test_load_gog_with_explicit_embedding():
    gog = load_gog(
        {
            "vertices": ["v"],
            "vertex_groups": {"v": "C4"},
            "edges": [
                {
                    "id": "e",
                    "from": "v",
                    "to": "v",
                    "group": "C2",
                    "embed_to": {"gens": [1], "images": [2]},
                    "embed_from": {"gens": [1], "images": [2]},
                }
            ],
        }
    )
    assert gog.unimodularity_check()
    assert gog.euler_characteristic().coeff == Fraction(1, 4) - Fraction(1, 2)
