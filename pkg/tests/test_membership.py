"""
Tests para services.membership
"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ff_pseudoarc.core.exceptions import (
    AsymmetricRelationError,
    NotInFamilyError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    Relation,
    RelStructure,
    antidiagonal_structure,
    enumerate_epimorphisms,
    is_epimorphism,
    linear_graph,
)
from ff_pseudoarc.services.membership import (
    all_relations,
    cover_by_antidiagonal,
    is_connected_relation,
    is_in_family_F,
    is_surjective_relation,
    is_symmetric_relation,
    near_diagonal_start,
    relation_graph,
    surjective_walk,
    symmetric_members,
)
from ff_pseudoarc.services.verifiers import PropertyVerifier


def _structure(n: int, pairs) -> RelStructure:
    graph = linear_graph("plain", n)
    return RelStructure(graph, Relation(graph, frozenset(pairs)))


class TestFamilyMembership:
    """Tests para is_in_family_F"""

    def test_example_one_is_member(self, example_one):
        """Sobreyectiva, conexa y no simetrica"""
        assert is_surjective_relation(example_one.s)
        assert is_connected_relation(example_one.s)
        assert is_in_family_F(example_one)
        assert not is_symmetric_relation(example_one.s)

    def test_example_two_is_not_connected(self, example_two):
        assert is_surjective_relation(example_two.s)
        assert not is_connected_relation(example_two.s)
        assert not is_in_family_F(example_two)

    def test_antidiagonal_is_member(self, plain2_antidiagonal):
        assert is_in_family_F(plain2_antidiagonal)

    def test_not_surjective(self):
        assert not is_in_family_F(_structure(2, {(1, 1)}))

    def test_empty_relation(self):
        assert not is_in_family_F(_structure(1, set()))

    def test_structure_without_s_raises(self):
        with pytest.raises(ValidationError):
            is_in_family_F(RelStructure(linear_graph("plain", 2)))

    def test_relation_graph_edges(self, plain2_antidiagonal):
        graph = relation_graph(plain2_antidiagonal.s)
        assert graph.edges == [((1, 2), (2, 1))]
        assert len(graph) == 2


class TestNearDiagonalStart:
    """Tests para near_diagonal_start"""

    def test_prefers_smallest_vertex(self, plain2_antidiagonal):
        assert near_diagonal_start(plain2_antidiagonal.s) == (1, 2)

    def test_diagonal_pair(self):
        relation = _structure(3, {(2, 2), (1, 3), (3, 1)}).s
        assert near_diagonal_start(relation) == (2, 2)

    def test_none_when_far_from_diagonal(self):
        relation = _structure(3, {(1, 3), (3, 1)}).s
        assert near_diagonal_start(relation) is None


class TestCoverByAntidiagonal:
    """Tests para cover_by_antidiagonal"""

    def test_cover_of_two_point_antidiagonal(self, plain2_antidiagonal):
        cover, phi = cover_by_antidiagonal(plain2_antidiagonal)
        assert cover.graph == linear_graph("plain", 8)
        assert phi.assignment == (1, 2, 2, 1, 2, 1, 1, 2)

    def test_cover_of_diagonal(self):
        structure = _structure(2, {(1, 1), (2, 2)})
        cover, phi = cover_by_antidiagonal(structure)
        assert phi.assignment == (1, 2, 2, 1, 1, 2, 2, 1)
        assert is_epimorphism(phi, cover, structure)

    def test_asymmetric_member_raises(self, example_one):
        """La imagen de una antidiagonal siempre es simetrica"""
        with pytest.raises(AsymmetricRelationError):
            cover_by_antidiagonal(example_one)

    def test_non_member_raises(self, example_two):
        with pytest.raises(NotInFamilyError):
            cover_by_antidiagonal(example_two)

    def test_all_small_symmetric_members(self):
        for member in symmetric_members(3):
            cover, phi = cover_by_antidiagonal(member)
            assert cover.graph.size % 4 == 0
            assert is_epimorphism(phi, cover, member)

    def test_walk_length_bound(self):
        """El recorrido tiene a lo sumo 2|s| - 1 pasos"""
        for member in symmetric_members(3):
            graph = relation_graph(member.s)
            walk = surjective_walk(graph, near_diagonal_start(member.s))
            assert set(walk) == set(member.s.pairs)
            assert len(walk) <= 2 * len(member.s) - 1

    @settings(
        max_examples=40,
        deadline=None,
        suppress_health_check=[HealthCheck.function_scoped_fixture],
    )
    @given(st.sets(st.sampled_from([(a, b) for a in range(1, 4) for b in range(a, 4)])))
    def test_random_symmetric_relations(self, upper):
        pairs = set(upper) | {(b, a) for a, b in upper}
        structure = _structure(3, pairs)
        if not is_in_family_F(structure):
            with pytest.raises(NotInFamilyError):
                cover_by_antidiagonal(structure)
            return
        cover, phi = cover_by_antidiagonal(structure)
        assert is_epimorphism(phi, cover, structure)


class TestEnumerationHelpers:
    """Tests para all_relations y symmetric_members"""

    def test_all_relations_count(self):
        graph = linear_graph("plain", 2)
        assert len(all_relations(graph)) == 16
        assert len(all_relations(graph, symmetric_only=True)) == 8

    def test_symmetric_relations_are_symmetric(self):
        graph = linear_graph("plain", 3)
        assert all(is_symmetric_relation(r) for r in all_relations(graph, symmetric_only=True))

    def test_symmetric_members_up_to_two(self):
        members = symmetric_members(2)
        assert len(members) == 6
        assert members[0].s.sorted_pairs() == [(1, 1)]


class TestOracleAgreement:
    """El oraculo por busqueda coincide con la enumeracion exhaustiva"""

    @pytest.mark.parametrize(
        "n,max_half", [(1, 4), (2, 4), pytest.param(3, 6, marks=pytest.mark.slow)]
    )
    def test_against_enumeration(self, n, max_half):
        graph = linear_graph("plain", n)
        for relation in all_relations(graph):
            target = RelStructure(graph, relation)
            enumerated = any(
                enumerate_epimorphisms(
                    antidiagonal_structure(linear_graph("plain", 2 * j)), target
                )
                for j in range(1, max_half + 1)
            )
            found = PropertyVerifier.antidiagonal_cover_exists(relation, max_half)
            assert found == enumerated, relation

    def test_oracle_matches_symmetric_members(self):
        graph = linear_graph("plain", 3)
        for relation in all_relations(graph):
            structure = RelStructure(graph, relation)
            expected = is_in_family_F(structure) and is_symmetric_relation(relation)
            found = PropertyVerifier.antidiagonal_cover_exists(relation, 4 * max(len(relation), 1))
            assert found == expected
