"""
Tests para services.tower
"""

import random

import pytest

from ff_pseudoarc.core.exceptions import (
    AsymmetricRelationError,
    NotInFamilyError,
    ValidationError,
)
from ff_pseudoarc.core.structures import (
    RelStructure,
    StructureMap,
    antidiagonal_structure,
    is_epimorphism,
    linear_graph,
)
from ff_pseudoarc.services.tower import (
    Tower,
    check_tower,
    extend_tower,
    new_tower,
    random_extensions,
)


class TestTowerConstruction:
    """Tests para new_tower y extend_tower"""

    def test_new_tower(self):
        tower = new_tower()
        assert tower.height == 1
        assert tower.top.graph == linear_graph("signed", 1)
        assert tower.flips[0](1) == -1
        assert check_tower(tower).passed

    def test_extend_with_antidiagonal(self, plain2_antidiagonal):
        tower = extend_tower(new_tower(), plain2_antidiagonal)
        assert tower.height == 2
        assert len(tower.bonds) == 1
        target = tower.targets[0]
        assert target.level == 1
        assert is_epimorphism(target.cover, tower.levels[1], plain2_antidiagonal)
        assert check_tower(tower).passed

    def test_repr(self, plain2_antidiagonal):
        tower = extend_tower(new_tower(), plain2_antidiagonal)
        assert repr(tower) == "Tower([signed(1), signed(1)], targets=1)"

    def test_levels_grow_monotonically(self):
        tower = new_tower()
        for k in (3, 1, 5):
            tower = extend_tower(tower, antidiagonal_structure(linear_graph("plain", k)))
        sizes = [level.graph.size for level in tower.levels]
        assert sizes == sorted(sizes)
        assert check_tower(tower).passed

    def test_asymmetric_target(self, example_one):
        with pytest.raises(AsymmetricRelationError):
            extend_tower(new_tower(), example_one)

    def test_target_not_in_family(self, example_two):
        with pytest.raises(NotInFamilyError):
            extend_tower(new_tower(), example_two)

    def test_target_without_relation(self):
        with pytest.raises(ValidationError):
            extend_tower(new_tower(), RelStructure(linear_graph("plain", 2)))

    def test_random_extensions(self):
        tower = random_extensions(random.Random(0), 10)
        assert tower.height == 11
        assert len(tower.targets) == 10
        report = check_tower(tower)
        assert report.passed, report.failures


class TestCheckTower:
    """Tests para check_tower"""

    def test_detects_broken_bond(self, plain2_antidiagonal):
        tower = extend_tower(new_tower(), antidiagonal_structure(linear_graph("plain", 4)))
        upper, lower = tower.levels[1].graph, tower.levels[0].graph
        constant = StructureMap(upper, lower, (1,) * len(upper))
        broken = Tower(tower.levels, (constant,), tower.flips, tower.targets)
        report = check_tower(broken)
        assert not report.passed

    def test_detects_inconsistent_lengths(self):
        tower = new_tower()
        broken = Tower(tower.levels, tower.bonds, ())
        report = check_tower(broken)
        assert not report.passed
        assert report.instance_count == 1

    def test_detects_wrong_target_level(self, plain2_antidiagonal):
        tower = extend_tower(new_tower(), plain2_antidiagonal)
        target = tower.targets[0]
        moved = type(target)(target.structure, 5, target.cover)
        report = check_tower(Tower(tower.levels, tower.bonds, tower.flips, (moved,)))
        assert not report.passed
