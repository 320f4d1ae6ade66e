"""
Tests para persistence.textfmt
"""

import pytest

from ff_pseudoarc.core.exceptions import ParseError, ValidationError
from ff_pseudoarc.core.structures import antidiagonal_structure, is_antidiagonal, linear_graph
from ff_pseudoarc.persistence.textfmt import (
    dump_map,
    dump_structure,
    dump_tower,
    dumps,
    load_document,
    load_tower,
    parse_text,
    parse_tower,
    save_tower,
)
from ff_pseudoarc.services.tower import check_tower, extend_tower, new_tower

SAMPLE = """
# ejemplo
graph A plain 2
rel A antidiagonal
graph B plain 4
rel B 1 4 2 3
rel B 3 2 4 1
map phi B A
1 -> 1
2 -> 1
3 -> 2
4 -> 2
"""


class TestParse:
    """Tests para parse_text"""

    def test_graphs_relations_and_maps(self):
        doc = parse_text(SAMPLE)
        assert set(doc.graphs) == {"A", "B"}
        assert is_antidiagonal(doc.structure("A"))
        assert is_antidiagonal(doc.structure("B"))
        assert doc.get_map("phi").assignment == (1, 1, 2, 2)
        assert doc.maps["phi"].source == "B"

    def test_structures_only_with_relation(self):
        doc = parse_text("graph A plain 2\ngraph B plain 1\nrel B 1 1\n")
        assert list(doc.structures()) == ["B"]
        assert doc.structure("A").s is None

    def test_empty_relation_line(self):
        doc = parse_text("graph A plain 1\nrel A\n")
        assert doc.structure("A").s is not None
        assert len(doc.structure("A").s) == 0

    def test_signed_graph(self):
        doc = parse_text("graph S signed 2\nrel S antidiagonal\n")
        assert doc.structure("S").s.sorted_pairs() == [(-2, 2), (-1, 1), (1, -1), (2, -2)]

    @pytest.mark.parametrize(
        "text,line",
        [
            ("graph A plain 2\nfoo A\n", 2),
            ("rel A 1 1\n", 1),
            ("graph A plain 2\nrel A 1 3\n", 2),
            ("graph A plain 2\ngraph A plain 3\n", 2),
            ("graph A plain x\n", 1),
            ("graph A plain 2\nrel A 1\n", 2),
            ("graph A plain 2\nmap f A A\n1 -> 1\n1 -> 2\n", 4),
            ("graph A plain 2\nmap f A A\n1 -> 1\n", 2),
            ("graph A plain 2\n1 -> 1\n", 2),
            ("graph A plain 2\nmap f A A\n1 -> 5\n2 -> 1\n", 3),
            ("level 1\n", 1),
        ],
    )
    def test_errors_report_line(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_text(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}: ")

    def test_unknown_names(self):
        doc = parse_text(SAMPLE)
        with pytest.raises(ValidationError):
            doc.structure("Z")
        with pytest.raises(ValidationError):
            doc.get_map("psi")

    def test_load_document(self, tmp_path):
        path = tmp_path / "sample.txt"
        path.write_text(SAMPLE, encoding="utf-8")
        assert "phi" in load_document(path).maps


class TestDump:
    """Tests para la escritura"""

    def test_dump_antidiagonal(self):
        structure = antidiagonal_structure(linear_graph("plain", 3))
        assert dump_structure("C", structure) == ["graph C plain 3", "rel C antidiagonal"]

    def test_dump_explicit_pairs(self):
        doc = parse_text("graph A plain 2\nrel A 1 1 2 2\n")
        assert dump_structure("A", doc.structure("A")) == [
            "graph A plain 2",
            "rel A 1 1",
            "rel A 2 2",
        ]

    def test_dump_map_and_reparse(self):
        doc = parse_text(SAMPLE)
        text = dumps(
            [
                dump_structure("B", doc.structure("B")),
                dump_structure("A", doc.structure("A")),
                dump_map("phi", "B", "A", doc.get_map("phi")),
            ]
        )
        assert "2 -> 1" in text
        assert parse_text(text).get_map("phi") == doc.get_map("phi")


class TestTowerFiles:
    """Tests para dump_tower / parse_tower"""

    def test_tower_text(self):
        tower = extend_tower(new_tower(), antidiagonal_structure(linear_graph("plain", 4)))
        text = dump_tower(tower)
        assert text.startswith("level 0\ngraph L0 signed 1\nrel L0 antidiagonal\n")
        assert "map bond1 L1 L0" in text
        assert "map cover0 L1 T0" in text

    def test_parse_restores_levels(self):
        tower = extend_tower(new_tower(), antidiagonal_structure(linear_graph("plain", 4)))
        tower = extend_tower(tower, antidiagonal_structure(linear_graph("plain", 3)))
        restored = parse_tower(dump_tower(tower))
        assert restored.levels == tower.levels
        assert restored.bonds == tower.bonds
        assert len(restored.targets) == 2
        assert check_tower(restored).passed

    def test_tower_without_levels(self):
        with pytest.raises(ParseError):
            parse_tower("graph L0 signed 1\n")

    def test_missing_bond(self):
        text = "level 0\ngraph L0 signed 1\nrel L0 antidiagonal\nlevel 1\ngraph L1 signed 1\n"
        with pytest.raises(ParseError):
            parse_tower(text + "rel L1 antidiagonal\n")

    def test_save_and_load(self, tmp_path):
        tower = extend_tower(new_tower(), antidiagonal_structure(linear_graph("plain", 2)))
        path = tmp_path / "tower.txt"
        save_tower(tower, path)
        assert load_tower(path).levels == tower.levels
