"""
Tests para el CLI (ff_pseudoarc.main)
"""

import json

import pytest

from ff_pseudoarc.main import EXIT_INVALID, EXIT_OK, build_parser, main
from ff_pseudoarc.services import worked_example

EXAMPLE_TWO = "graph E plain 4\nrel E 1 2 2 1 2 4 3 3 3 4 4 2\n"
EXAMPLE_ONE = "graph U plain 4\nrel U 1 3 2 3 3 1 3 2 3 4 4 1\n"
ANTIDIAGONALS = "graph A plain 2\nrel A antidiagonal\ngraph B plain 3\nrel B antidiagonal\n"
SIGN_MAPS = """
graph A signed 1
graph B signed 2
map f B A
-2 -> -1
-1 -> -1
1 -> 1
2 -> 1
map g B A
-2 -> -1
-1 -> -1
1 -> 1
2 -> 1
"""


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


class TestMembershipCommands:
    """Tests para membership check / cover"""

    def test_check_example_two(self, write, capsys):
        code = main(["membership", "check", write("e2.txt", EXAMPLE_TWO)])
        assert code == EXIT_OK
        assert capsys.readouterr().out == "E: verdict: surjective; not connected; not in F\n"

    def test_check_json(self, write, capsys):
        main(["membership", "check", write("e1.txt", EXAMPLE_ONE), "--json"])
        data = json.loads(capsys.readouterr().out)
        assert data == [{"name": "U", "surjective": True, "connected": True, "in_F": True}]

    def test_cover(self, write, capsys):
        path = write("a.txt", "graph A plain 2\nrel A antidiagonal\n")
        assert main(["membership", "cover", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "graph B plain 8" in out
        assert "map phi B A" in out

    def test_cover_of_asymmetric_member(self, write, capsys):
        code = main(["membership", "cover", write("e1.txt", EXAMPLE_ONE)])
        assert code == EXIT_INVALID
        assert capsys.readouterr().err.startswith("error: ")


class TestCapCommands:
    """Tests para cap amalgamate / graphs / example"""

    def test_amalgamate(self, write, capsys):
        assert main(["cap", "amalgamate", write("maps.txt", SIGN_MAPS)]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("graph B signed 2") == 1
        assert "map psi1 D B" in out
        assert "cap: PASS" in out

    def test_graphs_edges(self, write, capsys):
        assert main(["cap", "graphs", write("maps.txt", SIGN_MAPS), "--variant", "g2"]) == 0
        assert capsys.readouterr().out.startswith("# g2 p=1 q=1")

    def test_example_text(self, capsys):
        assert main(["cap", "example"]) == EXIT_OK
        out = capsys.readouterr().out
        assert worked_example.PHI1_BREAKPOINTS in out
        assert worked_example.PHI2_BREAKPOINTS in out
        assert "phi1 -3:[-3,-1] -2:[1,1]" in out
        assert "# g1 p=3 q=2 aristas=24" in out
        assert "cap example: PASS" in out

    def test_example_json(self, capsys):
        assert main(["cap", "example", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["property"] == "cap example"
        assert data["passed"] is True
        assert data["failures"] == []

    def test_example_svg_files(self, tmp_path, capsys):
        out_dir = tmp_path / "svg"
        assert main(["cap", "example", "--json", "--out-dir", str(out_dir)]) == EXIT_OK
        assert sorted(p.name for p in out_dir.iterdir()) == ["board.svg", "g1.svg", "g2.svg"]


class TestOtherCommands:
    """Tests para chessboard, jpp, verify y tower"""

    def test_render_ascii(self, write, capsys):
        assert main(["chessboard", "render", write("maps.txt", SIGN_MAPS)]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "x: -2 -1 1 2"

    def test_steinhaus(self, capsys):
        assert main(["chessboard", "steinhaus", "--rows", "2", "--cols", "2"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("steinhaus 2x2: PASS")

    def test_render_svg_flag(self, write, capsys):
        assert main(["chessboard", "render", write("maps.txt", SIGN_MAPS), "--svg"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("<?xml")
        assert 'fill="#FFFFFF"' in out

    def test_render_ascii_flag(self, write, capsys):
        assert main(["chessboard", "render", write("maps.txt", SIGN_MAPS), "--ascii"]) == 0
        assert capsys.readouterr().out.startswith("x: -2 -1 1 2")

    def test_render_dark_theme(self, write, capsys):
        path = write("maps.txt", SIGN_MAPS)
        assert main(["chessboard", "render", path, "--svg", "--theme", "dark"]) == EXIT_OK
        assert 'fill="#121212"' in capsys.readouterr().out

    def test_render_flags_exclusive(self, write):
        with pytest.raises(SystemExit):
            build_parser().parse_args(
                ["chessboard", "render", write("maps.txt", SIGN_MAPS), "--svg", "--ascii"]
            )

    def test_steinhaus_exhaustive(self, capsys):
        args = ["chessboard", "steinhaus", "--rows", "2", "--cols", "3", "--exhaustive"]
        assert main(args) == EXIT_OK
        assert capsys.readouterr().out.startswith("steinhaus 2x3: PASS")

    def test_jpp(self, write, capsys):
        path = write("jpp.txt", ANTIDIAGONALS)
        assert main(["jpp", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "graph C plain 6" in out
        assert "jpp: PASS" in out

    def test_verify_json(self, capsys):
        code = main(["verify", "steinhaus", "--rows", "2", "--cols", "2", "--json"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_verify_cap_instances(self, capsys):
        assert main(["verify", "cap", "--instances", "3", "--max-size", "4", "--seed", "9"]) == 0
        assert "cap: PASS" in capsys.readouterr().out

    def test_tower_build_and_check(self, write, tmp_path, capsys):
        targets = write("targets.txt", ANTIDIAGONALS)
        tower_file = tmp_path / "tower.txt"
        assert main(["tower", "build", "--targets", targets, "--out", str(tower_file)]) == 0
        assert tower_file.read_text().startswith("level 0\n")
        assert main(["tower", "check", str(tower_file)]) == EXIT_OK
        assert "tower: PASS" in capsys.readouterr().out


class TestErrors:
    """Tests para codigos de salida"""

    def test_missing_file(self, tmp_path, capsys):
        assert main(["membership", "check", str(tmp_path / "nada.txt")]) == EXIT_INVALID
        assert "error:" in capsys.readouterr().err

    def test_parse_error_line(self, write, capsys):
        assert main(["membership", "check", write("bad.txt", "graph A plain 2\nrel A 1 9\n")]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["frobnicate"])


@pytest.mark.slow
class TestAcceptanceCommands:
    """Comandos con los tamanos por defecto"""

    def test_steinhaus_three_by_three_exhaustive(self, capsys):
        args = ["chessboard", "steinhaus", "--rows", "3", "--cols", "3", "--exhaustive"]
        assert main(args) == EXIT_OK
        assert capsys.readouterr().out.startswith("steinhaus 3x3: PASS")

    @pytest.mark.parametrize("prop", ["cap", "claims", "wap"])
    def test_verify_defaults(self, prop, capsys):
        assert main(["verify", prop]) == EXIT_OK
        assert f"{prop}: PASS" in capsys.readouterr().out
