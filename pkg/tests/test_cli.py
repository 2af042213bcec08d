"""End-to-end tests of the goodgradings command line."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from goodgradings.cli import cli, main


def test_restrict_g2_without_subset() -> None:
    result = CliRunner().invoke(cli, ["restrict", "--type", "G2", "--J", ""])
    assert result.exit_code == 0, result.output
    assert "[1/3] Building restricted root system..." in result.output
    assert "Chambers 12  |  W^J 12  |  𝒦_J 1  |  h^J 6  |  exponents 1, 5" in result.output
    assert "Done!" in result.output


@pytest.mark.slow
def test_restrict_with_user_node_order(tmp_path: Path) -> None:
    out = tmp_path / "e7.json"
    result = CliRunner().invoke(
        cli,
        ["restrict", "--type", "E", "--rank", "7", "--order", "3,4,2,5,6,7,1", "--J", "3,4,5,6,7", "--json", str(out)],
    )
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["results"]["J"] == [1, 3, 5, 6, 7]
    assert document["results"]["highest"] == [2, 4]
    assert document["results"]["chambers"] == 12


def test_pyramid_writes_json_and_svg(tmp_path: Path) -> None:
    json_out, svg_out = tmp_path / "sl8.json", tmp_path / "sl8.svg"
    result = CliRunner().invoke(
        cli,
        ["pyramid", "--type", "sl", "--partition", "3,3,2", "--integral", "--json", str(json_out), "--svg", str(svg_out)],
    )
    assert result.exit_code == 0, result.output
    results = json.loads(json_out.read_text(encoding="utf-8"))["results"]
    assert len(results["classes"]) == 3
    assert results["alcoves"] == 14
    assert results["components"]["component_order"] == 1
    assert svg_out.read_text(encoding="utf-8").startswith("<?xml")


def test_render_reads_a_saved_document(tmp_path: Path) -> None:
    json_out, dot_out = tmp_path / "sp6.json", tmp_path / "sp6.dot"
    runner = CliRunner()
    first = runner.invoke(cli, ["pyramid", "--type", "sp", "--partition", "2,2,1,1", "--graph", "--json", str(json_out)])
    assert first.exit_code == 0, first.output
    second = runner.invoke(cli, ["render", str(json_out), "--dot", str(dot_out)])
    assert second.exit_code == 0, second.output
    assert "style=bold" in dot_out.read_text(encoding="utf-8")


def test_render_needs_an_output(tmp_path: Path) -> None:
    json_out = tmp_path / "g2.json"
    runner = CliRunner()
    runner.invoke(cli, ["arrange", "--type", "G2", "--json", str(json_out)])
    result = runner.invoke(cli, ["render", str(json_out)])
    assert result.exit_code == 1
    assert "Nothing to do" in result.output


@pytest.mark.parametrize(
    ("cartan_type", "subset", "candidates"),
    [("G2", "2", [1]), ("G2", "1", [1]), ("F4", "1,2,4", [1])],
)
def test_arrange_on_levi_rows(tmp_path: Path, cartan_type: str, subset: str, candidates: list[int]) -> None:
    out = tmp_path / "arrange.json"
    result = CliRunner().invoke(cli, ["arrange", "--type", cartan_type, "--J", subset, "--json", str(out)])
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["results"]["sommers_candidates"] == candidates


def test_tables_g2_pass() -> None:
    result = CliRunner().invoke(cli, ["tables", "--type", "G2"])
    assert result.exit_code == 0, result.output
    assert "Rows passed  : 4/4" in result.output


def test_budget_overrun_exits_2_with_partial_json(tmp_path: Path) -> None:
    out = tmp_path / "partial.json"
    result = CliRunner().invoke(cli, ["restrict", "--type", "G2", "--budget", "5", "--json", str(out)])
    assert result.exit_code == 2
    assert "WARNING: Budget of 5 exceeded" in result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["provenance"]["budget_exceeded"] is True
    assert "cartan" in document["results"]


def test_invalid_partition_exits_1() -> None:
    result = CliRunner().invoke(cli, ["pyramid", "--type", "sp", "--partition", "3,1"])
    assert result.exit_code == 1
    assert "ERROR: sp: odd part 3" in result.output


def test_usage_errors_exit_1_through_main() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["restrict", "--type", "Q2"])
    assert excinfo.value.code == 1


def test_unknown_node_exits_1_through_main() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["restrict", "--type", "G2", "--J", "3"])
    assert excinfo.value.code == 1


def test_config_supplies_defaults(tmp_path: Path) -> None:
    config = tmp_path / "g2.cfg"
    config.write_text("type = G2\nJ = 2\n", encoding="utf-8")
    result = CliRunner().invoke(cli, ["--config", str(config), "arrange"])
    assert result.exit_code == 0, result.output
    assert "J = {2} (Bourbaki)" in result.output


def test_command_line_wins_over_config(tmp_path: Path) -> None:
    config = tmp_path / "g2.cfg"
    config.write_text("type = G2\nbudget = 5\n", encoding="utf-8")
    result = CliRunner().invoke(cli, ["--config", str(config), "restrict", "--budget", "1000"])
    assert result.exit_code == 0, result.output


def test_unknown_config_key_exits_1(tmp_path: Path) -> None:
    config = tmp_path / "bad.cfg"
    config.write_text("colour = red\n", encoding="utf-8")
    result = CliRunner().invoke(cli, ["--config", str(config), "restrict", "--type", "G2"])
    assert result.exit_code == 1
    assert "unknown config key 'colour'" in result.output


def test_version() -> None:
    result = CliRunner().invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "goodgradings" in result.output
