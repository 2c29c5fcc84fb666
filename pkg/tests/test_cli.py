"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest

from raonet import __version__
from raonet.cli import create_parser, main
from raonet.netio import read_net, read_table
from raonet.netio.reports import (
    CENTRALITY_SCHEMA,
    CORRELATION_SCHEMA,
    DECOMPOSITION_SCHEMA,
    DIVERSITY_SCHEMA,
    PAIR_SCHEMA,
)
from raonet.utils import file_digest, manifest_path


def header(path: Path) -> list[str]:
    return path.read_text(encoding="utf-8").splitlines()[0].split(",")


def manifest(path: Path) -> dict:
    return json.loads(manifest_path(path).read_text(encoding="utf-8"))


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv("RAONET_WORKERS", "1")


class TestParser:
    def test_subcommands(self):
        parser = create_parser()
        args = parser.parse_args(["bc", "--input", "x.net", "--output", "bc.csv", "--valued"])
        assert args.command == "bc"
        assert args.valued
        assert args.length_mode == "inverse"

    def test_no_command_prints_help(self, capsys):
        assert main([]) == 0
        assert "usage:" in capsys.readouterr().out

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_unknown_flag(self, sample_files, capsys):
        assert main(["summary", "--input", str(sample_files["net"]), "--bogus"]) == 1
        err = capsys.readouterr().err
        assert "usage:" in err
        assert "--bogus" in err

    def test_missing_required_option(self, capsys):
        assert main(["bc", "--input", "x.net"]) == 1
        assert "--output" in capsys.readouterr().err

    def test_bad_alpha(self, sample_files):
        args = ["anova", "--input", "t.csv", "--partition", str(sample_files["clu"]), "--field", "x", "--alpha", "2"]
        assert main(args) == 1

    def test_bad_worker_environment(self, sample_files, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("RAONET_WORKERS", "many")
        output = tmp_path / "rao1.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--output", str(output)]) == 1
        assert "RAONET_WORKERS" in capsys.readouterr().err


class TestSummary:
    def test_table(self, sample_files, capsys):
        assert main(["summary", "--input", str(sample_files["net"])]) == 0
        out = capsys.readouterr().out
        for row in ("Nodes", "Links", "Loops", "Total citations", "Density", "Average total degree",
                    "Cluster coefficient", "Average distance", "Maximum distance"):
            assert row in out
        assert "0.333" in out

    def test_malformed_network(self, tmp_path, capsys):
        bad = tmp_path / "bad.net"
        bad.write_text('*Vertices 1\n1 "A"\n*Arcs\n1 2 1\n', encoding="utf-8")
        assert main(["summary", "--input", str(bad)]) == 2
        assert "vertex id 2 out of range, line 4" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["summary", "--input", str(tmp_path / "absent.net")]) == 2
        assert "Error" in capsys.readouterr().err

    def test_invalid_utf8(self, tmp_path, capsys):
        bad = tmp_path / "latin.net"
        bad.write_bytes(b'*Vertices 1\n1 "\xff\xfeA"\n')
        assert main(["summary", "--input", str(bad)]) == 2
        err = capsys.readouterr().err
        assert "not valid UTF-8" in err
        assert "Traceback" not in err

    def test_invalid_utf8_partition(self, sample_files, tmp_path, capsys):
        bad = tmp_path / "latin.clu"
        bad.write_bytes(b"*Vertices 6\n\xff\n")
        args = ["summary", "--input", str(sample_files["net"]), "--partition", str(bad), "--groups", "1"]
        assert main(args) == 2
        assert "not valid UTF-8" in capsys.readouterr().err


class TestDiversity:
    def test_writes_report_and_manifest(self, sample_files, tmp_path):
        output = tmp_path / "rao1.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--direction", "both",
                     "--output", str(output)]) == 0
        assert header(output) == DIVERSITY_SCHEMA
        table = read_table(output)
        assert len(table) == 6
        assert table["label"].tolist()[2] == "Gamma, Letters"

        data = manifest(output)
        assert data["command"] == "diversity"
        assert data["tool_version"] == __version__
        assert data["inputs"] == {str(sample_files["net"]): file_digest(sample_files["net"])}
        assert data["outputs"] == [str(output)]
        assert data["conventions"]["convention"] == "same_direction"
        assert data["conventions"]["direction"] == "both"
        assert data["conventions"]["loops"] == "kept"

    def test_cells_for_both_directions(self, sample_files, tmp_path):
        output = tmp_path / "rao1.csv"
        cells = tmp_path / "cells.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--output", str(output),
                     "--cells", str(cells)]) == 0
        for name in ("cells_cited.csv", "cells_citing.csv"):
            assert header(tmp_path / name) == ["focal", "i", "j", "p_i", "p_j", "d_ij", "cell"]
        assert len(manifest(output)["outputs"]) == 3

    def test_legacy_names(self, sample_files, tmp_path):
        output = tmp_path / "custom.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--direction", "citing",
                     "--output", str(output), "--cells", "--legacy-names"]) == 0
        assert (tmp_path / "rao1.csv").exists()
        assert (tmp_path / "rao2.csv").exists()
        assert not output.exists()

    def test_partition_prints_group_aggregates(self, sample_files, tmp_path, capsys):
        output = tmp_path / "rao1.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--partition", str(sample_files["clu"]),
                     "--output", str(output)]) == 0
        assert "d2_cited by group" in capsys.readouterr().out

    def test_groups_restrict(self, sample_files, tmp_path):
        output = tmp_path / "rao1.csv"
        assert main(["diversity", "--input", str(sample_files["net"]), "--partition", str(sample_files["clu"]),
                     "--groups", "1", "--output", str(output)]) == 0
        assert read_table(output)["label"].tolist() == ["Alpha", "Beta", "Gamma, Letters"]

    def test_groups_without_partition(self, sample_files, tmp_path):
        assert main(["diversity", "--input", str(sample_files["net"]), "--groups", "1",
                     "--output", str(tmp_path / "x.csv")]) == 1

    def test_reruns_are_byte_identical(self, sample_files, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for output in (first, second):
            assert main(["diversity", "--input", str(sample_files["net"]), "--output", str(output),
                         "--cells", str(output.with_suffix(".cells.csv"))]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a.cells_cited.csv").read_bytes() == (tmp_path / "b.cells_cited.csv").read_bytes()


class TestBetweenness:
    def test_valued(self, sample_files, tmp_path):
        output = tmp_path / "bc.csv"
        assert main(["bc", "--input", str(sample_files["net"]), "--valued", "--length-mode",
                     "max-plus-one-minus", "--output", str(output)]) == 0
        assert header(output) == CENTRALITY_SCHEMA
        table = read_table(output)
        assert len(table) == 6
        assert table["bc_valued_raw"].notna().all()
        conventions = manifest(output)["conventions"]
        assert conventions["length_mode"] == "max-plus-one-minus"
        assert conventions["normalization"] == "100/((n-1)(n-2))"

    def test_binary_only_leaves_valued_empty(self, sample_files, tmp_path):
        output = tmp_path / "bc.csv"
        assert main(["bc", "--input", str(sample_files["net"]), "--output", str(output)]) == 0
        assert read_table(output)["bc_valued_raw"].isna().all()

    def test_reruns_are_byte_identical(self, sample_files, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for output in (first, second):
            assert main(["bc", "--input", str(sample_files["net"]), "--valued", "--output", str(output)]) == 0
        assert first.read_bytes() == second.read_bytes()


class TestCells:
    def test_focal_rows(self, sample_files, tmp_path):
        output = tmp_path / "cells.csv"
        assert main(["cells", "--input", str(sample_files["net"]), "--direction", "citing",
                     "--focal", "Alpha", "--output", str(output)]) == 0
        lines = output.read_text(encoding="utf-8").splitlines()
        # Alpha cites itself, Beta and Gamma: 3 * 2 ordered pairs
        assert len(lines) == 7
        assert all(line.startswith("1,") for line in lines[1:])

    def test_unknown_focal(self, sample_files, tmp_path, capsys):
        assert main(["cells", "--input", str(sample_files["net"]), "--direction", "cited",
                     "--focal", "Omega", "--output", str(tmp_path / "c.csv")]) == 2
        assert "unknown label 'Omega'" in capsys.readouterr().err


class TestDecompose:
    def test_report_and_anova(self, sample_files, tmp_path, capsys):
        output = tmp_path / "dec.csv"
        assert main(["decompose", "--input", str(sample_files["net"]), "--partition", str(sample_files["clu"]),
                     "--direction", "citing", "--anova", "--output", str(output)]) == 0
        assert header(output) == DECOMPOSITION_SCHEMA
        table = read_table(output)
        assert table["group"].astype(str).tolist() == ["1", "2", "between", "total"]
        total = table[table["group"].astype(str) == "total"].iloc[0]
        assert total["cell_count"] == 30
        assert "ANOVA" in capsys.readouterr().out

    def test_local_mode(self, sample_files, tmp_path):
        output = tmp_path / "dec.csv"
        assert main(["decompose", "--input", str(sample_files["net"]), "--partition", str(sample_files["clu"]),
                     "--mode", "local", "--output", str(output)]) == 0
        table = read_table(output)
        assert "between" not in table["group"].astype(str).tolist()
        assert set(table["direction"]) == {"cited", "citing"}

    def test_needs_partition(self, sample_files):
        assert main(["decompose", "--input", str(sample_files["net"])]) == 1


class TestNeighborhood:
    def test_integration(self, sample_files, tmp_path):
        output = tmp_path / "int.net"
        assert main(["neighborhood", "--input", str(sample_files["net"]), "--focal", "Alpha",
                     "--mode", "integration", "--output", str(output)]) == 0
        assert output.read_text(encoding="utf-8") == (
            '*Vertices 2\n1 "Beta"\n2 "Gamma, Letters"\n*Arcs\n1 2 4\n2 2 5\n'
        )

    def test_include_focal(self, sample_files, tmp_path):
        output = tmp_path / "dif.net"
        assert main(["neighborhood", "--input", str(sample_files["net"]), "--focal", "Epsilon",
                     "--mode", "diffusion", "--include-focal", "--output", str(output)]) == 0
        assert read_net(output).labels == ["Epsilon", "Zeta"]

    def test_no_neighbors_writes_nothing(self, sample_files, tmp_path):
        output = tmp_path / "dif.net"
        assert main(["neighborhood", "--input", str(sample_files["net"]), "--focal", "Zeta",
                     "--mode", "diffusion", "--output", str(output)]) == 0
        assert not output.exists()


class TestStructure:
    def test_components(self, sample_files, tmp_path, capsys):
        output = tmp_path / "comps.clu"
        assert main(["components", "--input", str(sample_files["net"]), "--output", str(output)]) == 0
        assert output.read_text(encoding="utf-8") == "*Vertices 6\n" + "1\n" * 6
        assert "Weak components (1)" in capsys.readouterr().out

    def test_restrict_by_group(self, sample_files, tmp_path):
        output = tmp_path / "sub.net"
        assert main(["restrict", "--input", str(sample_files["net"]), "--partition", str(sample_files["clu"]),
                     "--groups", "1", "--output", str(output)]) == 0
        raw = read_net(output)
        assert raw.labels == ["Alpha", "Beta", "Gamma, Letters"]
        assert raw.arcs == [(1, 1, 2.0), (1, 2, 3.0), (1, 3, 1.0), (2, 1, 2.0), (2, 3, 4.0), (3, 3, 5.0)]
        assert manifest(output)["command"] == "restrict"

    def test_restrict_by_labels_file(self, sample_files, tmp_path):
        labels = tmp_path / "labels.txt"
        labels.write_text("Delta\nEpsilon\n", encoding="utf-8")
        output = tmp_path / "sub.net"
        assert main(["restrict", "--input", str(sample_files["net"]), "--labels-file", str(labels),
                     "--output", str(output)]) == 0
        assert read_net(output).arcs == [(2, 1, 2.0)]
        assert str(labels) in manifest(output)["inputs"]

    def test_restrict_needs_subset(self, sample_files, tmp_path):
        assert main(["restrict", "--input", str(sample_files["net"]), "--output", str(tmp_path / "x.net")]) == 1


class TestTables:
    @pytest.fixture
    def merged(self, tmp_path) -> Path:
        path = tmp_path / "merged.csv"
        path.write_text(
            "node,label,bc_normalized,d2_cited,d2_citing\n"
            "1,A,10,1.5,2.0\n2,B,20,1.7,2.5\n3,C,30,1.6,2.2\n4,D,5,,1.1\n5,E,40,2.1,3.0\n6,F,0,1.2,1.0\n",
            encoding="utf-8",
        )
        return path

    def test_correlate(self, merged, tmp_path, capsys):
        output = tmp_path / "corr.csv"
        assert main(["correlate", "--input", str(merged), "--vars", "bc,d2_cited,d2_citing",
                     "--output", str(output)]) == 0
        assert header(output) == CORRELATION_SCHEMA
        table = read_table(output)
        assert list(zip(table["var_a"], table["var_b"])) == [
            ("bc_normalized", "d2_cited"), ("bc_normalized", "d2_citing"), ("d2_cited", "d2_citing"),
        ]
        assert (table["n"] == 5).all()
        assert "Pearson (upper) / Spearman (lower)" in capsys.readouterr().out

    def test_correlate_unknown_column(self, merged, capsys):
        assert main(["correlate", "--input", str(merged), "--vars", "bc,impact"]) == 2
        assert "unknown variable 'impact'" in capsys.readouterr().err

    def test_correlate_needs_two_columns(self, merged):
        assert main(["correlate", "--input", str(merged), "--vars", "bc"]) == 1

    def test_anova(self, merged, sample_files, tmp_path, capsys):
        output = tmp_path / "pairs.csv"
        assert main(["anova", "--input", str(merged), "--partition", str(sample_files["clu"]),
                     "--field", "d2_citing", "--output", str(output)]) == 0
        assert header(output) == PAIR_SCHEMA
        table = read_table(output)
        assert table[["group_a", "group_b"]].astype(str).values.tolist() == [["1", "2"]]
        assert "Subset 1" in capsys.readouterr().out

    def test_anova_skips_missing_values(self, merged, sample_files, tmp_path):
        output = tmp_path / "pairs.csv"
        # node 4 has no d2_cited, leaving group 2 with two observations
        assert main(["anova", "--input", str(merged), "--partition", str(sample_files["clu"]),
                     "--field", "d2_cited", "--posthoc", "bonferroni", "--output", str(output)]) == 0

    def test_anova_unknown_field(self, merged, sample_files):
        assert main(["anova", "--input", str(merged), "--partition", str(sample_files["clu"]),
                     "--field", "impact"]) == 2

    def test_anova_text_field(self, merged, sample_files, capsys):
        assert main(["anova", "--input", str(merged), "--partition", str(sample_files["clu"]),
                     "--field", "label"]) == 2
        assert "field 'label'" in capsys.readouterr().err

    def test_export_vec_text_field(self, merged, tmp_path, capsys):
        output = tmp_path / "label.vec"
        assert main(["export-vec", "--input", str(merged), "--field", "label", "--output", str(output)]) == 2
        assert "is not numeric" in capsys.readouterr().err
        assert not output.exists()

    def test_table_not_utf8(self, sample_files, tmp_path):
        bad = tmp_path / "latin.csv"
        bad.write_bytes(b"node,label,x\n1,\xe9t\xe9,1\n")
        assert main(["export-vec", "--input", str(bad), "--field", "x", "--output", str(tmp_path / "x.vec")]) == 2

    def test_export_vec(self, merged, tmp_path):
        output = tmp_path / "bc.vec"
        assert main(["export-vec", "--input", str(merged), "--field", "bc_normalized",
                     "--output", str(output)]) == 0
        assert output.read_text(encoding="utf-8") == "*Vertices 6\n10\n20\n30\n5\n40\n0\n"

    def test_export_vec_missing_values(self, merged, tmp_path, capsys):
        output = tmp_path / "d2.vec"
        assert main(["export-vec", "--input", str(merged), "--field", "d2_cited",
                     "--output", str(output)]) == 2
        assert "--missing" in capsys.readouterr().err
        assert main(["export-vec", "--input", str(merged), "--field", "d2_cited", "--missing", "0",
                     "--output", str(output)]) == 0
        assert output.read_text(encoding="utf-8").splitlines()[4] == "0"

    def test_export_vec_from_diversity_run(self, sample_files, tmp_path):
        rao1 = tmp_path / "rao1.csv"
        vec = tmp_path / "cited.vec"
        assert main(["diversity", "--input", str(sample_files["net"]), "--output", str(rao1)]) == 0
        assert main(["export-vec", "--input", str(rao1), "--field", "sum_cited", "--output", str(vec)]) == 0
        assert vec.read_text(encoding="utf-8") == "*Vertices 6\n6\n5\n10\n3\n3\n0\n"
