"""Command line surface: outputs, exit codes, determinism."""

import subprocess
import sys

import pytest

from wcolkit import Graph, format_graph, format_model
from wcolkit.cli import main

P4 = Graph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
STAR4 = Graph(4, frozenset({(0, 1), (0, 2), (0, 3)}))


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def graph_file(tmp_path, graph, name="g.txt"):
    return write(tmp_path / name, format_graph(graph))


def order_file(tmp_path, perm, name="o.txt"):
    return write(tmp_path / name, " ".join(str(v) for v in perm) + "\n")


class TestGen:
    def test_path_to_stdout(self, capsys):
        assert main(["gen", "path", "4"]) == 0
        out = capsys.readouterr().out
        assert "p 4 3" in out and "e 0 1" in out

    def test_out_files(self, tmp_path):
        gpath = tmp_path / "g.txt"
        opath = tmp_path / "o.txt"
        code = main(
            ["gen", "fan-ktree", "2", "3", "--out", str(gpath), "--order-out", str(opath)]
        )
        assert code == 0
        assert gpath.read_text().startswith("p ")
        assert len(opath.read_text().split()) > 0

    def test_bad_spec(self, capsys):
        assert main(["gen", "path"]) == 2
        assert "error:" in capsys.readouterr().err


class TestWcol:
    def test_given_order(self, tmp_path, capsys):
        g = graph_file(tmp_path, Graph(10, frozenset((i, i + 1) for i in range(9))))
        o = order_file(tmp_path, range(10))
        assert main(["wcol", g, "--d", "3", "--order", o]) == 0
        out = capsys.readouterr().out
        assert "value 4" in out and "exact 0" in out and "witness" in out

    def test_exact(self, tmp_path, capsys):
        c4 = Graph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        g = graph_file(tmp_path, c4)
        assert main(["wcol", g, "--d", "1", "--exact"]) == 0
        out = capsys.readouterr().out
        assert "value 3" in out and "exact 1" in out

    def test_mode_required(self, tmp_path, capsys):
        g = graph_file(tmp_path, P4)
        assert main(["wcol", g, "--d", "1"]) == 2
        assert main(["wcol", g, "--d", "1", "--exact", "--heuristic"]) == 2

    def test_order_out(self, tmp_path):
        g = graph_file(tmp_path, P4)
        opath = tmp_path / "w.txt"
        assert main(["wcol", g, "--d", "2", "--exact", "--order-out", str(opath)]) == 0
        perm = [int(w) for w in opath.read_text().split()]
        assert sorted(perm) == list(range(4))

    def test_missing_file(self, tmp_path, capsys):
        assert main(["wcol", str(tmp_path / "nope.txt"), "--d", "1", "--exact"]) == 2
        assert "error:" in capsys.readouterr().err


class TestModelCommands:
    def model_files(self, tmp_path):
        from wcolkit import MinorModel

        host = graph_file(tmp_path, P4, "host.txt")
        model = MinorModel(
            P4,
            Graph(2, frozenset({(0, 1)})),
            (frozenset({0, 1}), frozenset({2, 3})),
            1,
            1,
        )
        mpath = write(tmp_path / "m.txt", format_model(model))
        opath = order_file(tmp_path, range(4))
        return host, mpath, opath

    def test_validate_valid(self, tmp_path, capsys):
        host, mpath, _ = self.model_files(tmp_path)
        assert main(["validate-model", host, mpath]) == 0
        out = capsys.readouterr().out
        assert "verdict valid" in out and "observed-congestion 1" in out

    def test_validate_invalid(self, tmp_path, capsys):
        host = graph_file(tmp_path, P4, "host.txt")
        mpath = write(
            tmp_path / "bad.txt", "model 1 c=1 d=1\n0 : 0 3\n"
        )
        assert main(["validate-model", host, mpath]) == 1
        out = capsys.readouterr().out
        assert "verdict invalid" in out and "radius bad 0" in out
        assert "observed-depth inf" in out

    def test_pullback(self, tmp_path, capsys):
        host, mpath, opath = self.model_files(tmp_path)
        assert main(["pullback", host, mpath, opath]) == 0
        assert capsys.readouterr().out.strip() == "0 1"

    def test_check_transfer(self, tmp_path, capsys):
        host, mpath, opath = self.model_files(tmp_path)
        assert main(["check-transfer", host, mpath, opath, "--d", "1"]) == 0
        out = capsys.readouterr().out
        assert "lhs 2" in out and "rhs 4" in out and "holds 1" in out
        assert "longest-edge-path 2" in out

    def test_check_transfer_k_mismatch(self, tmp_path, capsys):
        host, mpath, opath = self.model_files(tmp_path)
        assert main(["check-transfer", host, mpath, opath, "--d", "1", "--k", "9"]) == 2
        assert "error:" in capsys.readouterr().err


class TestLemmaCommands:
    def test_sigma_rho(self, tmp_path, capsys):
        g = graph_file(tmp_path, STAR4)
        o = order_file(tmp_path, range(4))
        epath = write(tmp_path / "edges.txt", "1 2\n")
        assert main(["sigma-rho", g, o, "--d", "1", "--edges", epath]) == 0
        assert capsys.readouterr().out == "e 1 2 rho 0 sigma 0\n"

    def test_build_model_and_validate(self, tmp_path, capsys):
        g = graph_file(tmp_path, STAR4)
        o = order_file(tmp_path, range(4))
        epath = write(tmp_path / "edges.txt", "1 2\n")
        mpath = tmp_path / "model.txt"
        code = main(
            ["build-model", g, o, "--d", "1", "--edges", epath, "--out", str(mpath)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "congestion 2" in out and "depth 2" in out
        assert "max-cover 1" in out and "pattern-edges 1" in out
        assert main(["validate-model", g, str(mpath)]) == 0

    def test_build_model_precondition(self, tmp_path, capsys):
        g = graph_file(tmp_path, Graph(2))
        o = order_file(tmp_path, range(2))
        epath = write(tmp_path / "edges.txt", "0 1\n")
        assert main(["build-model", g, o, "--d", "1", "--edges", epath]) == 1
        assert "violation:" in capsys.readouterr().err

    def test_bollobas_check_ok(self, tmp_path, capsys):
        pairs = write(tmp_path / "pairs.txt", "1 ; 2\n2 ; 1\n")
        assert main(["bollobas", "check", pairs, "--a", "1", "--b", "1"]) == 0
        out = capsys.readouterr().out
        assert "n 2" in out and "bound 2" in out and "premise ok" in out and "holds 1" in out

    def test_bollobas_check_premise_failure(self, tmp_path, capsys):
        pairs = write(tmp_path / "pairs.txt", "1 ; 1\n")
        assert main(["bollobas", "check", pairs, "--a", "1", "--b", "1"]) == 1
        assert "premise fails self-intersection at 0" in capsys.readouterr().out

    def test_bollobas_search(self, capsys):
        assert main(["bollobas", "search", "--a", "2", "--b", "2", "--universe", "5"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "bound 7" and out[1] == "length 6"
        assert len(out) == 8 and all(";" in line for line in out[2:])


class TestFoCommands:
    def test_apply(self, tmp_path, capsys):
        g = graph_file(tmp_path, Graph(5, frozenset((0, i) for i in range(1, 5))))
        f = write(tmp_path / "f.txt", "exists z (adj(x, z) & adj(z, y))\n")
        assert main(["fo-apply", g, "--formula", f]) == 0
        out = capsys.readouterr().out
        assert "p 5 6" in out

    def test_apply_with_colors_and_keep(self, tmp_path, capsys):
        g = graph_file(tmp_path, P4)
        f = write(tmp_path / "f.txt", "adj(x, y) & A(x) & A(y)\n")
        code = main(["fo-apply", g, "--formula", f, "--colors", "A=0,1", "--keep", "0,1,2"])
        assert code == 0
        assert "p 3 1" in capsys.readouterr().out

    def test_apply_asymmetric(self, tmp_path, capsys):
        g = graph_file(tmp_path, P4.with_colors({"A": {1}}))
        f = write(tmp_path / "f.txt", "A(x) & !A(y)\n")
        assert main(["fo-apply", g, "--formula", f]) == 1
        assert "violation:" in capsys.readouterr().err

    def test_search_found(self, tmp_path, capsys):
        src = graph_file(tmp_path, Graph(4), "src.txt")
        dst = graph_file(tmp_path, STAR4, "dst.txt")
        f = write(tmp_path / "f.txt", "(A(x) & !A(y)) | (A(y) & !A(x))\n")
        assert main(["fo-search", src, dst, "--formula", f, "--colors", "A"]) == 0
        out = capsys.readouterr().out
        assert "status found" in out
        assert "expansion A=0" in out and "keep 0,1,2,3" in out

    def test_search_none(self, tmp_path, capsys):
        src = graph_file(tmp_path, Graph(2), "src.txt")
        dst = graph_file(tmp_path, Graph(3), "dst.txt")
        f = write(tmp_path / "f.txt", "adj(x, y)\n")
        assert main(["fo-search", src, dst, "--formula", f]) == 1
        assert "status none" in capsys.readouterr().out

    def test_bad_formula(self, tmp_path, capsys):
        g = graph_file(tmp_path, P4)
        f = write(tmp_path / "f.txt", "adj(x, w)\n")
        assert main(["fo-apply", g, "--formula", f]) == 2
        assert "error:" in capsys.readouterr().err


class TestProfileCommands:
    def test_profile_stdout(self, capsys):
        assert main(["profile", "--family", "edgeless 9", "--d-max", "6"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("d\twcol\texact\n1\t1\t0\n")
        assert "# fitted_degree 0.000000" in out

    def test_compare(self, tmp_path, capsys):
        low = tmp_path / "low.tsv"
        high = tmp_path / "high.tsv"
        assert main(
            ["profile", "--family", "fan-ktree 1 10", "--d-max", "10", "--out", str(low)]
        ) == 0
        assert main(
            ["profile", "--family", "fan-ktree 2 10", "--d-max", "10", "--out", str(high)]
        ) == 0
        assert main(["compare", str(high), str(low)]) == 0
        out = capsys.readouterr().out
        assert "f-degree" in out and "g-degree" in out
        assert "verdict g-cannot-dominate-f (empirical)" in out

    def test_compare_needs_fit_comment(self, tmp_path, capsys):
        bare = write(tmp_path / "bare.tsv", "d\twcol\texact\n1\t2\t0\n")
        assert main(["compare", bare, bare]) == 2
        assert "error:" in capsys.readouterr().err


class TestHarness:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2

    def test_byte_identical_reruns(self, tmp_path, capsys):
        g = graph_file(tmp_path, Graph(6, frozenset({(0, 1), (1, 2), (3, 4)})))
        runs = []
        for _ in range(2):
            assert main(["wcol", g, "--d", "2", "--exact"]) == 0
            runs.append(capsys.readouterr().out)
        assert runs[0] == runs[1]

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wcolkit.cli", "gen", "clique", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "p 3 3" in proc.stdout
