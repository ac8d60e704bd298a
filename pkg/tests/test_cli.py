import subprocess
import sys

import pytest

from conftest import TWO_TET_NATIVE
from tetnear.cli import main
from tetnear.io import generate_random_mesh, render_native, render_report
from tetnear.oracle import brute_force_near_classified

CHAIN = "10 3\n" + "0 0 0\n" * 10 + "0 1 2 3\n3 4 5 6\n6 7 8 9\n"
DUP = "4 2\n" + "0 0 0\n" * 4 + "0 1 2 3\n0 1 2 3\n"
SINGLE = "4 1\n" + "0 0 0\n" * 4 + "0 1 2 3\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="mesh.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def stats_dict(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_neighbors(capsys, write):
    assert run(capsys, "neighbors", "0", "-i", write(TWO_TET_NATIVE)) == (0, "0: 1(F)\n", "")
    assert run(capsys, "neighbors", "1", "-i", write(CHAIN))[1] == "1: 0(V) 2(V)\n"


@pytest.mark.parametrize("elem", ["99", "2", "-1"])
def test_neighbors_out_of_range(capsys, write, elem):
    code, out, err = run(capsys, "neighbors", elem, "-i", write(TWO_TET_NATIVE))
    assert code == 3
    assert out == ""
    assert "0..1" in err


def test_neighbors_all(capsys, write):
    assert run(capsys, "neighbors-all", "-i", write(TWO_TET_NATIVE))[:2] == (0, "0: 1(F)\n1: 0(F)\n")
    assert run(capsys, "neighbors-all", "-i", write("1 0\n0 0 0\n"))[:2] == (0, "")


@pytest.mark.parametrize("strategy", ["serial", "locked", "countsort"])
def test_neighbors_all_random_matches_oracle(capsys, write, strategy):
    mesh = generate_random_mesh(50, 200, 64, 42)
    expected = render_report(brute_force_near_classified(mesh, e) for e in range(mesh.n_elem))
    code, out, _ = run(capsys, "neighbors-all", "-i", write(render_native(mesh)),
                       "--strategy", strategy, "--threads", "3")
    assert code == 0
    assert out == expected


def test_output_file(capsys, write, tmp_path):
    dest = tmp_path / "out.txt"
    code, out, _ = run(capsys, "neighbors-all", "-i", write(TWO_TET_NATIVE), "-o", str(dest))
    assert (code, out) == (0, "")
    assert dest.read_bytes() == b"0: 1(F)\n1: 0(F)\n"


def test_msh_input(capsys, write):
    from test_io import MSH_MIXED
    code, out, err = run(capsys, "neighbors-all", "-i", write(MSH_MIXED, "m.msh"))
    assert code == 0
    assert out == "0: 1(F)\n1: 0(F)\n"
    assert "skipped 3" in err


def test_parse_error_exit_2(capsys, write):
    code, out, err = run(capsys, "neighbors-all", "-i", write("4 1\n0 0 0\n" * 1))
    assert code == 2
    assert out == ""
    assert "line" in err
    assert run(capsys, "stats", "-i", "/nonexistent/mesh.txt")[0] == 2
    bad = write("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 9\n")
    code, _, err = run(capsys, "neighbors", "0", "-i", bad)
    assert code == 2
    assert "line 6" in err


def test_permissive_flag(capsys, write):
    path = write("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 1 2\n")
    assert run(capsys, "neighbors-all", "-i", path)[0] == 2
    code, out, err = run(capsys, "neighbors-all", "-i", path, "--permissive")
    assert (code, out) == (0, "0:\n")
    assert "degenerate" in err


def test_stats(capsys, write):
    code, out, _ = run(capsys, "stats", "-i", write(TWO_TET_NATIVE))
    s = stats_dict(out)
    assert code == 0
    assert (s["entries"], s["valence_max"], s["pairs_F"]) == ("8", "2", "1")
    assert float(s["build_ms"]) >= 0

    s = stats_dict(run(capsys, "stats", "-i", write(SINGLE))[1])
    assert s["entries"] == "4"
    assert s["valence_min"] == s["valence_max"] == "1"
    assert all(s[f"pairs_{k}"] == "0" for k in "VEFC")

    assert stats_dict(run(capsys, "stats", "-i", write(DUP))[1])["pairs_C"] == "1"


def test_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--n-node", "4", "--n-elem", "1",
                       "--max-valence", "8", "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "4 1"
    assert sorted(map(int, lines[-1].split())) == [0, 1, 2, 3]
    assert run(capsys, "gen", "--n-node", "4", "--n-elem", "1",
               "--max-valence", "8", "--seed", "7")[1] == out


def test_gen_stalled(capsys):
    code, out, err = run(capsys, "gen", "--n-node", "4", "--n-elem", "9", "--max-valence", "8")
    assert code == 4
    assert out == ""
    assert "stalled" in err


def test_gen_bad_args(capsys):
    assert run(capsys, "gen", "--n-node", "3", "--n-elem", "1")[0] == 2


def test_gen_piped_into_stats():
    gen = subprocess.run(
        [sys.executable, "-m", "tetnear", "gen", "--n-node", "50", "--n-elem", "200",
         "--max-valence", "64", "--seed", "42"],
        capture_output=True, check=True,
    )
    stats = subprocess.run(
        [sys.executable, "-m", "tetnear", "stats"], input=gen.stdout,
        capture_output=True, check=True,
    )
    assert stats_dict(stats.stdout.decode())["n_elem"] == "200"


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "1000", "--repeats", "1", "--threads", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n_elem,strategy,threads,build_ms,query_all_ms"
    assert [l.split(",")[1] for l in lines[1:]] == ["serial", "locked", "countsort"]
    for line in lines[1:]:
        n, _, threads, build_ms, query_ms = line.split(",")
        assert (n, threads) == ("1000", "2")
        assert float(build_ms) > 0 and float(query_ms) > 0


def test_bench_row_count(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "200,400", "--repeats", "3")
    assert code == 0
    assert len(out.splitlines()) == 1 + 2 * 3


def test_bench_strategy_filter(capsys):
    out = run(capsys, "bench", "--sizes", "500", "--repeats", "1",
              "--strategy", "countsort")[1]
    assert [l.split(",")[1] for l in out.splitlines()[1:]] == ["countsort"]


def test_bench_unsorted_sizes(capsys):
    assert run(capsys, "bench", "--sizes", "400,200", "--repeats", "1")[0] == 2


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["neighbors-all", "--threads", "0"])
    assert exc.value.code == 2
