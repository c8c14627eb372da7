import pytest

from permtol.cli import main
from permtol.dot import to_dot
from permtol.lattice import chain, format_lattice, parse_lattice, product_of, glued_chain_sum
from permtol.plotting import hasse_layout, plot_hasse
from permtol.tolerance import factor_kernel


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "C4": write("C4.lat", "4\n0 1\n1 2\n2 3\n"),
        "C3": write("C3.lat", "3\n0 1\n1 2\n"),
        "sq": write("sq.lat", "4\n0 1\n0 2\n1 3\n2 3\n"),
        "bad": write("bad.lat", "4\n0 1\n0 2\n"),
        "a": write("a.tol", "0 1\n2 3\n"),
        "b": write("b.tol", "0 1\n1 2\n2 3\n"),
        "beta": write("beta.tol", "0 2\n1 3\n"),
        "cov": write("cov.tol", "0 1\n1 2\n"),
        "diag12": write("d12.tol", "1 2\n"),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_permutes_counterexample(capsys, files):
    code, out, _ = run(capsys, "permutes", f"lattice={files['C4']}", f"T={files['a']}", f"S={files['b']}")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "NOT PERMUTING"
    assert "in-TS-not-ST (0,2)" in lines
    assert "NOT AMICABLE" in lines
    assert "A1-violation u=1 v=2 via=S" in lines


def test_permutes_square(capsys, files):
    code, out, _ = run(capsys, "permutes", "--lattice", files["sq"], "-T", files["a"], "-S", files["beta"])
    assert code == 0
    assert out.splitlines() == ["PERMUTING", "AMICABLE"]


def test_blocks(capsys, files):
    code, out, _ = run(capsys, "blocks", f"lattice={files['C3']}", f"T={files['cov']}")
    assert code == 0 and out == "{0,1} {1,2}\n"


def test_check_tolerance(capsys, files):
    code, out, _ = run(capsys, "check-tolerance", f"lattice={files['C3']}", f"T={files['cov']}")
    assert code == 0 and out.splitlines() == ["TOLERANCE", "NOT A CONGRUENCE", "2-UNIFORM"]
    code, out, _ = run(capsys, "check-tolerance", f"lattice={files['sq']}", f"T={files['diag12']}")
    assert code == 1 and out.startswith("NOT A TOLERANCE")


def test_classify(capsys, files):
    code, out, _ = run(capsys, "classify", f"lattice={files['C3']}", f"T={files['cov']}")
    assert code == 0
    assert out.splitlines()[1] == "1: lower=0 upper=2 top+bottom"
    code, out, _ = run(capsys, "classify", f"lattice={files['sq']}", f"T={files['a']}", f"S={files['beta']}")
    assert out.splitlines()[3] == "3: two-fold-top=split two-fold-bottom=none"


def test_amicable(capsys, files):
    code, out, _ = run(capsys, "amicable", f"lattice={files['C4']}", f"T={files['a']}", f"S={files['b']}")
    assert code == 1 and out.splitlines()[0] == "NOT AMICABLE"


def test_witness_all_u(capsys, files):
    code, out, _ = run(capsys, "witness", f"lattice={files['C3']}", f"T={files['cov']}",
                       f"S={files['cov']}", "a=0", "b=2", "--all-u")
    assert code == 0
    assert "d=1" in out.splitlines() and "witness-check ok" in out


def test_witness_not_amicable(capsys, files):
    code, out, _ = run(capsys, "witness", f"lattice={files['C4']}", f"T={files['a']}",
                       f"S={files['b']}", "a=0", "b=2")
    assert code == 1 and out.startswith("NOT AMICABLE")


def test_witness_not_in_product(capsys, files):
    code, _, err = run(capsys, "witness", f"lattice={files['C4']}", f"T={files['a']}",
                       f"S={files['b']}", "a=0", "b=3")
    assert code == 2 and "NotInProduct" in err


def test_enumerate_tolerances(capsys, files):
    code, out, _ = run(capsys, "enumerate-tolerances", f"lattice={files['sq']}")
    assert out.splitlines() == ["0-1 2-3 congruence", "0-2 1-3 congruence"]


def test_enumerate_lattices(capsys, files):
    outdir = files["dir"] / "cat"
    code, out, _ = run(capsys, "enumerate-lattices", "n=5", "--out-dir", str(outdir))
    assert code == 0 and out.splitlines()[-1] == "count=5"
    assert len(list(outdir.glob("*.lat"))) == 5


def test_verify_and_report(capsys, files):
    report = files["dir"] / "report.txt"
    code, out, _ = run(capsys, "verify", "--max-n", "5", "--report", str(report))
    assert code == 0
    assert out.splitlines()[-1] == "n=5 lattices=5 pairs=17 amicable=7 permuting=7 violations=0"
    assert report.read_text() == out
    assert (files["dir"] / "report.png").stat().st_size > 0


def test_verify_needs_flag_for_eight(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "8")
    assert code == 2


@pytest.mark.parametrize("key", ["missing", "bad"])
def test_input_errors_exit_2(capsys, files, key):
    lattice = files[key] if key == "bad" else "/nonexistent.lat"
    code, _, err = run(capsys, "blocks", f"lattice={lattice}", f"T={files['a']}")
    assert code == 2 and err.startswith("error:")


def test_not_a_lattice_message(capsys, files):
    code, _, err = run(capsys, "blocks", f"lattice={files['bad']}", f"T={files['a']}")
    assert "NotALattice" in err


def test_parse_error_has_line_number(capsys, files, tmp_path):
    p = tmp_path / "broken.lat"
    p.write_text("3\n0 1\n1 x\n")
    code, _, err = run(capsys, "blocks", f"lattice={p}", f"T={files['cov']}")
    assert code == 2 and "line 3" in err


def test_non_two_uniform_rejected(capsys, files, tmp_path):
    p = tmp_path / "one.tol"
    p.write_text("0 1\n")
    code, _, err = run(capsys, "amicable", f"lattice={files['C4']}", f"T={p}", f"S={files['b']}")
    assert code == 2 and "NotTwoUniform" in err


def test_export_dot(capsys, files, tmp_path):
    png = tmp_path / "c4.png"
    code, out, _ = run(capsys, "export-dot", f"lattice={files['C4']}", f"T={files['a']}",
                       f"S={files['b']}", "--png", str(png))
    assert code == 0
    assert out.startswith("graph lattice {")
    assert png.stat().st_size > 0
    code, out2, _ = run(capsys, "export-dot", f"lattice={files['C4']}", f"T={files['a']}", f"S={files['b']}")
    assert out == out2


# -- DOT and figures -----------------------------------------------------------------

def test_dot_conventions(square, alpha, beta):
    text = to_dot(square, alpha, beta)
    assert "rankdir=BT" in text
    assert "{ rank=same; 1; 2; }" in text
    assert '0 -- 1 [color="grey60", style="solid"' in text
    assert '0 -- 2 [color="black", style="dotted"' in text
    assert text == to_dot(square, alpha, beta)


def test_round_trip_index_identical(square):
    assert parse_lattice(format_lattice(square)).cover_pairs == square.cover_pairs


def test_layout_is_bottom_up(square):
    pos = hasse_layout(square)
    assert pos[0][1] < pos[1][1] == pos[2][1] < pos[3][1]


def test_plot_product_example(tmp_path):
    L = product_of([chain(2), chain(2), glued_chain_sum([3, 4, 5])])
    path = tmp_path / "example.png"
    plot_hasse(L, factor_kernel(L, [2, 2, 8], 0), factor_kernel(L, [2, 2, 8], 1), path=path)
    assert path.stat().st_size > 0
