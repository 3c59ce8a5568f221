import json

from gslice import __version__
from gslice.main import cli


# Test version and help
def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout

    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("invariants", "verify", "classify", "gale", "tables", "hmsv"):
        assert command in result.stdout


# Test sliced invariants of the default model
def test_invariants_degree_zero(runner):
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--max-degree", "0"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "d=0 dim=1"


# Test sliced dimensions over F2
def test_invariants_f2(runner):
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--field", "F2", "--max-degree", "3"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["d=0 dim=1", "d=1 dim=2", "d=2 dim=3", "d=3 dim=4"]


# Test JSON output and bases named by the catalog
def test_invariants_json_basis(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--field", "Z", "--max-degree", "2",
                                 "--basis", "--json", "--out", str(out)])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["hilbert_function"] == [1, 0, 3]
    assert report["field"] == "Z"
    assert report["components"] == ["R1", "R2", "R3", "R4"]
    assert json.loads(out.read_text(encoding="utf-8")) == report


# Test a single component
def test_invariants_component(runner):
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--component", "R1", "--max-degree", "2"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "d=2 dim=4"

    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--component", "R7", "--max-degree", "1"])
    assert result.exit_code == 2
    assert "R7" in result.stderr


# Test unsliced invariants of ordered points
def test_invariants_unsliced(runner):
    result = runner.invoke(cli, ["invariants", "--model", "ordered-points:4", "--unsliced", "--max-degree", "2"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["d=0 dim=1", "d=1 dim=0", "d=2 dim=6"]


# Test usage errors exit with 2
def test_invariants_usage_errors(runner):
    result = runner.invoke(cli, ["invariants", "--model", "cubics"])
    assert result.exit_code == 2
    assert "unknown model" in result.stderr

    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--field", "Fp:9"])
    assert result.exit_code == 2

    result = runner.invoke(cli, ["invariants", "--model", "ordered-points:1"])
    assert result.exit_code == 2


# Test the degree cap from the environment
def test_degree_cap(runner, monkeypatch):
    monkeypatch.setenv("GSL_MAX_DEGREE", "2")
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--max-degree", "3"])
    assert result.exit_code == 2
    assert "cap" in result.stderr

    monkeypatch.setenv("GSL_MAX_DEGREE", "lots")
    result = runner.invoke(cli, ["invariants", "--model", "kontsevich", "--max-degree", "0"])
    assert result.exit_code == 2


# Test the classification command
def test_classify(runner):
    result = runner.invoke(cli, ["classify", "--s1", "x^2", "--s2", "y^2"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "properly-stable"
    assert "  Lambda = 1" in result.stdout.splitlines()

    result = runner.invoke(cli, ["classify", "--s1", "x*y", "--s2", "x*(x + y)", "--char", "2"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "strictly-semistable"

    result = runner.invoke(cli, ["classify", "--s1", "x", "--s2", "y^2"])
    assert result.exit_code == 2


# Test the Gale command
def test_gale(runner, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("1 0 1 1\n0 1 1 2\n", encoding="utf-8")
    result = runner.invoke(cli, ["gale", "--matrix", str(path)])
    assert result.exit_code == 0
    assert "complementarity: PASS (λ=-1)" in result.stdout
    assert "pluecker: p12=1 p13=1 p14=2 p23=-1 p24=-1 p34=1" in result.stdout

    square = tmp_path / "square.txt"
    square.write_text("1 0\n0 1\n", encoding="utf-8")
    result = runner.invoke(cli, ["gale", "--matrix", str(square)])
    assert result.exit_code == 2

    result = runner.invoke(cli, ["gale", "--matrix", str(tmp_path / "missing.txt")])
    assert result.exit_code == 2


# Test the Gale help states the sign convention
def test_gale_help(runner):
    result = runner.invoke(cli, ["gale", "--help"])
    assert result.exit_code == 0
    assert "p_I = (-1)^(sum of I) * lambda * q_(complement of I)" in result.stdout
    assert "1-based column indices" in result.stdout


# Test the verify command
def test_verify(runner):
    result = runner.invoke(cli, ["verify", "--check", "relations", "--check", "restrictions", "--max-degree", "4"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1].startswith("verdict: PASS")

    result = runner.invoke(cli, ["verify", "--check", "everything"])
    assert result.exit_code == 2
    assert "unknown check" in result.stderr


# Test the restricted action tables
def test_tables(runner):
    result = runner.invoke(cli, ["tables"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert "  C1 -> C1*d/a" in lines
    assert "  B2 -> -B2" in lines
    assert sum(line.startswith("R") for line in lines) == 4


# Test the ordered points descriptions
def test_hmsv(runner):
    result = runner.invoke(cli, ["hmsv", "-n", "4", "--max-degree", "2"])
    assert result.exit_code == 0
    assert "d=2 invariants=1 quotient=1 image=1" in result.stdout
    assert result.stdout.splitlines()[-1] == "verdict: PASS"

    result = runner.invoke(cli, ["hmsv", "--description", "second", "-n", "4", "--max-degree", "3"])
    assert result.exit_code == 0
    assert "d=3 invariants=6 quotient=6 image=6" in result.stdout

    result = runner.invoke(cli, ["hmsv", "-n", "5"])
    assert result.exit_code == 2
    result = runner.invoke(cli, ["hmsv", "-n", "4", "--max-degree", "9"])
    assert result.exit_code == 2
