import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from mcc.cli import load_spec_text, main
from mcc.ideal import Code
from mcc.qring import RingElement

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write_spec(tmp_path, name="spec.json", **doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def hamming():
    return str(GOLDEN / "hamming.json")


@pytest.fixture
def unit22():
    return str(GOLDEN / "unit22.json")


def test_params_hamming(hamming):
    code, out = run("params", hamming)
    assert code == 0
    assert out.splitlines() == ["n=7 dim=4", "|I|=16"]


def test_params_unit(unit22):
    assert run("params", unit22)[1].startswith("n=4 dim=4")


def test_malformed_polynomial(tmp_path, capsys):
    spec = write_spec(tmp_path, field={"p": 2}, rho=[2, 2], generators=["1 + x1^"])
    code, _ = run("params", spec)
    assert code == 2
    assert "position 7" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{", "1:2"),
        ("[]", "JSON object"),
        ('{"field": {"p": 2}, "rho": [2]}', "generators"),
        ('{"field": {"p": 4}, "rho": [2], "generators": []}', "not prime"),
        ('{"field": {"p": 2}, "rho": [], "generators": []}', "rho"),
        ('{"field": {"p": 2}, "rho": [2], "generators": [1]}', "strings"),
    ],
)
def test_bad_spec_documents(tmp_path, capsys, text, fragment):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert run("params", str(path))[0] == 2
    assert fragment in capsys.readouterr().err


def test_missing_file(capsys):
    assert run("params", "/nonexistent/spec.json")[0] == 2


def test_spec_file_field_forms():
    a = load_spec_text('{"field": 9, "rho": [2], "generators": ["(1,1)*x1"]}')
    b = load_spec_text('{"field": {"q": 9}, "rho": [2], "generators": ["(1,1)*x1"]}')
    c = load_spec_text('{"field": {"p": 3, "m": 2, "modulus": [1, 0, 1]}, "rho": [2], "generators": ["(1,1)*x1"]}')
    assert a.field == b.field == c.field
    assert a.code.generators == b.code.generators


def test_basis_exit_codes(tmp_path, unit22):
    zero = write_spec(tmp_path, field={"p": 2}, rho=[2, 2], generators=["0"])
    code, out = run("basis", zero)
    assert code == 0 and "status=ProvenBasis |B|=0 dim=0" in out
    code, out = run("basis", unit22)
    assert code == 0 and "status=ProvenBasis |B|=4 dim=4" in out
    partial = write_spec(tmp_path, "p.json", field={"p": 2}, rho=[2, 2, 2], generators=["1 + x1", "1 + x2"])
    code, out = run("basis", partial)
    assert code == 3 and "status=IndependentOnly" in out


def test_basis_report_lines(hamming):
    _, out = run("basis", hamming)
    assert "* layer k=0 a=() : 1 + x1^4 + x1^5" in out
    assert "B[3] k=3 shift=() : x1^3 + x1^4 + x1^6" in out


def test_genmatrix_without_proven_basis(tmp_path):
    partial = write_spec(tmp_path, field={"p": 2}, rho=[2, 2, 2], generators=["1 + x1", "1 + x2"])
    assert run("genmatrix", partial)[0] == 3
    code, out = run("genmatrix", partial, "--fallback-oracle")
    assert code == 0
    rows = out.splitlines()
    spec = load_spec_text(Path(partial).read_text())
    assert len(rows) == spec.code.dimension


def test_genmatrix_unit_fallback_rank(unit22):
    code, out = run("genmatrix", unit22, "--fallback-oracle", "--rref")
    assert code == 0
    assert out == "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"


def test_encode(hamming, tmp_path, capsys):
    assert run("encode", hamming, "0", "0", "0", "0")[1] == "0\n"
    g0 = (GOLDEN / "hamming.txt").read_text().splitlines()[0]
    _, out = run("encode", hamming, "1 0 0 0")
    spec = load_spec_text((GOLDEN / "hamming.json").read_text())
    word = spec.ring.parse(out.strip())
    assert word.coeffs.tolist() == [int(c) for c in g0.split()]
    assert spec.code.contains(spec.ring.parse(run("encode", hamming, "1", "1", "0", "1")[1]))
    assert run("encode", hamming, "1", "0")[0] == 2
    assert "dimension is 4" in capsys.readouterr().err


def test_verify_single_spec(hamming):
    code, out = run("verify", hamming)
    assert code == 0
    assert "status=ProvenBasis" in out


def test_verify_fault_injection(hamming):
    code, out = run("verify", hamming, "--inject-fault", "independence")
    assert code == 1
    assert out.strip().endswith("invariant violated: independence")


def test_verify_corpus_deterministic():
    a = run("verify", "--corpus", "--seed", "3", "--count", "10")
    b = run("verify", "--corpus", "--seed", "3", "--count", "10", "--workers", "4")
    assert a == b and a[0] == 0


def test_verify_needs_input():
    assert run("verify")[0] == 2


def test_usage_error():
    assert run("frobnicate")[0] == 2


@pytest.mark.skipif(shutil.which("mcc") is None, reason="console script not installed")
def test_console_script(hamming):
    proc = subprocess.run(["mcc", "params", hamming], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("n=7 dim=4")


def test_module_entry_point_without_numba(hamming):
    env = {"MCC_DISABLE_NUMBA": "1", "PATH": ""}
    proc = subprocess.run(
        [sys.executable, "-c", "from mcc import kernels; print(kernels.get_backend())"],
        capture_output=True, text=True, env=env,
    )
    assert proc.stdout.strip() == "numpy"
    proc = subprocess.run([sys.executable, "-m", "mcc", "params", hamming], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "dim=4" in proc.stdout
