import subprocess
import sys

import pytest

from bvpairing import harness as H
from bvpairing.cli import main
from bvpairing.textio import serialize_function

from conftest import spike

SIMPLE = "func u 0 1\nP 0 1 0 1\nfield sigma 0 1\nP 0 1 1/2 1/2\n"
VALLEY = "func u -1 1\nP -1 0 1 0\nP 0 1 0 1\n"
DIRICHLET = "func u 0 1\nP 0 1 1 1\nfunc zero 0 1\nP 0 1 0 0\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="p.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_pair_local(write, capsys):
    assert main(["pair", write(SIMPLE), "--mode", "local", "--rep", "plus"]) == 0
    assert capsys.readouterr().out == "D 0 1 1/2\n"


def test_pair_global_needs_datum(write, capsys):
    assert main(["pair", write(SIMPLE), "--mode", "global"]) == 2
    assert "--u0" in capsys.readouterr().err


def test_pair_modified(write, capsys):
    text = DIRICHLET + "field sigma 0 1\nP 0 1 0 0\n"
    assert main(["pair", write(text), "--mode", "modified", "--u", "u", "--u0", "zero"]) == 0
    assert capsys.readouterr().out == "A 0 1\nA 1 1\n"


def test_certify_valley(write, capsys):
    assert main(["certify", write(VALLEY)]) == 1
    assert "infeasible: -1 demand precedes +1 demand at 0" in capsys.readouterr().out


def test_certify_spike(write, capsys):
    path = write(serialize_function(spike(), "u") + "\n")
    assert main(["certify", path]) == 0
    assert capsys.readouterr().out.rstrip().endswith("verified local plus")
    assert main(["certify", path, "--rep", "minus"]) == 1


def test_certify_dirichlet(write, capsys):
    assert main(["certify", write(DIRICHLET), "--u", "u", "--dirichlet", "--u0", "zero"]) == 0
    assert "verified dirichlet plus" in capsys.readouterr().out


def test_verify(write, capsys):
    good = "func u 0 1\nP 0 1 0 1\nfield sigma 0 1\nP 0 1 1 1\n"
    assert main(["verify", write(good), "--sigma", "sigma"]) == 0
    assert main(["verify", write(SIMPLE), "--sigma", "sigma"]) == 1


def test_parse_error_writes_nothing(write, tmp_path, capsys):
    out = tmp_path / "out.txt"
    bad = write("func u 0 1\nP 0 1/2 0 0\nP 3/4 1 0 0\n")
    assert main(["pair", bad, "--out", str(out)]) == 2
    assert "non-contiguous" in capsys.readouterr().err
    assert not out.exists()


def test_missing_entity(write, capsys):
    assert main(["verify", write(SIMPLE), "--sigma", "tau"]) == 2


def test_unknown_flag(write):
    with pytest.raises(SystemExit) as exc:
        main(["pair", write(SIMPLE), "--bogus"])
    assert exc.value.code == 2


def test_formats(write, tmp_path):
    path = write(SIMPLE)
    svg, csv = tmp_path / "p.svg", tmp_path / "p.csv"
    assert main(["pair", path, "--format", "svg", "--out", str(svg)]) == 0
    assert main(["pair", path, "--format", "csv", "--out", str(csv)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "http" not in text.replace("http://www.w3.org/2000/svg", "")
    assert csv.read_text().splitlines()[0] == "seed,instance,check,result,witness"


def test_suite_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["suite", "--trials", "40", "--seed", "7", "--out", str(a)]) == 0
    assert main(["suite", "--trials", "40", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_compactness(write, capsys):
    fam = H.ramp_family(spike(), range(1, 5))
    text = "".join(serialize_function(f, f"u{k}") + "\n" for k, f in enumerate(fam, 1))
    path = write(text + serialize_function(spike(), "limit") + "\n")
    assert main(["compactness", "--family", path, "--rep", "plus"]) == 0
    assert main(["compactness", "--family", path, "--rep", "minus"]) == 1
    assert "finding" in capsys.readouterr().out


def test_compactness_dirichlet(write, capsys):
    ramps = H.boundary_ramp_family(H.UNIT, range(1, 4))
    text = "".join(serialize_function(f, f"u{k}") + "\n" for k, f in enumerate(ramps, 1))
    text += "func limit 0 1\nP 0 1 1 1\nfunc u0 0 1\nP 0 1 0 0\n"
    assert main(["compactness", "--family", write(text), "--dirichlet"]) == 0
    assert "limit certified" in capsys.readouterr().out


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "bvpairing", "pair", write(SIMPLE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "D 0 1 1/2\n"
