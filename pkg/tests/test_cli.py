import json

from lmgroups.cli import run


def test_char(capsys):
    assert run(["char", "--name", "psi", "y[01] y[10]^-1"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_cluster_counts(capsys):
    assert run(["cluster", "--n", "2", "--diagonals", "1"]) == 0
    assert capsys.readouterr().out.strip() == "4 5 2"


def test_cluster_json(capsys):
    assert run(["cluster", "--n", "2", "--diagonals", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["format"] == 1
    dims = [c["dim"] for c in doc["cells"]]
    assert [dims.count(d) for d in range(3)] == [4, 5, 2]


def test_classify(capsys):
    assert run(["classify", "--group", "G", "--gens", "1,1,0"]) == 0
    assert capsys.readouterr().out.strip() == "TypeFInfinity"
    assert run(["classify", "--group", "G", "--gens", "1,0,0;0,1,1"]) == 0
    capsys.readouterr()


def test_sigma(capsys):
    assert run(["sigma", "--group", "yGy", "--char", "1,0,0", "--n", "2"]) == 2
    assert capsys.readouterr().out.strip() == "false"
    assert run(["sigma", "--group", "G", "--char", "0,0,1", "--n", "inf"]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_wordproblem_exit_codes(capsys):
    assert run(["wordproblem", "--tag", "G", "y[01] y[10] y[01]^-1 y[10]^-1"]) == 0
    capsys.readouterr()
    assert run(["wordproblem", "--tag", "G", "y[01]"]) == 2
    capsys.readouterr()


def test_normalize_and_act(capsys):
    assert run(["normalize", "--tag", "yGy", "x[e]^-1 y[e]"]) == 0
    assert capsys.readouterr().out.strip() == "y[0] y[10]^-1 y[11]"
    assert run(["act", "y[e]", "0010"]) == 0
    assert capsys.readouterr().out.strip() == "011"


def test_phi_and_inverse(capsys):
    assert run(["phi", "11", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert run(["phiinv", "--", "-7/3"]) == 0
    out = capsys.readouterr().out.split()
    assert len(out) == 2 and all(p.endswith("^inf") for p in out)
    assert run(["phiinv", "inf"]) == 0
    assert capsys.readouterr().out.strip() == "0^inf 1^inf"


def test_xcluster_and_cone(capsys):
    assert run(["xcluster", "--params", "y[010];y[0110]^-1;y[0111]"]) == 0
    out = capsys.readouterr().out
    assert "[1, 2]" in out and "[8, 17, 14, 4]" in out
    assert run(["cone", "--piece", "e|y[010];y[0110]^-1;y[0111]"]) == 0
    assert capsys.readouterr().out.strip() == "m=3 verified=True"


def test_asclink(capsys):
    assert run(["asclink", "--piece", "e|y[010];y[0110]^-1;y[0111];y[0001]",
                "--vertex", "e"]) == 0
    out = capsys.readouterr().out
    assert "collapsible" in out or "cells" in out


def test_homology_command(capsys):
    assert run(["homology", "--piece", "e|y[010];y[0110]^-1;y[0111]"]) == 0
    out = capsys.readouterr().out
    assert "(0, [])" in out


def test_xcluster_dot_ranks(capsys):
    assert run(["xcluster", "--params", "y[010];y[0110]^-1;y[0111]", "--dot"]) == 0
    out = capsys.readouterr().out
    assert 'rank="1"' in out and 'rank="-1"' in out


def test_ins_and_witness(capsys):
    assert run(["ins", "y[10] y[110]^-1"]) == 0
    capsys.readouterr()
    assert run(["ins", "y[10]"]) == 2
    capsys.readouterr()
    assert run(["witness", "--family", "PairNonConsecutive", "y[10] y[1110]^-1"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 2


def test_relcheck(capsys):
    assert run(["relcheck", "--maxlen", "1", "--maxp", "1"]) == 0
    out = capsys.readouterr().out
    assert "0 failures" in out


def test_error_exit(capsys):
    # chi0 is not defined on yG, which y[0] infers
    assert run(["char", "--name", "chi0", "y[0]"]) == 1
    capsys.readouterr()
    assert run(["normalize", "not a word"]) == 1
    capsys.readouterr()


def test_xcluster_json_carries_labels(capsys):
    assert run(["xcluster", "--params", "y[010];y[0110]^-1;y[0111]", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["format"] == 1 and doc["diagonals"] == [1, 2]
    labels = {c["key"]: c["label"] for c in doc["cells"] if "label" in c}
    assert len(labels) == 8 and "y[01]" in labels.values()


def test_determinism(capsys):
    run(["xcluster", "--params", "y[010];y[0110]^-1;y[0111]", "--json"])
    first = capsys.readouterr().out
    run(["xcluster", "--params", "y[010];y[0110]^-1;y[0111]", "--json"])
    assert capsys.readouterr().out == first
