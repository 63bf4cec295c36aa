"""In-process runs of the command line driver.

Every test calls main(argv) directly and decodes the JSON report from
stdout, so exit codes and report contents are pinned without spawning
subprocesses.
"""

import json

import pytest

from spectramono.cli import main
from spectramono.constructions import (
    SignMatrix,
    hat,
    paley_tournament,
    skew_hadamard_from_drt,
)
from spectramono.core import (
    Tournament,
    c_representation,
    i_representation,
    transitive_tournament,
)
from spectramono.documents import serialize_document
from spectramono.scalars import GaussianScalar, get_eps, set_eps

UNIT_C = GaussianScalar.exact("3/5", "4/5")


@pytest.fixture(autouse=True)
def _keep_eps():
    # main() may install SPECTRAMONO_EPS globally; undo after each test
    before = get_eps()
    yield
    set_eps(before)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_doc(tmp_path, name, value):
    path = tmp_path / name
    path.write_text(serialize_document(value))
    return str(path)


def minus_identity(h):
    return SignMatrix(
        [
            [h.entries[i][j] - (1 if i == j else 0) for j in range(h.n)]
            for i in range(h.n)
        ]
    )


@pytest.fixture(scope="module")
def paley_hat_path(tmp_path_factory):
    """i-representation of the dominated extension of the order-7 Paley
    tournament, written once for the whole module."""
    g = i_representation(hat(paley_tournament(7)))
    path = tmp_path_factory.mktemp("docs") / "paley_hat.json"
    path.write_text(serialize_document(g))
    return str(path)


class TestCheck:
    def test_monomorphic_k(self, paley_hat_path, capsys):
        code, report = run(
            capsys, "check", "--input", paley_hat_path, "--k", "5"
        )
        assert code == 0
        result = report["result"]
        assert result["monomorphic"] is True
        assert result["common_poly"]["display"] == "x^5-10x^3+21x"
        assert result["subsets_checked"] == 56
        assert result["witness"] is None

    def test_witness_on_failure(self, paley_hat_path, capsys):
        """k = 4 fails and the report carries the first offending pair."""
        code, report = run(
            capsys, "check", "--input", paley_hat_path, "--k", "4"
        )
        assert code == 1
        result = report["result"]
        assert result["monomorphic"] is False
        assert result["witness"] == [[0, 1, 2, 3], [0, 1, 2, 4]]
        a, b = result["witness_polys"]
        assert a["display"] != b["display"]

    def test_all_k_profile(self, paley_hat_path, capsys):
        code, report = run(capsys, "check", "--input", paley_hat_path, "--all-k")
        assert code == 1
        profile = report["all_k"]
        assert sorted(profile, key=int) == [str(k) for k in range(1, 9)]
        assert profile["4"]["monomorphic"] is False
        assert profile["8"]["monomorphic"] is True

    def test_all_k_success_exit(self, tmp_path, capsys):
        path = write_doc(
            tmp_path, "t4.json", i_representation(transitive_tournament(4))
        )
        code, report = run(capsys, "check", "--input", path, "--all-k")
        assert code == 0
        assert all(r["monomorphic"] for r in report["all_k"].values())

    def test_k_required(self, paley_hat_path, capsys):
        code, report = run(capsys, "check", "--input", paley_hat_path)
        assert code == 2
        assert "--k" in report["error"]["message"]


class TestClassify:
    def test_drt_hat_variant(self, paley_hat_path, capsys):
        code, report = run(
            capsys, "classify", "--input", paley_hat_path, "--k", "5"
        )
        assert code == 0
        assert report["monomorphic"] is True
        assert report["variant"] == "i_rep_drt_hat"
        assert report["details"]["certificate"] == {"n": 7, "t": 1}
        assert report["details"]["tournament"]["kind"] == "tournament"
        assert len(report["witness_selector"]["values"]) == 8

    def test_transitive_c_rep(self, tmp_path, capsys):
        g = c_representation(transitive_tournament(6), UNIT_C)
        path = write_doc(tmp_path, "trans6.json", g)
        code, report = run(capsys, "classify", "--input", path, "--k", "3")
        assert code == 0
        assert report["variant"] == "c_rep_transitive"
        assert report["details"]["label"] == "3/5+4/5i"
        assert report["details"]["order"] == [0, 1, 2, 3, 4, 5]

    def test_not_monomorphic_exit(self, tmp_path, capsys):
        # transitive on 5 vertices with the (1, 4) arc reversed
        t = Tournament.from_matrix(
            [
                [0, 1, 1, 1, 1],
                [0, 0, 1, 1, 0],
                [0, 0, 0, 1, 1],
                [0, 0, 0, 0, 1],
                [0, 1, 0, 0, 0],
            ]
        )
        path = write_doc(tmp_path, "flip.json", c_representation(t, UNIT_C))
        code, report = run(capsys, "classify", "--input", path, "--k", "3")
        assert code == 1
        assert report["variant"] == "not_monomorphic"
        assert report["details"]["witness"] is not None

    def test_out_of_range_without_force(self, paley_hat_path, capsys):
        code, report = run(
            capsys, "classify", "--input", paley_hat_path, "--k", "2"
        )
        assert code == 3
        assert report["error"]["kind"] == "theorem_range"

    def test_force_brute_fallback(self, paley_hat_path, capsys):
        code, report = run(
            capsys,
            "classify",
            "--input",
            paley_hat_path,
            "--k",
            "2",
            "--force-brute",
        )
        assert code == 0
        assert report["variant"] == "brute_force"
        assert report["monomorphic"] is True
        assert report["details"]["subsets_checked"] == 28


class TestConstruct:
    def test_tournament_document(self, capsys):
        code, report = run(capsys, "construct", "paley", "--q", "7")
        assert code == 0
        assert report == json.loads(serialize_document(paley_tournament(7)))

    def test_hat_rep_output_is_loadable(self, tmp_path, capsys):
        """construct output feeds straight back into check."""
        code = main(["construct", "paley", "--q", "7", "--hat", "--rep", "i"])
        out = capsys.readouterr().out
        assert code == 0
        expected = serialize_document(i_representation(hat(paley_tournament(7))))
        assert out == expected
        path = tmp_path / "constructed.json"
        path.write_text(out)
        code, report = run(capsys, "check", "--input", str(path), "--k", "1")
        assert code == 0
        assert report["result"]["monomorphic"] is True

    def test_general_unit_label(self, capsys):
        code, report = run(
            capsys, "construct", "paley", "--q", "3", "--rep", "3/5,4/5"
        )
        assert code == 0
        assert report["kind"] == "hermitian"
        assert report["entries"][0][1] in ("3/5+4/5i", "3/5-4/5i")

    def test_rejects_bad_prime(self, capsys):
        code, report = run(capsys, "construct", "paley", "--q", "5")
        assert code == 2
        assert report["error"]["kind"] == "input"


class TestValidate:
    def test_skew_conference_passes(self, tmp_path, capsys):
        s = minus_identity(skew_hadamard_from_drt(paley_tournament(7)))
        path = write_doc(tmp_path, "conf8.json", s)
        code, report = run(
            capsys, "validate", "--input", path, "--kind", "skew_conference"
        )
        assert code == 0
        assert report["ok"] is True
        assert report["n"] == 8

    def test_failure_reports_locus(self, tmp_path, capsys):
        path = write_doc(tmp_path, "ones.json", SignMatrix([[1, 1], [1, 1]]))
        code, report = run(
            capsys, "validate", "--input", path, "--kind", "hadamard"
        )
        assert code == 1
        assert report["ok"] is False
        assert report["detail"]

    def test_wrong_document_kind(self, tmp_path, capsys):
        path = write_doc(tmp_path, "t.json", paley_tournament(7))
        code, report = run(
            capsys, "validate", "--input", path, "--kind", "hadamard"
        )
        assert code == 2
        assert "sign_matrix" in report["error"]["message"]


class TestSpectra:
    def test_order_eight(self, tmp_path, capsys):
        s = minus_identity(skew_hadamard_from_drt(paley_tournament(7)))
        path = write_doc(tmp_path, "conf8.json", s)
        code, report = run(
            capsys, "spectra", "--input", path, "--max-deletions", "2"
        )
        assert code == 0
        assert report["ok"] is True
        assert report["t"] == 1
        assert report["polys_checked"] == 1 + 8 + 28
        assert report["failure"] is None

    def test_order_four_rejected(self, tmp_path, capsys):
        s = minus_identity(skew_hadamard_from_drt(paley_tournament(3)))
        path = write_doc(tmp_path, "conf4.json", s)
        code, report = run(capsys, "spectra", "--input", path)
        assert code == 2
        assert report["error"]["kind"] == "input"


class TestConvert:
    def test_round_trip(self, tmp_path, capsys):
        t_path = write_doc(tmp_path, "drt.json", paley_tournament(7))
        code = main(["convert", "drt-to-hadamard", "--input", t_path])
        h_text = capsys.readouterr().out
        assert code == 0
        assert json.loads(h_text)["kind"] == "sign_matrix"
        h_path = tmp_path / "had.json"
        h_path.write_text(h_text)
        code = main(["convert", "hadamard-to-drt", "--input", str(h_path)])
        back = capsys.readouterr().out
        assert code == 0
        assert back == serialize_document(paley_tournament(7))

    def test_rejects_non_drt(self, tmp_path, capsys):
        path = write_doc(tmp_path, "trans.json", transitive_tournament(7))
        code, report = run(capsys, "convert", "drt-to-hadamard", "--input", path)
        assert code == 2
        assert report["error"]["kind"] == "input"


class TestC3:
    def test_determinant_route_agrees(self, paley_hat_path, capsys):
        code, report = run(
            capsys,
            "c3",
            "--input",
            paley_hat_path,
            "--pair",
            "1,2",
            "--via-determinants",
        )
        assert code == 0
        assert report["dominating_vertex"] == 0
        assert report["c3"] == 2
        assert report["o3"] == 3
        assert report["determinant_count"] == 2
        assert report["agrees_with_direct"] is True

    def test_pair_must_avoid_dominator(self, paley_hat_path, capsys):
        code, report = run(
            capsys, "c3", "--input", paley_hat_path, "--pair", "0,3"
        )
        assert code == 2
        assert "dominating" in report["error"]["message"]

    def test_bad_pair_syntax(self, paley_hat_path, capsys):
        code, report = run(
            capsys, "c3", "--input", paley_hat_path, "--pair", "1:2"
        )
        assert code == 2

    def test_needs_imaginary_labels(self, tmp_path, capsys):
        g = c_representation(transitive_tournament(6), UNIT_C)
        path = write_doc(tmp_path, "crep.json", g)
        code, report = run(capsys, "c3", "--input", path, "--pair", "1,2")
        assert code == 2
        assert "imaginary" in report["error"]["message"]


class TestErrorsAndEnvironment:
    def test_missing_file(self, capsys):
        code, report = run(
            capsys, "check", "--input", "/no/such/file.json", "--k", "2"
        )
        assert code == 2
        assert "cannot read" in report["error"]["message"]

    def test_kind_mismatch(self, tmp_path, capsys):
        path = write_doc(tmp_path, "t.json", paley_tournament(7))
        code, report = run(capsys, "check", "--input", path, "--k", "2")
        assert code == 2
        assert "hermitian" in report["error"]["message"]

    def test_repeat_runs_identical(self, paley_hat_path, capsys):
        main(["check", "--input", paley_hat_path, "--k", "5"])
        first = capsys.readouterr().out
        main(["check", "--input", paley_hat_path, "--k", "5"])
        second = capsys.readouterr().out
        assert first == second

    def test_env_eps_rejected(self, monkeypatch, capsys):
        monkeypatch.setenv("SPECTRAMONO_EPS", "banana")
        code, report = run(capsys, "construct", "paley", "--q", "3")
        assert code == 2
        assert "SPECTRAMONO_EPS" in report["error"]["message"]

    def test_env_eps_applied(self, monkeypatch, capsys):
        monkeypatch.setenv("SPECTRAMONO_EPS", "0.5")
        code, _ = run(capsys, "construct", "paley", "--q", "3")
        assert code == 0
        assert get_eps() == 0.5
