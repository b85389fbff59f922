import json

import pytest

import sweedler


def test_complex_numbers_presentation():
    report = json.loads(sweedler.run("present", bound=6, A="quotient_poly(x^2+1)"))
    assert report["status"] == "ok"
    pres = report["artifacts"]["presentation"]
    assert pres["dimension_sequence"] == [1, 2, 2, 2, 2, 2, 2]
    assert pres["delta"] == ["Δf0 = f0⊗1 + f1⊗f0", "Δf1 = f1⊗f1"]


def test_job_json_matches_keywords():
    job = json.dumps({"command": "hilbert", "bound": 4, "A": "dual_numbers"})
    assert sweedler.run_job(job) == sweedler.run("hilbert", bound=4, A="dual_numbers")


def test_pareigis_warns():
    report = json.loads(sweedler.run("pareigis", bound=4))
    assert report["status"] == "warn"
    assert report["artifacts"]["f_sequence"] == report["artifacts"]["h_sequence"]


def test_bad_input_raises():
    with pytest.raises(ValueError, match="offset 2"):
        sweedler.run("present", A="quotient_poly(x^+1)")
    with pytest.raises(ValueError):
        sweedler.run("no-such-command")


def test_commands():
    assert "pareigis" in sweedler.commands()
    assert len(sweedler.commands()) == 19
