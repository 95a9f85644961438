import math

import pytest

import adrsig


def test_read_codes():
    code = adrsig.parse_code("N245.16")
    assert code.level == 4
    assert code.stem == "N245."
    assert code.key_at_level(3) == "N24"
    assert adrsig.key_at_level("I2I1E.00", 5) == "I2I1E"
    with pytest.raises(adrsig.AdrsigError):
        adrsig.parse_code("")
    with pytest.raises(ValueError):
        adrsig.parse_code("has space")


def test_statistics():
    assert adrsig.t_cdf(0.0, 10) == pytest.approx(0.5, abs=1e-15)
    assert adrsig.t_cdf(1.0, 1) == pytest.approx(0.75, abs=1e-12)
    res = adrsig.student_t_test([1, 2, 3, 4, 5], [3, 5, 6, 8, 9])
    assert res.df == 8
    assert res.t_stat > 0
    assert 0 < res.p_value < 0.05
    paired = adrsig.student_t_test([1, 2, 3], [2, 4, 7], mode="paired")
    assert paired.df == 2
    r = adrsig.ratio_stats(0, 40, 14905)
    assert r.r1 == 40.0
    assert round(r.r2_percent, 2) == 0.27


def test_synthesize_then_detect(tmp_path):
    ledger = adrsig.synthesize(str(tmp_path), n_patients=2000, n_codes=60, n_planted=3, multiplier=6.0, seed=3)
    planted = {e.code for e in ledger if e.multiplier != 1.0}
    assert len(planted) == 3

    cfg = adrsig.DetectionConfig()
    cfg.top_k = 60
    rows = adrsig.detect_files(
        str(tmp_path / "prescriptions.csv"),
        str(tmp_path / "events.csv"),
        "simvastatin",
        patients=str(tmp_path / "patients.csv"),
        config=cfg,
    )
    keys = {r.key for r in rows}
    assert planted <= keys
    assert [r.rank for r in rows] == list(range(1, len(rows) + 1))
    assert all(r.na > r.nb and r.p_value < 0.05 for r in rows)
    assert all(math.isfinite(r.r1) for r in rows)

    csv_text = adrsig.render(rows, "csv")
    assert csv_text.startswith("rank,readcode,description,NB,NA,R1,R2,p\r\n")


def test_config_validation():
    cfg = adrsig.DetectionConfig()
    cfg.level = 3
    assert cfg.level == 3
    cfg.rank_by = "r1"
    assert cfg.rank_by == "r1"
    with pytest.raises(ValueError):
        cfg.level = 4


def test_cli_in_process(tmp_path):
    code, out, err = adrsig.cli(["detect", "--prescriptions", "x.csv", "--events", "y.csv"])
    assert code == 1
    assert "--drug" in err
    code, _, _ = adrsig.cli(["synth", "--out-dir", str(tmp_path), "--n-patients", "100", "--seed", "42"])
    assert code == 0
    assert (tmp_path / "ledger.csv").exists()
