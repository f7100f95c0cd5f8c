import csv
import io
import json
import re
import subprocess
import sys
from dataclasses import replace

import pytest

from sulsim import cli
from sulsim.controller import ControllerConfig
from sulsim.errors import ConfigError
from sulsim.geometry import GeometryConfig
from sulsim.link_budget import PUL_KA_BAND, AtmosphericKind, AtmosphericModel
from sulsim.passsim import ScenarioConfig
from sulsim.scenario import (
    ScenarioParseError,
    ScenarioVersionError,
    dump_scenario,
    load_scenario,
    scenario_from_dict,
    scenario_to_dict,
)

NUMERIC = re.compile(r"^-?\d+\.\d{6}$")


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="scenario.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_empty_document_gives_defaults(write):
    assert load_scenario(write({"schema_version": 1})) == ScenarioConfig()


def test_partial_document_overrides(write):
    sc = load_scenario(
        write({"schema_version": 1, "geometry": {"altitude_km": 550}, "noise_sigma_db": 2})
    )
    assert sc.geometry == GeometryConfig(altitude_km=550.0)
    assert sc.noise_sigma_db == 2.0
    assert sc.pul == PUL_KA_BAND


def test_round_trip(tmp_path):
    sc = ScenarioConfig(
        geometry=GeometryConfig(altitude_km=1200.0, max_elevation_deg=70.0),
        pul=replace(PUL_KA_BAND, beamwidth_3db_deg=3.5),
        atm_model=AtmosphericModel(AtmosphericKind.CONSTANT, 20.0),
        controller=ControllerConfig(2.0, 4.5, 1.0),
        beam_mode="UeCentered",
        noise_sigma_db=1.5,
        rng_seed=42,
        pass_shape="FullPass",
        sample_step_s=0.5,
    )
    path = tmp_path / "rt.json"
    dump_scenario(sc, path)
    assert load_scenario(path) == sc
    assert scenario_from_dict(scenario_to_dict(sc)) == sc


def test_frequency_ordering_error(write):
    path = write(
        {"schema_version": 1, "sul": {"frequency_mhz": 40000}, "pul": {"frequency_mhz": 30000}}
    )
    with pytest.raises(ConfigError, match="f_s < f_p") as info:
        load_scenario(path)
    assert info.value.field == "sul.frequency_mhz"


@pytest.mark.parametrize("version", [2, 0, "1", None, True])
def test_version_errors(write, version):
    doc = {} if version is None else {"schema_version": version}
    with pytest.raises(ScenarioVersionError):
        load_scenario(write(doc))


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"bogus": 1}, "bogus"),
        ({"geometry": {"height": 1}}, "geometry.height"),
        ({"geometry": {"altitude_km": -5}}, "geometry.altitude_km"),
        ({"pul": {"noise_temp_k": "hot"}}, "pul.noise_temp_k"),
        ({"controller": {"hysteresis_margin_db": -1}}, "controller.hysteresis_margin_db"),
        ({"atm_model": {"kind": "ITU"}}, "atm_model.kind"),
        ({"beam_mode": "Spot"}, "beam_mode"),
        ({"rng_seed": 1.5}, "rng_seed"),
        ({"geometry": 5}, "geometry"),
        ({"sul": {"beamwidth_3db_deg": -1}}, "sul.beamwidth_3db_deg"),
    ],
)
def test_field_precise_validation(write, doc, field):
    with pytest.raises(ConfigError) as info:
        load_scenario(write({"schema_version": 1, **doc}))
    assert info.value.field == field


@pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
def test_parse_errors(write, text):
    with pytest.raises(ScenarioParseError):
        load_scenario(write(text))


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioParseError):
        load_scenario(tmp_path / "nope.json")


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_link_budget_csv_constant_atmosphere():
    code, out, _ = run_cli("link-budget", "--elevation", "90", "--atm", "Constant", "--csv")
    assert code == 0
    rows = {r[0]: r[1:] for r in _rows(out)[1:]}
    assert _rows(out)[0] == ["term", "pul", "sul"]
    assert float(rows["snr_db"][1]) == pytest.approx(16.91, abs=0.01)
    assert float(rows["snr_db"][0]) == pytest.approx(-4.92, abs=5e-3)
    assert float(rows["doppler_hz"][0]) == 0.0
    for key in ("tx_power_dbm", "ue_gain_dbi", "sat_gain_dbi", "fspl_db", "atm_loss_db",
                "impl_loss_db", "received_power_dbm", "noise_psd_dbm_hz", "bandwidth_db_hz",
                "margin_db"):
        assert key in rows


def test_link_budget_low_elevation():
    code, out, _ = run_cli("link-budget", "--elevation", "10", "--atm", "Constant", "--csv")
    rows = {r[0]: r[1:] for r in _rows(out)[1:]}
    assert float(rows["snr_db"][1]) == pytest.approx(6.75, abs=5e-3)
    assert float(rows["slant_range_km"][1]) == pytest.approx(1931.6, abs=0.1)
    assert float(rows["doppler_hz"][0]) > 0


def test_link_budget_text_output():
    code, out, _ = run_cli("link-budget", "--elevation", "45")
    assert code == 0
    assert "Free-space path loss" in out and "PUL" in out and "SUL" in out


def test_link_budget_domain_error():
    code, _, err = run_cli("link-budget", "--elevation", "95")
    assert code == 4
    assert "domain error" in err


def test_snr_sweep_csv(tmp_path):
    out_path = tmp_path / "fig1.csv"
    code, _, _ = run_cli("snr-sweep", "--target-min", "0", "--target-max", "10",
                         "--target-step", "1", "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines()[0] == "target_snr_db,min_elev_pul_deg,min_elev_sul_enabled_deg"
    rows = _rows(text)[1:]
    assert len(rows) == 11
    assert float(rows[0][2]) <= 15.0
    for target, pul, both in rows:
        assert NUMERIC.match(target)
        if pul:
            assert NUMERIC.match(pul) and float(pul) >= float(both)
    assert rows[-1][1] == ""


def test_snr_sweep_range_error():
    code, _, _ = run_cli("snr-sweep", "--target-min", "5", "--target-max", "0")
    assert code == 2
    code, _, _ = run_cli("snr-sweep", "--target-step", "0")
    assert code == 2


def test_pass_csv_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, out, _ = run_cli("pass", "--out", str(a))
    assert code == 0
    assert "availability_fraction=1.000000" in out and "switch_count=1" in out
    run_cli("pass", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    rows = _rows(a.read_text())
    assert rows[0] == cli.PASS_HEADER
    assert ",".join(rows[0]) == (
        "time_s,elevation_deg,slant_range_km,snr_pul_db,snr_sul_db,margin_pul_db,"
        "margin_sul_db,doppler_pul_hz,doppler_sul_hz,active_carrier,available"
    )
    assert {r[9] for r in rows[1:]} <= {"PUL", "SUL"}
    for r in rows[1:]:
        assert all(NUMERIC.match(v) for v in r[:9])


def test_pass_sul_beats_pul_only():
    _, sul_out, sul_err = run_cli("pass")
    _, pul_out, pul_err = run_cli("pass", "--mode", "PulOnly")
    frac = lambda s: float(re.search(r"availability_fraction=([\d.]+)", s).group(1))  # noqa: E731
    # summary goes to stderr when the CSV occupies stdout
    assert frac(sul_err) > frac(pul_err)
    assert sul_out.startswith("time_s,")


def test_hysteresis_sweep_csv():
    code, out, _ = run_cli("hysteresis-sweep", "--dh-min", "0", "--dh-max", "2",
                           "--dh-step", "1", "--seeds", "4")
    assert code == 0
    rows = _rows(out)
    assert rows[0] == ["hysteresis_db", "mean_switches", "p95_switches"]
    assert [r[0] for r in rows[1:]] == ["0.000000", "1.000000", "2.000000"]
    assert all(r[1] == "1.000000" for r in rows[1:])


def test_hysteresis_sweep_noisy_reproducible():
    args = ("hysteresis-sweep", "--dh-max", "1", "--seeds", "5", "--sigma", "2")
    assert run_cli(*args)[1] == run_cli(*args)[1]


def test_hysteresis_sweep_bad_seeds():
    code, _, _ = run_cli("hysteresis-sweep", "--seeds", "0")
    assert code == 2


def test_exit_codes(write):
    assert run_cli("pass", "--scenario", write("{oops"))[0] == 2
    assert run_cli("pass", "--scenario", write({"schema_version": 2}))[0] == 3
    bad = write({"schema_version": 1, "sul": {"frequency_mhz": 40000}})
    code, _, err = run_cli("pass", "--scenario", bad)
    assert code == 3 and "sul.frequency_mhz" in err
    assert run_cli("pass", "--sigma", "-1")[0] == 3
    assert run_cli("no-such-command")[0] == 2
    assert run_cli("link-budget")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sulsim", "link-budget", "--elevation", "30", "--csv"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("term,pul,sul")


def test_inclusive_range():
    assert cli.inclusive_range(0, 6, 0.5) == [i * 0.5 for i in range(13)]
    assert cli.inclusive_range(2, 2, 1) == [2]
    assert len(cli.inclusive_range(0, 1, 0.1)) == 11


def test_fmt():
    assert cli.fmt(None) == ""
    assert cli.fmt(-0.0000001) == "0.000000"
    assert cli.fmt(1.5) == "1.500000"
