import json
import subprocess
import sys
from fractions import Fraction

import pytest

from vtwist import cli
from vtwist.errors import ConfigError

SMALL = ["--variant", "V(p,q)", "--p", "2", "--q", "1", "--cutoff", "2", "--twist", "Q-screen"]


def check(argv, tmp_path, name="r.jsonl"):
    out = tmp_path / name
    rc = cli.main(["check", *argv, "--report", str(out)])
    return rc, out.read_text()


def test_config_file_parsing(tmp_path):
    f = tmp_path / "c.cfg"
    f.write_text("# comment\nvariant = V_L # trailing\np = 3\nq = 2\ncutoff = 5/2\n"
                 "twist = heisenberg(1/3)\nsuite = untwisted, equivariance\n")
    args = cli.make_parser().parse_args(["check", "--config", str(f), "--cutoff", "2"])
    cfg = cli.build_config(args)
    assert (cfg.variant, cfg.p, cfg.q) == ("VL", 3, 2)
    assert cfg.cutoff == 2  # flag beats file
    assert cfg.suite == ["untwisted", "equivariance"]
    assert cli.parse_twist(cfg.twist) == ("heisenberg", Fraction(1, 3))


@pytest.mark.parametrize("alias,name", sorted(cli.VARIANT_ALIASES.items()))
def test_variant_aliases(alias, name):
    args = cli.make_parser().parse_args(["check", "--variant", alias, "--cutoff", "1"])
    assert cli.build_config(args).variant == name


@pytest.mark.parametrize("text", ["p = x", "bogus = 1", "no equals sign", "twist = spin"])
def test_bad_config_rejected(tmp_path, text):
    f = tmp_path / "bad.cfg"
    f.write_text(text + "\n")
    with pytest.raises(ConfigError):
        cli.build_config(cli.make_parser().parse_args(["check", "--config", str(f)]))


@pytest.mark.parametrize("argv", [["--p", "2", "--q", "2"], ["--variant", "W"], ["--suite", "nope"],
                                  ["--cutoff", "-1"], ["--config", "/nonexistent.cfg"]])
def test_exit_code_2(argv, capsys):
    assert cli.main(["check", *argv]) == 2
    assert "vtwist: error:" in capsys.readouterr().err


def test_exit_code_0_and_report_shape(tmp_path):
    rc, text = check(SMALL, tmp_path)
    assert rc == 0
    lines = text.splitlines()
    recs = [json.loads(l) for l in lines if not l.startswith("#")]
    assert recs[0]["record"] == "header" and recs[0]["cocycle"]
    assert recs[-1] == {"record": "summary", "status": "pass", "checks": 17, "failed": []}
    assert lines[len(recs)] == "# PASS: 17 checks, 0 failed"
    twist = next(r for r in recs if r["record"] == "twist")
    assert twist["mu"] == "0" and twist["order"] is None


def test_exit_code_1_on_failed_prerequisite(tmp_path):
    # gamma(-1) under the shifted conformal vector is not primary
    rc, text = check(["--cutoff", "1", "--twist", "heisenberg(1)"], tmp_path)
    assert rc == 1
    assert '"reason":"L(1)u must vanish"' in text


def test_report_is_deterministic_with_and_without_cache(tmp_path):
    cache_dir = tmp_path / "cache"
    _, cold = check(SMALL, tmp_path, "a")
    _, cold_cached = check(SMALL + ["--cache", str(cache_dir)], tmp_path, "b")
    files = list(cache_dir.iterdir())
    assert len(files) == 1
    blob = files[0].read_bytes()
    _, warm = check(SMALL + ["--cache", str(cache_dir)], tmp_path, "c")
    assert cold == cold_cached == warm
    assert files[0].read_bytes() == blob


def test_cache_header_mismatch_is_ignored(tmp_path):
    cache_dir = tmp_path / "cache"
    check(SMALL + ["--cache", str(cache_dir)], tmp_path)
    path = next(cache_dir.iterdir())
    lines = path.read_text().splitlines()
    head = json.loads(lines[0])
    head["cocycle"] = "other"
    path.write_text("\n".join([json.dumps(head, sort_keys=True)] + lines[1:]) + "\n")
    cfg = cli.build_config(cli.make_parser().parse_args(["check", *SMALL, "--cache", str(cache_dir)]))
    assert cli.Session(cfg).loaded == 0


def test_build_requires_cache_path(monkeypatch, tmp_path):
    monkeypatch.delenv("VTWIST_CACHE_DIR", raising=False)
    assert cli.main(["build", "--cutoff", "1"]) == 2
    monkeypatch.setenv("VTWIST_CACHE_DIR", str(tmp_path))
    assert cli.main(["build", "--cutoff", "1", "--twist", "Q-screen"]) == 0
    assert len(list(tmp_path.iterdir())) == 1


def test_dims_subcommand(tmp_path):
    out = tmp_path / "d.json"
    assert cli.main(["dims", *SMALL, "--report", str(out)]) == 0
    rec = json.loads(out.read_text())
    assert rec["before"] == {"0": 3, "1": 6, "2": 9, "3": 18}
    assert rec["after"] == {"(0,0)": 3, "(1,0)": 6, "(2,0)": 9, "(3,0)": 18}


def test_dims_subcommand_heisenberg(tmp_path):
    out = tmp_path / "d.json"
    argv = ["--variant", "VL-standard", "--N", "1", "--cutoff", "1", "--twist", "heisenberg(1/4)"]
    assert cli.main(["dims", *argv, "--report", str(out)]) == 0
    after = json.loads(out.read_text())["after"]
    # e^{+-gamma} land at weight 1 + 1/2 + 1/16 and 1 - 1/2 + 1/16
    assert after["(25/16,1/2)"] == 1 and after["(9/16,-1/2)"] == 1
    assert after["(1/16,0)"] == 1


def test_twist_subcommand(tmp_path):
    out = tmp_path / "t.jsonl"
    assert cli.main(["twist", *SMALL, "--v", "g(-1)", "--w", "g(-1)", "--report", str(out)]) == 0
    rows = [json.loads(l) for l in out.read_text().splitlines()]
    assert {"coefficient": "(16)*e^(1)[plus]", "log_power": 1, "x_exponent": "-1"} in rows
    assert cli.main(["twist", *SMALL, "--v", "nope", "--w", "u"]) == 2
    assert cli.main(["twist", "--cutoff", "1", "--v", "u", "--w", "u"]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "vtwist.cli", "check", "--p", "2", "--q", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "coprime" in proc.stderr
