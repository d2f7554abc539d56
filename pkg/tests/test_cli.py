"""Command-line contract: exit codes, schema-valid JSON, byte-identical
reruns, and the weights-source exclusivity rule."""

import json

import jsonschema
import pytest

from parmirror import schemas
from parmirror.chambers import sample_generic_weights
from parmirror.cli import main
from parmirror.moduli import ModuliParams


def _run_json(tmp_path, name, argv):
    out = tmp_path / f"{name}.json"
    code = main(argv + ["--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_lemma_prints_720(capsys):
    assert main(["lemma", "--n", "7"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "720"


def test_lemma_json(tmp_path):
    code, data = _run_json(tmp_path, "lemma", ["lemma", "--n", "5"])
    assert code == 0
    jsonschema.validate(data, schemas.load("lemma"))
    assert data["residue_counts"] == [24, 24, 24, 24, 24]
    assert data["uniform"] and data["insertions_ok"]
    assert data["insertions_checked"] == 24


def test_nonprime_rank_is_usage_error(capsys):
    assert main(["tms", "--n", "4", "--g", "2", "--marked", "1"]) == 2
    assert "not prime" in capsys.readouterr().err


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["tms", "--rank", "2"])
    assert exc.value.code == 2


def test_tms_report(tmp_path, capsys):
    code, data = _run_json(
        tmp_path,
        "tms",
        ["tms", "--n", "2", "--g", "2", "--marked", "1", "--deg", "0",
         "--seed", "7", "--scale", "1/1000"],
    )
    assert code == 0
    jsonschema.validate(data, schemas.load("tms_report"))
    assert data["equal"] is True
    assert "timing_ms" not in data
    assert "equal=true" in capsys.readouterr().out


def test_tms_timings_flag(tmp_path):
    code, data = _run_json(
        tmp_path,
        "tms_timed",
        ["tms", "--n", "2", "--g", "2", "--marked", "1", "--seed", "1", "--timings"],
    )
    assert code == 0
    assert set(data["timing_ms"]) == {
        "walls", "census", "bruteforce", "closed", "cyclotomic", "stringy",
    }
    jsonschema.validate(data, schemas.load("tms_report"))


def test_weights_file_and_sampler_conflict(tmp_path, capsys):
    w = sample_generic_weights(ModuliParams(2, 2, 1, 0), seed=2)
    path = tmp_path / "w.json"
    path.write_text(json.dumps(w.to_jsonable()), encoding="utf-8")
    base = ["tms", "--n", "2", "--g", "2", "--marked", "1", "--weights", str(path)]
    assert main(base + ["--seed", "3"]) == 2
    assert "pick one source" in capsys.readouterr().err
    assert main(base) == 0


def test_weights_file_missing_is_usage_error(tmp_path):
    assert main(
        ["tms", "--n", "2", "--g", "2", "--marked", "1",
         "--weights", str(tmp_path / "nope.json")]
    ) == 2


def test_variant_report_and_csv(tmp_path):
    csv_path = tmp_path / "census.csv"
    out = tmp_path / "variant.json"
    code = main(
        ["variant", "--n", "2", "--g", "2", "--marked", "1", "--seed", "5",
         "--out", str(out), "--csv", str(csv_path)]
    )
    assert code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    jsonschema.validate(data, schemas.load("variant"))
    assert data["equal"] is True
    assert data["bruteforce"] == data["closed"] == data["cyclotomic"]
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "words,m,s,d_n,degree"
    assert len(lines) == data["component_count"] + 1


def test_stringy_report(tmp_path):
    code, data = _run_json(
        tmp_path, "stringy", ["stringy", "--n", "3", "--g", "2", "--marked", "1"]
    )
    assert code == 0
    jsonschema.validate(data, schemas.load("stringy"))
    assert data["fixed_locus_dim"] == 4
    assert data["fermionic_shift"] == 9
    assert data["orbit_count"] == 2


def test_walls_report_with_and_without_weights(tmp_path):
    code, bare = _run_json(
        tmp_path, "walls_bare", ["walls", "--n", "2", "--g", "2", "--marked", "2"]
    )
    assert code == 0
    jsonschema.validate(bare, schemas.load("walls"))
    assert "weights" not in bare and "generic" not in bare
    assert bare["count"] == len(bare["walls"]) > 0

    code, with_w = _run_json(
        tmp_path, "walls_w",
        ["walls", "--n", "2", "--g", "2", "--marked", "2", "--seed", "3"],
    )
    assert code == 0
    jsonschema.validate(with_w, schemas.load("walls"))
    assert with_w["generic"] is True


def test_orbits_report(tmp_path):
    code, data = _run_json(
        tmp_path, "orbits",
        ["orbits", "--n", "3", "--g", "2", "--deg", "1", "--gamma", "1,2,0,1"],
    )
    assert code == 0
    jsonschema.validate(data, schemas.load("orbits"))
    assert data["orbit_size"] == 3
    assert data["invariant_count"] == 0
    assert data["kernel_components"] == 3
    assert data["action_ok"] is True


def test_orbits_zero_gamma_is_usage_error():
    assert main(["orbits", "--n", "3", "--g", "2", "--gamma", "0,0,0,0"]) == 2


def test_section_report(tmp_path):
    code, data = _run_json(
        tmp_path, "section", ["section", "--n", "5", "--g", "2", "--marked", "2"]
    )
    assert code == 0
    jsonschema.validate(data, schemas.load("section"))
    assert data["check"] is True
    assert data["reversed_control"] is False


def test_sweep_reruns_byte_identical(tmp_path):
    config = tmp_path / "grid.ini"
    config.write_text(
        "[grid]\nn = 2\ng = 2\nk = 1 2\nd = 0 1\n"
        "[sampling]\nseeds = 1 2\nscales = 1\n",
        encoding="utf-8",
    )
    outs = []
    for run, threads in (("a", "1"), ("b", "8")):
        out = tmp_path / f"sweep_{run}.json"
        code = main(
            ["--threads", threads, "sweep", "--config", str(config), "--out", str(out)]
        )
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    jsonschema.validate(data, schemas.load("sweep"))
    assert data["summary"]["all_equal"] is True


def test_sweep_csv(tmp_path):
    config = tmp_path / "grid.ini"
    config.write_text(
        "[grid]\nn = 2\ng = 2\nk = 1\nd = 0\n[sampling]\nseeds = 1\nscales = 1\n",
        encoding="utf-8",
    )
    csv_path = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", str(config), "--csv", str(csv_path)]) == 0
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,g,k,d,equal,component_count,wall_count,error"
    assert len(lines) == 2


def test_sweep_missing_config_is_usage_error(tmp_path):
    assert main(["sweep", "--config", str(tmp_path / "nope.ini")]) == 2
