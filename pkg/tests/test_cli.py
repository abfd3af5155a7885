import json

from toricroots.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def test_roots_command_weighted_projective(capsys):
    code, payload = run_json(capsys, "roots", "--ray-matrix", "3 2 1")
    assert code == 0
    assert payload["schema_version"] == 1
    assert payload["count"] == 11
    assert payload["positive_count"] == 10
    assert payload["column_permutation"] == [1, 2, 3]
    assert payload["by_ray"][3] == [[0, 0, 1]]
    assert len(payload["positive_by_ray"][0]) == 6


def test_enumerate_command_histogram(capsys):
    code, payload = run_json(
        capsys, "enumerate", "--ray-matrix", "3 2 1", "--histogram"
    )
    assert code == 0
    assert payload["count"] == 27
    assert payload["histogram"] == [
        [3, 1], [4, 3], [5, 4], [6, 6], [7, 5], [8, 5], [9, 2], [10, 1],
    ]
    assert payload["complete"] is True


def test_enumerate_cap_emits_partial_output(capsys):
    code, out, err = run(
        capsys, "enumerate", "--ray-matrix", "3 2 1", "--max-results", "5"
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["complete"] is False
    assert payload["count"] == 5
    assert len(payload["subgroups"]) == 5


def test_surface_not_radiant_exits_one(capsys):
    code, out, err = run(capsys, "surface", "--sequence", "1,1,1,1,1,1")
    assert code == 1
    payload = json.loads(out)
    assert payload["radiant"] is False


def test_surface_report_and_enumerate(capsys):
    code, payload = run_json(capsys, "surface", "--sequence", "0,2,0,-2")
    assert code == 0
    assert payload["radiant"] and payload["d"] == 2
    assert payload["subgroup_count"] == 3

    code, payload = run_json(capsys, "surface", "--enumerate", "--max-m", "5")
    assert code == 0
    assert [1, 1, 1] not in payload["sequences"]
    assert all(payload["radiant"])


def test_bilateral_command(capsys):
    code, payload = run_json(capsys, "bilateral", "--rays", "1 0; 0 1; -1 -1")
    assert code == 0
    assert payload["bilateral"] is True
    assert payload["basis_rays"] == [1, 2]
    assert payload["ray_matrix"] == [[1, 1]]

    hexagon = "1 0; 0 1; -1 1; -1 0; 0 -1; 1 -1"
    code, payload = run_json(capsys, "bilateral", "--rays", hexagon)
    assert code == 0
    assert payload["bilateral"] is False


def test_rays_input_feeds_analyses(capsys):
    code, payload = run_json(capsys, "type", "--rays", "1 0; 0 1; -1 -1")
    assert code == 0 and payload["type"] == "II"
    # non-bilateral rays are a domain error for radiant-only analyses
    hexagon = "1 0; 0 1; -1 1; -1 0; 0 -1; 1 -1"
    code, out, err = run(capsys, "roots", "--rays", hexagon)
    assert code == 1 and "not radiant" in err


def test_series_command_and_dot(capsys):
    code, payload = run_json(capsys, "series", "--ray-matrix", "3 2 1")
    assert code == 0
    assert payload["nilpotency_class"] == 5
    assert payload["derived_length"] == 3
    assert payload["center_indices"] == [1]

    code, dot, err = run(capsys, "series", "--ray-matrix", "3 2 1", "--format", "dot")
    assert code == 0 and err == ""
    assert dot.startswith("digraph")
    assert dot.count("->") == 24
    assert dot.count("style=dashed") == 12 and dot.count("style=dotted") == 12
    assert '"-q3" -> "-q2" [style=dotted];' in dot

    code, dot2, _ = run(capsys, "series", "--ray-matrix", "1 1", "--format", "dot")
    assert dot2.count("->") == 2  # the projective plane graph has two arrows


def test_dot_isolated_vertices(capsys):
    # incomparable columns: no arrows, nodes still listed
    code, dot, _ = run(
        capsys, "series", "--ray-matrix", "0 1 1; 1 0 1; 1 1 0; 1 1 1",
        "--format", "dot",
    )
    assert code == 0
    assert dot.count("->") == 0
    assert dot.count('"-q') == 3


def test_umax_center_split_type(capsys):
    code, payload = run_json(capsys, "umax", "--ray-matrix", "3 2 1")
    assert code == 0
    assert payload["shape_display"] == "(G_a ⋉ G_a^3) ⋉ G_a^6"
    assert payload["simple_components"] == 1

    code, payload = run_json(capsys, "center", "--ray-matrix", "1 1 0; 1 0 0; 0 0 1")
    assert payload["center_indices"] == [1, 3]

    code, payload = run_json(
        capsys, "split", "--ray-matrix", "1 0 0; 0 0 1; 0 1 0; 0 1 1"
    )
    assert payload["projective_lines"] == 1
    assert payload["remaining_ray_matrix"] == [[0, 1], [1, 0], [1, 1]]

    code, out, err = run(capsys, "split", "--ray-matrix", "3 2 1")
    assert code == 1 and "Type I" in err


def test_verify_command(capsys):
    code, payload = run_json(capsys, "verify", "--ray-matrix", "1 1")
    assert code == 0 and payload["ok"] is True
    names = {c["name"] for c in payload["checks"]}
    assert names == {
        "one-parameter-law",
        "conjugation-identity",
        "first-order-bracket",
        "matrix-embedding",
    }


def test_input_file_and_schema_round_trip(tmp_path, capsys):
    doc = {"n": 3, "ray_matrix": [[3, 2, 1]]}
    path = tmp_path / "fan.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, payload = run_json(capsys, "roots", "--input", str(path))
    assert code == 0 and payload["count"] == 11

    seq_doc = {"sequence": [0, 1, 0, -1]}
    path2 = tmp_path / "seq.json"
    path2.write_text(json.dumps(seq_doc), encoding="utf-8")
    code, payload = run_json(capsys, "surface", "--input", str(path2))
    assert code == 0 and payload["d"] == 1

    # echoing the reported matrix back in reproduces the same analysis
    again = {"n": 2, "ray_matrix": payload["ray_matrix"]}
    path3 = tmp_path / "fan2.json"
    path3.write_text(json.dumps(again), encoding="utf-8")
    code, payload2 = run_json(capsys, "series", "--input", str(path3))
    assert code == 0 and payload2["nilpotency_class"] == payload["nilpotency_class"]


def test_malformed_inputs_exit_two(capsys):
    cases = [
        ("roots", "--ray-matrix", "oops"),
        ("roots", "--ray-matrix", "1 0; 1 0"),
        ("roots", "--ray-matrix", "1 0; 0 -1"),
        ("series", "--ray-matrix", "1 2; 3"),
        ("umax",),
        ("surface", "--sequence", "0,0,0"),
    ]
    for argv in cases:
        code, out, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error:")


def test_two_sources_rejected(capsys):
    code, out, err = run(
        capsys, "roots", "--ray-matrix", "1 1", "--rays", "1 0; 0 1; -1 -1"
    )
    assert code == 2 and "exactly one input source" in err


def test_output_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        code, out, err = run(
            capsys, "enumerate", "--ray-matrix", "3 2 1", "--histogram"
        )
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    code1, table1, _ = run(capsys, "roots", "--ray-matrix", "3 2 1", "--format", "table")
    code2, table2, _ = run(capsys, "roots", "--ray-matrix", "3 2 1", "--format", "table")
    assert table1 == table2
