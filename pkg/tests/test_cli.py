import json
import subprocess
import sys
import time

import pytest
import requests

from groundcap import read_annotations, serialize_video_annotation
from groundcap.cli import main
from groundcap.jsonio import canonical_json
from conftest import (
    beverage_fixtures,
    beverage_frames,
    make_corpus,
    stirring_fixtures,
    stirring_frames,
)
from groundcap import MockLlmServer


def frames_jsonl(frames) -> str:
    lines = []
    for f in frames:
        lines.append(
            json.dumps(
                {
                    "video_id": f.video_id,
                    "frame_index": f.frame_index,
                    "width": f.width,
                    "height": f.height,
                    "caption": f.caption,
                    "objects": [
                        {"phrase": o.phrase, "box": [v for v in o.box.as_list()]}
                        for o in f.objects
                    ],
                }
            )
        )
    return "\n".join(lines) + "\n"


@pytest.fixture
def stir_input(tmp_path):
    path = tmp_path / "frames.jsonl"
    path.write_text(frames_jsonl(stirring_frames() + beverage_frames()), "utf-8")
    return path


def write_config(tmp_path, server, **extra):
    config = {"endpoint": server.url, "model": "mock", "backoff": 0.0}
    config.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config), "utf-8")
    return path


class TestBuild:
    def test_end_to_end_and_determinism(self, tmp_path, stir_input):
        fixtures = {**stirring_fixtures(), **beverage_fixtures()}
        outputs = []
        with MockLlmServer(fixtures) as server:
            config = write_config(tmp_path, server)
            for run in range(2):
                out = tmp_path / f"dataset-{run}.jsonl"
                rejected = tmp_path / f"rejected-{run}.jsonl"
                manifest = tmp_path / f"manifest-{run}.json"
                code = main(
                    [
                        "build",
                        "--input",
                        str(stir_input),
                        "--out",
                        str(out),
                        "--rejected",
                        str(rejected),
                        "--manifest",
                        str(manifest),
                        "--config",
                        str(config),
                    ]
                )
                assert code == 0
                outputs.append(
                    (out.read_bytes(), rejected.read_bytes(), manifest.read_bytes())
                )
        assert outputs[0][0] == outputs[1][0]  # dataset byte-identical
        assert outputs[0][1] == outputs[1][1] == b""  # no rejections
        # manifests identical except they were written to different paths
        records = read_annotations(outputs[0][0])
        assert [r.video_id for r in records] == ["vid-bev", "vid-stir"]
        stir = records[1]
        assert stir.caption.plain == "A person is stirring food in a bowl using a spoon"
        manifest = json.loads(outputs[0][2])
        assert manifest["counts"] == {"videos": 2, "accepted": 2, "rejected": 0}
        assert set(manifest["inputs"]) == {str(stir_input)}

    def test_rejections_logged(self, tmp_path):
        frames = stirring_frames("broken", salted=True)
        path = tmp_path / "frames.jsonl"
        path.write_text(frames_jsonl(frames), "utf-8")
        with MockLlmServer({}, default="not a dict") as server:
            config = write_config(tmp_path, server, retries=0)
            out = tmp_path / "dataset.jsonl"
            rejected = tmp_path / "rejected.jsonl"
            code = main(
                [
                    "build",
                    "--input",
                    str(path),
                    "--out",
                    str(out),
                    "--rejected",
                    str(rejected),
                    "--config",
                    str(config),
                ]
            )
        assert code == 0
        assert out.read_bytes() == b""
        log = json.loads(rejected.read_text())
        assert log["video_id"] == "broken"
        assert log["reasons"][0]["code"] == "no-dictionary"


class TestEval:
    def test_self_evaluation_is_perfect(self, tmp_path, rng):
        records = make_corpus(rng, 4)
        gt = tmp_path / "gt.jsonl"
        gt.write_bytes(
            b"".join(serialize_video_annotation(r) + b"\n" for r in records)
        )
        # predictions: same records with full-confidence scores
        preds = []
        for r in records:
            obj = json.loads(serialize_video_annotation(r))
            for track in obj["tracks"]:
                track["confidence"] = {k: 1.0 for k in track["boxes"]}
            preds.append(obj)
        pred = tmp_path / "pred.jsonl"
        pred.write_text("\n".join(json.dumps(p) for p in preds) + "\n", "utf-8")
        out = tmp_path / "report.json"
        code = main(["eval", "--pred", str(pred), "--gt", str(gt), "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        for level in ("frame_level", "video_level"):
            assert report[level]["ap50"] == 1.0
            assert report[level]["miou"] == 1.0
            assert report[level]["recall"] == 1.0
        # the written report conforms to the shipped schema
        import importlib.resources

        import jsonschema

        schema = json.loads(
            importlib.resources.files("groundcap.schemas")
            .joinpath("metrics_report.schema.json")
            .read_text("utf-8")
        )
        jsonschema.Draft202012Validator(schema).validate(report)

    def test_same_file_both_sides_scores_perfect(self, tmp_path, rng):
        # ground-truth records carry no confidences but are valid predictions
        records = make_corpus(rng, 3)
        data = tmp_path / "data.jsonl"
        data.write_bytes(b"".join(serialize_video_annotation(r) + b"\n" for r in records))
        out = tmp_path / "report.json"
        assert main(["eval", "--pred", str(data), "--gt", str(data), "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["frame_level"] == {"ap50": 1.0, "miou": 1.0, "recall": 1.0}
        assert report["video_level"] == {"ap50": 1.0, "miou": 1.0, "recall": 1.0}

    def test_bad_pred_video_fails(self, tmp_path, rng):
        gt_records = make_corpus(rng, 2)
        stray = make_corpus(rng, 1, prefix="stray")
        gt = tmp_path / "gt.jsonl"
        gt.write_bytes(b"".join(serialize_video_annotation(r) + b"\n" for r in gt_records))
        pred = tmp_path / "pred.jsonl"
        obj = json.loads(serialize_video_annotation(stray[0]))
        for track in obj["tracks"]:
            track["confidence"] = {k: 1.0 for k in track["boxes"]}
        pred.write_text(json.dumps(obj) + "\n", "utf-8")
        out = tmp_path / "report.json"
        assert main(["eval", "--pred", str(pred), "--gt", str(gt), "--out", str(out)]) == 1


class TestValidate:
    def test_valid_dataset_exits_zero(self, tmp_path, rng):
        records = make_corpus(rng, 3)
        path = tmp_path / "data.jsonl"
        path.write_bytes(b"".join(serialize_video_annotation(r) + b"\n" for r in records))
        assert main(["validate", "--input", str(path)]) == 0

    def test_out_of_frame_box_exits_one(self, tmp_path, rng, capsys):
        record = json.loads(serialize_video_annotation(make_corpus(rng, 1)[0]))
        first_track = record["tracks"][0]
        frame_key = next(iter(first_track["boxes"]))
        first_track["boxes"][frame_key] = [9000.0, 9000.0, 50.0, 50.0]
        path = tmp_path / "data.jsonl"
        path.write_text(json.dumps(record) + "\n", "utf-8")
        assert main(["validate", "--input", str(path)]) == 1
        assert "box-out-of-frame" in capsys.readouterr().out


class TestStats:
    def test_stats_report_written(self, tmp_path, rng):
        records = make_corpus(rng, 5)
        path = tmp_path / "data.jsonl"
        path.write_bytes(b"".join(serialize_video_annotation(r) + b"\n" for r in records))
        out = tmp_path / "stats.json"
        assert main(["stats", "--input", str(path), "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["num_videos"] == 5
        assert report["total_num_instances"] > 0


class TestSvoAndIngest:
    def test_ingest_normalizes_masks(self, tmp_path):
        record = {
            "video_id": "m1",
            "frame_index": 0,
            "width": 10,
            "height": 10,
            "caption": "a cup",
            "objects": [{"phrase": "a cup", "mask": [73, 1, 26]}],
        }
        path = tmp_path / "frames.jsonl"
        path.write_text(json.dumps(record) + "\n", "utf-8")
        out = tmp_path / "normalized.jsonl"
        assert main(["ingest", "--input", str(path), "--out", str(out)]) == 0
        parsed = json.loads(out.read_text())
        assert parsed["objects"][0]["box"] == [3.0, 7.0, 1.0, 1.0]

    def test_svo_output(self, tmp_path, stir_input):
        out = tmp_path / "svo.jsonl"
        assert main(["svo", "--input", str(stir_input), "--out", str(out)]) == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert {l["video_id"] for l in lines} == {"vid-stir", "vid-bev"}
        stir = next(l for l in lines if l["video_id"] == "vid-stir")
        first = stir["frames"][0]["relations"][0]
        assert first["subject"] == "image" and first["verb"] == "shows"

    def test_aggregate_then_track(self, tmp_path, stir_input):
        fixtures = {**stirring_fixtures(), **beverage_fixtures()}
        with MockLlmServer(fixtures) as server:
            config = write_config(tmp_path, server)
            svo_out = tmp_path / "svo.jsonl"
            assert main(["svo", "--input", str(stir_input), "--out", str(svo_out)]) == 0
            captions = tmp_path / "captions.jsonl"
            rejected = tmp_path / "agg-rejected.jsonl"
            assert (
                main(
                    [
                        "aggregate",
                        "--input",
                        str(svo_out),
                        "--out",
                        str(captions),
                        "--rejected",
                        str(rejected),
                        "--config",
                        str(config),
                    ]
                )
                == 0
            )
            track_out = tmp_path / "assignments.jsonl"
            assert (
                main(
                    [
                        "track",
                        "--input",
                        str(stir_input),
                        "--captions",
                        str(captions),
                        "--out",
                        str(track_out),
                        "--config",
                        str(config),
                    ]
                )
                == 0
            )
        caption_lines = [json.loads(l) for l in captions.read_text().splitlines()]
        assert len(caption_lines) == 2
        assignments = [json.loads(l) for l in track_out.read_text().splitlines()]
        stir = next(a for a in assignments if a["video_id"] == "vid-stir")
        assigned = {a["frame_phrase"]: a["assigned"] for a in stir["assignments"]}
        assert assigned["a person"] == "A person"
        assert assigned["a cup"] is None


class TestUsageErrors:
    def test_unknown_flag_exit_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["eval", "--nonsense"])
        assert excinfo.value.code == 2

    def test_unknown_command_exit_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2

    def test_missing_input_file_exit_1(self, tmp_path):
        out = tmp_path / "x.jsonl"
        assert main(["svo", "--input", str(tmp_path / "nope.jsonl"), "--out", str(out)]) == 1


def test_mock_llm_subcommand_serves_fixtures(tmp_path):
    fixtures_path = tmp_path / "fixtures.json"
    fixtures_path.write_text(
        json.dumps({"responses": {}, "default": "{`CATEGORY': `None'}"}), "utf-8"
    )
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "groundcap.cli",
            "mock-llm",
            "--fixtures",
            str(fixtures_path),
            "--port",
            "18457",
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        text=True,
    )
    try:
        deadline = time.time() + 10
        url = "http://127.0.0.1:18457/v1/chat/completions"
        response = None
        while time.time() < deadline:
            try:
                response = requests.post(
                    url,
                    json={"messages": [{"role": "user", "content": "hello"}]},
                    timeout=1,
                )
                break
            except requests.ConnectionError:
                time.sleep(0.1)
        assert response is not None, "mock server never came up"
        assert response.status_code == 200
        assert response.json()["choices"][0]["message"]["content"] == "{`CATEGORY': `None'}"
    finally:
        proc.terminate()
        proc.wait(timeout=5)


def test_canonical_json_float_format():
    assert canonical_json({"x": 0.5, "n": 3, "s": "é"}) == '{"n": 3, "s": "é", "x": 0.500000}'
    assert canonical_json({"10": 1, "2": 2}) == '{"2": 2, "10": 1}'
