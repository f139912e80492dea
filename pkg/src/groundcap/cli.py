"""Command-line interface.

Subcommands cover the pipeline stages individually (ingest, svo, aggregate,
track), the end-to-end dataset build, evaluation, validation, statistics,
and the fixture-replay mock chat server.  Every file-producing run also
writes a ``<out>.manifest.json`` with the config hash, input/output digests,
and counts; manifests carry no timestamps so identical runs are
byte-identical.

Exit codes: 0 success, 1 validation or data failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .config import PipelineConfig
from .ingest import (
    SchemaError,
    annotation_to_dict,
    group_frame_groundings,
    load_predictions,
    parse_frame_grounding,
    read_annotations,
    validate_annotation_dict,
    iter_jsonl,
)
from .captions import parse_tagged_caption, render_tagged_caption
from .jsonio import canonical_json, canonical_jsonl_bytes
from .llm import HttpChatClient, ResponseRejection, aggregate_video, track_by_language
from .metrics import EvalConfig, evaluate
from .mockllm import serve_fixtures
from .pipeline import collect_frame_objects, run_pipeline
from .records import RecordValidationError, SvoFrame, SvoRelation
from .stats import dataset_stats
from .svo import extract_svo, pos_tag

logger = logging.getLogger("groundcap")


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write_manifest(
    command: str,
    config: PipelineConfig,
    inputs: dict[str, bytes],
    outputs: dict[str, bytes],
    counts: dict[str, int],
    manifest_path: Path,
) -> None:
    manifest = {
        "command": command,
        "tool_version": __version__,
        "config_hash": config.config_hash(),
        "inputs": {name: _digest(data) for name, data in inputs.items()},
        "outputs": {name: _digest(data) for name, data in outputs.items()},
        "counts": counts,
    }
    manifest_path.write_bytes(canonical_json(manifest).encode("utf-8") + b"\n")


def _load_config(args: argparse.Namespace) -> PipelineConfig:
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    overrides = {}
    for name in (
        "endpoint",
        "model",
        "temperature",
        "retries",
        "max_in_flight",
        "fps",
        "iou_thresh",
        "sim_thresh",
        "similarity",
        "embedding_endpoint",
        "objectness_threshold",
    ):
        if hasattr(args, name):
            overrides[name] = getattr(args, name)
    return config.override(**overrides)


def _svo_payload(video_id: str, frames) -> dict:
    return {
        "video_id": video_id,
        "frames": [
            {
                "frame_index": frame.frame_index,
                "relations": [
                    {
                        "subject": r.subject,
                        "verb": r.verb,
                        "object": r.object,
                        "adpositions": [list(p) for p in r.adpositions],
                    }
                    for r in frame.relations
                ],
            }
            for frame in frames
        ],
    }


def _svo_frames_from_payload(obj: dict) -> list[SvoFrame]:
    frames = []
    for item in obj["frames"]:
        relations = tuple(
            SvoRelation(
                subject=r["subject"],
                verb=r["verb"],
                object=r.get("object"),
                adpositions=tuple((p[0], p[1]) for p in r.get("adpositions", [])),
            )
            for r in item["relations"]
        )
        frames.append(SvoFrame(item["frame_index"], relations))
    return frames


def _make_client(config: PipelineConfig) -> HttpChatClient:
    if not config.endpoint:
        raise SystemExit("error: no endpoint configured (use --endpoint or a config file)")
    return HttpChatClient(
        endpoint=config.endpoint,
        model=config.model,
        temperature=config.temperature,
        seed=config.seed,
        api_key=config.api_key(),
    )


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = _load_config(args)
    raw = Path(args.input).read_bytes()
    records = parse_frame_grounding(raw)
    dropped = 0
    out_records = []
    for record in records:
        objects = []
        for obj in record.objects:
            try:
                box = obj.pixel_box().clamped(record.width, record.height)
            except Exception:
                dropped += 1
                continue
            if box.area == 0:
                dropped += 1
                continue
            objects.append({"phrase": obj.phrase, "box": [float(v) for v in box.as_list()]})
        out_records.append(
            {
                "video_id": record.video_id,
                "frame_index": record.frame_index,
                "width": record.width,
                "height": record.height,
                "caption": record.caption,
                "objects": objects,
            }
        )
    payload = canonical_jsonl_bytes(out_records)
    out = Path(args.out)
    out.write_bytes(payload)
    videos = {r.video_id for r in records}
    _write_manifest(
        "ingest",
        config,
        {args.input: raw},
        {args.out: payload},
        {"frames": len(records), "videos": len(videos), "dropped_objects": dropped},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    print(f"ingested {len(records)} frames across {len(videos)} videos -> {out}")
    return 0


def _cmd_svo(args: argparse.Namespace) -> int:
    config = _load_config(args)
    raw = Path(args.input).read_bytes()
    by_video = group_frame_groundings(parse_frame_grounding(raw))
    payloads = []
    for video_id in sorted(by_video):
        frames = [
            extract_svo(pos_tag(f.caption), f.frame_index) for f in by_video[video_id]
        ]
        payloads.append(_svo_payload(video_id, frames))
    payload = canonical_jsonl_bytes(payloads)
    Path(args.out).write_bytes(payload)
    _write_manifest(
        "svo",
        config,
        {args.input: raw},
        {args.out: payload},
        {"videos": len(payloads)},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    print(f"extracted SVO frames for {len(payloads)} videos -> {args.out}")
    return 0


def _cmd_aggregate(args: argparse.Namespace) -> int:
    config = _load_config(args)
    client = _make_client(config)
    raw = Path(args.input).read_bytes()
    captions = []
    rejections = []
    for _line, obj in iter_jsonl(raw):
        frames = _svo_frames_from_payload(obj)
        try:
            aggregated = aggregate_video(
                frames, client, retries=config.retries, backoff=config.backoff
            )
        except ResponseRejection as exc:
            rejections.append(
                {"video_id": obj["video_id"], "reasons": [{"code": exc.code, "message": exc.message}]}
            )
            continue
        captions.append(
            {
                "video_id": obj["video_id"],
                "caption": render_tagged_caption(aggregated.caption),
            }
        )
    payload = canonical_jsonl_bytes(captions)
    rejected_payload = canonical_jsonl_bytes(rejections)
    Path(args.out).write_bytes(payload)
    Path(args.rejected).write_bytes(rejected_payload)
    _write_manifest(
        "aggregate",
        config,
        {args.input: raw},
        {args.out: payload, args.rejected: rejected_payload},
        {"videos": len(captions) + len(rejections), "accepted": len(captions), "rejected": len(rejections)},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    print(f"aggregated {len(captions)} captions ({len(rejections)} rejected) -> {args.out}")
    return 0


def _cmd_track(args: argparse.Namespace) -> int:
    config = _load_config(args)
    client = _make_client(config)
    raw_frames = Path(args.input).read_bytes()
    raw_captions = Path(args.captions).read_bytes()
    by_video = group_frame_groundings(parse_frame_grounding(raw_frames))
    captions = {
        obj["video_id"]: parse_tagged_caption(obj["caption"])
        for _line, obj in iter_jsonl(raw_captions)
    }
    outputs = []
    for video_id in sorted(captions):
        if video_id not in by_video:
            raise SystemExit(f"error: no frame groundings for video {video_id!r}")
        frame_objects = collect_frame_objects(by_video[video_id])
        assignments = track_by_language(
            frame_objects,
            captions[video_id].phrase_texts,
            client,
            retries=config.retries,
            backoff=config.backoff,
        )
        outputs.append(
            {
                "video_id": video_id,
                "assignments": [
                    {
                        "frame_index": a.frame_index,
                        "frame_phrase": a.frame_phrase,
                        "assigned": a.assigned,
                    }
                    for a in assignments
                ],
            }
        )
    payload = canonical_jsonl_bytes(outputs)
    Path(args.out).write_bytes(payload)
    _write_manifest(
        "track",
        config,
        {args.input: raw_frames, args.captions: raw_captions},
        {args.out: payload},
        {"videos": len(outputs)},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    print(f"tracked phrases for {len(outputs)} videos -> {args.out}")
    return 0


def _cmd_build(args: argparse.Namespace) -> int:
    config = _load_config(args)
    raw = Path(args.input).read_bytes()
    by_video = group_frame_groundings(parse_frame_grounding(raw))
    results = run_pipeline(by_video, config)
    accepted = [r for r in results if r.annotation is not None]
    rejected = [r for r in results if r.annotation is None]
    dataset = canonical_jsonl_bytes([annotation_to_dict(r.annotation) for r in accepted])
    rejection_log = canonical_jsonl_bytes(
        [
            {
                "video_id": r.video_id,
                "reasons": [{"code": c, "message": m} for c, m in r.report.reasons],
            }
            for r in rejected
        ]
    )
    Path(args.out).write_bytes(dataset)
    Path(args.rejected).write_bytes(rejection_log)
    _write_manifest(
        "build",
        config,
        {args.input: raw},
        {args.out: dataset, args.rejected: rejection_log},
        {"videos": len(results), "accepted": len(accepted), "rejected": len(rejected)},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    print(
        f"built {len(accepted)} records ({len(rejected)} rejected) from "
        f"{len(results)} videos -> {args.out}"
    )
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _load_config(args)
    raw_pred = Path(args.pred).read_bytes()
    raw_gt = Path(args.gt).read_bytes()
    try:
        preds = load_predictions(raw_pred, objectness_threshold=config.objectness_threshold)
        gts = read_annotations(raw_gt)
        report = evaluate(
            preds,
            gts,
            EvalConfig(
                iou_thresh=config.iou_thresh,
                sim_thresh=config.sim_thresh,
                similarity=config.similarity,
                embedding_endpoint=config.embedding_endpoint,
            ),
        )
    except (SchemaError, RecordValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = canonical_json(report.as_dict()).encode("utf-8") + b"\n"
    Path(args.out).write_bytes(payload)
    _write_manifest(
        "eval",
        config,
        {args.pred: raw_pred, args.gt: raw_gt},
        {args.out: payload},
        {"videos": report.num_videos},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    frame, video = report.frame_level, report.video_level
    print(
        f"meteor {report.meteor:.4f}  cider {report.cider:.4f}  "
        f"frame ap50/miou/recall {frame.ap50} {frame.miou} {frame.recall}  "
        f"video ap50/miou/recall {video.ap50} {video.miou} {video.recall}"
    )
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    raw = Path(args.input).read_bytes()
    reports = []
    failures = 0
    for line, obj in iter_jsonl(raw):
        video_id = obj.get("video_id", f"line-{line}")
        reasons = validate_annotation_dict(obj)
        status = "rejected" if reasons else "accepted"
        if reasons:
            failures += 1
            for code, message in reasons:
                print(f"{video_id}: {code}: {message}")
        reports.append(
            {
                "video_id": video_id,
                "status": status,
                "reasons": [{"code": c, "message": m} for c, m in reasons],
            }
        )
    if args.out:
        payload = canonical_jsonl_bytes(reports)
        Path(args.out).write_bytes(payload)
        _write_manifest(
            "validate",
            _load_config(args),
            {args.input: raw},
            {args.out: payload},
            {"videos": len(reports), "accepted": len(reports) - failures, "rejected": failures},
            Path(args.manifest or f"{args.out}.manifest.json"),
        )
    print(f"validated {len(reports)} records: {len(reports) - failures} ok, {failures} invalid")
    return 1 if failures else 0


def _cmd_stats(args: argparse.Namespace) -> int:
    config = _load_config(args)
    raw = Path(args.input).read_bytes()
    try:
        records = read_annotations(raw)
        report = dataset_stats(records)
    except (SchemaError, RecordValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = canonical_json(report.as_dict()).encode("utf-8") + b"\n"
    Path(args.out).write_bytes(payload)
    _write_manifest(
        "stats",
        config,
        {args.input: raw},
        {args.out: payload},
        {"videos": report.num_videos},
        Path(args.manifest or f"{args.out}.manifest.json"),
    )
    for key, value in report.as_dict().items():
        print(f"{key}: {value}")
    return 0


def _cmd_mock_llm(args: argparse.Namespace) -> int:
    server = serve_fixtures(args.fixtures, host=args.host, port=args.port)
    print(f"mock chat endpoint at {server.url} (Ctrl+C to stop)", flush=True)
    try:
        while True:
            time.sleep(3600)
    except KeyboardInterrupt:
        server.stop()
    return 0


# ---------------------------------------------------------------------------
# Parser


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--manifest", help="manifest path (default <out>.manifest.json)")


def _add_client_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--endpoint", help="chat completions URL")
    parser.add_argument("--model", help="model name")
    parser.add_argument("--temperature", type=float)
    parser.add_argument("--retries", type=int)
    parser.add_argument("--max-in-flight", dest="max_in_flight", type=int)
    parser.add_argument("--fps", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groundcap",
        description="Build and evaluate grounded video caption datasets.",
    )
    parser.add_argument("--version", action="version", version=f"groundcap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate stage-1 frame groundings, masks to boxes")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("svo", help="extract SVO relations from frame captions")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_svo)

    p = sub.add_parser("aggregate", help="aggregate frame SVO into video captions (LLM)")
    p.add_argument("--input", required=True, help="svo JSON-lines")
    p.add_argument("--out", required=True)
    p.add_argument("--rejected", required=True)
    _add_config_flags(p)
    _add_client_flags(p)
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("track", help="classify frame phrases into caption phrases (LLM)")
    p.add_argument("--input", required=True, help="frame grounding JSON-lines")
    p.add_argument("--captions", required=True, help="aggregate output JSON-lines")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    _add_client_flags(p)
    p.set_defaults(func=_cmd_track)

    p = sub.add_parser("build", help="run the full pipeline: dataset + rejection log")
    p.add_argument("--input", required=True, help="frame grounding JSON-lines")
    p.add_argument("--out", required=True, help="dataset JSON-lines")
    p.add_argument("--rejected", required=True, help="rejection log JSON-lines")
    _add_config_flags(p)
    _add_client_flags(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("eval", help="score predictions against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--iou-thresh", dest="iou_thresh", type=float)
    p.add_argument("--sim-thresh", dest="sim_thresh", type=float)
    p.add_argument("--similarity", choices=["lexical", "embedding"])
    p.add_argument("--embedding-endpoint", dest="embedding_endpoint")
    p.add_argument(
        "--objectness-threshold", dest="objectness_threshold", type=float,
        help="temporal objectness cutoff applied to predictions (default 0.5)",
    )
    _add_config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("validate", help="check annotation records, exit 1 on failure")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="optional validation report JSON-lines")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("stats", help="dataset statistics report")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("mock-llm", help="serve fixture responses as a chat endpoint")
    p.add_argument("--fixtures", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8191)
    p.set_defaults(func=_cmd_mock_llm)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, RecordValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
