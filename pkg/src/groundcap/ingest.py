"""Parsers and validators for the three on-disk formats.

* frame grounding — JSON-lines, one record per video frame, boxes or RLE
  masks per object (``frame_grounding.schema.json``);
* video annotations — one JSON document per video, JSON-lines for datasets
  (``video_annotation.schema.json``);
* predictions — annotation records with per-frame confidence scores
  (``predictions.schema.json``).

Masks are kept run-length encoded until a box is actually needed.  All
parsing is pure per record, so files can be processed in parallel.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import jsonschema

from .boxes import BoundingBox
from .captions import MalformedCaptionError, parse_tagged_caption, render_tagged_caption
from .jsonio import canonical_json, canonical_jsonl_bytes
from .records import ObjectTrack, RecordValidationError, VideoAnnotation


class SchemaError(ValueError):
    """A file does not match its schema; names the offending line and field."""

    def __init__(self, message: str, line: Optional[int] = None, field_path: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field_path:
            location.append(field_path)
        prefix = ": ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.field_path = field_path


class EmptyMaskError(ValueError):
    """An RLE mask decodes to zero foreground pixels."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schemas by file name."""
    text = importlib.resources.files("groundcap.schemas").joinpath(name).read_text("utf-8")
    return json.loads(text)


@lru_cache(maxsize=None)
def _validator(name: str) -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(load_schema(name))


def _check_schema(obj: dict, schema_name: str, line: Optional[int]) -> None:
    errors = sorted(_validator(schema_name).iter_errors(obj), key=str)
    if errors:
        best = jsonschema.exceptions.best_match(errors)
        raise SchemaError(best.message, line=line, field_path=best.json_path)


def iter_jsonl(data: bytes) -> Iterator[tuple[int, dict]]:
    """Yield ``(line_number, parsed_object)`` for non-blank lines; 1-based."""
    for i, raw in enumerate(data.decode("utf-8").split("\n"), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg}", line=i) from exc
        if not isinstance(obj, dict):
            raise SchemaError("record must be a JSON object", line=i)
        yield i, obj


# ---------------------------------------------------------------------------
# RLE masks


@dataclass(frozen=True)
class RleMask:
    """Row-major binary mask as alternating background/foreground run lengths.

    The first count is background, runs may be zero, and the counts must sum
    to exactly ``width * height``.
    """

    counts: tuple[int, ...]
    width: int
    height: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))

    def decode(self) -> list[list[int]]:
        """Materialize the full 0/1 grid, row-major."""
        flat: list[int] = []
        value = 0
        for run in self.counts:
            flat.extend([value] * run)
            value = 1 - value
        if len(flat) != self.width * self.height:
            raise SchemaError(
                f"mask runs sum to {len(flat)}, expected {self.width * self.height}"
            )
        return [flat[r * self.width : (r + 1) * self.width] for r in range(self.height)]

    def to_box(self) -> BoundingBox:
        return mask_to_box(self.counts, self.width, self.height)


def mask_to_box(counts: Sequence[int], width: int, height: int) -> BoundingBox:
    """Tightest pixel-aligned box containing every foreground pixel.

    Works directly on the runs without materializing the grid, so masks cost
    O(number of runs) regardless of frame size.

    Raises:
        EmptyMaskError: when the mask has no foreground pixels.
        SchemaError: when the runs do not sum to ``width * height``.
    """
    if width < 1 or height < 1:
        raise SchemaError(f"mask dimensions must be >= 1, got {width}x{height}")
    pos = 0
    foreground = False
    min_x, min_y = width, height
    max_x, max_y = -1, -1
    for run in counts:
        if run < 0:
            raise SchemaError(f"negative run length {run}")
        if foreground and run > 0:
            start, end = pos, pos + run - 1
            row_a, row_b = start // width, end // width
            min_y = min(min_y, row_a)
            max_y = max(max_y, row_b)
            if row_a == row_b:
                min_x = min(min_x, start % width)
                max_x = max(max_x, end % width)
            else:
                # runs spanning rows touch both frame edges
                min_x = 0
                max_x = width - 1
        pos += run
        foreground = not foreground
    if pos != width * height:
        raise SchemaError(f"mask runs sum to {pos}, expected {width * height}")
    if max_x < 0:
        raise EmptyMaskError("mask has no foreground pixels")
    return BoundingBox(
        float(min_x), float(min_y), float(max_x - min_x + 1), float(max_y - min_y + 1)
    )


# ---------------------------------------------------------------------------
# Frame grounding (stage-1 output)


@dataclass(frozen=True)
class FrameObject:
    """One grounded phrase in a frame, located by a box or a mask."""

    phrase: str
    box: Optional[BoundingBox] = None
    mask: Optional[RleMask] = None

    def __post_init__(self) -> None:
        if (self.box is None) == (self.mask is None):
            raise ValueError("object must carry exactly one of box or mask")

    def pixel_box(self) -> BoundingBox:
        """The object's box, converting the mask lazily when needed."""
        if self.box is not None:
            return self.box
        assert self.mask is not None
        return self.mask.to_box()


@dataclass(frozen=True)
class FrameGrounding:
    """The grounded caption of one video frame."""

    video_id: str
    frame_index: int
    width: int
    height: int
    caption: str
    objects: tuple[FrameObject, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        if self.frame_index < 0:
            raise ValueError(f"negative frame_index {self.frame_index}")


def parse_frame_grounding(data: bytes) -> list[FrameGrounding]:
    """Parse a frame-grounding JSON-lines file.

    Returns records sorted by ``(video_id, frame_index)``.  Masks are kept
    encoded; duplicate ``(video_id, frame_index)`` pairs are an error.
    """
    records: list[FrameGrounding] = []
    seen: set[tuple[str, int]] = set()
    for line, obj in iter_jsonl(data):
        _check_schema(obj, "frame_grounding.schema.json", line)
        width, height = obj["width"], obj["height"]
        objects = []
        for item in obj["objects"]:
            if "box" in item:
                x, y, w, h = (float(v) for v in item["box"])
                try:
                    box = BoundingBox(x, y, w, h, normalized=False)
                except ValueError as exc:
                    raise SchemaError(str(exc), line=line, field_path="objects.box") from exc
                objects.append(FrameObject(item["phrase"], box=box))
            else:
                mask = RleMask(tuple(item["mask"]), width, height)
                if sum(mask.counts) != width * height:
                    raise SchemaError(
                        f"mask runs sum to {sum(mask.counts)}, expected {width * height}",
                        line=line,
                        field_path="objects.mask",
                    )
                objects.append(FrameObject(item["phrase"], mask=mask))
        key = (obj["video_id"], obj["frame_index"])
        if key in seen:
            raise SchemaError(f"duplicate frame record {key}", line=line)
        seen.add(key)
        records.append(
            FrameGrounding(
                video_id=obj["video_id"],
                frame_index=obj["frame_index"],
                width=width,
                height=height,
                caption=obj["caption"],
                objects=tuple(objects),
            )
        )
    records.sort(key=lambda r: (r.video_id, r.frame_index))
    return records


def group_frame_groundings(records: list[FrameGrounding]) -> dict[str, list[FrameGrounding]]:
    """Group sorted frame records by video id, preserving frame order."""
    by_video: dict[str, list[FrameGrounding]] = {}
    for record in records:
        by_video.setdefault(record.video_id, []).append(record)
    return by_video


def stream_frame_groundings(lines: Iterable[bytes]) -> Iterator[tuple[str, list[FrameGrounding]]]:
    """Stream a frame-grounding file as per-video groups, one video in memory.

    The input must already be grouped by video (the canonical sorted layout);
    a video id that reappears after another video is an error, as is a
    duplicate frame index within a video.
    """
    current_id: Optional[str] = None
    current: list[FrameGrounding] = []
    finished: set[str] = set()
    for line_no, raw in enumerate(lines, start=1):
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        if not text.strip():
            continue
        records = parse_frame_grounding(text.encode("utf-8"))
        if len(records) != 1:
            raise SchemaError("expected one record per line", line=line_no)
        record = records[0]
        if record.video_id != current_id:
            if record.video_id in finished:
                raise SchemaError(
                    f"video {record.video_id!r} is not contiguous in the stream", line=line_no
                )
            if current_id is not None:
                finished.add(current_id)
                yield current_id, sorted(current, key=lambda r: r.frame_index)
            current_id = record.video_id
            current = []
        if any(r.frame_index == record.frame_index for r in current):
            raise SchemaError(
                f"duplicate frame record {(record.video_id, record.frame_index)}", line=line_no
            )
        current.append(record)
    if current_id is not None:
        yield current_id, sorted(current, key=lambda r: r.frame_index)


# ---------------------------------------------------------------------------
# Video annotations


def annotation_to_dict(annotation: VideoAnnotation) -> dict:
    """Plain-JSON form of an annotation, caption rendered with phrase tags."""
    tracks = []
    for track in annotation.tracks:
        entry: dict = {
            "phrase_index": track.phrase_index,
            "presence": list(track.presence),
            "boxes": {str(t): [float(v) for v in box.as_list()] for t, box in track.boxes.items()},
        }
        if track.confidence is not None:
            entry["confidence"] = {str(t): float(s) for t, s in track.confidence.items()}
        tracks.append(entry)
    return {
        "video_id": annotation.video_id,
        "frame_count": annotation.frame_count,
        "fps": float(annotation.fps),
        "width": annotation.width,
        "height": annotation.height,
        "caption": render_tagged_caption(annotation.caption),
        "boxes_normalized": annotation.boxes_normalized,
        "tracks": tracks,
    }


def annotation_from_dict(obj: dict, line: Optional[int] = None) -> VideoAnnotation:
    """Build a validated :class:`VideoAnnotation` from its plain-JSON form."""
    _check_schema(obj, "video_annotation.schema.json", line)
    try:
        caption = parse_tagged_caption(obj["caption"])
    except MalformedCaptionError as exc:
        raise RecordValidationError("caption-malformed", str(exc)) from exc
    normalized = obj["boxes_normalized"]
    tracks = []
    for item in obj["tracks"]:
        boxes = {}
        for key, coords in item["boxes"].items():
            x, y, w, h = (float(v) for v in coords)
            try:
                boxes[int(key)] = BoundingBox(x, y, w, h, normalized=normalized)
            except ValueError as exc:
                raise RecordValidationError("bad-box", f"frame {key}: {exc}") from exc
        confidence = None
        if "confidence" in item:
            confidence = {int(k): float(v) for k, v in item["confidence"].items()}
        tracks.append(
            ObjectTrack(
                phrase_index=item["phrase_index"],
                boxes=boxes,
                presence=tuple(bool(v) for v in item["presence"]),
                confidence=confidence,
            )
        )
    return VideoAnnotation(
        video_id=obj["video_id"],
        frame_count=obj["frame_count"],
        fps=float(obj["fps"]),
        width=obj["width"],
        height=obj["height"],
        caption=caption,
        tracks=tuple(tracks),
        boxes_normalized=normalized,
    )


def parse_video_annotation(data: bytes) -> VideoAnnotation:
    """Parse a single annotation document (inverse of serialization)."""
    try:
        obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("annotation must be a JSON object")
    return annotation_from_dict(obj)


def serialize_video_annotation(annotation: VideoAnnotation) -> bytes:
    """Canonical bytes for one annotation.

    Keys are sorted, box frames sort numerically, and floats carry exactly
    six decimals, so serialization is a golden-file-stable identity partner
    of :func:`parse_video_annotation` (coordinates beyond six decimals are
    quantized on write).
    """
    return canonical_json(annotation_to_dict(annotation)).encode("utf-8")


def validate_annotation_dict(obj: dict) -> list[tuple[str, str]]:
    """All validation failures for a plain-JSON annotation, not just the first.

    Covers the machine-checkable acceptance rules: the caption must parse,
    phrase spans index it correctly, boxes stay inside the declared frame,
    and presence flags agree with the stored boxes.
    """
    reasons: list[tuple[str, str]] = []
    errors = sorted(_validator("video_annotation.schema.json").iter_errors(obj), key=str)
    if errors:
        for err in errors[:10]:
            reasons.append(("schema", f"{err.json_path}: {err.message}"))
        return reasons
    try:
        annotation_from_dict(obj)
    except RecordValidationError as exc:
        reasons.append((exc.code, exc.message))
    except SchemaError as exc:  # pragma: no cover - schema already checked
        reasons.append(("schema", str(exc)))
    return reasons


def read_annotations(data: bytes) -> list[VideoAnnotation]:
    """Read a JSON-lines dataset of annotation records."""
    annotations = []
    seen: set[str] = set()
    for line, obj in iter_jsonl(data):
        annotation = annotation_from_dict(obj, line=line)
        if annotation.video_id in seen:
            raise SchemaError(f"duplicate video_id {annotation.video_id!r}", line=line)
        seen.add(annotation.video_id)
        annotations.append(annotation)
    return annotations


def write_annotations(annotations: Sequence[VideoAnnotation]) -> bytes:
    """Serialize a dataset as canonical JSON-lines."""
    return canonical_jsonl_bytes([annotation_to_dict(a) for a in annotations])


# ---------------------------------------------------------------------------
# Predictions


def load_predictions(data: bytes, objectness_threshold: float = 0.5) -> list[VideoAnnotation]:
    """Read prediction records and apply the temporal objectness threshold.

    Frames whose confidence falls below the threshold are removed from their
    track (presence set false); surviving confidences are kept for AP
    ranking.  Tracks and records may end up empty, which evaluation treats
    as no prediction.  A track without a confidence map is score-less: it
    evaluates at confidence 1.0 and passes any threshold (so ground-truth
    style records are valid predictions).  A track with a partial map is an
    error once filtering is requested: every present frame needs a score.
    """
    if not 0.0 <= objectness_threshold <= 1.0:
        raise ValueError(f"objectness threshold {objectness_threshold} outside [0, 1]")
    predictions = []
    seen: set[str] = set()
    for line, obj in iter_jsonl(data):
        _check_schema(obj, "predictions.schema.json", line)
        annotation = annotation_from_dict(obj, line=line)
        if annotation.video_id in seen:
            raise SchemaError(f"duplicate video_id {annotation.video_id!r}", line=line)
        seen.add(annotation.video_id)
        predictions.append(_apply_objectness(annotation, objectness_threshold, line))
    return predictions


def _apply_objectness(
    annotation: VideoAnnotation, threshold: float, line: Optional[int]
) -> VideoAnnotation:
    if threshold == 0.0:
        return annotation
    tracks = []
    for index, track in enumerate(annotation.tracks):
        if track.confidence is None:
            tracks.append(track)  # score-less track: confidence 1.0 everywhere
            continue
        confidence = dict(track.confidence)
        missing = sorted(set(track.boxes) - set(confidence))
        if missing:
            raise SchemaError(
                f"track {index} missing confidence for frames {missing} "
                f"with threshold {threshold}",
                line=line,
                field_path=f"tracks[{index}].confidence",
            )
        kept = {t: box for t, box in track.boxes.items() if confidence[t] >= threshold}
        if not kept:
            continue
        tracks.append(
            ObjectTrack.from_boxes(
                track.phrase_index,
                kept,
                annotation.frame_count,
                confidence={t: confidence[t] for t in kept},
            )
        )
    return VideoAnnotation(
        video_id=annotation.video_id,
        frame_count=annotation.frame_count,
        fps=annotation.fps,
        width=annotation.width,
        height=annotation.height,
        caption=annotation.caption,
        tracks=tuple(tracks),
        boxes_normalized=annotation.boxes_normalized,
    )
