"""Video-level record types: object tracks, annotations, SVO frames, reports.

All types are immutable after construction and validate their own invariants,
so a constructed record is always internally consistent.  File-level parsing
with multi-reason error reports lives in :mod:`groundcap.ingest`; the
constructors here raise :class:`RecordValidationError` on the first violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .boxes import BoundingBox
from .captions import TaggedCaption

PIXEL_EPS = 1e-6


class RecordValidationError(ValueError):
    """An invariant violation with a machine-readable reason code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class ObjectTrack:
    """One caption phrase bound to per-frame boxes, with gaps allowed.

    ``presence`` has one flag per video frame and is true exactly where
    ``boxes`` holds a box.  ``confidence`` (prediction records only) maps a
    present frame to a score in [0, 1].
    """

    phrase_index: int
    boxes: Mapping[int, BoundingBox]
    presence: tuple[bool, ...]
    confidence: Optional[Mapping[int, float]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "boxes", MappingProxyType(dict(self.boxes)))
        object.__setattr__(self, "presence", tuple(self.presence))
        if self.confidence is not None:
            object.__setattr__(self, "confidence", MappingProxyType(dict(self.confidence)))
        if self.phrase_index < 0:
            raise RecordValidationError("bad-phrase-index", f"negative phrase_index {self.phrase_index}")
        if not self.boxes:
            raise RecordValidationError("empty-track", "track has no present frames")
        frame_count = len(self.presence)
        for t in self.boxes:
            if not 0 <= t < frame_count:
                raise RecordValidationError(
                    "frame-out-of-range", f"box frame {t} outside [0, {frame_count})"
                )
        for t, flag in enumerate(self.presence):
            if flag != (t in self.boxes):
                raise RecordValidationError(
                    "presence-box-mismatch",
                    f"presence[{t}]={flag} but box {'missing' if flag else 'present'} at that frame",
                )
        modes = {b.normalized for b in self.boxes.values()}
        if len(modes) > 1:
            raise RecordValidationError("box-mode-mismatch", "track mixes normalized and pixel boxes")
        if self.confidence is not None:
            for t, score in self.confidence.items():
                if t not in self.boxes:
                    raise RecordValidationError(
                        "bad-confidence", f"confidence at frame {t} without a box"
                    )
                if not 0.0 <= score <= 1.0:
                    raise RecordValidationError(
                        "bad-confidence", f"confidence {score} at frame {t} outside [0, 1]"
                    )

    @classmethod
    def from_boxes(
        cls,
        phrase_index: int,
        boxes: Mapping[int, BoundingBox],
        frame_count: int,
        confidence: Optional[Mapping[int, float]] = None,
    ) -> "ObjectTrack":
        """Build a track with the presence vector derived from the box keys."""
        presence = tuple(t in boxes for t in range(frame_count))
        return cls(phrase_index, dict(boxes), presence, confidence)

    @property
    def present_frames(self) -> list[int]:
        return sorted(self.boxes)

    @property
    def frame_count(self) -> int:
        return len(self.presence)


@dataclass(frozen=True)
class VideoAnnotation:
    """One video record: caption with phrase tags plus its object tracks."""

    video_id: str
    frame_count: int
    fps: float
    width: int
    height: int
    caption: TaggedCaption
    tracks: tuple[ObjectTrack, ...] = field(default_factory=tuple)
    boxes_normalized: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "tracks", tuple(self.tracks))
        if not self.video_id:
            raise RecordValidationError("bad-video-id", "video_id must be non-empty")
        if self.frame_count < 1:
            raise RecordValidationError("bad-frame-count", f"frame_count {self.frame_count} < 1")
        if self.fps <= 0:
            raise RecordValidationError("bad-fps", f"fps {self.fps} must be positive")
        if self.width < 1 or self.height < 1:
            raise RecordValidationError("bad-dimensions", f"frame size {self.width}x{self.height}")
        for track in self.tracks:
            if track.phrase_index >= len(self.caption.phrases):
                raise RecordValidationError(
                    "bad-phrase-index",
                    f"phrase_index {track.phrase_index} but caption has "
                    f"{len(self.caption.phrases)} phrases",
                )
            if track.frame_count != self.frame_count:
                raise RecordValidationError(
                    "presence-length",
                    f"track presence length {track.frame_count} != frame_count {self.frame_count}",
                )
            for t, box in track.boxes.items():
                if box.normalized != self.boxes_normalized:
                    raise RecordValidationError(
                        "box-mode-mismatch",
                        f"box at frame {t} is {'normalized' if box.normalized else 'pixel'} "
                        f"but record declares boxes_normalized={self.boxes_normalized}",
                    )
                if not box.normalized:
                    if (
                        box.x < -PIXEL_EPS
                        or box.y < -PIXEL_EPS
                        or box.x + box.w > self.width + PIXEL_EPS
                        or box.y + box.h > self.height + PIXEL_EPS
                    ):
                        raise RecordValidationError(
                            "box-out-of-frame",
                            f"box {box.as_list()} at frame {t} exceeds {self.width}x{self.height}",
                        )
        self._check_duplicate_tracks()

    def _check_duplicate_tracks(self) -> None:
        # Two tracks for one phrase are allowed (an object can be two tubes),
        # but an identical box on a shared frame means a duplicated record.
        by_phrase: dict[int, list[ObjectTrack]] = {}
        for track in self.tracks:
            by_phrase.setdefault(track.phrase_index, []).append(track)
        for phrase_index, group in by_phrase.items():
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    shared = group[i].boxes.keys() & group[j].boxes.keys()
                    for t in shared:
                        if group[i].boxes[t] == group[j].boxes[t]:
                            raise RecordValidationError(
                                "duplicate-track-box",
                                f"tracks for phrase {phrase_index} repeat the same box at frame {t}",
                            )

    @property
    def duration_seconds(self) -> float:
        return self.frame_count / self.fps


@dataclass(frozen=True)
class SvoRelation:
    """A (subject, verb, object) relation with optional adposition pairs."""

    subject: str
    verb: str
    object: Optional[str] = None
    adpositions: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "adpositions", tuple(tuple(p) for p in self.adpositions))
        if not self.subject or not self.verb:
            raise ValueError("relation subject and verb must be non-empty")
        for adposition, obj in self.adpositions:
            if not adposition or not obj:
                raise ValueError("adposition pairs must have non-empty members")


@dataclass(frozen=True)
class SvoFrame:
    """All relations extracted from one frame's caption."""

    frame_index: int
    relations: tuple[SvoRelation, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.frame_index < 0:
            raise ValueError(f"negative frame_index {self.frame_index}")


ACCEPTED = "accepted"
REJECTED = "rejected"


@dataclass(frozen=True)
class ValidationReport:
    """Accept/reject outcome for one video, with machine-readable reasons."""

    video_id: str
    status: str
    reasons: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "reasons", tuple(tuple(r) for r in self.reasons))
        if self.status not in (ACCEPTED, REJECTED):
            raise ValueError(f"status must be {ACCEPTED!r} or {REJECTED!r}, got {self.status!r}")
        if self.status == REJECTED and not self.reasons:
            raise ValueError("rejected report requires at least one reason")

    @property
    def accepted(self) -> bool:
        return self.status == ACCEPTED

    @property
    def reason_codes(self) -> list[str]:
        return [code for code, _ in self.reasons]
