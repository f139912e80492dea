"""Turning phrase assignments plus boxes into object tracks and final records.

Association is purely by language: a frame box lands in the track of the
video-level phrase its frame phrase was classified into, None-class objects
are dropped, and no box-overlap tracking is involved.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from .boxes import BoundingBox
from .captions import TaggedCaption
from .llm import PhraseAssignment
from .records import (
    ACCEPTED,
    REJECTED,
    ObjectTrack,
    RecordValidationError,
    ValidationReport,
    VideoAnnotation,
)

logger = logging.getLogger(__name__)

REJECT_NO_TRACKS = "no-tracks"


def assemble_tracks(
    assignments: Sequence[PhraseAssignment],
    frame_objects: Sequence[tuple[int, str, BoundingBox]],
    caption: TaggedCaption,
    frame_count: int,
) -> list[ObjectTrack]:
    """Group assigned frame boxes into one track per caption phrase.

    None-class objects are dropped.  When two boxes in one frame map to the
    same phrase, the larger box wins and a warning is logged.  Phrases that
    received no boxes simply yield no track.
    """
    assigned_by_key: dict[tuple[int, str], Optional[str]] = {}
    for assignment in assignments:
        assigned_by_key[(assignment.frame_index, assignment.frame_phrase)] = assignment.assigned

    phrase_indices: dict[str, int] = {}
    for index, span in enumerate(caption.phrases):
        phrase_indices.setdefault(span.text, index)

    boxes_per_phrase: dict[int, dict[int, BoundingBox]] = {}
    for frame_index, phrase, box in frame_objects:
        key = (frame_index, phrase)
        if key not in assigned_by_key:
            raise ValueError(f"frame object {key} has no assignment")
        assigned = assigned_by_key[key]
        if assigned is None:
            continue
        if assigned not in phrase_indices:
            raise ValueError(f"assignment {assigned!r} is not a caption phrase")
        phrase_index = phrase_indices[assigned]
        frames = boxes_per_phrase.setdefault(phrase_index, {})
        if frame_index in frames:
            kept = frames[frame_index] if frames[frame_index].area >= box.area else box
            logger.warning(
                "frame %d: two boxes for phrase %r, keeping the larger (%.1f px^2)",
                frame_index,
                assigned,
                kept.area,
            )
            frames[frame_index] = kept
        else:
            frames[frame_index] = box
    return [
        ObjectTrack.from_boxes(phrase_index, frames, frame_count)
        for phrase_index, frames in sorted(boxes_per_phrase.items())
    ]


def derive_presence(track: ObjectTrack) -> list[tuple[int, int]]:
    """Maximal runs of consecutive present frames as inclusive (start, end)."""
    segments: list[tuple[int, int]] = []
    start: Optional[int] = None
    for t, present in enumerate(track.presence):
        if present and start is None:
            start = t
        elif not present and start is not None:
            segments.append((start, t - 1))
            start = None
    if start is not None:
        segments.append((start, len(track.presence) - 1))
    return segments


def build_record(
    video_id: str,
    frame_count: int,
    fps: float,
    width: int,
    height: int,
    caption: TaggedCaption,
    tracks: Sequence[ObjectTrack],
) -> tuple[Optional[VideoAnnotation], ValidationReport]:
    """Assemble the final record; accepted iff at least one track survives.

    Invariant violations turn into a rejected report rather than an
    exception, so one bad video cannot stop a batch.
    """
    if not tracks:
        return None, ValidationReport(
            video_id, REJECTED, ((REJECT_NO_TRACKS, "no caption phrase received any box"),)
        )
    ungrounded = set(range(len(caption.phrases))) - {t.phrase_index for t in tracks}
    for index in sorted(ungrounded):
        logger.warning(
            "video %s: caption phrase %r has no boxes; kept in caption without a track",
            video_id,
            caption.phrases[index].text,
        )
    try:
        annotation = VideoAnnotation(
            video_id=video_id,
            frame_count=frame_count,
            fps=fps,
            width=width,
            height=height,
            caption=caption,
            tracks=tuple(tracks),
            boxes_normalized=False,
        )
    except RecordValidationError as exc:
        return None, ValidationReport(video_id, REJECTED, ((exc.code, exc.message),))
    return annotation, ValidationReport(video_id, ACCEPTED)
