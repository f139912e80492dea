"""groundcap: build and evaluate grounded video caption datasets.

The library covers three concerns: ingesting frame-level grounding output
(boxes or masks) into validated records, orchestrating the caption
aggregation and tracking-by-language stages over a chat-completion endpoint,
and scoring predicted grounded captions with captioning and grounding
metrics at frame and video level.
"""

from .boxes import BoundingBox, denormalize_box, iou, normalize_box
from .captions import (
    MalformedCaptionError,
    PhraseSpan,
    TaggedCaption,
    parse_tagged_caption,
    render_tagged_caption,
)
from .config import PipelineConfig
from .ingest import (
    EmptyMaskError,
    FrameGrounding,
    FrameObject,
    RleMask,
    SchemaError,
    load_predictions,
    mask_to_box,
    parse_frame_grounding,
    parse_video_annotation,
    read_annotations,
    serialize_video_annotation,
    stream_frame_groundings,
    validate_annotation_dict,
    write_annotations,
)
from .llm import (
    AggregatedCaption,
    ChatMessage,
    HttpChatClient,
    PhraseAssignment,
    ResponseRejection,
    TransportError,
    aggregate_video,
    build_stage2_prompt,
    build_stage3_prompt,
    parse_stage2_response,
    parse_stage3_response,
    track_by_language,
)
from .metrics import (
    EvalConfig,
    GtBox,
    MetricsReport,
    PredBox,
    ap50,
    cider,
    evaluate,
    match_frame,
    meteor_lite,
    miou,
    phrase_similarity,
    recall,
    stem,
    tokenize,
)
from .mockllm import MockLlmServer, request_hash
from .pipeline import PipelineResult, annotate_video, run_pipeline
from .records import (
    ObjectTrack,
    RecordValidationError,
    SvoFrame,
    SvoRelation,
    ValidationReport,
    VideoAnnotation,
)
from .stats import StatsReport, dataset_stats
from .svo import LexiconTagger, TaggedToken, extract_svo, pos_tag, render_svo_block
from .tubes import assemble_tracks, build_record, derive_presence

__version__ = "0.1.0"

__all__ = [
    "AggregatedCaption",
    "BoundingBox",
    "ChatMessage",
    "EmptyMaskError",
    "EvalConfig",
    "FrameGrounding",
    "FrameObject",
    "GtBox",
    "HttpChatClient",
    "LexiconTagger",
    "MalformedCaptionError",
    "MetricsReport",
    "MockLlmServer",
    "ObjectTrack",
    "PhraseAssignment",
    "PhraseSpan",
    "PipelineConfig",
    "PipelineResult",
    "PredBox",
    "RecordValidationError",
    "ResponseRejection",
    "RleMask",
    "SchemaError",
    "StatsReport",
    "SvoFrame",
    "SvoRelation",
    "TaggedCaption",
    "TaggedToken",
    "TransportError",
    "ValidationReport",
    "VideoAnnotation",
    "aggregate_video",
    "annotate_video",
    "ap50",
    "assemble_tracks",
    "build_record",
    "build_stage2_prompt",
    "build_stage3_prompt",
    "cider",
    "dataset_stats",
    "denormalize_box",
    "derive_presence",
    "evaluate",
    "extract_svo",
    "iou",
    "load_predictions",
    "mask_to_box",
    "match_frame",
    "meteor_lite",
    "miou",
    "normalize_box",
    "parse_frame_grounding",
    "parse_stage2_response",
    "parse_stage3_response",
    "parse_tagged_caption",
    "parse_video_annotation",
    "phrase_similarity",
    "pos_tag",
    "read_annotations",
    "recall",
    "render_svo_block",
    "render_tagged_caption",
    "request_hash",
    "run_pipeline",
    "serialize_video_annotation",
    "stem",
    "stream_frame_groundings",
    "tokenize",
    "track_by_language",
    "validate_annotation_dict",
    "write_annotations",
]
