"""The evaluation suite: captioning metrics plus grounding metrics.

Captioning is scored with CIDEr-D (TF-IDF n-gram cosine, n = 1..4, length
gaussian sigma = 6, scaled by 10) and a METEOR variant reduced to its
exact+stem unigram core.  Grounding is scored with AP50, mean IoU, and
recall, each in two settings: frame level, where detections of all frames of
all videos are pooled, and video level, where metrics are computed per video
and averaged across videos.

The parts the task leaves open are pinned here and echoed into every report:
greedy one-to-one matching in confidence order, all-point interpolated AP
with a precision envelope, mIoU averaged over ground-truth boxes with
unmatched boxes scoring zero, and confidence 1.0 for score-less predictions.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Protocol, Sequence

import numpy as np
import requests

from .boxes import BoundingBox, iou, normalize_box
from .records import VideoAnnotation

CIDER_NGRAM_MAX = 4
CIDER_SIGMA = 6.0
DEFAULT_IOU_THRESH = 0.5
DEFAULT_SIM_THRESH = 0.5

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def tokenize(text: str) -> list[str]:
    """Lowercase tokens with punctuation split off and whitespace collapsed."""
    return _TOKEN_RE.findall(text.lower())


def stem(token: str) -> str:
    """Light deterministic English stemmer shared by METEOR and similarity.

    Strips plural/verbal suffixes and a trailing silent e so that inflected
    forms of one word map to one stem ("use", "used", "using" -> "us").  Not
    a full Porter stemmer; the point is self-consistency, not linguistics.
    """
    t = token.lower()
    if len(t) > 3 and t.endswith("ies"):
        t = t[: -3] + "y"
    elif len(t) > 3 and t.endswith("es") and (t[-3] in "sxz" or t.endswith(("ches", "shes"))):
        t = t[:-2]
    elif len(t) > 2 and t.endswith("s") and not t.endswith("ss"):
        t = t[:-1]
    if len(t) > 4 and t.endswith("ing"):
        t = _collapse_double(t[:-3])
    elif len(t) > 3 and t.endswith("ed"):
        t = _collapse_double(t[:-2])
    if len(t) > 2 and t.endswith("e"):
        t = t[:-1]
    if len(t) > 3 and t.endswith("y"):
        t = t[:-1] + "i"
    return t


def _collapse_double(t: str) -> str:
    if len(t) >= 2 and t[-1] == t[-2] and t[-1] not in "lsz":
        return t[:-1]
    return t


# ---------------------------------------------------------------------------
# CIDEr-D


def _ngram_counts(tokens: Sequence[str], n_max: int = CIDER_NGRAM_MAX) -> Counter:
    counts: Counter = Counter()
    for n in range(1, n_max + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i : i + n])] += 1
    return counts


def cider_scores(
    candidates: dict[str, str], references: dict[str, list[str]]
) -> tuple[float, dict[str, float]]:
    """Corpus CIDEr-D and the per-video scores it averages.

    Document frequencies come from the reference corpus: an n-gram's df is
    the number of videos with the n-gram in at least one reference.  A
    candidate n-gram unseen in the references gets idf log(N).
    """
    if set(candidates) != set(references):
        raise ValueError("candidates and references must cover the same video ids")
    if not references:
        raise ValueError("cannot compute CIDEr over an empty corpus")
    for video_id, refs in references.items():
        if not refs:
            raise ValueError(f"video {video_id!r} has no references")

    ref_counts = {vid: [_ngram_counts(tokenize(r)) for r in refs] for vid, refs in references.items()}
    df: Counter = Counter()
    for counts_list in ref_counts.values():
        seen: set = set()
        for counts in counts_list:
            seen.update(counts)
        df.update(seen)
    log_n = math.log(len(references))

    def tfidf(counts: Counter) -> tuple[list[dict], list[float], int]:
        vec = [dict() for _ in range(CIDER_NGRAM_MAX)]
        norm_sq = [0.0] * CIDER_NGRAM_MAX
        length = sum(freq for gram, freq in counts.items() if len(gram) == 1)
        for gram, freq in counts.items():
            idf = log_n - math.log(max(df[gram], 1))
            weight = freq * idf
            slot = len(gram) - 1
            vec[slot][gram] = weight
            norm_sq[slot] += weight * weight
        return vec, [math.sqrt(v) for v in norm_sq], length

    per_video: dict[str, float] = {}
    for video_id in sorted(references):
        hyp_vec, hyp_norm, hyp_len = tfidf(_ngram_counts(tokenize(candidates[video_id])))
        total = np.zeros(CIDER_NGRAM_MAX)
        for ref in ref_counts[video_id]:
            ref_vec, ref_norm, ref_len = tfidf(ref)
            gaussian = math.exp(-((hyp_len - ref_len) ** 2) / (2 * CIDER_SIGMA**2))
            for n in range(CIDER_NGRAM_MAX):
                dot = sum(
                    min(weight, ref_vec[n].get(gram, 0.0)) * ref_vec[n].get(gram, 0.0)
                    for gram, weight in hyp_vec[n].items()
                )
                if hyp_norm[n] != 0 and ref_norm[n] != 0:
                    total[n] += gaussian * dot / (hyp_norm[n] * ref_norm[n])
        per_video[video_id] = float(np.mean(total) / len(ref_counts[video_id]) * 10.0)
    corpus = float(np.mean(list(per_video.values())))
    return corpus, per_video


def cider(candidates: dict[str, str], references: dict[str, list[str]]) -> float:
    """Corpus CIDEr-D in [0, 10]."""
    return cider_scores(candidates, references)[0]


# ---------------------------------------------------------------------------
# METEOR (exact + stem core)


def meteor_lite(candidate: str, reference: str) -> float:
    """Unigram METEOR: F_mean = 10PR/(P+9R), penalty = 0.5 (chunks/matches)^3.

    Alignment is exact matches first, stem matches second, each assigned
    greedily left to right; no synonym or paraphrase tables.
    """
    ref_tokens = tokenize(reference)
    if not ref_tokens:
        raise ValueError("reference must be non-empty")
    cand_tokens = tokenize(candidate)
    if not cand_tokens:
        return 0.0

    pairs: list[tuple[int, int]] = []
    ref_taken = [False] * len(ref_tokens)
    cand_taken = [False] * len(cand_tokens)

    def align(key) -> None:
        ref_keys = [key(t) for t in ref_tokens]
        for i, token in enumerate(cand_tokens):
            if cand_taken[i]:
                continue
            want = key(token)
            for j, ref_key in enumerate(ref_keys):
                if not ref_taken[j] and ref_key == want:
                    pairs.append((i, j))
                    ref_taken[j] = True
                    cand_taken[i] = True
                    break

    align(lambda t: t)
    align(stem)

    matches = len(pairs)
    if matches == 0:
        return 0.0
    precision = matches / len(cand_tokens)
    recall_v = matches / len(ref_tokens)
    f_mean = 10 * precision * recall_v / (precision + 9 * recall_v)
    pairs.sort()
    chunks = 1
    for (ci, ri), (cj, rj) in zip(pairs, pairs[1:]):
        if cj != ci + 1 or rj != ri + 1:
            chunks += 1
    penalty = 0.5 * (chunks / matches) ** 3
    return f_mean * (1 - penalty)


def meteor_best(candidate: str, references: Sequence[str]) -> float:
    """Score against the best-matching reference."""
    if not references:
        raise ValueError("at least one reference required")
    return max(meteor_lite(candidate, ref) for ref in references)


# ---------------------------------------------------------------------------
# Phrase similarity


class SimilarityBackend(Protocol):
    name: str

    def similarity(self, a: str, b: str) -> float: ...


_STOPWORDS = frozenset(
    """
    a an the this that these those some any each every no another both all
    of in on at by with from to for into onto and or but as is are was were
    be been being it its his her my your our their
    """.split()
)


class LexicalSimilarity:
    """Cosine over stemmed-unigram count vectors; 1.0 exactly for equal vectors.

    Function words are ignored so that "a person" and "a bowl" do not count
    the shared article as overlap; a phrase made only of function words
    falls back to its raw tokens.
    """

    name = "lexical"

    @staticmethod
    @lru_cache(maxsize=4096)
    def _vector(text: str) -> tuple[tuple[str, int], ...]:
        tokens = tokenize(text)
        content = [t for t in tokens if t not in _STOPWORDS]
        counts = Counter(stem(t) for t in (content or tokens))
        return tuple(sorted(counts.items()))

    def similarity(self, a: str, b: str) -> float:
        if not a or not b:
            raise ValueError("phrases must be non-empty")
        va, vb = dict(self._vector(a)), dict(self._vector(b))
        if not va or not vb:
            return 0.0
        if va == vb:
            return 1.0
        dot = sum(count * vb.get(token, 0) for token, count in va.items())
        if dot == 0:
            return 0.0
        norm_a = sum(c * c for c in va.values())
        norm_b = sum(c * c for c in vb.values())
        return min(dot / math.sqrt(norm_a * norm_b), 1.0)


class EmbeddingSimilarity:
    """Cosine over vectors from an HTTP embedding endpoint.

    The endpoint takes ``POST {"texts": [string]}`` and answers
    ``{"vectors": [[number]]}``.  Transport failures propagate as errors; a
    similarity backend that silently degrades would corrupt the metrics.
    """

    name = "embedding"

    def __init__(self, endpoint: str, timeout: float = 30.0):
        self.endpoint = endpoint
        self.timeout = timeout
        self._session = requests.Session()
        self._cache: dict[str, np.ndarray] = {}

    def _vector(self, text: str) -> np.ndarray:
        if text not in self._cache:
            response = self._session.post(
                self.endpoint, json={"texts": [text]}, timeout=self.timeout
            )
            response.raise_for_status()
            self._cache[text] = np.asarray(response.json()["vectors"][0], dtype=float)
        return self._cache[text]

    def similarity(self, a: str, b: str) -> float:
        if not a or not b:
            raise ValueError("phrases must be non-empty")
        if a == b:
            return 1.0
        va, vb = self._vector(a), self._vector(b)
        denom = float(np.linalg.norm(va) * np.linalg.norm(vb))
        if denom == 0:
            return 0.0
        return float(min(max(np.dot(va, vb) / denom, 0.0), 1.0))


_DEFAULT_BACKEND = LexicalSimilarity()


def phrase_similarity(a: str, b: str, backend: SimilarityBackend | None = None) -> float:
    """Similarity of two phrases in [0, 1] under the chosen backend."""
    return (backend or _DEFAULT_BACKEND).similarity(a, b)


# ---------------------------------------------------------------------------
# Matching


@dataclass(frozen=True)
class PredBox:
    box: BoundingBox
    phrase: str
    confidence: float = 1.0


@dataclass(frozen=True)
class GtBox:
    box: BoundingBox
    phrase: str


@dataclass(frozen=True)
class MatchedPair:
    pred_index: int
    gt_index: int
    iou: float
    phrase_sim: float


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple[MatchedPair, ...]
    unmatched_preds: tuple[int, ...]
    unmatched_gts: tuple[int, ...]


class _SimCache:
    def __init__(self, backend: SimilarityBackend):
        self.backend = backend
        self._cache: dict[tuple[str, str], float] = {}

    def __call__(self, a: str, b: str) -> float:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self.backend.similarity(a, b)
        return self._cache[key]


def _pred_order(preds: Sequence[PredBox], gts: Sequence[GtBox]) -> list[int]:
    """Confidence-descending order; ties by best IoU, then input order."""
    best_iou = [max((iou(p.box, g.box) for g in gts), default=0.0) for p in preds]
    return sorted(range(len(preds)), key=lambda i: (-preds[i].confidence, -best_iou[i], i))


def _greedy_assign(
    preds: Sequence[PredBox],
    gts: Sequence[GtBox],
    iou_thresh: Optional[float],
    sim_thresh: Optional[float],
    sim,
) -> dict[int, tuple[int, float, float]]:
    """Greedy one-to-one assignment: pred index -> (gt index, iou, sim).

    With thresholds set, a pair is eligible only when both gates pass; with
    ``iou_thresh=None`` any unmatched GT is eligible (IoU-only matching with
    no floor) and similarity is not consulted.
    """
    taken: set[int] = set()
    result: dict[int, tuple[int, float, float]] = {}
    for pi in _pred_order(preds, gts):
        pred = preds[pi]
        best: tuple[int, float, float] | None = None
        for gi, gt in enumerate(gts):
            if gi in taken:
                continue
            overlap = iou(pred.box, gt.box)
            if iou_thresh is not None and overlap < iou_thresh:
                continue
            if sim_thresh is not None:
                similarity = sim(pred.phrase, gt.phrase)
                if similarity < sim_thresh:
                    continue
            else:
                similarity = 1.0
            if best is None or overlap > best[1]:
                best = (gi, overlap, similarity)
        if best is not None:
            result[pi] = best
            taken.add(best[0])
    return result


def match_frame(
    preds: Sequence[PredBox],
    gts: Sequence[GtBox],
    iou_thresh: float = DEFAULT_IOU_THRESH,
    sim_thresh: float = DEFAULT_SIM_THRESH,
    backend: SimilarityBackend | None = None,
) -> MatchResult:
    """One-to-one matching of one frame's detections against its ground truth.

    Predictions are taken in confidence order; each claims the unmatched GT
    with the highest IoU among pairs passing both the IoU and the phrase
    similarity gate.
    """
    sim = _SimCache(backend or _DEFAULT_BACKEND)
    assigned = _greedy_assign(preds, gts, iou_thresh, sim_thresh, sim)
    pairs = tuple(
        MatchedPair(pi, gi, overlap, similarity)
        for pi, (gi, overlap, similarity) in sorted(assigned.items())
    )
    matched_gts = {p.gt_index for p in pairs}
    return MatchResult(
        pairs=pairs,
        unmatched_preds=tuple(i for i in range(len(preds)) if i not in assigned),
        unmatched_gts=tuple(i for i in range(len(gts)) if i not in matched_gts),
    )


# ---------------------------------------------------------------------------
# Corpus-level grounding metrics


@dataclass(frozen=True)
class _Detection:
    video_id: str
    frame: int
    box: BoundingBox
    phrase: str
    confidence: float
    seq: int


@dataclass(frozen=True)
class _GtObject:
    video_id: str
    frame: int
    box: BoundingBox
    phrase: str


def _record_boxes_normalized(record: VideoAnnotation, box: BoundingBox) -> BoundingBox:
    if box.normalized:
        return box
    return normalize_box(box, record.width, record.height)


def _extract_gt(record: VideoAnnotation) -> list[_GtObject]:
    objects = []
    for track in record.tracks:
        phrase = record.caption.phrases[track.phrase_index].text
        for frame in sorted(track.boxes):
            box = _record_boxes_normalized(record, track.boxes[frame])
            objects.append(_GtObject(record.video_id, frame, box, phrase))
    return objects


def _extract_preds(record: Optional[VideoAnnotation], seq_start: int = 0) -> list[_Detection]:
    if record is None:
        return []
    detections = []
    seq = seq_start
    for track in record.tracks:
        phrase = record.caption.phrases[track.phrase_index].text
        confidence = track.confidence or {}
        for frame in sorted(track.boxes):
            box = _record_boxes_normalized(record, track.boxes[frame])
            detections.append(
                _Detection(record.video_id, frame, box, phrase, confidence.get(frame, 1.0), seq)
            )
            seq += 1
    return detections


def _group_by_frame(items, key=lambda item: (item.video_id, item.frame)) -> dict:
    grouped: dict = {}
    for item in items:
        grouped.setdefault(key(item), []).append(item)
    return grouped


def _match_pool(
    detections: list[_Detection],
    gt_objects: list[_GtObject],
    iou_thresh: Optional[float],
    sim_thresh: Optional[float],
    sim,
) -> dict[int, tuple[_GtObject, float]]:
    """Greedy matching frame by frame; detection seq -> (gt, iou)."""
    gt_by_frame = _group_by_frame(gt_objects)
    matches: dict[int, tuple[_GtObject, float]] = {}
    for frame_key, frame_dets in _group_by_frame(detections).items():
        gts = gt_by_frame.get(frame_key, [])
        preds = [PredBox(d.box, d.phrase, d.confidence) for d in frame_dets]
        gt_boxes = [GtBox(g.box, g.phrase) for g in gts]
        assigned = _greedy_assign(preds, gt_boxes, iou_thresh, sim_thresh, sim)
        for pi, (gi, overlap, _similarity) in assigned.items():
            matches[frame_dets[pi].seq] = (gts[gi], overlap)
    return matches


def _average_precision(ranked_tp: np.ndarray, num_gt: int) -> Optional[float]:
    """All-point interpolated AP with the precision envelope.

    Equals the sum over true positives of the envelope precision at their
    rank, divided by the number of ground-truth boxes.
    """
    if num_gt == 0:
        return None
    if ranked_tp.size == 0:
        return 0.0
    tp = np.cumsum(ranked_tp)
    ranks = np.arange(1, ranked_tp.size + 1)
    precision = tp / ranks
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    return float(envelope[ranked_tp].sum() / num_gt)


def _ranked_flags(
    detections: list[_Detection], matches: dict[int, tuple[_GtObject, float]]
) -> np.ndarray:
    order = sorted(detections, key=lambda d: (-d.confidence, d.seq))
    return np.array([d.seq in matches for d in order], dtype=bool)


# ---------------------------------------------------------------------------
# Report


@dataclass(frozen=True)
class LevelScores:
    ap50: Optional[float]
    miou: Optional[float]
    recall: Optional[float]

    def as_dict(self) -> dict:
        return {"ap50": self.ap50, "miou": self.miou, "recall": self.recall}


@dataclass(frozen=True)
class EvalConfig:
    iou_thresh: float = DEFAULT_IOU_THRESH
    sim_thresh: float = DEFAULT_SIM_THRESH
    similarity: str = "lexical"
    embedding_endpoint: Optional[str] = None

    def backend(self) -> SimilarityBackend:
        if self.similarity == "lexical":
            return LexicalSimilarity()
        if self.similarity == "embedding":
            if not self.embedding_endpoint:
                raise ValueError("embedding similarity requires an endpoint")
            return EmbeddingSimilarity(self.embedding_endpoint)
        raise ValueError(f"unknown similarity backend {self.similarity!r}")


@dataclass(frozen=True)
class MetricsReport:
    frame_level: LevelScores
    video_level: LevelScores
    meteor: float
    cider: float
    per_video: dict[str, dict]
    config: dict
    num_videos: int

    def as_dict(self) -> dict:
        return {
            "config": self.config,
            "num_videos": self.num_videos,
            "meteor": self.meteor,
            "cider": self.cider,
            "frame_level": self.frame_level.as_dict(),
            "video_level": self.video_level.as_dict(),
            "per_video": self.per_video,
        }


def _mean_or_none(values: list[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return float(sum(present) / len(present))


@dataclass
class _VideoEval:
    """Per-video grounding terms reused by both evaluation settings."""

    detections: list[_Detection]
    gt_objects: list[_GtObject]
    ap50: Optional[float]
    miou: Optional[float]
    recall: Optional[float]


def _evaluate_video(
    detections: list[_Detection],
    gt_objects: list[_GtObject],
    config: EvalConfig,
    sim,
) -> _VideoEval:
    num_gt = len(gt_objects)
    if num_gt == 0:
        return _VideoEval(detections, gt_objects, None, None, None)
    gated = _match_pool(detections, gt_objects, config.iou_thresh, config.sim_thresh, sim)
    ap = _average_precision(_ranked_flags(detections, gated), num_gt)
    recall_value = len(gated) / num_gt
    iou_only = _match_pool(detections, gt_objects, None, None, sim)
    iou_sum = sum(overlap for _gt, overlap in iou_only.values())
    return _VideoEval(detections, gt_objects, ap, iou_sum / num_gt, recall_value)


def ap50(
    preds: Sequence[VideoAnnotation],
    gts: Sequence[VideoAnnotation],
    level: str,
    config: EvalConfig = EvalConfig(),
) -> Optional[float]:
    """Average precision at IoU 0.5 with the phrase similarity gate applied."""
    return _grounding_metric(preds, gts, level, config, "ap50")


def miou(
    preds: Sequence[VideoAnnotation],
    gts: Sequence[VideoAnnotation],
    level: str,
    config: EvalConfig = EvalConfig(),
) -> Optional[float]:
    """Mean IoU over ground-truth boxes under IoU-only matching."""
    return _grounding_metric(preds, gts, level, config, "miou")


def recall(
    preds: Sequence[VideoAnnotation],
    gts: Sequence[VideoAnnotation],
    level: str,
    config: EvalConfig = EvalConfig(),
) -> Optional[float]:
    """Fraction of ground-truth boxes matched under both gates."""
    return _grounding_metric(preds, gts, level, config, "recall")


def _grounding_metric(preds, gts, level, config, which) -> Optional[float]:
    if level not in ("frame", "video"):
        raise ValueError(f"level must be 'frame' or 'video', got {level!r}")
    report = evaluate(preds, gts, config)
    scores = report.frame_level if level == "frame" else report.video_level
    return getattr(scores, which)


def evaluate(
    pred_records: Sequence[VideoAnnotation],
    gt_records: Sequence[VideoAnnotation],
    config: EvalConfig = EvalConfig(),
) -> MetricsReport:
    """Score predictions against ground truth; all metrics, both settings.

    A ground-truth video with no prediction counts as an empty prediction; a
    predicted video absent from the ground truth is an error.
    """
    gt_by_id: dict[str, VideoAnnotation] = {}
    for record in gt_records:
        if record.video_id in gt_by_id:
            raise ValueError(f"duplicate ground-truth video {record.video_id!r}")
        gt_by_id[record.video_id] = record
    if not gt_by_id:
        raise ValueError("ground truth is empty")
    pred_by_id: dict[str, VideoAnnotation] = {}
    for record in pred_records:
        if record.video_id not in gt_by_id:
            raise ValueError(f"prediction for unknown video {record.video_id!r}")
        if record.video_id in pred_by_id:
            raise ValueError(f"duplicate prediction for video {record.video_id!r}")
        pred_by_id[record.video_id] = record

    backend = config.backend()
    sim = _SimCache(backend)
    video_ids = sorted(gt_by_id)

    evals: dict[str, _VideoEval] = {}
    seq = 0  # detection sequence numbers must be unique across the pool
    for video_id in video_ids:
        detections = _extract_preds(pred_by_id.get(video_id), seq_start=seq)
        seq += len(detections)
        evals[video_id] = _evaluate_video(detections, _extract_gt(gt_by_id[video_id]), config, sim)

    # Frame level: pool every detection and GT box across videos.
    all_dets = [d for vid in video_ids for d in evals[vid].detections]
    all_gts = [g for vid in video_ids for g in evals[vid].gt_objects]
    total_gt = len(all_gts)
    if total_gt == 0:
        frame_scores = LevelScores(None, None, None)
    else:
        gated = _match_pool(all_dets, all_gts, config.iou_thresh, config.sim_thresh, sim)
        frame_ap = _average_precision(_ranked_flags(all_dets, gated), total_gt)
        iou_only = _match_pool(all_dets, all_gts, None, None, sim)
        frame_scores = LevelScores(
            frame_ap,
            sum(v for _g, v in iou_only.values()) / total_gt,
            len(gated) / total_gt,
        )

    video_scores = LevelScores(
        _mean_or_none([evals[v].ap50 for v in video_ids]),
        _mean_or_none([evals[v].miou for v in video_ids]),
        _mean_or_none([evals[v].recall for v in video_ids]),
    )

    candidates = {}
    references = {}
    for video_id in video_ids:
        pred = pred_by_id.get(video_id)
        candidates[video_id] = pred.caption.plain if pred is not None else ""
        references[video_id] = [gt_by_id[video_id].caption.plain]
    cider_corpus, cider_by_video = cider_scores(candidates, references)
    meteor_by_video = {
        vid: meteor_best(candidates[vid], references[vid]) for vid in video_ids
    }
    meteor_corpus = float(sum(meteor_by_video.values()) / len(video_ids))

    per_video = {
        vid: {
            "ap50": evals[vid].ap50,
            "miou": evals[vid].miou,
            "recall": evals[vid].recall,
            "meteor": meteor_by_video[vid],
            "cider": cider_by_video[vid],
            "num_gt_boxes": len(evals[vid].gt_objects),
            "num_pred_boxes": len(evals[vid].detections),
        }
        for vid in video_ids
    }

    return MetricsReport(
        frame_level=frame_scores,
        video_level=video_scores,
        meteor=meteor_corpus,
        cider=cider_corpus,
        per_video=per_video,
        config={
            "iou_thresh": config.iou_thresh,
            "sim_thresh": config.sim_thresh,
            "similarity_backend": backend.name,
            "matching": "greedy-one-to-one-by-confidence",
            "ap_interpolation": "all-point-envelope",
            "miou_average": "over-gt-boxes",
            "miou_unmatched": "zero",
            "missing_confidence": 1.0,
        },
        num_videos=len(video_ids),
    )
