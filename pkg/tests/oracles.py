"""Independent brute-force implementations used to pin expected values.

Everything here deliberately avoids the library's code paths: IoU by
counting unit grid cells, masks by full decode, CIDEr with dense vectors
over an enumerated vocabulary, AP by enumerating the PR curve, and a
recursive-descent parser for the rendered SVO block grammar.
"""

from __future__ import annotations

import math
import re
from collections import Counter

import numpy as np


def grid_iou(a: tuple[int, int, int, int], b: tuple[int, int, int, int]) -> float:
    """IoU of two integer [x, y, w, h] boxes by enumerating covered cells."""
    cells_a = {(x, y) for x in range(a[0], a[0] + a[2]) for y in range(a[1], a[1] + a[3])}
    cells_b = {(x, y) for x in range(b[0], b[0] + b[2]) for y in range(b[1], b[1] + b[3])}
    union = cells_a | cells_b
    if not union:
        return 0.0
    return len(cells_a & cells_b) / len(union)


def rle_box_bruteforce(counts, width: int, height: int):
    """Tightest box around an RLE mask via full decode and min/max scan."""
    flat = []
    value = 0
    for run in counts:
        flat.extend([value] * run)
        value = 1 - value
    grid = np.array(flat, dtype=int).reshape(height, width)
    ys, xs = np.nonzero(grid)
    if xs.size == 0:
        return None
    return (
        float(xs.min()),
        float(ys.min()),
        float(xs.max() - xs.min() + 1),
        float(ys.max() - ys.min() + 1),
    )


def _tokenize(text: str) -> list[str]:
    return re.findall(r"\w+|[^\w\s]", text.lower())


def cider_oracle(candidates: dict, references: dict, n_max: int = 4, sigma: float = 6.0) -> float:
    """CIDEr-D with dense TF-IDF vectors over an enumerated vocabulary."""
    vids = sorted(references)
    n_videos = len(vids)

    def grams(tokens, n):
        return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]

    ref_tokens = {v: [_tokenize(r) for r in references[v]] for v in vids}
    cand_tokens = {v: _tokenize(candidates[v]) for v in vids}

    per_video = []
    for vid in vids:
        per_n = []
        for n in range(1, n_max + 1):
            vocab = sorted(
                set(grams(cand_tokens[vid], n))
                | {g for toks in ref_tokens[vid] for g in grams(toks, n)}
            )
            index = {g: i for i, g in enumerate(vocab)}
            df = np.zeros(len(vocab))
            for other in vids:
                present = set()
                for toks in ref_tokens[other]:
                    present.update(g for g in grams(toks, n) if g in index)
                for g in present:
                    df[index[g]] += 1
            idf = np.log(n_videos) - np.log(np.maximum(df, 1.0))

            def vector(tokens):
                counts = Counter(grams(tokens, n))
                v = np.zeros(len(vocab))
                for g, c in counts.items():
                    v[index[g]] = c
                return v * idf

            hyp = vector(cand_tokens[vid])
            hyp_norm = np.linalg.norm(hyp)
            total = 0.0
            for toks in ref_tokens[vid]:
                ref = vector(toks)
                ref_norm = np.linalg.norm(ref)
                if hyp_norm == 0 or ref_norm == 0:
                    continue
                delta = len(cand_tokens[vid]) - len(toks)
                gauss = math.exp(-(delta**2) / (2 * sigma**2))
                total += gauss * float(np.minimum(hyp, ref) @ ref) / (hyp_norm * ref_norm)
            per_n.append(total / len(ref_tokens[vid]))
        per_video.append(10.0 * sum(per_n) / n_max)
    return sum(per_video) / len(per_video)


def ap_oracle(ranked_tp: list[bool], num_gt: int) -> float:
    """All-point interpolated AP by enumerating every PR point.

    AP = sum over distinct recall levels of (r - r_prev) * max precision
    among ranks whose recall is at least r.
    """
    if num_gt == 0:
        raise ValueError("undefined for zero ground truth")
    points = []
    tp = 0
    for k, flag in enumerate(ranked_tp, start=1):
        if flag:
            tp += 1
        points.append((tp / num_gt, tp / k))
    ap = 0.0
    prev_recall = 0.0
    for recall_level in sorted({r for r, _ in points}):
        if recall_level == prev_recall:
            continue
        best = max(p for r, p in points if r >= recall_level)
        ap += (recall_level - prev_recall) * best
        prev_recall = recall_level
    return ap


# ---------------------------------------------------------------------------
# Reference grammar for the rendered SVO block


class SvoBlockParser:
    """Recursive-descent parser for the backtick-quoted list-of-lists layout."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> list[list[dict]]:
        if self.text == "[]":
            return []
        frames = [self._frame()]
        while self._peek(",\n"):
            self._expect(",\n")
            frames.append(self._frame())
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return frames

    def _frame(self) -> list[dict]:
        self._expect("[")
        relations = []
        if not self._peek("]"):
            relations.append(self._relation())
            while self._peek(", "):
                self._expect(", ")
                relations.append(self._relation())
        self._expect("]")
        return relations

    def _relation(self) -> dict:
        self._expect("[")
        subject = self._quoted()
        self._expect(", ")
        verb = self._quoted()
        obj = None
        adpositions = []
        while self._peek(", "):
            self._expect(", ")
            if self._peek("("):
                adpositions.append(self._pair())
            else:
                if obj is not None or adpositions:
                    raise ValueError(f"unexpected extra object at {self.pos}")
                obj = self._quoted()
        self._expect("]")
        return {"subject": subject, "verb": verb, "object": obj, "adpositions": adpositions}

    def _pair(self) -> tuple[str, str]:
        self._expect("(")
        adposition = self._quoted()
        self._expect(", ")
        obj = self._quoted()
        self._expect(")")
        return (adposition, obj)

    def _quoted(self) -> str:
        self._expect("`")
        end = self.text.find("'", self.pos)
        if end < 0:
            raise ValueError(f"unterminated quote at {self.pos}")
        value = self.text[self.pos : end]
        self.pos = end + 1
        return value

    def _peek(self, literal: str) -> bool:
        return self.text.startswith(literal, self.pos)

    def _expect(self, literal: str) -> None:
        if not self._peek(literal):
            raise ValueError(
                f"expected {literal!r} at {self.pos}, found {self.text[self.pos:self.pos+8]!r}"
            )
        self.pos += len(literal)


def parse_svo_block(text: str) -> list[list[dict]]:
    return SvoBlockParser(text).parse()
