"""Caption aggregation and tracking-by-language over a chat-completion API.

The two model-facing steps share one client contract (``ChatClient``): a
single ``complete`` call over role/content messages.  Responses are parsed
strictly; anything that does not carry the expected dictionary-shaped answer
becomes a rejection with a machine-readable reason code rather than a crash,
so a batch run can count and log failed videos the same way it counts
accepted ones.
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Protocol, Sequence

import requests

from . import prompts
from .boxes import BoundingBox
from .captions import MalformedCaptionError, TaggedCaption, parse_tagged_caption
from .records import SvoFrame
from .svo import render_svo_block

logger = logging.getLogger(__name__)

ROLES = ("system", "user", "assistant")

# Rejection reason codes.
REJECT_NO_DICTIONARY = "no-dictionary"
REJECT_NO_CAPTION_KEY = "no-caption-key"
REJECT_MALFORMED_TAGS = "malformed-tags"
REJECT_NO_PHRASES = "no-phrases"
REJECT_NO_CATEGORY_KEY = "no-category-key"
REJECT_UNKNOWN_CATEGORY = "unknown-category"
REJECT_TRANSPORT = "transport"

NONE_CLASS = "None"


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        if not self.content:
            raise ValueError("message content must be non-empty")

    def as_dict(self) -> dict[str, str]:
        return {"role": self.role, "content": self.content}


class ChatClient(Protocol):
    """Anything that can answer a chat prompt with plain text."""

    def complete(self, messages: Sequence[ChatMessage]) -> str: ...


class TransportError(Exception):
    """The endpoint could not be reached or returned an unusable envelope."""


class ResponseRejection(Exception):
    """A model answer (or the transport) failed; carries the reason code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class AggregatedCaption:
    """A parsed video-level caption plus the raw model text it came from."""

    caption: TaggedCaption
    raw_response: str

    def __post_init__(self) -> None:
        if not self.caption.phrases:
            raise ValueError("aggregated caption must tag at least one phrase")


@dataclass(frozen=True)
class PhraseAssignment:
    """A frame-level phrase mapped to a video-level phrase, or dropped."""

    frame_index: int
    frame_phrase: str
    assigned: Optional[str]  # None is the None-class


@dataclass
class HttpChatClient:
    """Chat-completions client: JSON over HTTP POST.

    Request body is ``{model, messages, temperature}`` (plus ``seed`` when
    configured); the response must contain a first choice with
    ``message.content``.  Instances are cheap; each worker thread should own
    one so the underlying session is not shared.
    """

    endpoint: str
    model: str
    temperature: float = 0.0
    seed: Optional[int] = 0
    api_key: Optional[str] = None
    timeout: float = 60.0
    session: requests.Session = field(default_factory=requests.Session, repr=False)

    def complete(self, messages: Sequence[ChatMessage]) -> str:
        payload: dict = {
            "model": self.model,
            "messages": [m.as_dict() for m in messages],
            "temperature": self.temperature,
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            response = self.session.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
            response.raise_for_status()
            body = response.json()
        except (requests.RequestException, ValueError) as exc:
            raise TransportError(str(exc)) from exc
        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed completion envelope: {body!r}") from exc
        if not isinstance(content, str):
            raise TransportError(f"completion content is not text: {content!r}")
        return content


# ---------------------------------------------------------------------------
# Response parsing

_QUOTE_PAIRS = {"`": "'", "'": "'", '"': '"'}


def _extract_dict_value(text: str, key: str) -> str:
    """Pull the quoted value of ``key`` out of a dictionary-shaped response.

    Tolerates prose around the dictionary and either backtick or standard
    quoting; the value runs to the last closing quote before the dictionary
    ends, so apostrophes inside the value survive.
    """
    start = text.find("{")
    end = text.rfind("}")
    if start < 0 or end <= start:
        raise ResponseRejection(REJECT_NO_DICTIONARY, "response contains no dictionary")
    body = text[start + 1 : end]
    key_match = re.search(rf"[`'\"]?{re.escape(key)}[`'\"]?\s*:\s*", body)
    if key_match is None:
        raise ResponseRejection(f"no-{key.lower()}-key", f"response dictionary has no {key} key")
    rest = body[key_match.end() :]
    if not rest or rest[0] not in _QUOTE_PAIRS:
        raise ResponseRejection(f"no-{key.lower()}-key", f"{key} value is not a quoted string")
    closing = _QUOTE_PAIRS[rest[0]]
    value_end = rest.rfind(closing)
    if value_end <= 0:
        raise ResponseRejection(f"no-{key.lower()}-key", f"{key} value is not closed")
    return rest[1:value_end]


def build_stage2_prompt(svo_block: str) -> list[ChatMessage]:
    """System instructions, two in-context pairs, then the video's SVO block."""
    return [
        ChatMessage("system", prompts.AGGREGATION_SYSTEM),
        ChatMessage("user", prompts.svo_user_message(prompts.AGGREGATION_EXAMPLE_INPUT_1)),
        ChatMessage("assistant", prompts.AGGREGATION_EXAMPLE_RESPONSE_1),
        ChatMessage("user", prompts.svo_user_message(prompts.AGGREGATION_EXAMPLE_INPUT_2)),
        ChatMessage("assistant", prompts.AGGREGATION_EXAMPLE_RESPONSE_2),
        ChatMessage("user", prompts.svo_user_message(svo_block)),
    ]


def parse_stage2_response(text: str) -> AggregatedCaption:
    """Extract and parse the CAPTION value; at least one phrase is required.

    Raises:
        ResponseRejection: ``no-dictionary``, ``no-caption-key``,
            ``malformed-tags``, or ``no-phrases``.
    """
    value = _extract_dict_value(text, "CAPTION")
    try:
        caption = parse_tagged_caption(value)
    except MalformedCaptionError as exc:
        raise ResponseRejection(REJECT_MALFORMED_TAGS, str(exc)) from exc
    if not caption.phrases:
        raise ResponseRejection(REJECT_NO_PHRASES, "caption tags no phrases")
    return AggregatedCaption(caption=caption, raw_response=text)


def build_stage3_prompt(frame_phrase: str, categories: Sequence[str]) -> list[ChatMessage]:
    """System instructions, five in-context pairs, then the phrase to classify."""
    if not categories:
        raise ValueError("categories must be non-empty")
    messages = [ChatMessage("system", prompts.CLASSIFICATION_SYSTEM)]
    for phrase, cats, response in prompts.CLASSIFICATION_EXAMPLES:
        messages.append(ChatMessage("user", prompts.classification_user_message(phrase, cats)))
        messages.append(ChatMessage("assistant", response))
    messages.append(
        ChatMessage("user", prompts.classification_user_message(frame_phrase, list(categories)))
    )
    return messages


def parse_stage3_response(text: str, categories: Sequence[str]) -> Optional[str]:
    """Extract the CATEGORY value; ``None`` (the None-class) maps to ``None``.

    The value must equal one category exactly after whitespace trimming.

    Raises:
        ResponseRejection: ``no-dictionary``, ``no-category-key``, or
            ``unknown-category``.
    """
    value = _extract_dict_value(text, "CATEGORY").strip()
    if value == NONE_CLASS:
        return None
    if value in categories:
        return value
    raise ResponseRejection(
        REJECT_UNKNOWN_CATEGORY, f"category {value!r} is not one of {list(categories)}"
    )


# ---------------------------------------------------------------------------
# Stage drivers with retries


def _call_with_retries(
    client: ChatClient,
    messages: Sequence[ChatMessage],
    parse,
    retries: int,
    backoff: float,
):
    """Run request+parse up to ``retries`` extra times before giving up.

    Transport failures back off exponentially; parse failures re-prompt
    immediately.  The final failure's reason code is raised.
    """
    last: ResponseRejection | None = None
    for attempt in range(retries + 1):
        try:
            return parse(client.complete(messages))
        except TransportError as exc:
            last = ResponseRejection(REJECT_TRANSPORT, str(exc))
            if attempt < retries and backoff > 0:
                time.sleep(backoff * (2**attempt))
        except ResponseRejection as exc:
            last = exc
    assert last is not None
    raise last


def aggregate_video(
    frames: Iterable[SvoFrame],
    client: ChatClient,
    retries: int = 2,
    backoff: float = 0.5,
) -> AggregatedCaption:
    """Stage 2: one round trip turning a video's SVO frames into a caption.

    Raises:
        ResponseRejection: when every attempt fails; the code reflects the
            last failure (``transport`` after network exhaustion).
    """
    messages = build_stage2_prompt(render_svo_block(frames))
    return _call_with_retries(client, messages, parse_stage2_response, retries, backoff)


def track_by_language(
    frame_objects: Sequence[tuple[int, str, BoundingBox]],
    video_phrases: Sequence[str],
    client: ChatClient,
    retries: int = 2,
    backoff: float = 0.5,
) -> list[PhraseAssignment]:
    """Stage 3: classify every frame-level phrase into a video-level phrase.

    Each distinct phrase string is classified once per video; a phrase that
    already equals a video phrase is assigned without a model call.  A
    rejection on one phrase demotes it to the None-class with a warning
    instead of failing the video.
    """
    if not video_phrases:
        raise ValueError("video_phrases must be non-empty")
    memo: dict[str, Optional[str]] = {}
    assignments = []
    for frame_index, phrase, _box in frame_objects:
        if phrase not in memo:
            memo[phrase] = _classify_phrase(phrase, video_phrases, client, retries, backoff)
        assignments.append(PhraseAssignment(frame_index, phrase, memo[phrase]))
    return assignments


def _classify_phrase(
    phrase: str,
    video_phrases: Sequence[str],
    client: ChatClient,
    retries: int,
    backoff: float,
) -> Optional[str]:
    if phrase in video_phrases:
        return phrase
    messages = build_stage3_prompt(phrase, video_phrases)
    try:
        return _call_with_retries(
            client,
            messages,
            lambda text: parse_stage3_response(text, video_phrases),
            retries,
            backoff,
        )
    except ResponseRejection as exc:
        logger.warning("phrase %r dropped to None-class: %s (%s)", phrase, exc.message, exc.code)
        return None
