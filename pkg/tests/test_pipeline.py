import pytest

from groundcap import MockLlmServer, PipelineConfig, annotate_video, run_pipeline
from groundcap.llm import HttpChatClient
from conftest import (
    BEVERAGE_FRAME_PHRASES,
    ReplayClient,
    STIRRING_CAPTION,
    beverage_fixtures,
    beverage_frames,
    stirring_fixtures,
    stirring_frames,
)

CONFIG = PipelineConfig(backoff=0.0, fps=5.0)


class TestAnnotateVideo:
    def test_stirring_video_end_to_end(self):
        client = ReplayClient(stirring_fixtures())
        result = annotate_video(stirring_frames(), client, CONFIG)
        assert result.report.accepted
        annotation = result.annotation
        assert annotation.caption.plain == "A person is stirring food in a bowl using a spoon"
        assert annotation.caption.phrase_texts == ["A person", "food in a bowl"]
        assert len(annotation.tracks) == 2
        assert annotation.frame_count == 4
        assert annotation.width == 455 and annotation.height == 256
        # person appears in frames 1..3, bowl/food phrases cover 0..3
        by_phrase = {t.phrase_index: t for t in annotation.tracks}
        assert by_phrase[0].present_frames == [1, 2, 3]
        assert by_phrase[1].present_frames == [0, 1, 2, 3]

    def test_beverage_video_single_track(self):
        client = ReplayClient(beverage_fixtures())
        result = annotate_video(beverage_frames(), client, CONFIG)
        assert result.report.accepted
        by_phrase = {t.phrase_index: t for t in result.annotation.tracks}
        beverage_track = by_phrase[1]
        assert beverage_track.present_frames == [0, 1, 2]
        # three distinct frame phrases classified, plus "a woman"
        assert client.call_count == 1 + 1 + len(BEVERAGE_FRAME_PHRASES)

    def test_memoization_bounds_model_calls(self):
        client = ReplayClient(stirring_fixtures())
        annotate_video(stirring_frames(), client, CONFIG)
        # 1 aggregation + one call per distinct non-exact-match phrase
        assert client.call_count == 1 + 6

    def test_unparseable_aggregation_rejects_video(self):
        fixtures = stirring_fixtures()
        svo_key = next(iter(stirring_fixtures()))
        fixtures[svo_key] = "I cannot answer."
        client = ReplayClient(fixtures)
        result = annotate_video(stirring_frames(), client, CONFIG.override(retries=1))
        assert not result.report.accepted
        assert result.report.reason_codes == ["no-dictionary"]

    def test_mixed_videos_rejected(self):
        frames = stirring_frames("a") + stirring_frames("b")
        with pytest.raises(ValueError):
            annotate_video(frames, ReplayClient({}), CONFIG)

    def test_inconsistent_dimensions_rejected(self):
        frames = stirring_frames()
        bad = frames[1].__class__(
            video_id=frames[1].video_id,
            frame_index=frames[1].frame_index,
            width=640,
            height=480,
            caption=frames[1].caption,
            objects=frames[1].objects,
        )
        result = annotate_video([frames[0], bad], ReplayClient({}), CONFIG)
        assert not result.report.accepted
        assert result.report.reason_codes == ["inconsistent-frames"]

    def test_deterministic_output(self):
        results = [
            annotate_video(stirring_frames(), ReplayClient(stirring_fixtures()), CONFIG)
            for _ in range(2)
        ]
        assert results[0].annotation == results[1].annotation


class TestRunPipeline:
    def test_batch_over_http_with_workers(self):
        fixtures = {}
        groundings = {}
        for i in range(6):
            video_id = f"vid-{i:02d}"
            frames = stirring_frames(video_id)
            groundings[video_id] = frames
            fixtures.update(stirring_fixtures(video_id))
        with MockLlmServer(fixtures) as server:
            config = CONFIG.override(endpoint=server.url, model="mock", max_in_flight=4)
            results = run_pipeline(groundings, config)
        assert [r.video_id for r in results] == sorted(groundings)
        assert all(r.report.accepted for r in results)
        captions = {r.annotation.caption.plain for r in results}
        assert captions == {"A person is stirring food in a bowl using a spoon"}

    def test_accepted_plus_rejected_equals_input(self):
        groundings = {}
        fixtures = {}
        for i in range(5):
            video_id = f"vid-{i:02d}"
            groundings[video_id] = stirring_frames(video_id, salted=True)
            fixtures.update(stirring_fixtures(video_id, salted=True))
        # break one video's stage-2 fixture
        broken_id = "vid-03"
        broken_key = next(iter(stirring_fixtures(broken_id, salted=True)))
        fixtures[broken_key] = "{`WRONG': `thing'}"
        with MockLlmServer(fixtures) as server:
            config = CONFIG.override(
                endpoint=server.url, model="mock", max_in_flight=3, retries=1
            )
            results = run_pipeline(groundings, config)
        accepted = [r for r in results if r.report.accepted]
        rejected = [r for r in results if not r.report.accepted]
        assert len(accepted) + len(rejected) == 5
        assert [r.video_id for r in rejected] == [broken_id]
        assert rejected[0].report.reason_codes == ["no-caption-key"]


def test_http_client_seed_and_auth_fields():
    client = HttpChatClient(endpoint="http://x", model="m", seed=7, api_key="k")
    assert client.seed == 7 and client.api_key == "k"
