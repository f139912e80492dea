import pytest

from groundcap import (
    BoundingBox,
    ObjectTrack,
    PhraseAssignment,
    assemble_tracks,
    build_record,
    derive_presence,
    parse_tagged_caption,
)

CAPTION = parse_tagged_caption("<p>a woman</p> pours <p>a beverage</p>")


def track_from(frames, frame_count, phrase_index=0):
    return ObjectTrack.from_boxes(
        phrase_index, {t: BoundingBox(0, 0, 10, 10) for t in frames}, frame_count
    )


class TestAssembleTracks:
    def test_contiguous_boxes_build_one_track(self):
        objects = [(t, "a drink", BoundingBox(5, 5, 20, 20)) for t in range(3)]
        assignments = [PhraseAssignment(t, "a drink", "a beverage") for t in range(3)]
        tracks = assemble_tracks(assignments, objects, CAPTION, 5)
        assert len(tracks) == 1
        assert tracks[0].phrase_index == 1
        assert list(tracks[0].presence) == [True, True, True, False, False]

    def test_beverage_phrases_grouped_into_single_track(self):
        phrases = ["a green beverage", "a glass", "a glass of green liquid"]
        objects = [(t, p, BoundingBox(5 + t, 5, 20, 20)) for t, p in enumerate(phrases)]
        assignments = [PhraseAssignment(t, p, "a beverage") for t, p in enumerate(phrases)]
        tracks = assemble_tracks(assignments, objects, CAPTION, 3)
        assert len(tracks) == 1
        assert tracks[0].present_frames == [0, 1, 2]

    def test_none_class_dropped(self):
        objects = [(0, "table", BoundingBox(0, 0, 5, 5)), (0, "a lady", BoundingBox(1, 1, 8, 8))]
        assignments = [
            PhraseAssignment(0, "table", None),
            PhraseAssignment(0, "a lady", "a woman"),
        ]
        tracks = assemble_tracks(assignments, objects, CAPTION, 1)
        assert len(tracks) == 1
        assert tracks[0].phrase_index == 0

    def test_duplicate_phrase_in_frame_keeps_larger_box(self, caplog):
        objects = [
            (4, "a cup", BoundingBox(0, 0, 10, 10)),  # area 100
            (4, "a mug", BoundingBox(50, 50, 8, 5)),  # area 40
        ]
        assignments = [
            PhraseAssignment(4, "a cup", "a beverage"),
            PhraseAssignment(4, "a mug", "a beverage"),
        ]
        with caplog.at_level("WARNING"):
            tracks = assemble_tracks(assignments, objects, CAPTION, 6)
        assert tracks[0].boxes[4] == BoundingBox(0, 0, 10, 10)
        assert any("two boxes" in r.message for r in caplog.records)

    def test_missing_assignment_is_error(self):
        with pytest.raises(ValueError):
            assemble_tracks([], [(0, "a cup", BoundingBox(0, 0, 1, 1))], CAPTION, 1)


class TestDerivePresence:
    def test_two_segments_with_gap(self):
        track = track_from({0, 1, 2, 5, 6}, 8)
        assert derive_presence(track) == [(0, 2), (5, 6)]

    def test_all_present(self):
        track = track_from(range(7), 7)
        assert derive_presence(track) == [(0, 6)]

    def test_alternating(self):
        track = track_from({0, 2}, 4)
        assert derive_presence(track) == [(0, 0), (2, 2)]

    def test_single_last_frame(self):
        track = track_from({9}, 10)
        assert derive_presence(track) == [(9, 9)]


class TestBuildRecord:
    def test_no_tracks_rejected(self):
        annotation, report = build_record("v1", 10, 5.0, 455, 256, CAPTION, [])
        assert annotation is None
        assert not report.accepted
        assert report.reason_codes == ["no-tracks"]

    def test_accepted_with_tracks(self):
        tracks = [track_from({0, 1}, 4, 0), track_from({2}, 4, 1)]
        annotation, report = build_record("v1", 4, 5.0, 455, 256, CAPTION, tracks)
        assert report.accepted and report.reasons == ()
        assert annotation is not None and len(annotation.tracks) == 2

    def test_ungrounded_phrase_kept_with_warning(self, caplog):
        tracks = [track_from({0}, 2, 0)]  # phrase 1 has no boxes
        with caplog.at_level("WARNING"):
            annotation, report = build_record("v1", 2, 5.0, 455, 256, CAPTION, tracks)
        assert report.accepted
        assert annotation.caption.phrase_texts == ["a woman", "a beverage"]
        assert any("no boxes" in r.message for r in caplog.records)

    def test_invariant_violation_becomes_rejection(self):
        bad = track_from({0}, 3, phrase_index=7)  # phrase index out of range
        annotation, report = build_record("v1", 3, 5.0, 455, 256, CAPTION, [bad])
        assert annotation is None
        assert report.reason_codes == ["bad-phrase-index"]

    def test_acceptance_monotone_under_added_boxes(self):
        base = [track_from({0}, 4, 0)]
        _, report_before = build_record("v1", 4, 5.0, 455, 256, CAPTION, base)
        richer = [track_from({0, 1}, 4, 0), track_from({3}, 4, 1)]
        _, report_after = build_record("v1", 4, 5.0, 455, 256, CAPTION, richer)
        assert report_before.accepted and report_after.accepted


def test_track_count_never_exceeds_phrase_count(rng):
    for _ in range(50):
        frame_count = rng.randint(1, 6)
        objects = []
        assignments = []
        for t in range(frame_count):
            for p in ("a cup", "a jar", "table"):
                if rng.random() < 0.5:
                    continue
                assigned = rng.choice(["a woman", "a beverage", None])
                objects.append((t, p, BoundingBox(0, 0, 4, 4)))
                assignments.append(PhraseAssignment(t, p, assigned))
        # de-duplicate conflicting assignments for the same (frame, phrase)
        seen = {}
        for a in assignments:
            seen[(a.frame_index, a.frame_phrase)] = a
        assignments = list(seen.values())
        tracks = assemble_tracks(assignments, objects, CAPTION, frame_count)
        assert len(tracks) <= len(CAPTION.phrases)
        for track in tracks:
            assert sum(track.presence) <= frame_count
