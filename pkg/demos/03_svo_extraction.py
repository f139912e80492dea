"""From frame captions to the SVO payload the aggregation prompt consumes.

Grounding models write long, frame-local prose.  Before asking a language
model for one video-level caption, each frame caption is reduced to
Subject-Verb-Object relations (plus adposition attachments) with a
deterministic rule tagger, and the relations are rendered into the
bracketed block format used by the prompt's in-context examples.
"""

from groundcap import extract_svo, pos_tag, render_svo_block

captions = [
    "the image shows a cup. a bowl is visible.",
    "a person holding a spoon. the spoon is in the bowl.",
    "a person is seen holding a spoon. the spoon is used to stir food in a bowl.",
]

frames = []
for index, caption in enumerate(captions):
    tokens = pos_tag(caption)
    print(f"frame {index}: {caption}")
    print("  tags:", " ".join(f"{t.text}/{t.pos}" for t in tokens))
    frame = extract_svo(tokens, index)
    for relation in frame.relations:
        parts = [relation.subject, relation.verb]
        if relation.object:
            parts.append(relation.object)
        print("  relation:", tuple(parts), "adpositions:", list(relation.adpositions))
    frames.append(frame)

print("\nrendered block:")
print(render_svo_block(frames))
