"""Prompt text for caption aggregation and phrase classification.

The system instructions and in-context examples are fixed strings; the final
user turn is rendered from the video at hand.  Quoting follows the backtick
open / straight-quote close convention used throughout (`` `word' ``), and
the caption aggregation examples use the same relation layout that
:func:`groundcap.svo.render_svo_block` produces.
"""

from __future__ import annotations

AGGREGATION_SYSTEM = """Generate a dynamic, video-level description based on frame-level inputs. The inputs include actions performed in individual frames in the form of Subject-Verb-Object (SVO) triplets along with prepositions and prepositional objects. The SVO triplets describe how actions are performed and how objects interact. Your output should be a concise narrative in 1 sentence, focusing on the most salient actions depicted across the frames. Enclose the exact text of relevant objects within <p></p> tags.

Input format:
[[`subject': `subject_text', `verb': `action_text', `object': `object_text',
`prepositions_objects': [('preposition', `prepositional_object')],],]

Output format:
A Python dictionary with a key `CAPTION', and as a value a dynamic description of the video content.

Infer motion from static descriptions. E.g. `image shows a person holding a spoon and a bowl' implies `person is stirring food in a bowl'. Enclose the human and the most frequent object that is used to perform the action within <p></p> tags. If there is no human, enclose the two most frequent objects within <p></p> tags."""

AGGREGATION_EXAMPLE_INPUT_1 = """[[`image', `shows', `cup'], [`bowl', `is']],
[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],
[[`image', `shows', `spoon', (`inside', `bowl')]],
[[`person', `seen'], [`person', `holding', `spoon'], [`spoon', `used'], [`spoon', `stir', `food', (`in', `bowl')]],
[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],
[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],
[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],
[[`image', `shows', `spoon', (`in', `bowl')]],
[[`image', `shows', `bottle'], [`bottle', `positioned', (`beside', `bowl')]],
[[`image', `shows', `bottle'], [`bottle', `positioned', (`beside', `cup')]],
[[`image', `shows', `bottle'], [`image', `placed', (`on', `counter')], [`bottle', `positioned', (`beside', `bowl')]]"""

AGGREGATION_EXAMPLE_RESPONSE_1 = (
    "{`CAPTION': `<p>A person</p> is stirring <p>food in a bowl</p> using a spoon'}"
)

AGGREGATION_EXAMPLE_INPUT_2 = """[[`hand', `using', `cutting board']],
[[`woman', `using', `cutting board'], [`woman', `make', `craft project']],
[[`child', `using', `craft cutter'], [`child', `cut', `object']],
[[`child', `using', `craft cutter'], [`child', `cut', `paper']],
[[`woman', `using', `craft cutter'], [`woman', `cut', `object']],
[[`woman', `using', `scissors pair'], [`woman', `cut', `piece', (`of', `paper')]],
[[`hand', `using', `scissors pair'], [`hand', `cut', `piece', (`of', `paper')]],
[[`woman', `using', `scissors pair'], [`woman', `cut', `piece', (`of', `paper')]],
[[`woman', `using', `craft cutter'], [`woman', `cut', `object']],
[[`woman', `using', `craft cutter'], [`woman', `cut', `plate']]"""

AGGREGATION_EXAMPLE_RESPONSE_2 = (
    "{`CAPTION': `<p>A woman</p> is cutting <p>an object</p> using a craft cutter'}"
)

CLASSIFICATION_SYSTEM = """You are tasked with classifying humans and objects to a set of given categories.

Input format:
Human/Object (string), set of categories (lists of strings).

Output format:
A Python dictionary with a key `CATEGORY', and as a value the predicted category of the human/object.

Use `None' if the human/object doesn`t belong to any of the categories. DO NEVER classify a human as the object category and vice versa."""

CLASSIFICATION_EXAMPLES = [
    ("person", ["a woman", "her hair"], "{`CATEGORY': `a woman'}"),
    ("table", ["a person", "a bowl"], "{`CATEGORY': `None'}"),
    ("a piece of food on a plate", ["a woman", "a meal"], "{`CATEGORY': `a meal'}"),
    ("a hand", ["a person", "food on a plate"], "{`CATEGORY': `a person'}"),
    (
        "a man in a white shirt and black apron is also present",
        ["a person", "food"],
        "{`CATEGORY': `a person'}",
    ),
]


def svo_user_message(svo_block: str) -> str:
    return f"SVO:\n{svo_block}"


def classification_user_message(phrase: str, categories: list[str]) -> str:
    rendered = "[" + ", ".join(f"`{c}'" for c in categories) + "]"
    return f"Input: `{phrase}'\nCategories: {rendered}"
