"""Tagged captions and box geometry: the core data model.

A grounded caption marks the phrases that get bounding boxes with inline
<p></p> tags.  This walk-through parses one, inspects the character spans,
renders it back, and exercises the box conventions ([x, y, w, h], top-left
origin, pixel or normalized coordinates).
"""

from groundcap import (
    BoundingBox,
    denormalize_box,
    iou,
    normalize_box,
    parse_tagged_caption,
    render_tagged_caption,
)

tagged = "<p>A person</p> is stirring <p>food in a bowl</p> using a spoon"
caption = parse_tagged_caption(tagged)

print("tagged:  ", tagged)
print("plain:   ", caption.plain)
for span in caption.phrases:
    print(f"phrase:   {span.text!r} at characters [{span.char_start}, {span.char_end})")

# Rendering the tags back is the exact inverse of parsing.
assert render_tagged_caption(caption) == tagged
print("render(parse(x)) == x holds\n")

# Boxes carry their own coordinate mode so mixing modes fails loudly.
a = BoundingBox(10, 10, 20, 20)
b = BoundingBox(20, 20, 20, 20)
print(f"iou of {a.as_list()} and {b.as_list()} = {iou(a, b):.6f}  (100/700)")

# Normalized coordinates are fractions of the frame size; 455x256 is the
# usual clip resolution in this pipeline.
pixel = BoundingBox(45.5, 25.6, 91.0, 51.2)
unit = normalize_box(pixel, 455, 256)
print("normalized:", [round(v, 6) for v in unit.as_list()])
back = denormalize_box(unit, 455, 256)
print("round trip:", [round(v, 6) for v in back.as_list()])
