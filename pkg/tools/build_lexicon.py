#!/usr/bin/env python3
"""Regenerate src/groundcap/data/lexicon.tsv from the base word lists below.

The shipped lexicon drives the default part-of-speech tagger.  Verb and noun
inflections are expanded from base forms here so the TSV stays reviewable;
collisions resolve by the priority function words > verbs > nouns >
adjectives, with a small override table for words whose caption usage skews
the other way.  Run from the repository root:

    python tools/build_lexicon.py
"""

from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "groundcap" / "data" / "lexicon.tsv"

DETERMINERS = """
a an the this that these those some any no each every either neither another
both all few many several such much more most other half my your his her its
our their whose which what
""".split()

PRONOUNS = """
i you he she it we they me him us them mine yours hers ours theirs myself
yourself himself herself itself ourselves yourselves themselves who whom
someone somebody something anyone anybody anything everyone everybody
everything nobody nothing
""".split()

AUXILIARIES = """
am is are was were be been being has have had do does did will would shall
should can could may might must
""".split()

ADPOSITIONS = """
aboard about above across after against along alongside amid among around as
at atop before behind below beneath beside besides between beyond by despite
down during except for from in inside into like near of off on onto opposite
out outside over past per round since than through throughout till to toward
towards under underneath until unto up upon via within without
""".split()

OTHER_WORDS = """
not also then now here there very too so just only quite rather again once
twice always never often sometimes usually together apart away back forward
up down and or but nor yet while when where because if although though as
until unless carefully gently quickly slowly thoroughly repeatedly evenly
firmly lightly partially fully almost nearly about simultaneously meanwhile
afterwards first second next finally currently still already perhaps
""".split()

ADJECTIVES = """
red blue green yellow black white brown gray grey orange purple pink golden
silver beige tan navy teal maroon transparent colorful dark bright light pale
big small large little long short tall wide narrow thick thin heavy tiny huge
enormous old new young fresh stale dry wet damp hot cold warm cool frozen
clean dirty messy neat tidy empty full open closed whole entire broken intact
soft hard smooth rough sharp dull round square rectangular circular oval flat
curved deep shallow upper lower front rear top bottom middle central left
right inner outer near distant same different similar various assorted
wooden metal metallic plastic ceramic rubber leather woolen cotton silk
paper glass stone marble granite stainless electric electronic digital
manual automatic raw cooked baked fried boiled grilled roasted steamed
melted chopped sliced diced minced grated shredded crushed ground whipped
beaten mixed blended seasoned salted sweet sour bitter spicy savory tasty
delicious ripe unripe visible invisible present absent busy idle careful
elderly adult female male blonde brunette bearded muscular slim happy sad
serious focused gloved bare striped plaid checkered floral patterned plain
decorative ornate rustic modern vintage antique miniature oversized
""".split()

# Base verbs; inflections are generated.  DOUBLED lists bases whose final
# consonant doubles before -ing/-ed; IRREGULAR maps base -> (past, participle,
# present-participle or None for regular, 3rd-person or None for regular).
VERBS = """
hold stir cut use show see make take put place pour mix add remove wash clean
chop slice dice mince peel grate shred whisk beat fold knead roll spread
sprinkle season cook bake fry boil simmer grill roast steam melt heat cool
serve taste eat drink fill refill drain strain sift measure weigh crack
separate combine blend stuff coat dip soak marinate garnish decorate frost
ice glaze squeeze press push pull lift lower raise drop pick carry bring
fetch move shift slide turn flip toss shake tilt rotate spin twist bend
straighten stretch fold unfold wrap unwrap tie untie knot attach detach
fasten unfasten connect disconnect insert extract draw sketch paint color
brush glue paste tape staple clip pin sew stitch knit weave cut trim snip
carve whittle sand file drill hammer nail screw unscrew bolt wrench saw
chisel plane polish buff wax oil grease wipe scrub rinse dry dust sweep mop
vacuum wash iron hang fold sort arrange organize stack pile load unload
pack unpack open close shut lock unlock cover uncover seal unseal label
mark write erase read type print scan copy point gesture wave nod smile
laugh talk speak say tell explain describe demonstrate instruct teach learn
watch look observe examine inspect check verify test try attempt practice
work play rest pause stop start begin finish complete continue repeat
prepare gather collect select choose grab grip grasp release let touch feel
tap pat rub massage stroke scratch pinch poke prod nudge sit stand kneel
crouch squat lean walk step run jump hop skip dance sing hum whistle breathe
pose position adjust align center balance level lend give hand pass receive
accept offer present display exhibit reveal hide conceal store keep retain
discard throw toss dump pour empty spill splash spray squirt drizzle dribble
drip leak flow stream trickle bubble foam froth steam smoke burn char toast
brown sear scorch sizzle crackle pop snap crunch crush grind mill pulverize
mash puree liquefy dissolve stir fold whip aerate ferment rise proof rest
chill freeze thaw defrost reheat microwave light extinguish ignite kindle
apply spread smear dab blot smudge smooth flatten thin thicken reduce
concentrate dilute weaken strengthen tighten loosen secure stabilize steady
support prop brace anchor mount install assemble disassemble build construct
create craft fashion form shape mold sculpt cast forge weld solder braze
string thread lace loop coil wind unwind reel spool twirl curl
feed water plant sow seed harvest reap pick prune weed rake hoe dig shovel
scoop ladle spoon fork skewer pierce puncture perforate slit slash score
notch groove engrave etch emboss stamp imprint seen use appear seem remain
stay become get go come leave arrive enter exit climb descend ascend
""".split()

DOUBLED = set(
    """
    cut put stir chop dip rub pat wrap flip grab stop drop mop trim skim
    shred plug drag spin pin scrub snap tap zip knit hug jog nod pop prep
    shop step stem slam plan pet wet set get sit hop skip grip strip clip
    whip drip quiz blot dab prod squat
    """.split()
)

IRREGULAR = {
    "hold": ("held", "held"),
    "cut": ("cut", "cut"),
    "put": ("put", "put"),
    "see": ("saw", "seen"),
    "show": ("showed", "shown"),
    "make": ("made", "made"),
    "take": ("took", "taken"),
    "give": ("gave", "given"),
    "get": ("got", "gotten"),
    "go": ("went", "gone"),
    "come": ("came", "come"),
    "become": ("became", "become"),
    "eat": ("ate", "eaten"),
    "drink": ("drank", "drunk"),
    "beat": ("beat", "beaten"),
    "draw": ("drew", "drawn"),
    "throw": ("threw", "thrown"),
    "write": ("wrote", "written"),
    "read": ("read", "read"),
    "say": ("said", "said"),
    "tell": ("told", "told"),
    "speak": ("spoke", "spoken"),
    "sing": ("sang", "sung"),
    "sit": ("sat", "sat"),
    "stand": ("stood", "stood"),
    "run": ("ran", "run"),
    "rise": ("rose", "risen"),
    "freeze": ("froze", "frozen"),
    "grind": ("ground", "ground"),
    "weave": ("wove", "woven"),
    "sew": ("sewed", "sewn"),
    "hang": ("hung", "hung"),
    "hide": ("hid", "hidden"),
    "let": ("let", "let"),
    "leave": ("left", "left"),
    "bring": ("brought", "brought"),
    "keep": ("kept", "kept"),
    "feel": ("felt", "felt"),
    "feed": ("fed", "fed"),
    "wind": ("wound", "wound"),
    "unwind": ("unwound", "unwound"),
    "dig": ("dug", "dug"),
    "string": ("strung", "strung"),
    "cast": ("cast", "cast"),
    "seen": None,  # participle listed directly
}

NOUNS = """
person woman man child kid boy girl lady gentleman adult baby toddler couple
people group crowd family friend neighbor worker chef cook baker artist
crafter instructor teacher student helper assistant customer host guest
hand finger thumb palm wrist arm elbow shoulder hair head face eye nose
mouth lip ear neck chest waist leg knee foot body lap
image video frame picture photo photograph scene view background foreground
screen display monitor
table counter countertop desk shelf cabinet cupboard drawer rack stand
kitchen room bathroom bedroom garage workshop studio garden yard floor wall
ceiling window door doorway hallway corner surface area spot
spoon teaspoon tablespoon fork knife blade spatula whisk ladle tong tongs
skewer chopstick peeler grater zester masher opener corkscrew
bowl cup mug glass plate dish saucer platter tray pot pan skillet wok
saucepan stockpot kettle teapot pitcher jug jar bottle can tin lid cap
container box carton bag pouch sack basket bucket bin
board cutter scissors shears clipper razor saw drill hammer screwdriver
wrench pliers tool toolbox ruler tape measure level clamp vise file chisel
sandpaper brush roller pen pencil marker crayon chalk eraser sharpener
glue paste adhesive stapler staple clip pin needle thread yarn wool string
rope cord wire ribbon lace fabric cloth textile felt canvas leather paper
cardboard sheet page card sticker stamp envelope notebook book magazine
craft project artwork drawing painting sketch design pattern template
stencil model sculpture decoration ornament bead button sequin glitter
foil wrapper wrap
food meal dish snack breakfast lunch dinner supper dessert ingredient
mixture batter dough paste sauce dressing marinade seasoning spice herb
salt pepper sugar flour starch yeast baking powder soda butter margarine
oil vinegar water milk cream cheese yogurt egg yolk white bread toast bun
roll bagel croissant pastry pie tart cake cupcake muffin cookie biscuit
brownie pancake waffle crepe donut chocolate candy caramel honey syrup jam
jelly rice pasta noodle spaghetti macaroni grain oat wheat corn bean lentil
pea nut almond walnut peanut cashew seed meat beef pork ham bacon sausage
chicken turkey duck fish salmon tuna shrimp crab lobster
vegetable onion garlic tomato potato carrot pepper cucumber lettuce spinach
kale cabbage broccoli cauliflower celery mushroom zucchini squash pumpkin
eggplant radish beet turnip leek scallion shallot ginger avocado
fruit apple banana orange lemon lime grape berry strawberry blueberry
raspberry cherry peach pear plum mango pineapple melon watermelon kiwi fig
date raisin coconut
liquid beverage drink juice smoothie shake soda cola tea coffee espresso
latte wine beer cocktail broth stock soup stew chili salad sandwich burger
pizza taco burrito wrap sushi portion piece slice chunk cube strip segment
wedge half quarter bit scrap crumb drop dollop pinch dash handful spoonful
cupful batch layer stack pile heap mound row line circle ring
machine appliance mixer blender processor oven stove burner cooktop
microwave toaster fridge refrigerator freezer dishwasher grill griddle
steamer cooker timer scale thermometer gauge clock
towel napkin tissue sponge rag mitt glove apron uniform shirt blouse
sweater jumper jacket coat vest dress skirt pant jean short sock shoe boot
slipper hat cap scarf belt necklace bracelet earring watch ring
chair stool bench sofa couch cushion pillow blanket sheet mattress bed
lamp lightbulb candle flashlight mirror frame clockwork vase plant flower
pot soil leaf stem branch stick log wood lumber plank panel tile brick
stone rock pebble sand gravel cement concrete plaster paint varnish stain
wax polish cleaner detergent soap shampoo lotion
car truck van bicycle bike wheel tire engine motor pedal handlebar seat
dog cat bird horse cow pig sheep goat rabbit hamster fish tank aquarium
object item thing part component element detail section side edge border
corner center top bottom front back surface interior exterior end tip
handle knob grip base stand leg foot arm support bracket hook hanger nail
screw bolt nut washer hinge latch lock key chain link
""".split()

NOUN_IRREGULAR_PLURALS = {
    "person": "people",
    "woman": "women",
    "man": "men",
    "child": "children",
    "foot": "feet",
    "knife": "knives",
    "leaf": "leaves",
    "shelf": "shelves",
    "half": "halves",
    "dish": "dishes",
    "fish": "fish",
    "sheep": "sheep",
}

PROPER = """
youtube velcro teflon tupperware pyrex styrofoam sharpie crockpot instapot
""".split()

VOWELS = "aeiou"


def s_form(base: str) -> str:
    if base.endswith(("s", "x", "z", "ch", "sh", "o")):
        return base + "es"
    if base.endswith("y") and len(base) > 1 and base[-2] not in VOWELS:
        return base[:-1] + "ies"
    return base + "s"


def ing_form(base: str) -> str:
    if base in DOUBLED:
        return base + base[-1] + "ing"
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and not base.endswith("ee"):
        return base[:-1] + "ing"
    return base + "ing"


def ed_form(base: str) -> str:
    if base in DOUBLED:
        return base + base[-1] + "ed"
    if base.endswith("e"):
        return base + "d"
    if base.endswith("y") and len(base) > 1 and base[-2] not in VOWELS:
        return base[:-1] + "ied"
    return base + "ed"


def plural(noun: str) -> str:
    if noun in NOUN_IRREGULAR_PLURALS:
        return NOUN_IRREGULAR_PLURALS[noun]
    return s_form(noun)


def main() -> None:
    entries: dict[str, str] = {}

    def put(word: str, pos: str) -> None:
        word = word.strip().lower()
        if word and word not in entries:
            entries[word] = pos

    for word in DETERMINERS:
        put(word, "DET")
    for word in ADPOSITIONS:
        put(word, "ADP")
    for word in AUXILIARIES:
        put(word, "AUX")
    for word in PRONOUNS:
        put(word, "PRON")
    for word in OTHER_WORDS:
        put(word, "OTHER")
    # Nouns take priority over verb readings for base-form collisions
    # ("spoon", "brush", "water"): caption prose overwhelmingly uses those as
    # objects, while the verb reading keeps its -ing/-ed/-s forms below.
    for noun in NOUNS:
        put(noun, "NOUN")
        put(plural(noun), "NOUN")
    for base in VERBS:
        if IRREGULAR.get(base, ()) is None:
            put(base, "VERB")
            continue
        put(base, "VERB")
        put(s_form(base), "VERB")
        put(ing_form(base), "VERB")
        if base in IRREGULAR:
            past, participle = IRREGULAR[base]
            put(past, "VERB")
            put(participle, "VERB")
        else:
            put(ed_form(base), "VERB")
    for word in ADJECTIVES:
        put(word, "ADJ")
    for word in PROPER:
        put(word, "PROPN")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8") as fh:
        for word in sorted(entries):
            fh.write(f"{word}\t{entries[word]}\n")
    print(f"wrote {len(entries)} entries to {OUT}")


if __name__ == "__main__":
    main()
