"""Valency frame extraction from validated sentence trees.

A predicate's arguments are its SBJ/OBJ/PNOM/OCOMP dependents, reached
either directly or through chains of preposition (AuxP), conjunction
(AuxC), coordination (COORD) and apposition (APOS) nodes.  Every verb
token with at least one argument yields one lexicon entry; nothing is
ever reconstructed for unexpressed arguments.
"""

from dataclasses import dataclass, replace

from .postag import UNSPECIFIED
from .treebank import SentenceTree, WordNode

ARGUMENT_RELATIONS = frozenset({"SBJ", "OBJ", "PNOM", "OCOMP"})
BRIDGE_RELATIONS = frozenset({"AUXP", "AUXC", "COORD", "APOS"})

PREPOSITION = "preposition"
CONJUNCTION = "conjunction"


@dataclass(frozen=True)
class Mediator:
    kind: str  # PREPOSITION or CONJUNCTION
    lemma: str


@dataclass(frozen=True)
class ArgumentSlot:
    base_relation: str
    coord_suffix: bool
    apos_suffix: bool
    mediator: Mediator | None
    realization: str
    filler_lemma: str
    filler_token_id: int
    surface_position: int

    @property
    def label(self) -> str:
        """Relation label with canonical suffixes, e.g. ``OBJ_CO``."""
        label = self.base_relation
        if self.coord_suffix:
            label += "_CO"
        if self.apos_suffix:
            label += "_AP"
        return label


@dataclass(frozen=True)
class Frame:
    """Voice plus argument slots, held in canonical order."""

    voice: str
    slots: tuple[ArgumentSlot, ...]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("a frame needs at least one argument slot")
        ordered = tuple(
            sorted(self.slots, key=lambda slot: (slot.label, slot.surface_position))
        )
        object.__setattr__(self, "slots", ordered)

    def render(self) -> tuple[str, str]:
        """The canonical frame and frame_fillers strings."""
        elements = []
        filler_elements = []
        for slot in self.slots:
            prefix = f"({slot.mediator.lemma})" if slot.mediator else ""
            element = f"{prefix}{slot.label}[{slot.realization}]"
            elements.append(element)
            filler_elements.append(element + "{" + slot.filler_lemma + "}")
        return (
            self.voice + "_" + ",".join(elements),
            self.voice + "_" + ",".join(filler_elements),
        )


@dataclass(frozen=True)
class LexiconEntry:
    author: str
    title: str
    subdoc: str
    verb: str
    voice: str
    sentence_id: int
    root_id: int
    frame: str
    frame_fillers: str


def split_relation(relation: str) -> tuple[str, bool, bool]:
    """Split a relation label into (base, coord, apos), case-insensitively."""
    parts = relation.upper().split("_")
    suffixes = parts[1:]
    return parts[0], "CO" in suffixes, "AP" in suffixes


def identify_predicates(tree: SentenceTree, include_participles: bool = True) -> list[WordNode]:
    """Verbal tokens of the sentence, regardless of their own relation label."""
    predicates = []
    for node in tree.nodes:
        if not node.postag.is_verbal:
            continue
        if not include_participles and node.postag.is_participle:
            continue
        predicates.append(node)
    return predicates


def realize_slot(node: WordNode, slot: ArgumentSlot) -> ArgumentSlot:
    """Fill in how the argument is realized and by which lemma.

    Case wins when the postag carries one (so declined participles count
    as their case); caseless verb forms realize as their mood; anything
    left is the documented "adverb" fallback.
    """
    postag = node.postag
    if postag.has_case:
        realization = postag.case
    elif postag.pos == "participle":
        realization = postag.mood if postag.mood != UNSPECIFIED else "participle"
    elif postag.pos == "verb" and postag.mood != UNSPECIFIED:
        realization = postag.mood
    else:
        realization = "adverb"
    return replace(slot, realization=realization, filler_lemma=node.lemma)


def collect_arguments(tree: SentenceTree, verb: WordNode) -> list[ArgumentSlot]:
    """Argument slots of one verb token, in surface order of discovery."""
    slots = []
    stack = [
        (token_id, None, False, False)
        for token_id in reversed(tree.children(verb.token_id))
    ]
    visited = {verb.token_id}
    while stack:
        token_id, mediator, coord, apos = stack.pop()
        if token_id in visited:
            continue
        visited.add(token_id)
        node = tree.node(token_id)
        base, has_co, has_ap = split_relation(node.relation)
        coord = coord or has_co
        apos = apos or has_ap
        if base in ARGUMENT_RELATIONS:
            skeleton = ArgumentSlot(
                base_relation=base,
                coord_suffix=coord,
                apos_suffix=apos,
                mediator=mediator,
                realization="",
                filler_lemma="",
                filler_token_id=node.token_id,
                surface_position=tree.position(node.token_id),
            )
            slots.append(realize_slot(node, skeleton))
            continue
        if base in BRIDGE_RELATIONS:
            if mediator is None:
                if base == "AUXP":
                    mediator = Mediator(PREPOSITION, node.lemma)
                elif base == "AUXC":
                    mediator = Mediator(CONJUNCTION, node.lemma)
            if base == "COORD":
                coord = True
            elif base == "APOS":
                apos = True
            for child_id in reversed(tree.children(node.token_id)):
                stack.append((child_id, mediator, coord, apos))
        # all other relations (ATR, ADV, AuxY, ...) are neither arguments
        # nor bridges and end the search on their branch
    return slots


def compose_frame(voice: str, slots) -> tuple[str, str]:
    """Render the canonical frame and frame_fillers strings.

    Slots are ordered by full relation label, then by surface position;
    that reproduces both the label-major published layout and the
    distinct orderings of repeated labels.
    """
    return Frame(voice, tuple(slots)).render()


def extract_entries(
    corpus: list[SentenceTree],
    include_participles: bool = True,
) -> list[LexiconEntry]:
    """One entry per verb token with at least one argument, sorted
    deterministically by (author, title, verb, sentence_id, root_id)."""
    entries = []
    for tree in corpus:
        for verb in identify_predicates(tree, include_participles):
            slots = collect_arguments(tree, verb)
            if not slots:
                continue
            frame, frame_fillers = compose_frame(verb.postag.voice, slots)
            entries.append(
                LexiconEntry(
                    author=tree.author,
                    title=tree.title,
                    subdoc=tree.subdoc,
                    verb=verb.lemma,
                    voice=verb.postag.voice,
                    sentence_id=tree.sentence_id,
                    root_id=verb.token_id,
                    frame=frame,
                    frame_fillers=frame_fillers,
                )
            )
    entries.sort(key=lambda e: (e.author, e.title, e.verb, e.sentence_id, e.root_id))
    return entries
