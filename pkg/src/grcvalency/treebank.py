"""Analytical-layer treebank XML parsing, lemma normalization, validation.

Parsing is total over a file: a word missing a required attribute (or
carrying an undecodable postag or lemma) is skipped and reported, never
repaired.  Sentences that fail validation are likewise excluded from
extraction by the caller; the lexicon must mirror the annotation verbatim.
"""

import re
import unicodedata
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .betacode import BetaCodeError, beta_to_unicode
from .postag import PosTag, PostagError, decode_postag

_REQUIRED_ATTRIBUTES = ("id", "form", "lemma", "postag", "head", "relation")

_TRAILING_DIGITS = re.compile(r"\d+$")
_ASCII_LETTERS = re.compile(r"[A-Za-z*]")


class TreebankParseError(ValueError):
    """Malformed XML; carries the approximate byte offset of the fault."""

    def __init__(self, message, byte_offset):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


@dataclass
class WordNode:
    token_id: int
    form: str
    raw_lemma: str
    lemma: str
    postag: PosTag
    head_id: int
    relation: str


@dataclass
class SentenceTree:
    sentence_id: int
    subdoc: str
    author: str
    title: str
    nodes: list[WordNode]
    children_index: dict[int, list[int]] = field(init=False, repr=False)
    _by_id: dict[int, WordNode] = field(init=False, repr=False)
    _position: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.children_index = {}
        self._by_id = {}
        self._position = {}
        for position, node in enumerate(self.nodes):
            self._by_id.setdefault(node.token_id, node)
            self._position.setdefault(node.token_id, position)
            self.children_index.setdefault(node.head_id, []).append(node.token_id)

    def node(self, token_id: int) -> WordNode:
        return self._by_id[token_id]

    def children(self, token_id: int) -> list[int]:
        """Child token ids in surface order."""
        return self.children_index.get(token_id, [])

    def position(self, token_id: int) -> int:
        return self._position[token_id]


@dataclass
class WordIssue:
    """One skipped word: where it was and why."""

    sentence_id: int | None
    word_index: int
    message: str


@dataclass
class ValidationReport:
    sentence_id: int
    duplicate_ids: list[int]
    dangling_heads: list[tuple[int, int]]  # (token_id, missing head_id)
    cycle_token_ids: list[int]

    @property
    def ok(self) -> bool:
        return not (self.duplicate_ids or self.dangling_heads or self.cycle_token_ids)

    def messages(self) -> list[str]:
        out = [f"duplicate token_id {t}" for t in self.duplicate_ids]
        out += [f"dangling head {h} (from token {t})" for t, h in self.dangling_heads]
        out += [f"token {t} lies on a head cycle" for t in self.cycle_token_ids]
        return out


def normalize_lemma(raw: str) -> str:
    """Strip sense-numbering digits; transcode ASCII-Greek to Unicode; NFC."""
    stripped = _TRAILING_DIGITS.sub("", raw)
    if _ASCII_LETTERS.search(stripped):
        return beta_to_unicode(stripped)
    return unicodedata.normalize("NFC", stripped)


def _byte_offset(data: bytes, line: int, column: int) -> int:
    lines = data.split(b"\n")
    return sum(len(l) + 1 for l in lines[: line - 1]) + column


def _document_meta(root, fallback_meta):
    fallback_author, fallback_title = fallback_meta or ("", "")
    author = root.get("author") or (root.findtext("author") or "").strip()
    title = root.get("title") or (root.findtext("title") or "").strip()
    return author or fallback_author, title or fallback_title


def parse_treebank_file(
    data: bytes,
    fallback_meta: tuple[str, str] | None = None,
) -> tuple[list[SentenceTree], list[WordIssue]]:
    """Parse one analytical-layer XML file.

    Returns the sentence trees in document order plus the per-word issues
    for skipped words.  Unknown attributes (``cid`` and friends) are
    ignored.  Structural validation is deferred to
    :func:`validate_sentence`.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        raise TreebankParseError(f"malformed XML: {exc.msg}", _byte_offset(data, line, column))

    author, title = _document_meta(root, fallback_meta)
    trees = []
    issues = []
    for sentence in root.iter("sentence"):
        raw_id = sentence.get("id")
        try:
            sentence_id = int(raw_id)
        except (TypeError, ValueError):
            issues.append(WordIssue(None, 0, f"sentence with unusable id {raw_id!r} skipped"))
            continue
        subdoc = sentence.get("subdoc", "")
        nodes = []
        for word_index, word in enumerate(sentence.iter("word"), start=1):
            try:
                nodes.append(_parse_word(word))
            except (BetaCodeError, PostagError, ValueError) as exc:
                issues.append(WordIssue(sentence_id, word_index, str(exc)))
        trees.append(SentenceTree(sentence_id, subdoc, author, title, nodes))
    return trees, issues


def _parse_word(word) -> WordNode:
    values = {}
    for name in _REQUIRED_ATTRIBUTES:
        attr = word.get(name)
        if attr is None:
            raise ValueError(f"missing attribute {name!r}")
        values[name] = attr
    token_id = int(values["id"])
    head_id = int(values["head"])
    if token_id <= 0:
        raise ValueError(f"token id must be positive, got {token_id}")
    if head_id < 0:
        raise ValueError(f"head must be non-negative, got {head_id}")
    return WordNode(
        token_id=token_id,
        form=values["form"],
        raw_lemma=values["lemma"],
        lemma=normalize_lemma(values["lemma"]),
        postag=decode_postag(values["postag"]),
        head_id=head_id,
        relation=values["relation"],
    )


def validate_sentence(tree: SentenceTree) -> ValidationReport:
    """Check token-id uniqueness, head resolution, and acyclicity."""
    seen = set()
    duplicates = set()
    for node in tree.nodes:
        if node.token_id in seen:
            duplicates.add(node.token_id)
        seen.add(node.token_id)

    dangling = sorted(
        {
            (node.token_id, node.head_id)
            for node in tree.nodes
            if node.head_id != 0 and node.head_id not in seen
        }
    )

    # Walk head chains; dangling heads terminate a chain, repeats mean a cycle.
    state = {}  # token_id -> "active" | "done" | "cyclic"
    cyclic = set()
    for node in tree.nodes:
        chain = []
        current = node.token_id
        while True:
            if current == 0 or current not in tree._by_id or state.get(current) in ("done", "cyclic"):
                break
            if current in chain:
                loop = chain[chain.index(current):]
                cyclic.update(loop)
                for t in loop:
                    state[t] = "cyclic"
                break
            chain.append(current)
            current = tree._by_id[current].head_id
        for t in chain:
            state.setdefault(t, "done")

    return ValidationReport(
        sentence_id=tree.sentence_id,
        duplicate_ids=sorted(duplicates),
        dangling_heads=dangling,
        cycle_token_ids=sorted(cyclic),
    )


def load_manifest(source) -> dict[str, tuple[str, str]]:
    """Read a sidecar metadata manifest: ``filename<TAB>author<TAB>title``."""
    text = Path(source).read_text(encoding="utf-8")
    mapping = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"manifest line {lineno}: expected 3 tab-separated fields")
        filename, author, title = parts
        mapping[filename] = (author.strip(), title.strip())
    return mapping
