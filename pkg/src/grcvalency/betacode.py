"""Beta Code to polytonic Greek transcoding for treebank lemmas and forms.

Covers the conventions used in analytical-layer treebank files: lowercase
letters, '*'-marked capitals (diacritics may precede the base letter),
breathings, the three accents, iota subscript, diaeresis, and the elision
apostrophe.  Anything outside that alphabet raises, so garbage never
turns into a silently corrupted lemma key.
"""

import unicodedata

_LOWER = {
    "a": "α",  # alpha
    "b": "β",  # beta
    "g": "γ",  # gamma
    "d": "δ",  # delta
    "e": "ε",  # epsilon
    "v": "ϝ",  # digamma
    "z": "ζ",  # zeta
    "h": "η",  # eta
    "q": "θ",  # theta
    "i": "ι",  # iota
    "k": "κ",  # kappa
    "l": "λ",  # lambda
    "m": "μ",  # mu
    "n": "ν",  # nu
    "c": "ξ",  # xi
    "o": "ο",  # omicron
    "p": "π",  # pi
    "r": "ρ",  # rho
    "s": "σ",  # sigma (finalized later)
    "t": "τ",  # tau
    "u": "υ",  # upsilon
    "f": "φ",  # phi
    "x": "χ",  # chi
    "y": "ψ",  # psi
    "w": "ω",  # omega
}

_UPPER = {beta: greek.upper() for beta, greek in _LOWER.items()}
_UPPER["v"] = "Ϝ"  # capital digamma has no casing pair via str.upper

_MARKS = {
    ")": "̓",   # smooth breathing
    "(": "̔",   # rough breathing
    "/": "́",   # acute
    "\\": "̀",  # grave
    "=": "͂",   # circumflex
    "+": "̈",   # diaeresis
    "|": "ͅ",   # iota subscript
}

# Canonical in-cluster order (breathing, diaeresis, accent, subscript); NFC
# alone cannot reorder marks of equal combining class, so Beta Code cluster
# order must not leak into the output.
_MARK_RANK = {
    "̓": 0,
    "̔": 0,
    "̈": 1,
    "́": 2,
    "̀": 2,
    "͂": 2,
    "ͅ": 3,
}

#: Elision mark rendered as the typographic apostrophe.
APOSTROPHE = "’"

_MEDIAL_SIGMA = "σ"
_FINAL_SIGMA = "ς"

_LETTER = "letter"
_SEPARATOR = "sep"


class BetaCodeError(ValueError):
    """A character that is not part of the documented Beta Code alphabet."""

    def __init__(self, message, char, offset):
        super().__init__(f"{message}: {char!r} at offset {offset}")
        self.char = char
        self.offset = offset


def beta_to_unicode(beta: str) -> str:
    """Transcode a Beta Code string to NFC-normalized polytonic Greek.

    Word-final sigma becomes final sigma; sigma before the elision
    apostrophe stays medial (the elided vowel follows underlyingly).
    Diacritic order within a cluster does not affect the output.
    """
    clusters = []  # (_LETTER, base, [marks]) or (_SEPARATOR, text, None)
    capitalize = False
    cap_offset = 0
    held_marks = []

    for offset, char in enumerate(beta):
        if char == "*":
            capitalize = True
            cap_offset = offset
            held_marks = []
            continue
        if char in _MARKS:
            mark = _MARKS[char]
            if capitalize:
                held_marks.append(mark)
            elif clusters and clusters[-1][0] == _LETTER:
                clusters[-1][2].append(mark)
            else:
                raise BetaCodeError("diacritic with no letter to attach to", char, offset)
            continue
        if char in _LOWER:
            base = _UPPER[char] if capitalize else _LOWER[char]
            clusters.append((_LETTER, base, list(held_marks)))
            capitalize = False
            held_marks = []
            continue
        if capitalize:
            raise BetaCodeError("capital marker not followed by a letter", "*", cap_offset)
        if char == "'":
            clusters.append((_SEPARATOR, APOSTROPHE, None))
            continue
        if char == " ":
            clusters.append((_SEPARATOR, " ", None))
            continue
        raise BetaCodeError("character outside the Beta Code alphabet", char, offset)

    if capitalize:
        raise BetaCodeError("capital marker not followed by a letter", "*", cap_offset)

    out = []
    for index, (kind, text, marks) in enumerate(clusters):
        if kind == _SEPARATOR:
            out.append(text)
            continue
        base = text
        if base == _MEDIAL_SIGMA:
            following = clusters[index + 1] if index + 1 < len(clusters) else None
            word_ends = following is None or (
                following[0] == _SEPARATOR and following[1] != APOSTROPHE
            )
            if word_ends:
                base = _FINAL_SIGMA
        out.append(base)
        out.extend(sorted(marks, key=_MARK_RANK.__getitem__))
    return unicodedata.normalize("NFC", "".join(out))
