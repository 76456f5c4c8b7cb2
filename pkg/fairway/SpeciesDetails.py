#
# SpeciesDetails.py
#
# Global details about species tokens, reaction labels and the bit
# vectors used to encode states.
#

import re

SPECIES_CHARACTERS = r"A-Za-z0-9_\-*()'"
SPECIES_TOKEN_RE = re.compile("[" + SPECIES_CHARACTERS + "]+")
REACTION_ID_RE = re.compile("[" + SPECIES_CHARACTERS + ".]+")
RESERVED_NAMES = ("init", "->")


def isSpeciesToken(name):
    """
    Can this string name a species in a pathway file?
    """
    if name in RESERVED_NAMES:
        return False
    return SPECIES_TOKEN_RE.fullmatch(name) is not None


def isReactionId(label):
    """
    Can this string label a reaction in a pathway file?
    """
    if label in RESERVED_NAMES:
        return False
    return REACTION_ID_RE.fullmatch(label) is not None


def maskOf(bitPositions):
    """
    Fold bit positions into an integer bit vector.
    """
    mask = 0
    for position in bitPositions:
        mask |= 1 << position
    return mask


def bitsSet(state, width):
    """
    Positions of the set bits of state, lowest first.
    """
    return [i for i in range(width) if (state >> i) & 1]


def bitString(state, width):
    """
    Render a state as a 0/1 string, species 0 first and the most
    significant species last.
    """
    return "".join("1" if (state >> i) & 1 else "0" for i in range(width))
