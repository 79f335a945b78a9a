"""Classify which fingers are extended from a single frame.

Non-thumb fingers use the tip-above-PIP test (image y grows downward, so an
extended finger has tip.y strictly below the PIP joint's y value). The thumb
compares x-distances from the pinky MCP: an extended thumb has its tip
farther from the palm's pinky side than its IP joint. Distances make the
rule handedness-neutral and mirror-safe. Ties classify as not extended.
"""

from dataclasses import dataclass

from .landmarks import (
    HandFrame,
    INDEX_PIP,
    INDEX_TIP,
    MIDDLE_PIP,
    MIDDLE_TIP,
    PINKY_MCP,
    PINKY_PIP,
    PINKY_TIP,
    RING_PIP,
    RING_TIP,
    THUMB_IP,
    THUMB_TIP,
)


@dataclass(frozen=True)
class FingerState:
    thumb: bool
    index: bool
    middle: bool
    ring: bool
    pinky: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool, bool]:
        return (self.thumb, self.index, self.middle, self.ring, self.pinky)


def fingers_up(frame: HandFrame) -> FingerState:
    """Return the extended/folded state of all five fingers.

    Pure and total on valid frames; identical frames always produce the
    identical FingerState.
    """
    lm = frame.lm
    palm_x = lm[PINKY_MCP].x
    thumb = abs(lm[THUMB_TIP].x - palm_x) > abs(lm[THUMB_IP].x - palm_x)
    return FingerState(
        thumb=thumb,
        index=lm[INDEX_TIP].y < lm[INDEX_PIP].y,
        middle=lm[MIDDLE_TIP].y < lm[MIDDLE_PIP].y,
        ring=lm[RING_TIP].y < lm[RING_PIP].y,
        pinky=lm[PINKY_TIP].y < lm[PINKY_PIP].y,
    )
