"""Shared test helpers: hand-built frames with explicit geometry.

The builders here place landmarks by hand (different numbers from the
package's own synthetic generator) so tests stay independent of it.
"""

import pytest

from airctl.landmarks import HandFrame, Landmark

# Finger columns: x of index/middle/ring/pinky chains.
COLS = {"index": 0.44, "middle": 0.50, "ring": 0.56, "pinky": 0.62}
PIP_Y = 0.5
TIP_UP_Y = 0.4    # 0.1 above the PIP, per the open-palm construction
TIP_DOWN_Y = 0.6  # 0.1 below


def make_hand(
    t_ms=100,
    thumb=False,
    index=False,
    middle=False,
    ring=False,
    pinky=False,
    pinch_dist=None,
    hand="Right",
):
    """Frame with the requested fingers extended.

    `pinch_dist` moves the index and middle tips to exactly that x-y
    distance apart (both raised), for click-pose tests.
    """
    lm = [(0.0, 0.0, 0.0)] * 21
    lm[0] = (0.5, 0.8, 0.0)
    # Thumb chain; pinky MCP sits at x=0.62. Extended tip is farther from
    # it than the IP joint (0.32 vs 0.24), folded tip nearer (0.18).
    lm[1] = (0.42, 0.70, 0.0)
    lm[2] = (0.40, 0.65, 0.0)
    lm[3] = (0.38, 0.60, 0.0)
    lm[4] = (0.30, 0.55, 0.0) if thumb else (0.44, 0.58, 0.0)
    states = {"index": index, "middle": middle, "ring": ring, "pinky": pinky}
    for i, (name, up) in enumerate(states.items()):
        x = COLS[name]
        mcp = 5 + 4 * i
        lm[mcp] = (x, 0.62, 0.0)
        lm[mcp + 1] = (x, PIP_Y, 0.0)
        lm[mcp + 2] = (x, PIP_Y - 0.05 if up else PIP_Y + 0.05, 0.0)
        lm[mcp + 3] = (x, TIP_UP_Y if up else TIP_DOWN_Y, 0.0)
    if pinch_dist is not None:
        lm[8] = (0.46, TIP_UP_Y, 0.0)
        lm[12] = (0.46 + pinch_dist, TIP_UP_Y, 0.0)
    return HandFrame(t_ms=t_ms, hand=hand, lm=tuple(Landmark(*p) for p in lm))


def move_hand(t_ms, tip_x=0.44, tip_y=0.4):
    """MOVE-pose frame with the index tip at an explicit position."""
    frame = make_hand(t_ms=t_ms, index=True)
    lm = list(frame.lm)
    lm[8] = Landmark(tip_x, tip_y, 0.0)
    return HandFrame(t_ms=t_ms, hand=frame.hand, lm=tuple(lm))


def scroll_hand(t_ms, tip_y):
    """SCROLL-pose frame translated vertically so the index tip sits at tip_y.

    The whole hand shifts (as a real scrolling hand does), which keeps the
    all-fingers-up pose intact for any tip height.
    """
    frame = make_hand(t_ms=t_ms, thumb=True, index=True, middle=True, ring=True, pinky=True)
    dy = tip_y - frame.lm[8].y
    lm = tuple(Landmark(p.x, p.y + dy, p.z) for p in frame.lm)
    return HandFrame(t_ms=t_ms, hand=frame.hand, lm=lm)


@pytest.fixture
def fist():
    return make_hand()


@pytest.fixture
def open_palm():
    return make_hand(thumb=True, index=True, middle=True, ring=True, pinky=True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for status, flag in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call":
                continue
            if "test_acceptance.py" in rep.nodeid:
                rows.append((rep.nodeid.split("::")[-1], flag))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, flag in sorted(rows):
            terminalreporter.write_line(f"{flag}  {name}")
