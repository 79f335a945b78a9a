import math
import random

import pytest

from airctl.pointer import MapConfig, PointerState, map_to_screen, smooth

CFG = MapConfig()  # margin 0.1, 1920x1080, smooth 5, deadzone 2


def test_center_maps_to_screen_center():
    assert map_to_screen(0.5, 0.5, CFG) == (960, 540)


def test_hand_computed_example():
    # u=0, v=0.125; 0.125*1079 = 134.875 -> 135 half-up; mirrored px=1919.
    assert map_to_screen(0.1, 0.2, CFG) == (1919, 135)


def test_clamps_outside_active_region():
    px, _ = map_to_screen(0.05, 0.5, CFG)
    assert px == 1919
    px, _ = map_to_screen(1.4, 0.5, CFG)
    assert px == 0


def test_output_always_within_bounds():
    rng = random.Random(17)
    for _ in range(500):
        x, y = rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)
        px, py = map_to_screen(x, y, CFG)
        assert 0 <= px <= CFG.screen_w - 1
        assert 0 <= py <= CFG.screen_h - 1


def test_mirroring_monotonic():
    # Inside the active region, increasing x strictly decreases px.
    xs = [0.15 + 0.01 * i for i in range(70)]
    pxs = [map_to_screen(x, 0.5, CFG)[0] for x in xs]
    assert all(a > b for a, b in zip(pxs, pxs[1:]))
    ys = [0.15 + 0.01 * i for i in range(70)]
    pys = [map_to_screen(0.5, y, CFG)[1] for y in ys]
    assert all(a < b for a, b in zip(pys, pys[1:]))


def test_zero_margin():
    cfg = MapConfig(margin=0.0)
    assert map_to_screen(0.0, 0.0, cfg) == (1919, 0)
    assert map_to_screen(1.0, 1.0, cfg) == (0, 1079)


# --- smoothing ---------------------------------------------------------------


def seeded_state(x, y):
    return PointerState(sx=float(x), sy=float(y), last_emitted=(x, y))


def test_smooth_formula():
    state, out = smooth(seeded_state(100, 100), (200, 200), CFG)
    assert out == (120, 120)
    assert (state.sx, state.sy) == (120.0, 120.0)


def test_smooth_identity_when_s_is_one():
    cfg = MapConfig(smooth=1.0, deadzone_px=0.0)
    state, out = smooth(PointerState(), (777, 333), cfg)
    assert out == (777, 333)
    assert (state.sx, state.sy) == (777.0, 333.0)


def test_deadzone_suppresses_jitter():
    state, out = smooth(seeded_state(100, 100), (101, 100), CFG)
    assert out is None
    assert state.sx == pytest.approx(100.2)
    assert state.last_emitted == (100, 100)


def test_deadzone_tracks_last_emitted_so_drift_escapes():
    cfg = MapConfig(smooth=1.0, deadzone_px=2.0)
    state = seeded_state(100, 100)
    state, out = smooth(state, (101, 100), cfg)
    assert out is None
    state, out = smooth(state, (102, 100), cfg)
    assert out == (102, 100)


def test_first_output_always_emits():
    state, out = smooth(PointerState(), (3, 4), CFG)
    assert out is not None


def test_contraction_factor():
    rng = random.Random(23)
    for _ in range(100):
        cfg = MapConfig(smooth=rng.uniform(1.0, 20.0), deadzone_px=0.0)
        sx, sy = rng.uniform(0, 1919), rng.uniform(0, 1079)
        tx, ty = rng.randint(0, 1919), rng.randint(0, 1079)
        state, _ = smooth(PointerState(sx=sx, sy=sy), (tx, ty), cfg)
        factor = 1.0 - 1.0 / cfg.smooth
        assert abs((tx - state.sx) - factor * (tx - sx)) < 1e-9 * max(1.0, abs(tx - sx))
        assert abs((ty - state.sy) - factor * (ty - sy)) < 1e-9 * max(1.0, abs(ty - sy))


def test_repeated_smoothing_converges():
    state = PointerState()
    for _ in range(200):
        state, _ = smooth(state, (960, 540), CFG)
    assert math.hypot(state.sx - 960, state.sy - 540) < 1e-6


def test_config_validation():
    for bad in (dict(margin=0.5), dict(margin=-0.1), dict(screen_w=0), dict(smooth=0.5), dict(deadzone_px=-1)):
        with pytest.raises(ValueError):
            MapConfig(**bad)
