import string

import numpy as np
import pytest

from airwrite.errors import InvalidText, UnknownLabel
from airwrite.segmentation import red_mask
from airwrite.synth import BACKGROUND, SynthParams, letter_path, render_sequence


class TestLetterPath:
    def test_i_is_a_vertical_line(self):
        path = letter_path("I")
        assert len(path.waypoints) == 2
        assert path.waypoints[0].x == path.waypoints[1].x

    def test_w_is_five_point_zigzag(self):
        path = letter_path("W")
        assert len(path.waypoints) == 5
        vs = [p.y for p in path.waypoints]
        assert vs[0] < vs[1] and vs[1] > vs[2] and vs[2] < vs[3] and vs[3] > vs[4]

    def test_q_is_closed_loop_plus_tail(self):
        path = letter_path("Q")
        pts = [(p.x, p.y) for p in path.waypoints]
        assert pts[0] == pts[2] == pts[-1]  # tail out-and-back, loop closes
        assert pts[1] == (1, 1)  # tail reaches the lower-right corner

    def test_all_letters_defined_single_stroke(self):
        for c in string.ascii_uppercase:
            path = letter_path(c)
            assert len(path.waypoints) >= 2
            assert all(0 <= p.x <= 1 and 0 <= p.y <= 1 for p in path.waypoints)

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            letter_path("a")
        with pytest.raises(UnknownLabel):
            letter_path("?")


class TestRenderSequence:
    def test_single_letter_frame_count(self):
        params = SynthParams()
        frames = render_sequence("I", params)
        assert len(frames) == params.points_per_stroke + params.dwell_pad

    def test_word_with_space_frame_count(self):
        params = SynthParams()
        frames = render_sequence("A B", params)
        per_letter = params.points_per_stroke + params.dwell_pad
        assert len(frames) == 2 * per_letter + params.absence_pad

    def test_same_seed_byte_identical(self):
        a = render_sequence("HI", SynthParams(jitter_sigma=1.5, seed=7))
        b = render_sequence("HI", SynthParams(jitter_sigma=1.5, seed=7))
        assert len(a) == len(b)
        for fa, fb in zip(a, b):
            assert np.array_equal(fa.pixels, fb.pixels)

    def test_different_seeds_differ_under_jitter(self):
        a = render_sequence("I", SynthParams(jitter_sigma=2.0, seed=0))
        b = render_sequence("I", SynthParams(jitter_sigma=2.0, seed=1))
        assert any(not np.array_equal(fa.pixels, fb.pixels) for fa, fb in zip(a, b))

    def test_invalid_text(self):
        with pytest.raises(InvalidText):
            render_sequence("")
        with pytest.raises(InvalidText):
            render_sequence("hi")
        with pytest.raises(InvalidText):
            render_sequence("A1")

    def test_space_frames_have_no_red(self):
        params = SynthParams()
        frames = render_sequence("I I", params)
        start = params.points_per_stroke + params.dwell_pad
        for f in frames[start : start + params.absence_pad]:
            assert red_mask(f).count() == 0

    def test_stroke_frames_carry_the_dot(self):
        frames = render_sequence("O")
        for f in frames:
            assert red_mask(f).count() > 0

    def test_dwell_frames_repeat_last_position(self):
        params = SynthParams()
        frames = render_sequence("L", params)
        last = frames[params.points_per_stroke - 1]
        for f in frames[params.points_per_stroke :]:
            assert np.array_equal(f.pixels, last.pixels)

    def test_vertical_stroke_is_mirrored_left_right(self):
        # letter L: starts at the glyph's left edge; the camera view
        # mirrors it to the right half of the frame
        params = SynthParams()
        frames = render_sequence("I", params)
        mask = red_mask(frames[0])
        ys, xs = np.nonzero(mask.pixels)
        assert xs.mean() == pytest.approx(params.frame_size[0] / 2, abs=2)
        lframes = render_sequence("L", params)
        first_mask = red_mask(lframes[0])
        xs = np.nonzero(first_mask.pixels)[1]
        assert xs.mean() > params.frame_size[0] / 2  # left-edge start appears right of center

    def test_params_validation(self):
        with pytest.raises(ValueError):
            SynthParams(jitter_sigma=-1)
        with pytest.raises(ValueError):
            SynthParams(dot_radius=200)
        with pytest.raises(ValueError):
            SynthParams(points_per_stroke=1)

    def test_background_is_not_red(self):
        assert BACKGROUND[0] < 150
