"""Pattern DSL tests: both grammars, expansion, round-trips, and fuzzing."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langarm.patterns import (
    Concat,
    DigitRun,
    DuplicateAxis,
    LengthMismatch,
    LexError,
    MissingAxis,
    NotRepresentable,
    PatternBlock,
    PatternValidationError,
    Repeat,
    TrigTerm,
    UnsupportedExpression,
    expand,
    expand_axis,
    lex_digit_run,
    net_displacement,
    parse_block,
    serialize,
)

CIRCLE_TEXT = (
    "X: [cos(t) for t in range(360)]\n"
    "Y: [sin(t) for t in range(360)]\n"
    "Z: [0]*360\n"
    "G: [0]*360"
)

OBSTACLE_TEXT = (
    "X: [0]*10 + [1]*50 + [0]*10 + [0]*1\n"
    "Y: [0]*71\n"
    "Z: [1]*10 + [0]*50 + [-1]*10 + [0]*1\n"
    "G: [0]*70 + [1]*1"
)


class TestDigitRunLexer:
    def test_backward_line_26_tokens(self):
        text = "-1" * 26
        assert lex_digit_run(text) == [-1] * 26

    def test_mixed_tokens_without_separators(self):
        assert lex_digit_run("1-10-1") == [1, -1, 0, -1]

    def test_whitespace_tolerated(self):
        assert lex_digit_run(" 1 0 -1") == [1, 0, -1]

    def test_lex_error_position(self):
        with pytest.raises(LexError) as e:
            lex_digit_run("00x0")
        assert e.value.position == 2

    def test_dangling_minus(self):
        with pytest.raises(LexError):
            lex_digit_run("0-")

    @given(st.lists(st.sampled_from([-1, 0, 1]), max_size=200))
    def test_lexer_inverts_concatenation(self, tokens):
        text = "".join(str(t) for t in tokens)
        assert lex_digit_run(text) == tokens


class TestParseBlock:
    def test_move_right_70(self):
        block = parse_block("X: [1]*70 \n Y: [0]*70 \n Z: [0]*70 \n G: [0]*70")
        assert block.source_grammar == "improved"
        xs = expand_axis(block.x)
        assert xs == [1.0] * 70

    def test_baseline_backward_26(self):
        text = "\n".join(
            [
                "X: " + "0" * 26,
                "Y:" + "-1" * 26,
                "Z: " + "0" * 26,
                "G: " + "1" * 25 + "0",
            ]
        )
        block = parse_block(text, mode="baseline")
        assert block.source_grammar == "baseline"
        assert expand_axis(block.y) == [-1.0] * 26

    def test_all_empty_axes(self):
        block = parse_block("X: []*0\nY: []*0\nZ: []*0\nG: []*0")
        assert len(expand(block)) == 0

    def test_labels_case_and_order_insensitive(self):
        block = parse_block("g: [0]*2\nz: [1]*2\ny: [0]*2\nx: [-1]*2")
        assert expand_axis(block.x) == [-1.0, -1.0]
        assert expand_axis(block.z) == [1.0, 1.0]

    def test_output_prefix_line(self):
        block = parse_block(
            "Output:     X: [0]*3\n Y: [1]*3\n Z: [0]*3\n G: [0]*3"
        )
        assert expand_axis(block.y) == [1.0, 1.0, 1.0]

    def test_missing_axis(self):
        with pytest.raises(MissingAxis) as e:
            parse_block("X: [1]*3\nY: [0]*3\nZ: [0]*3")
        assert e.value.label == "G"

    def test_duplicate_axis(self):
        with pytest.raises(DuplicateAxis):
            parse_block("X: [1]*1\nX: [0]*1\nY: []\nZ: []\nG: []")

    def test_unsupported_functional_term(self):
        with pytest.raises(UnsupportedExpression):
            parse_block(
                "X: [tan(t) for t in range(10)]\nY: [0]*10\nZ: [0]*10\nG: [0]*10"
            )

    def test_polynomial_rejected(self):
        with pytest.raises(UnsupportedExpression):
            parse_block("X: [t*t for t in range(5)]\nY: [0]*5\nZ: [0]*5\nG: [0]*5")

    def test_amplitude_cap_rejected(self):
        with pytest.raises(PatternValidationError):
            parse_block(
                "X: [2*cos(t) for t in range(10)]\nY: [0]*10\nZ: [0]*10\nG: [0]*10"
            )

    def test_affine_trig_accepted(self):
        block = parse_block(
            "X: [0.5*cos(2*t + 30) for t in range(90)]\nY: [0]*90\nZ: [0]*90\nG: [0]*90"
        )
        xs = expand_axis(block.x)
        assert xs[0] == pytest.approx(0.5 * math.cos(math.radians(30)))
        assert xs[10] == pytest.approx(0.5 * math.cos(math.radians(50)))

    def test_prose_around_block_ignored(self):
        text = (
            "Sure, here is the pattern:\n"
            "X: [1]*5\nY: [0]*5\nZ: [0]*5\nG: [0]*5\n"
            "Let me know if you need anything else."
        )
        block = parse_block(text)
        assert expand_axis(block.x) == [1.0] * 5


class TestExpand:
    def test_gripper_closes_on_final_step(self):
        block = parse_block(
            "X: [0]*100\nY: [1]*100\nZ: [0]*100\nG: [0]*99 + [1]*1"
        )
        traj = expand(block)
        assert len(traj) == 100
        assert all(s.g == 0 for s in traj.steps[:99])
        assert traj.steps[99].g == 1

    def test_circle_expands_to_360(self):
        traj = expand(parse_block(CIRCLE_TEXT))
        assert len(traj) == 360
        assert traj.steps[0].dx == pytest.approx(1.0)
        assert traj.steps[90].dx == pytest.approx(0.0, abs=1e-12)

    def test_zero_repeat_on_all_axes(self):
        block = PatternBlock(Repeat(0, 7), Repeat(0, 7), Repeat(0, 7), Repeat(0, 7))
        traj = expand(block)
        assert len(traj) == 7
        assert all(s.vector == (0.0, 0.0, 0.0) for s in traj.steps)

    def test_strict_mode_rejects_unequal_lengths(self):
        text = "X: [0]*50\nY: [1]*100\nZ: [0]*30\nG: [0]*99 + [1]*1"
        with pytest.raises(LengthMismatch) as e:
            expand(parse_block(text))
        assert e.value.expected == 50

    def test_lenient_mode_pads(self):
        text = "X: [0]*50\nY: [1]*100\nZ: [0]*30\nG: [1]*40"
        traj = expand(parse_block(text), lenient=True)
        assert len(traj) == 100
        assert traj.steps[60].dx == 0.0
        # G padded with its last value
        assert traj.steps[99].g == 1

    def test_lenient_empty_g_pads_open(self):
        text = "X: [1]*3\nY: [0]*3\nZ: [0]*3\nG: []*0"
        traj = expand(parse_block(text), lenient=True)
        assert [s.g for s in traj.steps] == [0, 0, 0]


class TestNetDisplacement:
    def test_obstacle_block_net(self):
        # Oracle: sum the 71 expanded steps by hand.
        traj = expand(parse_block(OBSTACLE_TEXT))
        assert len(traj) == 71
        ox = sum(s.dx for s in traj.steps)
        oy = sum(s.dy for s in traj.steps)
        oz = sum(s.dz for s in traj.steps)
        assert (ox, oy, oz) == (50.0, 0.0, 0.0)
        assert net_displacement(traj) == (50.0, 0.0, 0.0)

    def test_circle_net_below_1e9(self):
        traj = expand(parse_block(CIRCLE_TEXT))
        nx, ny, nz = net_displacement(traj)
        assert abs(nx) <= 1e-9
        assert abs(ny) <= 1e-9
        assert nz == 0.0

    def test_empty_trajectory(self):
        block = parse_block("X: []\nY: []\nZ: []\nG: []")
        assert net_displacement(expand(block)) == (0.0, 0.0, 0.0)


class TestSerialize:
    def test_repeat_canonical_form(self):
        block = PatternBlock(Repeat(1, 70), Repeat(0, 70), Repeat(0, 70), Repeat(0, 70))
        assert serialize(block, "improved").splitlines()[0] == "X: [1]*70"

    def test_baseline_digit_line(self):
        block = PatternBlock(
            DigitRun((0,) * 26),
            DigitRun((-1,) * 26),
            DigitRun((0,) * 26),
            DigitRun((1,) * 25 + (0,)),
        )
        lines = serialize(block, "baseline").splitlines()
        assert lines[1] == "Y: " + "-1" * 26

    def test_circle_comprehension_form(self):
        block = parse_block(CIRCLE_TEXT)
        text = serialize(block, "improved")
        assert "X: [cos(t) for t in range(360)]" in text
        assert "Y: [sin(t) for t in range(360)]" in text

    def test_trig_not_representable_in_baseline(self):
        block = parse_block(CIRCLE_TEXT)
        with pytest.raises(NotRepresentable):
            serialize(block, "baseline")

    def test_fractional_not_representable_in_baseline(self):
        block = PatternBlock(Repeat(0.5, 4), Repeat(0, 4), Repeat(0, 4), Repeat(0, 4))
        with pytest.raises(NotRepresentable):
            serialize(block, "baseline")

    def test_serialization_byte_stable(self):
        block = parse_block(OBSTACLE_TEXT)
        assert serialize(block) == serialize(block)


def _expansion(block):
    return [(s.dx, s.dy, s.dz, s.g) for s in expand(block).steps]


# Random AST strategies: equal-length axes so strict expansion holds.
def _movement_expr(length):
    def build(draw):
        remaining = length
        parts = []
        while remaining > 0:
            kind = draw(st.sampled_from(["repeat", "digits", "trig"]))
            n = draw(st.integers(min_value=1, max_value=remaining))
            if kind == "repeat":
                v = draw(
                    st.sampled_from([-1.0, -0.5, 0.0, 0.25, 1.0])
                )
                parts.append(Repeat(v, n))
            elif kind == "digits":
                vals = draw(
                    st.lists(
                        st.sampled_from([-1, 0, 1]), min_size=n, max_size=n
                    )
                )
                parts.append(DigitRun(tuple(vals)))
            else:
                amp = draw(st.sampled_from([1.0, 0.5, -1.0]))
                fn = draw(st.sampled_from(["sin", "cos"]))
                parts.append(TrigTerm(fn=fn, amplitude=amp, n=n))
            remaining -= n
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    return st.composite(lambda draw: build(draw))()


def _gripper_expr(length):
    def build(draw):
        remaining = length
        parts = []
        while remaining > 0:
            n = draw(st.integers(min_value=1, max_value=remaining))
            parts.append(Repeat(float(draw(st.sampled_from([0, 1]))), n))
            remaining -= n
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    return st.composite(lambda draw: build(draw))()


@st.composite
def pattern_blocks(draw, max_len=60):
    length = draw(st.integers(min_value=0, max_value=max_len))
    if length == 0:
        e = DigitRun(())
        return PatternBlock(e, e, e, e)
    return PatternBlock(
        x=draw(_movement_expr(length)),
        y=draw(_movement_expr(length)),
        z=draw(_movement_expr(length)),
        g=draw(_gripper_expr(length)),
    )


@st.composite
def integer_blocks(draw, max_len=60):
    length = draw(st.integers(min_value=0, max_value=max_len))
    axes = [
        DigitRun(
            tuple(
                draw(
                    st.lists(
                        st.sampled_from([-1, 0, 1]), min_size=length, max_size=length
                    )
                )
            )
        )
        for _ in range(3)
    ]
    g = DigitRun(
        tuple(
            draw(st.lists(st.sampled_from([0, 1]), min_size=length, max_size=length))
        )
    )
    return PatternBlock(axes[0], axes[1], axes[2], g)


class TestProperties:
    @given(pattern_blocks())
    @settings(max_examples=150, deadline=None)
    def test_improved_round_trip(self, block):
        text = serialize(block, "improved")
        again = parse_block(text, mode="improved")
        assert _expansion(again) == _expansion(block)

    @given(integer_blocks())
    @settings(max_examples=150, deadline=None)
    def test_baseline_round_trip(self, block):
        text = serialize(block, "baseline")
        again = parse_block(text, mode="baseline")
        assert _expansion(again) == _expansion(block)

    @given(pattern_blocks())
    @settings(max_examples=150, deadline=None)
    def test_gripper_domain_and_magnitude_cap(self, block):
        for s in expand(block).steps:
            assert s.g in (0, 1)
            assert abs(s.dx) <= 1.0 and abs(s.dy) <= 1.0 and abs(s.dz) <= 1.0

    @given(pattern_blocks())
    @settings(max_examples=100, deadline=None)
    def test_strict_lengths_equal(self, block):
        traj = expand(block)
        # All axes contributed one value per step by construction.
        assert len(traj) == len(expand_axis(block.x))


def test_digit_run_fuzz_10k():
    rng = random.Random(20260808)
    for _ in range(10_000):
        tokens = [rng.choice([-1, 0, 1]) for _ in range(rng.randint(0, 40))]
        text = "".join(str(t) for t in tokens)
        assert lex_digit_run(text) == tokens
