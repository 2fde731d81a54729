"""Tests for the parametric word algebra."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bridgecover.words import (
    AffineExp, CannotPeelError, CyclicMatch, ParamEnv, ParamWord, PeelSide,
    PowerBlock, SignLattice, Syllable, WordError, equal_up_to_cyclic,
    exponent_sums, instantiate, letters, parse_affine, parse_word, peel,
    peel_block, power_block, reduce_word, sign_power, sign_product,
    substitute, syll, word, word_sign,
)

SP = SignLattice.STRICT_POS
NN = SignLattice.NON_NEG
ZE = SignLattice.ZERO
NP = SignLattice.NON_POS
SN = SignLattice.STRICT_NEG
UK = SignLattice.UNKNOWN

ENV_KL = ParamEnv({"k": 2, "l": 1})


# ---------------------------------------------------------------------------
# Affine expressions
# ---------------------------------------------------------------------------

def test_affine_basic_arithmetic():
    k = AffineExp.param("k")
    l = AffineExp.param("l")
    e = k - 1 + l.scale(2)
    assert e.evaluate({"k": 3, "l": 5}) == 12
    assert (e - e) == 0
    assert (-e).evaluate({"k": 3, "l": 5}) == -12
    assert (k + 1) - 1 == k


def test_affine_str_and_parse():
    k = AffineExp.param("k")
    assert str(k - 1) == "k-1"
    assert str(-k) == "-k"
    assert str(AffineExp(2)) == "2"
    assert str(AffineExp(0)) == "0"
    assert str(k.scale(2) - AffineExp.param("l") + 3) == "2k-l+3"
    for text in ["k-1", "-k", "2", "0", "2k-l+3", "-2k+1", "k+l"]:
        assert str(parse_affine(text)) == text


affine_strategy = st.builds(
    AffineExp,
    st.integers(-9, 9),
    st.dictionaries(st.sampled_from(["k", "l", "q", "s"]), st.integers(-9, 9), max_size=3),
)


@given(affine_strategy)
def test_affine_parse_roundtrip(e):
    assert parse_affine(str(e)) == e


def test_affine_substitute_params():
    k = AffineExp.param("k")
    e = k.scale(3) - 2
    swapped = e.substitute_params({"k": AffineExp.param("m") + 1})
    assert swapped == AffineExp.param("m").scale(3) + 1


# ---------------------------------------------------------------------------
# Environments and signs
# ---------------------------------------------------------------------------

def test_env_sign_classification():
    env = ENV_KL  # k >= 2, l >= 1
    k, l = AffineExp.param("k"), AffineExp.param("l")
    assert env.sign_of(k - 1) is SP
    assert env.sign_of(k - 2) is NN
    assert env.sign_of(AffineExp(0)) is ZE
    assert env.sign_of(2 - k) is NP
    assert env.sign_of(-k) is SN
    assert env.sign_of(k - 3) is UK
    assert env.sign_of(l) is SP
    assert env.sign_of(k + l) is SP
    assert env.sign_of(k - l) is UK


def test_env_undeclared_parameter():
    with pytest.raises(WordError):
        ENV_KL.sign_of(AffineExp.param("zz"))


def test_sign_product_table():
    assert sign_product(SP, SP) is SP
    assert sign_product(SP, NN) is SP
    assert sign_product(NN, NN) is NN
    assert sign_product(SN, NP) is SN
    assert sign_product(NP, NP) is NP
    assert sign_product(SP, SN) is UK
    assert sign_product(ZE, SN) is SN
    assert sign_product(UK, ZE) is UK
    assert sign_product(NN, NP) is UK


def test_sign_power_table():
    assert sign_power(SP, SP) is SP
    assert sign_power(SP, NN) is NN
    assert sign_power(SP, SN) is SN
    assert sign_power(SP, ZE) is ZE
    assert sign_power(SN, NP) is NN
    assert sign_power(SN, UK) is UK
    assert sign_power(ZE, UK) is ZE


def _lattice_holds(value: Fraction, sign: SignLattice) -> bool:
    return {
        SP: value > 1, NN: value >= 1, ZE: value == 1,
        NP: value <= 1, SN: value < 1, UK: True,
    }[sign]


@given(st.lists(st.tuples(st.sampled_from([SP, NN, ZE, NP, SN]),
                          st.integers(1, 4)), max_size=6))
def test_sign_product_sound_on_rationals(factors):
    """Interpret each sign as a positive rational and check the product."""
    rng = random.Random(11)
    total_sign = ZE
    total_value = Fraction(1)
    for sign, size in factors:
        base = Fraction(rng.randint(2, 5))
        value = {
            SP: base ** size, NN: base ** (size - 1), ZE: Fraction(1),
            NP: 1 / base ** (size - 1), SN: 1 / base ** size,
        }[sign]
        assert _lattice_holds(value, sign)
        total_sign = sign_product(total_sign, sign)
        total_value *= value
    assert _lattice_holds(total_value, total_sign)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def test_parse_simple_word():
    w = parse_word("x^(-k) y^(k)")
    assert w == ParamWord([syll("x", parse_affine("-k")), syll("y", parse_affine("k"))])


def test_parse_power_block():
    w = parse_word("(x^(-k) y^(k))^(l) z^(k-1)")
    assert len(w.items) == 2
    block = w.items[0]
    assert isinstance(block, PowerBlock)
    assert block.multiplicity == AffineExp.param("l")
    assert block.body == parse_word("x^(-k) y^(k)")
    assert w.items[1] == syll("z", "k-1")


def test_parse_nested_blocks():
    w = parse_word("( (a^(q) b^(-q))^(s) c )^(t)")
    outer = w.items[0]
    assert isinstance(outer, PowerBlock)
    inner = outer.body.items[0]
    assert isinstance(inner, PowerBlock)
    assert inner.multiplicity == AffineExp.param("s")


def test_parse_bare_exponent_and_default():
    assert parse_word("x^2") == ParamWord([syll("x", 2)])
    assert parse_word("x") == ParamWord([syll("x", 1)])
    assert parse_word("1") == ParamWord.empty()


def test_parse_errors():
    for bad in ["x^", "(x y", "x)", "(x)", "x^()", "^2", "x^(k**2)"]:
        with pytest.raises(WordError):
            parse_word(bad)


def test_text_roundtrip_frozen():
    texts = [
        "x",
        "x^(-k)",
        "(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)",
        "( (a^(q) b^(-q))^(s) c )^(t) d^(2)",
        "1",
    ]
    for text in texts:
        w = parse_word(text)
        assert parse_word(w.to_text()) == w


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------

def test_reduce_merges_adjacent_syllables():
    w = parse_word("x^(k) x^(1-k) y")
    assert reduce_word(w, ENV_KL) == parse_word("x y")


def test_reduce_cancels_through_zero():
    w = parse_word("x^(k) y^(k) y^(-k) x^(-k) z")
    assert reduce_word(w, ENV_KL) == parse_word("z")


def test_reduce_drops_trivial_blocks():
    env = ParamEnv({"k": 2, "l": 0})
    w = parse_word("(x y)^(0) z")
    assert reduce_word(w, env) == parse_word("z")
    w2 = parse_word("(x^(k) x^(-k))^(l) z")
    assert reduce_word(w2, env) == parse_word("z")


def test_reduce_inlines_multiplicity_one():
    w = parse_word("(x^(-k) y)^(1) y")
    assert reduce_word(w, ENV_KL) == parse_word("x^(-k) y^(2)")


def test_reduce_normalizes_negative_multiplicity():
    w = ParamWord([PowerBlock(parse_word("x^(-k) y"), parse_affine("-l"))])
    out = reduce_word(w, ENV_KL)
    assert out == parse_word("(y^(-1) x^(k))^(l)")


def test_reduce_single_syllable_block():
    assert reduce_word(parse_word("(x^(2))^(l)"), ENV_KL) == parse_word("x^(2l)")
    assert reduce_word(parse_word("(x^(k))^(3)"), ENV_KL) == parse_word("x^(3k)")


def test_reduce_unknown_multiplicity_sign_raises():
    env = ParamEnv({"k": 2, "m": -5})
    w = parse_word("(x y)^(m)")
    with pytest.raises(WordError):
        reduce_word(w, env)


def random_param_word(rng, depth=2):
    items = []
    for _ in range(rng.randint(1, 4)):
        if depth > 0 and rng.random() < 0.35:
            body = random_param_word(rng, depth - 1)
            mult = AffineExp(rng.randint(0, 2), {"l": rng.choice([0, 1])})
            items.append(PowerBlock(body, mult))
        else:
            gen = rng.choice(["x", "y", "z"])
            exp = AffineExp(rng.randint(-2, 2), {"k": rng.choice([-1, 0, 1])})
            items.append(Syllable(gen, exp))
    return ParamWord(items)


def test_reduce_preserves_instantiation_and_is_idempotent():
    rng = random.Random(20240817)
    for _ in range(200):
        w = random_param_word(rng)
        red = reduce_word(w, ENV_KL)
        assert reduce_word(red, ENV_KL) == red
        for k in (2, 3, 5):
            for l in (1, 2, 4):
                values = {"k": k, "l": l}
                assert instantiate(w, values) == instantiate(red, values)


# ---------------------------------------------------------------------------
# Peeling
# ---------------------------------------------------------------------------

def test_peel_left_frozen():
    w = parse_word("(x^(-k) y^(k))^(l)")
    out = peel(w, 0, PeelSide.LEFT, ENV_KL)
    assert out == parse_word("x^(-k) y^(k) (x^(-k) y^(k))^(l-1)")


def test_peel_right_frozen():
    w = parse_word("(x^(-k) y^(k))^(l)")
    out = peel(w, 0, PeelSide.RIGHT, ENV_KL)
    assert out == parse_word("(x^(-k) y^(k))^(l-1) x^(-k) y^(k)")


def test_peel_exhausts_to_inline():
    w = parse_word("(x y)^(1)")
    # multiplicity 1 is inlined by reduce, so peel on the reduced form fails
    assert reduce_word(w, ENV_KL) == parse_word("x y")
    out = peel(w, 0, PeelSide.LEFT, ENV_KL)
    assert out == parse_word("x y")


def test_peel_requires_provable_multiplicity():
    env = ParamEnv({"k": 2, "l": 0})
    w = parse_word("(x^(-k) y^(k))^(l)")
    with pytest.raises(CannotPeelError):
        peel(w, 0, PeelSide.LEFT, env)
    with pytest.raises(WordError):
        peel(parse_word("x y"), 0, PeelSide.LEFT, ENV_KL)


def test_peel_preserves_instantiation():
    rng = random.Random(7)
    w = parse_word("y (x^(-k) y^(k))^(l) z^(2)")
    for side in (PeelSide.LEFT, PeelSide.RIGHT):
        out = peel(w, 1, side, ENV_KL)
        for _ in range(20):
            values = {"k": rng.randint(2, 5), "l": rng.randint(1, 5)}
            assert instantiate(out, values) == instantiate(w, values)


# ---------------------------------------------------------------------------
# Substitution and instantiation
# ---------------------------------------------------------------------------

def test_substitute_identity_is_reduce():
    w = parse_word("x^(k) x^(-1) (y z)^(l)")
    sub = {g: parse_word(g) for g in ("x", "y", "z")}
    assert substitute(w, sub, ENV_KL) == reduce_word(w, ENV_KL)


def test_substitute_expands_exponents_to_blocks():
    w = parse_word("x^(l) y^(-2)")
    sub = {"x": parse_word("a b"), "y": parse_word("c")}
    out = substitute(w, sub, ENV_KL)
    assert out == parse_word("(a b)^(l) c^(-2)")


def test_substitute_missing_generator():
    with pytest.raises(WordError):
        substitute(parse_word("x y"), {"x": parse_word("a")}, ENV_KL)


def test_substitute_inverts_negative_exponents():
    w = parse_word("x^(-l)")
    out = substitute(w, {"x": parse_word("a b")}, ENV_KL)
    assert out == parse_word("(b^(-1) a^(-1))^(l)")


def test_substitute_then_instantiate_commutes():
    rng = random.Random(99)
    w = parse_word("(x^(-k) y^(k))^(l) z^(k-1)")
    sub = {
        "x": parse_word("a^(k) b^(-1)"),
        "y": parse_word("b a"),
        "z": parse_word("a^(-1)"),
    }
    out = substitute(w, sub, ENV_KL)
    for _ in range(25):
        values = {"k": rng.randint(2, 4), "l": rng.randint(1, 4)}
        direct = instantiate(out, values)
        via_concrete = instantiate(
            substitute(instantiate(w, values),
                       {g: instantiate(s, values) for g, s in sub.items()},
                       ENV_KL),
            values)
        assert direct == via_concrete


def test_instantiate_frozen():
    w = parse_word("(x^(-k) y^(k))^(l)")
    got = instantiate(w, {"k": 2, "l": 2})
    assert got == parse_word("x^(-2) y^(2) x^(-2) y^(2)")
    assert instantiate(w, {"k": 2, "l": 0}).is_empty()


def test_instantiate_free_reduction():
    w = parse_word("x^(k) y y^(-1) x^(-k) z")
    assert instantiate(w, {"k": 3}) == parse_word("z")


def test_instantiate_negative_multiplicity_value():
    w = ParamWord([PowerBlock(parse_word("x y"), parse_affine("l-2"))])
    got = instantiate(w, {"l": 0})
    assert got == parse_word("y^(-1) x^(-1) y^(-1) x^(-1)")


def test_letters_expansion():
    assert letters(parse_word("x^(2) y^(-1)")) == [("x", 1), ("x", 1), ("y", -1)]
    assert letters(parse_word("x x^(-1)")) == []
    with pytest.raises(WordError):
        letters(parse_word("x^(k)"))


# ---------------------------------------------------------------------------
# Exponent sums
# ---------------------------------------------------------------------------

def test_exponent_sums_frozen():
    w = parse_word("(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)")
    sums = exponent_sums(w)
    from bridgecover.multipoly import MultiPoly
    k, l = MultiPoly.var("k"), MultiPoly.var("l")
    assert sums["x"] == -k * l
    assert sums["y"] == 2 * k * l - 1
    assert sums["z"] == -k * l
    assert set(sums) == {"x", "y", "z"}


def test_exponent_sums_match_instantiation():
    rng = random.Random(5)
    for _ in range(100):
        w = random_param_word(rng)
        sums = exponent_sums(w)
        values = {"k": rng.randint(-3, 3), "l": rng.randint(-3, 3)}
        concrete = {}
        for gen, step in letters(instantiate(w, values)):
            concrete[gen] = concrete.get(gen, 0) + step
        for gen in set(sums) | set(concrete):
            expected = sums.get(gen)
            assert concrete.get(gen, 0) == (0 if expected is None else expected.evaluate(values))


# ---------------------------------------------------------------------------
# Cyclic equality
# ---------------------------------------------------------------------------

def test_equal_up_to_cyclic_frozen():
    assert equal_up_to_cyclic(parse_word("x y x^(-1)"), parse_word("y")) is CyclicMatch.DIRECT
    assert equal_up_to_cyclic(parse_word("x y"), parse_word("y x")) is CyclicMatch.DIRECT
    assert equal_up_to_cyclic(parse_word("x y"), parse_word("y^(-1) x^(-1)")) is CyclicMatch.INVERSE
    assert equal_up_to_cyclic(parse_word("x y"), parse_word("x z")) is CyclicMatch.NONE
    assert equal_up_to_cyclic(parse_word("1"), parse_word("x x^(-1)")) is CyclicMatch.DIRECT
    assert bool(CyclicMatch.DIRECT) and bool(CyclicMatch.INVERSE) and not bool(CyclicMatch.NONE)


concrete_word_strategy = st.lists(
    st.tuples(st.sampled_from(["x", "y", "z"]), st.integers(-3, 3).filter(bool)),
    min_size=1, max_size=8,
).map(lambda ls: ParamWord([Syllable(g, e) for g, e in ls]))


@given(concrete_word_strategy, st.integers(0, 7), st.booleans())
@settings(max_examples=150)
def test_cyclic_equality_properties(w, rot, invert):
    ls = letters(w)
    if not ls:
        return
    rot %= len(ls)
    rotated = ls[rot:] + ls[:rot]
    other = ParamWord([Syllable(g, s) for g, s in rotated])
    if invert:
        other = other.inverse()
    got = equal_up_to_cyclic(w, other)
    if invert:
        assert got in (CyclicMatch.INVERSE, CyclicMatch.DIRECT)
    else:
        assert got is CyclicMatch.DIRECT


@given(concrete_word_strategy, concrete_word_strategy)
@settings(max_examples=150)
def test_cyclic_equality_symmetric(w1, w2):
    assert bool(equal_up_to_cyclic(w1, w2)) == bool(equal_up_to_cyclic(w2, w1))


# ---------------------------------------------------------------------------
# Word signs
# ---------------------------------------------------------------------------

def test_word_sign_frozen():
    w = parse_word("(x^(-k) y^(k))^(l)")
    assert word_sign(w, {"x": SN, "y": SP}, ENV_KL) is SP
    assert word_sign(w, {"x": SP, "y": SN}, ENV_KL) is SN
    assert word_sign(w, {"x": SP, "y": SP}, ENV_KL) is UK


def test_word_sign_weakens_with_nonstrict_multiplicity():
    env = ParamEnv({"k": 2, "l": 0})
    w = parse_word("(x^(-k) y^(k))^(l)")
    assert word_sign(w, {"x": SN, "y": SP}, env) is NN


def test_word_sign_requires_strict_assignment():
    with pytest.raises(WordError):
        word_sign(parse_word("x"), {"x": NN}, ENV_KL)
    with pytest.raises(WordError):
        word_sign(parse_word("x y"), {"x": SP}, ENV_KL)


def test_word_sign_sound_on_rationals():
    """STRICT_POS words evaluate above 1 when generators are sent to rationals
    on the declared side of 1 (multiplicative model of an ordered group)."""
    rng = random.Random(13)
    w = parse_word("(x^(-k) y^(k))^(l) (z^(-k) y^(k))^(l-1) z^(-k) y^(k-1)")
    signs = {"x": SN, "y": SP, "z": SN}
    verdict = word_sign(w, signs, ENV_KL)
    assert verdict is SP
    for _ in range(50):
        values = {"k": rng.randint(2, 5), "l": rng.randint(1, 5)}
        gens = {}
        for g, s in signs.items():
            q = Fraction(rng.randint(2, 9), 1)
            gens[g] = q if s is SP else 1 / q
        total = Fraction(1)
        for gen, step in letters(instantiate(w, values)):
            total *= gens[gen] if step > 0 else 1 / gens[gen]
        assert total > 1
