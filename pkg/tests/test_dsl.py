import itertools
import random
from importlib import resources

import pytest
from hypothesis import given

from autshift.dsl import parse_config, parse_scheme, render_scheme, render_word, tokenize
from autshift.errors import (
    DSLError,
    InvariantViolation,
    LengthMismatch,
    NonBijective,
    SymbolOutOfAlphabet,
)
from autshift.markers import MarkerRule, MarkerScheme
from autshift.symbolic import SYMBOL_CHARS, BiConfiguration, OmegaPoint

from conftest import biconfigs, omega_points

DATA = resources.files("autshift") / "data"
CORPUS = sorted(p for p in DATA.iterdir() if p.name.endswith(".scheme"))


def test_example_scheme():
    s = parse_scheme('alphabet 4; rule { start="000"; end="111"; map "2332"->"3223"; map "3223"->"2332"; }')
    assert s == MarkerScheme(4, [MarkerRule.swap("000", "111", "2332", "3223")])


def test_repetition_sugar():
    s = parse_scheme('alphabet 2\nrule { start = "0^8" end = "1" map "0 1^3" -> "1^3 0" map "1110" -> "0111" }')
    assert s.rules[0].start == (0,) * 8
    assert s.rules[0].data == ((0, 1, 1, 1), (1, 1, 1, 0))


def test_comments_and_optional_semicolons():
    text = """
    # header
    alphabet 3   # three symbols
    rule {
      start = "00"   ;
      end = "2"
      map "1" -> "1"
    };
    """
    assert len(parse_scheme(text).rules) == 1


@pytest.mark.parametrize(
    "text,cls,line,column",
    [
        ('alphabet 2\nrule { start="0" end="1" map "01"->"011" }', LengthMismatch, 2, 36),
        ('alphabet 2\nrule { start="0" end="2" map "01"->"10" "10"->"01" }', SymbolOutOfAlphabet, 2, 22),
        ('alphabet 2\nrule { start="0" end="1" map "01"->"00" }', NonBijective, 2, 1),
        ('alphabet 2\nrule { start=0 }', DSLError, 2, 14),
        ('alphabet 2\nrule { start="0" end="1" }', DSLError, 2, 26),
        ('alphabet 40', DSLError, 1, 10),
        ('alphabet 2 $', DSLError, 1, 12),
        ('alphabet 2\nrule { start="0^" end="1" map "0"->"0" }', DSLError, 2, 16),
    ],
)
def test_positioned_errors(text, cls, line, column):
    with pytest.raises(cls) as err:
        parse_scheme(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert err.value.code


def test_render_word():
    assert render_word((0,) * 8) == '"0^8"'
    assert render_word((0, 0, 0, 0, 1)) == '"0^4 1"'
    assert render_word((1, 1, 1, 0)) == '"1110"'


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    s = parse_scheme(path.read_text())
    text = render_scheme(s)
    again = parse_scheme(text)
    assert again == s
    assert render_scheme(again) == text


def random_scheme(rng):
    n = rng.randint(2, 36)
    rules = []
    for _ in range(rng.randint(0, 3)):
        word = lambda lo, hi: tuple(rng.choice((rng.randrange(n), 0)) for _ in range(rng.randint(lo, hi)))
        start, end = word(0, 12), word(0, 6)
        dl = rng.randint(1, 6)
        data = {tuple(rng.randrange(n) for _ in range(dl)) for _ in range(rng.randint(1, 4))}
        data = sorted(data)
        image = data[:]
        rng.shuffle(image)
        rules.append(MarkerRule(start, end, tuple(zip(data, image))))
    return MarkerScheme(n, rules)


def test_random_round_trips():
    rng = random.Random(11)
    for _ in range(1000):
        s = random_scheme(rng)
        assert parse_scheme(render_scheme(s)) == s


def test_config_literals():
    x = parse_config('(0)* "2332" @1 (1)*')
    assert x == BiConfiguration((0,), (2, 3, 3, 2), 1, (1,))
    omega = parse_config('"0110" (1)*')
    assert isinstance(omega, OmegaPoint) and omega.prefix == (0, 1, 1, 0)
    assert parse_config("(01)* \"\" @-2 (1^3 0)*") == BiConfiguration((0, 1), (), -2, (1, 1, 1, 0))
    with pytest.raises(InvariantViolation):
        parse_config('"11" (1)*')


@pytest.mark.parametrize(
    "text,column",
    [('(0)* "2332" @1 (1)', 19), ('(0 "23"', 1), ('()* "" (1)*', 1), ('(0)* "2#" (1)*', 8), ("x", 1)],
)
def test_config_errors(text, column):
    with pytest.raises(DSLError) as err:
        parse_config(text)
    assert err.value.column == column


def test_config_alphabet_check():
    with pytest.raises(SymbolOutOfAlphabet):
        parse_config('(0)* "2" (1)*', alphabet=2)


@given(biconfigs(n=4))
def test_config_repr_round_trip(x):
    assert parse_config(repr(x)) == x


@given(omega_points(n=4))
def test_omega_repr_round_trip(omega):
    assert parse_config(repr(omega)) == omega


def test_tokenizer_positions():
    toks = tokenize('alphabet 2\n  rule {')
    assert [(t.kind, t.line, t.column) for t in toks] == [
        ("ident", 1, 1), ("int", 1, 10), ("ident", 2, 3), ("punct", 2, 8), ("eof", 2, 9)]
