from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssk3.strata import (
    ZeroPattern,
    admissible_m,
    nonsymplectic_index,
    orders_for_sigma,
    render_table,
    stratum_dimension,
    table1,
)

GOLDEN = Path(__file__).parent / "golden"

# (sigma, [(index, family), ...]) as printed in the source table
PRINTED_TABLE = [
    (1, [("p+1", "unique")]),
    (2, [("2", "generic"), ("p^2+1", "unique")]),
    (3, [("2", "generic"), ("p+1", "1 dimensional"), ("p^3+1", "unique")]),
    (4, [("2", "generic"), ("p^4+1", "unique")]),
    (5, [("2", "generic"), ("p+1", "2 dimensional"), ("p^5+1", "unique")]),
    (6, [("2", "generic"), ("p^2+1", "1 dimensional"), ("p^6+1", "unique")]),
    (7, [("2", "generic"), ("p+1", "3 dimensional"), ("p^7+1", "unique")]),
    (8, [("2", "generic"), ("p^8+1", "unique")]),
    (9, [("2", "generic"), ("p+1", "4 dimensional"), ("p^3+1", "1 dimensional"), ("p^9+1", "unique")]),
    (10, [("2", "generic"), ("p^2+1", "2 dimensional"), ("p^10+1", "unique")]),
]

patterns = st.integers(1, 10).flatmap(
    lambda s: st.tuples(st.just(s), st.lists(st.booleans(), min_size=s - 1, max_size=s - 1))
)
primes = st.sampled_from([5, 7, 11, 13, 17, 19, 23])


def test_table_matches_printed():
    got = [(s, [(x.index_expr, x.label) for x in strata]) for s, strata in table1()]
    assert got == PRINTED_TABLE


def test_table_text_golden():
    assert render_table() == (GOLDEN / "table_symbolic.txt").read_text()


def test_numeric_table():
    lines = render_table(5).splitlines()
    assert lines[2].split("|")[1].strip() == "6"
    assert lines[4].split("|")[1].strip() == "26"
    assert len(lines) == 2 + 26


@pytest.mark.parametrize(
    "p,sigma,pattern,expected",
    [
        (5, 1, "", 6),
        (5, 2, "1", 2),
        (5, 2, "0", 26),
        (7, 3, "0,1", 8),
        (7, 3, "1,0", 2),
        (5, 9, "0,0,0,0,0,1,0,0", 126),
        (5, 9, "0,1,0,0,0,0,0,0", 6),
        (5, 6, "0,0,0,1,0", 26),
        (5, 4, "0,0,0", 626),
    ],
)
def test_index_examples(p, sigma, pattern, expected):
    assert nonsymplectic_index(p, sigma, ZeroPattern.parse(pattern, sigma)).index == expected


def test_parse_errors():
    with pytest.raises(ValueError):
        ZeroPattern.parse("1", 3)
    with pytest.raises(ValueError):
        ZeroPattern.parse("2", 2)
    assert ZeroPattern.parse(None, 3) == ZeroPattern.all_zero(3)


@given(patterns, primes)
def test_index_is_even_divisor(sp, p):
    sigma, flags = sp
    r = nonsymplectic_index(p, sigma, ZeroPattern(tuple(flags)))
    assert r.index % 2 == 0
    assert (p**sigma + 1) % r.index == 0
    assert r.index <= p**sigma + 1


@given(patterns)
def test_admissible_orders(sp):
    sigma, flags = sp
    ms = admissible_m(sigma, ZeroPattern(tuple(flags)))
    assert sigma in ms or any(flags)
    for m in ms:
        assert sigma % m == 0 and (sigma // m) % 2 == 1
    # clearing a coordinate can only enlarge the admissible set
    for k, f in enumerate(flags):
        if f:
            cleared = tuple(x and i != k for i, x in enumerate(flags))
            assert set(ms) <= set(admissible_m(sigma, ZeroPattern(cleared)))


@given(st.integers(1, 10))
def test_dimension_counts_free_slots(sigma):
    for m in orders_for_sigma(sigma):
        free = [i for i in range(1, sigma) if i % (2 * m) == 0]
        assert stratum_dimension(sigma, m) == len(free)
    assert stratum_dimension(sigma, 0) == sigma - 1


def test_all_zero_gives_maximal_index():
    for sigma in range(1, 11):
        assert nonsymplectic_index(5, sigma, ZeroPattern.all_zero(sigma)).index == 5**sigma + 1
