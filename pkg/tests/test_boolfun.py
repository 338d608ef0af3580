import numpy as np
import pytest
from hypothesis import given, strategies as st

from ctns.boolfun import (AnfPoly, Esop, PolarityVector, TruthTable, anf_coefficients,
                          anf_to_truth_table, anf_transform, evaluate_fprm, fixed_polarity_rm,
                          format_anf, format_truth_table, index_to_bits, minterm_esop, mobius_gf2,
                          multilinear_transform, parse_anf, parse_truth_table, tt_eval)
from ctns.states import ghz_truth_table, w_truth_table

F_W = w_truth_table(3)
F_GHZ = ghz_truth_table(3)


def mono(*vs):
    return frozenset(v - 1 for v in vs)


def tables(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n).map(
            lambda bits: TruthTable(n, bits)))


def test_tt_eval():
    assert tt_eval(F_W, "001") == 1
    assert tt_eval(F_W, (1, 1, 1)) == 0
    assert tt_eval(F_GHZ, "111") == 1
    with pytest.raises(ValueError, match="expected 3"):
        tt_eval(F_W, "01")


def test_truth_table_validation():
    with pytest.raises(ValueError):
        TruthTable(2, [0, 1, 1])
    with pytest.raises(ValueError):
        TruthTable(1, [0, 2])
    with pytest.raises(ValueError):
        TruthTable(25, [])


def test_anf_of_w_and_ghz():
    assert anf_transform(F_W) == AnfPoly(3, {mono(1), mono(2), mono(3), mono(1, 2, 3)})
    assert format_anf(anf_transform(F_W)) == "x1+x2+x3+x1*x2*x3"
    ghz = AnfPoly(3, {mono(), mono(1), mono(2), mono(3), mono(1, 2), mono(1, 3), mono(2, 3)})
    assert anf_transform(F_GHZ) == ghz
    assert anf_transform(TruthTable(3, [0] * 8)).monomials == frozenset()


def test_multilinear_of_w_and_ghz():
    w = {mono(1): 1, mono(2): 1, mono(3): 1, mono(1, 2): -2, mono(1, 3): -2, mono(2, 3): -2,
         mono(1, 2, 3): 3}
    assert multilinear_transform(F_W).coeffs == w
    ghz = {mono(): 1, mono(1): -1, mono(2): -1, mono(1, 2): 1, mono(3): -1, mono(1, 3): 1,
           mono(2, 3): 1}
    assert multilinear_transform(F_GHZ).coeffs == ghz
    assert multilinear_transform(TruthTable(2, [1] * 4)).coeffs == {mono(): 1}


def expansion_oracle(c):
    """Coefficients of the written-out three-variable expansion, by monomial."""
    return {
        mono(): c[0],
        mono(1): c[0] ^ c[4],
        mono(2): c[0] ^ c[2],
        mono(3): c[0] ^ c[1],
        mono(1, 2): c[0] ^ c[2] ^ c[4] ^ c[6],
        mono(1, 3): c[0] ^ c[1] ^ c[4] ^ c[5],
        mono(2, 3): c[0] ^ c[1] ^ c[2] ^ c[3],
        mono(1, 2, 3): c[0] ^ c[1] ^ c[2] ^ c[3] ^ c[4] ^ c[5] ^ c[6] ^ c[7],
    }


def test_fprm_positive_matches_expansion():
    rng = np.random.default_rng(3)
    for _ in range(20):
        c = rng.integers(0, 2, size=8).tolist()
        coeffs = fixed_polarity_rm(TruthTable(3, c), [0, 0, 0])
        want = expansion_oracle(c)
        for mask in range(8):
            m = frozenset(i for i in range(3) if mask >> (2 - i) & 1)
            assert coeffs[mask] == want[m]


def test_fprm_all_negative_on_constant_one():
    coeffs = fixed_polarity_rm(TruthTable(3, [1] * 8), PolarityVector((1, 1, 1)))
    assert coeffs.tolist() == [1, 0, 0, 0, 0, 0, 0, 0]


def test_fprm_negative_literal_single_minterm():
    # f = not x1 and not x2 is the single cube of the all-negative form
    f = TruthTable(2, [1, 0, 0, 0])
    assert fixed_polarity_rm(f, (1, 1)).tolist() == [0, 0, 0, 1]
    with pytest.raises(ValueError, match="polarity"):
        fixed_polarity_rm(f, (1, 1, 0))


def test_fprm_round_trip_random():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        f = TruthTable(n, rng.integers(0, 2, size=1 << n))
        sigma = rng.integers(0, 2, size=n).tolist()
        coeffs = fixed_polarity_rm(f, sigma)
        for x in range(1 << n):
            assert evaluate_fprm(coeffs, sigma, index_to_bits(x, n)) == f.bits[x]


@given(tables(10))
def test_mobius_is_an_involution(f):
    c = anf_coefficients(f)
    assert np.array_equal(mobius_gf2(c, f.n), f.bits)
    assert anf_to_truth_table(anf_transform(f)) == f


@given(tables(6))
def test_multilinear_mod_two_is_anf(f):
    ml = multilinear_transform(f)
    odd = frozenset(m for m, c in ml.coeffs.items() if c % 2)
    assert odd == anf_transform(f).monomials
    for x in range(1 << f.n):
        assert ml.evaluate(index_to_bits(x, f.n)) == f.bits[x]


@given(tables(5))
def test_minterm_esop_evaluates(f):
    esop = minterm_esop(f)
    assert isinstance(esop, Esop) and len(esop.cubes) == f.bits.sum()
    for x in range(1 << f.n):
        assert esop.evaluate(index_to_bits(x, f.n)) == f.bits[x]


def test_parse_anf():
    p = parse_anf("x1+x2+x3+x1*x2*x3")
    assert anf_to_truth_table(p) == F_W
    assert parse_anf("1 ^ x1", n=2).monomials == {mono(), mono(1)}
    assert parse_anf("x1+x1").monomials == frozenset()
    assert parse_anf("0", n=2).n == 2
    with pytest.raises(ValueError, match="term 2"):
        parse_anf("x1+y2")
    with pytest.raises(ValueError, match="n=2"):
        parse_anf("x3", n=2)


def test_truth_table_text_round_trip():
    text = format_truth_table(F_W)
    assert text == "n=3\n01101000\n"
    assert parse_truth_table(text) == F_W
    with pytest.raises(ValueError, match="line 1"):
        parse_truth_table("3\n0110")
    with pytest.raises(ValueError, match="expected 8 bits"):
        parse_truth_table("n=3\n0110")
    with pytest.raises(ValueError, match="only 0 and 1"):
        parse_truth_table("n=1\n0x")
