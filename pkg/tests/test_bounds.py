from __future__ import annotations

import math

import pytest

from cccodes.bounds import (
    BoundRule,
    bound_johnson_d2w2,
    bound_johnson_d2w3,
    bound_quaternary_w3,
    bound_svanstrom,
    bound_weight45,
    congruence_profile,
    johnson_step,
    pbd_admissible,
    svanstrom_correction,
    universe_size,
    upper_bound,
)
from cccodes.codes import CodeParams, Composition


def params(q, n, d, counts):
    return CodeParams(q, n, d, Composition(counts))


class TestCorrection:
    @pytest.mark.parametrize("n,expect", [(5, 0), (7, 9), (11, 15), (9, 0), (15, 15), (19, 21), (23, 27)])
    def test_values(self, n, expect):
        assert svanstrom_correction(n) == expect

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            svanstrom_correction(8)


class TestSvanstrom:
    @pytest.mark.parametrize("n,expect", [(9, 18), (7, 9), (11, 25), (5, 5), (13, 39)])
    def test_values(self, n, expect):
        assert bound_svanstrom(n).value == expect

    def test_cross_check_pre_unified_form(self):
        assert bound_svanstrom(11).value == (11 - 1) ** 2 // 4 + (11 - 3) // 12

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            bound_svanstrom(10)

    def test_matches_d2w2_form_mod4_1(self):
        for n in range(5, 1002, 2):
            sv = bound_svanstrom(n).value
            eq2 = bound_johnson_d2w2(params(3, n, 4, (2, 1))).value
            if n % 4 == 1:
                assert sv == eq2
            else:
                assert sv < eq2

    def test_always_integral(self):
        for n in range(3, 1002, 2):
            assert (3 * n * (n - 1) - 2 * svanstrom_correction(n)) % 12 == 0

    def test_pre_unification_identity_mod4_3(self):
        for n in range(7, 1002, 4):
            assert bound_svanstrom(n).value == (n - 1) ** 2 // 4 + (n - 3) // 12


class TestClosedJohnson:
    @pytest.mark.parametrize(
        "p,expect",
        [
            ((3, 5, 4, (2, 1)), 5),
            ((3, 13, 4, (2, 1)), 39),
            ((3, 10, 6, (2, 2)), 15),
        ],
    )
    def test_d2w2(self, p, expect):
        assert bound_johnson_d2w2(params(*p)).value == expect

    def test_d2w2_precondition(self):
        with pytest.raises(ValueError):
            bound_johnson_d2w2(params(3, 5, 3, (2, 1)))

    @pytest.mark.parametrize(
        "p,expect",
        [((3, 7, 5, (3, 1)), 7), ((3, 13, 5, (3, 1)), 26), ((3, 13, 7, (4, 1)), 13)],
    )
    def test_d2w3(self, p, expect):
        assert bound_johnson_d2w3(params(*p)).value == expect

    def test_d2w3_preconditions(self):
        with pytest.raises(ValueError):
            bound_johnson_d2w3(params(3, 7, 4, (3, 1)))
        with pytest.raises(ValueError):
            bound_johnson_d2w3(params(4, 7, 3, (1, 1, 1)))


class TestTables:
    @pytest.mark.parametrize(
        "p,expect",
        [
            ((3, 10, 6, (3, 1)), 10),
            ((3, 16, 7, (4, 1)), 20),
            ((4, 10, 6, (2, 1, 1)), 15),
            ((3, 10, 5, (3, 1)), 15),
            ((3, 10, 6, (2, 2)), 15),
        ],
    )
    def test_weight45(self, p, expect):
        assert bound_weight45(params(*p)).value == expect

    def test_weight45_unlisted(self):
        with pytest.raises(ValueError):
            bound_weight45(params(3, 10, 4, (2, 2)))

    @pytest.mark.parametrize("n,d,expect", [(5, 3, 20), (11, 4, 55), (9, 5, 9)])
    def test_quaternary(self, n, d, expect):
        assert bound_quaternary_w3(n, d).value == expect

    def test_quaternary_bad_d(self):
        with pytest.raises(ValueError):
            bound_quaternary_w3(9, 6)


class TestJohnsonStep:
    def test_examples(self):
        assert johnson_step(10, 3, 3) == 10
        assert johnson_step(5, 2, 2) == 5
        assert johnson_step(17, 4, 0) == 0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            johnson_step(0, 1, 1)
        with pytest.raises(ValueError):
            johnson_step(5, 2, -1)


class TestUpperBound:
    def test_svanstrom_beats_closed_form(self):
        res = upper_bound(params(3, 11, 4, (2, 1)))
        assert res.value == 25 and res.rule is BoundRule.SVANSTROM_ODD

    def test_quaternary_table(self):
        res = upper_bound(params(4, 8, 5, (1, 1, 1)))
        assert res.value == 8 and res.rule is BoundRule.QUATERNARY_W3_TABLE

    def test_trivial_singleton(self):
        res = upper_bound(params(3, 4, 7, (2, 1)))
        assert res.value == 1 and res.rule is BoundRule.TRIVIAL

    def test_trivial_universe_when_no_rule(self):
        p = params(3, 5, 2, (2, 1))
        res = upper_bound(p)
        assert res.rule is BoundRule.TRIVIAL
        assert res.value == universe_size(p) == 30

    def test_tie_break_prefers_earlier_rule(self):
        # at n=9 the odd bound and the closed form are both 18
        res = upper_bound(params(3, 9, 4, (2, 1)))
        assert res.value == 18 and res.rule is BoundRule.JOHNSON_D2W2


class TestUniverseSize:
    def test_multinomials(self):
        assert universe_size(params(3, 5, 4, (2, 1))) == 30
        assert universe_size(params(4, 5, 3, (1, 1, 1))) == 60
        assert universe_size(params(3, 7, 4, (2, 1))) == 105


class TestCongruences:
    @pytest.mark.parametrize(
        "K,alpha,beta",
        [
            ({5, 9, 13}, 4, 4),
            ({7, 13, 15, 19}, 2, 6),
            ({13, 16}, 3, 12),
            ({4, 7, 8, 9}, 1, 2),
            ({10}, 9, 90),
        ],
    )
    def test_profiles(self, K, alpha, beta):
        prof = congruence_profile(K)
        assert (prof.alpha, prof.beta) == (alpha, beta)

    def test_alpha_divides_beta_randomised(self):
        import random

        rng = random.Random(4)
        for _ in range(300):
            K = {rng.randint(2, 60) for _ in range(rng.randint(1, 6))}
            prof = congruence_profile(K)
            assert prof.beta % prof.alpha == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            congruence_profile(set())

    def test_small_sizes_rejected(self):
        with pytest.raises(ValueError):
            congruence_profile({1, 5})


class TestAdmissible:
    def test_examples(self):
        assert pbd_admissible(21, {5, 9, 13})
        assert not pbd_admissible(7, {13, 16})

    def test_mod6_family(self):
        for n in range(7, 200):
            expect = n % 6 in (1, 3)
            assert pbd_admissible(n, {7, 13, 15, 19}) == expect

    def test_matches_direct_gcd_arithmetic(self):
        import random

        rng = random.Random(5)
        for _ in range(200):
            K = {rng.randint(2, 40) for _ in range(rng.randint(1, 5))}
            alpha = math.gcd(*(k - 1 for k in K)) if len(K) > 1 else list(K)[0] - 1
            beta = (
                math.gcd(*(k * (k - 1) for k in K))
                if len(K) > 1
                else list(K)[0] * (list(K)[0] - 1)
            )
            n = rng.randint(2, 500)
            expect = (n - 1) % alpha == 0 and (n * (n - 1)) % beta == 0
            assert pbd_admissible(n, K) == expect

    def test_periodicity(self):
        import random

        rng = random.Random(6)
        for _ in range(100):
            K = {rng.randint(2, 30) for _ in range(rng.randint(1, 4))}
            prof = congruence_profile(K)
            period = math.lcm(prof.alpha, prof.beta)
            n = rng.randint(2, 300)
            assert pbd_admissible(n, K) == pbd_admissible(n + period, K)
