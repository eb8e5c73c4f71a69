import itertools
import random

import pytest

from padicres.errors import VanishingResultantError, WindowTooShortError
from padicres.limits import (
    closed_form_limit,
    iwasawa_fit,
    lambda_mu_structural,
    limit_estimate,
    order_invariance_check,
    sign_of,
    zero_limit_predicate,
)
from padicres.multipoly import MultiPoly, random_multipoly
from padicres.padic import PadicApprox, nonp_part, teichmuller, vp
from padicres.parsing import parse_poly
from padicres.resultants import CyclicResultantRequest, cyclic_resultant
from padicres.unipoly import UniPoly


def whitehead(k):
    if k % 2:
        m = (k - 1) // 2
        return MultiPoly(2, {(0, 0): 1 + m, (1, 0): -m, (0, 1): -m, (1, 1): 1 + m})
    m = k // 2
    return MultiPoly(2, {(0, 0): m, (1, 1): m, (1, 0): -m, (0, 1): -m})


def test_zero_limit_predicate_examples():
    assert zero_limit_predicate(parse_poly("t1 + t2 - 2", 2), 5)
    for m in range(0, 3):
        odd = whitehead(2 * m + 1)
        assert odd.evaluate((1, 1)) == 2
        assert not zero_limit_predicate(odd, 3)
        assert zero_limit_predicate(odd, 2)


def test_limit_estimate_two_var_constant_family():
    # f = 2 - t1 in Z[t1, t2]: limit is the Teichmuller value of f(1,1) = 1
    est = limit_estimate(parse_poly("2 - t1", 2), 7, 2)
    assert est.value.residue(2) == 1
    assert est.certified_digits == 2 and est.stabilized and not est.degenerate


def test_limit_estimate_univariate_family_differs():
    # same expression read in one variable: limit is omega_7(2) - 1
    est = limit_estimate(parse_poly("2 - t1", 1), 7, 2)
    target = teichmuller(2, 7, 2) - PadicApprox.from_int(1, 7, 2, exact=True)
    assert est.value.eq_mod(target, 2)
    assert est.value.residue(2) == 29


def test_limit_estimate_rprime_example():
    est = limit_estimate(parse_poly("1 + t1*t2", 2), 3, 2, mask="rprime")
    assert est.value.residue(2) == 4  # omega_3(2)/2 = 8 * 5 = 4 mod 9
    target = teichmuller(2, 3, 2) * PadicApprox.from_int(2, 3, 2, exact=True).inverse()
    assert est.value.eq_mod(target, 2)


def test_limit_estimate_forced_zero():
    est = limit_estimate(parse_poly("t1 + t2 - 2", 2), 5, 2)
    assert est.value.is_exact_zero and est.certified_digits is None
    assert est.nonp_value is not None  # non-p parts still converge


def test_limit_estimate_degenerate_vanishing():
    # 1 + t1t2 at p = 2 vanishes at levels >= (2,2): distinguished outcome
    est = limit_estimate(parse_poly("1 + t1*t2", 2), 2, 3, mask="rprime")
    assert est.degenerate
    assert est.value.is_exact_zero and est.nonp_value.is_exact_zero


def test_certified_digit_soundness_random():
    rng = random.Random(200)
    done = 0
    while done < 200:
        d = rng.choice([1, 2])
        f = random_multipoly(rng, d, 4, 3, 9)
        if f.is_zero:
            continue
        p = rng.choice([2, 3])
        K = 2
        big = cyclic_resultant(CyclicResultantRequest.full(f, p, (K + 1,) * d))
        small = cyclic_resultant(CyclicResultantRequest.full(f, p, (K,) * d))
        if small == 0:
            assert big == 0
        else:
            assert (big - small) % p**K == 0
        done += 1


def test_unit_equivalence_exhaustive_univariate():
    # p | value at one level <=> at all levels <=> p | f(1), over a small box
    for p in (2, 3):
        for c0, c1, c2 in itertools.product(range(-2, 3), repeat=3):
            f = MultiPoly(1, {(0,): c0, (1,): c1, (2,): c2})
            if f.is_zero:
                continue
            divisible = [
                cyclic_resultant(CyclicResultantRequest.full(f, p, (n,))) % p == 0
                for n in (1, 2, 3)
            ]
            assert all(divisible) == any(divisible) == (f.evaluate((1,)) % p == 0)


def test_nonp_plateau_spot_check():
    # f = t - 2: non-p parts are the values themselves; v_p plateaus at 0
    f = parse_poly("t1 - 2", 1)
    for p in (3, 5):
        est = limit_estimate(f, p, 3)
        assert est.stabilized
        assert all(v == 0 for _, v, _ in est.window)
        assert est.nonp_certified_digits == 3


def test_sign_predictions_match_exact_values():
    rng = random.Random(201)
    done = 0
    while done < 40:
        d = rng.choice([1, 2])
        f = random_multipoly(rng, d, 4, 2, 9)
        if f.is_zero:
            continue
        p = rng.choice([2, 3, 5])
        levels = tuple(rng.randint(1, 2) for _ in range(d))
        for mask in ("r", "rprime"):
            value = cyclic_resultant(
                CyclicResultantRequest.full(f, p, levels)
                if mask == "r"
                else CyclicResultantRequest.rprime(f, p, levels)
            )
            if value == 0:
                continue
            try:
                predicted = sign_of(f, p, levels, mask)
            except VanishingResultantError:
                continue
            assert predicted == (1 if value > 0 else -1), (f.serialize(), p, levels, mask)
        done += 1


def test_sign_examples():
    for k in (1, 2, 3, 4, 5):
        assert sign_of(whitehead(k), 2, (2, 2), "rprime") == 1
    f = parse_poly("t1 - 3", 1)
    assert sign_of(f, 5, (1,), "r") == -1
    assert cyclic_resultant(CyclicResultantRequest.full(f, 5, (1,))) == -(3**5 - 1)
    assert sign_of(parse_poly("2 - t1", 1), 3, (1,), "r") == 1


def test_iwasawa_fit_examples():
    inv = iwasawa_fit(UniPoly((-6, 1)), 5, 5)  # t - (1+p), p = 5
    assert (inv.lam, inv.mu, inv.nu) == (1, 0, 1)
    assert inv.e_values == (2, 3, 4, 5, 6)
    inv = iwasawa_fit(UniPoly((-6, 3)), 3, 5)  # 3*(t-2), p = 3
    assert (inv.lam, inv.mu, inv.nu) == (0, 1, 0)
    inv = iwasawa_fit(UniPoly((-2, 1)), 7, 4)  # t - 2, p = 7
    assert (inv.lam, inv.mu, inv.nu) == (0, 0, 0)
    assert inv.verified_window[1] - inv.verified_window[0] >= 2


def test_iwasawa_fit_guards():
    with pytest.raises(VanishingResultantError):
        iwasawa_fit(UniPoly((-1, 1)), 3, 5)  # t - 1 vanishes at every level
    with pytest.raises(WindowTooShortError):
        iwasawa_fit(UniPoly((-2, 1)), 3, 2)


def test_lambda_mu_structural_examples():
    assert lambda_mu_structural(UniPoly((-6, 1)), 5) == (1, 0)
    assert lambda_mu_structural(UniPoly((-2, 1)), 3) == (0, 0)
    f = UniPoly((-6, 1)) * UniPoly((-26, 1))  # (t-(1+p))(t-(1+p^2)), p=5
    assert lambda_mu_structural(f, 5) == (2, 0)
    fit = iwasawa_fit(f, 5, 5)
    assert (fit.lam, fit.mu) == (2, 0)
    with pytest.raises(VanishingResultantError):
        lambda_mu_structural(UniPoly((-1, 1)), 3)


def test_fit_and_structural_agree_random():
    rng = random.Random(202)
    done = 0
    while done < 40:
        deg = rng.randint(1, 5)
        f = UniPoly(
            [rng.randint(-15, 15) for _ in range(deg)]
            + [rng.choice([1, -1]) * rng.randint(1, 15)]
        )
        if f.is_zero or f.evaluate(1) == 0:
            continue
        p = rng.choice([2, 3, 5])
        try:
            fit = iwasawa_fit(f, p, 5)
        except (VanishingResultantError, WindowTooShortError):
            continue
        assert (fit.lam, fit.mu) == lambda_mu_structural(f, p)
        done += 1


def test_closed_form_limit_odd_p_multivariate():
    value = closed_form_limit(-1, 1, MultiPoly.const(1, 2), 7, 2, verify=True, verify_levels=2)
    assert value.residue(2) == 1  # omega_7(f(1,1)) = omega_7(1)


def test_closed_form_limit_zero_case():
    value = closed_form_limit(1, 2, MultiPoly.const(1, -1), 3, 3, verify=True, verify_levels=2)
    assert value.is_exact_zero


def test_closed_form_limit_p2_univariate():
    value = closed_form_limit(1, 1, 4, 2, 3, verify=True, verify_levels=3)
    assert value.residue(3) == 7  # the sign lift -1


def test_closed_form_limit_p2_multivariate_is_one():
    g = MultiPoly(1, {(1,): 4})  # 4*t2 after embedding
    value = closed_form_limit(1, 1, g, 2, 3, verify=True, verify_levels=3)
    assert value.residue(3) == 1


def test_closed_form_limit_random_verify():
    rng = random.Random(203)
    done = 0
    while done < 12:
        a = rng.choice([-3, -2, -1, 1, 2, 3])
        n = rng.randint(1, 4)
        gd = rng.choice([0, 1])
        g = random_multipoly(rng, gd, 3, 2, 5) if gd else MultiPoly.const(0, rng.randint(-5, 5))
        p = rng.choice([2, 3, 5])
        closed_form_limit(a, n, g, p, 3, verify=True, verify_levels=3 if p < 5 else 2)
        done += 1


def test_order_invariance_examples():
    assert order_invariance_check(parse_poly("t1*t2 - 2", 2), 2, (2, 1))
    assert order_invariance_check(parse_poly("t1 - 2", 1), 3, (2,))
    assert order_invariance_check(whitehead(3), 3, (2, 2), "rprime")
    rep = order_invariance_check(whitehead(3), 3, (3, 2), "rprime")
    assert rep.ok and rep.detail == ""


def test_certificate_holds_at_deeper_uneven_levels():
    # the certified residue must match any strictly deeper level vector,
    # not just the diagonal used to compute it
    rng = random.Random(447)
    done = 0
    while done < 25:
        d = rng.choice([1, 2])
        f = random_multipoly(rng, d, 4, 3, 9)
        if f.is_zero:
            continue
        p = rng.choice([2, 3])
        K = rng.randint(1, 2)
        mask = rng.choice(["r", "rprime"])
        est = limit_estimate(f, p, K, mask=mask)
        if est.degenerate:
            continue
        deeper = tuple(K + rng.randint(1, 2) for _ in range(d))
        maker = (
            CyclicResultantRequest.full if mask == "r" else CyclicResultantRequest.rprime
        )
        deep = cyclic_resultant(maker(f, p, deeper))
        assert (deep - est.value.residue(K)) % p**K == 0
        if deep:
            digits = min(K, est.nonp_certified_digits)
            assert (nonp_part(deep, p) - est.nonp_value.residue(digits)) % p**digits == 0
        done += 1


def test_iwasawa_law_extrapolates_beyond_window():
    rng = random.Random(448)
    done = 0
    while done < 10:
        deg = rng.randint(1, 4)
        f = UniPoly([rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([1, -1]) * rng.randint(1, 9)])
        if f.is_zero or f.evaluate(1) == 0:
            continue
        p = rng.choice([2, 3])
        try:
            fit = iwasawa_fit(f, p, 5)
        except (VanishingResultantError, WindowTooShortError):
            continue
        g = MultiPoly(1, {(i,): c for i, c in enumerate(f.coeffs) if c})
        value = cyclic_resultant(
            CyclicResultantRequest.full(g, p, (6,)), budget=10**6
        )
        assert vp(value, p) == fit.predicts(6, p)
        done += 1
