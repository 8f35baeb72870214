from fractions import Fraction as F

import pytest

from suffstat.channel import Channel, StateFamily, SupportError, identity, lift
from suffstat.dist import Dist, dirac
from suffstat.ewens import size_dagger_channel
from suffstat.msets import acc
from suffstat.seqmult import arr_channel, dist_grid, iid, sequences
from suffstat.suffcheck import (CASES, SufficiencyCase, acc_iid_case, check_conditional_independence,
                                check_ket, check_pred, check_via_split_idempotent, mc_swapmn_case,
                                run_case, size_ewens_case, sum_poisson_case)

BUILDERS = {
    "acc-iid": lambda: acc_iid_case("ab", 2),
    "mc-swapmn": lambda: mc_swapmn_case("abc", 2, max_den=5),
    "size-ewens": lambda: size_ewens_case(4),
    "sum-poisson": lambda: sum_poisson_case(2, N=5),
}


@pytest.fixture(params=sorted(BUILDERS))
def bundled(request):
    return BUILDERS[request.param]()


def test_ket_passes_on_bundled(bundled):
    case = bundled[0]
    assert check_ket(case).ok


def test_wrong_reverse_fails_with_counterexample():
    case = acc_iid_case("ab", 2)[0]
    ys = case.stat_values()
    wrong = Channel({y: dirac(("a", "a")) for y in ys})
    bad = SufficiencyCase("wrong", case.family, acc, wrong, case.outcomes)
    rep = check_ket(bad)
    assert not rep.ok
    assert rep.failures[0].counterexample.startswith("at ")
    assert not check_pred(bad).ok


def test_constant_family():
    w0 = Dist({"a": F(1, 3), "b": F(2, 3)})
    fam = StateFamily([0, 1], lambda a: w0)
    case = SufficiencyCase("const", fam, lambda x: "*", Channel({"*": w0}), "ab")
    assert check_ket(case).ok and check_pred(case).ok


def test_pred_and_ket_agree(bundled):
    case = bundled[0]
    assert check_pred(case, seed=0).ok == check_ket(case).ok
    assert check_pred(case, seed=0, point_predicates=False).ok


def test_conditionals_extract_reverse(bundled):
    case = bundled[0]
    rep, d = check_conditional_independence(case.family, case.statistic)
    assert rep.ok
    assert d == Channel({y: case.reverse(y) for y in d.domain})
    fed = SufficiencyCase("fed back", case.family, case.statistic, d, case.outcomes)
    assert check_ket(fed).ok


def test_conditionals_named_examples():
    _, d = check_conditional_independence(acc_iid_case("ab", 3)[0].family, acc)
    assert d == arr_channel("ab", 3)
    case = size_ewens_case(5)[0]
    _, d = check_conditional_independence(case.family, case.statistic)
    assert d == size_dagger_channel(5)
    fam = StateFamily(dist_grid("abc", 4), lambda w: w)
    rep, d = check_conditional_independence(fam, lambda x: x)
    assert rep.ok and d == identity("abc")


def test_conditionals_dependent_on_parameter():
    fam = StateFamily(dist_grid("abc", 4), lambda w: w)
    rep, d = check_conditional_independence(fam, lambda x: "ab" if x in "ab" else "c")
    assert not rep.ok and d is None


def test_conditionals_support_mismatch():
    fam = StateFamily([0, 1], lambda a: dirac("a") if a else Dist({"a": F(1, 2), "b": F(1, 2)}))
    with pytest.raises(SupportError):
        check_conditional_independence(fam, lambda x: x)


def test_split_idempotent(bundled):
    case, section, retraction, _ = bundled
    rep = check_via_split_idempotent(case.family, section, retraction)
    assert rep.ok
    # premises passing imply the ket conclusion
    assert check_ket(case).ok


def test_split_idempotent_identity():
    fam = StateFamily(dist_grid("ab", 4), lambda w: w)
    assert check_via_split_idempotent(fam, identity("ab"), identity("ab")).ok


def test_split_idempotent_needs_deterministic_retraction():
    fam = StateFamily([0], lambda a: dirac("a"))
    coin = Channel({"a": Dist({"a": F(1, 2), "b": F(1, 2)}), "b": dirac("b")})
    with pytest.raises(ValueError):
        check_via_split_idempotent(fam, identity("ab"), coin)


@pytest.mark.parametrize("name", CASES)
def test_run_case(name):
    rep = run_case(name, k=2)
    assert rep.ok, rep.render()
    assert any("sampled" in n for n in rep.notes)


def test_run_case_unknown():
    with pytest.raises(KeyError):
        run_case("nope")
