import pytest

from noninc.arcs import denniston_arc, nonincident_from_arc
from noninc.bounds import stinson_bound
from noninc.certificate import NonincidenceCertificate, verify_certificate
from noninc.errors import BudgetExhausted, PlaneMismatch, TooLarge
from noninc.gf import FieldTable
from noninc.plane import build_pg2, validate_imported
from noninc.search import SearchConfig, exact_f, greedy_heuristic, oracle_bruteforce, oracle_f

from conftest import fano_matrix

COLD = SearchConfig(warm_start=False)


def test_oracle_examples(fano, pg3):
    assert oracle_bruteforce(fano, 2) is True
    assert oracle_bruteforce(fano, 3) is False
    assert oracle_bruteforce(pg3, 3) is True
    assert oracle_bruteforce(pg3, 4) is False
    assert oracle_bruteforce(fano, 0) is True


def test_oracle_too_large(pg16):
    with pytest.raises(TooLarge):
        oracle_bruteforce(pg16, 10)


@pytest.mark.parametrize("cfg", [SearchConfig(), COLD], ids=["warm", "cold"])
@pytest.mark.parametrize("q,expected", [(2, 2), (3, 3), (4, 6)])
def test_exact_small(planes, q, expected, cfg):
    pl = planes[q]
    res = exact_f(pl, cfg)
    assert res.value == expected and res.status == "proven"
    assert res.certificate.s == expected
    assert res.certificate.provenance == "search"
    assert verify_certificate(pl, res.certificate)


@pytest.mark.parametrize("q", [2, 3])
def test_exact_matches_oracle(planes, q):
    pl = planes[q]
    assert exact_f(pl, COLD).value == oracle_f(pl)


def test_exact_on_imported_fano():
    pl = validate_imported(fano_matrix())
    res = exact_f(pl, COLD)
    assert res.value == 2 and verify_certificate(pl, res.certificate)
    assert res.certificate.plane_ref == pl.origin


def test_exact_pg5():
    pl = build_pg2(FieldTable(5, 1))
    res = exact_f(pl)
    assert res.status == "proven" and res.value == 7
    assert res.value <= stinson_bound(5)
    assert verify_certificate(pl, res.certificate)


@pytest.mark.slow
def test_exact_pg5_matches_oracle():
    pl = build_pg2(FieldTable(5, 1))
    assert oracle_bruteforce(pl, 7) is True
    assert oracle_bruteforce(pl, 8) is False


def test_exact_never_exceeds_bound(planes):
    for q, pl in planes.items():
        if q <= 4:
            assert exact_f(pl).value <= stinson_bound(q)


def test_budget_exhausted():
    pl = build_pg2(FieldTable(5, 1))
    with pytest.raises(BudgetExhausted) as exc:
        exact_f(pl, SearchConfig(budget=50))
    res = exc.value.result
    assert res.status == "budget_exhausted"
    assert res.value == res.certificate.s >= 1
    assert verify_certificate(pl, res.certificate)


def test_budget_exhausted_parallel():
    pl = build_pg2(FieldTable(5, 1))
    with pytest.raises(BudgetExhausted) as exc:
        exact_f(pl, SearchConfig(budget=200, workers=2))
    assert verify_certificate(pl, exc.value.result.certificate)


def test_seeded_incumbent(pg4):
    cert = nonincident_from_arc(denniston_arc(2, 1, field=pg4.field, plane=pg4))
    res = exact_f(pg4, SearchConfig(initial=cert, warm_start=False))
    # seeded at the bound: nothing left to search
    assert res.value == 6 and res.nodes == 0


def test_determinism_across_workers(pg4):
    one = exact_f(pg4, SearchConfig(warm_start=False, workers=1))
    two = exact_f(pg4, SearchConfig(warm_start=False, workers=2))
    assert one.certificate == two.certificate
    loose = exact_f(pg4, SearchConfig(warm_start=False, workers=2, deterministic=False))
    assert loose.value == one.value


def test_determinism_repeated(pg3):
    runs = {exact_f(pg3, COLD).certificate for _ in range(3)}
    assert len(runs) == 1


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(budget=0)
    with pytest.raises(ValueError):
        SearchConfig(workers=0)


# -- greedy ------------------------------------------------------------------------

def test_greedy_fano(fano):
    for seed in range(20):
        assert greedy_heuristic(fano, seed).s == 2


def test_greedy_pg4_floor(pg4):
    assert oracle_bruteforce(pg4, 4)
    for seed in range(20):
        cert = greedy_heuristic(pg4, seed)
        assert cert.s >= 4
        assert verify_certificate(pg4, cert)


def test_greedy_deterministic(pg16):
    assert greedy_heuristic(pg16, 3) == greedy_heuristic(pg16, 3)


@pytest.mark.slow
def test_greedy_pg16_sweep(pg16):
    best = 0
    for seed in range(100):
        cert = greedy_heuristic(pg16, seed)
        assert verify_certificate(pg16, cert)
        assert cert.s <= 52
        best = max(best, cert.s)
    assert best >= 40


# -- certificate verification ----------------------------------------------------

def test_verify_empty(fano, pg16):
    for pl in (fano, pg16):
        assert verify_certificate(pl, NonincidenceCertificate.make(pl, [], []))


def test_verify_pg16_arc(pg16):
    cert = nonincident_from_arc(denniston_arc(4, 2, field=pg16.field, plane=pg16))
    assert verify_certificate(pg16, cert)


def test_verify_mutation(pg4):
    cert = exact_f(pg4).certificate
    y = cert.Y[0]
    on_y = next(l for l in range(pg4.n) if pg4.incidence[y, l])
    bad = NonincidenceCertificate(cert.plane_ref, cert.Y, tuple(sorted(cert.M[1:] + (on_y,))), cert.s)
    assert verify_certificate(pg4, bad) is False


def test_verify_size_mismatch(pg4):
    cert = exact_f(pg4).certificate
    bad = NonincidenceCertificate(cert.plane_ref, cert.Y, cert.M, cert.s + 1)
    assert verify_certificate(pg4, bad) is False
    dup = NonincidenceCertificate(cert.plane_ref, cert.Y[:-1] + (cert.Y[0],), cert.M, cert.s)
    assert verify_certificate(pg4, dup) is False
    oob = NonincidenceCertificate(cert.plane_ref, cert.Y[:-1] + (99,), cert.M, cert.s)
    assert verify_certificate(pg4, oob) is False


def test_verify_plane_mismatch(pg3, pg4):
    cert = exact_f(pg4).certificate
    with pytest.raises(PlaneMismatch):
        verify_certificate(pg3, cert)


def test_verify_by_digest(pg4):
    cert = exact_f(pg4).certificate
    by_digest = NonincidenceCertificate("sha256:" + pg4.digest, cert.Y, cert.M, cert.s)
    assert verify_certificate(pg4, by_digest)
