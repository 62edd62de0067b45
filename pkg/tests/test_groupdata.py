import re
from fractions import Fraction
from pathlib import Path

import pytest

from e6baw.cyclopoly import CycloProduct, ValuationContext, evaluate, parse
from e6baw.degrees import e6_order
from e6baw.groupdata import (
    DataParseError,
    MissingDataError,
    GroupRecord,
    default_path,
    dz_count,
    load,
    load_default,
    nu_torus_check,
    parse_text,
    render_text,
    validate,
)


@pytest.fixture(scope="module")
def ds():
    return load_default()


def squash(text: str) -> str:
    return re.sub(r"\s+", "", text)


@pytest.mark.parametrize("name", ["groups.dat", "e6_unipotent_degrees.dat"])
def test_shipped_files_round_trip(name):
    path = default_path(name)
    text = path.read_text()
    assert squash(render_text(load(path))) == squash(text)


def test_shipped_data_has_no_violations(ds):
    assert validate(ds) == []
    assert len(ds.e6) == 30
    assert len(ds.radicals) == 22


def test_referential_integrity(ds):
    for r in ds.radicals.values():
        if r.ncq:
            assert r.ncq in ds.groups
    for p in ds.pairs.values():
        assert p.weyl in ds.groups


@pytest.mark.parametrize("name", ["T1", "T2", "T3", "T4"])
@pytest.mark.parametrize("eps", (1, -1))
def test_tori_divide_e6_order(ds, name, eps):
    q = e6_order(eps) / ds.tori[name].order(eps)
    assert q.qexp >= 0 and all(m >= 0 for _, m in q.factors)


def test_torus_orders_match_product_forms(ds):
    for q0 in (2, 3, 5):
        for eps in (1, -1):
            t1 = (q0 + eps) ** 2 * (q0**2 - 1) ** 2
            t2 = (q0**2 + eps * q0 + 1) ** 3
            t3 = ((q0**2 + 1) * (q0 - eps)) ** 2
            t4 = (q0**2 - eps * q0 + 1) * (q0**4 + q0**2 + 1)
            got = [evaluate(ds.tori[f"T{i}"].order(eps), q0) for i in range(1, 5)]
            assert got == [t1, t2, t3, t4]


def test_t2_carries_phi3_cubed(ds):
    assert ds.tori["T2"].order(1).mult(3) == 3
    assert e6_order(1).mult(3) == 3


def test_nu_torus_check_examples(ds):
    assert nu_torus_check(ds.tori["T1"], 1, ValuationContext(7, 2))
    assert nu_torus_check(ds.tori["T3"], 1, ValuationContext(13, 4))
    assert not nu_torus_check(ds.tori["T2"], 1, ValuationContext(13, 4))


def test_dz_count_examples(ds):
    assert dz_count(ds.group("10_eps"), 5) == 0
    assert dz_count(ds.group("4x2"), 5) == 8
    assert dz_count(ds.group("SL2(5)x2"), 5) == 2
    assert dz_count(ds.group("PSp4(3).2"), 5) == 15
    assert dz_count(ds.group("PSp4(3).2"), 7) == 25
    assert dz_count(ds.group("S3"), 5) == 3


def test_dz_count_missing_entry():
    g = GroupRecord("X", order=120, nirr=9)
    with pytest.raises(MissingDataError):
        dz_count(g, 5)
    assert dz_count(g, 7) == 9


def test_tampered_dz_reports_violation(ds):
    text = default_path("groups.dat").read_text().replace("dz[5] = 15", "dz[5] = 40")
    violations = validate(parse_text(text))
    assert [(v.label, v.rule) for v in violations] == [("PSp4(3).2", "dz_exceeds_nirr")]


@pytest.mark.parametrize(
    "snippet,rule",
    [
        ("group A\norder = 10\nnirr = 10\ndz[5] = 3\nabelian = true\n", "abelian_dz_nonzero"),
        ("group A\norder = 6\nnirr = 3\ndz[5] = 2\nabelian = false\n", "coprime_dz_mismatch"),
        ("group A\norder = 6\nnirr = 3\ndz[4] = 3\nabelian = false\n", "dz_not_prime"),
        ("radical R1\nncq = Nope\nliepart = torus\n", "unresolved_ncq"),
        ("radical R1\nsylow_in_rc = scan\n", "missing_liepart"),
        ("pair P\ncase = q-e\neps = any\nweyl = Nope\nprincipal = true\n", "unresolved_weyl"),
        ("torus T9\norder(+1) = PHI(7)\n", "torus_not_dividing"),
        ("e6char x\ndegree = PHI(3)^-1\n", "e6_not_polynomial"),
        ("e6char x\ndegree = 1/7*q\n", "e6_nonintegral"),
    ],
)
def test_validation_rules(snippet, rule):
    assert rule in {v.rule for v in validate(parse_text(snippet))}


def test_two_principal_pairs_rejected():
    text = "".join(
        f"pair P{i}\ncase = q2+1\neps = any\nweyl = C4\nprincipal = true\n\n" for i in range(2)
    ) + "group C4\norder = 4\nnirr = 4\nabelian = true\n"
    assert "multiple_principal" in {v.rule for v in validate(parse_text(text))}


@pytest.mark.parametrize(
    "text",
    [
        "group A\ncolour = red\n",
        "nirr = 3\n",
        "group A\nthis is not a line\n",
        "group A\nnirr = three\n",
        "group A\nnirr = 1\nnirr = 2\n",
        "group A\n\ngroup A\n",
        "radical X1\n",
        "radical R1\nldomain = ge3\n",
        "radical R1\nsylow_in_rc = maybe\n",
        "pair P\ncase = q-1\n",
        "e6char x\n",
        "e6char x\ndegree = PHI(\n",
        "radical R1\nliepart = B,3,eps\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(DataParseError):
        parse_text(text)


def test_comments_and_sugar_accepted():
    ds = parse_text("# header\ntorus T1\norder(+1) = (q+1)^2*(q^2-1)^2\n")
    assert ds.tori["T1"].order(1) == parse("PHI(1)^2*PHI(2)^4")


def test_missing_file(tmp_path):
    with pytest.raises(DataParseError):
        load(tmp_path / "nope.dat")


def test_env_var_selects_data(tmp_path, monkeypatch):
    p = tmp_path / "g.dat"
    p.write_text("group S3\norder = 6\nnirr = 3\nabelian = false\n")
    monkeypatch.setenv("E6BAW_DATA", str(p))
    ds = load_default(with_e6=False)
    assert list(ds.groups) == ["S3"]


def test_liepart_twist_rules(ds):
    assert ds.radicals["R1"].liepart.twist(-1) == -1
    assert ds.radicals["R6"].liepart.twist(-1) == 1
    assert ds.radicals["R16"].liepart.family == "torus"
    assert [r.label for r in ds.radicals_sorted() if not r.in_domain(7)] == [f"R{i}" for i in range(17, 23)]
