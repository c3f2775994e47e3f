from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orthoforms import classical as cl
from orthoforms.fixtures import decode, dumps, encode, loads, read_fixture, write_fixture
from orthoforms.jacobi import phi_basic
from orthoforms.qseries import QSeries
from orthoforms.report import VerifyReport
from orthoforms.vgs import build_generators

small = st.fractions(min_value=-99, max_value=99, max_denominator=9)


@given(st.lists(small, min_size=1, max_size=8))
def test_scalar_series_round_trip(xs):
    f = QSeries.from_list(xs, prec=len(xs))
    text = dumps(f)
    assert loads(text) == f
    assert dumps(loads(text)) == text


def test_jacobi_and_fourier_jacobi_round_trip(tmp_path):
    objs = {"phi0": phi_basic("0", 4),
            "chi10": build_generators(1, 3, 3, with_roots=False, with_eisenstein=False).chi[10]}
    for name, obj in objs.items():
        path = write_fixture(tmp_path, name, obj)
        back = read_fixture(tmp_path, name)
        assert path.read_text() == dumps(back) + "\n"


def test_report_round_trip():
    rep = VerifyReport("demo")
    rep.add("identity", True, order="q<=2", C=Fraction(12))
    rep.add("other", False, discrepancy="q^1 differs")
    rep.note("one note")
    back = decode(encode(rep))
    assert back.to_dict() == rep.to_dict()
    assert back.constant("C") == "12"


def test_unknown_kind_and_type():
    with pytest.raises(ValueError):
        decode({"kind": "matrix", "data": {}})
    with pytest.raises(TypeError):
        encode(cl)


def _golden_module():
    import importlib.util
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "scripts" / "make_fixtures.py"
    spec = importlib.util.spec_from_file_location("make_fixtures", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


GOLDEN = _golden_module()


@pytest.mark.parametrize("name", sorted(GOLDEN.GOLDEN))
def test_golden_expansions_are_reproduced(name):
    stored = (GOLDEN.DEFAULT_DIR / f"{name}.json").read_text()
    assert dumps(GOLDEN.build(name)) + "\n" == stored


def test_stale_format_version_is_rejected():
    d = encode(cl.delta(3))
    assert d["version"] == 1
    d["version"] = 0
    with pytest.raises(ValueError):
        decode(d)
