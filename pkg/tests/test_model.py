import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdaub.closed_form import preset
from cdaub.errors import BadInput
from cdaub.model import SineTerm, SumOfSines, canonicalize, model_eval, wrap_phase

DB4_WAVELET_ROWS = [
    (0.3452, 4.586, -2.316),
    (0.2783, 3.460, 1.413),
    (0.3015, 5.770, -0.373),
    (0.2129, 6.960, -4.943),
    (0.1293, 2.414, -1.794),
    (0.1120, 8.161, -3.225),
    (0.0295, 9.366, -7.567),
    (0.0223, 1.372, 1.102),
]

term = st.tuples(st.floats(-2, 2), st.floats(-12, 12), st.floats(-40, 40))
models = st.lists(term, min_size=1, max_size=6).map(lambda ts: SumOfSines(tuple(ts), 7.0))


def test_single_term():
    assert model_eval(SumOfSines(((1.0, math.pi, 0.0),), 1.0), 0.5) == pytest.approx(1.0, abs=1e-15)


def test_db4_at_origin_matches_direct_summation():
    direct = 0.0
    for a, b, c in DB4_WAVELET_ROWS:
        direct += a * math.sin(c)
    assert model_eval(preset("db4", "wavelet"), 0.0) == pytest.approx(direct, abs=1e-15)
    assert direct == pytest.approx(-0.006629361481987048, abs=1e-15)


def test_zero_at_common_nodes():
    m = SumOfSines(((0.3, 2.0, 0.0), (1.7, 4.0, math.pi)), 3.0)
    t = math.pi / 2  # b*t + c in {pi, 3pi}
    assert abs(model_eval(m, t)) < 1e-14


def test_vectorized_eval_matches_scalar():
    m = preset("db6", "scaling")
    t = np.linspace(-2, 13, 31)
    np.testing.assert_allclose(model_eval(m, t), [model_eval(m, x) for x in t], rtol=0, atol=1e-14)


@pytest.mark.parametrize("K", [0, 17])
def test_term_count_bounds(K):
    with pytest.raises(BadInput):
        SumOfSines(tuple((1.0, 1.0, 0.0) for _ in range(K)), 1.0)


def test_support_positive():
    with pytest.raises(BadInput):
        SumOfSines(((1.0, 1.0, 0.0),), 0.0)


def test_wrap_phase_range():
    assert wrap_phase(math.pi) == math.pi
    assert wrap_phase(-math.pi) == math.pi
    assert wrap_phase(-17.48) == pytest.approx(-17.48 + 6 * math.pi)
    for c in np.linspace(-40, 40, 1001):
        w = wrap_phase(c)
        assert -math.pi < w <= math.pi
        assert math.isclose(math.sin(w), math.sin(c), abs_tol=1e-12)


@given(models)
def test_canonicalize_preserves_values(m):
    cm = canonicalize(m)
    t = np.linspace(-1, 8, 97)
    np.testing.assert_allclose(model_eval(cm, t), model_eval(m, t), rtol=0, atol=1e-12)
    assert np.all(cm.b >= 0) and np.all(cm.a >= 0)
    assert np.all(np.diff(cm.b) >= 0)
    assert np.all((cm.c > -math.pi) & (cm.c <= math.pi))


@given(models)
def test_canonicalize_idempotent(m):
    once = canonicalize(m)
    assert canonicalize(once) == once


def test_json_round_trip_is_exact():
    m = SumOfSines(((0.1 + 0.2, math.pi, -1 / 3), (1e-300, 5.0, 2.0)), 7.0, family="db4", kind="wavelet")
    back = SumOfSines.from_json(m.to_json())
    assert back == m
    assert (back.family, back.kind) == ("db4", "wavelet")


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"family": "x", "kind": "wavelet", "support": 1}',
        '{"family": "x", "kind": "wavelet", "support": 1, "terms": [{"a": 1, "b": 2}]}',
        '{"family": "x", "kind": "other", "support": 1, "terms": [{"a": 1, "b": 2, "c": 0}]}',
        '{"family": "x", "kind": "wavelet", "support": 1, "terms": []}',
    ],
)
def test_json_malformed(text):
    with pytest.raises(BadInput):
        SumOfSines.from_json(text)


def test_params_round_trip():
    m = preset("db8", "wavelet")
    assert m.with_params(m.params()) == m
    assert isinstance(m.terms[0], SineTerm)
