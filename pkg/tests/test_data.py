import io

import numpy as np
import pytest

from ansps import Dataset, ParseError, dumps_libsvm, make_synthetic, parse_libsvm, write_libsvm


def _dense(ds):
    return ds.features.toarray()


def test_parse_basic_line():
    ds = parse_libsvm(["+1 1:0.5 3:2.0"])
    assert ds.n_samples == 1 and ds.n_features == 3
    np.testing.assert_array_equal(_dense(ds), [[0.5, 0.0, 2.0]])
    np.testing.assert_array_equal(ds.labels, [1.0])


def test_label_encodings():
    zero_one = parse_libsvm(["0 1:1", "1 1:2"])
    np.testing.assert_array_equal(zero_one.labels, [-1.0, 1.0])
    one_two = parse_libsvm(["1 1:1", "2 1:2"])
    np.testing.assert_array_equal(one_two.labels, [1.0, -1.0])
    pm = parse_libsvm(["-1 1:1", "+1 1:2"])
    np.testing.assert_array_equal(pm.labels, [-1.0, 1.0])


def test_mixed_label_set_rejected():
    with pytest.raises(ParseError, match="label set"):
        parse_libsvm(["-1 1:1", "0 1:2", "1 1:3"])


def test_unsorted_indices_accepted_and_sorted():
    ds = parse_libsvm(["+1 3:3.0 1:1.0 2:2.0"])
    np.testing.assert_array_equal(_dense(ds), [[1.0, 2.0, 3.0]])
    idx = ds.features.indices
    assert list(idx) == sorted(idx)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_libsvm(["+1 1:1.0", "+1 1:x"])
    with pytest.raises(ParseError, match="line 1"):
        parse_libsvm(["abc 1:1.0"])
    with pytest.raises(ParseError, match="line 3"):
        parse_libsvm(["+1 1:1", "-1 2:1", "+1 17"])
    with pytest.raises(ParseError, match="line 1.*1-based"):
        parse_libsvm(["+1 0:1.0"])
    with pytest.raises(ParseError, match="line 1.*duplicate"):
        parse_libsvm(["+1 2:1.0 2:3.0"])


def test_empty_input_rejected():
    with pytest.raises(ParseError, match="no data"):
        parse_libsvm([])
    with pytest.raises(ParseError, match="no data"):
        parse_libsvm(["", "   ", "# comment only"])


def test_feature_dimension_override():
    ds = parse_libsvm(["+1 2:1.0"], n_features=5)
    assert ds.n_features == 5
    with pytest.raises(ParseError, match="exceeds"):
        parse_libsvm(["+1 9:1.0"], n_features=5)


def test_blank_lines_and_comments_skipped():
    ds = parse_libsvm(["", "# header", "+1 1:1.0", "", "-1 2:2.0"])
    assert ds.n_samples == 2


def test_round_trip_exact(tmp_path):
    lines = [
        "+1 1:0.1 3:-2.5e-3",
        "-1 2:10000000000.0",
        "+1 1:0.30000000000000004 2:1e-17",
        "-1 3:3.0",
        "+1 2:-0.7071067811865476",
    ]
    original = parse_libsvm(lines)
    path = tmp_path / "data.txt"
    write_libsvm(original, path)
    reread = parse_libsvm(path)
    assert reread.n_features == original.n_features
    np.testing.assert_array_equal(reread.labels, original.labels)
    np.testing.assert_array_equal(_dense(reread), _dense(original))
    # and the text itself is a fixed point
    assert dumps_libsvm(reread) == dumps_libsvm(original)


def test_parse_from_stream():
    ds = parse_libsvm(io.StringIO("+1 1:1.0\n-1 1:-1.0\n"))
    assert ds.n_samples == 2


def test_dataset_validation():
    with pytest.raises(ValueError, match="labels"):
        Dataset(np.eye(2), np.array([1.0, 3.0]))
    with pytest.raises(ValueError, match="rows but"):
        Dataset(np.eye(2), np.array([1.0]))
    with pytest.raises(ValueError, match="no rows"):
        Dataset(np.zeros((0, 2)), np.zeros(0))


def test_synthetic_shapes_and_determinism():
    a = make_synthetic(6, 40, separation=2.0, seed=123)
    b = make_synthetic(6, 40, separation=2.0, seed=123)
    assert a.n_samples == 40 and a.n_features == 6
    np.testing.assert_array_equal(a.features.toarray(), b.features.toarray())
    np.testing.assert_array_equal(a.labels, b.labels)
    c = make_synthetic(6, 40, separation=2.0, seed=124)
    assert not np.array_equal(a.labels, c.labels) or not np.array_equal(
        a.features.toarray(), c.features.toarray()
    )


def test_synthetic_infinite_separation_is_separable():
    # replay the documented recipe: the planted normal is the first draw
    ds = make_synthetic(5, 300, separation=np.inf, seed=42)
    rng = np.random.default_rng(42)
    u = rng.standard_normal(5)
    u /= np.linalg.norm(u)
    margins = ds.labels * (ds.features.toarray() @ u)
    assert (margins >= 0).all()


def test_synthetic_noise_increases_as_separation_drops():
    def flip_rate(sep):
        ds = make_synthetic(4, 4000, separation=sep, seed=9)
        rng = np.random.default_rng(9)
        u = rng.standard_normal(4)
        u /= np.linalg.norm(u)
        clean = np.where(ds.features.toarray() @ u >= 0, 1.0, -1.0)
        return (clean != ds.labels).mean()

    assert flip_rate(0.5) > flip_rate(2.0) > flip_rate(8.0)
    assert flip_rate(8.0) >= 0.0


def test_synthetic_validation():
    with pytest.raises(ValueError):
        make_synthetic(0, 10)
    with pytest.raises(ValueError):
        make_synthetic(3, 10, separation=-1.0)
