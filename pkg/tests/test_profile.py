import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from intspace.errors import DomainError, IngestionError
from intspace.profile import Dataset, compute_profile, load_csv, planted_gap_dataset


@pytest.fixture
def write(tmp_path):
    def _write(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


class TestLoadCsv:
    def test_plain(self, write):
        assert load_csv(write("1.0\n2.0\n3.0\n")).values == (1.0, 2.0, 3.0)

    def test_header_skipped(self, write):
        assert load_csv(write("depth\n-1.5\n-2.5\n")).values == (-1.5, -2.5)

    def test_bad_value_names_line(self, write):
        with pytest.raises(IngestionError, match="line 3") as info:
            load_csv(write("1\n2\nabc\n"))
        assert info.value.line == 3

    def test_column_by_index_and_name(self, write):
        path = write("t,depth\n0,-3\n1,-1\n2,-2\n")
        assert load_csv(path, 1).values == (-3.0, -1.0, -2.0)
        assert load_csv(path, "depth").values == (-3.0, -1.0, -2.0)
        with pytest.raises(IngestionError):
            load_csv(path, "magnitude")

    def test_missing_column(self, write):
        with pytest.raises(IngestionError, match="line 3"):
            load_csv(write("1,2\n3,4\n5\n"), 1)

    @pytest.mark.parametrize("token", ["nan", "inf", "-inf"])
    def test_non_finite(self, write, token):
        with pytest.raises(IngestionError, match="line 2"):
            load_csv(write(f"1\n{token}\n"))

    def test_empty(self, write):
        with pytest.raises(IngestionError):
            load_csv(write(""))
        with pytest.raises(IngestionError):
            load_csv(write("depth\n"))

    def test_unreadable(self, tmp_path):
        with pytest.raises(IngestionError):
            load_csv(tmp_path / "absent.csv")

    def test_blank_lines_keep_numbering(self, write):
        with pytest.raises(IngestionError, match="line 4"):
            load_csv(write("1\n\n2\nx\n"))


class TestProfile:
    def test_example(self):
        prof = compute_profile(Dataset((0, 1, 3, 6)), [1, 2])
        assert prof.pairs(1) == [(2, 1.0), (3, 2.0), (4, 3.0)]
        assert prof.pairs(2) == [(3, 3.0), (4, 5.0)]

    def test_sorts_input(self):
        prof = compute_profile([6, 0, 3, 1], [1])
        np.testing.assert_array_equal(prof.spacings[1], [1, 2, 3])

    def test_constant(self):
        prof = compute_profile([2.5] * 10, [1, 3])
        assert np.all(prof.spacings[1] == 0) and np.all(prof.spacings[3] == 0)

    @given(st.lists(st.floats(-1e3, 1e3), min_size=12, max_size=80), st.integers(2, 10))
    def test_running_sum(self, values, w):
        prof = compute_profile(values, [1, w])
        single = prof.spacings[1]
        running = np.array([single[k:k + w].sum() for k in range(len(single) - w + 1)])
        np.testing.assert_allclose(prof.spacings[w], running, rtol=1e-12, atol=1e-9)

    def test_index_range(self):
        prof = compute_profile(np.arange(20.0), [1, 5])
        np.testing.assert_array_equal(prof.indices(5), np.arange(6, 21))

    def test_width_errors(self):
        with pytest.raises(DomainError):
            compute_profile([1, 2, 3, 4], [4])
        with pytest.raises(DomainError):
            compute_profile([1, 2, 3, 4], [0])
        with pytest.raises(DomainError):
            Dataset((1.0, float("nan")))

    def test_bimodal_gap_is_max(self):
        rng = np.random.default_rng(0)
        values = np.concatenate([rng.normal(-10, 1, 60), rng.normal(10, 1, 60)])
        prof = compute_profile(values, [1, 3])
        for w in (1, 3):
            i = prof.argmax_index(w)
            assert i - w < 61 <= i

    def test_csv(self):
        text = compute_profile([0, 1, 3, 6], [1, 2]).to_csv()
        assert text == "w,i,spacing\n1,2,1.0\n1,3,2.0\n1,4,3.0\n2,3,3.0\n2,4,5.0\n"


class TestPlantedGaps:
    def test_gap_recovered_and_flattens(self):
        planted = planted_gap_dataset()
        prof = compute_profile(planted.dataset, [1, 8, 32])
        assert prof.argmax_index(1) == planted.gap_indices[0]
        assert planted.interval_covers_gap(prof.argmax_index(8), 8)
        assert prof.peak_to_median(32) < 1.5

    def test_order_preserved(self):
        planted = planted_gap_dataset(n=50, gaps=((10, 3.0), (30, 5.0)), seed=3)
        vals = np.array(planted.dataset.values)
        assert np.all(np.diff(vals) > 0)
        assert vals[9] - vals[8] > 3.0 and vals[29] - vals[28] > 5.0

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            planted_gap_dataset(jitter=1.0)
        with pytest.raises(DomainError):
            planted_gap_dataset(n=10, gaps=((11, 1.0),))
