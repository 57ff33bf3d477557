import io

import numpy as np
import pytest

from ansps import CSV_HEADER, RunTrace, TraceRow


def _sample_rows():
    return [
        TraceRow(0, 300, 1.0, 1.0, 0.6279, 789, 1.0123, 0.9991),
        TraceRow(1, 489, 0.1 + 0.2, 0.05, 1e-17, 2076, 0.98, None),
        TraceRow(2, 538, None, 0.05, None, 2614, 0.97, 0.9701),
    ]


def test_header_and_cell_layout():
    text = RunTrace(rows=_sample_rows()).to_csv_text()
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER == "k,N_k,alpha_k,zeta_k,theta_k,fev_cum,f_saa,f_full"
    assert lines[1].split(",")[0] == "0"
    assert lines[2].split(",")[7] == ""  # missing f_full is an empty cell
    assert lines[3].split(",")[2] == ""  # terminal row has no step size
    assert len(lines) == 4


def test_floats_survive_bit_exact():
    trace = RunTrace(rows=_sample_rows())
    back = RunTrace.from_csv(io.StringIO(trace.to_csv_text()))
    assert len(back) == len(trace)
    for a, b in zip(trace, back):
        assert a == b  # dataclass equality: every field, incl. 0.1+0.2


def test_file_round_trip(tmp_path):
    trace = RunTrace(rows=_sample_rows(), x_final=np.ones(3), n_total=600)
    path = tmp_path / "trace.csv"
    trace.write_csv(path)
    back = RunTrace.from_csv(path)
    assert back.rows == trace.rows
    assert back.x_final is None and back.n_total is None  # not stored in the file
    assert back.final_row == trace.rows[-1]


def test_from_csv_rejects_bad_shapes():
    with pytest.raises(ValueError, match="header"):
        RunTrace.from_csv(io.StringIO("k,N_k\n"))
    with pytest.raises(ValueError, match="8 fields"):
        RunTrace.from_csv(io.StringIO(CSV_HEADER + "\n1,2,3\n"))
