#!/usr/bin/env python3
"""
预言机线路测试
"""

import time

import numpy as np
import pytest

import oracle
from oracle import (
    CardRecord, fig1_placements, fig2_input, fig2_placements, fig2_target_index, oracle_readout,
    quantum_informant, run_fig1_oracle, run_fig2_equivalent, single_card_identity,
    single_card_trace, verify_triviality
)
from qstate import (
    basis_state, kron_apply_reference, marginal_distribution, measure_all_distribution,
    overlap, states_equal
)

S = 1.0 / np.sqrt(2.0)
ALL_RECORDS = CardRecord.all()


def test_card_record_indexing():
    assert len(ALL_RECORDS) == 8
    assert [r.index for r in ALL_RECORDS] == list(range(8))
    assert CardRecord((1, 0, 1)).index == 5
    assert CardRecord.from_index(6).r == (1, 1, 0)
    assert str(CardRecord((0, 1, 1))) == '011'


@pytest.mark.parametrize("bits", [(0, 1), (0, 1, 2), (0, 0, 0, 0)])
def test_card_record_rejects_bad_bits(bits):
    with pytest.raises(ValueError):
        CardRecord(bits)


@pytest.mark.parametrize("bits", [(0, 0, 0), (1, 1, 1), (1, 0, 1)])
def test_fig1_outputs_record(bits):
    record = CardRecord(bits)
    out = run_fig1_oracle(record)
    assert out.num_qubits == 3
    assert states_equal(out, basis_state(3, record.index), 1e-12)


@pytest.mark.parametrize("bits", [(0, 0, 0), (1, 1, 1), (0, 1, 0)])
def test_fig2_outputs_record_twice(bits):
    record = CardRecord(bits)
    out = run_fig2_equivalent(record)
    assert out.num_qubits == 6
    target = basis_state(6, record.index * 8 + record.index)
    assert states_equal(out, target, 1e-12)
    ov = overlap(target, out)
    assert abs(ov.imag) <= 1e-12
    assert abs(ov.real - 1.0) <= 1e-12


def test_fig2_matches_reference_path():
    for record in ALL_RECORDS:
        fast = run_fig2_equivalent(record)
        ref = kron_apply_reference(fig2_input(record), fig2_placements())
        assert states_equal(fast, ref, 1e-12)

        fast1 = run_fig1_oracle(record)
        ref1 = kron_apply_reference(basis_state(3, 0), fig1_placements(record))
        assert states_equal(fast1, ref1, 1e-12)


def test_single_card_identity():
    assert states_equal(single_card_identity(0), basis_state(2, 0), 1e-12)
    assert states_equal(single_card_identity(1), basis_state(2, 3), 1e-12)
    for r_k in (0, 1):
        target = basis_state(2, 3 * r_k)
        ov = overlap(target, single_card_identity(r_k))
        assert abs(ov - 1.0) <= 1e-12


def test_single_card_intermediate_states():
    for r_k in (0, 1):
        trace = single_card_trace(r_k)
        # (|0> + |1>)/sqrt2 x |r_k>
        expected = np.zeros(4)
        expected[r_k] = S
        expected[2 + r_k] = S
        np.testing.assert_allclose(trace.after_h.amplitudes, expected, atol=1e-12)

    # r_k = 1 时相位踢回：(|01> - |11>)/sqrt2
    after_v = single_card_trace(1).after_v
    np.testing.assert_allclose(after_v.amplitudes, [0, S, 0, -S], atol=1e-12)
    # r_k = 0 时所有相位为 +1
    np.testing.assert_allclose(single_card_trace(0).after_v.amplitudes, [S, 0, S, 0], atol=1e-12)


def test_single_card_rejects_non_bits():
    with pytest.raises(ValueError):
        single_card_identity(2)


def test_fig1_is_deterministic():
    for record in ALL_RECORDS:
        dist = measure_all_distribution(run_fig1_oracle(record))
        support = [idx for idx, p in dist.items() if p > 1e-24]
        assert support == [record.index]
        assert abs(dist[record.index] - 1.0) <= 1e-9


def test_fig2_marginals_match_fig1():
    for record in ALL_RECORDS:
        out = run_fig2_equivalent(record)
        query = marginal_distribution(out, [0, 1, 2])
        data = marginal_distribution(out, [3, 4, 5])
        fig1 = measure_all_distribution(run_fig1_oracle(record))

        assert max(query, key=query.get) == max(fig1, key=fig1.get) == record.index
        assert query[record.index] == pytest.approx(1.0, abs=1e-9)
        # 数据比特保持 |r> 不变
        assert data[record.index] == pytest.approx(1.0, abs=1e-9)


def test_fig2_target_index():
    assert fig2_target_index(CardRecord((0, 0, 0))) == 0
    assert fig2_target_index(CardRecord((1, 1, 1))) == 63
    assert fig2_target_index(CardRecord((1, 0, 0))) == 36


def test_verify_triviality_passes():
    start = time.perf_counter()
    report = verify_triviality()
    elapsed = time.perf_counter() - start

    assert report.passed
    assert len(report.cases) == 8
    assert report.num_passed == 8
    assert elapsed < 1.0

    for case in report.cases:
        assert case.passed
        assert case.max_off_target < 1e-12
        assert case.reference_max_diff is not None and case.reference_max_diff <= 1e-12
        assert abs(case.overlap_fig1 - 1.0) <= 1e-12
        assert abs(case.overlap_fig2 - 1.0) <= 1e-12

    first, last = report.cases[0], report.cases[-1]
    assert first.record.r == (0, 0, 0)
    assert (first.fig1_index, first.fig2_index) == (0, 0)
    assert last.record.r == (1, 1, 1)
    assert (last.fig1_index, last.fig2_index) == (7, 63)


def test_verify_triviality_without_cross_check():
    report = verify_triviality(cross_check=False)
    assert report.passed
    assert all(case.reference_max_diff is None for case in report.cases)


def test_verify_triviality_reports_failure(monkeypatch):
    # 把预言机换成总是输出 |000> 的错误实现
    monkeypatch.setattr(oracle, 'run_fig1_oracle', lambda record: basis_state(3, 0))
    report = verify_triviality()
    assert not report.passed
    assert report.cases[0].passed
    assert report.num_passed == 1
    assert not report.cases[7].passed


def test_oracle_readout_is_classical_record():
    for record in ALL_RECORDS:
        assert oracle_readout(record) == record
        assert quantum_informant(record.r) == record.r
