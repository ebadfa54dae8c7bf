import json

import pytest

from common import settings as common_settings
from common.models.error_models import CheckFailure
from common.models.report_models import RunReport


def test_check_failure_message():
    assert CheckFailure(formula="ptof", n=3, p=5).message == "Identity ptof failed at (n=3, p=5)"
    assert CheckFailure(formula="period", n=12, detail="kernel[0]").message == "Identity period failed at (n=12): kernel[0]"


def test_report_keeps_the_first_failure():
    report = RunReport(command="verify")
    assert report.passed
    assert report.exit_code == 0

    report.fail(CheckFailure(formula="dptop2", n=2, p=2))
    report.fail(CheckFailure(formula="dptop2", n=2, p=3))

    assert report.status == "fail"
    assert report.exit_code == 1
    assert (report.failure.n, report.failure.p) == (2, 2)


@pytest.mark.parametrize("timing", [False, True])
def test_dump_json_timing_is_opt_in(monkeypatch, timing):
    monkeypatch.setattr(common_settings, "REPORT_TIMING", timing)
    report = RunReport(command="kernel", parameters={"weight": 12}, payload={"dim": 1}, elapsed_ms=5)

    dumped = json.loads(report.dump_json())

    assert ("elapsed_ms" in dumped) is timing
    assert dumped["payload"] == {"dim": 1}
    assert dumped["failure"] is None


def test_dump_json_is_sorted_and_stable():
    report = RunReport(command="relations", parameters={"weight": 16, "family": "all"})
    text = report.dump_json()
    assert text == report.dump_json()
    assert list(json.loads(text)) == sorted(json.loads(text))
