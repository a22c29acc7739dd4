import csv
import io
import json

import pytest

from fracbessel import harness
from fracbessel.errors import ConfigError, IoError
from fracbessel.harness import DEFAULT_GRIDS, Grid, IdentityReport, SuiteConfig


def one(identity, **kw):
    reports = harness.run_suite(SuiteConfig(identities=frozenset([identity]), **kw))
    assert len(reports) == 1
    return reports[0]


def test_sonine_first_grid_size():
    r = one("sonine_first")
    assert r.grid_size == 3
    assert r.n_validity_skips == 0
    assert r.status == "pass"


def test_tolerance_monotonicity():
    base = one("sonine_first")
    strict = one("sonine_first", tol=1e-30)
    assert strict.status == "fail"
    assert strict.max_rel_err == base.max_rel_err
    assert strict.mean_rel_err == base.mean_rel_err


def test_status_rule():
    r = one("stepping", n_random=0)
    assert (r.status == "pass") == (r.max_rel_err <= 1e-8 and r.grid_size > r.n_validity_skips)


def test_jy_weyl_raise_skips():
    grids = dict(DEFAULT_GRIDS, default=Grid(nu=(0.0, 1.0), mu=(-1.0, -0.75, -0.5, 0.25), x=(2.0,)))
    for kind in ("J", "Y"):
        r = one(f"weyl_raise_{kind}", grids=grids, n_random=0)
        # Re(mu + nu/2 + 3/4) <= 0 at (0, -1) and (0, -0.75)
        assert r.grid_size == 8
        assert r.n_validity_skips == 2
        assert r.status == "pass"


def test_all_skipped():
    grids = dict(DEFAULT_GRIDS, default=Grid(nu=(0.0,), mu=(-1.0,), x=(2.0,)))
    r = one("weyl_raise_J", grids=grids, n_random=0)
    assert r.status == "skipped"
    assert r.grid_size == r.n_validity_skips == 1


def test_random_augmentation():
    r0 = one("stepping", n_random=0)
    r4 = one("stepping", n_random=4)
    assert r4.grid_size == r0.grid_size + 4


def test_determinism():
    cfg = SuiteConfig(identities=frozenset(["stepping", "weyl_raise_K"]), seed=7, n_random=3)
    a = harness.format_report(harness.run_suite(cfg), "json")
    b = harness.format_report(harness.run_suite(cfg), "json")
    assert a == b


def test_seed_changes_random_points():
    a = one("stepping", seed=1, n_random=4)
    b = one("stepping", seed=2, n_random=4)
    assert a.mean_rel_err != b.mean_rel_err


def test_reports_sorted():
    ids = ["stepping", "besselcore_reflection", "poisson_J"]
    reports = harness.run_suite(SuiteConfig(identities=frozenset(ids), n_random=0))
    assert [r.identity_id for r in reports] == sorted(ids)


@pytest.mark.parametrize("kw", [
    dict(tol=0),
    dict(quad_tol=-1e-11),
    dict(output_format="xml"),
    dict(n_random=-1),
    dict(identities=frozenset()),
    dict(identities=frozenset(["no_such_identity"])),
    dict(identities=frozenset(["stepping"]), grids={"default": Grid()}),
])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        harness.run_suite(SuiteConfig(**kw))


def test_identity_ids_cover_families():
    ids = set(harness.identity_ids())
    for prefix in ("sonine", "weyl_raise", "riemann_lower", "weyl_lower", "exponent_addition", "inverse",
                   "lommel", "group_law", "stepping", "mehler_sonine", "hankel_loop", "poisson", "besselcore"):
        assert any(i.startswith(prefix) for i in ids), prefix
    for kind in ("H1", "H2", "J", "Y", "K"):
        assert f"weyl_raise_{kind}" in ids


def test_anchor_strings():
    for ident in harness.IDENTITIES.values():
        assert ident.anchor and "Eq" not in ident.anchor


# ------------------------------------------------------------------ emit

REPORT = IdentityReport("stepping", "stepping relations", 12, 3.5e-12, 1.25e-13, 2, "pass",
                        (("kind", "J"), ("nu", 0.5 + 0.25j), ("x", 2 + 0j)))


def test_emit_empty_json(tmp_path):
    path = tmp_path / "r.json"
    harness.emit_report([], "json", path)
    assert path.read_text() == "[]"


def test_emit_csv_one_row(tmp_path):
    path = tmp_path / "r.csv"
    harness.emit_report([REPORT], "csv", path)
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == list(harness.CSV_COLUMNS)
    assert len(rows) == 2
    assert rows[1][0] == "stepping" and rows[1][-1] == "pass"
    assert float(rows[1][3]) == REPORT.max_rel_err


def test_json_round_trip(tmp_path):
    path = tmp_path / "r.json"
    reports = [REPORT, IdentityReport("x", "y", 1, 0.0, 0.0, 1, "skipped", ())]
    harness.emit_report(reports, "json", path)
    assert harness.load_report(path) == reports
    assert json.loads(path.read_text())[0]["worst_point"]["nu"] == [0.5, 0.25]


def test_emit_byte_stable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    harness.emit_report([REPORT], "csv", a)
    harness.emit_report([REPORT], "csv", b)
    assert a.read_bytes() == b.read_bytes()


def test_emit_io_error(tmp_path):
    with pytest.raises(IoError):
        harness.emit_report([REPORT], "json", tmp_path / "missing" / "r.json")
    with pytest.raises(IoError):
        harness.load_report(tmp_path / "missing.json")


def test_rel_err():
    assert harness.rel_err(1.0, 1.0) == 0
    assert harness.rel_err(0.0, 0.0) == 0
    assert harness.rel_err(1.0, 2.0) == 0.5
    assert harness.rel_err(1e-3, 2e-3, scale=1.0) == pytest.approx(1e-3)
