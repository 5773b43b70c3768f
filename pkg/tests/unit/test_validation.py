import json

from cvstab.code import builtin_names
from cvstab.validation import overall_exit_code, summarize

THREE_MODE_Q = {
    "description": "Three-mode position code",
    "source": "test catalog",
    "n": 3,
    "rows": ["0 0 0 | 1 -1 0", "0 0 0 | 0 1 -1"],
    "logicals": [["1 1 1 | 0 0 0", "0 0 0 | 1 0 0"]],
}

CONJUGATE_PAIR = {
    "description": "q and p on one mode",
    "source": "test catalog",
    "n": 1,
    "rows": ["1 | 0", "0 | 1"],
}


def write_catalog(tmp_path, entries):
    target = tmp_path / "codes.json"
    target.write_text(json.dumps(entries))
    return str(target)


class TestCatalogValidator:
    """Test suite for the catalog self-check"""

    def test_packaged_catalog_is_healthy(self):
        """Test that every packaged builtin passes every check"""
        results = summarize()
        assert results['overall_status'] == 'HEALTHY'
        assert set(results['codes']) == set(builtin_names())
        assert overall_exit_code(results) == 0
        for info in results['codes'].values():
            assert all(check['ok'] for check in info['checks'].values())

    def test_printed_logicals_are_checked(self):
        """Test that a code with printed logicals gets the extra check"""
        checks = summarize()['codes']['three-mode-q']['checks']
        assert checks['printed_logicals']['ok']
        assert checks['complement_dimension']['message'] == "dim W^omega = 4 (2n - k = 4)"

    def test_one_bad_entry_degrades(self, tmp_path):
        """Test that a non-isotropic entry is reported without hiding the good one"""
        results = summarize(write_catalog(tmp_path, {"good": THREE_MODE_Q, "pair": CONJUGATE_PAIR}))
        assert results['overall_status'] == 'DEGRADED'
        assert results['codes']['good']['healthy']
        bad = results['codes']['pair']
        assert not bad['healthy']
        assert not bad['checks']['load']['ok']
        assert "NonIsotropic(1,2,1)" in bad['checks']['load']['message']
        assert results['issues'] == ["pair is not healthy"]
        assert overall_exit_code(results) == 1

    def test_all_bad_is_unhealthy(self, tmp_path):
        """Test that a catalog with no loadable code is unhealthy"""
        results = summarize(write_catalog(tmp_path, {"pair": CONJUGATE_PAIR}))
        assert results['overall_status'] == 'UNHEALTHY'
        assert overall_exit_code(results) == 1
