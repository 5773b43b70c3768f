#!/usr/bin/env python3
"""
Fidelity checks for the builtin code catalog
"""

import logging
from typing import Dict, List, Optional, Tuple

from cvstab import config
from cvstab.code import (
    StabilizerCode,
    builtin,
    builtin_entry,
    builtin_names,
    check_logical_basis,
    logical_basis,
)
from cvstab.console import print_error, print_status, print_success, print_warning
from cvstab.errors import CvstabError
from cvstab.symplectic import first_noncommuting_pair, gram_matrix, standard_gram, symplectic_form

logger = logging.getLogger(__name__)


class CatalogValidator:
    def __init__(self, catalog_path: str = config.CATALOG_PATH, quiet: bool = False):
        self.catalog_path = catalog_path
        self.quiet = quiet
        self.validation_results = {
            'codes': {},
            'overall_status': 'UNKNOWN',
        }

    def _say(self, printer, message: str):
        if not self.quiet:
            printer(message)

    def validate_all(self) -> Dict:
        """Run all validation checks"""
        self._say(print_status, f"Validating builtin catalog {self.catalog_path}")
        for name in builtin_names(self.catalog_path):
            self.validation_results['codes'][name] = self.validate_code(name)
        self.generate_overall_status()
        return self.validation_results

    def validate_code(self, name: str) -> Dict:
        checks: Dict[str, Tuple[bool, str]] = {}
        try:
            code, basis = builtin(name, self.catalog_path)
        except CvstabError as e:
            self._say(print_error, f"{name}: {e}")
            return {'healthy': False, 'checks': {'load': {'ok': False, 'message': str(e)}}}

        checks['isotropic'] = self.check_isotropic(code)
        checks['complement_dimension'] = self.check_complement_dimension(code)
        checks['derived_basis'] = self.check_derived_basis(code)
        if not basis.derived:
            checks['printed_logicals'] = self.check_printed_logicals(code, basis)

        healthy = all(ok for ok, _ in checks.values())
        for check, (ok, message) in checks.items():
            self._say(print_success if ok else print_error, f"{name}: {check}: {message}")
        return {
            'healthy': healthy,
            'n': code.n,
            'k': code.k,
            'logical_modes': code.logical_modes,
            'notes': builtin_entry(name, self.catalog_path).get('notes'),
            'checks': {c: {'ok': ok, 'message': m} for c, (ok, m) in checks.items()},
        }

    def check_isotropic(self, code: StabilizerCode) -> Tuple[bool, str]:
        bad = first_noncommuting_pair(code.generators)
        if bad is not None:
            i, j, value = bad
            return False, f"omega(u{i + 1}, u{j + 1}) = {value}"
        pairs = code.k * (code.k - 1) // 2
        return True, f"all {pairs} generator pairs commute exactly"

    def check_complement_dimension(self, code: StabilizerCode) -> Tuple[bool, str]:
        dim = code.normalizer_space().dim
        expected = 2 * code.n - code.k
        return dim == expected, f"dim W^omega = {dim} (2n - k = {expected})"

    def check_derived_basis(self, code: StabilizerCode) -> Tuple[bool, str]:
        try:
            basis = logical_basis(code)
            check_logical_basis(code, basis)
        except CvstabError as e:
            return False, str(e)
        if gram_matrix(basis.vectors()) != standard_gram(len(basis.pairs)):
            return False, "derived basis has the wrong Gram matrix"
        return True, f"{len(basis.pairs)} hyperbolic pairs"

    def check_printed_logicals(self, code: StabilizerCode, basis) -> Tuple[bool, str]:
        outside: List[str] = []
        for index, v in enumerate(basis.vectors()):
            if any(symplectic_form(v, u) != 0 for u in code.generators):
                outside.append(f"v{index + 1}")
        if outside:
            return False, f"not in W^omega: {', '.join(outside)}"
        return True, f"{len(basis.vectors())} printed logical vectors commute with every generator"

    def generate_overall_status(self):
        """Generate overall catalog status"""
        issues = [f"{name} is not healthy" for name, info in self.validation_results['codes'].items() if not info['healthy']]
        if not issues:
            self.validation_results['overall_status'] = 'HEALTHY'
        elif len(issues) < len(self.validation_results['codes']):
            self.validation_results['overall_status'] = 'DEGRADED'
        else:
            self.validation_results['overall_status'] = 'UNHEALTHY'
        self.validation_results['issues'] = issues

    def print_summary(self, out=None):
        """Print validation summary"""
        lines = ["=" * 60, "CATALOG VALIDATION SUMMARY", "=" * 60]
        for name, info in self.validation_results['codes'].items():
            mark = "PASS" if info['healthy'] else "FAIL"
            shape = f"n={info['n']}, k={info['k']}, logical modes={info['logical_modes']}" if 'n' in info else "not loadable"
            lines.append(f"  {mark}  {name:<24} {shape}")
        lines.append("=" * 60)
        lines.append(f"Overall Status: {self.validation_results['overall_status']}")
        print("\n".join(lines), file=out)

        status = self.validation_results['overall_status']
        if status == 'HEALTHY':
            self._say(print_success, "All builtin codes are valid")
        else:
            for issue in self.validation_results.get('issues', []):
                self._say(print_warning, issue)


def overall_exit_code(results: Dict) -> int:
    return 0 if results['overall_status'] == 'HEALTHY' else 1


def summarize(catalog_path: Optional[str] = None) -> Dict:
    """Non-printing run, for tests and scripts"""
    validator = CatalogValidator(catalog_path or config.CATALOG_PATH, quiet=True)
    return validator.validate_all()
