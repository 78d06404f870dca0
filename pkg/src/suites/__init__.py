from src.suites.runner import SUITE_NAMES, SuiteContext, run_suite, shipped_maps

__all__ = ['SUITE_NAMES', 'SuiteContext', 'run_suite', 'shipped_maps']
