#!/usr/bin/env python3
"""
Standalone runner for the test modules.

Each test_*.py works under pytest and also as a script: its main() passes
its test functions here, which prints a banner per test and a summary.
"""
import traceback
from typing import Callable, Sequence


def run_suite(title: str, tests: Sequence[Callable[[], None]]) -> int:
    results = {}
    for number, test in enumerate(tests, start=1):
        print("\n" + "=" * 60)
        print(f"TEST {number}: {test.__name__}")
        print("=" * 60)
        try:
            test()
            print("  ✅ PASS")
            results[test.__name__] = True
        except Exception:
            traceback.print_exc()
            print("  ❌ FAIL")
            results[test.__name__] = False

    print("\n" + "=" * 70)
    print(f" {title} ".center(70, "="))
    print("=" * 70)
    for name, passed in results.items():
        print(f"{name}: {'✅ PASS' if passed else '❌ FAIL'}")
    passed = sum(results.values())
    print(f"\nResult: {passed}/{len(results)} tests passed")
    if passed == len(results):
        print("🎉 All tests passed!")
    else:
        print("⚠️  Some tests failed. Please check the errors above.")
    print("=" * 70 + "\n")
    return 0 if passed == len(results) else 1
