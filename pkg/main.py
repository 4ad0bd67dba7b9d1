"""
Quick test script for Cubic ODE Invariants.

Run this from the repository root to check the installation against the bundled example equations.
"""

from pathlib import Path

from cubic_ode_invariants import InvariantClient
from cubic_ode_invariants import Settings
from cubic_ode_invariants.core.expr import ExpressionError

DATA = Path(__file__).parent / "data" / "odes"


def main():
    """Classify each bundled equation and run the identity suite on it."""
    print("Cubic ODE Invariants - Quick Test")
    print("=" * 60)

    try:
        for path in sorted(DATA.glob("*.ode")):
            with InvariantClient.from_file(path, settings=Settings(points=5)) as client:
                print(f"\n{client.ode.name}")
                print(f"  verdict: {client.classify()}")
                report = client.checks.report()
                status = "✓" if report.passed else "✗"
                print(f"  {status} {len(report.identities)} identities checked")

        print("\n" + "=" * 60)
        print("Cubic ODE Invariants is working correctly!")
        print("See QUICK_START.md for more examples.")
        print("=" * 60)

    except ExpressionError as e:
        print(f"\n✗ Could not read an example equation: {e}")

    except Exception as e:
        print(f"\n✗ Unexpected error: {e}")
        import traceback

        traceback.print_exc()


if __name__ == "__main__":
    main()
