"""A quasiprimitive 4-line degenerating to a thick one, with its certificate."""

import sys

from quartichilb.deformation import verify_thintothick

a, b, c = (int(v) for v in sys.argv[1:4]) if len(sys.argv) > 3 else (1, 0, 1)
cert = verify_thintothick(a, b, c)
for chk in cert.checks:
    print(("ok  " if chk.status else "FAIL"), chk.id, chk.detail)
for f in cert.fiber_invariants:
    print(f"t={f['t']}: degree {f['degree']}, genus {f['genus']}")
print("verdict:", cert.verdict, cert.digest())
