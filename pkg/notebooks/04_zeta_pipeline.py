"""
From Reidemeister numbers to a certified rational function
==========================================================

The zeta function exp(sum R(phi^k) z^k / k) is rational. Its Taylor
coefficients are computed exactly, the rational function is read off by
Pade reconstruction, and every remaining term is checked.
"""

from rzeta.cli import latex_zeta
from rzeta.group import AffineAut, DiagZ2Group, reidemeister_numbers, validate
from rzeta.zeta import ReconstructionError, full_pipeline, reconstruct, zeta_series

fib = validate(DiagZ2Group(2, 2), AffineAut.of([[1, 1], [1, 0]]))

rn = reidemeister_numbers(fib, 12)
series = zeta_series(rn)
print("R(phi^k):   ", rn)
print("zeta series:", [int(c) for c in series.coeffs])

# small bounds fail in one of two ways; 6 is the true degree
for bound in (2, 4, 6):
    try:
        f = reconstruct(series, bound)
    except ReconstructionError as exc:
        print(f"bound {bound}: {exc}")
        continue
    ok = f.series(len(series)) == list(series.coeffs)
    print(f"bound {bound}: {f.numerator} / {f.denominator}  matches all terms: {ok}")

res = full_pipeline(fib)
print("\ncertified:", res.function.certified, " degree bound:", res.degree_bound,
      " terms checked:", res.diagnostics["terms_checked"])
print("radius:", res.radius.value, "(the golden ratio conjugate 0.6180339887...)")
print(latex_zeta(res, fib))

cat = validate(DiagZ2Group(2, 0), AffineAut.of([[2, 1], [1, 1]]))
res = full_pipeline(cat)
print("\ncat map on Z^2:", res.function.numerator, "/", res.function.denominator,
      " radius", round(res.radius.value, 12))
