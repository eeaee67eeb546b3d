"""Independent 50-digit reference values for the special-function tests.

Run with `python3 tests/oracles/specfun_oracle.py`; the printed literals are
frozen into tests/test_specfun.cpp.
"""
from mpmath import mp, mpf, mpc, loggamma, digamma, barnesg, zeta, besselj, log, quad

mp.dps = 50


def show(label, value):
    if isinstance(value, mpc):
        print(f"{label}: ({mp.nstr(value.real, 20)}, {mp.nstr(value.imag, 20)})")
    else:
        print(f"{label}: {mp.nstr(value, 20)}")


for z in [mpc("3.7", "2.1"), mpc("-2.3", "0.7"), mpc("0.2", "-15"), mpc("-30.5", "3"), mpc("1e-3", "40")]:
    show(f"log_gamma{z}", loggamma(z))
for z in [mpc("2.3", "0.7"), mpc("-4.6", "-1.2"), mpc("0.1", "25")]:
    show(f"digamma{z}", digamma(z))
for x in ["0.3", "0.5", "3.5", "7.25", "1.87", "4.19"]:
    show(f"log_barnes_g({x})", log(barnesg(mpf(x))))
show("zeta'(-1)", zeta(-1, 1, 1))
for u in ["0.1", "0.5", "1", "2", "3.5", "10", "100"]:
    show(f"hurwitz_zeta_prime({u})", zeta(-1, mpf(u), 1))
for nu, x in [("0", "5"), ("2.5", "12"), ("0.5", "2"), ("0.3", "29"), ("-0.5", "0.7"), ("1.31", "17")]:
    show(f"bessel_j({nu},{x})", besselj(mpf(nu), mpf(x)))
for z in ["2", "5", "0.4"]:
    show(f"integral_log_gamma({z})", quad(loggamma, [1, mpf(z)]))
