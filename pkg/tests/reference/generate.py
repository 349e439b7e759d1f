"""
Regenerate the frozen reference values in reference_values.py with mpmath.

Run from the repository root:  python3 tests/reference/generate.py > tests/reference_values.py
Everything is computed at 40 significant digits from first principles and is
independent of the bisphere package.
"""

import mpmath as mp

mp.mp.dps = 40


def coords(r1, r2, d):
    r1, r2, d = mp.mpf(r1), mp.mpf(r2), mp.mpf(d)
    big = d + r1 + r2
    mu1 = mp.acosh((big ** 2 + r1 ** 2 - r2 ** 2) / (2 * big * r1))
    mu2 = -mp.acosh((big ** 2 + r2 ** 2 - r1 ** 2) / (2 * big * r2))
    return mu1, mu2


def q1_series(r1, r2, d, t1=1, t2=1):
    """4 pi T1 r1 + 4 pi r1 sinh(mu1) sum_k [T1/sinh(mu1 + kL) - T2/sinh(kL)], summed to 1e-35."""
    mu1, mu2 = coords(r1, r2, d)
    big_l = mu1 - mu2
    n = int(mp.ceil(85 / big_l)) + 10
    s = mp.fsum(t1 / mp.sinh(mu1 + k * big_l) - t2 / mp.sinh(k * big_l) for k in range(1, n))
    return 4 * mp.pi * t1 * r1 + 4 * mp.pi * r1 * mp.sinh(mu1) * s


def contact(r1, r2, t0=1):
    u = mp.mpf(r2) / (r1 + r2)
    return -4 * mp.pi * t0 * r1 * u * (mp.euler + mp.digamma(u))


def slope(r1, r2, t0=1):
    r1, r2 = mp.mpf(r1), mp.mpf(r2)
    u = r2 / (r1 + r2)
    br = (2 * (r1 ** 3 + r2 ** 3) * (mp.euler + mp.digamma(u)) + r1 ** 2 * r2 + r2 ** 2 * r1
          + 2 * (r1 ** 2 * r2 - r2 ** 2 * r1) * mp.polygamma(1, u))
    return -4 * mp.pi * t0 * r1 * br / (6 * r1 * (r1 + r2) ** 3)


def critical(x):
    u = 1 / (1 + x)
    return (2 * (1 + x ** 3) * (mp.euler + mp.digamma(u)) + x * x + x
            + 2 * (x * x - x) * mp.polygamma(1, u))


def f_collapsed(r1, r2, d):
    mu1, mu2 = coords(r1, r2, d)
    x, z = mp.exp(mu1), mp.exp(mu1 - mu2)
    n = int(mp.ceil(45 / mp.log(z))) + 10
    return (x - 1 / x) * mp.fsum((x ** (-2 * j - 1) - 1) / (z ** (2 * j + 1) - 1) for j in range(n))


def emit(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


def main():
    print('"""Frozen high-precision reference values; regenerate with tests/reference/generate.py."""')
    print()
    print("DIGAMMA = {")
    for t in ("0.001", "0.1", "0.333", "0.5", "1.7", "7.3", "12.5", "1000", "1000000"):
        print(f"    {t}: {mp.nstr(mp.digamma(mp.mpf(t)), 20)},")
    print("}")
    print("TRIGAMMA = {")
    for t in ("0.001", "0.1", "0.333", "0.5", "1.7", "7.3", "12.5", "1000", "1000000"):
        print(f"    {t}: {mp.nstr(mp.polygamma(1, mp.mpf(t)), 20)},")
    print("}")
    print("HYP2F1 = {")
    for a, b, c, v in ((1, 1.5, 2.5, 0.2), (1, 1.3, 2.3, 0.8), (0.7, 1.9, 2.6, 0.9),
                       (1, 1.5, 2.5, 0.999), (1, 1.05, 2.05, 0.5)):
        val = mp.hyp2f1(mp.mpf(a), mp.mpf(b), mp.mpf(c), mp.mpf(v))
        print(f"    ({a}, {b}, {c}, {v}): {mp.nstr(val, 20)},")
    print("}")
    print("# (r1, r2, d, t1, t2) -> Q1")
    print("Q1 = {")
    for cfg in ((1, 1, 2, 1, 1), (20, 1, 10, 1, 1), (2, 1, 0.5, 1, 1), (2, 1, "1e-3", 1, 1),
                (20, 1, "1e-4", 1, 1), (1, 20, "1e-4", 1, 1), (2, 1, 0.5, 1, 3),
                (5, 2, 100, 2, 0.5), (30, 1, 0.1, 1, 1), (20, 1, "1e6", 1, 1)):
        r1, r2, d, t1, t2 = cfg
        val = q1_series(mp.mpf(r1), mp.mpf(r2), mp.mpf(d), mp.mpf(t1), mp.mpf(t2))
        print(f"    ({r1}, {r2}, {float(mp.mpf(d))!r}, {t1}, {t2}): {mp.nstr(val, 20)},")
    print("}")
    print("# (r1, r2, d) -> f(d)")
    print("F = {")
    for r1, r2, d in ((1, 1, 2), (2, 1, 0.5), (2, 1, "1e-3"), (3, 7, "0.05")):
        print(f"    ({r1}, {r2}, {float(mp.mpf(d))!r}): {mp.nstr(f_collapsed(r1, r2, mp.mpf(d)), 20)},")
    print("}")
    print("# (r1, r2) -> Q1 at contact and its d-derivative, t0 = 1")
    print("CONTACT = {")
    for r1, r2 in ((1, 1), (2, 1), (20, 1), (1, 20), (1000, 1), (1, 1000)):
        print(f"    ({r1}, {r2}): ({mp.nstr(contact(r1, r2), 20)}, {mp.nstr(slope(r1, r2), 20)}),")
    print("}")
    emit("CRITICAL_RATIO", mp.findroot(critical, 1.95))

    def dq1(d):
        return mp.diff(lambda s: q1_series(20, 1, s), d)
    emit("D_STAR_20_1", mp.findroot(dq1, 18))


if __name__ == "__main__":
    main()
