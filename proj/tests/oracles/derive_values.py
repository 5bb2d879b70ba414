"""Independent high-precision oracle for the values frozen into the C++ tests.

Partner modes are built as y~ = y' + (beta - h) y with mpmath's numerical
differentiation of the seed mode, never from the library's closed forms.
Run with `python3 derive_values.py`; it prints C++ literals.
"""

import mpmath as mp

mp.mp.dps = 40


def h(gamma, t):
    return gamma / (gamma * t + 1)


def partner(seed, beta, gamma):
    return lambda t: mp.diff(seed, t) + (beta - h(gamma, t)) * seed(t)


def jet(f, t, n=2):
    return [mp.diff(f, t, k) for k in range(n + 1)]


def show(name, values):
    print(f"{name}: " + ", ".join(mp.nstr(v, 25) for v in values))


def main():
    # Underdamped, figure 1: beta = 1/10, omega1 = 1, y = e^{-t/10} cos t.
    b1 = mp.mpf(1) / 10
    y_u = lambda t: mp.e ** (-b1 * t) * mp.cos(t)
    show("fig1 seed t=0.5 (y, dy, d2y)", jet(y_u, mp.mpf("0.5")))
    for g in (mp.mpf(1), mp.mpf(1) / 2, mp.mpf(1) / 10):
        show(f"fig1 tilde gamma={mp.nstr(g, 3)} t=1.25", jet(partner(y_u, b1, g), mp.mpf("1.25")))

    # Overdamped, figure 3: beta = 1, alpha = 1/5, y = e^{-t} cosh(t/5).
    y_o = lambda t: mp.e ** (-t) * mp.cosh(t / 5)
    for g in (mp.mpf(1), mp.mpf(1) / 2):
        show(f"fig3 tilde gamma={mp.nstr(g, 3)} t=2.5", jet(partner(y_o, 1, g), mp.mpf("2.5")))

    # Elementary overdamped partner y~- at beta=1, alpha=0.2, gamma=1, t=1.
    a = mp.mpf("0.2")
    y_minus = lambda t: mp.e ** ((-1 - a) * t)
    show("tilde minus (beta=1, alpha=0.2, gamma=1, t=1)", [partner(y_minus, 1, 1)(1)])

    # Critical, figure 2: y~ = [-h + (gamma t + 1)^2 / gamma^2] e^{-t}.  Checked
    # here against the partner equation y'' + 2y' + (1 - 2h^2) y = 0.
    def y_c(g):
        return lambda t: (-h(g, t) + (g * t + 1) ** 2 / g**2) * mp.e ** (-t)

    for g in (mp.mpf(5), mp.mpf(5) / 3, mp.mpf(1)):
        f = y_c(g)
        t = mp.mpf("0.75")
        y, dy, d2y = jet(f, t)
        assert abs(d2y + 2 * dy + (1 - 2 * h(g, t) ** 2) * y) < mp.mpf(10) ** -25
        show(f"fig2 tilde gamma={mp.nstr(g, 3)} t=0.75", [y, dy, d2y])

    # Wronskian of y~+ = -h e^{-beta t} and the second solution
    # (gamma t + 1)^2/gamma^2 e^{-beta t}: expected -3 e^{-2 beta t}.
    beta, g, t = mp.mpf("0.7"), mp.mpf("1.3"), mp.mpf("2.1")
    u = lambda s: -h(g, s) * mp.e ** (-beta * s)
    v = lambda s: (g * s + 1) ** 2 / g**2 * mp.e ** (-beta * s)
    w = u(t) * mp.diff(v, t) - mp.diff(u, t) * v(t)
    show("critical wronskian / (-3 e^{-2 beta t})", [w / (-3 * mp.e ** (-2 * beta * t))])

    # Dense scan of |y~_c| on [0, 10] step 1e-3 for figure 2, gamma = 1.
    f = y_c(mp.mpf(1))
    best = max(abs(f(mp.mpf(i) / 1000)) for i in range(10001))
    show("fig2 gamma=1 max_abs on grid", [best])
    # The continuous maximum for comparison.
    tm = mp.findroot(lambda s: mp.diff(f, s), mp.mpf("0.36"))
    show("fig2 gamma=1 argmax, continuous max", [tm, f(tm)])

    # Free critical damping y = e^{-t}(1 + t) at t = 10.
    show("critical seed at t=10", [mp.e ** -10 * 11])


if __name__ == "__main__":
    main()
