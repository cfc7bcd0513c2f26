"""Expressions used by the round-trip tests."""

CORPUS = [
    "0",
    "1",
    "2.5",
    "3i",
    "-1",
    "+gamma0",
    "i",
    "kappa",
    "gamma0",
    "gamma0 + gamma1",
    "gamma0 - gamma1 - gamma2",
    "gamma0*gamma1*gamma2",
    "gamma0*gamma1 + gamma2*gamma3",
    "-gamma0*gamma1",
    "- -gamma0",
    "gamma0 ^ gamma1",
    "gamma0 ^ gamma1 ^ gamma2",
    "gamma0 .^ gamma1",
    "gamma0 _| gamma0*gamma1",
    "gamma0*gamma1 |_ gamma1",
    "gamma0 ox gamma1",
    "gamma0 ox gamma1 + 1 ox gamma2",
    "P0 ox 1 + 1 ox P0",
    "comm(P0, K0)",
    "acomm(gamma0, gamma1)",
    "comm(M01, comm(P1, K2))",
    "2*(D - M01)",
    "-(P1 - P2)/2",
    "P1/kappa",
    "sinh(gamma0/kappa)",
    "cosh((gamma0 + i*gamma0*gamma5)/kappa)",
    "exp(0.5*gamma1*gamma2)",
    "rev(gamma0*gamma1)",
    "gi(gamma0 + 1)",
    "conj(gamma0*gamma1*gamma2)",
    "grade(gamma0*gamma1 + 1, 2)",
    "grade(1 + gamma0, 0)",
    "S(P0)",
    "eps(1 + P0)",
    "Delta(P0)",
    "Delta(gamma0*gamma1)",
    "(1 + i*gamma5)/2",
    "(1 - i*gamma5)*(1 + i*gamma5)",
    "1e-3*gamma0",
    "1.5e2i*gamma1",
    ".5*gamma2",
    "gamma0 ^ gamma1*gamma2",
    "gamma0 + gamma1 ox gamma2 ^ gamma3",
    "((gamma0))",
    "comm(Kr1, Kr2) - i*(Kr3)",
]
