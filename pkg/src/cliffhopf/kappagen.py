"""
Generator sets in complexified Cl(1,3) and the built-in relation suites.

Relations are stored as expression text (see ``relcheck.parser``) with
placeholders filled per index assignment:

    {mu}           value of the free index ``mu``
    {g:mu,nu}      metric component g_{mu nu}
    {eps:i,j,k}    Levi-Civita symbol, eps_123 = +1

Arguments of ``g``/``eps`` may be index names or integer literals.  Dummy
sums are expanded when a suite is built, so templates only carry free indices.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

from .mvcore import CL13, AlgebraError, Multivector, SignatureMismatch, gmul, wedge
from .qdeform import Deformation, wick

# Metric of R^{1,3}; flip here to try the other sign convention.
METRIC = CL13.diag

BASIS_KINDS = ("conformal", "kappa", "ringK", "bicross")
ORIENTATIONS = ("mu_nu", "nu_mu")
SUITE_NAMES = (
    "conformal", "conformal_symmetry",
    "kappa_algebra", "kappa_coalgebra",
    "ringK_algebra", "ringK_coalgebra",
    "bicross_algebra", "bicross_coalgebra",
)
EXPECTATIONS = ("must_pass", "diagnostic")


class UnknownSuite(AlgebraError):
    pass


class MissingParameter(AlgebraError):
    pass


_M_NAME = re.compile(r"M([0-3])([0-3])$")


def gamma(mu: int) -> Multivector:
    return Multivector.basis(CL13, mu)


def gamma5() -> Multivector:
    return Multivector(CL13, {0b1111: 1})


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    basis_kind: str
    kappa: float | None
    generators: Mapping[str, Multivector]
    deformation: Deformation | None = None

    def __post_init__(self):
        if self.basis_kind not in BASIS_KINDS:
            raise ValueError(f"basis_kind must be one of {BASIS_KINDS}")
        for name, g in self.generators.items():
            if g.sig != CL13:
                raise SignatureMismatch(f"generator {name} is not in Cl(1,3)")
        object.__setattr__(self, "generators", MappingProxyType(dict(self.generators)))

    def names(self) -> list[str]:
        return list(self.generators)

    def __contains__(self, name: str) -> bool:
        return self.lookup(name) is not None

    def __getitem__(self, name: str) -> Multivector:
        g = self.lookup(name)
        if g is None:
            raise KeyError(name)
        return g

    def lookup(self, name: str) -> Multivector | None:
        """Name lookup; M{mu}{nu} resolves for every index pair by antisymmetry."""
        if name in self.generators:
            return self.generators[name]
        m = _M_NAME.match(name)
        if m:
            mu, nu = int(m.group(1)), int(m.group(2))
            if mu == nu:
                return Multivector.zero(CL13)
            swapped = self.generators.get(f"M{nu}{mu}")
            if swapped is not None:
                return -swapped
        return None


def _conformal_dict(orientation: str) -> dict[str, Multivector]:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    g5 = gamma5()
    out: dict[str, Multivector] = {}
    for mu in range(4):
        gm = gamma(mu)
        out[f"P{mu}"] = (gm + gmul(gm, g5) * 1j) * 0.5
    for mu in range(4):
        gm = gamma(mu)
        out[f"K{mu}"] = (gm - gmul(gm, g5) * 1j) * -0.5
    out["D"] = g5 * 0.5j
    for mu in range(4):
        for nu in range(mu + 1, 4):
            w = wedge(gamma(mu), gamma(nu))
            out[f"M{mu}{nu}"] = w * (0.5 if orientation == "mu_nu" else -0.5)
    return out


def conformal_generators(orientation: str = "mu_nu") -> GeneratorSet:
    """P, K, D and M as elements of Cl(1,3).

    ``orientation="mu_nu"`` uses M_{mu nu} = 1/2 gamma_mu ^ gamma_nu, the sign for which
    the conformal commutators close; ``"nu_mu"`` uses M_{mu nu} = 1/2 gamma_nu ^ gamma_mu.
    """
    return GeneratorSet("conformal", None, _conformal_dict(orientation))


def nilpotent_arg() -> Multivector:
    """X = gamma0 (1 + i gamma5); X * X = 0."""
    g0 = gamma(0)
    return g0 + gmul(g0, gamma5()) * 1j


def _kappa_dict(kappa: float, orientation: str) -> dict[str, Multivector]:
    base = _conformal_dict(orientation)
    gs = GeneratorSet("conformal", None, base)
    M = gs.__getitem__
    one = Multivector.scalar(CL13, 1)
    g5 = gamma5()
    g = gamma
    out = {k: v for k, v in base.items() if not k.startswith("K")}
    for i in (1, 2, 3):
        out[f"K{i}"] = M(f"M{i}0")
    out["Kp"] = M("M10") + M("M20") * 1j
    out["Km"] = M("M10") - M("M20") * 1j
    out["Mp"] = M("M23") + M("M31") * 1j
    out["Mm"] = M("M23") - M("M31") * 1j
    # Pp and Pm coincide: both are P_2 + i P_1
    out["Pp"] = base["P2"] + base["P1"] * 1j
    out["Pm"] = base["P2"] + base["P1"] * 1j
    for j, (k, l) in zip((1, 2, 3), ((2, 3), (3, 1), (1, 2))):
        out[f"M{j}"] = M(f"M{k}{l}")

    proj_p = one + g5 * 1j
    g12 = gmul(g(1), g(2))
    kr3 = gmul(g(3), g(0)) * 0.5 - gmul(gmul(g(3), one * (1 - 4j) + g12), proj_p) * (1j / (16 * kappa))
    krs = {}
    for s in (1, -1):
        pref = g(0) * 0.5j + one * (0.5 * (s - 0.25j) / (2 * kappa))
        krs[s] = gmul(gmul(pref, (one + g5 * (s * 1j)) * 0.5), g(1) + g(2) * (s * 1j))
    out["Kr3"] = kr3
    out["Krp"] = krs[1]
    out["Krm"] = krs[-1]
    out["Kr1"] = (krs[1] + krs[-1]) * 0.5
    out["Kr2"] = (krs[1] - krs[-1]) * (-0.5j)
    return out


def kappa_generators(kappa: float, basis_kind: str = "kappa", orientation: str = "mu_nu") -> GeneratorSet:
    """Generators for one of the deformed bases.

    kappa: K_i = M_{i0}, K_pm = M_10 pm i M_20, M_pm = M_23 pm i M_31, the ring-K family
    Kr1..Kr3, Krp, Krm and M_j = 1/2 eps_jkl M_kl.  bicross: as kappa, but K_0..K_3 are the
    conformal special conformal generators.
    """
    if kappa is None or not kappa > 0:
        raise MissingParameter("kappa must be a positive number")
    if basis_kind == "conformal":
        return GeneratorSet("conformal", kappa, _conformal_dict(orientation))
    out = _kappa_dict(kappa, orientation)
    if basis_kind == "bicross":
        out.update({k: v for k, v in _conformal_dict(orientation).items() if k.startswith("K")})
    elif basis_kind not in ("kappa", "ringK"):
        raise ValueError(f"unknown basis kind {basis_kind!r}")
    return GeneratorSet(basis_kind, kappa, out)


def deformed_generators(kappa: float, d: Deformation, basis_kind: str = "conformal",
                        orientation: str = "mu_nu") -> GeneratorSet:
    """Wick images W_A(x) of every generator; products should then use the B-product."""
    if not kappa > 0:
        raise MissingParameter("kappa must be a positive number")
    if d.sig != CL13:
        raise SignatureMismatch("deformation must live on Cl(1,3)")
    base = kappa_generators(kappa, basis_kind, orientation) if basis_kind != "conformal" \
        else GeneratorSet("conformal", kappa, _conformal_dict(orientation))
    gens = {k: wick(d, "forward", v) for k, v in base.generators.items()}
    return GeneratorSet(base.basis_kind, kappa, gens, d)


def generator_set(basis_kind: str, kappa: float | None = None, orientation: str = "mu_nu") -> GeneratorSet:
    if basis_kind == "conformal":
        return GeneratorSet("conformal", kappa, _conformal_dict(orientation))
    return kappa_generators(kappa, basis_kind, orientation)


# --- relations and suites -----------------------------------------------------------------

_PLACEHOLDER = re.compile(r"\{([A-Za-z]+)(?::([^{}]*))?\}")


def levi_civita(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    perm = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def substitute(template: str, assignment: Mapping[str, int]) -> str:
    def value(tok: str) -> int:
        tok = tok.strip()
        if re.fullmatch(r"-?\d+", tok):
            return int(tok)
        if tok not in assignment:
            raise MissingParameter(f"unbound index {tok!r}")
        return assignment[tok]

    def repl(m: re.Match) -> str:
        head, args = m.group(1), m.group(2)
        if args is None:
            return str(value(head))
        vals = [value(a) for a in args.split(",")]
        if head == "g":
            a, b = vals
            v = METRIC[a] if a == b else 0
        elif head == "eps":
            v = levi_civita(*vals)
        else:
            raise MissingParameter(f"unknown placeholder function {head!r}")
        return f"({v})"

    return _PLACEHOLDER.sub(repl, template)


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: str
    rhs: str
    indices: Mapping[str, tuple[int, int]] = field(default_factory=dict)
    expect: str = "must_pass"

    def __post_init__(self):
        if self.expect not in EXPECTATIONS:
            raise ValueError(f"expect must be one of {EXPECTATIONS}")
        idx = {k: (int(v[0]), int(v[1])) for k, v in dict(self.indices).items()}
        object.__setattr__(self, "indices", MappingProxyType(idx))

    def assignments(self) -> Iterator[dict[str, int]]:
        names = list(self.indices)
        ranges = [range(lo, hi + 1) for lo, hi in self.indices.values()]
        for combo in itertools.product(*ranges):
            yield dict(zip(names, combo))

    def instantiate(self, assignment: Mapping[str, int]) -> tuple[str, str]:
        return substitute(self.lhs, assignment), substitute(self.rhs, assignment)

    def swapped(self) -> "Relation":
        return Relation(self.name, self.rhs, self.lhs, self.indices, self.expect)

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "indices": {k: list(v) for k, v in self.indices.items()}, "expect": self.expect}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Relation":
        return cls(obj["name"], obj["lhs"], obj["rhs"], obj.get("indices", {}), obj.get("expect", "must_pass"))


@dataclass(frozen=True)
class RelationSuite:
    name: str
    relations: tuple[Relation, ...]
    parameters: Mapping[str, float] = field(default_factory=dict)
    basis: str = "conformal"

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "parameters", MappingProxyType(dict(self.parameters)))

    def __len__(self):
        return len(self.relations)

    def families(self) -> list[str]:
        seen: list[str] = []
        for r in self.relations:
            if r.name not in seen:
                seen.append(r.name)
        return seen

    def row_count(self) -> int:
        return sum(1 for r in self.relations for _ in r.assignments())

    def to_json(self) -> dict:
        return {"name": self.name, "basis": self.basis, "parameters": dict(self.parameters),
                "relations": [r.to_json() for r in self.relations]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, obj: Mapping) -> "RelationSuite":
        return cls(obj.get("name", "custom"), tuple(Relation.from_json(r) for r in obj.get("relations", [])),
                   obj.get("parameters", {}), obj.get("basis", "conformal"))


# Shorthands used by the transcriptions below.
_X = "(gamma0 + i*gamma0*gamma5)"
_SINH = f"sinh({_X}/kappa)"
_COSH = f"cosh({_X}/kappa)"
_PP = "(1 + i*gamma5)"
_PM = "(1 - i*gamma5)"
_KAPPA_0 = f"(gamma0*{_PP}/(2*kappa))"
_ONE_MINUS = f"(1 - {_KAPPA_0})"
_ONE_PLUS = f"(1 + {_KAPPA_0})"

_MU = {"mu": (0, 3), "nu": (0, 3)}
_MUL = {"mu": (0, 3), "nu": (0, 3), "lam": (0, 3)}
_MM_IDX = {"mu": (0, 3), "nu": (0, 3), "sig": (0, 3), "rho": (0, 3)}
_SPACE = (1, 3)


def _pm(name: str, lhs: str, rhs: str, indices=None, expect="diagnostic") -> list[Relation]:
    """Expand a relation written with ± / ∓ into its upper and lower sign versions."""
    out = []
    for tag, s, t in (("+", "+", "-"), ("-", "-", "+")):
        def fill(text: str) -> str:
            for g in ("K", "M", "Kr", "P"):
                text = text.replace(g + "±", g + ("p" if s == "+" else "m"))
                text = text.replace(g + "∓", g + ("m" if s == "+" else "p"))
            return text.replace("±", s).replace("∓", t)
        out.append(Relation(name.replace("±", tag).replace("∓", "-" if tag == "+" else "+"),
                            fill(lhs), fill(rhs), indices or {}, expect))
    return out


def _conformal_templates() -> list[tuple[str, str, str, dict]]:
    return [
        ("[P,P]", "comm(P{mu}, P{nu})", "0", _MU),
        ("[K,K]", "comm(K{mu}, K{nu})", "0", _MU),
        ("[M,D]", "comm(M{mu}{nu}, D)", "0", _MU),
        ("[M,P]", "comm(M{mu}{nu}, P{lam})", "-({g:mu,lam}*P{nu} - {g:nu,lam}*P{mu})", _MUL),
        ("[M,K]", "comm(M{mu}{nu}, K{lam})", "-({g:mu,lam}*K{nu} - {g:nu,lam}*K{mu})", _MUL),
        ("[M,M]", "comm(M{mu}{nu}, M{sig}{rho})",
         "{g:mu,rho}*M{nu}{sig} + {g:nu,sig}*M{mu}{rho} - {g:mu,sig}*M{nu}{rho} - {g:nu,rho}*M{mu}{sig}",
         _MM_IDX),
        ("[P,K]", "comm(P{mu}, K{nu})", "2*({g:mu,nu}*D - M{mu}{nu})", _MU),
        ("[P,D]", "comm(P{mu}, D)", "P{mu}", {"mu": (0, 3)}),
        ("[K,D]", "comm(K{mu}, D)", "-K{mu}", {"mu": (0, 3)}),
    ]


_SYM_SUB = re.compile(r"\b(P|K)(?=\{)|\bD\b")


def _swap_pk(text: str) -> str:
    def repl(m: re.Match) -> str:
        tok = m.group(0)
        if tok == "D":
            return "(-D)"
        return "(-" + ("K" if tok == "P" else "P")

    # P{mu} -> (-K{mu}); close the parenthesis after the placeholder
    out = _SYM_SUB.sub(repl, text)
    return re.sub(r"\(-(P|K)(\{[a-z]+\})", r"(-\1\2)", out)


def _conformal_suite(symmetric: bool) -> list[Relation]:
    rels = []
    for name, lhs, rhs, idx in _conformal_templates():
        if symmetric:
            lhs, rhs = _swap_pk(lhs), _swap_pk(rhs)
        rels.append(Relation(name, lhs, rhs, idx, "must_pass"))
    return rels


def _mm_family(expect: str) -> Relation:
    name, lhs, rhs, idx = _conformal_templates()[5]
    return Relation(name, lhs, rhs, idx, expect)


def _eps_sum(term: str, free: str, dummies=("i", "j")) -> str:
    """Expand sum over two dummy spatial indices of eps_{d1 d2 free} * term."""
    parts = []
    for a in range(1, 4):
        for b in range(1, 4):
            if a == b:
                continue
            t = term.replace("<" + dummies[0] + ">", str(a)).replace("<" + dummies[1] + ">", str(b))
            parts.append(f"{{eps:{a},{b},{free}}}*{t}")
    return "(" + " + ".join(parts) + ")"


def _kappa_algebra() -> list[Relation]:
    d = "diagnostic"
    rels = [
        Relation("[P,P]", "comm(P{mu}, P{nu})", "0", _MU, d),
        Relation("[Mij,P0]", "comm(M{i}{j}, P0)", "0", {"i": _SPACE, "j": _SPACE}, d),
        Relation("[eps.M,P]", f"comm({_eps_sum('M<i><j>', 'k')}, P{{l}})",
                 "i*({eps:k,l,1}*P1 + {eps:k,l,2}*P2 + {eps:k,l,3}*P3)", {"k": _SPACE, "l": _SPACE}, d),
        Relation("[K3,P0]", "comm(K3, P0)", f"(i/2)*gamma3*{_PP}", {}, d),
        Relation("[K3,P2]", "comm(K3, P2)", f"(i/(2*kappa))*gamma2*gamma3*{_PP}", {}, d),
        Relation("[P3,K3]", "comm(P3, K3)", f"(i/(2*kappa))*{_PP} - i*kappa*{_SINH}", {}, d),
        Relation("[K3,P1]", "comm(K3, P1)", f"(i/(2*kappa))*gamma3*gamma1*{_PP}", {}, d),
    ]
    rels += _pm("[K±,P0]", "comm(K±, P0)", f"(1/2)*(∓gamma2 + i*gamma1)*{_PP}")
    rels += _pm("[K±,P2]", "comm(K±, P2)", f"∓i*kappa*{_SINH} ± (1/(2*kappa))*gamma3*{_PP}")
    rels += _pm("[K±,P1]", "comm(K±, P1)", f"i*kappa*{_SINH} - (i/(2*kappa))*gamma3*{_PP}")
    rels += _pm("[K±,P3]", "comm(K±, P3)", "∓(1/(2*kappa))*gamma3*(gamma2 ∓ i*gamma1)*(1 ± i*gamma5)")
    rels.append(Relation("[M+,M-]", "comm(Mp, Mm)", "(1/2)*(gamma1^gamma2)", {}, d))
    rels += _pm("[M12,M±]", "comm(M12, M±)", "±(1/2)*gamma3*(gamma1 ± i*gamma2)")
    rels.append(Relation("[K+,K-]", "comm(Kp, Km)", f"-(gamma1^gamma2)*{_COSH} - {_SINH}", {}, d))
    rels += _pm("[K±,K3]", "comm(K±, K3)",
                f"±1 ± (gamma0/(4*kappa))*{_PP}*gamma3*(gamma2 - i*gamma1)"
                f" + (1/(8*kappa))*((i + 1)*(gamma3^gamma0)*(gamma2 + i*gamma1)*{_PP})")
    rels += _pm("[M±,K±]", "comm(M±, K±)", f"∓(1/(8*kappa))*gamma3*(1 + i*gamma1*gamma2)*(1 ∓ 1)*{_PP}")
    rels.append(Relation("[M12,K3]", "comm(M12, K3)", "0", {}, d))
    rels += _pm("[M12,K±]", "comm(M12, K±)", "∓(1/2)*((gamma1 ± i*gamma2)^gamma0)")
    rels += _pm("[M±,K∓]", "comm(M±, K∓)",
                f"(∓gamma3 + (i/(8*kappa))*(1 ∓ 1)*((1 - gamma1*gamma2)^gamma3))*{_PM}"
                f" + (1/4)*(∓(gamma1^gamma2) ± 2)*gamma3*{_PP}")
    rels += _pm("[M±,K3]", "comm(M±, K3)",
                f"∓(1/2)*((gamma1 ± i*gamma2)^gamma0) ± (1/(8*kappa))*(gamma1^gamma2)*(gamma1 + i*gamma2)*{_PP}"
                f" + (i/(4*kappa))*(gamma2 ∓ i*gamma1)*{_PP}")
    return rels


def _delta_p_spatial() -> str:
    return f"(1/2)*(gamma{{i}}*{_PP} ox (1 + gamma0*{_PP}) + (1 + gamma0*{_PP}) ox gamma{{i}}*{_PP})"


def _counits(k_name: str) -> list[Relation]:
    d = "diagnostic"
    return [
        Relation("eps(M)", "eps(M{mu}{nu})", "0", _MU, d),
        Relation("eps(P)", "eps(P{mu})", "0", {"mu": (0, 3)}, d),
        Relation(f"eps({k_name})", f"eps({k_name}{{k}})", "0", {"k": _SPACE}, d),
    ]


def _kappa_coalgebra() -> list[Relation]:
    d = "diagnostic"
    ij = {"i": _SPACE, "j": _SPACE}
    rels = [
        Relation("S(Mij)", "S(M{i}{j})", "-M{i}{j}", ij, d),
        Relation("S(P)", "S(P{mu})", "-P{mu}", {"mu": (0, 3)}, d),
        Relation("S(K3)", "S(K3)",
                 f"-(1/2)*gamma3*{_PM} + (i/(2*kappa))*gamma3*{_PP} + gamma1/(2*kappa)", {}, d),
    ]
    rels += _pm("S(K±)", "S(K±)",
                "-(1/2)*((gamma1 + i*gamma2)^gamma0) ± (1/(2*kappa))*(gamma2 ∓ i*gamma1)"
                f" ∓ (i/(4*kappa))*(gamma1 ∓ i*gamma2)*{_PP}")
    rels.append(Relation("Delta(Mij)", "Delta(M{i}{j})",
                         "(1/2)*((gamma{i}^gamma{j}) ox 1 + 1 ox (gamma{i}^gamma{j}))", ij, d))
    rels.append(Relation("Delta(K3)", "Delta(K3)",
                         f"-(gamma3/2)*{_PM} ox {_ONE_PLUS} + {_ONE_MINUS} ox (gamma3/2)*{_PM}"
                         f" + (1/(4*kappa))*{_ONE_MINUS}*((gamma2^gamma3) ox gamma2*{_PP})", {}, d))
    rels += _pm("Delta(K±)", "Delta(K±)",
                f"-(1/2)*((gamma1 ± i*gamma2)^gamma0) ox {_ONE_PLUS} + {_ONE_MINUS} ox (gamma3/2)*{_PM}"
                f" + (1/(2*kappa))*{_ONE_MINUS}*((gamma2 ∓ i*gamma1) ox (1/2)*(gamma1^gamma2)*{_ONE_PLUS})"
                f" - {_ONE_MINUS}*(1/2)*(gamma2 ∓ i*gamma1) ox (gamma2 ∓ i*gamma1)"
                f" ∓ (i/(2*kappa))*{_ONE_PLUS}*(gamma3^(gamma1 ± i*gamma2)) ox gamma3*{_PP}")
    rels.append(Relation("Delta(Pi)", "Delta(P{i})", _delta_p_spatial(), {"i": _SPACE}, d))
    rels += _counits("Kr")
    return rels


def _ringk_algebra() -> list[Relation]:
    d = "diagnostic"
    jk = {"j": _SPACE, "k": _SPACE}
    kk_tail = []
    for r in range(1, 4):
        for p in range(1, 4):
            for q in range(1, 4):
                e = levi_civita(r, p, q)
                if e:
                    # upper spatial indices: gamma^a = -gamma_a, three of them
                    kk_tail.append(f"({-e})*gamma{{k}}*gamma{r}*gamma5*(gamma{p}^gamma{q})")
    return [
        _mm_family(d),
        Relation("[Mj,Krk]", "comm(M{j}, Kr{k})",
                 "i*({eps:j,k,1}*Kr1 + {eps:j,k,2}*Kr2 + {eps:j,k,3}*Kr3)", jk, d),
        Relation("[Krk,P0]", "comm(Kr{k}, P0)", f"(i/2)*gamma{{k}}*{_PP}", {"k": _SPACE}, d),
        Relation("[Krj,Pk]", "comm(Kr{j}, P{k})", f"i*kappa*{{g:k,j}}*{_SINH}", jk, d),
        Relation("[Krj,Krk]", "comm(Kr{j}, Kr{k})",
                 f"-i*(gamma{{j}}^gamma{{k}})*{_COSH} - (1/(4*kappa*kappa))*(" + " + ".join(kk_tail) + ")",
                 jk, d),
    ]


def _ringk_delta_k() -> str:
    head = "-(1/4)*((1 + (gamma{i} + gamma0)*" + _PM + ") ox (1 + (gamma{i} + gamma0)*" + _PM + "))"
    terms = []
    for j in range(1, 4):
        for k in range(1, 4):
            if j == k:
                continue
            terms.append(
                f"{{eps:i,{j},{k}}}*(gamma{j}*{_PP} ox gamma{{i}}*gamma{j}*(1 + (2/kappa)*gamma0*{_PP})"
                f" + gamma{{i}}*gamma{j}*(1 - (2/kappa)*gamma0*{_PP}) ox gamma{j}*{_PP})")
    return head + " + (i/(2*kappa))*(" + " + ".join(terms) + ")"


def _ringk_coalgebra() -> list[Relation]:
    d = "diagnostic"
    ij = {"i": _SPACE, "j": _SPACE}
    return [
        Relation("Delta(Mij)", "Delta(M{i}{j})",
                 "(1/2)*((gamma{i}^gamma{j}) ox 1 + 1 ox (gamma{i}^gamma{j}))", ij, d),
        Relation("Delta(P0)", "Delta(P0)", f"(1/2)*(gamma0*{_PP} ox 1 + 1 ox gamma0*{_PP})", {}, d),
        Relation("Delta(Kri)", "Delta(Kr{i})", _ringk_delta_k(), {"i": _SPACE}, d),
        Relation("Delta(Pi)", "Delta(P{i})", _delta_p_spatial(), {"i": _SPACE}, d),
        *_counits("Kr"),
        Relation("S(M)", "S(M{mu}{nu})", "gamma{mu}^gamma{nu}", _MU, d),
        Relation("S(P)", "S(P{mu})", "P{mu}", {"mu": (0, 3)}, d),
        Relation("S(Krj)", "S(Kr{j})", f"gamma{{j}}*((1/2)*{_PM} + (3*i/(4*kappa))*(1/2)*{_PP})",
                 {"j": _SPACE}, d),
    ]


def _bicross_algebra() -> list[Relation]:
    d = "diagnostic"
    jk = {"j": _SPACE, "k": _SPACE}
    return [
        _mm_family(d),
        Relation("[M,K]", "comm(M{mu}{nu}, K{lam})", "-({g:mu,lam}*K{nu} - {g:nu,lam}*K{mu})", _MUL, d),
        Relation("[Kj,P0]", "comm(K{j}, P0)",
                 f"-i*gamma{{j}}*(1 - gamma0*{_PM}/(2*kappa))*(1/2)*{_PP}", {"j": _SPACE}, d),
        Relation("[Pk,Kj]", "comm(P{k}, K{j})",
                 f"i*{{g:k,j}}*gamma0*({_PP}/2)*(1 - 4/kappa)"
                 f" + (2/kappa)*gamma0*(1 - {_PP}/(4*kappa))*gamma{{j}}*gamma{{k}}*gamma5", jk, d),
    ]


def _bicross_coalgebra() -> list[Relation]:
    d = "diagnostic"
    ij = {"i": _SPACE, "j": _SPACE}
    tail = " + ".join(f"{{eps:i,{j},{k}}}*(gamma{j}*{_PP} ox gamma{{i}}*gamma{j})"
                      for j in range(1, 4) for k in range(1, 4) if j != k)
    return [
        Relation("Delta(Mij)", "Delta(M{i}{j})", "(1/2)*(gamma{i}*gamma{j} ox 1 + 1 ox gamma{i}*gamma{j})", ij, d),
        Relation("Delta(P0)", "Delta(P0)", f"(1/2)*(gamma0*{_PP} ox 1 + 1 ox gamma0*{_PP})", {}, d),
        Relation("Delta(Ki)", "Delta(K{i})",
                 f"-(1/2)*(gamma{{i}}*{_PP} ox 1 + (4/kappa)*(1 - gamma0*{_PP}) ox gamma{{i}}*{_PP})"
                 f" + (1/(2*kappa))*({tail})", {"i": _SPACE}, d),
        Relation("Delta(Pi)", "Delta(P{i})", _delta_p_spatial(), {"i": _SPACE}, d),
        *_counits("K"),
    ]


_BUILDERS = {
    "conformal": (lambda: _conformal_suite(False), "conformal", False),
    "conformal_symmetry": (lambda: _conformal_suite(True), "conformal", False),
    "kappa_algebra": (_kappa_algebra, "kappa", True),
    "kappa_coalgebra": (_kappa_coalgebra, "kappa", True),
    "ringK_algebra": (_ringk_algebra, "ringK", True),
    "ringK_coalgebra": (_ringk_coalgebra, "ringK", True),
    "bicross_algebra": (_bicross_algebra, "bicross", True),
    "bicross_coalgebra": (_bicross_coalgebra, "bicross", True),
}


def suite(name: str, kappa: float | None = None) -> RelationSuite:
    if name not in _BUILDERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    build, basis, needs_kappa = _BUILDERS[name]
    params = {}
    if needs_kappa:
        if kappa is None:
            raise MissingParameter(f"suite {name!r} needs a kappa value")
        if not kappa > 0:
            raise MissingParameter("kappa must be positive")
        params["kappa"] = float(kappa)
    elif kappa is not None:
        params["kappa"] = float(kappa)
    return RelationSuite(name, tuple(build()), params, basis)
