"""JSON encoding conventions shared by the CLI and the test fixtures.

Rationals travel as [numerator, denominator], complex numbers as [re, im],
field elements as [a_num, a_den, b_num, b_den] in the (1, zeta) basis.  All
emitted documents have sorted keys.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .divisors import WeylVector
from .errors import ValidationError
from .field import Discriminant, from_pair
from .geometry import SiegelPoint
from .lattice import CuspData, HermitianLattice, hyperbolic_basis
from .lift import BorcherdsProduct, DivisorTerm, Factor, Truncation
from .modforms import VVForm


def rat(x) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def unrat(v) -> Fraction:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return Fraction(int(v[0]), int(v[1]))
    raise ValidationError("expected a rational as [num, den], got %r" % (v,))


def cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def uncplx(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValidationError("expected a complex number as [re, im], got %r" % (v,))


def field_elt(disc, v):
    if isinstance(v, (list, tuple)) and len(v) == 4:
        return from_pair(disc, Fraction(int(v[0]), int(v[1])),
                         Fraction(int(v[2]), int(v[3])))
    raise ValidationError("expected a field element as [a_num,a_den,b_num,b_den], got %r" % (v,))


def field_elt_json(x) -> list:
    return [x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator]


def lattice_from_config(cfg: dict):
    """Parse {"discriminant", "hgram", "ell", "ellprime"}; the isotropic pair
    is optional and, when present, produces the cusp frame too."""
    try:
        disc = Discriminant(int(cfg["discriminant"]))
        hgram_raw = cfg["hgram"]
    except KeyError as exc:
        raise ValidationError("lattice config missing key %s" % exc)
    hgram = [[field_elt(disc, v) for v in row] for row in hgram_raw]
    L = HermitianLattice(disc, hgram)
    cusp = None
    if "ell" in cfg and "ellprime" in cfg:
        ell = [field_elt(disc, v) for v in cfg["ell"]]
        ellp = [field_elt(disc, v) for v in cfg["ellprime"]]
        cusp = hyperbolic_basis(L, ell, ellp)
    return L, cusp


def form_from_config(cfg: dict, default_truncation=146) -> VVForm:
    """Builtin specs {"builtin": name, ...} or inline coefficient data."""
    if "builtin" in cfg:
        name = cfg["builtin"]
        trunc = int(cfg.get("truncation", default_truncation))
        if name == "J":
            from .modforms import jm_form

            return jm_form(int(cfg.get("m", 1)), trunc)
        from .modforms import scalar_builder

        return scalar_builder(name, trunc)
    try:
        weight = cfg["weight"]
        rep = cfg["rep"]
        coeffs_raw = cfg["coeffs"]
    except KeyError as exc:
        raise ValidationError("form config missing key %s" % exc)
    rep = {"rho_L": "rho_L", "dual": "dual", "scalar": "scalar"}.get(rep)
    if rep is None:
        raise ValidationError("unknown rep marker %r" % cfg["rep"])
    coeffs = {}
    for entry in coeffs_raw:
        coeffs[(int(entry["coset"]), unrat(entry["n"]))] = unrat(entry["c"])
    ncosets = int(cfg.get("ncosets", 1 + max((int(e["coset"]) for e in coeffs_raw), default=0)))
    qmax = unrat(cfg["qmax"]) if "qmax" in cfg else None
    return VVForm(unrat(weight) if isinstance(weight, list) else Fraction(weight),
                  rep, coeffs, ncosets, qmax=qmax)


def form_to_json(f: VVForm) -> dict:
    coeffs = [{"coset": b, "n": rat(n), "c": rat(c)}
              for (b, n), c in sorted(f.coeffs.items())]
    return {"weight": rat(f.weight), "rep": f.rep, "ncosets": f.ncosets,
            "qmax": rat(f.qmax), "coeffs": coeffs}


def point_from_json(cfg: dict) -> SiegelPoint:
    try:
        tau = cfg["tau"]
    except KeyError:
        raise ValidationError("point config missing key 'tau'")
    sigma = tuple(uncplx(s) for s in cfg.get("sigma", []))
    return SiegelPoint(tau=uncplx(tau), sigma=sigma)


def weyl_from_json(v) -> WeylVector:
    if isinstance(v, dict):
        return WeylVector(rho3=unrat(v.get("rho3", 0)), rho4=unrat(v.get("rho4", 0)),
                          rho_d=tuple(unrat(c) for c in v.get("rho_d", [])))
    raise ValidationError("weyl vector must be an object with rho3/rho4/rho_d")


def weyl_to_json(w: WeylVector) -> dict:
    return {"rho3": rat(w.rho3), "rho4": rat(w.rho4), "rho_d": [rat(c) for c in w.rho_d]}


def product_to_json(P: BorcherdsProduct) -> dict:
    factors = []
    for fa in P.factors:
        factors.append({
            "lambda": {"lam3": rat(fa.lam3), "lam4": rat(fa.lam4),
                       "lam_d": [rat(c) for c in fa.lam_d]},
            "coset": fa.beta,
            "exponent": fa.exponent,
            "offset": rat(fa.offset),
        })
    divisor = [{"n": rat(t.n), "orbit": list(t.orbit), "multiplicity": rat(t.multiplicity)}
               for t in P.divisor]
    return {
        "weight": rat(P.weight),
        "c00": rat(P.c00),
        "weyl": weyl_to_json(P.weyl),
        "factors": factors,
        "divisor": divisor,
        "truncation": {
            "height": rat(P.truncation.height),
            "factor_floor": P.truncation.factor_floor,
            "pole_order": rat(P.truncation.pole_order),
            "qmax": rat(P.truncation.qmax),
        },
    }


def product_from_json(cusp: CuspData, data: dict) -> BorcherdsProduct:
    factors = []
    for entry in data["factors"]:
        lam = entry["lambda"]
        factors.append(Factor(
            lam3=unrat(lam["lam3"]), lam4=unrat(lam["lam4"]),
            lam_d=tuple(unrat(c) for c in lam["lam_d"]),
            beta=int(entry["coset"]), exponent=int(entry["exponent"]),
            offset=unrat(entry["offset"])))
    divisor = tuple(DivisorTerm(n=unrat(t["n"]), orbit=tuple(t["orbit"]),
                                multiplicity=unrat(t["multiplicity"]))
                    for t in data["divisor"])
    tr = data["truncation"]
    trunc = Truncation(height=unrat(tr["height"]), factor_floor=float(tr["factor_floor"]),
                       pole_order=unrat(tr["pole_order"]), qmax=unrat(tr["qmax"]))
    return BorcherdsProduct(cusp=cusp, weight=unrat(data["weight"]),
                            c00=unrat(data["c00"]), weyl=weyl_from_json(data["weyl"]),
                            chamber=None, factors=tuple(factors), divisor=divisor,
                            truncation=trunc)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":"))
