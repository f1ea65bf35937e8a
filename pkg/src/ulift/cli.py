"""Batch command-line driver: every pipeline stage with JSON in, JSON out.

Exit codes: 0 success, 1 unknown command or usage error, 2 validation error,
3 domain/convergence error.  Output is deterministic for a fixed config:
keys sorted, rationals exact, floats in shortest round-trip form.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy

from . import jsonio
from .divisors import (HeegnerIndex, chamber_of, cusp_chamber, heegner_points,
                       weyl_vector)
from .errors import DomainError, ValidationError
from .field import Discriminant, zeta_data
from .geometry import SiegelPoint
from .lattice import dual_and_discriminant
from .lift import (boundary_behavior, boundary_value, build, evaluate,
                   vanishing_probe)
from .modforms import residue_pair, weil_matrices
from .obstruction import duality_relation_check, realizable_series

COMMANDS = ("field-info", "lattice-info", "weilrep", "form", "heegner",
            "chamber", "lift-build", "lift-eval", "boundary",
            "vanishing-probe", "pair", "duality-check")


def _load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError("cannot read config: %s" % exc)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("malformed JSON at line %d column %d: %s"
                              % (exc.lineno, exc.colno, exc.msg))


def _require(cfg, key):
    if key not in cfg:
        raise ValidationError("config missing key %r" % key)
    return cfg[key]


def _cusp_from(cfg):
    _L, cusp = jsonio.lattice_from_config(_require(cfg, "lattice"))
    if cusp is None:
        raise ValidationError("lattice config must include 'ell' and 'ellprime'")
    return cusp


def _chamber_from(cfg, form, cusp):
    ch = cfg.get("chamber", {"at_cusp": True})
    if ch.get("at_cusp", False):
        sigma = tuple(jsonio.uncplx(s) for s in ch.get("sigma", []))
        return cusp_chamber(form, cusp, sigma=sigma)
    return chamber_of(form, cusp, jsonio.point_from_json(_require(ch, "point")))


def _build_from(cfg, opts):
    cusp = _cusp_from(cfg)
    form = jsonio.form_from_config(_require(cfg, "form"))
    chamber = _chamber_from(cfg, form, cusp)
    weyl = jsonio.weyl_from_json(cfg["weyl"]) if "weyl" in cfg else None
    height = opts.truncation_height or cfg.get("height", 10)
    floor_ = opts.factor_floor or cfg.get("factor_floor", 1e-16)
    return build(form, chamber, cusp, height=Fraction(height),
                 factor_floor=float(floor_), weyl=weyl), cusp, form


def cmd_field_info(cfg, opts):
    disc = Discriminant(int(_require(cfg, "discriminant")))
    t, n = zeta_data(disc)
    return {"discriminant": disc.d, "zeta_trace": t, "zeta_norm": n,
            "abs_delta_sq": disc.abs_delta_sq}


def cmd_lattice_info(cfg, opts):
    L, cusp = jsonio.lattice_from_config(_require(cfg, "lattice"))
    zv = L.zview()
    _dual, group = dual_and_discriminant(L)
    out = {
        "rank": L.rank,
        "m": L.m,
        "tgram": [list(r) for r in zv.tgram],
        "det": zv.det,
        "invariant_factors": list(group.invariant_factors),
        "group_order": group.order,
        "q_values": [jsonio.rat(q) for q in group.q_values],
    }
    if cusp is not None:
        out["width"] = cusp.width
        out["k_group_order"] = cusp.k_group.order
        out["width_identity"] = (group.order == cusp.width ** 2 * cusp.k_group.order)
        out["e_basis"] = [[jsonio.rat(c) for c in vec]
                          for vec in (cusp.e1z, cusp.e2z, cusp.e3z, cusp.e4z)]
    return out


def cmd_weilrep(cfg, opts):
    L, _ = jsonio.lattice_from_config(_require(cfg, "lattice"))
    wr = weil_matrices(L)
    s4 = numpy.max(numpy.abs(numpy.linalg.matrix_power(wr.s_mat, 4) - numpy.eye(wr.dim)))
    st3 = numpy.max(numpy.abs(numpy.linalg.matrix_power(wr.s_mat @ wr.t_mat, 3)
                              - wr.s_mat @ wr.s_mat))
    uni = numpy.max(numpy.abs(wr.s_mat @ wr.s_mat.conj().T - numpy.eye(wr.dim)))
    return {
        "dim": wr.dim,
        "T_diag": [jsonio.cplx(wr.t_mat[i, i]) for i in range(wr.dim)],
        "S": [[jsonio.cplx(wr.s_mat[i, j]) for j in range(wr.dim)] for i in range(wr.dim)],
        "residual_S4": float(s4),
        "residual_ST3": float(st3),
        "residual_unitary": float(uni),
    }


def cmd_form(cfg, opts):
    form = jsonio.form_from_config(_require(cfg, "form"))
    if "lattice" in cfg:
        L, _ = jsonio.lattice_from_config(cfg["lattice"])
        form.validate_support(L.discriminant_group())
    return jsonio.form_to_json(form)


def cmd_heegner(cfg, opts):
    cusp = _cusp_from(cfg)
    idx = HeegnerIndex(n=jsonio.unrat(_require(cfg, "n")), beta=int(cfg.get("beta", 0)))
    bound = cfg.get("bound")
    data = heegner_points(cusp, idx, bound=bound)
    out = {
        "n": jsonio.rat(idx.n),
        "beta": idx.beta,
        "points": [{"tau": jsonio.cplx(p.tau)} for p in data.points],
        "lambdas": [[jsonio.rat(c) for c in lam] for lam in data.lambdas],
    }
    if data.equations:
        out["equations"] = [
            {"lambda": [jsonio.rat(c) for c in lam],
             "constant": jsonio.field_elt_json(cc),
             "tau_coeff": jsonio.field_elt_json(ac),
             "sigma_coeffs": [jsonio.field_elt_json(b) for b in bs]}
            for lam, cc, ac, bs in data.equations]
    return out


def cmd_chamber(cfg, opts):
    cusp = _cusp_from(cfg)
    form = jsonio.form_from_config(_require(cfg, "form"))
    pt = jsonio.point_from_json(_require(cfg, "point"))
    ch = chamber_of(form, cusp, pt)
    return {
        "sample_y": [ch.sample_y[0], ch.sample_y[1], list(ch.sample_y[2])],
        "index_set": [{"n": jsonio.rat(n), "class": [jsonio.rat(c) for c in key]}
                      for n, key in ch.index_set],
        "at_cusp": ch.at_cusp,
    }


def cmd_lift_build(cfg, opts):
    P, _cusp, _form = _build_from(cfg, opts)
    return jsonio.product_to_json(P)


def cmd_lift_eval(cfg, opts):
    cusp = _cusp_from(cfg)
    if "product" in cfg:
        P = jsonio.product_from_json(cusp, cfg["product"])
    else:
        P, cusp, _ = _build_from(cfg, opts)
    pt = jsonio.point_from_json(_require(cfg, "point"))
    res = evaluate(P, pt, precision=opts.precision)
    return {
        "value": jsonio.cplx(res.value),
        "log_value": jsonio.cplx(res.log_value),
        "log_abs": res.log_abs,
        "factors_used": res.factors_used,
        "factors_flipped": res.factors_flipped,
        "tail_bound": res.tail_bound,
        "near_divisor": res.near_divisor,
    }


def cmd_boundary(cfg, opts):
    cusp = _cusp_from(cfg)
    if "product" in cfg:
        P = jsonio.product_from_json(cusp, cfg["product"])
    else:
        P, cusp, _ = _build_from(cfg, opts)
    beh = boundary_behavior(P)
    out = {"behavior": beh}
    if beh == "finite":
        val, moduli = boundary_value(P, precision=opts.precision)
        out["value"] = jsonio.cplx(val)
        out["factor_moduli"] = [float(m) for m in moduli]
    return out


def cmd_vanishing_probe(cfg, opts):
    P, _cusp, _form = _build_from(cfg, opts)
    path = [jsonio.point_from_json(p) for p in _require(cfg, "path")]
    limit = jsonio.point_from_json(_require(cfg, "limit"))
    slope, samples = vanishing_probe(P, path, limit, precision=opts.precision)
    return {"slope": slope,
            "samples": [{"log_dist": d, "log_abs": v} for d, v in samples]}


def cmd_pair(cfg, opts):
    f = jsonio.form_from_config(_require(cfg, "f"))
    g = jsonio.form_from_config(_require(cfg, "g"))
    cut = {k: c for k, c in f.coeffs.items() if k[1] <= 0}
    from .modforms import VVForm

    fcut = VVForm(f.weight, f.rep, cut, f.ncosets, qmax=Fraction(1))
    return {"value": jsonio.rat(residue_pair(fcut, g))}


def cmd_duality_check(cfg, opts):
    P, _cusp, form = _build_from(cfg, opts)
    report = duality_relation_check(form, P)
    return {"pass": report.passed,
            "mismatches": [repr(m) for m in report.mismatches]}


HANDLERS = {
    "field-info": cmd_field_info,
    "lattice-info": cmd_lattice_info,
    "weilrep": cmd_weilrep,
    "form": cmd_form,
    "heegner": cmd_heegner,
    "chamber": cmd_chamber,
    "lift-build": cmd_lift_build,
    "lift-eval": cmd_lift_eval,
    "boundary": cmd_boundary,
    "vanishing-probe": cmd_vanishing_probe,
    "pair": cmd_pair,
    "duality-check": cmd_duality_check,
}


def _usage(out=sys.stderr):
    print("usage: ulift <command> --config FILE [--threads N] "
          "[--precision {double,extended}] [--truncation-height H] "
          "[--factor-floor F]", file=out)
    print("commands: %s" % ", ".join(COMMANDS), file=out)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        _usage(sys.stdout if argv else sys.stderr)
        return 0 if argv else 1
    command = argv[0]
    if command not in COMMANDS:
        print("unknown command %r" % command, file=sys.stderr)
        _usage()
        return 1
    parser = argparse.ArgumentParser(prog="ulift %s" % command, add_help=True)
    parser.add_argument("--config", required=True)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--precision", choices=("double", "extended"), default="double")
    parser.add_argument("--truncation-height", type=int, default=None)
    parser.add_argument("--factor-floor", type=float, default=None)
    try:
        opts = parser.parse_args(argv[1:])
    except SystemExit:
        return 1
    if opts.threads < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return 2
    try:
        cfg = _load_config(opts.config)
        result = HANDLERS[command](cfg, opts)
    except ValidationError as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return 2
    except DomainError as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 3
    print(jsonio.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
