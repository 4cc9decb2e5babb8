"""hyperval: command-line front end.

Construct, validate, classify, quotient, compare and enumerate hyperfields,
run the valuation checkers, and replay the named end-to-end scenarios.  All
structured I/O is JSON; reports are deterministic (sorted keys, no
timestamps) and carry the tool version plus the window parameters used.

Exit codes: 0 every requested check passed, 1 a check failed (the report
holds witnesses), 2 malformed input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import valuation as vn
from .finite import (FiniteHyperfield, MalformedTableError, build_K, build_S,
                     build_W, build_finite_field, classify,
                     enumerate_hyperfields, find_isomorphism, is_field,
                     list_hyperideals, quotient_hyperfield, squares_subgroup,
                     subgroup_closure, validate)
from .leading_terms import (CollapsedConstantsContext, CompositeContext,
                            LTContext)
from .ordgroup import Cut, invariance_group
from .tropical import TropicalHyperfield, tropical_axiom_suite


class ParseFailure(Exception):
    """Bad input: wrong URI, unreadable file, malformed table."""


def _tool() -> dict:
    return {"name": "hyperval", "version": __version__}


def _report(verb: str, params: dict, payload: dict, passed: bool) -> dict:
    out = {"report_version": 1, "tool": _tool(), "verb": verb,
           "params": params, "passed": passed}
    out.update(payload)
    return out


def _emit(obj: dict, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- input loading -------------------------------------------------------------

def load_finite(spec: str) -> FiniteHyperfield:
    """builtin:K | builtin:S | builtin:W | builtin:F<q> | path to a table."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name == "K":
            return build_K()
        if name == "S":
            return build_S()
        if name == "W":
            return build_W()
        if name.startswith("F"):
            try:
                q = int(name[1:])
            except ValueError:
                raise ParseFailure(f"bad field size in {spec!r}")
            try:
                return build_finite_field(q)
            except ValueError as e:
                raise ParseFailure(str(e))
        raise ParseFailure(f"unknown builtin {name!r} (use K, S, W or F<q>)")
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseFailure(f"cannot read {spec!r}: {e}")
    except json.JSONDecodeError as e:
        raise ParseFailure(f"{spec!r} is not JSON: {e}")
    if isinstance(data, dict) and "table" in data and "names" not in data:
        data = data["table"]  # a quotient/enumerate report wrapping a table
    try:
        return FiniteHyperfield.from_json(data)
    except (MalformedTableError, KeyError, TypeError, ValueError) as e:
        raise ParseFailure(f"{spec!r} is not a hyperfield table: {e}")


def _tropical_spec(spec: str) -> TropicalHyperfield | None:
    for prefix, strict in (("tropical-strict:", True), ("tropical:", False)):
        if spec.startswith(prefix):
            try:
                rank = int(spec[len(prefix):])
            except ValueError:
                raise ParseFailure(f"bad rank in {spec!r}")
            if rank < 1:
                raise ParseFailure("tropical rank must be >= 1")
            return TropicalHyperfield(rank, strict=strict)
    return None


def _subgroup(F: FiniteHyperfield, spec: str) -> frozenset:
    if spec == "squares":
        return squares_subgroup(F)
    if spec == "units":
        return frozenset(F.units)
    try:
        gens = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise ParseFailure(f"bad subgroup {spec!r}: use 'squares', 'units' or "
                           "comma-separated element indices")
    if not gens:
        raise ParseFailure("empty generator list")
    try:
        return subgroup_closure(F, gens)
    except ValueError as e:
        raise ParseFailure(str(e))


def _load_backend(args):
    """Shared backend resolution for krasner/residue: a finite table URI,
    'kgamma' (needs --q/--gamma), 'composite' (needs --p), 'collapsed', or
    tropical:<rank> / tropical-strict:<rank>."""
    spec = args.backend
    if spec == "kgamma":
        ctx = LTContext(args.q, args.gamma)
        return ctx, vn.intrinsic_valuation(ctx), ctx.norm_cut()
    if spec == "composite":
        ctx = CompositeContext(args.p)
        return ctx, vn.intrinsic_valuation(ctx), ctx.norm_cut()
    if spec == "collapsed":
        ctx = CollapsedConstantsContext()
        return ctx, vn.intrinsic_valuation(ctx), ctx.norm_cut()
    trop = _tropical_spec(spec)
    if trop is not None:
        b = getattr(args, "norm_bound", 0)
        rho = Cut.le(trop.rank, (b,) + (0,) * (trop.rank - 1))
        return trop, vn.intrinsic_valuation(trop), rho
    F = load_finite(spec)
    backend = vn.FiniteBackend(F)
    return backend, vn.trivial_valuation(backend), Cut.whole(0)


# -- verbs ---------------------------------------------------------------------

def cmd_axioms(args) -> int:
    trop = _tropical_spec(args.input)
    if trop is not None:
        rep = tropical_axiom_suite(trop.rank, bound=args.window_bound,
                                   strict=trop.strict)
        params = {"input": args.input, "window_bound": args.window_bound}
    else:
        rep = validate(load_finite(args.input))
        params = {"input": args.input}
    _emit(_report("axioms", params, {"report": rep.to_json()}, rep.ok),
          args.output)
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    F = load_finite(args.input)
    rep = validate(F)
    cls = classify(F)
    payload = {"classification": cls.to_json(), "axioms_pass": rep.ok,
               "size": F.size}
    _emit(_report("classify", {"input": args.input}, payload, rep.ok),
          args.output)
    return 0 if rep.ok else 1


def cmd_quotient(args) -> int:
    try:
        F = build_finite_field(args.field)
    except ValueError as e:
        raise ParseFailure(str(e))
    T = _subgroup(F, args.subgroup)
    try:
        H = quotient_hyperfield(F, T)
    except ValueError as e:
        raise ParseFailure(str(e))
    payload = {"table": H.to_json(),
               "subgroup": sorted(T), "order": H.size}
    _emit(_report("quotient", {"field": args.field, "subgroup": args.subgroup},
                  payload, True), args.output)
    return 0


def cmd_iso(args) -> int:
    F = load_finite(args.left)
    G = load_finite(args.right)
    m = find_isomorphism(F, G)
    payload = {"isomorphic": m is not None,
               "map": None if m is None else list(m.map)}
    _emit(_report("iso", {"left": args.left, "right": args.right},
                  payload, m is not None), args.output)
    return 0 if m is not None else 1


def cmd_enumerate(args) -> int:
    try:
        found = enumerate_hyperfields(args.order, cap=args.cap)
    except ValueError as e:
        raise ParseFailure(str(e))
    tables = [F.to_json() for F in found]
    fields = sum(1 for F in found if is_field(F))
    payload = {"order": args.order, "count": len(found), "fields": fields,
               "tables": tables}
    _emit(_report("enumerate", {"order": args.order, "cap": args.cap},
                  payload, True), args.output)
    return 0


def cmd_hyperideals(args) -> int:
    F = load_finite(args.input)
    ideals = list_hyperideals(F)
    dichotomy = (len(ideals) == 2 and frozenset({0}) in ideals
                 and frozenset(range(F.size)) in ideals)
    payload = {"hyperideals": [sorted(s) for s in ideals],
               "only_trivial_and_whole": dichotomy}
    _emit(_report("hyperideals", {"input": args.input}, payload, dichotomy),
          args.output)
    return 0 if dichotomy else 1


def cmd_krasner(args) -> int:
    backend, v, rho = _load_backend(args)
    vrep = vn.is_valuation(backend, v, args.window_bound)
    krep = vn.check_krasner(backend, v, rho, args.window_bound)
    ok = vrep.ok and krep.ok
    payload = {"valuation": vrep.to_json(), "krasner": krep.to_json(),
               "norm": rho.to_json()}
    params = _backend_params(args)
    _emit(_report("krasner", params, payload, ok), args.output)
    return 0 if ok else 1


def cmd_residue(args) -> int:
    backend, v, _ = _load_backend(args)
    R = vn.residue_hyperfield(backend, v, args.window_bound)
    payload = {"residue": R.to_json(), "order": R.size,
               "is_field": is_field(R)}
    _emit(_report("residue", _backend_params(args), payload, True),
          args.output)
    return 0


def cmd_coarsen(args) -> int:
    ctx = CompositeContext(args.p)
    v = vn.intrinsic_valuation(ctx)
    rho = ctx.norm_cut()
    delta = invariance_group(rho)
    verdict = vn.check_coarsening_theorem(ctx, v, rho, args.window_bound)
    payload = {"norm": rho.to_json(), "invariance_group": delta.to_json(),
               "coarsening_matches_induced_ring": verdict}
    _emit(_report("coarsen", {"p": args.p, "window_bound": args.window_bound},
                  payload, verdict), args.output)
    return 0 if verdict else 1


def _backend_params(args) -> dict:
    params = {"backend": args.backend, "window_bound": args.window_bound}
    if args.backend == "kgamma":
        params.update(q=args.q, gamma=args.gamma)
    if args.backend == "composite":
        params.update(p=args.p)
    return params


# -- scenarios -----------------------------------------------------------------

def _claim(claims: list, text: str, passed: bool, witness=None) -> None:
    c = {"claim": text, "passed": bool(passed)}
    if witness is not None:
        c["witness"] = witness
    claims.append(c)


def scenario_example_last(args) -> tuple[dict, list]:
    ctx = CompositeContext(args.p)
    w = vn.intrinsic_valuation(ctx)
    u = vn.coarsening(w, invariance_group(ctx.norm_cut()))
    B = args.window_bound
    claims = []
    _claim(claims, "the fine map w is a valuation",
           vn.is_valuation(ctx, w, B).ok)
    _claim(claims, "the X-adic coarsening u is a valuation",
           vn.is_valuation(ctx, u, B).ok)
    witness = ctx.elem(0, "1/2")
    _claim(claims, "witness (0, 1/2) lies in O_u", u.ge_zero(witness),
           ctx.elem_json(witness))
    _claim(claims, "witness (0, 1/2) lies outside O_w",
           not w.ge_zero(witness), ctx.elem_json(witness))
    U = ctx.elements(B)
    _claim(claims, "O_w is contained in O_u on the window",
           all(u.ge_zero(x) for x in U if w.ge_zero(x)))
    _claim(claims, "w and u are inequivalent",
           not vn.equivalent(ctx, w, u, B))
    return {"p": args.p, "window_bound": B}, claims


def scenario_kgamma(args) -> tuple[dict, list]:
    ctx = LTContext(args.q, args.gamma)
    v = vn.intrinsic_valuation(ctx)
    rho = ctx.norm_cut()
    B = args.window_bound
    claims = []
    _claim(claims, "the leading-term map is a valuation",
           vn.is_valuation(ctx, v, B).ok)
    krep = vn.check_krasner(ctx, v, rho, B)
    _claim(claims, "the Krasner conditions hold (KVH1, KVH2)", krep.ok)
    _claim(claims, "the carrier is superiorly canonical on the window",
           vn.check_superiorly_canonical(ctx, B).ok)
    R = vn.residue_hyperfield(ctx, v, B)
    _claim(claims, f"the residue hyperfield is the field of order {args.q}",
           is_field(R) and R.size == args.q)
    _claim(claims, "ultrametric axioms and the ball identity hold",
           vn.ultrametric_report(ctx, v, rho, B).ok)
    _claim(claims, "the induced ring equals the valuation ring",
           vn.induced_matches_valuation_ring(ctx, v, B))
    return {"q": args.q, "gamma": args.gamma, "window_bound": B}, claims


def scenario_no_kraval(args) -> tuple[dict, list]:
    ctx = CollapsedConstantsContext()
    v = vn.intrinsic_valuation(ctx)
    B = args.window_bound
    claims = []
    _claim(claims, "the collapsed-constants map is a valuation",
           vn.is_valuation(ctx, v, B).ok)
    R = vn.residue_hyperfield(ctx, v, B)
    iso = find_isomorphism(R, build_K())
    _claim(claims, "the residue hyperfield is isomorphic to K",
           iso is not None)
    _claim(claims, "the residue hyperfield is not a field", not is_field(R))
    _claim(claims, "the natural candidate norm fails the Krasner conditions",
           not vn.check_krasner(ctx, v, ctx.norm_cut(), B).ok)
    all_fail = all(
        not vn.check_krasner(ctx, v, Cut.le(1, (b,)), B).ok
        for b in range(0, B + 1))
    _claim(claims,
           f"every initial-segment norm with bound in [0, {B}] fails",
           all_fail)
    return {"window_bound": B}, claims


def scenario_tropical_not_krasner(args) -> tuple[dict, list]:
    B = args.window_bound
    incl = TropicalHyperfield(1, strict=False)
    strict = TropicalHyperfield(1, strict=True)
    vi = vn.intrinsic_valuation(incl)
    vs = vn.intrinsic_valuation(strict)
    claims = []
    screp = vn.check_superiorly_canonical(incl, B)
    _claim(claims, "inclusive T(Z) fails superior canonicity at SCH1",
           not screp.check("SCH1").passed, screp.check("SCH1").witness)
    all_fail = all(
        not vn.check_krasner(incl, vi, Cut.le(1, (b,)), B).ok
        for b in range(0, B + 1))
    _claim(claims,
           f"no initial-segment norm with bound in [0, {B}] makes the "
           "identity on T(Z) a Krasner valuation", all_fail)
    _claim(claims, "strict T'(Z) is superiorly canonical on the window",
           vn.check_superiorly_canonical(strict, B).ok)
    _claim(claims, "the identity on strict T'(Z) is a Krasner valuation "
           "with norm {m <= 0}",
           vn.check_krasner(strict, vs, Cut.le(1, (0,)), B).ok)
    return {"window_bound": B}, claims


def scenario_coarsening_theorem(args) -> tuple[dict, list]:
    ctx = CompositeContext(args.p)
    v = vn.intrinsic_valuation(ctx)
    rho = ctx.norm_cut()
    delta = invariance_group(rho)
    B = args.window_bound
    claims = []
    _claim(claims, "the norm's invariance group is {0} x Z",
           delta.rank == 2 and delta.zeros == 1, delta.to_json())
    _claim(claims,
           "coarsening by the invariance group yields the induced ring",
           vn.check_coarsening_theorem(ctx, v, rho, B))
    ir = vn.induced_ring(ctx)
    w = ctx.elem(0, "1/2")
    _claim(claims, "the induced ring strictly contains O_v",
           ir.contains(w) and not v.ge_zero(w), ctx.elem_json(w))
    return {"p": args.p, "window_bound": B}, claims


SCENARIOS = {
    "example-last": (scenario_example_last, {"p": 2, "window_bound": 3}),
    "kgamma": (scenario_kgamma, {"q": 3, "gamma": 1, "window_bound": 2}),
    "no-kraval": (scenario_no_kraval, {"window_bound": 3}),
    "tropical-not-krasner": (scenario_tropical_not_krasner,
                             {"window_bound": 3}),
    "coarsening-theorem": (scenario_coarsening_theorem,
                           {"p": 2, "window_bound": 3}),
}


def cmd_scenario(args) -> int:
    if args.name not in SCENARIOS:
        raise ParseFailure(f"unknown scenario {args.name!r}; available: "
                           + ", ".join(sorted(SCENARIOS)))
    func, defaults = SCENARIOS[args.name]
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    params, claims = func(args)
    passed = all(c["passed"] for c in claims)
    out = {"report_version": 1, "tool": _tool(), "verb": "scenario",
           "scenario": args.name, "params": params, "claims": claims,
           "passed": passed}
    _emit(out, args.output)
    return 0 if passed else 1


# -- argument parsing ------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperval",
        description="validate, classify, quotient, enumerate and compare "
                    "hyperfields; run valuation and Krasner checks")
    p.add_argument("--version", action="version",
                   version=f"hyperval {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def out(sp):
        sp.add_argument("--output", help="write the JSON report here "
                        "instead of stdout")

    sp = sub.add_parser("axioms", help="run the axiom suite on a table or "
                        "a tropical carrier")
    sp.add_argument("input", help="builtin:K|S|W|F<q>, tropical:<rank>, "
                    "tropical-strict:<rank>, or a JSON table path")
    sp.add_argument("--window-bound", type=int, default=3)
    out(sp)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("classify", help="classification flags for a table")
    sp.add_argument("input")
    out(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("quotient", help="factor a finite field by a "
                        "subgroup of its units")
    sp.add_argument("--field", type=int, required=True,
                    help="prime power size q")
    sp.add_argument("--subgroup", required=True,
                    help="'squares', 'units', or comma-separated generators")
    out(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("iso", help="search for an isomorphism between two "
                        "tables")
    sp.add_argument("left")
    sp.add_argument("right")
    out(sp)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("enumerate", help="all hyperfields of a given order "
                        "up to isomorphism")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--cap", type=int, default=6, help="refuse orders above")
    out(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("hyperideals", help="list hyperideals of a table")
    sp.add_argument("input")
    out(sp)
    sp.set_defaults(func=cmd_hyperideals)

    def backend(sp, bound_default=3):
        sp.add_argument("backend",
                        help="kgamma | composite | collapsed | "
                        "tropical:<rank> | tropical-strict:<rank> | "
                        "builtin:... | table path")
        sp.add_argument("--q", type=int, default=3,
                        help="residue field size for kgamma")
        sp.add_argument("--gamma", type=int, default=1,
                        help="unit level for kgamma")
        sp.add_argument("--p", type=int, default=2,
                        help="prime for the composite backend")
        sp.add_argument("--window-bound", type=int, default=bound_default)
        out(sp)

    sp = sub.add_parser("krasner", help="valuation axioms plus the Krasner "
                        "conditions KVH1/KVH2")
    backend(sp)
    sp.add_argument("--norm-bound", type=int, default=0,
                    help="norm cut bound for tropical backends")
    sp.set_defaults(func=cmd_krasner)

    sp = sub.add_parser("residue", help="residue hyperfield of a backend")
    backend(sp)
    sp.set_defaults(func=cmd_residue)

    sp = sub.add_parser("coarsen", help="invariance group of the composite "
                        "backend's norm and the coarsening theorem verdict")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--window-bound", type=int, default=3)
    out(sp)
    sp.set_defaults(func=cmd_coarsen)

    sp = sub.add_parser("scenario", help="replay a named end-to-end scenario")
    sp.add_argument("name", help=", ".join(sorted(SCENARIOS)))
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--gamma", type=int, default=None)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--window-bound", type=int, default=None)
    out(sp)
    sp.set_defaults(func=cmd_scenario)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as e:
        print(f"hyperval: {e}", file=sys.stderr)
        return 2
    except MalformedTableError as e:
        print(f"hyperval: malformed table: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001  -- contract: internal errors exit 3
        print(f"hyperval: internal error: {type(e).__name__}: {e}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
