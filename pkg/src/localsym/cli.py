"""Command-line surface: every subcommand reads JSON-ish arguments, prints
one JSON envelope {"command", "version", "payload"} on stdout and is
deterministic for identical inputs.

Exit codes: 0 on success, 1 on domain errors (with an error payload),
2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
from fractions import Fraction

from . import distinction, forms, invgraph, localfield, numfield, prasad, symspace, weyl

VERSION = 1


class CliError(ValueError):
    pass


def _emit(command, payload):
    print(json.dumps({"command": command, "version": VERSION, "payload": payload},
                     sort_keys=True, separators=(",", ":")))


def _fraction(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise CliError(f"bad rational {s!r}: {e}")


def _json_arg(s, what):
    try:
        return json.loads(s)
    except json.JSONDecodeError as e:
        raise CliError(f"bad JSON for {what}: {e}")


def _json_file(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise CliError(f"cannot read {what}: {e}")
    except json.JSONDecodeError as e:
        raise CliError(f"bad JSON in {what}: {e}")


def _pair_from(d):
    return symspace.ClassicalPair.from_json(d)


def _comp_from(d):
    return weyl.Composition.from_json(d)


def _w_from(d):
    return weyl.SignedInvolution.from_json(d)


def cmd_hilbert(args):
    p = localfield.Prime(args.p)
    sym = localfield.hilbert_rational(_fraction(args.a), _fraction(args.b), p)
    _emit("hilbert", {"symbol": sym})


def cmd_form_invariants(args):
    case = forms.Case(args.case)
    p = localfield.Prime(args.p)
    ext = localfield.QuadExtension.of(args.ext_d, p) if args.ext_d is not None else None
    if args.gram:
        gram = _json_arg(args.gram, "--gram")
        form, _ = forms.diagonalize(gram, p, case, ext)
    else:
        entries = [_fraction(str(e)) for e in _json_arg(args.entries, "--entries")]
        form = forms.DiagForm(case, p, tuple(entries), ext=ext)
    _emit("form-invariants", forms.invariants(form).to_json())


def cmd_orbit_count(args):
    if args.pair:
        pair = _pair_from(_json_arg(args.pair, "--pair"))
        component = symspace.Component(args.component) if args.component else symspace.Component.FULL
        count = symspace.orbit_count_X(pair, component)
    else:
        case = forms.Case(args.case)
        disc = None
        if args.disc is not None:
            if args.p is None:
                raise CliError("--disc needs --p")
            disc = localfield.reduce(_fraction(args.disc), localfield.Prime(args.p))
        count = forms.orbit_count(case, args.n, disc)
    _emit("orbit-count", {"count": count})


def cmd_involutions(args):
    comp = weyl.Composition(tuple(_json_arg(args.parts, "--parts")), args.r)
    ws = weyl.enumerate_involutions(comp, circ=args.circ)
    _emit("involutions", {"count": len(ws), "involutions": [w.to_json() for w in ws]})


def cmd_build_tw(args):
    pair = _pair_from(_json_arg(args.pair, "--pair"))
    comp = _comp_from(_json_arg(args.comp, "--comp"))
    w = _w_from(_json_arg(args.w, "--w"))
    t = weyl.build_tw(comp, w, pair)
    _emit("build-tw", {"matrix": t.to_json()})


def cmd_descend(args):
    comp = _comp_from(_json_arg(args.comp, "--comp"))
    w = _w_from(_json_arg(args.w, "--w"))
    conv = invgraph.Convention(wall_double=args.wall_double)
    vertex = invgraph.Vertex(comp, w)
    path, terminal = invgraph.descend(vertex, conv)
    _emit(
        "descend",
        {
            "path": [step.to_json() for step in path],
            "terminal": terminal.to_json(),
            "terminal_is_final": invgraph.is_terminal(terminal, conv),
        },
    )


def cmd_cone(args):
    w = _w_from(_json_arg(args.w, "--w"))
    conv = invgraph.Convention(wall_double=args.wall_double)
    theta = invgraph.ThetaAction.from_involution(w)
    lam = [_fraction(str(x)) for x in _json_arg(args.lam, "--lambda")]
    inside = invgraph.cone_contains(theta, lam, _fraction(args.c), conv)
    _emit("cone", {"contains": inside})


def cmd_distinguish(args):
    pair = _pair_from(_json_file(args.pair, "--pair"))
    comp = _comp_from(_json_file(args.comp, "--comp"))
    data = distinction.CuspidalDatum.from_json(_json_file(args.data, "--data"))
    target = distinction.orbit_from_json(_json_file(args.target, "--target"))
    verdict = distinction.decide(pair, comp, data, target)
    _emit("distinguish", verdict.to_json())


def cmd_prasad_char(args):
    group = prasad.GroupDescriptor.from_json(_json_arg(args.group, "--group"))
    extd = _json_arg(args.ext, "--ext")
    ext = localfield.QuadExtension.of(extd["d"], localfield.Prime(extd["p"]))
    formula = prasad.prasad_character(group, ext)
    payload = {"omega": formula.to_json(), "trivial_as_character": formula.is_trivial}
    if args.opposition:
        payload["opposition"] = prasad.opposition_group(group, extd["d"]).to_json()
    _emit("prasad-char", payload)


def cmd_spinor_norm(args):
    data = _json_file(args.matrix, "--matrix")
    g = data["matrix"] if isinstance(data, dict) else data
    gram = data.get("gram") if isinstance(data, dict) else None
    s = prasad.spinor_norm_rational(g, gram)
    payload = {"rational": str(s)}
    if args.p:
        payload["class"] = localfield.reduce(s, localfield.Prime(args.p)).to_json()
    _emit("spinor-norm", payload)


def _selftest_checks(bound):
    vals = [v for v in range(1, bound + 1)] + [-v for v in range(1, bound + 1)]
    checks = {}
    ok = 0
    bad = 0
    for p in (2, 3, 5):
        prime = localfield.Prime(p)
        good = True
        for a in vals:
            for b in vals:
                if localfield.hilbert_rational(a, b, prime) != localfield.hilbert_oracle(a, b, prime):
                    good = False
        checks[f"hilbert-formula-vs-oracle@p={p}"] = good
        ok += good
        bad += not good
    import random

    rng = random.Random(77)
    good = all(
        localfield.reciprocity_check(
            Fraction(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice([1, -1]),
            Fraction(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice([1, -1]),
        ).ok
        for _ in range(200)
    )
    checks["hilbert-reciprocity"] = good
    ok += good
    bad += not good

    gram = prasad.w_gram(2)
    good = True
    for t in (2, 3, 5, 7):
        g = [[Fraction(t), 0], [0, Fraction(1, t)]]
        if prasad.spinor_norm_rational(g, gram) != prasad.squarefree_part(t):
            good = False
    checks["spinor-norm-so2"] = good
    ok += good
    bad += not good

    field = numfield.BiquadField(-1, 3)
    pair = symspace.ClassicalPair(
        forms.Case.UNITARY, 0, (), 1, localfield.Prime(3), field
    )
    data = symspace.gamma_index_data(pair)
    closed = symspace.gamma_bit(pair, field.element(-1))
    good = data.minus_one_bit == closed
    checks["gamma-oracle-vs-closed"] = good
    ok += good
    bad += not good
    return checks, ok, bad


def cmd_selftest(args):
    bound = int(os.environ.get("LOCALSYM_SELFTEST_BOUND", "6"))
    checks, ok, bad = _selftest_checks(bound)
    _emit("selftest", {"passed": ok, "failed": bad, "checks": checks, "bound": bound})
    if bad:
        raise SystemExit(1)


def make_parser():
    p = argparse.ArgumentParser(prog="localsym", description=__doc__)
    p.add_argument("--output", choices=["json"], default="json", help="output format")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("hilbert", help="quadratic Hilbert symbol at p")
    q.add_argument("-a", required=True)
    q.add_argument("-b", required=True)
    q.add_argument("-p", type=int, required=True)
    q.set_defaults(fn=cmd_hilbert)

    q = sub.add_parser("form-invariants", help="complete invariants of a diagonal or Gram form")
    q.add_argument("--case", default="orthogonal")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--entries", help="JSON list of rationals")
    q.add_argument("--gram", help="JSON matrix")
    q.add_argument("--ext-d", dest="ext_d", type=int)
    q.set_defaults(fn=cmd_form_invariants)

    q = sub.add_parser("orbit-count", help="orbit counts for forms or the symmetric space")
    q.add_argument("--case")
    q.add_argument("--n", type=int)
    q.add_argument("--disc")
    q.add_argument("--p", type=int)
    q.add_argument("--pair", help="pair JSON: count symmetric-space orbits instead")
    q.add_argument("--component", choices=[c.value for c in symspace.Component])
    q.set_defaults(fn=cmd_orbit_count)

    q = sub.add_parser("involutions", help="compatible signed involutions")
    q.add_argument("--parts", required=True, help="JSON list of block sizes")
    q.add_argument("--r", type=int, default=0)
    q.add_argument("--circ", action="store_true")
    q.set_defaults(fn=cmd_involutions)

    q = sub.add_parser("build-tw", help="the block-matrix representative t_w")
    q.add_argument("--pair", required=True)
    q.add_argument("--comp", required=True)
    q.add_argument("--w", required=True)
    q.set_defaults(fn=cmd_build_tw)

    q = sub.add_parser("descend", help="descent through the involution graph")
    q.add_argument("--comp", required=True)
    q.add_argument("--w", required=True)
    q.add_argument("--wall-double", action="store_true")
    q.set_defaults(fn=cmd_descend)

    q = sub.add_parser("cone", help="membership in the convergence cone")
    q.add_argument("--w", required=True)
    q.add_argument("--lambda", dest="lam", required=True, help="JSON list of rationals")
    q.add_argument("--c", default="0")
    q.add_argument("--wall-double", action="store_true")
    q.set_defaults(fn=cmd_cone)

    q = sub.add_parser("distinguish", help="decide distinction for a cuspidal datum")
    q.add_argument("--pair", required=True, help="pair JSON file")
    q.add_argument("--comp", required=True, help="composition JSON file")
    q.add_argument("--data", required=True, help="cuspidal datum JSON file")
    q.add_argument("--target", required=True, help="target orbit JSON file")
    q.set_defaults(fn=cmd_distinguish)

    q = sub.add_parser("prasad-char", help="the quadratic-character table row")
    q.add_argument("--group", required=True)
    q.add_argument("--ext", required=True)
    q.add_argument("--opposition", action="store_true")
    q.set_defaults(fn=cmd_prasad_char)

    q = sub.add_parser("spinor-norm", help="spinor norm of a rational isometry")
    q.add_argument("--matrix", required=True, help="JSON file with the matrix (and optional gram)")
    q.add_argument("--p", type=int)
    q.set_defaults(fn=cmd_spinor_norm)

    q = sub.add_parser("selftest", help="run the bundled oracle suites")
    q.set_defaults(fn=cmd_selftest)
    return p


DOMAIN_ERRORS = (
    localfield.LocalFieldError,
    numfield.NumFieldError,
    forms.FormsError,
    symspace.SymspaceError,
    weyl.WeylError,
    invgraph.InvGraphError,
    distinction.DistinctionError,
    prasad.PrasadError,
)


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        raise SystemExit(2 if e.code not in (0, None) else 0)
    try:
        args.fn(args)
    except CliError as e:
        print(json.dumps({"error": str(e)}, sort_keys=True))
        raise SystemExit(2)
    except DOMAIN_ERRORS as e:
        print(json.dumps({"error": str(e)}, sort_keys=True))
        raise SystemExit(1)
    except (KeyError, TypeError) as e:
        print(json.dumps({"error": f"malformed input: {e}"}, sort_keys=True))
        raise SystemExit(2)
    return 0


if __name__ == "__main__":
    main()
