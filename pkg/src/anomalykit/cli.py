"""Command-line front end.

Exit status: 0 on success, 1 when a domain precondition fails (degenerate or
non-minimal model, Im(tau) <= 0, schema violation), 2 for usage errors and
unreadable or malformed input files.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import anomaly, genus, modular, weierstrass
from .algebra import partitions
from .upoly import Poly, format_factored, parse_coeffs


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True)


def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return lines


def _ord(x) -> str:
    return "inf" if x == float("inf") else str(x)


def _ord_json(x):
    return "inf" if x == float("inf") else x


# -- lgenus -------------------------------------------------------------------


def cmd_lgenus(args) -> list[str]:
    if args.k < 1:
        raise genus.GenusError("--k must be at least 1")
    if args.method == "generators":
        poly = genus.solve_l_via_generators(args.k)
    else:
        poly = genus.l_polynomial(args.k)
    if args.json:
        series = genus.l_series(args.k).q_coefficients
        return [
            _dump(
                {
                    "k": args.k,
                    "method": args.method,
                    "polynomial": str(poly),
                    "coefficients": {p.key(): str(poly.coefficient(p)) for p in partitions(args.k)},
                    "q_series": [str(c) for c in series.coeffs],
                }
            )
        ]
    return [f"L_{args.k} = {poly}"]


# -- signature ----------------------------------------------------------------


def _manifold_from_args(args) -> genus.ManifoldDescriptor:
    if bool(args.input) == bool(args.product):
        raise UsageError("give exactly one of --input or --product")
    if args.input:
        return genus.ManifoldDescriptor.from_json(_load_json(args.input))
    try:
        dims = [int(x) for x in args.product.split(",")]
    except ValueError:
        raise UsageError("--product expects comma-separated even dimensions, e.g. 2,2") from None
    return genus.product_manifold(dims)


def cmd_signature(args) -> list[str]:
    m = _manifold_from_args(args)
    poly = genus.l_polynomial(m.k)
    value = genus.evaluate_genus(m, poly)
    if args.json:
        return [
            _dump(
                {
                    "manifold": m.to_json(),
                    "l_polynomial": str(poly),
                    "signature": str(value),
                    "integral": value.denominator == 1,
                }
            )
        ]
    rows = [(p.key(), str(m.number(p))) for p in partitions(m.k)]
    lines = [f"dimension: {m.dimension}"]
    lines += _table(["partition", "pontrjagin number"], rows)
    lines.append(f"L_{m.k} = {poly}")
    lines.append(f"signature: {value}")
    if value.denominator != 1:
        lines.append("warning: value is not an integer; no closed manifold has these Pontrjagin numbers")
    return lines


# -- surfaces -----------------------------------------------------------------


def _surface(args) -> weierstrass.WeierstrassModel:
    return weierstrass.WeierstrassModel.from_json(_load_json(args.input))


def _fiber_rows(fibers):
    return [
        (f.place.label(), _ord(f.ord_g2), _ord(f.ord_g3), f.ord_disc, f.kodaira_type, f.place.degree)
        for f in fibers
    ]


def _fiber_json(fibers):
    return [
        {
            "place": f.place.key(),
            "ord_g2": _ord_json(f.ord_g2),
            "ord_g3": _ord_json(f.ord_g3),
            "ord_disc": f.ord_disc,
            "type": f.kodaira_type,
            "points": f.place.degree,
        }
        for f in fibers
    ]


def _ledger_lines(ledger: anomaly.AnomalyLedger) -> list[str]:
    phases = {p: (ccw, cw) for p, ccw, cw in anomaly.holonomy_phases(ledger)}
    rows = []
    for c in ledger.currents:
        ccw, cw = phases[c.place]
        twelfths = c.coeff * 12
        rows.append((c.place.label(), str(c.coeff), f"{twelfths}/12", c.place.degree, f"{ccw} / {cw}"))
    lines = _table(["place", "coeff", "in twelfths", "points", "phase ccw / cw (turns)"], rows)
    lines.append(f"continuous degree: {ledger.continuous_degree}")
    lines.append(f"total degree: {ledger.total_degree}")
    lines.append(f"holonomy group: Z_{anomaly.holonomy_group(ledger)}")
    return lines


def cmd_surface_analyze(args) -> list[str]:
    m = _surface(args)
    disc = weierstrass.discriminant(m)
    jn, jd = weierstrass.j_map(m)
    fibers = weierstrass.kodaira_classify(m)
    kind = weierstrass.surface_type(m)
    ledger = anomaly.det_line_chern(m)
    conn = anomaly.meromorphic_connection(m)
    if args.json:
        return [
            _dump(
                {
                    "model": m.to_json(),
                    "discriminant": disc.to_json(),
                    "j_map": {"numerator": jn.to_json(), "denominator": jd.to_json()},
                    "surface_type": kind,
                    "fibers": _fiber_json(fibers),
                    "ledger": ledger.to_json(),
                    "connection": {
                        "residues": [{"place": p.key(), "residue": str(r)} for p, r in conn.residues],
                        "residue_sum": str(conn.residue_sum),
                        "extended": conn.extended,
                    },
                }
            )
        ]
    lines = [
        f"n = {m.n}",
        f"g2 = {m.g2}",
        f"g3 = {m.g3}",
        f"discriminant = {disc}",
        f"discriminant (factored) = {format_factored(disc)}",
        f"j = ({jn}) / ({jd})",
        f"surface type: {kind}",
        "",
        "singular fibers:",
    ]
    lines += _fiber_rows_table(fibers)
    lines += ["", "anomaly ledger:"]
    lines += _ledger_lines(ledger)
    lines.append(
        f"connection residue sum: {conn.residue_sum}"
        + (" (per-place -ord/12 extension beyond nodal fibers)" if conn.extended else "")
    )
    return lines


def _fiber_rows_table(fibers) -> list[str]:
    return _table(["place", "ord g2", "ord g3", "ord disc", "type", "points"], _fiber_rows(fibers))


def _parse_poly_flag(text: str, name: str) -> Poly:
    try:
        return parse_coeffs([x for x in text.split(",")])
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"{name} expects comma-separated ascending coefficients, e.g. 0,1") from None


def cmd_surface_twist(args) -> list[str]:
    m = _surface(args)
    q = _parse_poly_flag(args.q, "--q")
    twisted = weierstrass.quadratic_twist(m, q)
    if args.minimize:
        twisted = weierstrass.minimal_model(twisted)
    if args.json:
        return [_dump(twisted.to_json())]
    lines = [f"twist by q = {q}", f"n = {twisted.n}", f"g2 = {twisted.g2}", f"g3 = {twisted.g3}"]
    report = weierstrass.minimality_check(twisted)
    if not report.minimal:
        lines.append("not minimal at: " + ", ".join(p.label() for p in report.offending))
        return lines
    lines += ["", "singular fibers:"]
    lines += _fiber_rows_table(weierstrass.kodaira_classify(twisted))
    return lines


# -- torsion ------------------------------------------------------------------


def cmd_torsion(args) -> list[str]:
    point = modular.ModuliPoint.parse(args.tau)
    policy = modular.TruncationPolicy(args.tail_bound, args.max_terms)
    values = {
        "tau": modular.format_complex(point.tau),
        "eta": modular.format_complex(modular.eta(point, policy)),
        "discriminant": modular.format_complex(modular.discriminant_tau(point, policy)),
        "j": modular.format_complex(modular.j_paper(point, policy)),
        "analytic_torsion": modular.format_real(modular.analytic_torsion(point, policy)),
        "quillen_norm_sq": modular.format_real(modular.quillen_norm_sq(point, policy)),
    }
    if args.json:
        return [_dump(values)]
    return [f"{k}: {v}" for k, v in values.items()]


# -- anomaly ------------------------------------------------------------------


def cmd_anomaly(args) -> list[str]:
    m = _surface(args)
    ledger = anomaly.twisted_det_chern(m, args.rank, args.degR)
    if args.json:
        return [_dump(ledger.to_json())]
    lines = [f"rank {args.rank}, deg R = {args.degR}, n = {m.n}"]
    lines += _ledger_lines(ledger)
    if ledger.local_anomaly_canceled:
        lines.append("continuous part: 0; local anomaly canceled")
    else:
        needed = anomaly.cancellation_degree(args.rank, m.n)
        lines.append(
            f"continuous part: {ledger.continuous_degree}; local anomaly present (deg R = {needed} cancels it)"
        )
    return lines


# -- spectral -----------------------------------------------------------------


def cmd_spectral(args) -> list[str]:
    m = _surface(args)
    data = anomaly.SpectralCoverData.from_json(_load_json(args.cover))
    cover = anomaly.spectral_cover(m, data)
    if args.json:
        return [_dump(cover.to_json())]
    return [
        f"x(t) = ({cover.x_num}) / ({cover.x_den})",
        f"branch polynomial = {cover.branch}",
        f"branch degree: {cover.branch_degree} (bound 3*deg R = {cover.degree_bound})",
        f"generic: {'yes' if cover.generic else 'no'}",
    ]


# -- entry point --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 on usage errors, as argparse does
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anomalykit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("lgenus", help="print the Hirzebruch L-polynomial L_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["series", "generators"], default="series")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lgenus)

    p = sub.add_parser("signature", help="evaluate L_k on Pontrjagin numbers")
    p.add_argument("--input", help="manifold JSON file")
    p.add_argument("--product", help="even complex dimensions of CP factors, e.g. 2,2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("surface-analyze", help="discriminant, j-map, fibers and ledger")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface_analyze)

    p = sub.add_parser("surface-twist", help="quadratic twist of a Weierstrass model")
    p.add_argument("--input", required=True)
    p.add_argument("--q", required=True, help="ascending coefficients of the twist polynomial")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface_twist)

    p = sub.add_parser("torsion", help="eta, discriminant, j, analytic torsion at tau")
    p.add_argument("--tau", required=True, help='e.g. "0.3+0.8i"')
    p.add_argument("--tail-bound", type=float, default=modular.DEFAULT_POLICY.tail_bound)
    p.add_argument("--max-terms", type=int, default=modular.DEFAULT_POLICY.max_terms)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("anomaly", help="twisted determinant-bundle ledger")
    p.add_argument("--input", required=True)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--degR", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_anomaly)

    p = sub.add_parser("spectral", help="spectral double cover data")
    p.add_argument("--input", required=True)
    p.add_argument("--cover", required=True, help="cover JSON file {degR, a0, a2}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectral)
    return parser


DOMAIN_ERRORS = (
    genus.GenusError,
    weierstrass.SurfaceError,
    anomaly.AnomalyError,
    modular.ModularError,
    OverflowError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
