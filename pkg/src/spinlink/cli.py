"""Command-line front end: ``spinlink <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import abelian
from .abelian import subgroup_generate
from .boundary import (
    BordismBoundaryData,
    bordism_data_validate,
    composite_partition_function,
    composite_twisted_partition,
    diagonal_subgroup,
    fold,
    folded_coordinates,
    gapped_boundary_data,
)
from .condense import bosons, condense, gapped_boundary_vector, lagrangians, wall_surgery, wall_surgery_sequence
from .errors import SpinlinkError
from .kirby import KirbyDiagram, lens_diagram, parse, serialize, to_gram, validate_even, zn_gauge_diagram
from .lattice import DiscriminantData, GramLattice, discriminant_theory
from .narain import (
    ThetaParams,
    gapped_partition_function,
    modular_covariance_check,
    parse_tau,
    partition_function,
    polarization_from_dict,
    standard_polarization,
    twisted_partition,
)
from .toporder import AnyonTheory, central_charge_phase, gauss_milgram, modular_data

TABLE_LIMIT = 256


class UsageError(Exception):
    pass


@dataclass
class Source:
    theory: AnyonTheory
    diagram: KirbyDiagram | None = None
    disc: DiscriminantData | None = None


def example_diagram(name: str) -> KirbyDiagram:
    if name == "toric":
        return zn_gauge_diagram(2)
    kind, _, arg = name.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise UsageError(f"unknown example {name!r}; use toric, lens:N or zn-gauge:N") from None
    if kind == "lens":
        return lens_diagram(n)
    if kind == "zn-gauge":
        return zn_gauge_diagram(n)
    raise UsageError(f"unknown example {name!r}; use toric, lens:N or zn-gauge:N")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def load_source(name: str, require_diagram: bool = False) -> Source:
    """A Kirby file, theory document, lattice document, ``-`` or an example name."""
    if name != "-" and not os.path.exists(name):
        diagram = example_diagram(name)
        return _from_diagram(diagram)
    text = _read_text(name)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict) and "orders" in doc and not require_diagram:
        return Source(AnyonTheory.from_dict(doc))
    if isinstance(doc, dict) and "gram" in doc and not require_diagram:
        lat = GramLattice.from_dict(doc)
        disc = discriminant_theory(lat)
        return Source(disc.theory, None, disc)
    return _from_diagram(parse(text))


def _from_diagram(diagram: KirbyDiagram) -> Source:
    report = validate_even(diagram)
    if not report:
        from .errors import SpinViolation

        raise SpinViolation(f"odd framing on {', '.join(report.offending)}: not a spin diagram")
    disc = discriminant_theory(to_gram(diagram))
    return Source(disc.theory, diagram, disc)


def parse_tuples(text: str) -> list[list[int]]:
    """``"1,0;0,1"`` -> ``[[1, 0], [0, 1]]``."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append([int(x) for x in chunk.split(",")])
        except ValueError:
            raise UsageError(f"cannot parse coefficient tuple {chunk!r}") from None
    return out


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=False))
    else:
        print("\n".join(lines))


def _fmt(a) -> str:
    return "(" + ",".join(str(x) for x in a.coeffs) + ")"


def _theory_summary(theory: AnyonTheory) -> tuple[dict, list[str]]:
    doc = {"anyons": theory.size, "theory": theory.to_dict()}
    lines = [f"anyons: {theory.size}", f"group: {theory.group}"]
    if theory.nondegenerate:
        sigma = central_charge_phase(theory)
        doc["sigma_mod8"] = sigma.numerator * 8 // sigma.denominator
        lines.append(f"sigma mod 8: {doc['sigma_mod8']}")
    if theory.size <= TABLE_LIMIT:
        spins = theory.spins()
        doc["spins"] = {_fmt(a): str(s) for a, s in zip(theory.anyons(), spins)}
        lines.append("anyon      q")
        lines += [f"{_fmt(a):<10} {s}" for a, s in zip(theory.anyons(), spins)]
    return doc, lines


def cmd_from_kirby(args):
    src = load_source(args.source, require_diagram=True)
    doc, lines = _theory_summary(src.theory)
    _emit(args, doc, lines)


def cmd_anyons(args):
    src = load_source(args.source)
    t = src.theory
    rows = [(a, t.q(a), a.order()) for a in t.anyons()]
    doc = {"anyons": [{"label": list(a.coeffs), "q": str(q), "order": o} for a, q, o in rows]}
    lines = ["anyon      order  q"] + [f"{_fmt(a):<10} {o:<6} {q}" for a, q, o in rows]
    _emit(args, doc, lines)


def cmd_smatrix(args):
    src = load_source(args.source)
    t = src.theory
    modular_data(t)  # raises for degenerate forms
    elems = list(t.anyons())
    table = [[str(t.pairing(a, b)) for b in elems] for a in elems]
    doc = {"labels": [list(a.coeffs) for a in elems], "L": table,
           "T": [str(t.q(a)) for a in elems],
           "normalization": "S(a,b) = exp(2 pi i L(a,b)) / sqrt|D|"}
    width = max(len(x) for row in table for x in row) + 1
    lines = ["L(a,b) with S = exp(2 pi i L)/sqrt|D|"]
    lines.append(" " * 10 + "".join(f"{_fmt(b):>{width}}" for b in elems))
    for a, row in zip(elems, table):
        lines.append(f"{_fmt(a):<10}" + "".join(f"{x:>{width}}" for x in row))
    _emit(args, doc, lines)


def cmd_central_charge(args):
    src = load_source(args.source)
    gm = gauss_milgram(src.theory)
    sigma = central_charge_phase(src.theory)
    s8 = sigma.numerator * 8 // sigma.denominator
    doc = {"gauss_milgram": [gm.real, gm.imag], "sigma_mod8": s8}
    _emit(args, doc, [f"Gauss-Milgram sum: {gm.real:.12g}{gm.imag:+.12g}i", f"sigma mod 8: {s8}"])


def cmd_bosons(args):
    src = load_source(args.source)
    bs = bosons(src.theory)
    _emit(args, {"bosons": [list(b.coeffs) for b in bs]},
          [f"{len(bs)} bosons"] + [_fmt(b) for b in bs])


def cmd_lagrangians(args):
    src = load_source(args.source)
    subs = lagrangians(src.theory)
    doc = {"lagrangians": [[list(m.coeffs) for m in s.members] for s in subs]}
    lines = [f"{len(subs)} Lagrangian subgroups"]
    lines += ["{" + ", ".join(_fmt(m) for m in s.members) + "}" for s in subs]
    _emit(args, doc, lines)


def _subgroup(theory, text):
    return subgroup_generate(theory.group, parse_tuples(text))


def cmd_condense(args):
    src = load_source(args.source)
    res = condense(src.theory, _subgroup(src.theory, args.subgroup))
    doc, lines = _theory_summary(res.condensed)
    doc["wall_anyons"] = list(res.wall_anyons.orders)
    lines = [f"wall anyons: {res.wall_anyons} ({res.wall_anyons.cardinality})",
             "condensed theory:"] + ["  " + x for x in lines]
    _emit(args, doc, lines)


def cmd_wall_surgery(args):
    src = load_source(args.source, require_diagram=True)
    lat = src.disc.lattice
    meridians = parse_tuples(args.meridian)
    if not meridians:
        raise UsageError("--meridian needs at least one vector")
    extended = wall_surgery(lat, meridians[0])
    final = wall_surgery_sequence(lat, meridians)
    theory = discriminant_theory(final).theory
    doc, lines = _theory_summary(theory)
    doc["extended_matrix"] = extended.matrix()
    doc["final_matrix"] = final.matrix()
    out = ["extended linking matrix:"] + ["  " + " ".join(f"{x:>3}" for x in r) for r in extended.gram]
    out += ["condensed theory:"] + ["  " + x for x in lines]
    _emit(args, doc, out)


def _params(args) -> ThetaParams:
    return ThetaParams(radius=args.radius, eta_terms=args.eta_terms, tol=args.tol)


def _polarization(args, src: Source):
    if args.polarization:
        return polarization_from_dict(src.disc.lattice, json.loads(_read_text(args.polarization)))
    return standard_polarization(src.disc.lattice)


def cmd_partition(args):
    src = load_source(args.source)
    if src.disc is None:
        raise UsageError("partition needs a Kirby diagram or lattice, not a bare theory")
    pol = _polarization(args, src)
    anyon = parse_tuples(args.anyon)[0] if args.anyon else [0] * src.theory.group.rank
    tau = parse_tau(args.tau)
    z = twisted_partition(pol, src.disc, anyon, tau, _params(args))
    doc = {"value": [z.value.real, z.value.imag], "error": z.error, "points": z.n_points,
           "radius": z.radius}
    _emit(args, doc, [f"Z = {z.value.real:.15g}{z.value.imag:+.15g}i",
                      f"error bound: {z.error:.3g}  ({z.n_points} lattice points, H <= {z.radius:.4g})"])


def _report_lines(report):
    lines = ["anyon      q      T-res      S-res(+)   S-res(-)"]
    for a, q, rt, rp, rm in report.rows:
        lines.append(f"{_fmt(a):<10} {str(q):<6} {rt:<10.3g} {rp:<10.3g} {rm:<10.3g}")
    verdict = "pass" if report.passed else "FAIL"
    lines.append(f"max T residual {report.t_residual:.3g}, max S residual "
                 f"{report.s_residual:.3g} (convention {report.s_convention}): {verdict}")
    return lines


def _report_doc(report):
    return {"t_residual": report.t_residual, "s_residual_plus": report.s_residual_plus,
            "s_residual_minus": report.s_residual_minus, "s_convention": report.s_convention,
            "passed": report.passed}


def cmd_check_modular(args):
    src = load_source(args.source)
    tau = parse_tau(args.tau)
    if args.subgroup is not None:
        sub = _subgroup(src.theory, args.subgroup)
        vec = {a: int(a in sub) for a in src.theory.anyons()}
        z, central = gapped_partition_function(vec), (0, 0)
    else:
        if src.disc is None:
            raise UsageError("gapless check needs a Kirby diagram or lattice")
        pol = _polarization(args, src)
        z, central = partition_function(pol, src.disc, _params(args)), pol.signature
    report = modular_covariance_check(src.theory, z, central, tau, args.check_tol)
    _emit(args, _report_doc(report), _report_lines(report))
    return 0 if report.passed else 1


def cmd_composite(args):
    data = BordismBoundaryData.from_dict(json.loads(_read_text(args.file)))
    bordism_data_validate(data)
    tau = parse_tau(args.tau)
    anyons = [data.bulk.group.element(x) for x in parse_tuples(args.anyon)] if args.anyon \
        else list(data.bulk.anyons())
    rows = [(a, composite_twisted_partition(data, a, tau, _params(args), args.normalization))
            for a in anyons]
    doc = {"values": [{"anyon": list(a.coeffs), "value": [z.value.real, z.value.imag],
                       "error": z.error} for a, z in rows]}
    lines = [f"{_fmt(a):<10} {z.value.real:.12g}{z.value.imag:+.12g}i  (err {z.error:.2g})"
             for a, z in rows]
    if args.check:
        p, m = data.resolved_polarization.signature
        report = modular_covariance_check(
            data.bulk, composite_partition_function(data, _params(args), args.normalization),
            (p, m), tau, args.check_tol)
        doc["covariance"] = _report_doc(report)
        lines += _report_lines(report)
    _emit(args, doc, lines)


def cmd_fold(args):
    source = load_source(args.source).theory
    target = load_source(args.target).theory
    if args.subgroup is None:
        coords, sub = diagonal_subgroup(source)
        if source != target:
            raise UsageError("the diagonal boundary needs source == target; pass --subgroup")
    else:
        coords = folded_coordinates(source, target)
        sub = _subgroup(coords.product, args.subgroup)
    wall = fold(source, target, gapped_boundary_data(coords.product, sub))
    pairs = sorted(wall.support(), key=lambda p: (p[0].coeffs, p[1].coeffs))
    transparent = wall.is_transparent()
    doc = {"support": [[list(a.coeffs), list(b.coeffs)] for a, b in pairs],
           "transparent": transparent}
    lines = ["source     target"] + [f"{_fmt(a):<10} {_fmt(b)}" for a, b in pairs]
    lines.append("transparent wall" if transparent else "non-transparent wall")
    _emit(args, doc, lines)


def cmd_examples(args):
    text = serialize(example_diagram(args.name))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_oracle(args):
    from .oracles import run_surgery_suite

    checked, failures = run_surgery_suite(args.cases, args.seed)
    _emit(args, {"checked": checked, "failures": failures},
          [f"wall surgery vs condensation: {checked} bosons checked, {failures} failures"])
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinlink", description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-12,
                        help="truncation tolerance for adaptive theta sums")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument("--max-group-size", type=int, default=None,
                        help="enumeration bound on |D|")
    parser.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, source=True):
        p = sub.add_parser(name, help=help_)
        if source:
            p.add_argument("source", help="Kirby/theory/lattice file, '-', or toric | lens:N | zn-gauge:N")
        p.set_defaults(func=func)
        return p

    def numeric(p):
        p.add_argument("--tau", default="0.1+1.2i")
        p.add_argument("--radius", type=float, default=None, help="H-norm cutoff (default: adaptive)")
        p.add_argument("--eta-terms", type=int, default=100)
        p.add_argument("--polarization", help="file with {\"pos_basis\": [[...], ...]}")

    add("from-kirby", cmd_from_kirby, "anyon theory of an even Kirby diagram")
    add("anyons", cmd_anyons, "list anyons with spins")
    add("smatrix", cmd_smatrix, "braiding table and T")
    add("central-charge", cmd_central_charge, "Gauss-Milgram sum and sigma mod 8")
    add("bosons", cmd_bosons, "anyons with q = 0")
    add("lagrangians", cmd_lagrangians, "Lagrangian subgroups")
    p = add("condense", cmd_condense, "condense an isotropic subgroup")
    p.add_argument("--subgroup", required=True, help='generators, e.g. "1,0;0,1"')
    p = add("wall-surgery", cmd_wall_surgery, "Wall surgery on meridian vectors")
    p.add_argument("--meridian", required=True, help='meridian coordinates, e.g. "0,1"')
    p = add("partition", cmd_partition, "Narain twisted partition function")
    p.add_argument("--anyon", help='anyon coefficients, e.g. "1"')
    numeric(p)
    p = add("check-modular", cmd_check_modular, "modular covariance residuals")
    p.add_argument("--subgroup", help="check the gapped indicator of this subgroup instead")
    p.add_argument("--check-tol", type=float, default=1e-6)
    numeric(p)
    p = add("composite", cmd_composite, "composite boundary partition vector", source=False)
    p.add_argument("file", help="bordism boundary data file")
    p.add_argument("--anyon")
    p.add_argument("--normalization", choices=["weighted", "indicator"], default="weighted")
    p.add_argument("--check", action="store_true", help="also run the covariance check")
    p.add_argument("--check-tol", type=float, default=1e-6)
    numeric(p)
    p = add("fold", cmd_fold, "domain wall from a gapped boundary of source x conj(target)")
    p.add_argument("target")
    p.add_argument("--subgroup", help="Lagrangian generators in product coordinates (default: diagonal)")
    p = add("examples", cmd_examples, "write an example Kirby diagram", source=False)
    p.add_argument("name", help="toric | lens:N | zn-gauge:N")
    p.add_argument("-o", "--output")
    p = add("oracle", cmd_oracle, "randomized Wall-surgery oracle suite", source=False)
    p.add_argument("--cases", type=int, default=50)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_group_size is not None:
        abelian.set_enumeration_bound(args.max_group_size)
    try:
        rc = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except SpinlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
