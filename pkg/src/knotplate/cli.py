"""knotplate command line: parse -> medial -> presentation -> simplify /
complexity / certify -> mesh, plus the fixture catalog and assignment scans.

Exit codes: 0 success, 1 usage, 2 invalid diagram, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .diagram import (DiagramError, component_count, faces, is_alternating,
                      parse_pd, validate)
from .fixtures import ALIASES, FIXTURES, fixture_pd
from .fundgroup import (abelianization, certify_unknot, complexity,
                        spanning_tree, template_presentation, tietze_simplify,
                        wirtinger_presentation)
from .medial import (build_medial, graph_counts, medial_to_dot,
                     medial_to_json, skein_graph, skein_to_dot, skein_to_json)
from .report import render_figure, rows_to_csv, scan_assignments
from .template import (build_complex, build_mesh, complex_counts,
                       complex_to_json, export_obj, layout)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _add_input(sub):
    g = sub.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", help="built-in fixture name (see `catalog`)")
    g.add_argument("--in", dest="infile", help="PD file, or - for stdin")
    sub.add_argument("--outer-face", type=int, default=None,
                     help="override the outer face index")
    sub.add_argument("--tree-root", type=int, default=None,
                     help="override the spanning tree root vertex")


def _add_out(sub):
    sub.add_argument("--out", help="write output to this file (default stdout)")


def _read_text(args):
    if args.fixture:
        return fixture_pd(args.fixture)
    if args.infile == "-":
        return sys.stdin.read()
    with open(args.infile) as fh:
        return fh.read()


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(data):
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _pipeline(args, d):
    fs = faces(d, outer=args.outer_face)
    m = build_medial(d, fs)
    upper = skein_graph(m, "upper")
    lower = skein_graph(m, "lower")
    tree = spanning_tree(m, root=args.tree_root)
    pres = template_presentation(m, upper, lower, tree)
    return fs, m, upper, lower, tree, pres


def _load(args, text=None):
    if text is None:
        text = _read_text(args)
    d = parse_pd(text)
    rep = validate(d)
    if not rep.ok:
        raise DiagramError("invalid diagram: " + "; ".join(rep.issues))
    return d, rep


def cmd_info(args):
    d, rep = _load(args)
    fs, m, upper, lower, tree, pres = _pipeline(args, d)
    tc = build_complex(m, upper, lower)
    cc = complex_counts(tc)
    gc = graph_counts(m)
    data = {
        "C": rep.C,
        "components": rep.component_count,
        "E_exterior": len(fs.corners[fs.outer_face]),
        "T_bigons": rep.T_bigons,
        "alternating": is_alternating(d),
        "face_sizes": sorted(len(c) for c in fs.corners),
        "outer_face": fs.outer_face,
        "medial": gc,
        "generators": pres.n_generators,
        "relators": pres.n_relators,
        "template": {k: cc[k] for k in
                     ("internal_walls", "ring_walls", "saddle_polygons",
                      "lid_facets", "total_polygons", "edge_incidences",
                      "euler_characteristic")},
    }
    if args.format == "json":
        _emit(args, _json(data))
    else:
        lines = [
            "crossings: %d" % data["C"],
            "components: %d" % data["components"],
            "exterior corners (E): %d" % data["E_exterior"],
            "bigon faces (T): %d" % data["T_bigons"],
            "alternating: %s" % ("yes" if data["alternating"] else "no"),
            "faces: %d (outer %d)" % (len(fs.corners), fs.outer_face),
            "medial graph: %d vertices, %d edges, cycle rank %d"
            % (gc["vertices"], gc["edges"], gc["cycle_rank"]),
            "presentation: %d generators, %d relators"
            % (pres.n_generators, pres.n_relators),
            "template: %d walls + %d ring + %d saddles + %d lids = %d polygons"
            % (cc["internal_walls"], cc["ring_walls"], cc["saddle_polygons"],
               cc["lid_facets"], cc["total_polygons"]),
            "euler characteristic: %d" % cc["euler_characteristic"],
        ]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_graphs(args):
    d, _ = _load(args)
    fs, m, upper, lower, _, _ = _pipeline(args, d)
    which = {"medial": m, "upper": upper, "lower": lower}[args.which]
    if args.which == "medial":
        text = medial_to_dot(m) if args.format == "dot" else _json(medial_to_json(m))
    else:
        text = (skein_to_dot(which) if args.format == "dot"
                else _json(skein_to_json(which)))
    _emit(args, text)
    return EXIT_OK


def _presentation_out(args, pres):
    if args.format == "json":
        _emit(args, _json(pres.to_json_dict()))
    else:
        _emit(args, pres.to_text())


def cmd_present(args):
    d, _ = _load(args)
    _, _, _, _, _, pres = _pipeline(args, d)
    _presentation_out(args, pres)
    return EXIT_OK


def cmd_wirtinger(args):
    d, _ = _load(args)
    _presentation_out(args, wirtinger_presentation(d))
    return EXIT_OK


def cmd_simplify(args):
    d, _ = _load(args)
    _, _, _, _, _, pres = _pipeline(args, d)
    res = tietze_simplify(pres, max_letters=args.max_letters)
    if args.format == "json":
        data = res.presentation.to_json_dict()
        data["complete"] = res.complete
        data["abelianization"] = str(abelianization(res.presentation))
        _emit(args, _json(data))
    else:
        text = res.presentation.to_text()
        if not res.complete:
            text += "# budget exhausted; presentation not fully simplified\n"
        _emit(args, text)
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_complexity(args):
    d, _ = _load(args)
    _, _, _, _, _, pres = _pipeline(args, d)
    rep = complexity(pres)
    if args.format == "json":
        _emit(args, _json({
            "lengths": list(rep.lengths),
            "geometric_mean": rep.geometric_mean,
            "arithmetic_mean": rep.arithmetic_mean,
            "zero_length_count": rep.zero_length_count,
            "warnings": list(rep.warnings),
        }))
    else:
        _emit(args, "%.3f\n" % rep.geometric_mean)
    return EXIT_OK


def cmd_certify(args):
    text = _read_text(args)
    if "X" not in _strip_comments(text):
        # 0-crossing unknot: the group is Z with no construction needed.
        _emit(args, "CERTIFIED: pi1 = Z (0-crossing unknot)\n")
        return EXIT_OK
    d, rep = _load(args, text=text)
    if rep.component_count != 1:
        raise DiagramError("certification is defined for knots only "
                           "(diagram has %d components)" % rep.component_count)
    _, _, _, _, _, pres = _pipeline(args, d)
    res = certify_unknot(pres, max_letters=args.max_letters)
    if res.certified:
        _emit(args, "CERTIFIED: pi1 = Z\n")
        return EXIT_OK
    _emit(args, "INCONCLUSIVE: simplification stalled at %d generators, "
                "%d relators\n" % (res.simplified.n_generators,
                                   res.simplified.n_relators))
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_mesh(args):
    d, _ = _load(args)
    _, m, upper, lower, _, _ = _pipeline(args, d)
    tc = build_complex(m, upper, lower)
    if args.format == "json":
        _emit(args, complex_to_json(tc) + "\n")
        return EXIT_OK
    pl = layout(m, ring_radius=args.ring_radius)
    mesh = build_mesh(tc, pl, height=args.height,
                      saddle_radius=args.saddle_radius)
    _emit(args, export_obj(mesh, comment=args.fixture or args.infile))
    return EXIT_OK


def cmd_catalog(args):
    if args.emit:
        _emit(args, fixture_pd(args.emit) + "\n")
        return EXIT_OK
    if args.format == "json":
        data = {name: {"pd": pd, "description": desc}
                for name, (pd, desc) in FIXTURES.items()}
        data["_aliases"] = dict(ALIASES)
        _emit(args, _json(data))
        return EXIT_OK
    lines = []
    for name in sorted(FIXTURES):
        pd, desc = FIXTURES[name]
        d = parse_pd(pd)
        lines.append("%-13s C=%d mu=%d  %s"
                     % (name, len(d.crossings), component_count(d), desc))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_scan(args):
    d, _ = _load(args)
    rows = scan_assignments(d, certify=not args.no_certify,
                            max_letters=args.max_letters)
    _emit(args, rows_to_csv(rows))
    if args.figure:
        render_figure(rows, args.figure)
    return EXIT_OK


def build_parser():
    top = _Parser(prog="knotplate",
                  description="Knotspace templates, group presentations, and "
                              "presentation complexity from knot diagrams.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(name, help_, fmt=("text", "json"), default_fmt="text"):
        p = sub.add_parser(name, help=help_)
        _add_input(p)
        _add_out(p)
        if fmt:
            p.add_argument("--format", choices=fmt, default=default_fmt)
        return p

    common("info", "diagram, medial, and template counts")
    p = common("graphs", "export the medial / upper / lower graph",
               fmt=("dot", "json"), default_fmt="dot")
    p.add_argument("--which", choices=("medial", "upper", "lower"),
                   default="medial")
    common("present", "raw template presentation of the knot group")
    common("wirtinger", "classical Wirtinger presentation")
    p = common("simplify", "run the Tietze simplification cascade")
    p.add_argument("--max-letters", type=int, default=10 ** 6)
    common("complexity", "geometric-mean presentation complexity")
    p = common("certify", "one-sided unknottedness certificate", fmt=None)
    p.add_argument("--max-letters", type=int, default=10 ** 6)
    p = common("mesh", "3D polygon mesh of the template",
               fmt=("obj", "json"), default_fmt="obj")
    p.add_argument("--height", type=float, default=1.0)
    p.add_argument("--saddle-radius", type=float, default=None)
    p.add_argument("--ring-radius", type=float, default=2.0)
    p = sub.add_parser("catalog", help="list or emit the built-in fixtures")
    p.add_argument("--emit", help="print this fixture's PD text")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_out(p)
    p = common("scan-assignments",
               "tabulate all 2^C over/under assignments of a shadow", fmt=None)
    p.add_argument("--figure", help="also render a summary chart to this file")
    p.add_argument("--no-certify", action="store_true")
    p.add_argument("--max-letters", type=int, default=10 ** 6)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "info": cmd_info,
        "graphs": cmd_graphs,
        "present": cmd_present,
        "wirtinger": cmd_wirtinger,
        "simplify": cmd_simplify,
        "complexity": cmd_complexity,
        "certify": cmd_certify,
        "mesh": cmd_mesh,
        "catalog": cmd_catalog,
        "scan-assignments": cmd_scan,
    }
    try:
        return handlers[args.command](args)
    except DiagramError as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_INVALID
    except KeyError as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_INVALID
    except (ValueError, OSError) as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
