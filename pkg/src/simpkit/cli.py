"""Command-line interface: ``simpkit <command> ...``.

Exit codes: 0 success, 1 computation or input failure, 2 usage error.
Reports are ``Key: value`` lines; ``--json`` switches to one JSON document.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import interchange
from .bistellar import AnnealingParams, is_manifold_heuristic
from .catalog import load_catalog, load_entry, search_by_attribute, search_by_name
from .catalog import g_vector, h_vector
from .complex import (SimplicialComplex, euler_characteristic, f_vector, from_facets, is_pseudomanifold,
                      neighborliness)
from .errors import QueryError, SimpkitError
from .homology import fundamental_cycle, homology, intersection_form, is_orientable
from .permgroups import PermGroup, automorphism_group, complex_from_generators

log = logging.getLogger("simpkit")

PROPS = ("dim", "f", "g", "h", "chi", "homology", "neighborliness", "pseudomanifold", "orientable",
         "parity", "signature", "automorphisms", "pi1", "morse", "perfect", "tight")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input helpers ---------------------------------------------------------------

def _parse_int_lists(text: str, what: str) -> list[list[int]]:
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
            return [[int(v) for v in s] for s in data]
        except (ValueError, TypeError):
            raise UsageError(f"cannot read {what} as a JSON list of integer lists") from None
    out = []
    for chunk in text.replace(";", "\n").splitlines():
        chunk = chunk.split("#", 1)[0].replace(",", " ").strip()
        if chunk:
            try:
                out.append([int(v) for v in chunk.split()])
            except ValueError:
                raise UsageError(f"cannot read {what}: {chunk!r}") from None
    return out


def read_complex(path) -> SimplicialComplex:
    """Native document, TOPAZ-compatible text or a plain facet list, by content."""
    text = Path(path).read_text(encoding="utf-8")
    head = text.lstrip()
    if head.startswith("format_version"):
        return interchange.loads(text)
    if head.startswith("_type") or head.startswith("FACETS"):
        return interchange.import_topaz(text, Path(path).stem)
    try:
        facets = _parse_int_lists(text, f"facets in {path}")
    except UsageError as exc:
        raise SimpkitError(str(exc)) from None
    if not facets:
        raise SimpkitError(f"{path} holds no facets")
    return from_facets(facets, Path(path).stem)


# -- formatting ------------------------------------------------------------------

def format_homology(H) -> str:
    return "[" + ",".join(f"({g.rank},[{','.join(map(str, g.torsion))}])" for g in H) + "]"


def _fmt_list(xs) -> str:
    return "[" + ", ".join(map(str, xs)) + "]"


def _bool(x) -> str:
    return {True: "true", False: "false", None: "undetermined"}[x]


def _emit(out, pairs, as_json):
    if as_json:
        out.write(json.dumps(dict(pairs), sort_keys=False) + "\n")
    else:
        for k, v in pairs:
            out.write(f"{k}: {v}\n")


# -- commands --------------------------------------------------------------------

def cmd_construct(args, out):
    if args.facets is not None:
        if args.seeds is not None:
            raise UsageError("--seeds only goes with --group")
        K = read_complex(args.facets)
        if args.name:
            K.name = args.name
    else:
        if args.seeds is None:
            raise UsageError("--group needs --seeds")
        G = PermGroup.from_text(Path(args.group).read_text(encoding="utf-8"))
        seeds = _parse_int_lists(args.seeds, "--seeds")
        K = complex_from_generators(G, seeds, name=args.name or None)
    if args.out:
        interchange.save(K, args.out)
    pairs = [("Name", K.name), ("Dim", K.dim), ("F", _fmt_list(f_vector(K)))]
    if args.json:
        pairs = [("Name", K.name), ("Dim", K.dim), ("F", f_vector(K))]
    if args.out:
        pairs.append(("Saved", str(args.out)))
    _emit(out, pairs, args.json)
    return 0


def _signature_form(K, reverse):
    if not reverse:
        return intersection_form(K)
    signs = fundamental_cycle(K)
    if signs is None:
        return intersection_form(K)  # raises the non-orientable error
    return intersection_form(K, {f: -s for f, s in signs.items()})


def _order_arg(K, text):
    if not text:
        return list(K.labels)
    order = []
    for tok in text.replace(",", " ").split():
        try:
            order.append(int(tok))
        except ValueError:
            order.append(tok)
    return order


def cmd_props(args, out):
    names = [p.strip() for p in (args.props or "").split(",") if p.strip()]
    if not names:
        raise UsageError("--props needs at least one property name")
    unknown = [p for p in names if p not in PROPS]
    if unknown:
        raise UsageError(f"unknown properties: {', '.join(unknown)} (choose from {', '.join(PROPS)})")
    K = read_complex(args.file)
    js = args.json
    pairs = []
    for p in names:
        if p == "dim":
            pairs.append(("Dim", K.dim))
        elif p == "f":
            f = f_vector(K)
            pairs.append(("F", f if js else _fmt_list(f)))
        elif p == "g":
            v = g_vector(f_vector(K))
            pairs.append(("G", v if js else _fmt_list(v)))
        elif p == "h":
            v = h_vector(f_vector(K))
            pairs.append(("H", v if js else _fmt_list(v)))
        elif p == "chi":
            pairs.append(("Chi", euler_characteristic(K)))
        elif p == "homology":
            H = homology(K)
            pairs.append(("Homology", [[g.rank, list(g.torsion)] for g in H] if js else format_homology(H)))
        elif p == "neighborliness":
            pairs.append(("Neighborliness", neighborliness(K)))
        elif p == "pseudomanifold":
            v = is_pseudomanifold(K)
            pairs.append(("Pseudomanifold", v if js else _bool(v)))
        elif p == "orientable":
            v = is_orientable(K)
            pairs.append(("Orientable", v if js else _bool(v)))
        elif p == "parity":
            pairs.append(("Parity", _signature_form(K, args.reverse_orientation).parity))
        elif p == "signature":
            t = list(_signature_form(K, args.reverse_orientation).signature_triple)
            pairs.append(("Signature", t if js else _fmt_list(t)))
        elif p == "automorphisms":
            A = automorphism_group(K)
            pairs.append(("AutOrder", A.order()))
            pairs.append(("AutTransitivity", A.transitivity()))
        elif p == "pi1":
            from .fpgroup import fundamental_group_presentation, simplify_presentation

            P = fundamental_group_presentation(K)
            pairs.append(("Pi1Generators", len(P.generators)))
            pairs.append(("Pi1Relators", len(P.relators)))
            Q, verdict = simplify_presentation(P)
            pairs.append(("Pi1", verdict))
            pairs.append(("Pi1Simplified", str(Q)))
        elif p == "morse":
            from .morse import morse_multiplicity

            order = _order_arg(K, args.order)
            table = morse_multiplicity(K, order)
            if js:
                pairs.append(("Morse", table))
            else:
                for v, row in zip(order, table):
                    pairs.append((f"Morse[{v}]", _fmt_list(row)))
        elif p == "perfect":
            from .morse import is_perfect

            v = is_perfect(K, _order_arg(K, args.order))
            pairs.append(("Perfect", v if js else _bool(v)))
        elif p == "tight":
            from .morse import tightness

            verdict, reason = tightness(K, seed=args.seed)
            pairs.append(("Tight", verdict if js else _bool(verdict)))
            pairs.append(("TightReason", reason))
    _emit(out, pairs, js)
    return 0


def cmd_ismanifold(args, out):
    K = read_complex(args.file)
    params = AnnealingParams(seed=args.seed, max_rounds=args.budget)
    verdict = is_manifold_heuristic(K, params)
    out.write(verdict.text + "\n")
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(
            {str(k): v for k, v in verdict.certificate.items()}, indent=1, sort_keys=True) + "\n",
            encoding="utf-8")
        out.write(f"Certificate: {args.certificate}\n")
    else:
        culprit = None
        for k, rec in verdict.certificate.items():
            if rec.get("status") in ("budget_exhausted", "not_pseudomanifold", "homology", "link",
                                     "pinched_vertex", "empty", "not_pure"):
                culprit = (k, rec.get("status"))
                break
        if culprit is not None:
            out.write(f"Certificate: vertex {culprit[0]}: {culprit[1]}\n")
        else:
            out.write(f"Certificate: {len(verdict.certificate)} vertex links checked\n")
    return 0


def cmd_library(args, out):
    cat = load_catalog(args.catalog)
    if args.action == "search":
        if (args.name is None) == (args.query is None):
            raise UsageError("library search needs exactly one of --name or --query")
        if args.name is not None:
            hits = search_by_name(cat, args.name)
        else:
            try:
                hits = search_by_attribute(cat, args.query)
            except QueryError as exc:
                raise UsageError(f"bad query: {exc}") from None
        for i, nm in hits:
            out.write(f"{i}\t{nm}\n")
        return 0
    if args.action == "list":
        for e in cat:
            out.write(f"{e.id}\t{e.name}\n")
        return 0
    # load
    try:
        K = load_entry(cat, args.id)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 1
    if args.out:
        interchange.save(K, args.out)
    _emit(out, [("Id", args.id), ("Name", K.name), ("Dim", K.dim), ("F", _fmt_list(f_vector(K)))]
          + ([("Saved", str(args.out))] if args.out else []), False)
    return 0


def cmd_isomorphic(args, out):
    from .matching import is_isomorphic

    K, L = read_complex(args.first), read_complex(args.second)
    out.write(_bool(is_isomorphic(K, L)) + "\n")
    return 0


def cmd_export(args, out):
    K = read_complex(args.file)
    if args.format == "native":
        text = interchange.dumps(K)
    elif args.format == "topaz":
        text = interchange.export_topaz(K)
    else:
        text = interchange.export_typeset_table(K)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simpkit", description="Simplicial complex toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("construct", help="build a complex and save it")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--group", help="file with permutation generators in cycle notation")
    mode.add_argument("--facets", help="file with a facet list (or any readable complex)")
    c.add_argument("--seeds", help='seed simplices, e.g. "2,3,4,5,9;2,5,7,10,11"')
    c.add_argument("--name", default="")
    c.add_argument("--out", help="write the native document here")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("props", help="report properties of a complex")
    r.add_argument("file")
    r.add_argument("--props", required=True, help="comma-separated: " + ",".join(PROPS))
    r.add_argument("--order", help="vertex order for morse/perfect (default: label order)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--reverse-orientation", action="store_true",
                   help="evaluate the intersection form against the opposite orientation")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_props)

    m = sub.add_parser("ismanifold", help="bistellar manifold heuristic")
    m.add_argument("file")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--budget", type=int, default=AnnealingParams().max_rounds,
                   help="annealing rounds per link reduction")
    m.add_argument("--certificate", help="write the full certificate as JSON to this file")
    m.set_defaults(func=cmd_ismanifold)

    lib = sub.add_parser("library", help="search or load catalog entries")
    lib.add_argument("action", choices=("search", "load", "list"))
    lib.add_argument("--name")
    lib.add_argument("--query")
    lib.add_argument("--id", type=int)
    lib.add_argument("--out")
    lib.add_argument("--catalog", help="catalog file (default: $SIMPKIT_CATALOG or the bundled one)")
    lib.set_defaults(func=cmd_library)

    iso = sub.add_parser("isomorphic", help="combinatorial isomorphism test")
    iso.add_argument("first")
    iso.add_argument("second")
    iso.set_defaults(func=cmd_isomorphic)

    ex = sub.add_parser("export", help="write a complex in another format")
    ex.add_argument("file")
    ex.add_argument("--format", choices=("native", "topaz", "latex"), default="native")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("simpkit: a command is required (try --help)")
        if args.command == "library" and args.action == "load" and args.id is None:
            raise UsageError("library load needs --id")
        if args.verbose:
            logging.basicConfig(level=logging.INFO, stream=sys.stderr)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (SimpkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
