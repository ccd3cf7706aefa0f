"""Command-line interface.

Subcommands: bound, search, construct, design (td/affine/projective/wfc/
delete-point/verify), verify, catalog (show/store/check). Output is
line-oriented and stable for scripting.

Exit codes: 0 success (search: proven optimal), 1 verification/validation
failure, 2 incomplete or best-effort search, 3 I/O, format, or usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog as catalog_mod
from . import compose as compose_mod
from . import designs, fileio, search as search_mod
from .bounds import upper_bound
from .codes import Code, CodeParams, Composition, verify_code
from .search import SearchBudget, SearchIncomplete

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCOMPLETE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are format errors, not "incomplete"
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_IO)


def _params_from_args(args) -> CodeParams:
    return CodeParams(args.q, args.n, args.d, Composition.parse(args.w))


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text)


def _cmd_bound(args) -> int:
    result = upper_bound(_params_from_args(args))
    print(result.value)
    print(result.rule.value)
    print(result.citation)
    return EXIT_OK


def _load_ingredient_dir(path: Path) -> dict:
    out = {}
    for file in sorted(path.glob("k*.ccc")):
        try:
            size = int(file.stem[1:])
        except ValueError:
            raise fileio.FormatError(f"bad ingredient name {file.name}", str(file))
        out[size] = fileio.read_code(file)
    if not out:
        raise fileio.FormatError(f"no k<SIZE>.ccc files in {path}", str(path))
    return out


def _cmd_search(args) -> int:
    params = _params_from_args(args)
    bound = upper_bound(params).value
    budget = SearchBudget(
        seed=args.seed,
        max_iterations=args.budget if args.budget else 1_000_000,
        restarts=args.restarts,
    )

    proven = False
    if args.mode == "exact":
        try:
            code = search_mod.max_code_exact(
                params,
                budget=budget if args.budget else None,
                max_universe=args.max_universe,
            )
            proven = True
        except SearchIncomplete as exc:
            code = exc.best or Code(params, [])
    elif args.mode == "cyclic":
        outcome = search_mod.max_code_cyclic(
            params, budget=budget if args.budget else None
        )
        code = outcome.code
        proven = len(code) == bound
    else:
        from .bounds import universe_size

        target = args.target if args.target else min(bound, universe_size(params))
        code = search_mod.local_search(params, target, budget)
        proven = len(code) == bound

    _say(args, f"size {len(code)}")
    _say(args, f"bound {bound}")
    _say(args, f"gap {bound - len(code)}")
    _say(args, f"status {'proven-optimal' if proven else 'best-effort'}")
    if args.output:
        fileio.write_code(code, args.output)
    return EXIT_OK if proven else EXIT_INCOMPLETE


def _cmd_construct(args) -> int:
    design = fileio.read_design(args.design)
    ingredients = _load_ingredient_dir(Path(args.ingredients))
    sample = next(iter(ingredients.values()))
    params = CodeParams(
        sample.params.q,
        design.point_count,
        sample.params.d,
        sample.params.comp,
    )
    if isinstance(design, designs.GroupDivisibleDesign):
        group_ingredients = (
            _load_ingredient_dir(Path(args.groups)) if args.groups else {}
        )
        predicted = compose_mod.predicted_size(design, ingredients, group_ingredients)
        code = compose_mod.gdd_compose(design, ingredients, group_ingredients, params)
    else:
        predicted = compose_mod.predicted_size(design, ingredients)
        code = compose_mod.pbd_compose(design, ingredients, params)
    report = verify_code(code)
    _say(args, f"predicted {predicted}")
    _say(args, f"actual {len(code)}")
    _say(args, f"verify {'ok' if report.ok else 'FAIL'}")
    if args.output:
        fileio.write_code(code, args.output)
    if not report.ok or predicted != len(code):
        return EXIT_INVALID
    return EXIT_OK


def _emit_design(args, design) -> None:
    text = fileio.format_design(design)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_design(args) -> int:
    if args.design_cmd == "td":
        _emit_design(args, designs.transversal_design(args.k, args.g))
    elif args.design_cmd == "affine":
        _emit_design(args, designs.affine_plane(args.p))
    elif args.design_cmd == "projective":
        _emit_design(args, designs.projective_plane(args.p))
    elif args.design_cmd == "delete-point":
        design = fileio.read_design(args.file)
        _emit_design(args, designs.delete_point(design, args.point))
    elif args.design_cmd == "wfc":
        master = fileio.read_design(args.master)
        if not isinstance(master, designs.GroupDivisibleDesign):
            raise ValueError("wfc needs a GDD master (design file with groups)")
        import json

        weights = json.loads(Path(args.weights).read_text())
        ingredient_dir = Path(args.ingredients)
        uniform = ingredient_dir / "uniform.json"
        mapping = {}
        for i, block in enumerate(master.blocks):
            per_block = ingredient_dir / f"block{i}.json"
            source = per_block if per_block.exists() else uniform
            if not source.exists():
                raise fileio.FormatError(
                    f"no ingredient for block {i} (block{i}.json or uniform.json)",
                    str(ingredient_dir),
                )
            ing = fileio.read_design(source)
            if not isinstance(ing, designs.GroupDivisibleDesign):
                raise ValueError(f"ingredient {source} must be a GDD")
            mapping[tuple(block)] = ing
        _emit_design(args, designs.wfc(master, weights, mapping))
    else:  # verify
        design = fileio.read_design(args.file)
        if isinstance(design, designs.GroupDivisibleDesign):
            report = designs.verify_gdd(design)
            kind = "gdd"
        else:
            report = designs.verify_pbd(design)
            kind = "pbd"
        print(f"{kind} {'ok' if report.ok else 'FAIL'}")
        if not report.ok:
            _say(args, report.summary())
            return EXIT_INVALID
    return EXIT_OK


def _cmd_verify(args) -> int:
    code = fileio.read_code(args.file)
    report = verify_code(code)
    print("ok" if report.ok else "FAIL")
    if not report.ok:
        _say(args, report.summary())
        return EXIT_INVALID
    return EXIT_OK


def _cmd_catalog(args) -> int:
    store = catalog_mod.Catalog(args.dir)
    if args.catalog_cmd == "show":
        given = [args.q, args.n, args.d, args.w]
        if any(v is not None for v in given):
            if any(v is None for v in given):
                raise ValueError("catalog show needs all of -q -n -d -w, or none")
            params = _params_from_args(args)
            entries = [catalog_mod.catalog_lookup(params, store)]
        else:
            keys = set(catalog_mod.seeded_params()) | set(store.stored())
            entries = [
                catalog_mod.catalog_lookup(p, store)
                for p in sorted(keys, key=lambda p: (p.q, p.d, p.comp.counts, p.n))
            ]
        for e in entries:
            if args.strict:
                e = e.strict_view()
            print(
                f"{e.params.q} {e.params.n} {e.params.d} {e.params.comp} "
                f"{e.lower} {e.upper} {e.status.value} "
                f"{e.provenance!r} {e.witness or '-'}"
            )
        return EXIT_OK
    if args.catalog_cmd == "store":
        code = fileio.read_code(args.file)
        entry = store.store(code, provenance=args.provenance)
        _say(args, f"stored {entry.params} lower={entry.lower} witness={entry.witness}")
        return EXIT_OK
    # check
    problems = store.check()
    for p in problems:
        print(p)
    _say(args, f"{len(problems)} problem(s)")
    return EXIT_INVALID if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cccodes", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="search seed")
    parser.add_argument("--quiet", action="store_true", help="essential output only")
    parser.add_argument(
        "--strict",
        action="store_true",
        help="downgrade witness-less exact catalog entries in reports",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_params(p):
        p.add_argument("-q", type=int, required=True, help="alphabet size")
        p.add_argument("-n", type=int, required=True, help="length")
        p.add_argument("-d", type=int, required=True, help="minimum distance")
        p.add_argument("-w", required=True, help="composition, e.g. 2,1")

    p = sub.add_parser("bound", help="best applicable upper bound")
    add_params(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("search", help="search for a large code")
    add_params(p)
    p.add_argument("--mode", choices=("exact", "cyclic", "sls"), required=True)
    p.add_argument("--target", type=int, help="local-search target size")
    p.add_argument("--budget", type=int, help="iteration/node budget")
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument(
        "--max-universe",
        type=int,
        default=search_mod.DEFAULT_UNIVERSE_GUARD,
        help="exact-search universe guard",
    )
    p.add_argument("-o", "--output", help="write the code file here")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("construct", help="compose ingredient codes through a design")
    p.add_argument("--design", required=True)
    p.add_argument("--ingredients", required=True, help="directory of k<SIZE>.ccc files")
    p.add_argument("--groups", help="directory of group ingredient codes")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("design", help="generate or verify designs")
    dsub = p.add_subparsers(dest="design_cmd", required=True)
    d = dsub.add_parser("td", help="transversal design over a prime field")
    d.add_argument("-k", type=int, required=True)
    d.add_argument("-g", type=int, required=True, help="group size (prime)")
    d.add_argument("-o", "--output")
    d = dsub.add_parser("affine", help="affine plane of prime order")
    d.add_argument("-p", type=int, required=True)
    d.add_argument("-o", "--output")
    d = dsub.add_parser("projective", help="projective plane of prime order")
    d.add_argument("-p", type=int, required=True)
    d.add_argument("-o", "--output")
    d = dsub.add_parser("wfc", help="weighting construction")
    d.add_argument("--master", required=True)
    d.add_argument("--weights", required=True, help="JSON list of point weights")
    d.add_argument("--ingredients", required=True, help="directory of design files")
    d.add_argument("-o", "--output")
    d = dsub.add_parser("delete-point", help="turn blocks through a point into groups")
    d.add_argument("file")
    d.add_argument("point", type=int)
    d.add_argument("-o", "--output")
    d = dsub.add_parser("verify", help="verify a design file")
    d.add_argument("file")
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("verify", help="verify a code file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalog", help="best-known values catalog")
    p.add_argument("--dir", default="catalog", help="catalog directory")
    csub = p.add_subparsers(dest="catalog_cmd", required=True)
    c = csub.add_parser("show", help="list entries (or one parameter set)")
    c.add_argument("-q", type=int)
    c.add_argument("-n", type=int)
    c.add_argument("-d", type=int)
    c.add_argument("-w")
    c = csub.add_parser("store", help="store a witness code file")
    c.add_argument("file")
    c.add_argument("--provenance", default="local search")
    c = csub.add_parser("check", help="validate seeds and stored witnesses")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_IO
    try:
        return args.func(args)
    except fileio.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except catalog_mod.CatalogBusy as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SearchIncomplete as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
