"""Command-line front end.

Subcommands: homology, charpoly, verify, bc. Input comes from a generator
(``--gen coordinate:<n> | braid:<n> | full:<p>,<n>``) or a file
(``--file <path>``) in the line-oriented arrangement format.

Exit codes: 0 success / all checks passed; 1 at least one check failed;
2 unparseable input; 3 precondition violation (e.g. rank too small).

Output is deterministic byte-for-byte for fixed input and flags; JSON
(``--json``) carries only integers and exact fraction strings. The
SHEAFLAT_THREADS environment variable caps the homology thread pool.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import arrangements as arr
from .arrangements import ArrangementLattice, beta_additivity_check, beta_invariant, char_poly
from .broken_circuits import bc_complex
from .complexes import homology
from .deletion_restriction import (
    deletion_restriction_les,
    fiber_lemma_check,
    lattice_complex,
    reduced_les_check,
)
from .errors import (
    ArrangementParseError,
    RankTooSmall,
    SheafLatError,
    SurjectivityHypothesisFails,
    VerificationError,
)
from .lattices import deletion
from .posets import mobius
from .sheaves import constant_sheaf, natural_sheaf

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _load(args) -> arr.Arrangement:
    if args.file:
        return arr.from_file(args.file)
    gen_text = args.gen
    try:
        name, _, rest = gen_text.partition(":")
        if name == "coordinate":
            return arr.coordinate(int(rest))
        if name == "braid":
            return arr.braid(int(rest))
        if name == "full":
            p, n = rest.split(",")
            return arr.full_field(int(p), int(n))
    except (ValueError, SheafLatError) as exc:
        raise ArrangementParseError(f"bad generator {gen_text!r}: {exc}") from exc
    raise ArrangementParseError(f"unknown generator {gen_text!r}")


def _lattice_summary(al: ArrangementLattice) -> dict:
    l = al.lattice
    return {
        "elements": al.poset.n,
        "rank": l.rank,
        "atoms": len(l.atoms),
        "essential": al.essential,
        "dim_intersection": al.intersection_dim,
        "mobius_from_bottom": [mobius(al.poset, l.bottom, x) for x in al.poset.elements()],
    }


def _input_echo(args) -> dict:
    return {"file": args.file} if args.file else {"gen": args.gen}


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    _emit_text(report, indent=0)


def _emit_text(node, indent: int) -> None:
    pad = "  " * indent
    if isinstance(node, dict):
        for key in sorted(node):
            value = node[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                sys.stdout.write(f"{pad}{key}:\n")
                _emit_text(value, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {_flat(value)}\n")
    elif isinstance(node, list):
        for item in node:
            if isinstance(item, (dict, list)):
                _emit_text(item, indent)
                sys.stdout.write("\n" if indent == 0 else "")
            else:
                sys.stdout.write(f"{pad}- {_flat(item)}\n")


def _is_flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return False


def _flat(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_flat(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_flat(v)}" for k, v in sorted(value.items())) + "}"
    return str(value)


def _profile_dict(profile) -> dict:
    return {str(i): d for i, d in sorted(profile.nonzero().items())}


# -- subcommands ------------------------------------------------------------


def cmd_homology(args) -> int:
    al = arr.build_lattice(_load(args))
    l = al.lattice
    if args.reduced and args.puncture == "top":
        raise SheafLatError("--reduced and --puncture top are mutually exclusive")
    exclude = {l.bottom}
    if args.puncture == "top":
        if l.rank < 2:
            raise RankTooSmall("puncturing the top needs rank >= 2")
        exclude.add(l.top)

    kind, _, param = args.sheaf.partition(":")
    if kind == "natural":
        if l.rank < 2:
            raise RankTooSmall(f"natural-sheaf homology needs rank >= 2, got {l.rank}")
        f = natural_sheaf(al)
    elif kind == "constant":
        f = constant_sheaf(al.poset, al.arrangement.field, int(param or "1"))
    else:
        raise ArrangementParseError(f"unknown sheaf {args.sheaf!r}")

    cx, _, _ = lattice_complex(l, f, exclude=exclude,
                               augment_base=l.bottom if args.reduced else None)
    profile = homology(cx)
    report = {
        "command": "homology",
        "input": _input_echo(args),
        "lattice": _lattice_summary(al),
        "sheaf": args.sheaf,
        "reduced": bool(args.reduced),
        "punctured": sorted(["bottom"] + (["top"] if args.puncture == "top" else [])),
        "homology": _profile_dict(profile),
    }
    _emit(report, args.json)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    al = arr.build_lattice(_load(args))
    chi = char_poly(al)
    report = {
        "command": "charpoly",
        "input": _input_echo(args),
        "lattice": _lattice_summary(al),
        "charpoly_low_degree_first": list(chi.coefficients),
    }
    if al.lattice.rank >= 2:
        report["beta"] = beta_invariant(al)
    _emit(report, args.json)
    return EXIT_OK


CHECK_NAMES = ("les", "reduced-les", "fiber", "charpoly-dr", "beta-additivity", "bc")


def cmd_verify(args) -> int:
    al = arr.build_lattice(_load(args))
    l = al.lattice
    requested = []
    for part in args.checks.split(","):
        part = part.strip()
        if part == "all":
            requested = list(CHECK_NAMES)
            break
        if part not in CHECK_NAMES:
            raise ArrangementParseError(f"unknown check {part!r}")
        requested.append(part)
    if args.atoms == "all":
        atom_list = list(l.atoms)
    else:
        try:
            idx = int(args.atoms)
            atom_list = [l.atoms[idx]]
        except (ValueError, IndexError) as exc:
            raise ArrangementParseError(f"bad --atoms {args.atoms!r}: {exc}") from exc

    f = natural_sheaf(al)
    verdicts = []
    for check in requested:
        verdicts.extend(_run_check(check, al, l, f, atom_list))
    all_pass = all(v["verdict"] in ("pass", "reported") for v in verdicts)
    report = {
        "command": "verify",
        "input": _input_echo(args),
        "lattice": _lattice_summary(al),
        "checks": verdicts,
        "all_passed": all_pass,
    }
    _emit(report, args.json)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def _run_check(check, al, l, f, atom_list):
    out = []

    def verdict(name, atom, ok, detail=None):
        entry = {"check": name, "verdict": "pass" if ok else "fail"}
        if atom is not None:
            entry["atom"] = atom
        if detail is not None:
            entry["detail"] = detail
        out.append(entry)

    if check == "les":
        for a in atom_list:
            rep = deletion_restriction_les(l, f, a)
            verdict("les", a, rep.passes, {
                "exact": rep.les.all_exact(),
                "total": _profile_dict(rep.total_profile),
                "deletion": _profile_dict(rep.deletion_profile),
                "restriction": _profile_dict(rep.restriction_profile),
                "coker_dim": rep.coker_dim,
            })
    elif check == "reduced-les":
        for a in atom_list:
            try:
                ok = reduced_les_check(l, f, a)
                verdict("reduced-les", a, ok)
            except SurjectivityHypothesisFails as exc:
                out.append({"check": "reduced-les", "atom": a,
                            "verdict": "reported", "detail": str(exc)})
    elif check == "fiber":
        for a in atom_list:
            verdict("fiber", a, fiber_lemma_check(l, f, a))
    elif check == "charpoly-dr":
        for a in atom_list:
            verdict("charpoly-dr", a, arr.charpoly_deletion_restriction_check(al, a))
    elif check == "beta-additivity":
        dependent = [a for a in atom_list if deletion(l, a)[0].rank == l.rank]
        if not dependent:
            out.append({"check": "beta-additivity", "verdict": "reported",
                        "detail": "no dependent atoms among those requested"})
        for a in dependent:
            verdict("beta-additivity", a, beta_additivity_check(al, a))
    elif check == "bc":
        res = bc_complex(l)
        counts_ok = all(res.increasing_chain_counts.get(x, 0)
                        == abs(mobius(al.poset, l.bottom, x))
                        for x in al.poset.elements())
        cone_ok = res.full_homology.nonzero() == {}
        expected = {l.rank - 2: beta_invariant(al)} if l.rank >= 2 else {}
        expected = {i: d for i, d in expected.items() if d}
        reduced_ok = res.reduced_homology.nonzero() == expected
        verdict("bc", None, counts_ok and cone_ok and reduced_ok, {
            "chain_counts_match_mobius": counts_ok,
            "full_bc_contractible": cone_ok,
            "reduced_bc_homology": _profile_dict(res.reduced_homology),
        })
    return out


def cmd_bc(args) -> int:
    al = arr.build_lattice(_load(args))
    l = al.lattice
    order = sorted(l.atoms)
    if args.order != "default":
        name, _, seed = args.order.partition(":")
        if name != "random":
            raise ArrangementParseError(f"unknown order {args.order!r}")
        try:
            rng = random.Random(int(seed))
        except ValueError as exc:
            raise ArrangementParseError(f"bad seed {seed!r}") from exc
        rng.shuffle(order)
    res = bc_complex(l, atom_order=order)
    report = {
        "command": "bc",
        "input": _input_echo(args),
        "lattice": _lattice_summary(al),
        "atom_order": list(res.atom_order),
        "simplex_counts": {str(d): c for d, c in sorted(res.simplex_counts().items())},
        "full_bc_homology": _profile_dict(res.full_homology),
        "reduced_bc_homology": _profile_dict(res.reduced_homology),
    }
    _emit(report, args.json)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", help="coordinate:<n> | braid:<n> | full:<p>,<n>")
    src.add_argument("--file", help="arrangement file")
    p.add_argument("--json", action="store_true", help="emit a JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheaflat",
        description="Exact sheaf homology of hyperplane arrangement lattices.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("homology", help="homology of the punctured lattice")
    _add_input_flags(p)
    p.add_argument("--sheaf", default="natural", help="natural | constant:<k>")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--puncture", choices=["top"], default=None,
                   help="also remove the maximum")
    p.set_defaults(func=cmd_homology)

    p = subs.add_parser("charpoly", help="characteristic polynomial and beta")
    _add_input_flags(p)
    p.set_defaults(func=cmd_charpoly)

    p = subs.add_parser("verify", help="run the verification suite")
    _add_input_flags(p)
    p.add_argument("--checks", default="all",
                   help="comma list of " + ",".join(CHECK_NAMES) + " or all")
    p.add_argument("--atoms", default="all", help="all | <index into the atom list>")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("bc", help="broken circuit complex")
    _add_input_flags(p)
    p.add_argument("--order", default="default", help="default | random:<seed>")
    p.set_defaults(func=cmd_bc)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArrangementParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (OSError,) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except VerificationError as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return EXIT_CHECK_FAILED
    except SheafLatError as exc:
        sys.stderr.write(f"precondition: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
