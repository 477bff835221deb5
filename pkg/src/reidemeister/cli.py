"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a mathematical check failed,
4 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import abelian, groups
from .cache import TableCache, cached_character_table, cached_permutation_group
from .characters import dual_action, verify_twisted_burnside
from .corpus import corpus_entry, finite_abelian_automorphisms, standard_corpus
from .errors import (
    CapExceededError,
    ConsistencyError,
    InfiniteResultError,
    InputError,
    ReidemeisterError,
)
from .extensions import (
    check_bound_abelian_quotient,
    check_bound_nonabelian,
    check_class_epimorphism,
    check_fix_bound,
    harvest_extensions,
)
from .linalg import Infinite, is_finite
from .torus import MappingTorus, separation_report, verify_torus_bijection
from .zeta import reidemeister_sequence, verify_congruences, zeta_coefficients

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CHECK_FAILED = 3
EXIT_CAP = 4

COMMANDS = (
    "classes",
    "reidemeister",
    "burnside",
    "congruence",
    "torus",
    "extension",
    "rp-witness",
    "automorphisms",
    "corpus",
)
FORMATS = ("table", "json", "csv")
DEFAULT_MAX_N = 64
CORPUS_CHECK_MAX_ORDER = 60

log = logging.getLogger("reidemeister")


@dataclass
class JobSpec:
    command: str
    group_spec: object = None
    automorphism_spec: object = None
    parameters: dict = field(default_factory=dict)
    output_format: str = "table"
    output_path: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}", "command")
        if self.output_format not in FORMATS:
            raise InputError(f"unknown format {self.output_format!r}", "format")
        if self.command == "corpus":
            if self.parameters.get("action") not in ("list", "check"):
                raise InputError("expected 'list' or 'check'", "action")
        elif self.group_spec is None:
            raise InputError("a group is required", "group")
        for name in ("N", "k", "max_order", "max_n"):
            v = self.parameters.get(name)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise InputError("must be a positive integer", name)
        N, max_n = self.parameters.get("N"), self.parameters.get("max_n", DEFAULT_MAX_N)
        if N is not None and N > max_n:
            raise CapExceededError(f"N={N} exceeds --max-n={max_n}")


@dataclass
class Report:
    data: dict
    rows: list = field(default_factory=list)
    columns: list = field(default_factory=list)
    ok: bool = True


# --- input parsing ---------------------------------------------------------

def _load_json_arg(text: str, what: str):
    """Inline JSON, or a path to a JSON file."""
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON ({exc.msg})", what) from None


def parse_group_spec(doc, cap: int = groups.DEFAULT_ELEMENT_CAP, cache: TableCache | None = None):
    """``{"kind": "permutation", "degree": n, "generators": [[...], ...]}`` or
    ``{"kind": "fg_abelian", "free_rank": r, "torsion": [...]}``."""
    if not isinstance(doc, dict):
        raise InputError("group spec must be a JSON object", "group")
    kind = doc.get("kind")
    if kind == "fg_abelian":
        return abelian.parse_group_spec(doc)
    if kind == "permutation":
        degree = doc.get("degree")
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
            raise InputError("must be a positive integer", "degree")
        gens = doc.get("generators", [])
        if not isinstance(gens, list):
            raise InputError("must be a list of permutations", "generators")
        for i, g in enumerate(gens):
            groups.parse_permutation(degree, g, f"generators[{i}]")
        return cached_permutation_group(degree, gens, cache, cap=cap, name=doc.get("name"))
    raise InputError(f"unknown kind {kind!r}; expected 'permutation' or 'fg_abelian'", "kind")


def resolve_group(spec, cap, cache):
    """Returns ``(group, corpus_entry_or_None)``."""
    if isinstance(spec, str) and spec.startswith("corpus:"):
        entry = corpus_entry(spec[len("corpus:"):])
        if isinstance(entry.group, groups.FiniteGroup) and entry.group.order > cap:
            raise CapExceededError(f"group of order {entry.group.order} exceeds the element cap of {cap}")
        return entry.group, entry
    doc = _load_json_arg(spec, "group") if isinstance(spec, str) else spec
    return parse_group_spec(doc, cap, cache), None


def parse_finite_automorphism(G: groups.FiniteGroup, doc, entry=None) -> groups.Automorphism:
    if doc is None:
        return groups.identity_automorphism(G)
    if isinstance(doc, str):
        doc = {"name": doc}
    if not isinstance(doc, dict):
        raise InputError("automorphism spec must be a JSON object", "automorphism")
    if "name" in doc:
        if entry is None:
            raise InputError("named automorphisms need a corpus group", "automorphism")
        return entry.automorphism(doc["name"])
    if "generator_images" in doc:
        imgs = doc["generator_images"]
        if not isinstance(imgs, list):
            raise InputError("must be a list of permutations", "generator_images")
        return groups.automorphism_from_permutation_images(G, imgs)
    if "map" in doc:
        m = doc["map"]
        if not isinstance(m, list) or any(not isinstance(x, int) for x in m):
            raise InputError("must be a list of element indices", "map")
        return groups.Automorphism(G, m)
    if "inner" in doc:
        return groups.inner_automorphism(G, G.index_of_label(doc["inner"]))
    if "map_word" in doc:
        raise InputError("word images are not supported; give generator_images instead", "map_word")
    raise InputError("expected one of name, generator_images, map, inner", "automorphism")


def parse_abelian_automorphism(A: abelian.FgAbelianGroup, doc, entry=None) -> abelian.AbelianEndo:
    if isinstance(doc, str):
        doc = {"name": doc}
    if isinstance(doc, dict) and "name" in doc:
        if entry is None:
            raise InputError("named automorphisms need a corpus group", "automorphism")
        return entry.automorphism(doc["name"])
    if doc is not None and not isinstance(doc, dict):
        raise InputError("automorphism spec must be a JSON object", "automorphism")
    psi = abelian.parse_endo_spec(A, doc)
    if not abelian.is_automorphism(A, psi):
        raise InputError("endomorphism is not bijective", "automorphism")
    return psi


def _automorphism_arg(text):
    if text is None:
        return None
    stripped = text.lstrip()
    if stripped.startswith("{") or os.path.isfile(text):
        return _load_json_arg(text, "automorphism")
    return text  # a corpus automorphism name


# --- rendering -------------------------------------------------------------

def jsonable(x):
    if isinstance(x, Infinite):
        return "Infinite"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def _cell(v) -> str:
    v = jsonable(v)
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def render(command: str, report: Report, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "ok": report.ok, "result": report.data}
        if report.rows:
            doc["rows"] = report.rows
        return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if report.rows:
            w.writerow(report.columns)
            for row in report.rows:
                w.writerow([_cell(row.get(c)) for c in report.columns])
        else:
            w.writerow(["key", "value"])
            for k in sorted(report.data):
                w.writerow([k, _cell(report.data[k])])
        return buf.getvalue()
    lines = [f"{k}: {_cell(report.data[k])}" for k in sorted(report.data)]
    if report.rows:
        cells = [[_cell(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(report.columns)]
        lines.append("")
        lines.append("  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


# --- commands --------------------------------------------------------------

def _label(G: groups.FiniteGroup, x: int):
    lab = G.label(x)
    return list(lab) if isinstance(lab, tuple) else lab


def _abelian_vec(x: abelian.AbelianElement):
    return list(x.vector)


def _finite_phi(G, job, entry):
    return parse_finite_automorphism(G, job.automorphism_spec, entry)


def _need_finite(G, command):
    if not isinstance(G, groups.FiniteGroup):
        raise InputError(f"{command} needs a permutation group", "group")


def cmd_classes(G, entry, job, ctx) -> Report:
    if isinstance(G, groups.FiniteGroup):
        phi = _finite_phi(G, job, entry)
        P = groups.twisted_classes(G, phi)
        rows = [
            {"class": i, "size": len(c), "representative": _label(G, c[0]), "members": [_label(G, x) for x in c]}
            for i, c in enumerate(P.classes())
        ]
        return Report({"group_order": G.order, "R": P.class_count}, rows, ["class", "size", "representative", "members"])
    psi = parse_abelian_automorphism(G, job.automorphism_spec, entry)
    R = abelian.reidemeister_number(G, psi)
    data = {"group": str(G), "R": R}
    rows = []
    if is_finite(R):
        rows = [{"class": i, "representative": _abelian_vec(x)} for i, x in enumerate(abelian.class_representatives(G, psi))]
    return Report(data, rows, ["class", "representative"])


def cmd_reidemeister(G, entry, job, ctx) -> Report:
    if isinstance(G, groups.FiniteGroup):
        phi = _finite_phi(G, job, entry)
        return Report({
            "group_order": G.order,
            "R": groups.reidemeister_number(G, phi),
            "fix": len(groups.fixed_points(phi)),
        })
    psi = parse_abelian_automorphism(G, job.automorphism_spec, entry)
    return Report({
        "group": str(G),
        "R": abelian.reidemeister_number(G, psi),
        "fix": abelian.fixed_subgroup_size(G, psi),
    })


def cmd_burnside(G, entry, job, ctx) -> Report:
    _need_finite(G, "burnside")
    phi = _finite_phi(G, job, entry)
    table = cached_character_table(G, ctx["cache"])
    res = verify_twisted_burnside(G, phi, table)
    perm = dual_action(G, table, phi).permutation
    return Report(
        {"R": res.R, "S_f": res.S_f, "equal": res.equal, "prime": table.prime, "dual_permutation": list(perm)},
        ok=res.equal,
    )


def _source(G, job, entry):
    if isinstance(G, groups.FiniteGroup):
        return _finite_phi(G, job, entry)
    return parse_abelian_automorphism(G, job.automorphism_spec, entry)


def cmd_congruence(G, entry, job, ctx) -> Report:
    N = job.parameters.get("N") or 12
    seq = reidemeister_sequence(_source(G, job, entry), N)
    if not seq.all_finite:
        raise InfiniteResultError(
            f"sequence contains infinite entries {jsonable(list(seq.values))}; congruences need all R finite"
        )
    rep = verify_congruences(seq)
    zeta = zeta_coefficients(seq, N)
    rows = rep.to_json()
    for r in rows:
        r["R"] = seq[r["n"]]
    return Report(
        {"N": N, "sequence": list(seq.values), "zeta_coefficients": list(zeta), "all_pass": rep.all_pass},
        rows,
        ["n", "R", "sum", "residue", "pass"],
        ok=rep.all_pass,
    )


def cmd_torus(G, entry, job, ctx) -> Report:
    _need_finite(G, "torus")
    phi = _finite_phi(G, job, entry)
    T = MappingTorus(G, phi)
    k = job.parameters.get("k") or 1
    bij = verify_torus_bijection(T)
    sep = separation_report(T, k, ctx["max_order"])
    return Report(
        {
            "phi_order": T.phi_order,
            "k": k,
            "quotient_order": G.order * T.phi_order * k,
            "coset_classes": T.coset_partition.class_count,
            "bijection": bij,
            "separation_holds": sep.holds,
            "separated_pairs": sep.separated_pairs,
            "total_pairs": sep.total_pairs,
        },
        ok=bij and sep.holds,
    )


def _extension_rows(G, phi):
    rows = []
    ok = True
    for ext in harvest_extensions(G, phi):
        epi = check_class_epimorphism(ext, phi)
        nab = check_bound_nonabelian(ext, phi)
        row = {
            "subgroup_order": len(ext.subgroup_indices),
            "subgroup": list(ext.subgroup_indices),
            "epimorphism": epi,
            "bound_nonabelian": [nab.lhs, nab.rhs],
        }
        good = epi and nab.holds
        if ext.quotient.is_abelian:
            ab = check_bound_abelian_quotient(ext, phi)
            row["bound_abelian_quotient"] = [ab.lhs, ab.rhs]
            good &= ab.holds
        if ext.sub.is_abelian:
            fx = check_fix_bound(ext, phi)
            row["fix_bound"] = [fx.lhs, fx.rhs]
            good &= fx.holds
        row["holds"] = good
        ok &= good
        rows.append(row)
    return rows, ok


def cmd_extension(G, entry, job, ctx) -> Report:
    _need_finite(G, "extension")
    phi = _finite_phi(G, job, entry)
    rows, ok = _extension_rows(G, phi)
    return Report(
        {"group_order": G.order, "extensions": len(rows), "all_hold": ok},
        rows,
        ["subgroup_order", "subgroup", "epimorphism", "bound_nonabelian", "bound_abelian_quotient", "fix_bound", "holds"],
        ok=ok,
    )


def cmd_rp_witness(G, entry, job, ctx) -> Report:
    if not isinstance(G, abelian.FgAbelianGroup):
        raise InputError("rp-witness needs a fg_abelian group", "group")
    psi = parse_abelian_automorphism(G, job.automorphism_spec, entry)
    w = abelian.rp_witness(G, psi)
    ok = w.verify()
    return Report(
        {
            "R": abelian.reidemeister_number(G, psi),
            "K_invariant_factors": list(w.K.invariant_factors),
            "K_order": w.K.order,
            "projection": w.projection.matrix.tolist(),
            "phi_K": w.phi_K.C.tolist(),
            "verified": ok,
        },
        ok=ok,
    )


def cmd_automorphisms(G, entry, job, ctx) -> Report:
    _need_finite(G, "automorphisms")
    autos = groups.enumerate_automorphisms(G, ctx["max_order"])
    rows = [
        {"index": i, "order": phi.order, "generator_images": [_label(G, x) for x in phi.generator_images()], "R": groups.reidemeister_number(G, phi)}
        for i, phi in enumerate(autos)
    ]
    return Report({"group_order": G.order, "count": len(autos)}, rows, ["index", "order", "R", "generator_images"])


def _corpus_list() -> Report:
    rows = []
    for e in standard_corpus():
        if e.is_finite_group:
            count = len(groups.enumerate_automorphisms(e.group))
        elif e.group.is_finite:
            count = len(finite_abelian_automorphisms(e.group))
        else:
            count = None
        rows.append({
            "name": e.name,
            "order": e.order,
            "automorphisms": count if count is not None else "Infinite",
            "named": [n for n, _ in e.notable_automorphisms],
        })
    return Report({"entries": len(rows)}, rows, ["name", "order", "automorphisms", "named"])


def _check_finite_entry(e, N, cache):
    G = e.group
    table = cached_character_table(G, cache)
    table_ok = (
        table.rows_distinct()
        and table.row_orthogonality_holds(G)
        and table.column_orthogonality_holds(G)
        and sum(d * d for d in table.degrees) == G.order
    )
    names = {phi.map: n for n, phi in e.notable_automorphisms}
    rows = []
    for i, phi in enumerate(groups.enumerate_automorphisms(G)):
        b = verify_twisted_burnside(G, phi, table)
        T = MappingTorus(G, phi)
        seq = reidemeister_sequence(phi, N)
        cong = verify_congruences(seq).all_pass
        _, ext_ok = _extension_rows(G, phi)
        torus_ok = verify_torus_bijection(T)
        ok = b.equal and torus_ok and cong and ext_ok and table_ok
        rows.append({
            "entry": e.name,
            "automorphism": names.get(phi.map, f"aut{i}"),
            "R": b.R,
            "fix": len(groups.fixed_points(phi)),
            "S_f": b.S_f,
            "burnside": b.equal,
            "torus": torus_ok,
            "congruence": cong,
            "extensions": ext_ok,
            "characters": table_ok,
            "ok": ok,
        })
    return rows


def _check_abelian_entry(e, N):
    A = e.group
    rows = []
    for name, psi in e.notable_automorphisms:
        R = abelian.reidemeister_number(A, psi)
        fix = abelian.fixed_subgroup_size(A, psi)
        row = {"entry": e.name, "automorphism": name, "R": R, "fix": fix}
        ok = True
        if is_finite(R):
            row["R_ge_fix"] = R >= fix
            row["witness"] = abelian.rp_witness(A, psi).verify()
            ok = row["R_ge_fix"] and row["witness"]
        seq = reidemeister_sequence(psi, N)
        if seq.all_finite:
            row["congruence"] = verify_congruences(seq).all_pass
            ok &= row["congruence"]
        row["ok"] = ok
        rows.append(row)
    return rows


def _corpus_check(job, ctx) -> Report:
    N = job.parameters.get("N") or 12
    max_order = min(ctx["max_order"], CORPUS_CHECK_MAX_ORDER)
    rows = []
    for e in standard_corpus():
        if e.is_finite_group:
            if e.order <= max_order:
                rows += _check_finite_entry(e, N, ctx["cache"])
        else:
            rows += _check_abelian_entry(e, N)
    ok = all(r["ok"] for r in rows)
    columns = ["entry", "automorphism", "R", "fix", "S_f", "burnside", "torus", "congruence",
               "extensions", "characters", "R_ge_fix", "witness", "ok"]
    return Report({"N": N, "checked": len(rows), "all_pass": ok}, rows, columns, ok=ok)


def cmd_corpus(G, entry, job, ctx) -> Report:
    if job.parameters["action"] == "list":
        return _corpus_list()
    return _corpus_check(job, ctx)


HANDLERS = {
    "classes": cmd_classes,
    "reidemeister": cmd_reidemeister,
    "burnside": cmd_burnside,
    "congruence": cmd_congruence,
    "torus": cmd_torus,
    "extension": cmd_extension,
    "rp-witness": cmd_rp_witness,
    "automorphisms": cmd_automorphisms,
    "corpus": cmd_corpus,
}
VERIFICATION_COMMANDS = {"burnside", "congruence", "torus", "extension", "rp-witness", "corpus"}


def run(job: JobSpec, cache: TableCache | None = None, stdout=None) -> int:
    """Validate and execute ``job``; write the report and return the exit code."""
    stdout = stdout or sys.stdout
    try:
        job.validate()
        max_order = job.parameters.get("max_order") or groups.DEFAULT_ELEMENT_CAP
        ctx = {"cache": cache, "max_order": max_order}
        G = entry = None
        if job.command != "corpus":
            G, entry = resolve_group(job.group_spec, max_order, cache)
        report = HANDLERS[job.command](G, entry, job, ctx)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, InfiniteResultError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ReidemeisterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(job.command, report, job.output_format)
    if job.output_path:
        with open(job.output_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if job.command in VERIFICATION_COMMANDS and not report.ok:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", "-f", choices=FORMATS, default="table")
    common.add_argument("--cache-dir", help="table cache directory (default: $TBL_CACHE_DIR or the user cache)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--max-order", type=int, default=groups.DEFAULT_ELEMENT_CAP, help="element cap for built groups")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest allowed N")
    common.add_argument("-v", "--verbose", action="store_true")

    with_group = argparse.ArgumentParser(add_help=False)
    with_group.add_argument("--group", "-g", required=True, help="JSON spec, path to a JSON file, or corpus:NAME")
    with_group.add_argument("--automorphism", "-a", help="JSON spec, path, or a corpus automorphism name")

    p = argparse.ArgumentParser(prog="reidemeister", description="Twisted conjugacy and Reidemeister numbers.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classes", parents=[common, with_group], help="list twisted conjugacy classes")
    sub.add_parser("reidemeister", parents=[common, with_group], help="Reidemeister number and fixed points")
    sub.add_parser("burnside", parents=[common, with_group], help="compare R with fixed irreducible characters")
    c = sub.add_parser("congruence", parents=[common, with_group], help="Moebius congruences for R(phi^n)")
    c.add_argument("-N", type=int, default=12)
    t = sub.add_parser("torus", parents=[common, with_group], help="mapping torus checks")
    t.add_argument("-k", type=int, default=1)
    sub.add_parser("extension", parents=[common, with_group], help="bounds over invariant normal subgroups")
    sub.add_parser("rp-witness", parents=[common, with_group], help="finite quotient witness for abelian groups")
    sub.add_parser("automorphisms", parents=[common, with_group], help="enumerate automorphisms")
    cp = sub.add_parser("corpus", parents=[common], help="list or check the built-in corpus")
    cp.add_argument("action", choices=("list", "check"))
    cp.add_argument("-N", type=int, default=12)
    return p


def job_from_args(args) -> JobSpec:
    params = {"max_order": args.max_order, "max_n": args.max_n}
    for name in ("N", "k", "action"):
        if hasattr(args, name):
            params[name] = getattr(args, name)
    return JobSpec(
        command=args.command,
        group_spec=getattr(args, "group", None),
        automorphism_spec=_automorphism_arg(getattr(args, "automorphism", None)),
        parameters=params,
        output_format=args.format,
        output_path=args.output,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        job = job_from_args(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cache = TableCache(args.cache_dir, enabled=not args.no_cache)
    return run(job, cache)


if __name__ == "__main__":
    sys.exit(main())
