"""Command line entry point: `hgl <subcommand> ...`.

Every command prints its main result to stdout. With ``--out-dir`` (or the
``HGL_OUT_DIR`` environment variable, or always for ``verify-all``) it also
writes a run directory ``<timestamp>-s<seed>`` holding the artifacts and a
``manifest.json`` with sha256 hashes of each of them.

Exit status: 0 all checks pass, 1 a check failed, 2 usage error, 3 some
check was skipped for budget reasons.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import platform
import random
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import networkx
import numpy

from . import __version__, cliques, graphs, hermat as hm, homsearch, varpolar, verify
from .constructive import case2, sampling, transport, walks
from .gf import field, field_table_rows

DEFAULT_SEED = 12345
DEFAULT_VERTEX_BUDGET = 1000
OUT_DIR_ENV = "HGL_OUT_DIR"
DEFAULT_RUN_ROOT = "hgl-runs"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SKIP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---- output plumbing --------------------------------------------------------------

def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n").encode()


def _json_default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    if isinstance(o, numpy.integer):
        return int(o)
    if isinstance(o, numpy.floating):
        return float(o)
    if hasattr(o, "as_dict"):
        return o.as_dict()
    # Fractions and anything else exact
    return str(o)


def _csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().encode()


class Run:
    """Artifacts and check verdicts of one command invocation."""

    def __init__(self, args, params: dict):
        self.args = args
        self.params = params
        self.files: dict[str, bytes] = {}
        self.checks: list[verify.CheckResult] = []
        self.primary: str | None = None

    def add_file(self, name: str, data: bytes, primary: bool = False) -> None:
        self.files[name] = data
        if primary or self.primary is None:
            self.primary = name

    def add_table(self, stem: str, header, rows, payload, primary: bool = False) -> None:
        if self.args.format == "csv":
            self.add_file(f"{stem}.csv", _csv_bytes(header, rows), primary)
        else:
            self.add_file(f"{stem}.json", _json_bytes(payload), primary)

    def add_check(self, result: verify.CheckResult) -> None:
        self.checks.append(result)

    def status(self) -> int:
        return verify.exit_status(self.checks)

    def manifest(self) -> dict:
        moduli = {}
        for q in self.params.get("q", []):
            try:
                moduli[str(q)] = field(q).describe()
            except ValueError:
                pass
        return {
            "command": self.params,
            "fields": moduli,
            "seed": self.args.seed,
            "versions": {
                "hglcore": __version__,
                "python": platform.python_version(),
                "numpy": numpy.__version__,
                "networkx": networkx.__version__,
            },
            "checks": {r.name: r.status for r in self.checks},
            "exit_status": self.status(),
            "files": {name: hashlib.sha256(data).hexdigest() for name, data in sorted(self.files.items())},
        }

    def write(self, root: Path) -> Path:
        stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
        run_dir = root / f"{stamp}-s{self.args.seed}"
        run_dir.mkdir(parents=True, exist_ok=False)
        for name, data in self.files.items():
            path = run_dir / name
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        (run_dir / "manifest.json").write_bytes(_json_bytes(self.manifest()))
        return run_dir


# ---- argument helpers ----------------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated integer list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("list must not be empty")
    return vals


def _single(values: list[int], flag: str) -> int:
    if len(values) != 1:
        raise UsageError(f"{flag} takes a single value for this command")
    return values[0]


def _field_or_usage(q: int):
    try:
        return field(q)
    except ValueError as exc:
        raise UsageError(str(exc))


def _load_graph(path: str) -> graphs.GraphHandle:
    try:
        return graphs.parse_edge_list(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}")
    except (ValueError, IndexError) as exc:
        raise UsageError(f"malformed edge list {path}: {exc}")


def _parse_matrix(F, text: str | None, n: int, rng: random.Random) -> hm.Matrix:
    if text is None:
        return hm.identity(n)
    if text == "random":
        return hm.random_invertible_hermitian(F, n, rng)
    try:
        M = tuple(tuple(int(x) for x in row) for row in json.loads(text))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"matrix must be a JSON list of rows: {exc}")
    if len(M) != n or any(len(r) != n for r in M) or any(not 0 <= x < F.order for r in M for x in r):
        raise UsageError("matrix has the wrong shape or entries outside the field")
    if not hm.is_hermitian(F, M):
        raise UsageError("matrix is not hermitian")
    return M


def _build(args, q: int, n: int, family: str = "hgl") -> graphs.GraphHandle:
    if family == "h2":
        return graphs.build_h2(q, budget=args.budget_vertices)
    return graphs.build_hgl(q, n, budget=args.budget_vertices)


# ---- commands ---------------------------------------------------------------------

def cmd_field_tables(args, run: Run) -> None:
    for q in args.q:
        F = _field_or_usage(q)
        rows = field_table_rows(F)
        run.add_table(f"field_q{q}", ["element", "polynomial", "conj", "trace", "norm"], rows,
                      {"field": F.describe(), "rows": rows})


def cmd_herm(args, run: Run) -> None:
    q, n = _single(args.q, "--q"), _single(args.n, "--n")
    F = _field_or_usage(q)
    if args.action == "enumerate":
        if hm.count_hermitian(q, n) > args.budget_vertices * 100:
            run.add_check(verify.CheckResult("herm_enumerate", verify.SKIP, {"reason": "budget"}))
            return
        by_rank = {}
        for A in hm.hermitian_matrices(F, n):
            r = hm.rank(F, A)
            by_rank[r] = by_rank.get(r, 0) + 1
        rows = sorted(by_rank.items())
        run.add_table(f"hermitian_q{q}_n{n}", ["rank", "count"], rows,
                      {"q": q, "n": n, "by_rank": {str(r): c for r, c in rows},
                       "total": sum(by_rank.values()), "invertible": by_rank.get(n, 0)})
        run.add_check(verify.CheckResult(
            "herm_counts",
            verify.PASS if (sum(by_rank.values()) == hm.count_hermitian(q, n)
                            and by_rank.get(n, 0) == hm.count_invertible_hermitian(q, n)) else verify.FAIL,
        ))
    else:
        res = verify.rank_one_calculus_check(q, n, args.samples, random.Random(args.seed))
        run.add_check(res)
        run.add_file(f"{res.name}.json", _json_bytes(res.as_dict()))


def cmd_cliques(args, run: Run) -> None:
    q, n = _single(args.q, "--q"), _single(args.n, "--n")
    F = _field_or_usage(q)
    A = _parse_matrix(F, args.matrix, n, random.Random(args.seed))
    if hm.det(F, A) == 0:
        raise UsageError("matrix must be invertible")
    cen = cliques.census(F, A)
    rows = [(c["direction"], c["kind"], c["size"], c["determinants"]) for c in cen["cliques"]]
    run.add_table(f"cliques_q{q}_n{n}", ["direction", "kind", "size", "determinants"], rows, cen)


def cmd_variety(args, run: Run) -> None:
    for q in args.q:
        for n in args.n:
            _field_or_usage(q)
            res = verify.variety_count_check(q, n) if hm.count_hermitian(q, n) <= args.budget_vertices * 100 \
                else verify.CheckResult(f"variety_counts_q{q}_n{n}", verify.SKIP, {"reason": "budget"})
            run.add_check(res)
            rows = [(r, varpolar.variety_cardinality(n, r, q)) for r in range(n + 1)]
            run.add_table(f"variety_q{q}_n{n}", ["rank", "points"], rows, res.as_dict())


def cmd_polar_graph(args, run: Run) -> None:
    q, n = _single(args.q, "--q"), _single(args.n, "--n")
    F = _field_or_usage(q)
    A = _parse_matrix(F, args.matrix, n, random.Random(args.seed))
    if hm.det(F, A) == 0:
        raise UsageError("matrix must be invertible")
    pg = varpolar.polar_point_graph(F, A)
    G = graphs.from_edges(len(pg.points), pg.edges)
    run.add_file(f"polar_q{q}_n{n}.edges", graphs.edge_list_text(G).encode(), primary=True)
    run.add_file(f"polar_q{q}_n{n}_points.json", _json_bytes({"base": A, "points": pg.points}))


def cmd_graph(args, run: Run) -> None:
    if args.graph:
        G = _load_graph(args.graph)
        tag = Path(args.graph).stem
    else:
        q, n = _single(args.q, "--q"), _single(args.n, "--n")
        _field_or_usage(q)
        if args.family == "h2" and n != 2:
            raise UsageError("the family of all hermitian matrices is built for n = 2 only")
        G = _build(args, q, n, args.family)
        tag = f"{args.family}_q{q}_n{n}"
    if args.action == "build":
        run.add_file(f"{tag}.edges", graphs.edge_list_text(G).encode(), primary=True)
        run.add_file(f"{tag}_summary.json", _json_bytes({
            "vertices": G.order, "edges": G.edge_count(), "degrees": sorted(set(G.degrees())),
            "intersection_numbers": graphs.intersection_numbers(G) if G.order <= 2000 else None,
        }))
    elif args.action == "spectrum":
        res = verify.regular_spectrum_check(G, f"spectrum_{tag}") if G.is_regular() else None
        rep = graphs.certified_spectrum(G, graphs.spectrum_candidates(G))
        rows = [(v, m, c) for v, m, c in rep.eigenvalues]
        run.add_table(f"spectrum_{tag}", ["eigenvalue", "multiplicity", "certified"], rows, rep.as_dict(),
                      primary=True)
        run.add_check(res or verify.CheckResult(f"spectrum_{tag}",
                                                verify.PASS if rep.certified else verify.FAIL, rep.as_dict()))
    else:
        if "q" not in G.meta:
            raise UsageError("determinant classes need a matrix graph built from --q/--n")
        F = field(G.meta["q"])
        rows = []
        for lam in F.fixed_nonzero():
            _, _, rep = graphs.det_class_subgraph(G, lam)
            rows.append((lam, rep.vertices, rep.components, rep.connected))
            run.add_check(verify.CheckResult(f"det_class_{tag}_{lam}",
                                             verify.PASS if rep.connected else verify.FAIL, rep.as_dict()))
        run.add_table(f"detclass_{tag}", ["det", "vertices", "components", "connected"], rows,
                      [dict(zip(("det", "vertices", "components", "connected"), r)) for r in rows], primary=True)


def cmd_construct(args, run: Run) -> None:
    rng = random.Random(args.seed)
    if args.action == "case2":
        for q in args.q:
            try:
                G, meta = case2.case2_gamma(q)
            except ValueError as exc:
                raise UsageError(str(exc))
            res = verify.case2_check(q, exact=G.order <= 20)
            run.add_check(res)
            run.add_file(f"case2_q{q}.edges", graphs.edge_list_text(G).encode())
            run.add_file(f"case2_q{q}.json", _json_bytes({**meta, "check": res.as_dict()}), primary=True)
        return
    q, n = _single(args.q, "--q"), _single(args.n, "--n")
    F = _field_or_usage(q)
    certs = []
    for k in range(args.count):
        if args.action == "walk":
            if q < 4:
                raise UsageError("walk certificates need q >= 4")
            lam = F.fixed_nonzero()[rng.randrange(q - 1)]
            A1 = sampling.random_in_class(F, n, lam, rng)
            A2 = sampling.random_in_class(F, n, lam, rng)
            cert = walks.equal_det_walk(F, A1, A2)
        elif args.kind == "isotropic":
            cert = transport.transport_isotropic(F, sampling.random_isotropic(F, n, rng),
                                                 sampling.random_isotropic(F, n, rng))
        elif args.kind == "orthogonal":
            if n < 4:
                raise UsageError("orthogonal isotropic pairs need n >= 4")
            cert = transport.transport_pair_orthogonal(F, *sampling.random_orthogonal_pair(F, n, rng),
                                                       *sampling.random_orthogonal_pair(F, n, rng))
        elif args.kind == "nonorthogonal":
            cert = transport.transport_pair_nonorthogonal(F, *sampling.random_nonorthogonal_pair(F, n, rng),
                                                          *sampling.random_nonorthogonal_pair(F, n, rng))
        else:
            orth = n >= 4 and rng.random() < 0.5
            A1 = hm.random_invertible_hermitian(F, n, rng)
            A2 = hm.random_invertible_hermitian(F, n, rng)
            cert = transport.transport_cliques(F, A1, *sampling.random_clique_pair(F, A1, rng, orth),
                                               A2, *sampling.random_clique_pair(F, A2, rng, orth))
        certs.append(cert.as_dict())
        run.add_check(verify.CheckResult(f"{args.action}_{k}", verify.PASS if cert.ok else verify.FAIL))
    stem = "walks" if args.action == "walk" else f"transport_{args.kind}"
    run.add_file(f"{stem}_q{q}_n{n}.json", _json_bytes(certs), primary=True)


def cmd_hom(args, run: Run) -> None:
    G = _load_graph(args.source)
    budget = args.budget
    tb = args.budget_seconds
    if args.action == "find":
        if not args.target:
            raise UsageError("hom find needs --target")
        H = _load_graph(args.target)
        res = homsearch.find_homomorphism(homsearch.HomSearchProblem(G, H, node_budget=budget, time_budget=tb))
        payload = {"status": res.status, "mapping": res.mapping, "nodes": res.nodes}
        if res.found:
            payload["verified"] = homsearch.is_homomorphism(G, H, res.mapping)
        st = {homsearch.BUDGET: verify.SKIP}.get(res.status, verify.PASS)
        if res.found and not payload["verified"]:
            st = verify.FAIL
        run.add_check(verify.CheckResult("hom_find", st))
        run.add_file("homomorphism.json", _json_bytes(payload), primary=True)
    elif args.action == "core":
        res = homsearch.is_core(G, node_budget=budget)
        st = verify.SKIP if res.status == "inconclusive" else verify.PASS
        run.add_check(verify.CheckResult("hom_core", st, {"verdict": res.status}))
        run.add_file("core.json", _json_bytes({"verdict": res.status, "witness": res.witness,
                                               "checked": res.checked, "nodes": res.nodes}), primary=True)
    else:
        res = homsearch.chromatic_number(G, node_budget=budget)
        st = verify.PASS if res.value is not None else verify.SKIP
        run.add_check(verify.CheckResult("hom_chroma", st))
        run.add_file("chromatic.json", _json_bytes(res.as_dict()), primary=True)


def cmd_verify_all(args, run: Run) -> None:
    try:
        plan = verify.plan_checks(args.q, args.n, samples=args.samples, walk_pairs=args.walk_pairs,
                                  time_budget=args.budget_seconds)
    except ValueError as exc:
        raise UsageError(str(exc))
    for q in args.q:
        _field_or_usage(q)

    def progress(r):
        print(f"[{r.status}] {r.name}", file=sys.stderr)

    results = verify.run_plan(plan, args.seed, args.budget_vertices, progress)
    for r in results:
        run.add_check(r)
        run.add_file(f"checks/{r.name}.json", _json_bytes(r.as_dict()))
    rows = [(r.name, r.status) for r in results]
    run.add_file("summary.csv", _csv_bytes(["check", "status"], rows), primary=True)


COMMANDS = {
    "field-tables": cmd_field_tables,
    "herm": cmd_herm,
    "cliques": cmd_cliques,
    "variety": cmd_variety,
    "polar-graph": cmd_polar_graph,
    "graph": cmd_graph,
    "construct": cmd_construct,
    "hom": cmd_hom,
    "verify-all": cmd_verify_all,
}


# ---- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int_list, default=[2], help="comma separated list of q (field GF(q^2))")
    common.add_argument("--n", type=int_list, default=[2], help="comma separated list of matrix sizes")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for all randomness (default {DEFAULT_SEED})")
    common.add_argument("--budget-vertices", type=int, default=DEFAULT_VERTEX_BUDGET,
                        help=f"largest graph to build (default {DEFAULT_VERTEX_BUDGET})")
    common.add_argument("--budget-seconds", type=float, default=None, help="time limit for each search")
    common.add_argument("--out-dir", default=None,
                        help=f"root for run directories (default ${OUT_DIR_ENV}; "
                             f"verify-all falls back to ./{DEFAULT_RUN_ROOT})")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="table format")

    p = argparse.ArgumentParser(prog="hgl", description="Hermitian matrix graph toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("field-tables", parents=[common], help="element tables of GF(q^2)")

    s = sub.add_parser("herm", parents=[common], help="hermitian matrix enumeration and rank-one calculus")
    s.add_argument("action", choices=("enumerate", "check-cor22"))
    s.add_argument("--samples", type=int, default=1000)

    s = sub.add_parser("cliques", parents=[common], help="maximal cliques through one vertex")
    s.add_argument("--matrix", default=None, help="JSON rows of field element codes, or 'random'")

    sub.add_parser("variety", parents=[common], help="hermitian variety sizes against the closed formula")

    s = sub.add_parser("polar-graph", parents=[common], help="point graph of the polar space of a form")
    s.add_argument("--matrix", default=None, help="JSON rows of field element codes, or 'random'")

    s = sub.add_parser("graph", parents=[common], help="build graphs, spectra, determinant classes")
    s.add_argument("action", choices=("build", "spectrum", "detclass"))
    s.add_argument("--family", choices=("hgl", "h2"), default="hgl")
    s.add_argument("--graph", default=None, help="edge-list file instead of a built graph")

    s = sub.add_parser("construct", parents=[common], help="walk and transport certificates, rook graph with cyclic colouring")
    s.add_argument("action", choices=("walk", "transport", "case2"))
    s.add_argument("--kind", choices=("isotropic", "orthogonal", "nonorthogonal", "cliques"), default="isotropic")
    s.add_argument("--count", type=int, default=1)

    s = sub.add_parser("hom", parents=[common], help="homomorphism, core and chromatic searches")
    s.add_argument("action", choices=("find", "core", "chroma"))
    s.add_argument("--source", required=True)
    s.add_argument("--target", default=None)
    s.add_argument("--budget", type=int, default=10 ** 7, help="search node budget")

    s = sub.add_parser("verify-all", parents=[common], help="run the property suite and write a manifest")
    s.add_argument("--samples", type=int, default=10 ** 4, help="random instances per sampled check")
    s.add_argument("--walk-pairs", type=int, default=100, help="sampled pairs per determinant class")
    s.add_argument("--record-timing", action="store_true",
                   help="also write timing.json (excluded from the manifest)")
    return p


def _params(args) -> dict:
    skip = {"out_dir", "func", "record_timing", "format"}
    out = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    out["format"] = args.format
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("budget_vertices", "count", "samples", "budget", "walk_pairs"):
        val = getattr(args, flag, None)
        if val is not None and val <= 0:
            parser.error(f"--{flag.replace('_', '-')} must be positive")
    if args.budget_seconds is not None and args.budget_seconds <= 0:
        parser.error("--budget-seconds must be positive")
    run = Run(args, _params(args))
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, run)
    except UsageError as exc:
        parser.error(str(exc))
    except graphs.BudgetExceeded as exc:
        run.add_check(verify.CheckResult(args.command, verify.SKIP, {"reason": str(exc)}))
    wall = time.perf_counter() - start

    if run.primary is not None:
        sys.stdout.write(run.files[run.primary].decode())
    for r in run.checks:
        if r.status != verify.PASS or args.command == "verify-all":
            print(f"{r.name}: {r.status}", file=sys.stderr)

    out_dir = args.out_dir or os.environ.get(OUT_DIR_ENV)
    if out_dir is None and args.command == "verify-all":
        out_dir = DEFAULT_RUN_ROOT
    if out_dir is not None:
        run_dir = run.write(Path(out_dir))
        if getattr(args, "record_timing", False):
            (run_dir / "timing.json").write_bytes(_json_bytes({"wall_seconds": round(wall, 3)}))
        print(f"run directory: {run_dir}", file=sys.stderr)
    print(f"wall time: {wall:.2f}s", file=sys.stderr)
    return run.status()


if __name__ == "__main__":
    sys.exit(main())
