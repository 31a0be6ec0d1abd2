"""Command-line front end.

Exit status: 0 when every check passes, 1 when any check fails, 2 on usage
errors (bad flags, unreadable input files).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .bases import (
    enumerate_orthogonal_octads,
    occurrence_counts,
    paper_relations_rank1,
    verify_completeness,
)
from .data import FIGURE_NAMED_HYPEREDGES, RANK1_MULTIPLICITY_FOUR
from .hypergraph import build_hypergraph, export, relabel_planes
from .parity import (
    IncidenceSystem,
    check_parity_proof,
    from_relations,
    is_valid_assignment,
    load_system,
    max_satisfiable_contexts,
    search_assignment,
)
from .pentagram import build_pentagram, count_sign_assignments, parity_obstruction, verify_pentagram
from .rank2 import enumerate_rank2_proofs, paper_rank2_proof, verify_rank2_proof
from .rays import derive_all_rays, projector_sum
from .pauli import to_matrix

SCHEMA_VERSION = 1
PUBLISHED_RANK2_COUNT = 243


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    checks: list[Check] = field(default_factory=list)
    outputs: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, details: str = "") -> None:
        self.checks.append(Check(name, bool(passed), details))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "details": c.details} for c in self.checks
            ],
            "outputs": self.outputs,
        }

    def render_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name.ljust(width)}  {c.details}".rstrip())
        return "\n".join(lines) + "\n"


def _digest(args: argparse.Namespace, extra: bytes = b"") -> str:
    settings = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}
    h = hashlib.sha256(json.dumps(settings, sort_keys=True, default=str).encode())
    h.update(extra)
    return "sha256:" + h.hexdigest()


def _signs(signs) -> str:
    return "".join("+" if s == 1 else "-" if s == -1 else "?" for s in signs)


# ---------------------------------------------------------------- commands


def cmd_pentagram(args, report: RunReport) -> None:
    p = build_pentagram()
    rep = verify_pentagram(p)
    count = count_sign_assignments(p)
    report.check("ten observables, five contexts", len(p.observables) == 10 and len(p.contexts) == 5)
    report.check("contexts mutually commute", rep.all_commute)
    report.check(
        "context products +I except horizontal -I", rep.signs_ok, f"signs {_signs(rep.product_signs)}"
    )
    report.check("each observable in two contexts", rep.membership_ok)
    report.check("no +-1 value assignment (exhaustive 2^10 scan)", count == 0, f"{count} solutions")
    report.check("parity argument agrees with the scan", parity_obstruction(p) == (count == 0))
    report.outputs.update(
        observables=[o.letters for o in p.observables],
        contexts=[[p.label(i) for i in c] for c in p.contexts],
        horizontal_context=p.horizontal_context + 1,
        product_signs=list(rep.product_signs),
        sign_assignments=count,
    )


def cmd_rays(args, report: RunReport) -> None:
    p = build_pentagram()
    d = derive_all_rays(p)
    rays = d.rays
    report.check("40 distinct canonical rays", len({r.components for r in rays.values()}) == 40)
    for o in d.octads:
        report.check(
            f"octad of context {o.context_id} resolves the identity",
            projector_sum(o.rays).is_identity(),
        )
    eig_ok = True
    for o in d.octads:
        mats = [to_matrix(ob) for ob in p.context_observables(o.context_id - 1)]
        for r, sig in zip(o.rays, o.signatures):
            for m, s in zip(mats, sig):
                if list(m.apply(r.components)) != [s * c for c in r.components]:
                    eig_ok = False
    report.check("every ray is a joint eigenvector of its context", eig_ok)
    report.outputs["rays"] = d.to_json()
    report.outputs["context_of_ray"] = {str(i): c for i, c in sorted(d.context_of_ray.items())}
    if args.table_check:
        rec = d.reconciliation
        report.check(
            "every trusted printed row matches its derived ray",
            all(r.printed_agrees for r in rec.rows if r.matched),
            f"{len(rec.matched_ids)} matched, {len(rec.overridden_ids)} overridden",
        )
        report.check("overridden ids resolved uniquely", rec.resolution in ("unique", "none"), rec.resolution)
        report.outputs["table"] = {
            "block_context": {str(b): c for b, c in sorted(rec.block_context.items())},
            "matched_ids": rec.matched_ids,
            "overridden_ids": rec.overridden_ids,
            "diagnosis": rec.diagnosis(),
        }


def cmd_relations(args, report: RunReport) -> None:
    d = derive_all_rays(build_pentagram())
    rs = paper_relations_rank1()
    bad = [k + 1 for k, r in enumerate(rs) if not verify_completeness(r, d.rays).ok]
    report.check("all relations resolve the identity", not bad, f"failing rows {bad}" if bad else "15/15")
    counts = occurrence_counts(rs)
    fours = {i for i, c in counts.items() if c == 4}
    twos = {i for i, c in counts.items() if c == 2}
    report.check("20 rays x4 and 20 rays x2", len(fours) == 20 and len(twos) == 20 and len(counts) == 40)
    report.check("multiplicity-4 rays match the published list", fours == set(RANK1_MULTIPLICITY_FOUR))
    report.outputs["relations"] = [list(r) for r in rs]
    report.outputs["occurrences"] = {str(i): counts[i] for i in sorted(counts)}
    if args.enumerate_octads:
        octads = enumerate_orthogonal_octads(d.rays)
        members = set(octads)
        report.check(
            "every relation is an enumerated octad",
            all(tuple(sorted(r)) in members for r in rs),
        )
        report.outputs["octads"] = [list(o) for o in octads]
        report.outputs["octad_count"] = len(octads)


def _load_user_system(path: str) -> tuple[IncidenceSystem, bytes]:
    fp = Path(path)
    if not fp.is_file():
        raise UsageError(f"system file not found: {path}")
    raw = fp.read_bytes()
    try:
        return load_system(fp), raw
    except (json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read incidence system from {path}: {exc}") from None


def cmd_search(args, report: RunReport) -> None:
    if args.system == "rank1":
        system = from_relations(paper_relations_rank1())
        expect_unsat = True
    elif args.system == "rank2":
        system = from_relations(paper_rank2_proof())
        expect_unsat = True
    else:
        system, _ = _load_user_system(args.system)
        expect_unsat = None
    cert = check_parity_proof(system)
    res = search_assignment(system)
    report.check(
        "parity certificate implies UNSAT", not cert.valid or not res.satisfiable,
        f"certificate {'valid' if cert.valid else 'absent'}",
    )
    if res.satisfiable:
        report.check("witness satisfies every context", is_valid_assignment(system, res.witness))
    if expect_unsat:
        report.check("no noncontextual assignment", not res.satisfiable, f"{res.nodes} search nodes")
    report.outputs.update(
        system=args.system,
        outcomes=len(system.outcomes),
        contexts=len(system.contexts),
        result="SAT" if res.satisfiable else "UNSAT",
        search_nodes=res.nodes,
        parity_certificate={
            "valid": cert.valid,
            "context_count": cert.context_count,
            "odd_outcomes": [str(o) for o in cert.odd_outcomes],
        },
    )
    if res.satisfiable:
        report.outputs["witness"] = [str(o) for o, v in res.witness.items() if v]
    if args.max_sat:
        m = max_satisfiable_contexts(system)
        report.check(
            "max satisfiable contexts consistent with search",
            (m.value == m.context_count) == res.satisfiable,
            f"{m.value}/{m.context_count}",
        )
        report.outputs["max_satisfiable_contexts"] = m.value
        report.outputs["max_sat_witness"] = [str(o) for o, v in m.witness.items() if v]


def cmd_pairings(args, report: RunReport) -> None:
    if not (args.enumerate or args.paper):
        raise UsageError("pairings needs --paper and/or --enumerate")
    d = derive_all_rays(build_pentagram())
    proof = paper_rank2_proof()
    if args.paper:
        rep = verify_rank2_proof(proof, d.rays)
        report.check("every plane is a rank-2 projector", rep.planes_valid)
        report.check("all 15 plane sums equal I", all(rep.relation_complete))
        report.check(
            "30 distinct planes, each twice",
            rep.distinct_planes == 30 and set(rep.multiplicities.values()) == {2},
        )
        report.check("parity certificate valid", rep.certificate.valid)
        report.check("no noncontextual assignment", not rep.search.satisfiable)
        report.outputs["published_proof"] = proof.to_json()
    if args.enumerate:
        e = enumerate_rank2_proofs()
        report.check(
            f"count equals published {PUBLISHED_RANK2_COUNT}",
            e.count == PUBLISHED_RANK2_COUNT,
            f"{e.count} proofs",
        )
        report.check("published proof is among them", e.contains(proof))
        report.check(
            "every enumerated proof verifies",
            all(verify_rank2_proof(p, d.rays).ok for p in e.proofs),
        )
        report.outputs.update(e.statistics())
        if args.list:
            report.outputs["proofs"] = [p.to_json() for p in e.proofs]


def cmd_hypergraph(args, report: RunReport) -> None:
    d = derive_all_rays(build_pentagram())
    proof = paper_rank2_proof()
    hg = build_hypergraph(proof, relabel_planes(proof), d.rays)
    report.check("30 vertices", len(hg.vertices) == 30)
    report.check("15 hyperedges", len(hg.hyperedges) == 15)
    report.check("every vertex in exactly 2 hyperedges", all(hg.degree(v) == 2 for v in hg.vertices))
    present = {frozenset(h) for h in hg.hyperedges}
    report.check(
        "caption hyperedges present",
        all(h in present for h in FIGURE_NAMED_HYPEREDGES),
        " ".join(str(sorted(h)) for h in FIGURE_NAMED_HYPEREDGES),
    )
    report.check(
        "every hyperedge is a 4-clique of orthogonality edges",
        all(
            (a, b) in set(hg.edges) for h in hg.hyperedges for a in h for b in h if a < b
        ),
    )
    text = export(hg, args.format)
    report.outputs.update(
        vertices=len(hg.vertices),
        edges=len(hg.edges),
        extra_edges=len(hg.extra_edges()),
        hyperedges=len(hg.hyperedges),
        format=args.format,
    )
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.outputs["out"] = args.out
    else:
        report.outputs["text"] = text


COMMANDS: dict[str, Callable] = {
    "pentagram": cmd_pentagram,
    "rays": cmd_rays,
    "relations": cmd_relations,
    "search": cmd_search,
    "pairings": cmd_pairings,
    "hypergraph": cmd_hypergraph,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable report"
    )
    parser = argparse.ArgumentParser(
        prog="mermin-ks",
        description="Verify and enumerate Kochen-Specker parity proofs on the three-qubit Mermin pentagram.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("pentagram", parents=[common], help="build and verify the pentagram")

    s = sub.add_parser("rays", parents=[common], help="derive the forty rays")
    s.add_argument("--table-check", action="store_true", help="reconcile with the printed table")

    s = sub.add_parser("relations", parents=[common], help="verify the fifteen rank-1 bases")
    s.add_argument("--enumerate-octads", action="store_true", help="list every orthogonal basis")

    s = sub.add_parser("search", parents=[common], help="search for a noncontextual assignment")
    s.add_argument("--system", required=True, metavar="rank1|rank2|FILE")
    s.add_argument("--max-sat", action="store_true", help="also compute the max satisfiable contexts")

    s = sub.add_parser("pairings", parents=[common], help="rank-2 proofs")
    s.add_argument("--paper", action="store_true", help="verify the published rank-2 proof")
    s.add_argument("--enumerate", action="store_true", help="enumerate every rank-2 parity proof")
    s.add_argument("--list", action="store_true", help="include every proof in the output")

    s = sub.add_parser("hypergraph", parents=[common], help="export the plane orthogonality hypergraph")
    s.add_argument("--format", choices=("dot", "json"), default="json")
    s.add_argument("--out", metavar="PATH", help="write the export here instead of the report")
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = getattr(args, "json", False)
    extra = b""
    if args.command == "search" and args.system not in ("rank1", "rank2"):
        p = Path(args.system)
        extra = p.read_bytes() if p.is_file() else b""
    report = RunReport(args.command, _digest(args, extra))
    try:
        COMMANDS[args.command](args, report)
    except UsageError as exc:
        print(f"mermin-ks {args.command}: error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"mermin-ks {args.command}: error: {exc}", file=stderr)
        return 2

    if as_json:
        stdout.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    elif args.command == "hypergraph" and not args.out:
        stdout.write(report.outputs["text"])
        stderr.write(report.render_text())
    else:
        stdout.write(report.render_text())
        _render_outputs(report, stdout)
    return 0 if report.ok else 1


def _render_outputs(report: RunReport, out) -> None:
    o = report.outputs
    if report.command == "pentagram":
        for k, ctx in enumerate(o["contexts"], start=1):
            sign = "-I" if o["product_signs"][k - 1] == -1 else "+I"
            out.write(f"  line {k}: {' '.join(ctx)}  -> {sign}\n")
    elif report.command == "rays":
        for r in o["rays"]:
            comps = " ".join(f"{c:2d}" for c in r["components"])
            out.write(f"  R{r['id']:<3d} [{comps}]  block {r['octad']}\n")
        if "table" in o:
            for line in o["table"]["diagnosis"]:
                out.write(f"  {line}\n")
    elif report.command == "relations":
        if "octad_count" in o:
            out.write(f"  orthogonal octads among the 40 rays: {o['octad_count']}\n")
    elif report.command == "search":
        out.write(f"  {o['outcomes']} outcomes, {o['contexts']} contexts: {o['result']}\n")
        if "max_satisfiable_contexts" in o:
            out.write(f"  max satisfiable contexts: {o['max_satisfiable_contexts']}/{o['contexts']}\n")
    elif report.command == "pairings":
        if "count" in o:
            out.write(f"  rank-2 parity proofs: {o['count']}\n")
            out.write(f"  distinct-plane counts: {o['distinct_plane_distribution']}\n")
    elif report.command == "hypergraph":
        out.write(f"  wrote {o['format']} to {o['out']}\n")


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
