"""``cayleyham`` command line.

Exit codes: 0 when the object asked about exists (or a certificate was
written / verified), 1 when it does not, 2 on errors or unknown verdicts.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import construct, families, search
from .abelian3 import abelian3_ham_cycle
from .catalog import build_entry, catalog, generating_pairs
from .cayley import CYCLE, PATH, build_cayley, verify_certificate
from .errors import CayleyHamError, PreconditionFailed
from .groups import FiniteGroup, quotient_group, subgroup_generated
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    document_from_json,
    document_to_json,
    dumps,
    element_from_json,
    element_to_json,
    spec_to_json,
)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _group_and_gens(args) -> tuple[FiniteGroup, list[int], bool]:
    doc = document_from_json(_load(args.spec))
    G = doc.build()
    raw = json.loads(args.gens) if args.gens else doc.generators
    if not raw:
        raise PreconditionFailed("no generators given (use --gens or a document with 'generators')")
    return G, [element_from_json(G, g) for g in raw], doc.strict


# ---------------------------------------------------------------------------
# decide


def cmd_decide(args) -> int:
    G, S, strict = _group_and_gens(args)
    kw = {}
    if args.node_cap:
        kw["node_cap"] = args.node_cap
    if args.cycle:
        report = search.decide_cycle(G, S, **kw)
    elif args.method == "dfs":
        report = search.decide_path(G, S, method="dfs", **kw)
    else:
        if args.method == "structured" and len(S) != 2:
            raise PreconditionFailed("structured search needs exactly two generators")
        report = search.decide_path(G, S, method=args.method)
    search.checked_report(build_cayley(G, S), report)
    out = {"kind": CYCLE if args.cycle else PATH, "verdict": report.verdict, "method": report.method,
           "stats": report.stats, "certificate": None}
    if report.certificate is not None:
        out["certificate"] = certificate_to_json(G, S, report.certificate, strict)
    _emit(out, None)
    if report.verdict is None:
        return EXIT_ERROR
    return EXIT_YES if report.verdict else EXIT_NO


# ---------------------------------------------------------------------------
# construct


def _fgl(G: FiniteGroup, S: list[int], normal: list[int]):
    N = subgroup_generated(G, normal)
    Q, proj = quotient_group(G, N)
    qS = [int(proj[s]) for s in S]
    if len(set(qS)) != len(qS):
        raise PreconditionFailed("generators collide in G/N")
    rep = search.dfs_ham_cycle(build_cayley(Q, qS))
    if not rep.verdict:
        raise PreconditionFailed("Cay(G/N; S) has no hamiltonian cycle")
    cert = construct.factor_group_cycle(G, S, N, [S[i] for i in rep.certificate.labels])
    if cert is None:
        raise PreconditionFailed("the quotient cycle's product does not generate N")
    return cert


def cmd_construct(args) -> int:
    G, S, strict = _group_and_gens(args)
    m = args.method
    if m == "abelian":
        cert = construct.abelian_ham_path(G, S)
    elif m == "small-commutator":
        cert = construct.small_commutator_path(G, S)
    elif m == "rankin":
        if len(S) != 2:
            raise PreconditionFailed("rankin needs exactly two generators")
        w = construct.rankin_decide(G, *S)
        if w is None:
            raise PreconditionFailed("no k, l with <ka + lb> = <a - b>: no hamiltonian cycle")
        cert = construct.rankin_cycle(G, S[0], S[1], w)
    elif m == "fgl":
        if not args.normal:
            raise PreconditionFailed("fgl needs --normal with generators of N")
        cert = _fgl(G, S, [element_from_json(G, x) for x in json.loads(args.normal)])
    elif m == "abelian3":
        if len(S) != 3:
            raise PreconditionFailed("abelian3 takes generators a, b, b+k")
        a, b, c = S
        cert = abelian3_ham_cycle(G, a, b, G.mul(G.inv(b), c))
    else:  # pragma: no cover - argparse restricts choices
        raise PreconditionFailed(f"unknown method {m}")
    v = verify_certificate(build_cayley(G, S), cert)
    if not v:
        raise CayleyHamError(f"refusing to write an unverified certificate: {v.reason}")
    _emit(certificate_to_json(G, S, cert, strict), args.out)
    return EXIT_YES


# ---------------------------------------------------------------------------
# family / verify / export


def cmd_family(args) -> int:
    name = args.name
    if name == "theorem13":
        inst = families.theorem13_family(args.p, args.n, unsafe_any_prime=args.unsafe_any_prime)
    elif name == "g5":
        inst = families.g5_example()
    elif name == "a4z2":
        inst = families.a4z2_example()
    elif name == "locke-witte-12k":
        inst = families.locke_witte_12k(args.k)
    elif name == "locke-witte-2k":
        if None in (args.a, args.b, args.k):
            raise PreconditionFailed("locke-witte-2k needs --a, --b and --k")
        inst = families.locke_witte_2k(args.a, args.b, args.k)
    else:  # pragma: no cover
        raise PreconditionFailed(f"unknown family {name}")
    G, S = inst.build()
    doc = document_to_json(inst.spec, [element_to_json(G, s) for s in S], inst.strict)
    doc["name"] = inst.name
    doc["order"] = G.order
    _emit(doc, args.out)
    return EXIT_YES


def cmd_verify(args) -> int:
    G, S, cert = certificate_from_json(_load(args.cert))
    v = verify_certificate(build_cayley(G, S), cert)
    _emit({"ok": v.ok, "reason": v.reason, "step": v.step}, None)
    return EXIT_YES if v else EXIT_NO


def to_dot(G: FiniteGroup, S: Sequence[int], names: Sequence[str] | None = None) -> str:
    D = build_cayley(G, S)
    names = list(names) if names else [json.dumps(element_to_json(G, s)) for s in S]
    lines = ["digraph cayley {"]
    for g in range(G.order):
        lines.append(f'  v{g} [label={json.dumps(json.dumps(element_to_json(G, g)))}];')
    for g in range(G.order):
        for i in range(len(S)):
            lines.append(f"  v{g} -> v{D.arc(g, i)} [label={json.dumps(names[i])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    G, S, _ = _group_and_gens(args)
    names = args.labels.split(",") if args.labels else None
    if names and len(names) != len(S):
        raise PreconditionFailed("--labels needs one name per generator")
    with open(args.dot, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_dot(G, S, names))
    return EXIT_YES


# ---------------------------------------------------------------------------
# survey


def survey_records(max_order: int, min_order: int = 1):
    """One record per 2-generated Cayley digraph (pairs up to automorphism) in the catalog."""
    for entry in catalog(max_order):
        if entry.order < max(min_order, 3):
            continue
        G = build_entry(entry)
        small_comm = construct.small_commutator_applies(G)
        for a, b in generating_pairs(G, up_to_automorphism=True):
            S = [a, b]
            D = build_cayley(G, S)
            dfs = search.checked_report(D, search.dfs_ham_path(D, workers=1))
            st = search.checked_report(D, search.structured_ham_path_2gen(G, S, workers=1))
            rec = {
                "group": entry.name,
                "spec": spec_to_json(entry.spec),
                "generators": [element_to_json(G, s) for s in S],
                "dfs": dfs.verdict,
                "structured": st.verdict,
                "agree": dfs.verdict == st.verdict,
                "constructions": {},
            }
            if G.is_abelian:
                rec["constructions"]["abelian"] = bool(verify_certificate(D, construct.abelian_ham_path(G, S)))
                w = construct.rankin_decide(G, a, b)
                rec["constructions"]["rankin_cycle"] = w is not None
            if small_comm:
                rec["constructions"]["small_commutator"] = bool(
                    verify_certificate(D, construct.small_commutator_path(G, S)))
            yield rec


def cmd_survey(args) -> int:
    bad = 0
    fh = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8", newline="\n")
    try:
        for rec in survey_records(args.max_order, args.min_order):
            bad += not rec["agree"]
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    if bad:
        print(f"{bad} disagreements", file=sys.stderr)
    return EXIT_NO if bad else EXIT_YES


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayleyham", description="Hamiltonian paths and cycles in Cayley digraphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide whether a hamiltonian path or cycle exists")
    d.add_argument("spec")
    d.add_argument("--gens", help="JSON array of generators (coordinate arrays)")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--path", action="store_true", default=True)
    g.add_argument("--cycle", action="store_true")
    d.add_argument("--method", choices=["dfs", "structured", "auto"], default="auto")
    d.add_argument("--node-cap", type=int)
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("construct", help="build and verify a certificate by a constructive method")
    c.add_argument("spec")
    c.add_argument("--gens")
    c.add_argument("--method", required=True, choices=["abelian", "rankin", "fgl", "small-commutator", "abelian3"])
    c.add_argument("--normal", help="fgl: JSON array of generators of the cyclic normal subgroup")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_construct)

    f = sub.add_parser("family", help="emit a group and generators from a known family")
    f.add_argument("name", choices=["theorem13", "g5", "a4z2", "locke-witte-12k", "locke-witte-2k"])
    f.add_argument("--p", type=int, default=7)
    f.add_argument("--n", type=int, default=1)
    f.add_argument("--k", type=int, default=1)
    f.add_argument("--a", type=int)
    f.add_argument("--b", type=int)
    f.add_argument("--unsafe-any-prime", action="store_true")
    f.add_argument("--out", "-o")
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", help="check a certificate file")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write the Cayley digraph as DOT")
    e.add_argument("spec")
    e.add_argument("--gens")
    e.add_argument("--dot", required=True)
    e.add_argument("--labels", help="comma separated arc label names, e.g. a,b,b+k")
    e.set_defaults(func=cmd_export)

    s = sub.add_parser("survey", help="cross-check searches over the catalog, one JSONL record per digraph")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--min-order", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_survey)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CayleyHamError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
