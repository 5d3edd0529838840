"""Command line front end.

Subcommands
    validate    differential/bracket identities and the pairing axioms
    cohomology  dimensions, representatives, induced bracket
    transfer    minimal-model tables, re-verified against the axioms
    massey      one triple product, or a full certificate scan
    formality   the whole pipeline: hypotheses, equivariant search,
                normalization, witness construction, independent check
    corpus      golden expectations over the bundled example documents

Reports render as text (default) or as stable JSON (``--format
structured``).  Exit codes: 0 for every verdict except a FAIL report or
a NON-FORMAL verdict from ``formality``, which exit 1; unreadable input
(parse errors, schema violations, missing files, ill-posed queries)
exits 2.  ``massey`` is an evidence query: finding a certificate still
exits 0.  The environment variable ``LF_THREADS`` caps internal
parallelism (0 or unset picks a sensible default).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .cyclic import NormalizationError, normalize_splitting, validate_pairing
from .dgla import (
    EquivariantObstruction, compute_splitting, cohomology,
    find_equivariant_splitting, validate_dgla, verify_splitting,
)
from .documents import (
    DocumentError, ParseError, bundled_documents, document_splitting,
    document_to_algebra, document_to_quasi_cyclic, load_document,
    parse_document,
)
from .formality import (
    WitnessRejected, build_formality_witness, detect_nonformality,
    massey_triple, verify_witness,
)
from .linfty import check_linfty_axioms, check_morphism, homotopy_transfer

__all__ = ["Report", "main"]


@dataclass
class Report:
    """Deterministic command outcome; timing is informational only."""

    command: str
    status: str
    findings: list = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"command": self.command, "status": self.status,
                "findings": self.findings, "seconds": round(self.seconds, 6)}


def _violation_finding(v) -> dict:
    return {"kind": "violation", "identity": v.identity,
            "where": list(v.where), "detail": v.detail}


def _note(text) -> dict:
    return {"kind": "note", "text": text}


# ---------------------------------------------------------------------------
# Command implementations (document-level, reused by the corpus gate)
# ---------------------------------------------------------------------------

def _splitting_for(doc, A):
    declared = document_splitting(doc, A)
    return declared if declared is not None else compute_splitting(A)


def _validate_doc(doc):
    A = document_to_algebra(doc)
    findings = [_violation_finding(v) for v in validate_dgla(A)]
    splitting = document_splitting(doc, A)
    if splitting is not None:
        findings.extend(_violation_finding(v)
                        for v in verify_splitting(splitting))
    quasi_cyclic = True
    if doc.pairing_degree is not None:
        Q = document_to_quasi_cyclic(doc)
        report = validate_pairing(Q, splitting)
        findings.append({"kind": "pairing-status", "text": report.status()})
        findings.extend(_violation_finding(v) for v in report.violations)
        quasi_cyclic = report.is_quasi_cyclic
    else:
        findings.append(_note("no pairing declared"))
    bad = any(f["kind"] == "violation" for f in findings)
    status = "PASS" if not bad and quasi_cyclic else "FAIL"
    return status, findings


def _formality_doc(doc, arity=None):
    Q = document_to_quasi_cyclic(doc)
    A = Q.algebra
    s0 = _splitting_for(doc, A)
    N = arity if arity is not None else len(s0.h_vectors) + 2
    findings = []
    rejection = []

    report = validate_pairing(Q, s0)
    findings.append({"kind": "pairing-status", "text": report.status()})
    if doc.h0_labels is not None:
        h0 = [A.basis_vector(label) for label in doc.h0_labels]
    else:
        h0 = [v for v in s0.h_vectors if v.degree() == 0]

    normalized = None
    if not report.is_quasi_cyclic:
        rejection.append(_note("the pairing is not quasi-cyclic"))
        rejection.extend(_violation_finding(v) for v in report.violations)
    else:
        try:
            normalized = normalize_splitting(Q, s0, h0)
        except NormalizationError as error:
            if any(v.identity.startswith("invariance")
                   for v in error.violations):
                found = find_equivariant_splitting(A, h0)
                if isinstance(found, EquivariantObstruction):
                    rejection.append(_note(
                        "no splitting invariant under the degree-0 classes "
                        "exists"))
                    rejection.append({"kind": "obstruction",
                                      "text": found.describe()})
                    rejection.extend(_violation_finding(v)
                                     for v in error.violations)
                else:
                    findings.append(_note(
                        "the given splitting is not invariant; the "
                        "equivariant search found one, normalizing it"))
                    try:
                        normalized = normalize_splitting(Q, found, h0)
                    except NormalizationError as second:
                        rejection.append(_note(str(second)))
                        rejection.extend(_violation_finding(v)
                                         for v in second.violations)
            else:
                rejection.append(_note(str(error)))
                rejection.extend(_violation_finding(v)
                                 for v in error.violations)

    if normalized is not None and not rejection:
        findings.extend(_note(f"normalization: {line}")
                        for line in normalized.notes)
        try:
            witness = build_formality_witness(normalized.quasi,
                                              normalized.splitting, N)
        except WitnessRejected as error:
            rejection.append(_note(error.message))
            if error.obstruction is not None:
                rejection.append({"kind": "obstruction",
                                  "text": error.obstruction.describe()})
            rejection.extend(_violation_finding(v)
                             for v in error.violations)
        else:
            T = homotopy_transfer(normalized.quasi.algebra,
                                  normalized.splitting, N)
            leftovers = verify_witness(witness, T, T.minimal.operation(2))
            findings.extend({"kind": "witness-check", "text": line}
                            for line in witness.report)
            H = T.minimal.space
            for p in sorted(witness.taylor):
                table = witness.taylor[p]
                if p == 1:
                    findings.append(_note("f_1 is the identity"))
                    continue
                for key, value in table.entries():
                    findings.append({"kind": "witness-coefficient",
                                     "arity": p,
                                     "args": list(table.labels_of(key)),
                                     "value": repr(value)})
            findings.append(_note(
                f"independent morphism-relation check to arity {N}: "
                f"{len(leftovers)} violations"))
            if leftovers:
                findings.extend(_violation_finding(v) for v in leftovers)
                return "FAIL", findings
            return f"FORMAL-UP-TO-{N}", findings

    findings.extend(rejection)
    certificate = detect_nonformality(A, s0)
    if certificate is not None:
        findings.append({
            "kind": "certificate", "certificate": certificate.kind,
            "triple": list(certificate.triple),
            "class": repr(certificate.class_vector),
            "indeterminacy": [repr(v) for v in certificate.indeterminacy],
            "text": certificate.describe()})
        return "NON-FORMAL", findings
    findings.append(_note(
        "no triple-product certificate found on the representatives"))
    return "REJECTED", findings


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_validate(args) -> Report:
    status, findings = _validate_doc(load_document(args.file))
    return Report("validate", status, findings)


def cmd_cohomology(args) -> Report:
    doc = load_document(args.file)
    A = document_to_algebra(doc)
    presentation = cohomology(A, _splitting_for(doc, A))
    findings = [{"kind": "dimensions",
                 "by_degree": [[d, n] for d, n in sorted(
                     presentation.dims.items())]}]
    H = presentation.space
    for i, rep in enumerate(presentation.representatives):
        findings.append({"kind": "representative", "label": H.labels[i],
                         "degree": H.degrees[i], "vector": repr(rep)})
    for key, value in presentation.bracket.entries():
        findings.append({"kind": "bracket-entry",
                         "args": list(presentation.bracket.labels_of(key)),
                         "value": repr(value)})
    findings.extend(_violation_finding(v) for v in presentation.violations)
    status = "PASS" if not presentation.violations else "FAIL"
    return Report("cohomology", status, findings)


def cmd_transfer(args) -> Report:
    doc = load_document(args.file)
    A = document_to_algebra(doc)
    s = _splitting_for(doc, A)
    N = args.arity if args.arity is not None else len(s.h_vectors) + 2
    T = homotopy_transfer(A, s, N)
    findings = []
    for p in range(1, N + 1):
        table = T.inclusion.component(p)
        for key, value in table.entries():
            findings.append({"kind": "inclusion-entry", "arity": p,
                             "args": list(table.labels_of(key)),
                             "value": repr(value)})
    for p in range(2, N + 1):
        table = T.minimal.operation(p)
        for key, value in table.entries():
            findings.append({"kind": "transfer-bracket", "arity": p,
                             "args": list(table.labels_of(key)),
                             "value": repr(value)})
    problems = (check_linfty_axioms(T.minimal, N)
                + check_morphism(T.inclusion, N))
    findings.append(_note(
        f"re-verified: strong homotopy axioms and morphism relations "
        f"to arity {N}: {len(problems)} violations"))
    findings.extend(_violation_finding(v) for v in problems)
    return Report("transfer", "PASS" if not problems else "FAIL", findings)


def cmd_massey(args) -> Report:
    doc = load_document(args.file)
    A = document_to_algebra(doc)
    s = _splitting_for(doc, A)
    if args.triple:
        for label in args.triple:
            if label not in A.space.labels:
                raise DocumentError(f"unknown basis label {label!r}",
                                    "triple")
        product = massey_triple(A, s, *args.triple)
        if product is None:
            finding = {"kind": "triple-product", "triple": list(args.triple),
                       "defined": False}
        else:
            finding = {
                "kind": "triple-product", "triple": list(args.triple),
                "defined": True, "class": repr(product.class_vector),
                "representative": repr(product.representative),
                "indeterminacy": [repr(v) for v in product.indeterminacy],
                "nonzero_mod_indeterminacy":
                    product.nonzero_mod_indeterminacy()}
        return Report("massey", "PASS", [finding])
    certificate = detect_nonformality(A, s)
    if certificate is None:
        findings = [_note("no certificate among the representatives; "
                          "vanishing triple products prove nothing")]
        return Report("massey", "INCONCLUSIVE", findings)
    findings = [{
        "kind": "certificate", "certificate": certificate.kind,
        "triple": list(certificate.triple),
        "class": repr(certificate.class_vector),
        "indeterminacy": [repr(v) for v in certificate.indeterminacy],
        "text": certificate.describe()}]
    return Report("massey", "NON-FORMAL", findings)


def cmd_formality(args) -> Report:
    status, findings = _formality_doc(load_document(args.file), args.arity)
    return Report("formality", status, findings)


_EXPECTED_CORPUS = {
    "diagonal-symplectic": {"validate": "PASS",
                            "pairing": "cyclic of degree 2",
                            "formality": "FORMAL-UP-TO-6"},
    "nocontraction": {"validate": "PASS", "pairing": "cyclic of degree 2",
                      "formality": "NON-FORMAL"},
    "noformal-degree3": {"validate": "PASS", "pairing": "cyclic of degree 3",
                         "formality": "NON-FORMAL"},
    "weighted-pair": {"validate": "PASS",
                      "pairing": "quasi-cyclic of degree 2",
                      "formality": "FORMAL-UP-TO-6"},
}


def cmd_corpus(args) -> Report:
    findings = []
    all_match = True
    seen = set()
    for name, text in bundled_documents():
        doc = parse_document(text)
        seen.add(name)
        validate_status, validate_findings = _validate_doc(doc)
        pairing = next((f["text"] for f in validate_findings
                        if f["kind"] == "pairing-status"), "none")
        formality_status, _ = _formality_doc(doc)
        expected = _EXPECTED_CORPUS.get(name)
        got = {"validate": validate_status, "pairing": pairing,
               "formality": formality_status}
        match = expected == got
        all_match = all_match and match
        findings.append({"kind": "corpus-entry", "name": name, **got,
                         "expected": expected, "match": match})
    for missing in sorted(set(_EXPECTED_CORPUS) - seen):
        findings.append({"kind": "corpus-entry", "name": missing,
                         "expected": _EXPECTED_CORPUS[missing],
                         "match": False})
        all_match = False
    return Report("corpus", "PASS" if all_match else "FAIL", findings)


# ---------------------------------------------------------------------------
# Rendering and dispatch
# ---------------------------------------------------------------------------

def _finding_text(f) -> str:
    kind = f.get("kind")
    if kind == "violation":
        where = ", ".join(f["where"])
        text = f"violation {f['identity']} at ({where})"
        return text + (f": {f['detail']}" if f.get("detail") else "")
    if kind == "pairing-status":
        return f"pairing: {f['text']}"
    if kind == "note":
        return f["text"]
    if kind == "dimensions":
        parts = ", ".join(f"dim H^{d} = {n}" for d, n in f["by_degree"])
        return parts or "cohomology vanishes"
    if kind == "representative":
        return (f"class {f['label']} (degree {f['degree']}) "
                f"is represented by {f['vector']}")
    if kind == "bracket-entry":
        return f"[{', '.join(f['args'])}] = {f['value']}"
    if kind == "inclusion-entry":
        return f"i_{f['arity']}({', '.join(f['args'])}) = {f['value']}"
    if kind == "transfer-bracket":
        return f"{{{', '.join(f['args'])}}}_{f['arity']} = {f['value']}"
    if kind == "triple-product":
        triple = ", ".join(f["triple"])
        if not f["defined"]:
            return f"triple product of ({triple}) is not defined"
        verdict = ("essentially nonzero"
                   if f["nonzero_mod_indeterminacy"] else
                   "zero modulo the indeterminacy")
        return (f"triple product of ({triple}): class {f['class']}, "
                f"indeterminacy of dimension {len(f['indeterminacy'])}, "
                f"{verdict}")
    if kind == "certificate":
        return f["text"]
    if kind == "obstruction":
        return f"obstruction: {f['text']}"
    if kind == "witness-check":
        return f"checked: {f['text']}"
    if kind == "witness-coefficient":
        return f"f_{f['arity']}({', '.join(f['args'])}) = {f['value']}"
    if kind == "corpus-entry":
        verdict = "ok" if f["match"] else "MISMATCH"
        return (f"{f['name']}: validate={f.get('validate')}, "
                f"pairing={f.get('pairing')}, "
                f"formality={f.get('formality')} [{verdict}]")
    return json.dumps(f, sort_keys=True)


def _render(report: Report, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report.as_dict(), sort_keys=True, indent=2)
    lines = [f"{report.command}: {report.status} "
             f"({report.seconds:.3f}s)"]
    lines.extend(f"  - {_finding_text(f)}" for f in report.findings)
    return "\n".join(lines)


def _exit_code(report: Report) -> int:
    if report.status == "FAIL":
        return 1
    if report.command == "formality" and report.status == "NON-FORMAL":
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedlie",
        description="Exact minimal models, Massey products, and formality "
                    "certificates for differential graded Lie algebras.",
        epilog="Exit codes: 0 verdict computed (PASS, INCONCLUSIVE, "
               "REJECTED, FORMAL-UP-TO-N, and NON-FORMAL outside "
               "'formality'); 1 FAIL, or NON-FORMAL from 'formality'; "
               "2 unreadable input. LF_THREADS caps internal parallelism "
               "(0 = auto).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, needs_file=True, arity=False,
            triple=False):
        cmd = sub.add_parser(name, help=help_text)
        if needs_file:
            cmd.add_argument("file", help="algebra document (.alg)")
        if arity:
            cmd.add_argument("--arity", type=int, default=None, metavar="N",
                             help="arity bound (default: dim H + 2)")
        if triple:
            cmd.add_argument("--triple", nargs=3, default=None,
                             metavar=("L1", "L2", "L3"),
                             help="compute one triple product instead of "
                                  "scanning")
        cmd.add_argument("--format", choices=("text", "structured"),
                         default="text", help="report rendering")
        cmd.set_defaults(handler=handler)

    add("validate", cmd_validate,
        "check the graded Leibniz/Jacobi identities and the pairing")
    add("cohomology", cmd_cohomology,
        "dimensions, representatives, and the induced bracket")
    add("transfer", cmd_transfer, "minimal-model tables, re-verified",
        arity=True)
    add("massey", cmd_massey, "triple products and certificate scans",
        triple=True)
    add("formality", cmd_formality,
        "hypothesis check, witness construction, independent verification",
        arity=True)
    add("corpus", cmd_corpus, "golden expectations over bundled examples",
        needs_file=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report = args.handler(args)
    except (ParseError, DocumentError, OSError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    report.seconds = time.perf_counter() - started
    print(_render(report, args.format))
    return _exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
