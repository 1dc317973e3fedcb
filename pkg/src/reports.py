"""
Report Serialization
Machine output is JSON lines: one record per line, keys sorted, every
record carrying a "record" discriminator. Table output is plain aligned text.
"""

import json
from typing import Any, Dict, Iterable, List, Sequence

from src.diagrams import RectDiagram, all_diagrams, orbits
from src.exceptions import ParseError
from src.ext import GradedRep
from src.fullness import GenerationCertificate, TargetTranscript
from src.lefschetz import Kind, LefschetzSpec, OrthogonalityReport, Violation
from src.staircase import StaircaseComplex
from src.utils.logging import get_logger

logger = get_logger(__name__)

Record = Dict[str, Any]


def _rows(d: RectDiagram) -> List[int]:
    return list(d.rows)


def render_records(records: Iterable[Record]) -> str:
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)


def parse_records(text: str) -> List[Record]:
    """
    Parse JSON-lines output back into records

    Raises:
        ParseError: on invalid JSON or a line without a "record" field
    """
    records = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"Line {number} is not valid JSON: {e}") from e
        if not isinstance(record, dict) or "record" not in record:
            raise ParseError(f"Line {number} has no 'record' field")
        records.append(record)
    return records


# Records

def orbit_records(n: int, k: int) -> List[Record]:
    return [
        {
            "record": "orbit",
            "n": n,
            "k": k,
            "index": i,
            "length": o.length,
            "minimal": _rows(o.members[0]),
            "members": [_rows(m) for m in o.members],
        }
        for i, o in enumerate(orbits(n, k), start=1)
    ]


def spec_record(spec: LefschetzSpec) -> Record:
    return {
        "record": "spec",
        "kind": spec.kind.value,
        "n": spec.n,
        "k": spec.k,
        "basis": [_rows(d) for d in spec.diagrams],
        "supports": list(spec.supports),
    }


def spec_from_record(record: Record) -> LefschetzSpec:
    try:
        n, k = record["n"], record["k"]
        basis = tuple(
            (RectDiagram(n, k, tuple(rows)), support)
            for rows, support in zip(record["basis"], record["supports"])
        )
        return LefschetzSpec(Kind(record["kind"]), n, k, basis)
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(f"Invalid spec record: {e}") from e


def orthogonality_record(report: OrthogonalityReport) -> Record:
    record = spec_record(report.spec)
    record.update({
        "record": "orthogonality",
        "verified": report.verified,
        "counts": {
            "objects": report.object_count,
            "k0_rank": report.k0_rank,
            "checked": report.checked,
        },
        "violations": [
            {
                "source": _rows(v.source),
                "twist": v.twist,
                "target": _rows(v.target),
                "degrees": list(v.degrees),
            }
            for v in report.violations
        ],
    })
    return record


def orthogonality_from_record(record: Record) -> OrthogonalityReport:
    spec = spec_from_record(record)
    try:
        violations = [
            Violation(
                RectDiagram(spec.n, spec.k, tuple(v["source"])),
                v["twist"],
                RectDiagram(spec.n, spec.k, tuple(v["target"])),
                tuple(v["degrees"]),
            )
            for v in record["violations"]
        ]
        return OrthogonalityReport(spec, violations, record["counts"]["checked"])
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(f"Invalid orthogonality record: {e}") from e


def ext_record(source: RectDiagram, t: int, target: RectDiagram, ext: GradedRep) -> Record:
    return {
        "record": "ext",
        "n": source.n,
        "k": source.k,
        "source": _rows(source),
        "twist": t,
        "target": _rows(target),
        "degrees": [
            {
                "degree": q,
                "dimension": ext.total_dim(q),
                "summands": [[list(w), m] for w, m in sorted(ext.by_degree[q].items(), reverse=True)],
            }
            for q in ext.degrees
        ],
    }


def staircase_record(c: StaircaseComplex) -> Record:
    return {
        "record": "staircase",
        "n": c.n,
        "k": c.k,
        "target": _rows(c.target),
        "terms": [
            {"degree": t.degree, "nu": t.nu, "diagram": _rows(t.diagram), "twist": t.twist}
            for t in c.terms()
        ],
        "spectral": [[e.index, e.p, e.q] for e in c.spectral],
    }


def _pairs(pairs) -> List[List[Any]]:
    return [[_rows(p.diagram), p.twist] for p in pairs]


def _transcript_record(t: TargetTranscript) -> Record:
    return {
        "target": _rows(t.target),
        "offset": t.offset,
        "iterations": t.iterations,
        "final": _pairs(t.final),
        "rejected": _pairs(t.rejected),
        "bad_pairs": _pairs(t.bad_pairs),
        "rewrites": len(t.rewrites),
        "claim_checks": [t.claim1_checks, t.claim2_checks],
        "verdict": t.verdict.value,
    }


def certificate_record(cert: GenerationCertificate) -> Record:
    return {
        "record": "certificate",
        "kind": cert.kind,
        "n": cert.n,
        "k": cert.k,
        "verdict": cert.verdict.value,
        "budget": cert.budget,
        "bad_pairs": _pairs(cert.bad_pairs),
        "prerequisite": cert.prerequisite.verdict.value if cert.prerequisite else None,
        "targets": [_transcript_record(t) for t in cert.transcripts],
    }


# Tables

def render_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> List[str]:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def orbit_table(n: int, k: int) -> List[str]:
    """Orbit table; minimal representatives are marked with *"""
    rows = []
    for i, o in enumerate(orbits(n, k), start=1):
        members = ", ".join(("*" if j == 0 else "") + str(m) for j, m in enumerate(o.members))
        rows.append([i, o.length, members])
    lines = render_table(["orbit", "length", "members"], rows)
    lines.append(f"{len(rows)} orbits, {len(all_diagrams(n, k))} diagrams")
    return lines
