"""Certificate files: parse, expand, verify, emit.

A certificate names the cycle parameters, one or more translation
generators, and a list of orbit representatives.  Expanding every
representative under the generated group and checking the union against
the distance criterion reproduces the claimed packing, so the file is a
machine-checkable witness for a lower bound on G(d,p).

Grammar (line oriented, '#' starts a comment):

    p <int>
    d <int>
    generator <b_1> ... <b_d>     (repeatable)
    order <int>                   (optional claimed group order)
    claim <int>                   (optional claimed bound)
    <r_1> ... <r_d>               (one representative per line)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import CyclicGroup, cyclic_group, element_order, orbit_of, translation
from .torus import CycleParams, Word, is_independent_set


class CertificateError(Exception):
    """Parse or structural failure, carrying a 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class Certificate:
    p: int
    d: int
    generators: List[Tuple[int, ...]]
    representatives: List[Word]
    claimed_order: Optional[int] = None
    claimed_bound: Optional[int] = None

    @property
    def params(self) -> CycleParams:
        return CycleParams(self.p, self.d)


def parse_certificate(text: str) -> Certificate:
    p = d = None
    generators: List[Tuple[int, ...]] = []
    reps: List[Word] = []
    claimed_order = claimed_bound = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "p":
            p = _int_field(parts, 2, "p", lineno)
        elif head == "d":
            d = _int_field(parts, 2, "d", lineno)
        elif head == "generator":
            if d is None or p is None:
                raise CertificateError("generator before p and d", lineno)
            generators.append(_residues(parts[1:], p, d, lineno))
        elif head == "order":
            claimed_order = _int_field(parts, 2, "order", lineno)
        elif head == "claim":
            claimed_bound = _int_field(parts, 2, "claim", lineno)
        else:
            if d is None or p is None:
                raise CertificateError("representative before p and d", lineno)
            reps.append(_residues(parts, p, d, lineno))
    if p is None or d is None:
        raise CertificateError("missing p or d header")
    if not generators:
        raise CertificateError("missing generator line")
    if len(set(reps)) != len(reps):
        dup = next(r for r in reps if reps.count(r) > 1)
        raise CertificateError(f"duplicate representative {dup}")
    return Certificate(p=p, d=d, generators=generators, representatives=reps,
                       claimed_order=claimed_order, claimed_bound=claimed_bound)


def _int_field(parts: List[str], want: int, name: str, lineno: int) -> int:
    if len(parts) != want:
        raise CertificateError(f"malformed {name} line", lineno)
    try:
        return int(parts[1])
    except ValueError:
        raise CertificateError(f"non-integer {name} value {parts[1]!r}", lineno) from None


def _residues(tokens: Sequence[str], p: int, d: int, lineno: int) -> Tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in tokens)
    except ValueError:
        raise CertificateError(f"non-integer residue in {tokens}", lineno) from None
    if len(vals) != d:
        raise CertificateError(f"tuple length {len(vals)}, expected d={d}", lineno)
    for v in vals:
        if not 0 <= v < p:
            raise CertificateError(f"residue {v} out of range [0, {p})", lineno)
    return vals


def certificate_group(cert: Certificate) -> CyclicGroup:
    """Cyclic group of the first generator; multi-generator certificates use
    the additive closure (still abelian translations)."""
    params = cert.params
    if len(cert.generators) == 1:
        return cyclic_group(translation(cert.generators[0], params))
    # additive closure of several translation generators
    seen = {(0,) * cert.d}
    frontier = [(0,) * cert.d]
    while frontier:
        base = frontier.pop()
        for gen in cert.generators:
            nxt = tuple((a + b) % cert.p for a, b in zip(base, gen))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
        if len(seen) > params.size:
            raise CertificateError("generator closure exceeds the codeword space")
    elements = tuple(translation(offs, params) for offs in sorted(seen))
    return CyclicGroup(translation(cert.generators[0], params), elements)


def expand_certificate(cert: Certificate) -> List[Word]:
    """Union of the representatives' orbits, sorted.

    A duplicate word across orbits means two representatives share an orbit,
    which is a certificate defect and raises.
    """
    group = certificate_group(cert)
    params = cert.params
    words: List[Word] = []
    for rep in cert.representatives:
        words.extend(orbit_of(group, rep, params).members)
    out = sorted(words)
    for a, b in zip(out, out[1:]):
        if a == b:
            raise CertificateError(f"representatives share an orbit: duplicate word {a}")
    return out


@dataclass
class VerificationReport:
    path: Optional[str]
    p: int
    d: int
    group_order: int
    order_matches_claim: Optional[bool]
    expanded_size: int
    duplicate_defect: Optional[str]
    independent: bool
    inadmissible_orbits: List[Word] = field(default_factory=list)
    claimed_bound: Optional[int] = None

    @property
    def implied_bound(self) -> int:
        return self.expanded_size if self.independent else 0

    @property
    def passed(self) -> bool:
        if not self.independent or self.duplicate_defect is not None:
            return False
        if self.claimed_bound is not None and self.expanded_size < self.claimed_bound:
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "p": self.p,
            "d": self.d,
            "group_order": self.group_order,
            "order_matches_claim": self.order_matches_claim,
            "expanded_size": self.expanded_size,
            "duplicate_defect": self.duplicate_defect,
            "independent": self.independent,
            "inadmissible_orbits": [list(w) for w in self.inadmissible_orbits],
            "claimed_bound": self.claimed_bound,
            "implied_bound": self.implied_bound,
            "verdict": "PASS" if self.passed else "FAIL",
        }

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        tail = ""
        if self.duplicate_defect:
            tail = f" [defect: {self.duplicate_defect}]"
        if self.inadmissible_orbits:
            tail += f" [{len(self.inadmissible_orbits)} inadmissible orbit(s)]"
        name = f"{self.path}: " if self.path else ""
        return (f"{name}{verdict} G({self.d},{self.p}) >= {self.implied_bound} "
                f"(size {self.expanded_size}, group order {self.group_order}, "
                f"independent {self.independent}){tail}")


def verify_certificate(cert: Certificate, path: Optional[str] = None) -> VerificationReport:
    """Full re-check of a certificate.

    The independence verdict comes from the plain pairwise distance test on
    the expanded word set, not from any orbit-level shortcut, so a bug in
    the group machinery cannot vouch for itself.
    """
    params = cert.params
    group = certificate_group(cert)
    order_ok = None
    if cert.claimed_order is not None:
        order_ok = group.order == cert.claimed_order
    words: List[Word] = []
    dup_defect = None
    inadmissible: List[Word] = []
    for rep in cert.representatives:
        orb = orbit_of(group, rep, params)
        if not is_independent_set(orb.members, params):
            inadmissible.append(rep)
        words.extend(orb.members)
    unique = sorted(set(words))
    if len(unique) != len(words):
        counts: Dict[Word, int] = {}
        for w in words:
            counts[w] = counts.get(w, 0) + 1
        first = next(w for w in sorted(counts) if counts[w] > 1)
        dup_defect = f"word {first} appears in more than one orbit"
    independent = is_independent_set(unique, params) if unique else True
    return VerificationReport(
        path=path,
        p=cert.p,
        d=cert.d,
        group_order=group.order,
        order_matches_claim=order_ok,
        expanded_size=len(unique),
        duplicate_defect=dup_defect,
        independent=independent,
        inadmissible_orbits=inadmissible,
        claimed_bound=cert.claimed_bound,
    )


def emit_certificate(params: CycleParams, group: CyclicGroup,
                     vertices_words: Sequence[Sequence[Word]],
                     claim: Optional[int] = None,
                     comment: Optional[str] = None) -> str:
    """Render orbits as certificate text, normalised.

    Representatives are replaced by each orbit's lexicographic minimum and
    sorted; parse(emit(...)) therefore reproduces the expansion exactly.
    Only translation groups have a file representation.
    """
    if not group.is_translation_group:
        raise ValueError("certificate files carry translation generators only")
    gen = group.generator
    lines = []
    if comment:
        for row in comment.splitlines():
            lines.append(f"# {row}".rstrip())
    lines.append(f"p {params.p}")
    lines.append(f"d {params.d}")
    lines.append("generator " + " ".join(str(b) for b in gen.offsets))
    lines.append(f"order {group.order}")
    if claim is not None:
        lines.append(f"claim {claim}")
    reps = sorted(min(words) for words in vertices_words)
    for rep in reps:
        lines.append(" ".join(str(x) for x in rep))
    return "\n".join(lines) + "\n"


def emit_solution(graph, vertices: Sequence[int], comment: Optional[str] = None) -> str:
    """Certificate text for a conflict-free vertex set of an orbit graph."""
    words = [graph.orbits[v].members for v in vertices]
    claim = sum(graph.weights[v] for v in vertices)
    return emit_certificate(graph.params, graph.group, words, claim=claim,
                            comment=comment)


def normalize(cert: Certificate) -> Certificate:
    """Certificate with representatives replaced by orbit minima, sorted."""
    group = certificate_group(cert)
    params = cert.params
    reps = sorted({min(orbit_of(group, r, params).members) for r in cert.representatives})
    return Certificate(p=cert.p, d=cert.d, generators=list(cert.generators),
                       representatives=list(reps), claimed_order=group.order,
                       claimed_bound=cert.claimed_bound)
