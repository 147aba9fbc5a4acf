"""Report builders shared by the command-line front end"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

from nilsoliton_checker.core.algebra_file import serialize_algebra
from nilsoliton_checker.core.derivations import (
    DerivationBasis,
    derivation_algebra,
    derive_grading,
    diagonal_derivations,
    is_derivation,
    rank_one_scale,
    torus_pre_einstein,
    verify_pre_einstein,
)
from nilsoliton_checker.core.exactla import RatMatrix
from nilsoliton_checker.core.families import FamilyMember, FamilySpec
from nilsoliton_checker.core.liecore import (
    LieAlgebra,
    NotNilpotentError,
    center,
    commutator_ideal,
    nilpotency_type,
)
from nilsoliton_checker.core.metric import DiagonalMetric, ricci_endomorphism, ricci_form, soliton_metric_check
from nilsoliton_checker.core.soliton import (
    SolitonVerdict,
    VerdictTag,
    gram_matrix,
    soliton_test,
    zero_component_labels,
)
from nilsoliton_checker.utils.fingerprint import generate_algebra_id

logger = logging.getLogger("nilsoliton_checker")

EXIT_CODES = {
    VerdictTag.SOLITON: 0,
    VerdictTag.NONSOLITON: 1,
    VerdictTag.INAPPLICABLE: 2,
}

REAL_RANK_CAVEAT = "dimension of the diagonal torus; equals the real rank when a maximal split torus is diagonal in this basis"


def to_jsonable(value: Any) -> Any:
    """Render numbers as exact strings; booleans and None pass through"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, RatMatrix):
        return value.to_strings()
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


def triple_label(triple) -> str:
    return "({},{},{})".format(*triple)


def verdict_exit_code(verdict: SolitonVerdict) -> int:
    return EXIT_CODES[verdict.tag]


def algebra_summary(g: LieAlgebra) -> Dict[str, Any]:
    summary: Dict[str, Any] = {
        "dim": g.dim,
        "bracket_count": len(g.triples),
        "center_dim": center(g).dim,
        "commutator_dim": commutator_ideal(g).dim,
    }
    try:
        series_type = nilpotency_type(g)
        summary.update({"nilpotent": True, "type": series_type, "step": len(series_type)})
    except NotNilpotentError as e:
        logger.warning(f"Algebra is not nilpotent: {e}")
        summary.update({"nilpotent": False, "type": None, "step": None})
    return summary


def verdict_section(verdict: SolitonVerdict) -> Dict[str, Any]:
    section: Dict[str, Any] = {"tag": verdict.tag}
    if verdict.tag is VerdictTag.SOLITON:
        section["witness"] = list(verdict.witness)
    elif verdict.tag is VerdictTag.NONSOLITON:
        evidence = verdict.evidence
        solutions = evidence.solution_set
        section["evidence"] = {
            "consistent": solutions.consistent,
            "t_star": evidence.t_star,
            "simplex_iterations": evidence.iterations,
            "particular": list(solutions.particular) if solutions.consistent else None,
            "nullspace_basis": [list(w) for w in solutions.nullspace_basis] if solutions.consistent else [],
            "zero_components": zero_component_labels(evidence.zero_components),
        }
    else:
        section["reason"] = verdict.reason
    return section


def gram_section(g: LieAlgebra, include_matrix: bool = True) -> Dict[str, Any]:
    gram = gram_matrix(g)
    section: Dict[str, Any] = {
        "index_set": [triple_label(t) for t in gram.index_set],
        "size": len(gram.index_set),
        "nice": not gram.has_entry(2),
        "symmetric": gram.u.is_symmetric(),
    }
    if include_matrix:
        section["matrix"] = gram.u
    return section


def derivation_section(g: LieAlgebra, der: DerivationBasis, include_basis: bool = False) -> Dict[str, Any]:
    torus = diagonal_derivations(g)
    pre_einstein = torus_pre_einstein(g)
    section: Dict[str, Any] = {
        "dimension": der.dim,
        "diagonal_torus_dim": len(torus),
        "diagonal_torus_basis": [list(t) for t in torus],
        "real_rank_note": REAL_RANK_CAVEAT,
        "nikolayevsky": None,
    }
    if pre_einstein is not None:
        section["nikolayevsky"] = {
            "diagonal": list(pre_einstein.diagonal()),
            "verified": verify_pre_einstein(g, pre_einstein, der),
        }
    if include_basis:
        section["basis"] = list(der.basis)
    return section


def analyze_report(g: LieAlgebra, source: Optional[str] = None, include_gram: bool = True,
                   der: Optional[DerivationBasis] = None) -> Dict[str, Any]:
    """Full analysis of one algebra"""
    report: Dict[str, Any] = {
        "command": "analyze",
        "algebra_id": generate_algebra_id(serialize_algebra(g)),
        "source": source,
        "algebra": algebra_summary(g),
    }

    if g.is_abelian:
        report["grading"] = None
        report["gram"] = None
    else:
        grading = derive_grading(g)
        report["grading"] = {"weights": list(grading.weights), "source": "derived"} if grading else None
        report["gram"] = gram_section(g, include_gram)

    if report["algebra"]["nilpotent"]:
        verdict = soliton_test(g)
    else:
        verdict = SolitonVerdict(VerdictTag.INAPPLICABLE, reason="not nilpotent")
    report["verdict"] = verdict_section(verdict)
    report["exit_code"] = verdict_exit_code(verdict)

    if der is None:
        der = derivation_algebra(g)
    report["derivations"] = derivation_section(g, der)
    logger.info(f"Analyzed algebra {report['algebra_id']}: {verdict.tag.value}")
    return report


def family_report(spec: FamilySpec, member: FamilyMember, include_gram: bool = True) -> Dict[str, Any]:
    """Analysis of a generated family member plus its candidate Nikolayevsky derivation"""
    g = member.algebra
    der = derivation_algebra(g)
    report = analyze_report(g, source=spec.label, include_gram=include_gram, der=der)
    report["command"] = "family"
    scaled = member.d_candidate.scale(member.nikolayevsky_scale)
    report["family"] = {
        "m": spec.m,
        "k": spec.k,
        "q": spec.q,
        "grading_weights": list(member.grading.weights),
        "d_candidate": list(member.d_candidate.diagonal()),
        "d_candidate_is_derivation": is_derivation(g, member.d_candidate),
        "lambda": member.nikolayevsky_scale,
        "rank_one_scale": rank_one_scale(member.d_candidate),
        "pre_einstein_check": verify_pre_einstein(g, scaled, der),
    }
    return report


def gram_report(g: LieAlgebra, source: Optional[str] = None) -> Dict[str, Any]:
    return {
        "command": "gram",
        "algebra_id": generate_algebra_id(serialize_algebra(g)),
        "source": source,
        "gram": gram_section(g, True),
    }


def der_report(g: LieAlgebra, source: Optional[str] = None) -> Dict[str, Any]:
    der = derivation_algebra(g)
    grading = None if g.is_abelian else derive_grading(g)
    return {
        "command": "der",
        "algebra_id": generate_algebra_id(serialize_algebra(g)),
        "source": source,
        "grading": list(grading.weights) if grading else None,
        "derivations": derivation_section(g, der, include_basis=True),
    }


def ricci_report(g: LieAlgebra, metric: DiagonalMetric, source: Optional[str] = None) -> Dict[str, Any]:
    form = ricci_form(g, metric)
    endomorphism = ricci_endomorphism(g, metric)
    result = soliton_metric_check(g, metric)
    return {
        "command": "ricci",
        "algebra_id": generate_algebra_id(serialize_algebra(g)),
        "source": source,
        "metric": list(metric.q),
        "ricci_form": form,
        "ricci_endomorphism": endomorphism,
        "scalar_curvature": endomorphism.trace(),
        "soliton_metric": {
            "is_soliton": result is not None,
            "beta": result.beta if result else None,
            "derivation": result.derivation if result else None,
        },
    }
