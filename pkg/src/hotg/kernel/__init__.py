"""The trusted checker: axioms, proof terms, signatures and the canonical format."""

from .axioms import AXIOM_ARITY, AxiomName, axiom_schema, builtin_axiom, is_axiom
from .canonical import (
    digest, export_canonical, export_entries, import_canonical, theorem_digest,
)
from .checker import Step, check_proof
from .proof import AllElim, AllIntro, Hyp, ImpElim, ImpIntro, Known, Proof, proof_size
from .signature import (
    Definition, Opacity, Provenance, Signature, Theorem, add_definition, add_theorem,
    add_trusted_import,
)

__all__ = [
    "AXIOM_ARITY", "AxiomName", "axiom_schema", "builtin_axiom", "is_axiom",
    "digest", "export_canonical", "export_entries", "import_canonical", "theorem_digest",
    "Step", "check_proof",
    "AllElim", "AllIntro", "Hyp", "ImpElim", "ImpIntro", "Known", "Proof", "proof_size",
    "Definition", "Opacity", "Provenance", "Signature", "Theorem",
    "add_definition", "add_theorem", "add_trusted_import",
]
