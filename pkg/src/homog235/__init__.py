"""homog235: exact classification of multiply transitive homogeneous (2,3,5) distributions."""

from homog235.exact_arith import QQ, Field, Scalar, Matrix
from homog235.lie_core import LieAlgebra, Subspace, killing_form, radical
from homog235.models import AlgebraicModel, AntiInvolution, Reality, validate_model, fixed_points
from homog235.catalog import Catalog, CatalogLabel, Family, default_catalog
from homog235.classify import ClassificationResult, classify
from homog235.document import ModelDocument
from homog235.monge import MongeCorpus, SamplePlan, VectorField, load_corpus
from homog235.harness import verify_tables
from homog235.config import Settings

__all__ = [
    "QQ", "Field", "Scalar", "Matrix",
    "LieAlgebra", "Subspace", "killing_form", "radical",
    "AlgebraicModel", "AntiInvolution", "Reality", "validate_model", "fixed_points",
    "Catalog", "CatalogLabel", "Family", "default_catalog",
    "ClassificationResult", "classify",
    "ModelDocument",
    "MongeCorpus", "SamplePlan", "VectorField", "load_corpus",
    "verify_tables",
    "Settings",
]
