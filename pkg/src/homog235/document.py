"""
ModelDocument: the JSON file format for algebraic models.

Scalars are JSON strings in the exact scalar syntax ("3/2", "1-1*i",
"1/2+2/3*s"), since JSON numbers cannot carry exact rationals.  Indices may
be integers or basis names; vectors may be dense lists or sparse
``{name: scalar}`` maps.  Canonical emission uses integer indices, dense
vectors and lexicographically sorted bracket triples.

Usage:
    from homog235.document import ModelDocument

    doc = ModelDocument.from_file("n6.json")
    model = doc.to_model()
    ModelDocument.from_model(model).write("copy.json")
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from homog235.errors import FieldError, Homog235Error, ParseError
from homog235.exact_arith import QQ, Field, Matrix, Scalar, Vector
from homog235.lie_core import LieAlgebra, Subspace
from homog235.models import AlgebraicModel, Reality

ScalarReader = Callable[[str], Scalar]

Bracket = tuple[int, int, list[tuple[int, Scalar]]]


@dataclass(slots=True)
class ModelDocument:
    """In-memory form of a model file; ``to_model`` builds the AlgebraicModel."""

    field: Field
    basis: list[str]
    brackets: list[Bracket]
    k: list[Vector]
    d: list[Vector]
    reality: Reality = Reality.COMPLEX
    adapted_basis: list[Vector] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    # ── Reading ──────────────────────────────────────────────────────────

    @classmethod
    def from_file(cls, path: str | Path) -> ModelDocument:
        path = Path(path)
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())

    @classmethod
    def from_json(cls, text: str) -> ModelDocument:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None
        return cls.from_dict(obj)

    @classmethod
    def from_dict(cls, obj: dict, read_scalar: ScalarReader | None = None) -> ModelDocument:
        """Parse a decoded JSON object.

        ``read_scalar`` replaces the scalar syntax; the catalog uses it to
        evaluate parameter templates.
        """
        if not isinstance(obj, dict):
            raise ParseError("a model document must be a JSON object")
        declared = _read_field(obj.get("field"))
        basis = obj.get("basis")
        dim = obj.get("dim")
        if basis is None:
            if not isinstance(dim, int) or dim < 1:
                raise ParseError("document needs 'basis' or a positive 'dim'")
            basis = [f"e{n + 1}" for n in range(dim)]
        if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
            raise ParseError("'basis' must be a list of names")
        if len(set(basis)) != len(basis):
            raise ParseError("basis names must be distinct")
        if dim is not None and dim != len(basis):
            raise ParseError(f"'dim' is {dim} but {len(basis)} basis names are given")

        def scalar(value) -> Scalar:
            if isinstance(value, bool) or not isinstance(value, (str, int)):
                raise ParseError(f"scalar must be a string, got {value!r}")
            try:
                if read_scalar is not None:
                    return read_scalar(str(value))
                return Scalar.parse(str(value), declared)
            except ParseError:
                raise
            except Homog235Error as exc:
                raise ParseError(f"bad scalar {value!r}: {exc}") from None

        index = {name: n for n, name in enumerate(basis)}

        def resolve(ref) -> int:
            if isinstance(ref, bool):
                raise ParseError(f"bad basis reference {ref!r}")
            if isinstance(ref, int):
                if not 0 <= ref < len(basis):
                    raise ParseError(f"index {ref} out of range 0..{len(basis) - 1}")
                return ref
            if isinstance(ref, str) and ref in index:
                return index[ref]
            raise ParseError(f"unknown basis reference {ref!r}")

        def vector(raw) -> Vector:
            zero = Scalar.zero()
            if isinstance(raw, dict):
                out = [zero] * len(basis)
                for ref, c in raw.items():
                    out[resolve(ref)] = out[resolve(ref)] + scalar(c)
                return tuple(out)
            if isinstance(raw, list):
                if len(raw) != len(basis):
                    raise ParseError(f"vector of length {len(raw)} in dimension {len(basis)}")
                return tuple(scalar(c) for c in raw)
            raise ParseError(f"vector must be a list or an object, got {raw!r}")

        def vectors(key: str, required: bool = True) -> list[Vector] | None:
            raw = obj.get(key)
            if raw is None:
                if required:
                    raise ParseError(f"document is missing {key!r}")
                return None
            if not isinstance(raw, list):
                raise ParseError(f"{key!r} must be a list of vectors")
            return [vector(v) for v in raw]

        brackets: list[Bracket] = []
        for item in obj.get("brackets", []):
            if not isinstance(item, list) or len(item) != 3:
                raise ParseError(f"bracket entry must be [i, j, terms], got {item!r}")
            i, j, terms = resolve(item[0]), resolve(item[1]), item[2]
            if i == j:
                raise ParseError(f"bracket of {basis[i]!r} with itself must not be given")
            if isinstance(terms, dict):
                pairs = [(resolve(ref), scalar(c)) for ref, c in terms.items()]
            elif isinstance(terms, list):
                pairs = []
                for term in terms:
                    if not isinstance(term, list) or len(term) != 2:
                        raise ParseError(f"bracket term must be [k, scalar], got {term!r}")
                    pairs.append((resolve(term[0]), scalar(term[1])))
            else:
                raise ParseError(f"bracket terms must be a list or an object, got {terms!r}")
            brackets.append((i, j, pairs))

        reality_text = obj.get("reality", "complex")
        try:
            reality = Reality(reality_text)
        except ValueError:
            raise ParseError(f"reality must be 'real' or 'complex', got {reality_text!r}") from None

        doc = cls(
            field=declared,
            basis=list(basis),
            brackets=brackets,
            k=vectors("k"),
            d=vectors("d"),
            reality=reality,
            adapted_basis=vectors("adapted_basis", required=False),
            meta=dict(obj.get("meta", {})),
        )
        doc._check()
        return doc

    def _check(self) -> None:
        n = self.dim
        k = Subspace(self.k, n)
        if k.dim != len(self.k):
            raise ParseError("the 'k' vectors are linearly dependent")
        d = Subspace(self.d, n)
        if d.dim != len(self.d):
            raise ParseError("the 'd' vectors are linearly dependent")
        if not d.contains(k):
            raise ParseError("'k' is not contained in 'd'")
        if self.adapted_basis is not None:
            if len(self.adapted_basis) != n or Subspace(self.adapted_basis, n).dim != n:
                raise ParseError("'adapted_basis' must be a basis")

    # ── Conversion ───────────────────────────────────────────────────────

    def to_model(self) -> AlgebraicModel:
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for i, j, terms in self.brackets:
            slot = table.setdefault((i, j), {})
            for k, c in terms:
                slot[k] = slot.get(k, Scalar.zero()) + c
        try:
            algebra = LieAlgebra(self.dim, table, self.field, self.basis)
            f = algebra.field
            k = Subspace(self.k, self.dim, f)
            d = Subspace(self.d, self.dim, f)
            f = f.join(k.field).join(d.field)
            if self.reality is Reality.REAL and not f.is_real:
                raise ParseError(f"a real model document uses the non-real field {f}")
            adapted = None
            if self.adapted_basis is not None:
                adapted = Matrix.from_columns(self.adapted_basis, f)
            return AlgebraicModel(algebra.over(f), k.over(f), d.over(f), self.reality, adapted)
        except FieldError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def from_model(cls, model: AlgebraicModel, meta: dict | None = None) -> ModelDocument:
        L = model.algebra
        brackets: list[Bracket] = []
        for (i, j), image in L.brackets.items():
            brackets.append((i, j, sorted(image.items())))
        adapted = model.adapted_basis.columns() if model.adapted_basis is not None else None
        return cls(
            field=model.field,
            basis=list(L.labels),
            brackets=sorted(brackets, key=lambda b: (b[0], b[1])),
            k=list(model.k.basis),
            d=list(model.d.basis),
            reality=model.reality,
            adapted_basis=adapted,
            meta=dict(meta or {}),
        )

    # ── Writing ──────────────────────────────────────────────────────────

    def to_dict(self) -> dict:
        out = {
            "field": {"sqrt": self.field.sqrt, "imaginary": self.field.imaginary},
            "dim": self.dim,
            "basis": list(self.basis),
            "reality": self.reality.value,
            "brackets": [
                [i, j, [[k, str(c)] for k, c in sorted(terms)]]
                for i, j, terms in sorted(self.brackets, key=lambda b: (b[0], b[1]))
            ],
            "k": [[str(c) for c in v] for v in self.k],
            "d": [[str(c) for c in v] for v in self.d],
        }
        if self.adapted_basis is not None:
            out["adapted_basis"] = [[str(c) for c in v] for v in self.adapted_basis]
        if self.meta:
            out["meta"] = self.meta
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    def write(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())


def _read_field(raw) -> Field:
    if raw is None:
        return QQ
    if not isinstance(raw, dict):
        raise ParseError(f"'field' must be an object, got {raw!r}")
    sqrt = raw.get("sqrt")
    imaginary = raw.get("imaginary", False)
    if sqrt is not None and (isinstance(sqrt, bool) or not isinstance(sqrt, int)):
        raise ParseError(f"field 'sqrt' must be an integer or null, got {sqrt!r}")
    if not isinstance(imaginary, bool):
        raise ParseError(f"field 'imaginary' must be true or false, got {imaginary!r}")
    try:
        return Field(sqrt, imaginary)
    except FieldError as exc:
        raise ParseError(str(exc)) from None
