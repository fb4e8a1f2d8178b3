"""Platform-independent service model: types, document I/O, validation.

The model document is UTF-8 JSON with this shape (keys marked ? are
optional, everything else is required; unknown keys are rejected in
strict mode):

    {
      "namespace": "http://example.com",
      "dataTypes": [
        {"name": ..., "kind": "simple", "baseType": xsd-builtin,
         "concept"?: [uri, ...], "lowering"?: uri, "lifting"?: uri},
        {"name": ..., "kind": "complex",
         "fields": [{"name": ..., "type": xsd-builtin}, ...],
         "concept"?: ..., "lowering"?: ..., "lifting"?: ...}
      ],
      "services": [
        {"name": ..., "kind": "atomic" | "composite",
         "components"?: [service-name, ...], "behavior"?: document-id,
         "interface": {
           "name": ..., "concept"?: [uri, ...],
           "operations": [
             {"name": ..., "concept"?: [uri, ...],
              "inputs"?:  [{"name": ..., "type": type-name}, ...],
              "outputs"?: [{"name": ..., "type": type-name}, ...],
              "infaults"?:  [{"name": ..., "type"?: type-name}, ...],
              "outfaults"?: [{"name": ..., "type"?: type-name}, ...]}]}}
      ]
    }

Identifiers follow XML NCName rules because every name eventually lands
in an XML attribute. Complex-type fields are typed by XML Schema
built-ins directly; parameters and faults are typed by declared data
types. Binding and endpoint information has no place in this model.

All types are immutable; every function here is pure.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from urllib.parse import urlsplit

from .errors import (
    CompositionCycle,
    DocumentSyntaxError,
    DuplicateName,
    InvalidModel,
    UnknownService,
    UnresolvedReference,
)

ATOMIC = "atomic"
COMPOSITE = "composite"
SIMPLE = "simple"
COMPLEX = "complex"
IN = "in"
OUT = "out"

# XML Schema built-in datatypes usable as leaf field / base types.
XSD_BUILTINS = frozenset({
    "string", "boolean", "decimal", "float", "double", "duration",
    "dateTime", "time", "date", "gYearMonth", "gYear", "gMonthDay",
    "gDay", "gMonth", "hexBinary", "base64Binary", "anyURI",
    "normalizedString", "token", "language", "integer",
    "nonPositiveInteger", "negativeInteger", "long", "int", "short",
    "byte", "nonNegativeInteger", "unsignedLong", "unsignedInt",
    "unsignedShort", "unsignedByte", "positiveInteger",
})

# NCName, restricted to the portable subset (letter or underscore, then
# letters, digits, dot, hyphen, underscore; no colon).
_NCNAME = re.compile(r"^[^\W\d][\w.\-]*$", re.UNICODE)


def is_ncname(text: str) -> bool:
    return isinstance(text, str) and ":" not in text and bool(_NCNAME.match(text))


def is_absolute_uri(text: str) -> bool:
    if not isinstance(text, str) or not text:
        return False
    try:
        parts = urlsplit(text)
    except ValueError:
        return False
    return bool(parts.scheme)


@dataclass(frozen=True)
class SemanticAnnotation:
    """URIs of the semantic concepts attached to a model element."""

    concept_uris: tuple[str, ...]


@dataclass(frozen=True)
class Mapping:
    """Schema-mapping URIs between a data type and its semantic concept."""

    lowering_schema: str | None = None
    lifting_schema: str | None = None


@dataclass(frozen=True)
class Parameter:
    name: str
    type_ref: str
    direction: str


@dataclass(frozen=True)
class Fault:
    name: str
    type_ref: str | None
    direction: str


@dataclass(frozen=True)
class Operation:
    name: str
    inputs: tuple[Parameter, ...] = ()
    outputs: tuple[Parameter, ...] = ()
    infaults: tuple[Fault, ...] = ()
    outfaults: tuple[Fault, ...] = ()
    annotation: SemanticAnnotation | None = None


@dataclass(frozen=True)
class Interface:
    name: str
    operations: tuple[Operation, ...] = ()
    annotation: SemanticAnnotation | None = None


@dataclass(frozen=True)
class DataType:
    name: str
    kind: str
    base_type: str | None = None
    fields: tuple[tuple[str, str], ...] = ()
    annotation: SemanticAnnotation | None = None
    mapping: Mapping | None = None


@dataclass(frozen=True)
class Service:
    name: str
    kind: str
    interface: Interface
    components: tuple[str, ...] = ()
    behavior_ref: str | None = None


@dataclass(frozen=True)
class ServiceModel:
    namespace: str
    services: tuple[Service, ...] = ()
    data_types: tuple[DataType, ...] = ()

    def service(self, name: str) -> Service:
        for svc in self.services:
            if svc.name == name:
                return svc
        raise UnknownService(f"no service named {name!r}")

    def data_type(self, name: str) -> DataType:
        for dt in self.data_types:
            if dt.name == name:
                return dt
        raise UnresolvedReference(f"no data type named {name!r}")


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str


ValidationReport = tuple[Violation, ...]


# ---------------------------------------------------------------------------
# Document parsing

def _require_object(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise DocumentSyntaxError(f"{where}: expected an object, got {type(value).__name__}")
    return value


def _require_array(value, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentSyntaxError(f"{where}: expected an array, got {type(value).__name__}")
    return value


def _require_string(value, where: str) -> str:
    if not isinstance(value, str):
        raise DocumentSyntaxError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str, strict: bool) -> None:
    missing = required - obj.keys()
    if missing:
        raise DocumentSyntaxError(f"{where}: missing required key(s) {sorted(missing)}")
    if strict:
        unknown = obj.keys() - allowed
        if unknown:
            raise DocumentSyntaxError(f"{where}: unknown key(s) {sorted(unknown)}")


def _parse_concept(obj: dict, where: str) -> SemanticAnnotation | None:
    if "concept" not in obj:
        return None
    uris = _require_array(obj["concept"], f"{where}.concept")
    return SemanticAnnotation(tuple(_require_string(u, f"{where}.concept[{i}]") for i, u in enumerate(uris)))


def _parse_parameter(obj, where: str, direction: str, strict: bool) -> Parameter:
    obj = _require_object(obj, where)
    _check_keys(obj, {"name", "type"}, {"name", "type"}, where, strict)
    return Parameter(
        name=_require_string(obj["name"], f"{where}.name"),
        type_ref=_require_string(obj["type"], f"{where}.type"),
        direction=direction,
    )


def _parse_fault(obj, where: str, direction: str, strict: bool) -> Fault:
    obj = _require_object(obj, where)
    _check_keys(obj, {"name", "type"}, {"name"}, where, strict)
    type_ref = _require_string(obj["type"], f"{where}.type") if "type" in obj else None
    return Fault(name=_require_string(obj["name"], f"{where}.name"), type_ref=type_ref, direction=direction)


def _parse_operation(obj, where: str, strict: bool) -> Operation:
    obj = _require_object(obj, where)
    allowed = {"name", "concept", "inputs", "outputs", "infaults", "outfaults"}
    _check_keys(obj, allowed, {"name"}, where, strict)

    def members(key: str, parse, direction: str):
        items = _require_array(obj.get(key, []), f"{where}.{key}")
        return tuple(parse(item, f"{where}.{key}[{i}]", direction, strict) for i, item in enumerate(items))

    return Operation(
        name=_require_string(obj["name"], f"{where}.name"),
        inputs=members("inputs", _parse_parameter, IN),
        outputs=members("outputs", _parse_parameter, OUT),
        infaults=members("infaults", _parse_fault, IN),
        outfaults=members("outfaults", _parse_fault, OUT),
        annotation=_parse_concept(obj, where),
    )


def _parse_interface(obj, where: str, strict: bool) -> Interface:
    obj = _require_object(obj, where)
    _check_keys(obj, {"name", "concept", "operations"}, {"name", "operations"}, where, strict)
    operations = _require_array(obj["operations"], f"{where}.operations")
    return Interface(
        name=_require_string(obj["name"], f"{where}.name"),
        operations=tuple(
            _parse_operation(op, f"{where}.operations[{i}]", strict) for i, op in enumerate(operations)
        ),
        annotation=_parse_concept(obj, where),
    )


def _parse_service(obj, where: str, strict: bool) -> Service:
    obj = _require_object(obj, where)
    allowed = {"name", "kind", "components", "behavior", "interface"}
    _check_keys(obj, allowed, {"name", "kind", "interface"}, where, strict)
    kind = _require_string(obj["kind"], f"{where}.kind")
    if kind not in (ATOMIC, COMPOSITE):
        raise DocumentSyntaxError(f"{where}.kind: must be 'atomic' or 'composite', got {kind!r}")
    components = _require_array(obj.get("components", []), f"{where}.components")
    behavior = _require_string(obj["behavior"], f"{where}.behavior") if "behavior" in obj else None
    return Service(
        name=_require_string(obj["name"], f"{where}.name"),
        kind=kind,
        interface=_parse_interface(obj["interface"], f"{where}.interface", strict),
        components=tuple(_require_string(c, f"{where}.components[{i}]") for i, c in enumerate(components)),
        behavior_ref=behavior,
    )


def _parse_data_type(obj, where: str, strict: bool) -> DataType:
    obj = _require_object(obj, where)
    allowed = {"name", "kind", "baseType", "fields", "concept", "lowering", "lifting"}
    _check_keys(obj, allowed, {"name", "kind"}, where, strict)
    kind = _require_string(obj["kind"], f"{where}.kind")
    if kind not in (SIMPLE, COMPLEX):
        raise DocumentSyntaxError(f"{where}.kind: must be 'simple' or 'complex', got {kind!r}")
    base_type = _require_string(obj["baseType"], f"{where}.baseType") if "baseType" in obj else None
    fields_raw = _require_array(obj.get("fields", []), f"{where}.fields")
    fields = []
    for i, f in enumerate(fields_raw):
        f = _require_object(f, f"{where}.fields[{i}]")
        _check_keys(f, {"name", "type"}, {"name", "type"}, f"{where}.fields[{i}]", strict)
        fields.append((
            _require_string(f["name"], f"{where}.fields[{i}].name"),
            _require_string(f["type"], f"{where}.fields[{i}].type"),
        ))
    lowering = _require_string(obj["lowering"], f"{where}.lowering") if "lowering" in obj else None
    lifting = _require_string(obj["lifting"], f"{where}.lifting") if "lifting" in obj else None
    mapping = Mapping(lowering, lifting) if (lowering or lifting) else None
    return DataType(
        name=_require_string(obj["name"], f"{where}.name"),
        kind=kind,
        base_type=base_type,
        fields=tuple(fields),
        annotation=_parse_concept(obj, where),
        mapping=mapping,
    )


def _check_bindings(model: ServiceModel) -> None:
    """Reject duplicate sibling names and dangling references."""
    type_names: set[str] = set()
    for dt in model.data_types:
        if dt.name in type_names:
            raise DuplicateName(f"data type {dt.name!r} declared twice")
        type_names.add(dt.name)

    service_names: set[str] = set()
    for svc in model.services:
        if svc.name in service_names:
            raise DuplicateName(f"service {svc.name!r} declared twice")
        service_names.add(svc.name)

    for svc in model.services:
        for comp in svc.components:
            if comp not in service_names:
                raise UnresolvedReference(f"service {svc.name!r} references unknown component {comp!r}")
        for op in svc.interface.operations:
            for param in op.inputs + op.outputs:
                if param.type_ref not in type_names:
                    raise UnresolvedReference(
                        f"parameter {param.name!r} of {svc.name}.{op.name} references unknown type {param.type_ref!r}"
                    )
            for flt in op.infaults + op.outfaults:
                if flt.type_ref is not None and flt.type_ref not in type_names:
                    raise UnresolvedReference(
                        f"fault {flt.name!r} of {svc.name}.{op.name} references unknown type {flt.type_ref!r}"
                    )


def parse_model(document: bytes | str, strict: bool = True) -> ServiceModel:
    """Parse a model document into a fully bound ServiceModel.

    Raises DocumentSyntaxError for grammar problems (with position
    information where the JSON parser provides it), DuplicateName for
    sibling name clashes, and UnresolvedReference for dangling names.
    Semantic constraints beyond binding (multiplicities, cycles, URI
    syntax) are validate()'s job, not the parser's.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"not valid JSON: {exc.msg}", exc.lineno, exc.colno) from exc

    data = _require_object(data, "document")
    _check_keys(data, {"namespace", "dataTypes", "services"}, {"namespace"}, "document", strict)
    namespace = _require_string(data["namespace"], "document.namespace")
    data_types = _require_array(data.get("dataTypes", []), "document.dataTypes")
    services = _require_array(data.get("services", []), "document.services")

    model = ServiceModel(
        namespace=namespace,
        services=tuple(_parse_service(s, f"services[{i}]", strict) for i, s in enumerate(services)),
        data_types=tuple(_parse_data_type(t, f"dataTypes[{i}]", strict) for i, t in enumerate(data_types)),
    )
    _check_bindings(model)
    return model


# ---------------------------------------------------------------------------
# Document serialization

def _annotation_entries(obj_dict: dict, annotation: SemanticAnnotation | None) -> None:
    if annotation is not None:
        obj_dict["concept"] = list(annotation.concept_uris)


def _dump_parameter(param: Parameter) -> dict:
    return {"name": param.name, "type": param.type_ref}


def _dump_fault(flt: Fault) -> dict:
    out: dict = {"name": flt.name}
    if flt.type_ref is not None:
        out["type"] = flt.type_ref
    return out


def _dump_operation(op: Operation) -> dict:
    out: dict = {"name": op.name}
    _annotation_entries(out, op.annotation)
    out["inputs"] = [_dump_parameter(p) for p in op.inputs]
    out["outputs"] = [_dump_parameter(p) for p in op.outputs]
    out["infaults"] = [_dump_fault(f) for f in op.infaults]
    out["outfaults"] = [_dump_fault(f) for f in op.outfaults]
    return out


def _dump_service(svc: Service) -> dict:
    out: dict = {"name": svc.name, "kind": svc.kind}
    if svc.components:
        out["components"] = list(svc.components)
    if svc.behavior_ref is not None:
        out["behavior"] = svc.behavior_ref
    iface: dict = {"name": svc.interface.name}
    _annotation_entries(iface, svc.interface.annotation)
    iface["operations"] = [_dump_operation(op) for op in svc.interface.operations]
    out["interface"] = iface
    return out


def _dump_data_type(dt: DataType) -> dict:
    out: dict = {"name": dt.name, "kind": dt.kind}
    if dt.base_type is not None:
        out["baseType"] = dt.base_type
    if dt.fields:
        out["fields"] = [{"name": n, "type": t} for n, t in dt.fields]
    _annotation_entries(out, dt.annotation)
    if dt.mapping is not None:
        if dt.mapping.lowering_schema is not None:
            out["lowering"] = dt.mapping.lowering_schema
        if dt.mapping.lifting_schema is not None:
            out["lifting"] = dt.mapping.lifting_schema
    return out


def serialize_model(model: ServiceModel) -> bytes:
    """Serialize a validation-clean model to its canonical document form.

    parse_model(serialize_model(m)) is structurally equal to m. Raises
    InvalidModel when validate() reports violations.
    """
    report = validate(model)
    if report:
        raise InvalidModel("model does not validate", report)
    document = {
        "namespace": model.namespace,
        "dataTypes": [_dump_data_type(dt) for dt in model.data_types],
        "services": [_dump_service(svc) for svc in model.services],
    }
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Validation

def _check_name(out: list[Violation], name: str, path: str) -> None:
    if not is_ncname(name):
        out.append(Violation("INVALID_IDENTIFIER", path, f"{name!r} is not a valid NCName"))


def _check_annotation(out: list[Violation], annotation: SemanticAnnotation | None, path: str) -> None:
    if annotation is None:
        return
    if not annotation.concept_uris:
        out.append(Violation("EMPTY_ANNOTATION", path, "annotation has no concept URIs"))
    for uri in annotation.concept_uris:
        if not is_absolute_uri(uri):
            out.append(Violation("INVALID_CONCEPT_URI", path, f"{uri!r} is not an absolute URI"))


def _validate_data_type(out: list[Violation], dt: DataType, path: str) -> None:
    _check_name(out, dt.name, path)
    if dt.kind == SIMPLE:
        if dt.base_type is None or dt.fields:
            out.append(Violation("SIMPLE_TYPE_SHAPE", path, "simple type needs baseType and no fields"))
        elif dt.base_type not in XSD_BUILTINS:
            out.append(Violation("BASE_TYPE_UNKNOWN", path, f"{dt.base_type!r} is not an XSD built-in"))
    else:
        if not dt.fields or dt.base_type is not None:
            out.append(Violation("COMPLEX_TYPE_SHAPE", path, "complex type needs fields and no baseType"))
        seen: set[str] = set()
        for fname, ftype in dt.fields:
            fpath = f"{path}/fields/{fname}"
            _check_name(out, fname, fpath)
            if fname in seen:
                out.append(Violation("DUPLICATE_FIELD_NAME", fpath, f"field {fname!r} declared twice"))
            seen.add(fname)
            if ftype not in XSD_BUILTINS:
                out.append(Violation("FIELD_TYPE_UNKNOWN", fpath, f"{ftype!r} is not an XSD built-in"))
    _check_annotation(out, dt.annotation, f"{path}/annotation")
    if dt.mapping is not None:
        mpath = f"{path}/mapping"
        if dt.mapping.lowering_schema is None and dt.mapping.lifting_schema is None:
            out.append(Violation("EMPTY_MAPPING", mpath, "mapping carries neither lowering nor lifting schema"))
        for label, uri in (("lowering", dt.mapping.lowering_schema), ("lifting", dt.mapping.lifting_schema)):
            if uri is not None and not is_absolute_uri(uri):
                out.append(Violation("INVALID_MAPPING_URI", f"{mpath}/{label}", f"{uri!r} is not an absolute URI"))


def _validate_operation(out: list[Violation], model: ServiceModel, op: Operation, path: str) -> None:
    _check_name(out, op.name, path)
    type_names = {dt.name for dt in model.data_types}

    seen_params: set[str] = set()
    for param in op.inputs + op.outputs:
        ppath = f"{path}/{'inputs' if param.direction == IN else 'outputs'}/{param.name}"
        _check_name(out, param.name, ppath)
        if param.name in seen_params:
            out.append(Violation("DUPLICATE_PARAMETER_NAME", ppath, f"parameter {param.name!r} declared twice"))
        seen_params.add(param.name)
        if param.type_ref not in type_names:
            out.append(Violation("UNRESOLVED_TYPE_REF", ppath, f"type {param.type_ref!r} is not declared"))

    # The description subset carries one element reference per direction:
    # multi-parameter signatures must bundle into a complex type.
    if not op.inputs:
        out.append(Violation("OPERATION_WITHOUT_INPUT", path, "operation must take at least one input"))
    if len(op.inputs) > 1:
        out.append(Violation("OPERATION_INPUT_LIMIT", path, "at most one input parameter is supported"))
    if len(op.outputs) > 1:
        out.append(Violation("OPERATION_OUTPUT_LIMIT", path, "at most one output parameter is supported"))

    for direction, faults in ((IN, op.infaults), (OUT, op.outfaults)):
        seen_faults: set[str] = set()
        for flt in faults:
            fpath = f"{path}/{'infaults' if direction == IN else 'outfaults'}/{flt.name}"
            _check_name(out, flt.name, fpath)
            if flt.name in seen_faults:
                out.append(Violation("DUPLICATE_FAULT_NAME", fpath, f"fault {flt.name!r} declared twice"))
            seen_faults.add(flt.name)
            if flt.type_ref is not None and flt.type_ref not in type_names:
                out.append(Violation("UNRESOLVED_TYPE_REF", fpath, f"type {flt.type_ref!r} is not declared"))

    _check_annotation(out, op.annotation, f"{path}/annotation")


def _validate_service(out: list[Violation], model: ServiceModel, svc: Service, path: str) -> None:
    _check_name(out, svc.name, path)
    service_names = {s.name for s in model.services}

    if svc.kind == ATOMIC:
        if svc.components:
            out.append(Violation("ATOMIC_WITH_COMPONENTS", path, "atomic service must not list components"))
        if svc.behavior_ref is not None:
            out.append(Violation("ATOMIC_WITH_BEHAVIOR", path, "atomic service must not carry a behavior"))
    else:
        if len(svc.components) < 2:
            out.append(Violation("COMPOSITE_MIN_COMPONENTS", path, "composite service aggregates two or more services"))
        if svc.behavior_ref is None:
            out.append(Violation("COMPOSITE_WITHOUT_BEHAVIOR", path, "composite service must carry a behavior"))

    for comp in svc.components:
        if comp not in service_names:
            out.append(Violation("UNRESOLVED_COMPONENT", f"{path}/components/{comp}", f"component {comp!r} is not declared"))

    ipath = f"{path}/interface"
    _check_name(out, svc.interface.name, ipath)
    if not svc.interface.operations:
        out.append(Violation("EMPTY_INTERFACE", ipath, "interface declares no operations"))
    seen_ops: set[str] = set()
    fault_types: dict[str, str | None] = {}
    for op in svc.interface.operations:
        oppath = f"{ipath}/operations/{op.name}"
        if op.name in seen_ops:
            out.append(Violation("DUPLICATE_OPERATION_NAME", oppath, f"operation {op.name!r} declared twice"))
        seen_ops.add(op.name)
        _validate_operation(out, model, op, oppath)
        for flt in op.infaults + op.outfaults:
            if flt.name in fault_types and fault_types[flt.name] != flt.type_ref:
                out.append(Violation(
                    "FAULT_TYPE_CONFLICT", f"{oppath}/faults/{flt.name}",
                    f"fault {flt.name!r} is declared with different types across operations",
                ))
            fault_types.setdefault(flt.name, flt.type_ref)
    _check_annotation(out, svc.interface.annotation, f"{ipath}/annotation")


def _composition_cycles(model: ServiceModel) -> set[str]:
    """Names of services taking part in a component cycle."""
    by_name = {s.name: s for s in model.services}
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {name: WHITE for name in by_name}
    cyclic: set[str] = set()

    def visit(name: str, stack: list[str]) -> None:
        color[name] = GRAY
        stack.append(name)
        for comp in by_name[name].components:
            if comp not in by_name:
                continue
            if color[comp] == GRAY:
                cyclic.update(stack[stack.index(comp):])
            elif color[comp] == WHITE:
                visit(comp, stack)
        stack.pop()
        color[name] = BLACK

    for name in by_name:
        if color[name] == WHITE:
            visit(name, [])
    return cyclic


def validate(model: ServiceModel) -> ValidationReport:
    """Check every model invariant; violations are data, never raises.

    The report is deterministic: sorted by entity path, then rule code.
    """
    out: list[Violation] = []
    if not is_absolute_uri(model.namespace):
        out.append(Violation("INVALID_NAMESPACE", "namespace", f"{model.namespace!r} is not an absolute URI"))

    seen_types: set[str] = set()
    for dt in model.data_types:
        path = f"dataTypes/{dt.name}"
        if dt.name in seen_types:
            out.append(Violation("DUPLICATE_TYPE_NAME", path, f"data type {dt.name!r} declared twice"))
        seen_types.add(dt.name)
        _validate_data_type(out, dt, path)

    seen_services: set[str] = set()
    for svc in model.services:
        path = f"services/{svc.name}"
        if svc.name in seen_services:
            out.append(Violation("DUPLICATE_SERVICE_NAME", path, f"service {svc.name!r} declared twice"))
        seen_services.add(svc.name)
        _validate_service(out, model, svc, path)

    for name in sorted(_composition_cycles(model)):
        out.append(Violation("COMPOSITION_CYCLE", f"services/{name}", "component references form a cycle"))

    return tuple(sorted(out, key=lambda v: (v.path, v.code)))


# ---------------------------------------------------------------------------
# Composition closure

def composition_closure(model: ServiceModel, service_name: str) -> tuple[str, ...]:
    """Atomic services transitively aggregated by a service.

    Depth-first in component declaration order; every atomic service
    appears exactly once (first occurrence wins). An atomic service is
    its own closure.
    """
    root = model.service(service_name)  # raises UnknownService

    seen: list[str] = []
    on_stack: set[str] = set()

    def visit(svc: Service) -> None:
        if svc.name in on_stack:
            raise CompositionCycle(f"composition cycle through service {svc.name!r}")
        if svc.kind == ATOMIC:
            if svc.name not in seen:
                seen.append(svc.name)
            return
        on_stack.add(svc.name)
        for comp in svc.components:
            visit(model.service(comp))
        on_stack.remove(svc.name)

    visit(root)
    return tuple(seen)
