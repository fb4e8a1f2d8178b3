"""Rule engine mapping the service model to description trees and back.

The forward direction runs as a fixed ordered pass (types, interface,
operations, annotations) rather than a general pattern matcher: the
mapping is a deterministic structural functor, so a pipeline is enough
and stays testable. Every produced node is recorded in a trace link
connecting a source entity path to a target entity path.

Naming conventions the reverse direction relies on (and the forward
direction produces):

  * the description's interface takes the service's name, so the
    reverse sets both service and interface name from it;
  * an operation's input/output element reference is the parameter's
    type name, so reverse parameter names derive from the type name
    with a lowered first letter (output collides with input -> "Out"
    suffix);
  * the description's target namespace is the model namespace plus
    "/<service-name>", stripped again on reverse when it matches.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pim, sawsdl
from .errors import AmbiguousReverse, InvalidModel, UnknownService


@dataclass(frozen=True)
class TransformRule:
    rule_id: str
    source_kind: str
    target_kind: str
    description: str


@dataclass(frozen=True)
class TraceLink:
    rule_id: str
    source_path: str
    target_path: str


_RULES = (
    TransformRule("SemanticInterface", "AtomicSemanticWebService", "WSDLInterface",
                  "a stereotyped service class becomes an interface of the same name"),
    TransformRule("SemanticOperation", "AtomicSemanticWebService's Method", "WSDLOperation",
                  "a service method becomes an operation of the same name"),
    TransformRule("InputParameter", "in param", "WSDLInput",
                  "an input parameter becomes the operation's input element reference"),
    TransformRule("OutputParameter", "out param", "WSDLOutput",
                  "an output parameter becomes the operation's output element reference"),
    TransformRule("InputFault", "in fault", "WSDLInfault",
                  "an input fault becomes an infault reference plus an interface fault"),
    TransformRule("OutputFault", "out fault", "WSDLOutfault",
                  "an output fault becomes an outfault reference plus an interface fault"),
    TransformRule("DataTypeElement", "Type", "XMLSchemaElement",
                  "a data type becomes a named schema element"),
    TransformRule("SemanticConcept", "SemanticConcept", "SAWSDLModelReference",
                  "a concept annotation becomes a modelReference attribute"),
    TransformRule("SchemaMapping", "Mapping", "SAWSDLSchemaMapping",
                  "a type mapping becomes the element's schema-mapping attributes"),
    TransformRule("LoweringSchema", "LoweringSchema", "SAWSDLLoweringSchema",
                  "a lowering schema URI becomes a loweringSchemaMapping attribute"),
    TransformRule("LiftingSchema", "LiftingSchema", "SAWSDLLiftingSchema",
                  "a lifting schema URI becomes a liftingSchemaMapping attribute"),
    TransformRule("MessageExchangePattern", "operation signature", "WSDLOperation.pattern",
                  "inputs only derive in-only; inputs and outputs derive in-out"),
)


def list_rules() -> tuple[TransformRule, ...]:
    """The full rule registry, in fixed application order."""
    return _RULES


def target_namespace_for(model: pim.ServiceModel, service_name: str) -> str:
    return f"{model.namespace}/{service_name}"


def _lower_first(name: str) -> str:
    return name[:1].lower() + name[1:]


# ---------------------------------------------------------------------------
# Forward: model -> description

def _derive_pattern(op: pim.Operation, path: str) -> str:
    if op.inputs and op.outputs:
        return sawsdl.MEP_IN_OUT
    if op.inputs:
        return sawsdl.MEP_IN_ONLY
    raise InvalidModel(f"{path}: operation has no input; only in-only and in-out shapes are supported")


def pim_to_psm(model: pim.ServiceModel, service_name: str) -> tuple[sawsdl.WSDLDescription, tuple[TraceLink, ...]]:
    """Transform one service of a clean model into a description tree.

    Every rule application is recorded as a TraceLink. The description
    carries all of the model's data types (the type pool is shared), and
    one interface mirroring the named service — composite services
    transform the same way; their composition structure lives in the
    generated process artifacts, not in the interface file.
    """
    report = pim.validate(model)
    if report:
        raise InvalidModel("model does not validate", report)
    service = model.service(service_name)  # raises UnknownService

    links: list[TraceLink] = []

    elements: list[sawsdl.XMLSchemaElement] = []
    for dt in model.data_types:
        src = f"dataTypes/{dt.name}"
        dst = f"schemaElements/{dt.name}"
        model_ref = None
        if dt.annotation is not None:
            model_ref = sawsdl.ModelReference(dt.annotation.concept_uris)
            links.append(TraceLink("SemanticConcept", f"{src}/annotation", f"{dst}/modelReference"))
        lowering: tuple[str, ...] = ()
        lifting: tuple[str, ...] = ()
        if dt.mapping is not None:
            links.append(TraceLink("SchemaMapping", f"{src}/mapping", dst))
            if dt.mapping.lowering_schema is not None:
                lowering = (dt.mapping.lowering_schema,)
                links.append(TraceLink("LoweringSchema", f"{src}/mapping/lowering", f"{dst}/loweringSchemaMapping"))
            if dt.mapping.lifting_schema is not None:
                lifting = (dt.mapping.lifting_schema,)
                links.append(TraceLink("LiftingSchema", f"{src}/mapping/lifting", f"{dst}/liftingSchemaMapping"))
        if dt.kind == pim.SIMPLE:
            elements.append(sawsdl.XMLSchemaElement(
                name=dt.name, kind=sawsdl.SIMPLE, base_type=dt.base_type,
                model_reference=model_ref,
                lowering_schema_mapping=lowering, lifting_schema_mapping=lifting,
            ))
        else:
            elements.append(sawsdl.XMLSchemaElement(
                name=dt.name, kind=sawsdl.COMPLEX, children=dt.fields,
                model_reference=model_ref,
                lowering_schema_mapping=lowering, lifting_schema_mapping=lifting,
            ))
        links.append(TraceLink("DataTypeElement", src, dst))

    svc_path = f"services/{service.name}"
    iface_path = f"interfaces/{service.name}"
    links.append(TraceLink("SemanticInterface", svc_path, iface_path))

    iface_ref = None
    if service.interface.annotation is not None:
        iface_ref = sawsdl.ModelReference(service.interface.annotation.concept_uris)
        links.append(TraceLink("SemanticConcept", f"{svc_path}/interface/annotation", f"{iface_path}/modelReference"))

    interface_faults: list[sawsdl.WSDLInterfaceFault] = []
    declared_faults: dict[str, str | None] = {}
    operations: list[sawsdl.WSDLOperation] = []
    for op in service.interface.operations:
        op_src = f"{svc_path}/interface/operations/{op.name}"
        op_dst = f"{iface_path}/operations/{op.name}"
        links.append(TraceLink("SemanticOperation", op_src, op_dst))

        pattern = _derive_pattern(op, op_src)
        links.append(TraceLink("MessageExchangePattern", op_src, f"{op_dst}/pattern"))

        op_input = op_output = None
        if op.inputs:
            op_input = op.inputs[0].type_ref
            links.append(TraceLink("InputParameter", f"{op_src}/inputs/{op.inputs[0].name}", f"{op_dst}/input"))
        if op.outputs:
            op_output = op.outputs[0].type_ref
            links.append(TraceLink("OutputParameter", f"{op_src}/outputs/{op.outputs[0].name}", f"{op_dst}/output"))

        op_ref = None
        if op.annotation is not None:
            op_ref = sawsdl.ModelReference(op.annotation.concept_uris)
            links.append(TraceLink("SemanticConcept", f"{op_src}/annotation", f"{op_dst}/modelReference"))

        infaults: list[tuple[str, str]] = []
        outfaults: list[tuple[str, str]] = []
        for direction, faults, refs, rule in ((pim.IN, op.infaults, infaults, "InputFault"),
                                              (pim.OUT, op.outfaults, outfaults, "OutputFault")):
            for flt in faults:
                if flt.name not in declared_faults:
                    declared_faults[flt.name] = flt.type_ref
                    interface_faults.append(sawsdl.WSDLInterfaceFault(name=flt.name, element=flt.type_ref))
                refs.append((flt.name, flt.name))
                kind = "infaults" if direction == pim.IN else "outfaults"
                links.append(TraceLink(rule, f"{op_src}/{kind}/{flt.name}", f"{op_dst}/{kind}/{flt.name}"))

        operations.append(sawsdl.WSDLOperation(
            name=op.name, pattern=pattern, input=op_input, output=op_output,
            infaults=tuple(infaults), outfaults=tuple(outfaults), model_reference=op_ref,
        ))

    description = sawsdl.WSDLDescription(
        target_namespace=target_namespace_for(model, service_name),
        schema_elements=tuple(elements),
        interfaces=(sawsdl.WSDLInterface(
            name=service.name, faults=tuple(interface_faults),
            operations=tuple(operations), model_reference=iface_ref,
        ),),
    )
    return description, tuple(links)


# ---------------------------------------------------------------------------
# Reverse: description -> model

def _reverse_annotation(ref: sawsdl.ModelReference | None) -> pim.SemanticAnnotation | None:
    if ref is None:
        return None
    return pim.SemanticAnnotation(ref.uris)


def _reverse_data_type(el: sawsdl.XMLSchemaElement) -> pim.DataType:
    mapping = None
    if el.lowering_schema_mapping or el.lifting_schema_mapping:
        if len(el.lowering_schema_mapping) > 1 or len(el.lifting_schema_mapping) > 1:
            raise AmbiguousReverse(
                f"schema element {el.name!r} carries a multi-URI schema mapping; the model holds one URI per direction",
                node=f"schemaElements/{el.name}",
            )
        mapping = pim.Mapping(
            lowering_schema=el.lowering_schema_mapping[0] if el.lowering_schema_mapping else None,
            lifting_schema=el.lifting_schema_mapping[0] if el.lifting_schema_mapping else None,
        )
    if el.kind == sawsdl.SIMPLE:
        return pim.DataType(name=el.name, kind=pim.SIMPLE, base_type=el.base_type,
                            annotation=_reverse_annotation(el.model_reference), mapping=mapping)
    return pim.DataType(name=el.name, kind=pim.COMPLEX, fields=el.children,
                        annotation=_reverse_annotation(el.model_reference), mapping=mapping)


def _reverse_operation(iface: sawsdl.WSDLInterface, op: sawsdl.WSDLOperation) -> pim.Operation:
    fault_elements = {f.name: f.element for f in iface.faults}

    inputs: tuple[pim.Parameter, ...] = ()
    outputs: tuple[pim.Parameter, ...] = ()
    if op.input is None:
        raise AmbiguousReverse(
            f"operation {op.name!r} has no input element; no parameter can be derived",
            node=f"interfaces/{iface.name}/operations/{op.name}",
        )
    input_name = _lower_first(op.input)
    inputs = (pim.Parameter(name=input_name, type_ref=op.input, direction=pim.IN),)
    if op.output is not None:
        output_name = _lower_first(op.output)
        if output_name == input_name:
            output_name += "Out"
        outputs = (pim.Parameter(name=output_name, type_ref=op.output, direction=pim.OUT),)

    def faults(pairs: tuple[tuple[str, str], ...], direction: str) -> tuple[pim.Fault, ...]:
        out = []
        for fault_name, _label in pairs:
            if fault_name not in fault_elements:
                raise AmbiguousReverse(
                    f"operation {op.name!r} references undeclared fault {fault_name!r}",
                    node=f"interfaces/{iface.name}/operations/{op.name}",
                )
            out.append(pim.Fault(name=fault_name, type_ref=fault_elements[fault_name], direction=direction))
        return tuple(out)

    return pim.Operation(
        name=op.name,
        inputs=inputs, outputs=outputs,
        infaults=faults(op.infaults, pim.IN),
        outfaults=faults(op.outfaults, pim.OUT),
        annotation=_reverse_annotation(op.model_reference),
    )


def psm_to_pim(desc: sawsdl.WSDLDescription) -> pim.ServiceModel:
    """Reconstruct a service model from a description tree.

    Inverse of pim_to_psm on its image. Each interface becomes an atomic
    service (composition structure is not expressed in interface files).
    Description constructs with no model home raise AmbiguousReverse.
    """
    sawsdl.check_description(desc)

    for iface in desc.interfaces:
        referenced = {name for op in iface.operations for name, _ in op.infaults + op.outfaults}
        for flt in iface.faults:
            if flt.name not in referenced:
                raise AmbiguousReverse(
                    f"interface fault {flt.name!r} is referenced by no operation; it has no model home",
                    node=f"interfaces/{iface.name}/faults/{flt.name}",
                )

    namespace = desc.target_namespace
    if len(desc.interfaces) == 1:
        suffix = "/" + desc.interfaces[0].name
        if namespace.endswith(suffix):
            namespace = namespace[: -len(suffix)]

    services = tuple(
        pim.Service(
            name=iface.name,
            kind=pim.ATOMIC,
            interface=pim.Interface(
                name=iface.name,
                operations=tuple(_reverse_operation(iface, op) for op in iface.operations),
                annotation=_reverse_annotation(iface.model_reference),
            ),
        )
        for iface in desc.interfaces
    )
    return pim.ServiceModel(
        namespace=namespace,
        services=services,
        data_types=tuple(_reverse_data_type(el) for el in desc.schema_elements),
    )


# ---------------------------------------------------------------------------
# Path resolution (used to audit trace links)

def resolve_pim_path(model: pim.ServiceModel, path: str) -> bool:
    """True iff a trace-link source path names an entity of the model."""
    from .errors import UnresolvedReference

    parts = path.split("/")
    try:
        if parts[0] == "dataTypes":
            dt = model.data_type(parts[1])
            rest = parts[2:]
            if not rest:
                return True
            if rest == ["annotation"]:
                return dt.annotation is not None
            if rest == ["mapping"]:
                return dt.mapping is not None
            if rest == ["mapping", "lowering"]:
                return dt.mapping is not None and dt.mapping.lowering_schema is not None
            if rest == ["mapping", "lifting"]:
                return dt.mapping is not None and dt.mapping.lifting_schema is not None
            return False
        if parts[0] == "services":
            svc = model.service(parts[1])
            rest = parts[2:]
            if not rest:
                return True
            if rest[0] != "interface":
                return False
            if rest[1:] == []:
                return True
            if rest[1:] == ["annotation"]:
                return svc.interface.annotation is not None
            if rest[1] != "operations":
                return False
            op = next((o for o in svc.interface.operations if o.name == rest[2]), None)
            if op is None:
                return False
            tail = rest[3:]
            if not tail:
                return True
            if tail == ["annotation"]:
                return op.annotation is not None
            group, member = tail[0], tail[1] if len(tail) > 1 else None
            if group == "inputs":
                return any(p.name == member for p in op.inputs)
            if group == "outputs":
                return any(p.name == member for p in op.outputs)
            if group == "infaults":
                return any(f.name == member for f in op.infaults)
            if group == "outfaults":
                return any(f.name == member for f in op.outfaults)
            return False
        return False
    except (UnknownService, UnresolvedReference, IndexError):
        return False


def resolve_psm_path(desc: sawsdl.WSDLDescription, path: str) -> bool:
    """True iff a trace-link target path names a node of the description."""
    try:
        return _resolve_psm_path(desc, path)
    except IndexError:
        return False


def _resolve_psm_path(desc: sawsdl.WSDLDescription, path: str) -> bool:
    parts = path.split("/")
    if parts[0] == "schemaElements":
        el = next((e for e in desc.schema_elements if e.name == parts[1]), None)
        if el is None:
            return False
        rest = parts[2:]
        if not rest:
            return True
        if rest == ["modelReference"]:
            return el.model_reference is not None
        if rest == ["loweringSchemaMapping"]:
            return bool(el.lowering_schema_mapping)
        if rest == ["liftingSchemaMapping"]:
            return bool(el.lifting_schema_mapping)
        return False
    if parts[0] == "interfaces":
        iface = next((i for i in desc.interfaces if i.name == parts[1]), None)
        if iface is None:
            return False
        rest = parts[2:]
        if not rest:
            return True
        if rest == ["modelReference"]:
            return iface.model_reference is not None
        if rest[0] != "operations":
            return False
        op = next((o for o in iface.operations if o.name == rest[1]), None)
        if op is None:
            return False
        tail = rest[2:]
        if not tail:
            return True
        if tail == ["pattern"]:
            return True
        if tail == ["input"]:
            return op.input is not None
        if tail == ["output"]:
            return op.output is not None
        if tail == ["modelReference"]:
            return op.model_reference is not None
        if tail[0] == "infaults":
            return any(name == tail[1] for name, _ in op.infaults)
        if tail[0] == "outfaults":
            return any(name == tail[1] for name, _ in op.outfaults)
        return False
    return False
