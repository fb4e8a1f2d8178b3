"""SAWSDL/WSDL 2.0 description tree, XML emission, parsing, canonical form.

Namespaces are fixed to the recommendation values. The emitter writes
the `wsdl:`, `sawsdl:` and `xs:` prefixes; the parser matches by
namespace URI and accepts any prefix. Semantic annotation attributes
(`modelReference`, `loweringSchemaMapping`, `liftingSchemaMapping`)
attach only to interfaces, operations, faults and schema elements, and
carry space-separated URI lists.

Two legacy spellings produced by some tools are accepted on parse and
normalized: the abbreviated message-exchange-pattern URI `.../wsdl/in`
(read as `in-only`) and an output-carrying-fault form
`<wsdl:output fault="F" messageLabel="L"/>` (read as an outfault).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace

from ._xml import XmlWriter
from .errors import InvariantViolation, MissingNamespace, UnsupportedFeature, XmlSyntaxError

WSDL_NS = "http://www.w3.org/ns/wsdl"
SAWSDL_NS = "http://www.w3.org/ns/sawsdl"
XSD_NS = "http://www.w3.org/2001/XMLSchema"

MEP_IN_ONLY = "http://www.w3.org/ns/wsdl/in-only"
MEP_IN_OUT = "http://www.w3.org/ns/wsdl/in-out"
MEP_URIS = frozenset({MEP_IN_ONLY, MEP_IN_OUT})

# Abbreviations normalized to full MEP URIs on parse and canonicalize.
_MEP_ALIASES = {"http://www.w3.org/ns/wsdl/in": MEP_IN_ONLY}

SIMPLE = "simple"
COMPLEX = "complex"


@dataclass(frozen=True)
class ModelReference:
    uris: tuple[str, ...]


@dataclass(frozen=True)
class XMLSchemaElement:
    """A named schema element: either a built-in type or a flat sequence."""

    name: str
    kind: str
    base_type: str | None = None
    children: tuple[tuple[str, str], ...] = ()
    model_reference: ModelReference | None = None
    lowering_schema_mapping: tuple[str, ...] = ()
    lifting_schema_mapping: tuple[str, ...] = ()


@dataclass(frozen=True)
class WSDLInterfaceFault:
    name: str
    element: str | None = None


@dataclass(frozen=True)
class WSDLOperation:
    name: str
    pattern: str
    input: str | None = None
    output: str | None = None
    infaults: tuple[tuple[str, str], ...] = ()
    outfaults: tuple[tuple[str, str], ...] = ()
    model_reference: ModelReference | None = None


@dataclass(frozen=True)
class WSDLInterface:
    name: str
    faults: tuple[WSDLInterfaceFault, ...] = ()
    operations: tuple[WSDLOperation, ...] = ()
    model_reference: ModelReference | None = None


@dataclass(frozen=True)
class WSDLDescription:
    target_namespace: str
    schema_elements: tuple[XMLSchemaElement, ...] = ()
    interfaces: tuple[WSDLInterface, ...] = ()


# ---------------------------------------------------------------------------
# Invariants

def check_description(desc: WSDLDescription) -> None:
    """Raise InvariantViolation if the tree breaks a structural invariant."""
    element_names: set[str] = set()
    for el in desc.schema_elements:
        if el.name in element_names:
            raise InvariantViolation(f"schema element {el.name!r} declared twice")
        element_names.add(el.name)
        if el.kind == SIMPLE:
            if el.base_type is None or el.children:
                raise InvariantViolation(f"schema element {el.name!r}: simple content needs a base type and no children")
        elif el.kind == COMPLEX:
            if not el.children or el.base_type is not None:
                raise InvariantViolation(f"schema element {el.name!r}: complex content needs children and no base type")
        else:
            raise InvariantViolation(f"schema element {el.name!r}: unknown kind {el.kind!r}")

    interface_names: set[str] = set()
    for iface in desc.interfaces:
        if iface.name in interface_names:
            raise InvariantViolation(f"interface {iface.name!r} declared twice")
        interface_names.add(iface.name)

        fault_names: set[str] = set()
        for flt in iface.faults:
            if flt.name in fault_names:
                raise InvariantViolation(f"interface {iface.name!r}: fault {flt.name!r} declared twice")
            fault_names.add(flt.name)
            if flt.element is not None and flt.element not in element_names:
                raise InvariantViolation(f"fault {flt.name!r} references unknown element {flt.element!r}")

        op_names: set[str] = set()
        for op in iface.operations:
            if op.name in op_names:
                raise InvariantViolation(f"interface {iface.name!r}: operation {op.name!r} declared twice")
            op_names.add(op.name)
            if op.pattern not in MEP_URIS:
                raise InvariantViolation(f"operation {op.name!r}: pattern {op.pattern!r} is not a supported MEP")
            for ref in (op.input, op.output):
                if ref is not None and ref not in element_names:
                    raise InvariantViolation(f"operation {op.name!r} references unknown element {ref!r}")
            for fault_name, _label in op.infaults + op.outfaults:
                if fault_name not in fault_names:
                    raise InvariantViolation(f"operation {op.name!r} references unknown fault {fault_name!r}")


# ---------------------------------------------------------------------------
# Emission

def _sawsdl_attrs(el) -> list[tuple[str, str]]:
    attrs: list[tuple[str, str]] = []
    if el.model_reference is not None:
        attrs.append(("sawsdl:modelReference", " ".join(el.model_reference.uris)))
    lowering = getattr(el, "lowering_schema_mapping", ())
    lifting = getattr(el, "lifting_schema_mapping", ())
    if lowering:
        attrs.append(("sawsdl:loweringSchemaMapping", " ".join(lowering)))
    if lifting:
        attrs.append(("sawsdl:liftingSchemaMapping", " ".join(lifting)))
    return attrs


def emit_sawsdl(desc: WSDLDescription) -> bytes:
    """Serialize a description to SAWSDL XML bytes (deterministic)."""
    check_description(desc)
    w = XmlWriter()
    root_attrs = [
        ("xmlns:wsdl", WSDL_NS),
        ("xmlns:sawsdl", SAWSDL_NS),
        ("xmlns:xs", XSD_NS),
        ("targetNamespace", desc.target_namespace),
    ]
    if not desc.schema_elements and not desc.interfaces:
        w.empty("wsdl:description", root_attrs)
        return w.to_bytes()

    w.open("wsdl:description", root_attrs)
    if desc.schema_elements:
        w.open("wsdl:types")
        w.open("xs:schema", [("targetNamespace", desc.target_namespace), ("elementFormDefault", "qualified")])
        for el in desc.schema_elements:
            attrs = [("name", el.name)]
            if el.kind == SIMPLE:
                attrs.append(("type", f"xs:{el.base_type}"))
            attrs.extend(_sawsdl_attrs(el))
            if el.kind == SIMPLE:
                w.empty("xs:element", attrs)
            else:
                w.open("xs:element", attrs)
                w.open("xs:complexType")
                w.open("xs:sequence")
                for child_name, child_type in el.children:
                    w.empty("xs:element", [("name", child_name), ("type", f"xs:{child_type}")])
                w.close()
                w.close()
                w.close()
        w.close()
        w.close()

    for iface in desc.interfaces:
        attrs = [("name", iface.name)] + _sawsdl_attrs(iface)
        w.open("wsdl:interface", attrs)
        for flt in iface.faults:
            fattrs = [("name", flt.name)]
            if flt.element is not None:
                fattrs.append(("element", flt.element))
            w.empty("wsdl:fault", fattrs)
        for op in iface.operations:
            oattrs = [("name", op.name), ("pattern", op.pattern)] + _sawsdl_attrs(op)
            w.open("wsdl:operation", oattrs)
            if op.input is not None:
                w.empty("wsdl:input", [("element", op.input)])
            if op.output is not None:
                w.empty("wsdl:output", [("element", op.output)])
            for fault_name, label in op.infaults:
                w.empty("wsdl:infault", [("ref", fault_name), ("messageLabel", label)])
            for fault_name, label in op.outfaults:
                w.empty("wsdl:outfault", [("ref", fault_name), ("messageLabel", label)])
            w.close()
        w.close()
    w.close()
    return w.to_bytes()


# ---------------------------------------------------------------------------
# Parsing

def _tag(ns: str, local: str) -> str:
    return f"{{{ns}}}{local}"


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _strip_prefix(value: str) -> str:
    return value.rsplit(":", 1)[-1]


def _uri_list(value: str | None) -> tuple[str, ...]:
    if value is None:
        return ()
    return tuple(value.split())


def _model_reference(node: ET.Element) -> ModelReference | None:
    uris = _uri_list(node.get(_tag(SAWSDL_NS, "modelReference")))
    return ModelReference(uris) if uris else None


def _parse_schema_element(node: ET.Element) -> XMLSchemaElement:
    name = node.get("name")
    if name is None:
        raise UnsupportedFeature("schema element without a name", "xs:element")
    lowering = _uri_list(node.get(_tag(SAWSDL_NS, "loweringSchemaMapping")))
    lifting = _uri_list(node.get(_tag(SAWSDL_NS, "liftingSchemaMapping")))
    type_attr = node.get("type")
    if type_attr is not None:
        return XMLSchemaElement(
            name=name, kind=SIMPLE, base_type=_strip_prefix(type_attr),
            model_reference=_model_reference(node),
            lowering_schema_mapping=lowering, lifting_schema_mapping=lifting,
        )
    children: list[tuple[str, str]] = []
    for complex_type in node:
        if complex_type.tag != _tag(XSD_NS, "complexType"):
            raise UnsupportedFeature(f"unsupported schema construct {_local_name(complex_type.tag)!r}", complex_type.tag)
        for seq in complex_type:
            if seq.tag != _tag(XSD_NS, "sequence"):
                raise UnsupportedFeature(f"unsupported complex content {_local_name(seq.tag)!r}", seq.tag)
            for child in seq:
                if child.tag != _tag(XSD_NS, "element"):
                    raise UnsupportedFeature(f"unsupported sequence member {_local_name(child.tag)!r}", child.tag)
                child_name, child_type = child.get("name"), child.get("type")
                if child_name is None or child_type is None:
                    raise UnsupportedFeature("sequence members need name and type attributes", "xs:element")
                children.append((child_name, _strip_prefix(child_type)))
    if not children:
        raise UnsupportedFeature(f"schema element {name!r} has neither a type nor a sequence", "xs:element")
    return XMLSchemaElement(
        name=name, kind=COMPLEX, children=tuple(children),
        model_reference=_model_reference(node),
        lowering_schema_mapping=lowering, lifting_schema_mapping=lifting,
    )


def _parse_operation(node: ET.Element) -> WSDLOperation:
    name = node.get("name")
    pattern = node.get("pattern")
    if name is None or pattern is None:
        raise UnsupportedFeature("operation needs name and pattern attributes", "wsdl:operation")
    pattern = _MEP_ALIASES.get(pattern, pattern)
    if pattern not in MEP_URIS:
        raise UnsupportedFeature(f"message exchange pattern {pattern!r} is not supported", pattern)

    op_input = op_output = None
    infaults: list[tuple[str, str]] = []
    outfaults: list[tuple[str, str]] = []
    for child in node:
        local = _local_name(child.tag)
        if child.tag == _tag(WSDL_NS, "input"):
            if child.get("fault") is not None:
                infaults.append((_strip_prefix(child.get("fault")), child.get("messageLabel", _strip_prefix(child.get("fault")))))
            else:
                op_input = _strip_prefix(child.get("element", "")) or None
        elif child.tag == _tag(WSDL_NS, "output"):
            if child.get("fault") is not None:
                outfaults.append((_strip_prefix(child.get("fault")), child.get("messageLabel", _strip_prefix(child.get("fault")))))
            else:
                op_output = _strip_prefix(child.get("element", "")) or None
        elif child.tag == _tag(WSDL_NS, "infault"):
            ref = _strip_prefix(child.get("ref", ""))
            infaults.append((ref, child.get("messageLabel", ref)))
        elif child.tag == _tag(WSDL_NS, "outfault"):
            ref = _strip_prefix(child.get("ref", ""))
            outfaults.append((ref, child.get("messageLabel", ref)))
        else:
            raise UnsupportedFeature(f"unsupported operation member {local!r}", child.tag)
    return WSDLOperation(
        name=name, pattern=pattern, input=op_input, output=op_output,
        infaults=tuple(infaults), outfaults=tuple(outfaults),
        model_reference=_model_reference(node),
    )


def _parse_interface(node: ET.Element) -> WSDLInterface:
    name = node.get("name")
    if name is None:
        raise UnsupportedFeature("interface without a name", "wsdl:interface")
    faults: list[WSDLInterfaceFault] = []
    operations: list[WSDLOperation] = []
    for child in node:
        if child.tag == _tag(WSDL_NS, "fault"):
            element = child.get("element")
            faults.append(WSDLInterfaceFault(
                name=child.get("name", ""),
                element=_strip_prefix(element) if element is not None else None,
            ))
        elif child.tag == _tag(WSDL_NS, "operation"):
            operations.append(_parse_operation(child))
        else:
            raise UnsupportedFeature(f"unsupported interface member {_local_name(child.tag)!r}", child.tag)
    return WSDLInterface(
        name=name, faults=tuple(faults), operations=tuple(operations),
        model_reference=_model_reference(node),
    )


def parse_sawsdl(xml_bytes: bytes | str) -> WSDLDescription:
    """Parse SAWSDL XML into a description tree.

    Inverse of emit_sawsdl on the supported subset. Unsupported
    constructs raise UnsupportedFeature naming the offending element.
    """
    try:
        root = ET.fromstring(xml_bytes)
    except ET.ParseError as exc:
        raise XmlSyntaxError(f"not well-formed XML: {exc}") from exc

    if root.tag != _tag(WSDL_NS, "description"):
        if _local_name(root.tag) == "description":
            raise MissingNamespace(f"root element is not in the WSDL 2.0 namespace {WSDL_NS!r}")
        raise UnsupportedFeature(f"unsupported root element {_local_name(root.tag)!r}", root.tag)

    target_namespace = root.get("targetNamespace", "")
    schema_elements: list[XMLSchemaElement] = []
    interfaces: list[WSDLInterface] = []
    for child in root:
        if child.tag == _tag(WSDL_NS, "types"):
            for schema in child:
                if schema.tag != _tag(XSD_NS, "schema"):
                    raise UnsupportedFeature(f"unsupported types member {_local_name(schema.tag)!r}", schema.tag)
                for el in schema:
                    if el.tag != _tag(XSD_NS, "element"):
                        raise UnsupportedFeature(f"unsupported schema member {_local_name(el.tag)!r}", el.tag)
                    schema_elements.append(_parse_schema_element(el))
        elif child.tag == _tag(WSDL_NS, "interface"):
            interfaces.append(_parse_interface(child))
        else:
            raise UnsupportedFeature(f"unsupported description member {_local_name(child.tag)!r}", child.tag)

    return WSDLDescription(
        target_namespace=target_namespace,
        schema_elements=tuple(schema_elements),
        interfaces=tuple(interfaces),
    )


# ---------------------------------------------------------------------------
# Canonical form

def _normalize_text(value: str) -> str:
    # XML attribute-value normalization can leave embedded whitespace.
    return " ".join(value.split())


def canonicalize(desc: WSDLDescription) -> WSDLDescription:
    """Normalize a description for order-insensitive comparison.

    Name-keyed sibling collections (schema elements, interfaces, faults,
    operations, per-operation fault references) sort by name; sequence
    children and URI lists keep their order, which is meaningful.
    Pattern abbreviations normalize to full MEP URIs. Idempotent.
    """
    def norm_uris(uris: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(_normalize_text(u) for u in uris)

    def norm_ref(ref: ModelReference | None) -> ModelReference | None:
        return ModelReference(norm_uris(ref.uris)) if ref is not None else None

    elements = tuple(sorted(
        (replace(
            el,
            name=_normalize_text(el.name),
            model_reference=norm_ref(el.model_reference),
            lowering_schema_mapping=norm_uris(el.lowering_schema_mapping),
            lifting_schema_mapping=norm_uris(el.lifting_schema_mapping),
        ) for el in desc.schema_elements),
        key=lambda el: el.name,
    ))

    interfaces = []
    for iface in desc.interfaces:
        faults = tuple(sorted(iface.faults, key=lambda f: f.name))
        operations = tuple(sorted(
            (replace(
                op,
                pattern=_MEP_ALIASES.get(op.pattern, op.pattern),
                infaults=tuple(sorted(op.infaults)),
                outfaults=tuple(sorted(op.outfaults)),
                model_reference=norm_ref(op.model_reference),
            ) for op in iface.operations),
            key=lambda op: op.name,
        ))
        interfaces.append(replace(
            iface, faults=faults, operations=operations,
            model_reference=norm_ref(iface.model_reference),
        ))

    return WSDLDescription(
        target_namespace=_normalize_text(desc.target_namespace),
        schema_elements=elements,
        interfaces=tuple(sorted(interfaces, key=lambda i: i.name)),
    )
