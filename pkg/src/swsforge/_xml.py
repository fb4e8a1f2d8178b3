"""Minimal deterministic XML writer.

Emitters in this package need byte-identical output for identical input.
ElementTree's serializer reorders namespace declarations between Python
versions, so documents are written by hand: fixed two-space indentation,
attributes in the order given, LF line ends, UTF-8 with an XML declaration.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>'


class XmlWriter:
    def __init__(self) -> None:
        self._lines: list[str] = [_DECLARATION]
        self._stack: list[str] = []

    def _indent(self) -> str:
        return "  " * len(self._stack)

    @staticmethod
    def _render_attrs(attrs: list[tuple[str, str]]) -> str:
        return "".join(f" {name}={quoteattr(value)}" for name, value in attrs)

    def open(self, tag: str, attrs: list[tuple[str, str]] | None = None) -> None:
        self._lines.append(f"{self._indent()}<{tag}{self._render_attrs(attrs or [])}>")
        self._stack.append(tag)

    def close(self) -> None:
        tag = self._stack.pop()
        self._lines.append(f"{self._indent()}</{tag}>")

    def empty(self, tag: str, attrs: list[tuple[str, str]] | None = None) -> None:
        self._lines.append(f"{self._indent()}<{tag}{self._render_attrs(attrs or [])}/>")

    def text_element(self, tag: str, text: str, attrs: list[tuple[str, str]] | None = None) -> None:
        rendered = self._render_attrs(attrs or [])
        self._lines.append(f"{self._indent()}<{tag}{rendered}>{escape(text)}</{tag}>")

    def to_bytes(self) -> bytes:
        if self._stack:
            raise ValueError(f"unclosed elements: {self._stack}")
        return ("\n".join(self._lines) + "\n").encode("utf-8")
