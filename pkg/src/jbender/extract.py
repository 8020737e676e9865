"""Lexical extraction of classes, interfaces, enums and methods from Java-ish source.

This is a heuristic scanner, not a grammar: comments and string literals are
blanked out first (comments kept in a side channel for doc attachment), then
every '{' is classified by the header text since the last structural
character (';', '{' or '}'). Headers naming class/interface/enum become type
entities; headers shaped like `modifiers? type name(...)` directly inside a
type body become method entities; everything else is an anonymous block.
Invalid or truncated code never raises, it just yields fewer entities.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field


class ExtractionWarning(UserWarning):
    """Non-fatal oddity in a source file (unbalanced braces etc.)."""


SNIPPET_LINES = 12

TYPE_KEYWORDS = ("class", "interface", "enum")

MODIFIER_WORDS = {
    "public", "protected", "private", "static", "final", "abstract",
    "synchronized", "native", "strictfp", "transient", "volatile", "default",
}

# An identifier followed by '(' that can never open a method body.
NON_METHOD_NAMES = {
    "if", "for", "while", "switch", "catch", "do", "else", "try", "finally",
    "return", "throw", "throws", "assert", "new", "case", "super", "this",
    "instanceof",
}

_PACKAGE_RE = re.compile(r"\bpackage\s+([A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*)\s*;")
_TYPE_DECL_RE = re.compile(r"\b(class|interface|enum)\s+([A-Za-z_$][\w$]*)")
_ANNOTATION_RE = re.compile(r"@[A-Za-z_$][\w$.]*(\s*\([^()]*\))?")
_IDENT_RE = re.compile(r"[A-Za-z_$][\w$]*")
_NAME_CALL_RE = re.compile(r"^(.*?)([A-Za-z_$][\w$]*)\s*\((.*)$", re.S)


@dataclass
class CodeEntity:
    """One indexed class, interface, enum or method."""

    entity_id: int
    project_id: str
    file_path: str
    kind: str
    name: str
    qualified_name: str
    visibility: str
    interfaces: list[str] = field(default_factory=list)
    body: str = ""
    comments: str = ""
    snippet: str = ""


def _blank_region(chars: list[str], start: int, end: int) -> None:
    """Replace chars[start:end] with spaces, keeping newlines for line math."""
    for i in range(start, end):
        if chars[i] != "\n":
            chars[i] = " "


def _strip_source(source: str) -> tuple[str, list[tuple[int, int, str]]]:
    """Blank comments and string/char literals; collect comments with spans."""
    chars = list(source)
    comments: list[tuple[int, int, str]] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        nxt = source[i + 1] if i + 1 < n else ""
        if ch == "/" and nxt == "/":
            end = source.find("\n", i)
            end = n if end == -1 else end
            comments.append((i, end, source[i:end]))
            _blank_region(chars, i, end)
            i = end
        elif ch == "/" and nxt == "*":
            close = source.find("*/", i + 2)
            end = n if close == -1 else close + 2
            comments.append((i, end, source[i:end]))
            _blank_region(chars, i, end)
            i = end
        elif ch == '"' or ch == "'":
            quote = ch
            j = i + 1
            while j < n:
                if source[j] == "\\":
                    j += 2
                    continue
                if source[j] == quote or source[j] == "\n":
                    break
                j += 1
            end = min(j + 1, n)
            _blank_region(chars, i, end)
            i = end
        else:
            i += 1
    return "".join(chars), comments


def _clean_comment(raw: str) -> str:
    """Strip comment delimiters and leading asterisks, keep the prose."""
    if raw.startswith("//"):
        return raw[2:].strip()
    text = raw
    if text.startswith("/**"):
        text = text[3:]
    elif text.startswith("/*"):
        text = text[2:]
    if text.endswith("*/"):
        text = text[:-2]
    lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("*"):
            stripped = stripped[1:].strip()
        if stripped:
            lines.append(stripped)
    return "\n".join(lines)


def _strip_generics(text: str) -> str:
    """Remove balanced <...> groups (type parameters and arguments)."""
    out = []
    depth = 0
    for ch in text:
        if ch == "<":
            depth += 1
        elif ch == ">":
            if depth > 0:
                depth -= 1
                continue
            out.append(ch)
            continue
        if depth == 0:
            out.append(ch)
    return "".join(out)


def _visibility(tokens: list[str]) -> str:
    for token in tokens:
        if token in ("public", "protected", "private"):
            return token
    return "default"


def _supertype_names(tail: str) -> list[str]:
    """extends/implements names from the text after the type name."""
    names: list[str] = []
    extends_m = re.search(r"\bextends\b(.*?)(?=\bimplements\b|$)", tail, re.S)
    implements_m = re.search(r"\bimplements\b(.*)$", tail, re.S)
    for match in (extends_m, implements_m):
        if not match:
            continue
        for part in match.group(1).split(","):
            ident = re.search(r"[A-Za-z_$][\w$.]*", part)
            if ident:
                names.append(ident.group(0))
    return names


@dataclass
class _TypeDecl:
    kind: str
    name: str
    visibility: str
    interfaces: list[str]


@dataclass
class _MethodDecl:
    name: str
    visibility: str


def _classify_header(header: str, enclosing_type: str | None):
    """Type declaration, method declaration, or None for a plain block."""
    cleaned = _ANNOTATION_RE.sub(" ", header)
    cleaned = _strip_generics(cleaned)

    type_m = _TYPE_DECL_RE.search(cleaned)
    if type_m:
        modifiers = _IDENT_RE.findall(cleaned[: type_m.start()])
        return _TypeDecl(
            kind=type_m.group(1),
            name=type_m.group(2),
            visibility=_visibility(modifiers),
            interfaces=_supertype_names(cleaned[type_m.end():]),
        )

    call_m = _NAME_CALL_RE.match(cleaned)
    if not call_m:
        return None
    before, name, rest = call_m.groups()
    if name in NON_METHOD_NAMES:
        return None
    tokens = before.split()
    if any(tok in NON_METHOD_NAMES for tok in tokens):
        return None
    # Tokens before the name must look like modifiers and a return type.
    if not all(re.fullmatch(r"[\w$.\[\]]+", tok) for tok in tokens):
        return None
    type_tokens = [tok for tok in tokens if tok not in MODIFIER_WORDS]
    is_constructor = not type_tokens and name == enclosing_type
    if not type_tokens and not is_constructor:
        return None
    # Past the parameter list only whitespace or a throws clause may remain.
    depth = 1
    pos = 0
    for pos, ch in enumerate(rest):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                break
    if depth != 0:
        return None
    tail = rest[pos + 1:]
    if not re.fullmatch(r"\s*(?:throws\s+[\w$.,\s]+)?", tail):
        return None
    return _MethodDecl(name=name, visibility=_visibility(tokens))


def _attach_comments(
    comments: list[tuple[int, int, str]], region_start: int, region_end: int
) -> str:
    texts = [
        _clean_comment(raw)
        for start, end, raw in comments
        if start >= region_start and end <= region_end
    ]
    return "\n".join(t for t in texts if t)


def _make_snippet(comments: str, body: str) -> str:
    parts = [p for p in (comments, body.strip("\n")) if p]
    lines = "\n".join(parts).splitlines()
    return "\n".join(lines[:SNIPPET_LINES])


def extract_entities(project_id: str, file_path: str, source: str) -> list[CodeEntity]:
    """All type and method entities found in one source text.

    Entity ids are 0..n-1 in order of declaration; callers merging several
    files renumber them. Never raises on malformed input.
    """
    stripped, comments = _strip_source(source)
    package_m = _PACKAGE_RE.search(stripped)
    package = package_m.group(1) if package_m else ""

    entities: list[CodeEntity] = []
    # Stack frames: (classify result or None, entity index or None, body start)
    stack: list[tuple[object, int | None, int]] = []
    seg_start = 0

    def _enclosing_types() -> list[CodeEntity]:
        return [entities[idx] for decl, idx, _ in stack
                if isinstance(decl, _TypeDecl) and idx is not None]

    for i, ch in enumerate(stripped):
        if ch == ";":
            seg_start = i + 1
        elif ch == "{":
            header = stripped[seg_start:i]
            enclosing = _enclosing_types()
            inside_type_body = bool(stack) and isinstance(stack[-1][0], _TypeDecl)
            enclosing_name = enclosing[-1].name if enclosing else None
            decl = _classify_header(header, enclosing_name)
            entity_idx: int | None = None
            if isinstance(decl, _MethodDecl) and not inside_type_body:
                decl = None
            if decl is not None:
                qualifier = [package] if package else []
                qualifier += [e.name for e in enclosing]
                doc = _attach_comments(comments, seg_start, i)
                if isinstance(decl, _TypeDecl):
                    entity = CodeEntity(
                        entity_id=len(entities),
                        project_id=project_id,
                        file_path=file_path,
                        kind=decl.kind,
                        name=decl.name,
                        qualified_name=".".join(qualifier + [decl.name]),
                        visibility=decl.visibility,
                        interfaces=list(decl.interfaces),
                        comments=doc,
                    )
                else:
                    entity = CodeEntity(
                        entity_id=len(entities),
                        project_id=project_id,
                        file_path=file_path,
                        kind="method",
                        name=decl.name,
                        qualified_name=".".join(qualifier + [decl.name]),
                        visibility=decl.visibility,
                        comments=doc,
                    )
                entities.append(entity)
                entity_idx = entity.entity_id
            stack.append((decl, entity_idx, i))
            seg_start = i + 1
        elif ch == "}":
            if stack:
                _, entity_idx, body_start = stack.pop()
                if entity_idx is not None:
                    entity = entities[entity_idx]
                    entity.body = source[body_start + 1:i]
                    entity.snippet = _make_snippet(entity.comments, entity.body)
            else:
                warnings.warn(
                    f"{file_path}: unbalanced '}}' ignored",
                    ExtractionWarning,
                    stacklevel=2,
                )
            seg_start = i + 1

    while stack:
        decl, entity_idx, body_start = stack.pop()
        if entity_idx is not None:
            warnings.warn(
                f"{file_path}: unterminated declaration "
                f"{entities[entity_idx].qualified_name!r}",
                ExtractionWarning,
                stacklevel=2,
            )
            entity = entities[entity_idx]
            entity.body = source[body_start + 1:]
            entity.snippet = _make_snippet(entity.comments, entity.body)

    return entities
