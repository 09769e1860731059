#
# This file is part of Escape Search.
# Copyright (C) 2025 INPE.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/gpl-3.0.html>.
#

"""Reader of the STRIPS subset of PDDL (``:strips`` and ``:typing``).

Text is first read into located s-expressions with :mod:`pyparsing`; the
domain and problem are then built from them, reporting every problem with
its line and column.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pyparsing as pp

from ..exceptions import PDDLError

ROOT_TYPE = "object"

SUPPORTED_REQUIREMENTS = frozenset({":strips", ":typing"})

_UNSUPPORTED_FORMULAS = frozenset(
    {"or", "imply", "exists", "forall", "when", "=", "increase", "decrease"}
)


@dataclass(frozen=True)
class Token:
    """A located atom of the s-expression."""

    text: str
    loc: int


@dataclass(frozen=True)
class SList:
    """A located parenthesized list."""

    items: Tuple[Union[Token, "SList"], ...]
    loc: int

    def head(self) -> Optional[str]:
        """Return the text of the first item when it is an atom."""
        if self.items and isinstance(self.items[0], Token):
            return self.items[0].text
        return None


Node = Union[Token, SList]


def _make_token(s: str, loc: int, toks: pp.ParseResults) -> Token:
    return Token(toks[0].lower(), loc)


def _make_list(s: str, loc: int, toks: pp.ParseResults) -> SList:
    return SList(tuple(toks), loc)


def _grammar() -> pp.ParserElement:
    atom = pp.Regex(r"[^()\s;]+").set_parse_action(_make_token)
    sexpr = pp.Forward()
    sexpr <<= (pp.Suppress("(") + pp.ZeroOrMore(atom | sexpr) + pp.Suppress(")")).set_parse_action(
        _make_list
    )
    document = pp.ZeroOrMore(sexpr) + pp.StringEnd()
    document.ignore(";" + pp.rest_of_line)
    return document


_DOCUMENT = _grammar()


def read_sexpressions(text: str) -> List[SList]:
    """Read every top-level s-expression of ``text``.

    Raises:
        PDDLError: On unbalanced parentheses or stray atoms.
    """
    try:
        return list(_DOCUMENT.parse_string(text, parse_all=True))
    except pp.ParseBaseException as exc:
        raise PDDLError(f"syntax error: {exc.msg}", exc.lineno, exc.col) from None


@dataclass(frozen=True)
class Atom:
    """A positive literal; arguments are variables (``?x``) or objects."""

    predicate: str
    args: Tuple[str, ...]

    def __str__(self) -> str:
        """Return the PDDL form."""
        return "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True)
class Predicate:
    """A declared predicate and the types of its arguments."""

    name: str
    types: Tuple[str, ...]

    @property
    def arity(self) -> int:
        """Return the number of arguments."""
        return len(self.types)


@dataclass(frozen=True)
class ActionSchema:
    """A lifted STRIPS operator."""

    name: str
    parameters: Tuple[Tuple[str, str], ...]
    precondition: Tuple[Atom, ...]
    add_effects: Tuple[Atom, ...]
    del_effects: Tuple[Atom, ...]


@dataclass
class Domain:
    """A parsed domain.

    Attributes:
        types (Dict[str, str]): Parent of every declared type; the root
            type ``object`` has no entry.
    """

    name: str
    requirements: Tuple[str, ...] = ()
    types: Dict[str, str] = field(default_factory=dict)
    constants: Dict[str, str] = field(default_factory=dict)
    predicates: Dict[str, Predicate] = field(default_factory=dict)
    actions: Tuple[ActionSchema, ...] = ()

    def has_type(self, name: str) -> bool:
        """Return True for declared types and the root type."""
        return name == ROOT_TYPE or name in self.types

    def is_subtype(self, name: str, ancestor: str) -> bool:
        """Return True if ``name`` is ``ancestor`` or inherits from it."""
        seen = set()
        while name not in seen:
            if name == ancestor:
                return True
            seen.add(name)
            if name == ROOT_TYPE:
                return False
            name = self.types.get(name, ROOT_TYPE)
        return False


@dataclass
class Problem:
    """A parsed problem; objects include the domain constants."""

    name: str
    domain_name: str
    objects: Dict[str, str] = field(default_factory=dict)
    init: Tuple[Atom, ...] = ()
    goal: Tuple[Atom, ...] = ()


class _Reader:
    """Builds the domain and problem from s-expressions of one text."""

    def __init__(self, text: str) -> None:
        self.text = text

    def error(self, node: Node, message: str) -> PDDLError:
        return PDDLError(message, pp.lineno(node.loc, self.text), pp.col(node.loc, self.text))

    def single_document(self, what: str) -> SList:
        documents = read_sexpressions(self.text)
        if len(documents) != 1:
            raise PDDLError(f"expected exactly one {what} definition, found {len(documents)}")
        document = documents[0]
        if document.head() != "define" or len(document.items) < 2:
            raise self.error(document, f"expected (define ({what} ...) ...)")
        header = document.items[1]
        if (
            not isinstance(header, SList)
            or header.head() != what
            or len(header.items) != 2
            or not isinstance(header.items[1], Token)
        ):
            raise self.error(header, f"expected ({what} <name>)")
        return document

    def token(self, node: Node, what: str) -> Token:
        if not isinstance(node, Token):
            raise self.error(node, f"expected {what}, found a list")
        return node

    def slist(self, node: Node, what: str) -> SList:
        if not isinstance(node, SList):
            raise self.error(node, f"expected {what}, found '{node.text}'")
        return node

    def typed_list(
        self, items: Sequence[Node], domain: Optional[Domain]
    ) -> List[Tuple[Token, str]]:
        """Read ``a b - t c`` into ``[(a, t), (b, t), (c, object)]``."""
        result: List[Tuple[Token, str]] = []
        pending: List[Token] = []
        index = 0
        while index < len(items):
            token = self.token(items[index], "a name")
            if token.text == "-":
                if index + 1 >= len(items) or not pending:
                    raise self.error(token, "dangling '-' in typed list")
                type_token = self.token(items[index + 1], "a type name")
                if domain is not None and not domain.has_type(type_token.text):
                    raise self.error(type_token, f"unknown type '{type_token.text}'")
                result.extend((name, type_token.text) for name in pending)
                pending = []
                index += 2
                continue
            pending.append(token)
            index += 1
        result.extend((name, ROOT_TYPE) for name in pending)
        return result

    def domain(self) -> Domain:
        document = self.single_document("domain")
        domain = Domain(name=document.items[1].items[1].text)
        actions = []
        for section in document.items[2:]:
            section = self.slist(section, "a domain section")
            keyword = section.head()
            body = section.items[1:]
            if keyword == ":requirements":
                domain.requirements = self.requirements(body)
            elif keyword == ":types":
                self.types(domain, body)
            elif keyword == ":constants":
                for name, type_name in self.typed_list(body, domain):
                    domain.constants[name.text] = type_name
            elif keyword == ":predicates":
                self.predicates(domain, body)
            elif keyword == ":action":
                actions.append(self.action(domain, section))
            else:
                raise self.error(section, f"unsupported domain section '{keyword}'")
        names = [a.name for a in actions]
        if len(set(names)) != len(names):
            raise PDDLError(f"domain '{domain.name}' declares an action twice")
        domain.actions = tuple(actions)
        return domain

    def requirements(self, body: Sequence[Node]) -> Tuple[str, ...]:
        found = []
        for node in body:
            token = self.token(node, "a requirement")
            if token.text not in SUPPORTED_REQUIREMENTS:
                raise self.error(token, f"unsupported requirement {token.text}")
            found.append(token.text)
        return tuple(found)

    def types(self, domain: Domain, body: Sequence[Node]) -> None:
        declared = self.typed_list(body, None)
        for name, _ in declared:
            if name.text == ROOT_TYPE:
                continue
            domain.types[name.text] = ROOT_TYPE
        for name, parent in declared:
            if name.text == ROOT_TYPE:
                continue
            if not domain.has_type(parent):
                raise self.error(name, f"unknown type '{parent}'")
            domain.types[name.text] = parent

    def predicates(self, domain: Domain, body: Sequence[Node]) -> None:
        for node in body:
            node = self.slist(node, "a predicate declaration")
            name = self.token(node.items[0], "a predicate name") if node.items else None
            if name is None:
                raise self.error(node, "empty predicate declaration")
            arguments = self.typed_list(node.items[1:], domain)
            for variable, _ in arguments:
                if not variable.text.startswith("?"):
                    raise self.error(variable, f"expected a variable, found '{variable.text}'")
            domain.predicates[name.text] = Predicate(name.text, tuple(t for _, t in arguments))

    def action(self, domain: Domain, section: SList) -> ActionSchema:
        if len(section.items) < 2:
            raise self.error(section, "action without a name")
        name = self.token(section.items[1], "an action name").text
        fields: Dict[str, Node] = {}
        rest = section.items[2:]
        for index in range(0, len(rest), 2):
            key = self.token(rest[index], "an action keyword")
            if key.text not in (":parameters", ":precondition", ":effect"):
                raise self.error(key, f"unsupported action keyword '{key.text}'")
            if index + 1 >= len(rest):
                raise self.error(key, f"missing value after {key.text}")
            fields[key.text] = rest[index + 1]

        parameters: Dict[str, str] = {}
        if ":parameters" in fields:
            plist = self.slist(fields[":parameters"], "a parameter list")
            for variable, type_name in self.typed_list(plist.items, domain):
                if not variable.text.startswith("?"):
                    raise self.error(variable, f"expected a variable, found '{variable.text}'")
                parameters[variable.text] = type_name

        precondition: List[Atom] = []
        if ":precondition" in fields:
            for literal, negated in self.conjunction(fields[":precondition"]):
                if negated:
                    raise self.error(literal, "negative preconditions are not supported")
                precondition.append(self.atom(domain, literal, parameters))
        add, delete = [], []
        if ":effect" in fields:
            for literal, negated in self.conjunction(fields[":effect"]):
                (delete if negated else add).append(self.atom(domain, literal, parameters))

        return ActionSchema(
            name, tuple(parameters.items()), tuple(precondition), tuple(add), tuple(delete)
        )

    def conjunction(self, node: Node) -> List[Tuple[SList, bool]]:
        """Flatten ``(and ...)`` into literals tagged with their negation."""
        node = self.slist(node, "a formula")
        head = node.head()
        if not node.items:
            return []
        if head == "and":
            literals = []
            for item in node.items[1:]:
                literals.extend(self.conjunction(item))
            return literals
        if head == "not":
            if len(node.items) != 2:
                raise self.error(node, "(not ...) takes one literal")
            inner = self.slist(node.items[1], "a literal")
            if inner.head() in _UNSUPPORTED_FORMULAS | {"and", "not", None}:
                raise self.error(inner, f"unsupported formula '{inner.head()}'")
            return [(inner, True)]
        if head in _UNSUPPORTED_FORMULAS or head is None:
            raise self.error(node, f"unsupported formula '{head}'")
        return [(node, False)]

    def atom(self, domain: Domain, node: SList, parameters: Dict[str, str]) -> Atom:
        name = self.token(node.items[0], "a predicate name")
        predicate = domain.predicates.get(name.text)
        if predicate is None:
            raise self.error(name, f"unknown predicate '{name.text}'")
        args = [self.token(item, "an argument") for item in node.items[1:]]
        if len(args) != predicate.arity:
            raise self.error(
                node, f"predicate '{name.text}' takes {predicate.arity} arguments, got {len(args)}"
            )
        for arg in args:
            if arg.text.startswith("?"):
                if arg.text not in parameters:
                    raise self.error(arg, f"unknown variable '{arg.text}'")
            elif arg.text not in domain.constants:
                raise self.error(arg, f"unknown object '{arg.text}'")
        return Atom(name.text, tuple(a.text for a in args))

    def ground_atom(self, domain: Domain, node: SList, objects: Dict[str, str]) -> Atom:
        name = self.token(node.items[0] if node.items else node, "a predicate name")
        predicate = domain.predicates.get(name.text)
        if predicate is None:
            raise self.error(name, f"unknown predicate '{name.text}'")
        args = [self.token(item, "an object") for item in node.items[1:]]
        if len(args) != predicate.arity:
            raise self.error(
                node, f"predicate '{name.text}' takes {predicate.arity} arguments, got {len(args)}"
            )
        for arg, expected in zip(args, predicate.types):
            if arg.text not in objects:
                raise self.error(arg, f"unknown object '{arg.text}'")
            if not domain.is_subtype(objects[arg.text], expected):
                raise self.error(
                    arg, f"object '{arg.text}' of type '{objects[arg.text]}' is not a '{expected}'"
                )
        return Atom(name.text, tuple(a.text for a in args))

    def problem(self, domain: Domain) -> Problem:
        document = self.single_document("problem")
        problem = Problem(
            name=document.items[1].items[1].text,
            domain_name=domain.name,
            objects=dict(domain.constants),
        )
        seen_domain = False
        for section in document.items[2:]:
            section = self.slist(section, "a problem section")
            keyword = section.head()
            body = section.items[1:]
            if keyword == ":domain":
                target = self.token(body[0], "a domain name") if body else None
                if target is None or target.text != domain.name:
                    raise self.error(section, f"problem is not for domain '{domain.name}'")
                seen_domain = True
            elif keyword == ":requirements":
                self.requirements(body)
            elif keyword == ":objects":
                for name, type_name in self.typed_list(body, domain):
                    problem.objects[name.text] = type_name
            elif keyword == ":init":
                init = []
                for node in body:
                    node = self.slist(node, "an initial fact")
                    if node.head() == "not":
                        raise self.error(node, "negative initial facts are not supported")
                    init.append(self.ground_atom(domain, node, problem.objects))
                problem.init = tuple(init)
            elif keyword == ":goal":
                if len(body) != 1:
                    raise self.error(section, "(:goal ...) takes one formula")
                goal = []
                for literal, negated in self.conjunction(body[0]):
                    if negated:
                        raise self.error(literal, "negative goals are not supported")
                    goal.append(self.ground_atom(domain, literal, problem.objects))
                problem.goal = tuple(goal)
            else:
                raise self.error(section, f"unsupported problem section '{keyword}'")
        if not seen_domain:
            raise self.error(document, "missing (:domain ...) section")
        return problem


def parse_domain(text: str) -> Domain:
    """Parse a domain definition.

    Raises:
        PDDLError: With the line and column of the offending token.
    """
    return _Reader(text).domain()


def parse_problem(text: str, domain: Domain) -> Problem:
    """Parse a problem definition against ``domain``."""
    return _Reader(text).problem(domain)


def parse(domain_text: str, problem_text: str) -> Tuple[Domain, Problem]:
    """Parse a domain and a problem.

    Args:
        domain_text (str): The domain definition.
        problem_text (str): The problem definition.

    Returns:
        Tuple[Domain, Problem]: The structured representation.

    Raises:
        PDDLError: On any syntax or validation problem.
    """
    domain = parse_domain(domain_text)
    return domain, parse_problem(problem_text, domain)
