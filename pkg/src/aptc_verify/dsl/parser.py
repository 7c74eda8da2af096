"""Parse ``.aptc`` text into a validated, fully expanded PatternSpec.

The lark tree is walked by ``_Expander`` under a variable binding; indexed
families, binders and ``?x`` input variables are expanded here so that the
resulting terms are plain APTC terms.
"""

import itertools
import os
from dataclasses import replace
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..algebra.actions import ActionLabel, Value, act, render_value, shadow
from ..algebra.environment import Environment, StateSpec
from ..algebra.recursion import RecursiveSpec
from ..algebra.terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, DELTA_T, Encaps, Par, SHADOW_T, Seq, StateOp, TAU_T, Term, Unless,
    Var, WholePar, fold,
)
from ..algebra.validation import validate
from ..core.errors import Diagnostic, SpecSyntaxError, ValidationError
from ..core.logs import get_logger
from .grammar import get_parser
from .model import CLAIM, DataMap, Param, PatternSpec

LOGGER = get_logger("aptc_dsl", "dsl.log")

Bindings = Dict[str, Value]
Node = Union[Tree, Token]

_BINARY = {"alt": Alt, "whole": WholePar, "par": Par, "comm": CommMerge, "unless": Unless, "seq": Seq}
_FOLDS = {"sum_binder": (Alt, DELTA_T), "merge_binder": (WholePar, SHADOW_T), "par_binder": (Par, SHADOW_T)}
_COMPARE = {
    "eq": lambda a, b: a == b, "ne": lambda a, b: a != b,
    "le": lambda a, b: a <= b, "ge": lambda a, b: a >= b,
    "lt": lambda a, b: a < b, "gt": lambda a, b: a > b,
}
_PHASE_A = {"spec_decl", "param_decl", "domain_values", "domain_set", "act_decl", "map_decl"}


class _Abort(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _where(node: Optional[Node]) -> Tuple[Optional[int], Optional[int]]:
    if isinstance(node, Token):
        return node.line, node.column
    if isinstance(node, Tree) and not node.meta.empty:
        return node.meta.line, node.meta.column
    return None, None


def _diag(severity: str, message: str, node: Optional[Node] = None) -> Diagnostic:
    line, column = _where(node)
    return Diagnostic(severity, message, (), line, column)


def _fail(message: str, node: Optional[Node] = None):
    raise _Abort(_diag("error", message, node))


def _trees(node: Tree, data: str) -> List[Tree]:
    return [c for c in node.children if isinstance(c, Tree) and c.data == data]


class _Expander:
    def __init__(self, tree: Tree, overrides: Dict[str, int], name: Optional[str]):
        self.tree = tree
        self.overrides = dict(overrides)
        self.name = name
        self.errors: List[Diagnostic] = []
        self.warnings: List[Diagnostic] = []
        self.params: Dict[str, Param] = {}
        self.domains: Dict[str, Tuple[Value, ...]] = {}
        self.actions: Dict[str, Tuple[str, ...]] = {}
        self.families: Dict[str, List[str]] = {}
        self.maps: Dict[str, DataMap] = {}
        self.map_bases: Set[str] = set()
        self.proc_bases: Set[str] = set()
        self.proc_decls: Dict[str, Tuple[Tree, Bindings, bool]] = {}
        self.procs: Dict[str, Term] = {}
        self.gamma: Dict[Tuple[ActionLabel, ActionLabel], ActionLabel] = {}
        self.gamma_sites: Dict[Tuple[ActionLabel, ActionLabel], Tree] = {}
        self.conflicts: List[Tuple[ActionLabel, ActionLabel]] = []
        self.races: List[Tuple[ActionLabel, ActionLabel]] = []
        self.causal: List[Tuple[ActionLabel, ActionLabel]] = []
        self.states: Optional[Tuple[Tuple[Value, ...], Value]] = None
        self.state_actions: List[Tuple[Value, ActionLabel, ActionLabel]] = []
        self.state_effects: List[Tuple[Value, ActionLabel, Value]] = []
        self.encapsulated: Set[ActionLabel] = set()
        self.hidden: Set[ActionLabel] = set()
        self.system: Optional[Term] = None
        self.claim: Optional[Term] = None
        self.untyped = not any(s.data == "act_decl" for s in tree.children)

    # -- driver ---------------------------------------------------------------

    def run(self) -> PatternSpec:
        stmts = list(self.tree.children)
        for stmt in stmts:
            if stmt.data in _PHASE_A:
                self._guarded(stmt)
        for stmt in stmts:
            if stmt.data == "proc_decl":
                self._guarded(stmt, self._register_proc)
            elif stmt.data == "claim_decl":
                self.proc_bases.add(CLAIM)
        for stmt in stmts:
            if stmt.data not in _PHASE_A and stmt.data != "proc_decl":
                self._guarded(stmt)
        for instance, (body, bindings, _) in self.proc_decls.items():
            try:
                self.procs[instance] = self._term(body, bindings)
            except _Abort as exc:
                self.errors.append(exc.diagnostic)
        if self.errors:
            raise ValidationError(self.errors)
        spec = self._build()
        self._check(spec)
        if self.errors:
            raise ValidationError(self.errors)
        return replace(spec, diagnostics=tuple(self.warnings))

    def _guarded(self, stmt: Tree, handler=None) -> None:
        try:
            (handler or getattr(self, "_" + stmt.data))(stmt)
        except _Abort as exc:
            self.errors.append(exc.diagnostic)

    def _build(self) -> PatternSpec:
        declared = set()
        for instance, sorts in self.actions.items():
            declared.update(self._instances_with_data(instance, sorts))
        system = self.system
        if system is None and self.proc_decls:
            system = Var(next(iter(self.proc_decls)))
        state_spec = None
        if self.states is not None:
            state_spec = StateSpec(self.states[0], self.states[1], tuple(self.state_actions), tuple(self.state_effects))
        env = Environment.create(
            gamma=self.gamma, conflicts=self.conflicts, races=self.races, causality=self.causal,
            state_spec=state_spec, declared=declared,
        )
        return PatternSpec(
            name=self.name or "anonymous",
            params=tuple(self.params.values()),
            domains=tuple(self.domains.items()),
            actions=tuple(sorted(self.actions.items())),
            maps=tuple(self.maps[k] for k in sorted(self.maps)),
            processes=RecursiveSpec.of(self.procs),
            env=env,
            encapsulated=frozenset(self.encapsulated),
            hidden=frozenset(self.hidden),
            system=system,
            claim=self.claim,
        )

    def _check(self, spec: PatternSpec) -> None:
        for (a, b), site in self.gamma_sites.items():
            if (b, a) not in self.gamma_sites:
                self.warnings.append(_diag(
                    "warning", f"gamma({a},{b}) declared in one direction only; completed symmetrically", site))
        leaked = sorted(spec.claim_alphabet() & spec.hidden)
        if leaked:
            self.errors.append(_diag("error", "claim uses hidden actions: " + ", ".join(l.text for l in leaked)))
        produced = set(spec.alphabet())
        for a, b, c in spec.env.gamma:
            if a in produced and b in produced:
                produced.add(c)
        for _, _, result in self.state_actions:
            produced.add(result)
        for kind, labels in (("encap", spec.encapsulated), ("hide", spec.hidden)):
            missing = sorted(l for l in labels if l not in produced)
            if missing:
                self.warnings.append(_diag(
                    "warning", f"{kind} lists actions the system never produces: " + ", ".join(l.text for l in missing)))
        for term in (spec.system_term(), spec.claim_term()):
            if term is not None:
                self.errors.extend(d for d in validate(term, spec.env) if d.severity == "error")

    # -- expressions ----------------------------------------------------------

    def _value(self, node: Tree, b: Bindings) -> Value:
        kind = node.data
        if kind == "int_lit":
            return int(node.children[0])
        if kind == "name_lit":
            name = str(node.children[0])
            if name in b:
                return b[name]
            if name in self.params:
                return self.params[name].value
            return name
        if kind == "neg":
            return -self._int(node.children[0], b)
        if kind in ("add", "sub", "mul", "mod"):
            x, y = self._int(node.children[0], b), self._int(node.children[1], b)
            if kind == "add":
                return x + y
            if kind == "sub":
                return x - y
            if kind == "mul":
                return x * y
            if y == 0:
                _fail("mod by zero", node)
            return x % y
        if kind == "map_app":
            name_tok, *indices, arg = node.children
            instance = self._instance(name_tok, indices, b)
            value = self._value(arg, b)
            if instance in self.maps:
                return self.maps[instance].apply(value)
            if str(name_tok) in self.map_bases:
                _fail(f"unknown map instance {instance}", node)
            return value
        _fail(f"unexpected expression {kind}", node)

    def _int(self, node: Tree, b: Bindings) -> int:
        value = self._value(node, b)
        if not isinstance(value, int):
            _fail(f"expected an integer, got {value!r}", node)
        return value

    def _instance(self, name_tok: Token, indices: Sequence[Tree], b: Bindings) -> str:
        return str(name_tok) + "".join(f"[{render_value(self._value(i.children[0], b))}]" for i in indices)

    def _range(self, node: Tree, b: Bindings) -> List[Value]:
        low, high = node.children
        if high is None:
            if low.data == "name_lit" and str(low.children[0]) in self.domains and str(low.children[0]) not in b:
                return list(self.domains[str(low.children[0])])
            _fail("expected a domain name or a range lo..hi", node)
        return list(range(self._int(low, b), self._int(high, b) + 1))

    def _bindings(self, clauses: Sequence[Tree], b: Bindings) -> Iterator[Bindings]:
        if not clauses:
            yield b
            return
        var, rng = clauses[0].children
        for value in self._range(rng, b):
            yield from self._bindings(clauses[1:], {**b, str(var): value})

    def _sorts(self, instance: str, node: Node) -> Optional[Tuple[str, ...]]:
        if instance in self.actions:
            return self.actions[instance]
        if self.untyped:
            return None
        _fail(f"unknown identifier {instance}", node)

    def _instances_with_data(self, instance: str, sorts: Sequence[str]) -> List[ActionLabel]:
        return [act(instance, *data) for data in itertools.product(*(self.domains[s] for s in sorts))]

    # -- phase A: declarations ------------------------------------------------

    def _spec_decl(self, stmt: Tree) -> None:
        self.name = str(stmt.children[0])

    def _param_decl(self, stmt: Tree) -> None:
        name, value, low, high = (str(stmt.children[0]),) + tuple(int(t) for t in stmt.children[1:])
        if low > high:
            _fail(f"empty range for parameter {name}", stmt)
        if name in self.overrides:
            value = int(self.overrides[name])
        if not low <= value <= high:
            _fail(f"parameter {name}={value} out of range {low}..{high}", stmt)
        self.params[name] = Param(name, value, low, high)

    def _domain_values(self, stmt: Tree) -> None:
        size = self._int(stmt.children[1], {})
        if size < 1:
            _fail(f"domain {stmt.children[0]} would be empty", stmt)
        self.domains[str(stmt.children[0])] = tuple(range(1, size + 1))

    def _domain_set(self, stmt: Tree) -> None:
        values = tuple(self._value(c, {}) for c in stmt.children[1:] if c is not None)
        if len(set(values)) != len(values):
            _fail(f"duplicate value in domain {stmt.children[0]}", stmt)
        self.domains[str(stmt.children[0])] = values

    def _act_decl(self, stmt: Tree) -> None:
        items = _trees(stmt, "act_item")
        for b in self._bindings(_trees(stmt, "for_clause"), {}):
            for item in items:
                name_tok, *rest = item.children
                sorts_node = rest.pop()
                instance = self._instance(name_tok, rest, b)
                sorts = tuple(str(s) for s in sorts_node.children) if sorts_node is not None else ()
                for s in sorts:
                    if s not in self.domains:
                        _fail(f"unknown domain {s}", sorts_node)
                if self.actions.get(instance, sorts) != sorts:
                    _fail(f"action {instance} declared twice with different sorts", item)
                self.actions[instance] = sorts
                family = self.families.setdefault(str(name_tok), [])
                if instance not in family:
                    family.append(instance)

    def _map_decl(self, stmt: Tree) -> None:
        name_tok = stmt.children[0]
        indices = _trees(stmt, "index")
        domain_tok = [c for c in stmt.children[1:] if isinstance(c, Token)][0]
        body = stmt.children[2 + len(indices)]
        domain = str(domain_tok)
        if domain not in self.domains:
            _fail(f"unknown domain {domain}", domain_tok)
        values = self.domains[domain]
        self.map_bases.add(str(name_tok))
        for b in self._bindings(_trees(stmt, "for_clause"), {}):
            instance = self._instance(name_tok, indices, b)
            if body.data == "map_identity":
                rows = [(v, v) for v in values]
            elif body.data == "map_shift":
                k = self._int(body.children[0], b)
                rows = [(v, values[(pos + k) % len(values)]) for pos, v in enumerate(values)]
            elif body.data == "map_const":
                target = self._value(body.children[0], b)
                rows = [(v, target) for v in values]
            else:
                rows = [(self._value(r.children[0], b), self._value(r.children[1], b)) for r in body.children]
            for src, dst in rows:
                if src not in values or dst not in values:
                    _fail(f"map {instance} leaves domain {domain} ({src} -> {dst})", body)
            self.maps[instance] = DataMap(instance, domain, tuple(rows))

    # -- phase B: process registration ----------------------------------------

    def _register_proc(self, stmt: Tree) -> None:
        name_tok, *indices, body = stmt.children
        self.proc_bases.add(str(name_tok))
        fixed = all(i.data == "fixed_index" for i in indices)
        for b, values in self._proc_instances(indices, {}):
            instance = str(name_tok) + "".join(f"[{render_value(v)}]" for v in values)
            previous = self.proc_decls.get(instance)
            if previous is not None:
                if previous[2] == fixed:
                    _fail(f"process {instance} defined twice", stmt)
                if previous[2]:
                    continue
            self.proc_decls[instance] = (body, b, fixed)

    def _proc_instances(self, indices: Sequence[Tree], b: Bindings) -> Iterator[Tuple[Bindings, List[Value]]]:
        if not indices:
            yield b, []
            return
        head, rest = indices[0], indices[1:]
        if head.data == "fixed_index":
            value = self._value(head.children[0], b)
            for inner, values in self._proc_instances(rest, b):
                yield inner, [value] + values
            return
        var, rng = head.children
        for value in self._range(rng, b):
            for inner, values in self._proc_instances(rest, {**b, str(var): value}):
                yield inner, [value] + values

    # -- phase C: relations, tables, system and claim -------------------------

    def _label(self, ref: Tree, b: Bindings) -> ActionLabel:
        labels = self._labels(ref, b)
        if len(labels) != 1:
            _fail(f"expected a single action, got {len(labels)}", ref)
        return labels[0]

    def _labels(self, ref: Tree, b: Bindings) -> List[ActionLabel]:
        """Labels denoted by a reference in a set: bare family names and ``?x`` positions are wildcards."""
        name_tok, *indices, args = ref.children
        base = str(name_tok)
        if base in self.proc_bases:
            _fail(f"{base} is a process, not an action", ref)
        if not indices and base in self.families and self.families[base] != [base]:
            instances = list(self.families[base])
        else:
            instances = [self._instance(name_tok, indices, b)]
        out: List[ActionLabel] = []
        for instance in instances:
            sorts = self._sorts(instance, name_tok)
            if args is None:
                if sorts is None:
                    out.append(act(instance))
                else:
                    out.extend(self._instances_with_data(instance, sorts))
                continue
            choices = []
            for pos, arg in enumerate(args.children):
                if arg.data == "input_var" and str(arg.children[0]) in b:
                    choices.append([b[str(arg.children[0])]])
                elif arg.data == "input_var":
                    if sorts is None:
                        _fail("input variables need declared sorts", arg)
                    choices.append(list(self.domains[sorts[pos]]) if pos < len(sorts) else [])
                else:
                    choices.append([self._value(arg, b)])
            self._check_arity(instance, sorts, len(choices), ref)
            out.extend(act(instance, *data) for data in itertools.product(*choices))
        return out

    def _check_arity(self, instance: str, sorts: Optional[Tuple[str, ...]], count: int, node: Node) -> None:
        if sorts is not None and len(sorts) != count:
            _fail(f"action {instance} takes {len(sorts)} data argument(s), got {count}", node)

    def _gamma_decl(self, stmt: Tree) -> None:
        refs = _trees(stmt, "ref")
        for b in self._bindings(_trees(stmt, "for_clause"), {}):
            a, c, result = (self._label(r, b) for r in refs)
            if self.gamma.get((a, c), result) != result:
                _fail(f"gamma({a},{c}) defined twice", stmt)
            self.gamma[(a, c)] = result
            self.gamma_sites.setdefault((a, c), stmt)
            self.gamma.setdefault((c, a), result)

    def _pairs(self, stmt: Tree) -> List[Tuple[ActionLabel, ActionLabel]]:
        left, right = _trees(stmt, "ref")
        return [(self._label(left, b), self._label(right, b)) for b in self._bindings(_trees(stmt, "for_clause"), {})]

    def _conflict_decl(self, stmt: Tree) -> None:
        self.conflicts.extend(self._pairs(stmt))

    def _race_decl(self, stmt: Tree) -> None:
        self.races.extend(self._pairs(stmt))

    def _causal_decl(self, stmt: Tree) -> None:
        self.causal.extend(self._pairs(stmt))

    def _states_decl(self, stmt: Tree) -> None:
        *values, initial = (self._value(c, {}) for c in stmt.children)
        if initial not in values:
            _fail(f"initial state {initial} is not declared", stmt)
        self.states = (tuple(values), initial)

    def _action_decl(self, stmt: Tree) -> None:
        state, event, result = stmt.children[:3]
        for b in self._bindings(_trees(stmt, "for_clause"), {}):
            self.state_actions.append((self._value(state, b), self._label(event, b), self._label(result, b)))

    def _effect_decl(self, stmt: Tree) -> None:
        state, event, target = stmt.children[:3]
        for b in self._bindings(_trees(stmt, "for_clause"), {}):
            self.state_effects.append((self._value(state, b), self._label(event, b), self._value(target, b)))

    def _label_set(self, node: Tree, b: Bindings) -> Set[ActionLabel]:
        out: Set[ActionLabel] = set()
        for item in node.children:
            if item is None:
                continue
            ref, *clauses = item.children
            for inner in self._bindings(clauses, b):
                out.update(self._labels(ref, inner))
        return out

    def _encap_decl(self, stmt: Tree) -> None:
        self.encapsulated |= self._label_set(stmt.children[0], {})

    def _hide_decl(self, stmt: Tree) -> None:
        self.hidden |= self._label_set(stmt.children[0], {})

    def _system_decl(self, stmt: Tree) -> None:
        if self.system is not None:
            _fail("system declared twice", stmt)
        self.system = self._term(stmt.children[0], {})

    def _claim_decl(self, stmt: Tree) -> None:
        if self.claim is not None:
            _fail("claim declared twice", stmt)
        self.claim = self._term(stmt.children[0], {})

    # -- terms ----------------------------------------------------------------

    def _term(self, node: Tree, b: Bindings) -> Term:
        kind = node.data
        if kind == "seq":
            return self._seq(node, b)
        if kind in _BINARY:
            return _BINARY[kind](self._term(node.children[0], b), self._term(node.children[1], b))
        if kind in _FOLDS:
            var, rng, body = node.children
            op, empty = _FOLDS[kind]
            return fold(op, [self._term(body, {**b, str(var): v}) for v in self._range(rng, b)], empty)
        if kind == "if_term":
            cond, then, other = node.children
            x, y = (self._value(c, b) for c in cond.children)
            if type(x) is not type(y) and cond.data not in ("eq", "ne"):
                _fail("cannot order values of different kinds", cond)
            return self._term(then if _COMPARE[cond.data](x, y) else other, b)
        if kind == "delta":
            return DELTA_T
        if kind == "tau":
            return TAU_T
        if kind == "plain_shadow":
            return SHADOW_T
        if kind == "shadow_ref":
            ref, index = node.children
            return Atom(shadow(self._label(ref, b), int(index) if index is not None else None))
        if kind == "theta":
            return ConflictElim(self._term(node.children[0], b))
        if kind == "encap":
            return Encaps(frozenset(self._label_set(node.children[0], b)), self._term(node.children[1], b))
        if kind == "abstract":
            return Abstract(frozenset(self._label_set(node.children[0], b)), self._term(node.children[1], b))
        if kind == "state_op":
            return StateOp(self._value(node.children[0], b), self._term(node.children[1], b))
        if kind == "ref":
            return self._ref(node, b)
        _fail(f"unexpected term {kind}", node)

    def _seq(self, node: Tree, b: Bindings) -> Term:
        left, right = node.children
        inputs = self._inputs(left, b, {})
        if not inputs:
            return Seq(self._term(left, b), self._term(right, b))
        names = list(inputs)
        summands = []
        for values in itertools.product(*(inputs[n] for n in names)):
            inner = {**b, **dict(zip(names, values))}
            summands.append(Seq(self._term(left, inner), self._term(right, inner)))
        return fold(Alt, summands)

    def _inputs(self, node: Node, b: Bindings, found: Dict[str, Tuple[Value, ...]]) -> Dict[str, Tuple[Value, ...]]:
        """Unbound ``?x`` variables of a prefix with the domain of their position."""
        if not isinstance(node, Tree):
            return found
        if node.data == "ref" and node.children[-1] is not None:
            name_tok, *indices, args = node.children
            for pos, arg in enumerate(args.children):
                if arg.data == "input_var" and str(arg.children[0]) not in b:
                    var = str(arg.children[0])
                    if var not in found:
                        found[var] = self._input_domain(name_tok, indices, b, pos, arg)
            return found
        for child in node.children:
            self._inputs(child, b, found)
        return found

    def _input_domain(self, name_tok: Token, indices: Sequence[Tree], b: Bindings, pos: int,
                      node: Tree) -> Tuple[Value, ...]:
        sorts = self._sorts(self._instance(name_tok, indices, b), name_tok)
        if sorts is None or pos >= len(sorts):
            _fail("input variable without a declared sort", node)
        return self.domains[sorts[pos]]

    def _ref(self, node: Tree, b: Bindings) -> Term:
        name_tok, *indices, args = node.children
        base = str(name_tok)
        instance = self._instance(name_tok, indices, b)
        if base in self.proc_bases:
            if args is not None:
                _fail(f"process {instance} takes no data arguments", node)
            if instance not in self.proc_decls and instance != CLAIM:
                _fail(f"unknown process {instance}", node)
            return Var(instance)
        sorts = self._sorts(instance, name_tok)
        arg_nodes = list(args.children) if args is not None else []
        self._check_arity(instance, sorts, len(arg_nodes), node)
        choices = []
        for pos, arg in enumerate(arg_nodes):
            if arg.data == "input_var" and str(arg.children[0]) not in b:
                choices.append(self._input_domain(name_tok, indices, b, pos, arg))
            elif arg.data == "input_var":
                choices.append((b[str(arg.children[0])],))
            else:
                choices.append((self._value(arg, b),))
        summands = []
        for data in itertools.product(*choices):
            if sorts is not None:
                for value, sort in zip(data, sorts):
                    if value not in self.domains[sort]:
                        _fail(f"value {value} of {instance} is outside domain {sort}", node)
            summands.append(Atom(act(instance, *data)))
        return fold(Alt, summands)


def _syntax_error(exc: UnexpectedInput, text: str) -> SpecSyntaxError:
    line, column = getattr(exc, "line", -1), getattr(exc, "column", -1)
    if isinstance(exc, UnexpectedEOF) or line is None or line < 0:
        lines = text.splitlines() or [""]
        line, column = len(lines), len(lines[-1]) + 1
    if isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character {exc.char!r}"
    elif isinstance(exc, UnexpectedToken):
        expected = ", ".join(sorted(exc.expected)[:8])
        message = f"unexpected {exc.token!r}; expected one of {expected}"
    else:
        message = "unexpected end of input"
    return SpecSyntaxError(message, line, column)


def parse(text: str, params: Optional[Dict[str, int]] = None, name: Optional[str] = None) -> PatternSpec:
    """Parse, expand and validate ``.aptc`` text.

    ``params`` override declared parameters (undeclared names are ignored so
    that a batch can pass the same overrides to every file).
    """
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as exc:
        error = _syntax_error(exc, text)
        LOGGER.warning("dsl.syntax_error name=%s line=%s column=%s msg=%s", name, error.line, error.column, error)
        raise error from None
    try:
        spec = _Expander(tree, params or {}, name).run()
    except ValidationError as exc:
        LOGGER.warning("dsl.invalid name=%s errors=%d first=%s", name, len(exc.diagnostics), exc)
        raise
    for warning in spec.warnings:
        LOGGER.warning("dsl.diagnostic spec=%s %s", spec.name, warning.render())
    LOGGER.info("dsl.parsed spec=%s params=%s processes=%d actions=%d warnings=%d", spec.name,
                spec.param_values, len(spec.processes.equations), len(spec.env.declared), len(spec.warnings))
    return spec


def parse_file(path: str, params: Optional[Dict[str, int]] = None) -> PatternSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse(text, params, os.path.splitext(os.path.basename(path))[0])


__all__ = ["parse", "parse_file"]
