"""PatternSpec: a parsed, fully expanded ``.aptc`` file."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from ..algebra.actions import ActionLabel, Value
from ..algebra.environment import Environment
from ..algebra.recursion import RecursiveSpec, close
from ..algebra.terms import Term, Var, atoms, subterms
from ..core.errors import Diagnostic

CLAIM = "CLAIM"


@dataclass(frozen=True)
class Param:
    name: str
    value: int
    low: int
    high: int


@dataclass(frozen=True)
class DataMap:
    """A declared data map instance, e.g. ``UF[1] : Delta``, as an explicit table."""

    name: str
    domain: str
    rows: Tuple[Tuple[Value, Value], ...]

    def apply(self, value: Value) -> Value:
        for src, dst in self.rows:
            if src == value:
                return dst
        return value


@dataclass(frozen=True)
class PatternSpec:
    name: str
    params: Tuple[Param, ...] = ()
    domains: Tuple[Tuple[str, Tuple[Value, ...]], ...] = ()
    # (instance name, data sorts); an instance name carries its indices, e.g. r_UI[1]
    actions: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    maps: Tuple[DataMap, ...] = ()
    processes: RecursiveSpec = RecursiveSpec(())
    env: Environment = Environment()
    encapsulated: FrozenSet[ActionLabel] = frozenset()
    hidden: FrozenSet[ActionLabel] = frozenset()
    system: Optional[Term] = None
    claim: Optional[Term] = None
    diagnostics: Tuple[Diagnostic, ...] = field(default=(), compare=False)

    @property
    def param_values(self) -> Dict[str, int]:
        return {p.name: p.value for p in self.params}

    @property
    def delta(self) -> Tuple[Value, ...]:
        """The data domain named Delta, or the first declared domain."""
        domains = dict(self.domains)
        if "Delta" in domains:
            return domains["Delta"]
        return self.domains[0][1] if self.domains else ()

    @property
    def warnings(self) -> Tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == "warning")

    def core(self) -> Optional[Term]:
        """The parallel core: the declared system, else the first process."""
        if self.system is not None:
            return self.system
        if self.processes.equations:
            return Var(self.processes.equations[0][0])
        return None

    def system_term(self) -> Optional[Term]:
        core = self.core()
        return None if core is None else close(core, self._reachable(core, {}))

    def _reachable(self, root: Term, extra: Dict[str, Term]) -> RecursiveSpec:
        """The equations (process ones plus ``extra``) that ``root`` reaches."""
        bodies = {**dict(self.processes.equations), **extra}
        reached: Dict[str, Term] = {}
        todo = [sub.name for _, sub in subterms(root) if isinstance(sub, Var)]
        while todo:
            name = todo.pop()
            if name in reached or name not in bodies:
                continue
            reached[name] = bodies[name]
            todo.extend(sub.name for _, sub in subterms(bodies[name]) if isinstance(sub, Var))
        return RecursiveSpec(tuple(sorted(reached.items())))

    def claim_spec(self) -> Optional[RecursiveSpec]:
        """CLAIM plus the process equations it reaches."""
        if self.claim is None:
            return None
        return self._reachable(Var(CLAIM), {CLAIM: self.claim})

    def claim_term(self) -> Optional[Term]:
        spec = self.claim_spec()
        return None if spec is None else spec.ref(CLAIM)

    def alphabet(self) -> FrozenSet[ActionLabel]:
        """Ordinary labels occurring in the system (through every process body)."""
        labels = set()
        bodies = [body for _, body in self.processes.equations]
        if self.system is not None:
            bodies.append(self.system)
        for body in bodies:
            for label in atoms(body):
                if label.is_ordinary:
                    labels.add(label)
                elif label.is_shadow and label.base is not None:
                    labels.add(label.base)
        return frozenset(labels)

    def claim_alphabet(self) -> FrozenSet[ActionLabel]:
        if self.claim is None:
            return frozenset()
        return frozenset(l for l in atoms(self.claim) if l.is_ordinary)

    def summary(self) -> Dict:
        return {
            "name": self.name,
            "params": self.param_values,
            "processes": len(self.processes.equations),
            "actions": len(self.env.declared) if self.env.declared else len(self.alphabet()),
            "H": sorted(l.text for l in self.encapsulated),
            "I": sorted(l.text for l in self.hidden),
            "claim": self.claim is not None,
            "warnings": [d.render() for d in self.warnings],
        }
