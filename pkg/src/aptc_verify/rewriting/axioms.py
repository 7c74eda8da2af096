"""Axiom identifiers and their metadata.

``kind`` is the equivalence the soundness suite checks an axiom against:
"strong" (strong step bisimulation) or "rbs" (rooted branching step
bisimulation).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple


class AxiomId(str, Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    P8 = "P8"
    P9 = "P9"
    P10 = "P10"
    C11 = "C11"
    C12 = "C12"
    C13 = "C13"
    C14 = "C14"
    C15 = "C15"
    C16 = "C16"
    C17 = "C17"
    C18 = "C18"
    CE19 = "CE19"
    CE20 = "CE20"
    CE21 = "CE21"
    CE22 = "CE22"
    CE23 = "CE23"
    CE24 = "CE24"
    U25 = "U25"
    U26 = "U26"
    U27 = "U27"
    U28 = "U28"
    U29 = "U29"
    U30 = "U30"
    U31 = "U31"
    U32 = "U32"
    U33 = "U33"
    U34 = "U34"
    U35 = "U35"
    U36 = "U36"
    U37 = "U37"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    TI1 = "TI1"
    TI2 = "TI2"
    TI3 = "TI3"
    TI4 = "TI4"
    TI5 = "TI5"
    TI6 = "TI6"
    SC1 = "SC1"
    SC2 = "SC2"
    SC3 = "SC3"
    SC4 = "SC4"
    SC5 = "SC5"
    SC6 = "SC6"
    SC7 = "SC7"
    SC8 = "SC8"
    SC9 = "SC9"
    SO1 = "SO1"
    SO2 = "SO2"
    SO3 = "SO3"
    SO4 = "SO4"
    SO5 = "SO5"
    RDP = "RDP"
    CFAR = "CFAR"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Axiom:
    id: AxiomId
    table: str
    equation: str
    kind: str = "strong"

    def to_dict(self) -> Dict:
        return {"id": self.id.value, "table": self.table, "equation": self.equation, "kind": self.kind}


BATC = "BATC"
APTC = "APTC"
TAU = "APTC_tau"
SHADOW = "shadow constant"
STATE = "state operator"
RECURSION = "recursion"

_TABLE: Tuple[Tuple[str, str, str, str], ...] = (
    ("A1", BATC, "x + y = y + x", "strong"),
    ("A2", BATC, "(x + y) + z = x + (y + z)", "strong"),
    ("A3", BATC, "x + x = x", "strong"),
    ("A4", BATC, "(x + y) . z = x . z + y . z", "strong"),
    ("A5", BATC, "(x . y) . z = x . (y . z)", "strong"),
    ("A6", APTC, "x + delta = x", "strong"),
    ("A7", APTC, "delta . x = delta", "strong"),
    ("P1", APTC, "x & y = x || y + x | y  (expansion over head normal forms)", "strong"),
    ("P2", APTC, "x || y = y || x", "strong"),
    ("P3", APTC, "(x || y) || z = x || (y || z)", "strong"),
    ("P4", APTC, "e1 || (e2 . y) = (e1 || e2) . y", "strong"),
    ("P5", APTC, "(e1 . x) || e2 = (e1 || e2) . x", "strong"),
    ("P6", APTC, "(e1 . x) || (e2 . y) = (e1 || e2) . (x & y)", "strong"),
    ("P7", APTC, "(x + y) || z = (x || z) + (y || z)", "strong"),
    ("P8", APTC, "x || (y + z) = (x || y) + (x || z)", "strong"),
    ("P9", APTC, "delta || x = delta", "strong"),
    ("P10", APTC, "x || delta = delta", "strong"),
    ("C11", APTC, "e1 | e2 = gamma(e1, e2)", "strong"),
    ("C12", APTC, "e1 | (e2 . y) = gamma(e1, e2) . y", "strong"),
    ("C13", APTC, "(e1 . x) | e2 = gamma(e1, e2) . x", "strong"),
    ("C14", APTC, "(e1 . x) | (e2 . y) = gamma(e1, e2) . (x & y)", "strong"),
    ("C15", APTC, "(x + y) | z = (x | z) + (y | z)", "strong"),
    ("C16", APTC, "x | (y + z) = (x | y) + (x | z)", "strong"),
    ("C17", APTC, "delta | x = delta", "strong"),
    ("C18", APTC, "x | delta = delta", "strong"),
    ("CE19", APTC, "theta(e) = e", "strong"),
    ("CE20", APTC, "theta(delta) = delta", "strong"),
    ("CE21", APTC, "theta(x + y) = theta(x) <| y + theta(y) <| x", "strong"),
    ("CE22", APTC, "theta(x . y) = theta(x) . theta(y)", "strong"),
    ("CE23", APTC, "theta(x || y) = ((theta(x) <| y) || y) + ((theta(y) <| x) || x)", "strong"),
    ("CE24", APTC, "theta(x | y) = ((theta(x) <| y) | y) + ((theta(y) <| x) | x)", "strong"),
    ("U25", APTC, "conflict(e1, e2) => e1 <| e2 = tau", "strong"),
    ("U26", APTC, "conflict(e1, e2), e2 <= e3 => e1 <| e3 = e1", "strong"),
    ("U27", APTC, "conflict(e1, e2), e2 <= e3 => e3 <| e1 = tau", "strong"),
    ("U28", APTC, "e <| delta = e", "strong"),
    ("U29", APTC, "delta <| e = delta", "strong"),
    ("U30", APTC, "(x + y) <| z = (x <| z) + (y <| z)", "strong"),
    ("U31", APTC, "(x . y) <| z = (x <| z) . (y <| z)", "strong"),
    ("U32", APTC, "(x || y) <| z = (x <| z) || (y <| z)", "strong"),
    ("U33", APTC, "(x | y) <| z = (x <| z) | (y <| z)", "strong"),
    ("U34", APTC, "x <| (y + z) = (x <| y) <| z", "strong"),
    ("U35", APTC, "x <| (y . z) = (x <| y) <| z", "strong"),
    ("U36", APTC, "x <| (y || z) = (x <| y) <| z", "strong"),
    ("U37", APTC, "x <| (y | z) = (x <| y) <| z", "strong"),
    ("D1", APTC, "e not in H => encap_H(e) = e", "strong"),
    ("D2", APTC, "e in H => encap_H(e) = delta", "strong"),
    ("D3", APTC, "encap_H(delta) = delta", "strong"),
    ("D4", APTC, "encap_H(x + y) = encap_H(x) + encap_H(y)", "strong"),
    ("D5", APTC, "encap_H(x . y) = encap_H(x) . encap_H(y)", "strong"),
    ("D6", APTC, "encap_H(x || y) = encap_H(x) || encap_H(y)", "strong"),
    ("B1", TAU, "e . tau = e", "rbs"),
    ("B2", TAU, "e . (tau . (x + y) + x) = e . (x + y)", "rbs"),
    ("B3", TAU, "x || tau = x", "rbs"),
    ("TI1", TAU, "e not in I => abs_I(e) = e", "rbs"),
    ("TI2", TAU, "e in I => abs_I(e) = tau", "rbs"),
    ("TI3", TAU, "abs_I(delta) = delta", "rbs"),
    ("TI4", TAU, "abs_I(x + y) = abs_I(x) + abs_I(y)", "rbs"),
    ("TI5", TAU, "abs_I(x . y) = abs_I(x) . abs_I(y)", "rbs"),
    ("TI6", TAU, "abs_I(x || y) = abs_I(x) || abs_I(y)", "rbs"),
    ("SC1", SHADOW, "shadow . x = x", "strong"),
    ("SC2", SHADOW, "x . shadow = x", "strong"),
    ("SC3", SHADOW, "shadow(e) || e = e", "strong"),
    ("SC4", SHADOW, "e || (shadow(e) . y) = e . y", "strong"),
    ("SC5", SHADOW, "shadow(e) || (e . y) = e . y", "strong"),
    ("SC6", SHADOW, "(e . x) || shadow(e) = e . x", "strong"),
    ("SC7", SHADOW, "(shadow(e) . x) || e = e . x", "strong"),
    ("SC8", SHADOW, "(e . x) || (shadow(e) . y) = e . (x & y)", "strong"),
    ("SC9", SHADOW, "(shadow(e) . x) || (e . y) = e . (x & y)", "strong"),
    ("SO1", STATE, "state[s](e) = action(s, e)", "strong"),
    ("SO2", STATE, "state[s](delta) = delta", "strong"),
    ("SO3", STATE, "state[s](x + y) = state[s](x) + state[s](y)", "strong"),
    ("SO4", STATE, "state[s](e . y) = action(s, e) . state[effect(s, e)](y)", "strong"),
    ("SO5", STATE, "state[s](x || y) = state[s](x) || state[s](y)", "strong"),
    ("RDP", RECURSION, "<X | E> = t_X(<X1 | E>, .., <Xn | E>)", "strong"),
    ("CFAR", TAU, "X in a cluster for I with exits => tau . abs_I(<X | E>) = tau . abs_I(sum of exits)", "rbs"),
)

AXIOMS: Dict[AxiomId, Axiom] = {AxiomId(i): Axiom(AxiomId(i), table, eq, kind) for i, table, eq, kind in _TABLE}


def get_axiom(axiom_id) -> Axiom:
    return AXIOMS[AxiomId(str(axiom_id))]


def parse_ids(text: str) -> Tuple[AxiomId, ...]:
    """Comma-separated ids or family prefixes ("A", "SC", "TI")."""
    wanted = [t.strip().upper() for t in text.split(",") if t.strip()]
    out = []
    for w in wanted:
        if w in AxiomId.__members__:
            out.append(AxiomId(w))
            continue
        family = [a for a in AxiomId if a.value.rstrip("0123456789") == w]
        if not family:
            raise ValueError(f"unknown axiom or family {w!r}")
        out.extend(family)
    return tuple(dict.fromkeys(out))
