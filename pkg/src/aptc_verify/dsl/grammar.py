"""Grammar of the ``.aptc`` language (docs/grammar.ebnf is the readable copy).

Term operators bind, from loosest to tightest: ``+``, ``&``, ``||``, ``|``,
``<|``, ``.``.  All binary operators associate to the right.  Binders
(``sum``, ``merge``, ``par``, ``if``) extend as far right as possible and may
only appear as the right operand of an operator unless parenthesised.
"""

from functools import lru_cache

from lark import Lark

GRAMMAR = r"""
start: _stmt*

_stmt: spec_decl | param_decl | domain_decl | act_decl | map_decl | proc_decl
     | gamma_decl | conflict_decl | race_decl | causal_decl
     | states_decl | action_decl | effect_decl
     | encap_decl | hide_decl | system_decl | claim_decl

spec_decl: "spec" NAME ";"
param_decl: "param" NAME "=" INT "in" INT ".." INT ";"
domain_decl: "domain" NAME "=" "values" "(" expr ")" ";"       -> domain_values
           | "domain" NAME "=" "{" [expr ("," expr)*] "}" ";"  -> domain_set
act_decl: "act" act_item ("," act_item)* for_clause* ";"
act_item: NAME index* [sorts]
sorts: "(" NAME ("," NAME)* ")"
map_decl: "map" NAME index* ":" NAME "=" map_body for_clause* ";"
map_body: "identity"                        -> map_identity
        | "shift" "(" expr ")"              -> map_shift
        | "const" "(" expr ")"              -> map_const
        | "{" map_row ("," map_row)* "}"    -> map_table
map_row: expr "->" expr
proc_decl: "proc" NAME proc_index* "=" term ";"
proc_index: "[" NAME "in" range "]"         -> bound_index
          | "[" expr "]"                    -> fixed_index
gamma_decl: "gamma" "(" ref "," ref ")" "=" ref for_clause* ";"
conflict_decl: "conflict" "(" ref "," ref ")" for_clause* ";"
race_decl: "race" "(" ref "," ref ")" for_clause* ";"
causal_decl: "causal" "(" ref "<=" ref ")" for_clause* ";"
states_decl: "states" "{" expr ("," expr)* "}" "initial" expr ";"
action_decl: "action" "(" expr "," ref ")" "=" ref for_clause* ";"
effect_decl: "effect" "(" expr "," ref ")" "=" expr for_clause* ";"
encap_decl: "encap" label_set ";"
hide_decl: "hide" label_set ";"
system_decl: "system" "=" term ";"
claim_decl: "claim" "=" term ";"

label_set: "{" [set_item ("," set_item)*] "}"
set_item: ref for_clause*
for_clause: "for" NAME "in" range
range: expr [".." expr]
index: "[" expr "]"

ref: NAME index* [args]
args: "(" arg ("," arg)* ")"
?arg: "?" NAME                              -> input_var
    | expr

?term: binder | alt_e
binder: "sum" NAME "in" range ":" term      -> sum_binder
      | "merge" NAME "in" range ":" term    -> merge_binder
      | "par" NAME "in" range ":" term      -> par_binder
      | "if" cond "then" term "else" term   -> if_term
cond: expr "==" expr                        -> eq
    | expr "!=" expr                        -> ne
    | expr "<=" expr                        -> le
    | expr ">=" expr                        -> ge
    | expr "<" expr                         -> lt
    | expr ">" expr                         -> gt

?alt_e: whole_e "+" alt_r                   -> alt
      | whole_e
?alt_r: binder | alt_e
?whole_e: par_e "&" whole_r                 -> whole
        | par_e
?whole_r: binder | whole_e
?par_e: comm_e "||" par_r                   -> par
      | comm_e
?par_r: binder | par_e
?comm_e: unless_e "|" comm_r                -> comm
       | unless_e
?comm_r: binder | comm_e
?unless_e: seq_e "<|" unless_r              -> unless
         | seq_e
?unless_r: binder | unless_e
?seq_e: primary "." seq_r                   -> seq
      | primary
?seq_r: binder | seq_e
?primary: "(" term ")"
        | "delta"                           -> delta
        | "tau"                             -> tau
        | "shadow"                          -> plain_shadow
        | "shadow" "(" ref ["," INT] ")"    -> shadow_ref
        | "theta" "(" term ")"              -> theta
        | "encap" label_set "(" term ")"    -> encap
        | "abs" label_set "(" term ")"      -> abstract
        | "state" "[" expr "]" "(" term ")" -> state_op
        | ref

?expr: sum_x
?sum_x: prod_x
      | sum_x "+" prod_x                    -> add
      | sum_x "-" prod_x                    -> sub
?prod_x: atom_x
       | prod_x "*" atom_x                  -> mul
       | prod_x "mod" atom_x                -> mod
?atom_x: INT                                -> int_lit
       | NAME                               -> name_lit
       | NAME index* "(" expr ")"           -> map_app
       | "(" sum_x ")"
       | "-" atom_x                         -> neg

NAME: /[A-Za-z_][A-Za-z0-9_']*/
INT: /[0-9]+/
COMMENT: /\/\/[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True, maybe_placeholders=True)
