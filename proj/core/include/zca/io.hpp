#pragma once

#include <optional>

#include "zca/apps.hpp"
#include "zca/bounds.hpp"
#include "zca/ore.hpp"

namespace zca {

// --- text grammars -----------------------------------------------------------
// FieldSpec:     GF(p)  |  GF(p^e; modulus=<poly in a>)  with optional (u1,..,ur)
// polynomials:   +/- separated terms like  (u+1)*t1^2*t2, scalars as integers
//                mod p or powers a^k of the extension generator
FieldSpec parse_field_spec(const std::string& text);

FieldElement parse_field_element(const FieldPtr& K, const std::string& text);

// polynomial over the named t-variables; "t" is accepted for "t1" when d = 1
TPoly parse_tpoly(const FieldPtr& K, uint32_t d, const std::string& text,
                  const std::vector<std::string>& tvar_names = {});

// --- algebraic input files ----------------------------------------------------
//   rational d=<d>      annihilator d=<d>      ore p=<p> s=<s> d=<d>
//   field <spec>        field <spec>           field <spec>
//   num <poly>          P <poly in t.., X>     Q0..Qs <poly>
//   den <poly>          seed                   seed
//                       (n1,..,nd) <elem>      (n1,..,nd) <elem>
struct ParsedInput {
    AlgebraicInput input;
    FieldPtr field;
};
ParsedInput parse_algebraic_input(const std::string& text, FieldPtr field_hint = nullptr);

// serialization reusable as an input file (Ore relations feed back through
// the annihilator P(X) = sum Q_i X^{p^i})
std::string ore_to_text(const OreRelation& rel,
                        const std::vector<std::pair<Exp, FieldElement>>& seed = {});

// --- automata -------------------------------------------------------------------
std::string dfa_to_json(const Dfa& a);
Dfa dfa_from_json(const std::string& text);
std::string dfa_to_dot(const Dfa& a);
std::string signed_to_json(const SignedDfa& s);
SignedDfa signed_from_json(const std::string& text);
std::string group_to_json(const GroupAutomaticSet& g);
GroupAutomaticSet group_from_json(const std::string& text);

// --- problem files -------------------------------------------------------------
// TOML-like sections: [field], [recurrence i], [equation], [generators],
// [matrices], [variety]
struct Problem {
    FieldPtr field;
    std::vector<LinearRecurrence> recurrences;
    std::optional<SUnitProblem> sunit;
    std::optional<MatrixProblem> matrix;
};
Problem parse_problem(const std::string& text, FieldPtr field_hint = nullptr);

std::string bound_chain_to_json(const BoundChain& c);

}  // namespace zca
