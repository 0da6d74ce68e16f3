// zca: build zero-coefficient automata for algebraic power series over
// fields of positive characteristic, run the attached decision procedures,
// and solve the recurrence / S-unit / matrix-intersection reductions.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zca/io.hpp"
#include "zca/kernel.hpp"

using namespace zca;

namespace {

// exit codes: 0 computed / property true, 1 property false, 2 usage error,
// 3 resource ceiling, 4 inconsistent input
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInput = 4;

bool g_json_errors = false;

int fail(const char* kind, const std::string& msg, int code) {
    if (g_json_errors) {
        std::cerr << "{\"error\":{\"kind\":\"" << kind << "\",\"message\":\""
                  << nlohmann::json(msg).dump().substr(1, nlohmann::json(msg).dump().size() - 2)
                  << "\"}}\n";
    } else {
        std::cerr << "zca: " << msg << "\n";
    }
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << text;
}

Tuple parse_tuple(const std::string& text, uint32_t d) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != d) throw input_error("point has arity " + std::to_string(parts.size()) +
                                             ", automaton has d = " + std::to_string(d));
    Tuple n;
    for (auto& p : parts) n.push_back(std::stoull(p));
    return n;
}

IntTuple parse_int_tuple(const std::string& text, uint32_t d) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != d) throw input_error("point has arity " + std::to_string(parts.size()) +
                                             ", set has dimension " + std::to_string(d));
    IntTuple n;
    for (auto& p : parts) n.push_back(std::stoll(p));
    return n;
}

std::string tuple_str(const Tuple& n) {
    std::string s;
    for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
    return s;
}

// decision summary used by the application subcommands
void print_signed_report(const SignedDfa& s) {
    IntTuple w;
    bool empty = signed_is_empty(s, &w);
    std::cout << "empty: " << (empty ? "yes" : "no") << "\n";
    if (empty) {
        std::cout << "finite: yes\n";
        return;
    }
    std::cout << "witness:";
    for (auto v : w) std::cout << " " << v;
    std::cout << "\n";
    std::set<IntTuple> members;
    bool finite = true;
    for (uint32_t mask = 0; mask < s.orthants.size() && finite; ++mask) {
        std::vector<Tuple> elems;
        if (!dfa_is_finite(s.orthants[mask], &elems)) {
            finite = false;
            break;
        }
        for (auto& n : elems) {
            IntTuple signed_n(s.d);
            for (uint32_t v = 0; v < s.d; ++v)
                signed_n[v] = (mask >> v) & 1 ? -(int64_t)n[v] : (int64_t)n[v];
            members.insert(std::move(signed_n));
        }
    }
    std::cout << "finite: " << (finite ? "yes" : "no") << "\n";
    if (finite) {
        std::cout << "elements (" << members.size() << "):";
        uint64_t shown = 0;
        for (auto& n : members) {
            if (++shown > 64) {
                std::cout << " ...";
                break;
            }
            std::cout << " (";
            for (uint32_t v = 0; v < s.d; ++v)
                std::cout << (v ? "," : "") << n[v];
            std::cout << ")";
        }
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-coefficient automata for algebraic power series in characteristic p"};
    app.require_subcommand(1);
    app.add_flag("--json-errors", g_json_errors, "machine-readable errors on stderr");

    // --- build ---------------------------------------------------------------
    auto* cmd_build = app.add_subcommand("build", "build the automaton of Z(f) from an input file");
    std::string b_field, b_input, b_out, b_dot, b_trace;
    uint32_t b_ceiling = 1000000, b_oracle = 8192, b_verify = 0;
    bool b_msb = false, b_raw = false, b_check = false;
    cmd_build->add_option("--field", b_field, "field spec, e.g. GF(2)(u); overrides the file");
    cmd_build->add_option("--input", b_input, "rational/annihilator/ore input file")->required();
    cmd_build->add_option("-o,--output", b_out, "output automaton JSON")->required();
    cmd_build->add_option("--dot", b_dot, "also write a DOT rendering");
    cmd_build->add_option("--trace", b_trace, "write the BFS trace TSV");
    cmd_build->add_option("--ceiling", b_ceiling, "state-count safety ceiling");
    cmd_build->add_option("--oracle-ceiling", b_oracle, "witness coefficient order ceiling");
    cmd_build->add_option("--verify-ore", b_verify, "check the Ore relation to this order");
    cmd_build->add_flag("--msb", b_msb, "convert the result to most-significant-first");
    cmd_build->add_flag("--no-minimize", b_raw, "keep the raw BFS automaton");
    cmd_build->add_flag("--check-witnesses", b_check, "re-check outputs on re-reached states");

    // --- decide ----------------------------------------------------------------
    auto* cmd_decide = app.add_subcommand("decide", "decide empty | finite | periodic");
    std::string d_prop, d_file;
    uint64_t d_cap = 4096;
    cmd_decide->add_option("property", d_prop, "empty, finite or periodic")->required();
    cmd_decide->add_option("automaton", d_file, "automaton JSON file")->required();
    cmd_decide->add_option("--period-cap", d_cap, "largest candidate period tried");

    // --- enum ------------------------------------------------------------------
    auto* cmd_enum = app.add_subcommand("enum", "list members with max-norm <= bound");
    std::string e_file;
    uint64_t e_max = 0;
    cmd_enum->add_option("automaton", e_file)->required();
    cmd_enum->add_option("--max", e_max, "norm bound")->required();

    // --- ops -------------------------------------------------------------------
    auto* cmd_ops = app.add_subcommand("ops", "and | or | xor | diff | eq | minimize | reverse");
    std::string o_op, o_a, o_b, o_out;
    cmd_ops->add_option("op", o_op)->required();
    cmd_ops->add_option("a", o_a, "first automaton")->required();
    cmd_ops->add_option("b", o_b, "second automaton (binary ops)");
    cmd_ops->add_option("-o,--output", o_out, "output automaton JSON");

    // --- member ------------------------------------------------------------------
    auto* cmd_member = app.add_subcommand("member", "point membership query");
    std::string m_file, m_point;
    cmd_member->add_option("container", m_file, "dfa/signed/group JSON")->required();
    cmd_member->add_option("point", m_point, "comma-separated coordinates")->required();

    // --- applications -------------------------------------------------------------
    auto* cmd_rec = app.add_subcommand("recurrence", "zero set of recurrence sums");
    auto* cmd_sunit = app.add_subcommand("sunit", "S-unit equation solutions");
    auto* cmd_matrix = app.add_subcommand("matrix", "variety ∩ matrix group");
    std::string a_prob, a_out, a_field;
    uint32_t a_jobs = 1;
    for (auto* c : {cmd_rec, cmd_sunit, cmd_matrix}) {
        c->add_option("problem", a_prob, "problem file")->required();
        c->add_option("-o,--output", a_out, "output JSON");
        c->add_option("--field", a_field, "field spec when the file has none");
        c->add_option("--jobs", a_jobs, "parallel sign-pattern builds");
    }

    // --- bound ---------------------------------------------------------------------
    auto* cmd_bound = app.add_subcommand("bound", "evaluate the complexity bound chain");
    BoundParams bp;
    uint64_t bn_override = 0;
    std::string bound_json;
    cmd_bound->add_option("--p", bp.p)->required();
    cmd_bound->add_option("--d", bp.d)->required();
    cmd_bound->add_option("--H", bp.H)->required();
    cmd_bound->add_option("--s", bp.s)->required();
    cmd_bound->add_option("--r", bp.r, "transcendence degree (default 1)");
    cmd_bound->add_option("--N2", bp.N2);
    cmd_bound->add_option("--N5", bp.N5);
    cmd_bound->add_option("--salg", bp.s_alg, "algebra basis size (default 1)");
    cmd_bound->add_option("--talg", bp.t_alg);
    cmd_bound->add_option("--n", bn_override, "generator count override");
    cmd_bound->add_option("--json", bound_json, "write the chain as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_build) {
            FieldPtr hint;
            if (!b_field.empty()) hint = Field::make(parse_field_spec(b_field));
            auto parsed = parse_algebraic_input(slurp(b_input), hint);
            BuildOptions opts;
            opts.state_ceiling = b_ceiling;
            opts.oracle_order_ceiling = b_oracle;
            opts.verify_ore_order = b_verify;
            opts.minimize = !b_raw;
            opts.check_witnesses = b_check;
            opts.keep_trace = !b_trace.empty();
            BuildReport report;
            Dfa a = build_zero_automaton(parsed.input, opts, &report);
            if (b_msb) a = dfa_reverse_direction(a);
            spill(b_out, dfa_to_json(a));
            if (!b_dot.empty()) spill(b_dot, dfa_to_dot(a));
            if (!b_trace.empty()) {
                std::string t = "state\tdigit\tsuccessor\twitness\n";
                for (auto& row : report.trace) t += row + "\n";
                spill(b_trace, t);
            }
            std::cout << "states: " << a.num_states() << " (raw " << report.raw_states
                      << ", minimized " << report.minimized_states << ")\n";
            return 0;
        }
        if (*cmd_decide) {
            Dfa a = dfa_from_json(slurp(d_file));
            if (d_prop == "empty") {
                Tuple w;
                bool empty = dfa_is_empty(a, &w);
                if (empty) {
                    std::cout << "empty\n";
                    return 0;
                }
                std::cout << "nonempty, witness " << tuple_str(w) << "\n";
                return kExitFalse;
            }
            if (d_prop == "finite") {
                std::vector<Tuple> elems;
                if (dfa_is_finite(a, &elems)) {
                    std::cout << "finite, " << elems.size() << " elements:";
                    for (auto& n : elems) std::cout << " " << tuple_str(n);
                    std::cout << "\n";
                    return 0;
                }
                std::cout << "infinite\n";
                return kExitFalse;
            }
            if (d_prop == "periodic") {
                auto r = dfa_eventually_periodic(a, d_cap);
                if (r.periodic) {
                    std::cout << "periodic, period " << r.period << " beyond " << r.preperiod
                              << "\n";
                    return 0;
                }
                std::cout << "aperiodic (no period <= " << r.cap << ")\n";
                return kExitFalse;
            }
            return fail("usage", "decide: unknown property " + d_prop, kExitUsage);
        }
        if (*cmd_enum) {
            Dfa a = dfa_from_json(slurp(e_file));
            auto members = dfa_enumerate(a, e_max);
            for (size_t i = 0; i < members.size(); ++i)
                std::cout << (i ? " " : "") << tuple_str(members[i]);
            std::cout << "\n";
            return 0;
        }
        if (*cmd_ops) {
            Dfa a = dfa_from_json(slurp(o_a));
            auto need_b = [&]() {
                if (o_b.empty()) throw input_error("ops " + o_op + ": two automata required");
                return dfa_from_json(slurp(o_b));
            };
            auto write = [&](const Dfa& r) {
                if (o_out.empty()) throw input_error("ops " + o_op + ": -o output required");
                spill(o_out, dfa_to_json(r));
                std::cout << "states: " << r.num_states() << "\n";
            };
            if (o_op == "and") {
                write(dfa_combine(BoolOp::And, a, need_b()));
            } else if (o_op == "or") {
                write(dfa_combine(BoolOp::Or, a, need_b()));
            } else if (o_op == "xor") {
                write(dfa_combine(BoolOp::Xor, a, need_b()));
            } else if (o_op == "diff") {
                write(dfa_combine(BoolOp::Diff, a, need_b()));
            } else if (o_op == "eq") {
                bool eq = dfa_equal(a, need_b());
                std::cout << (eq ? "equal" : "different") << "\n";
                return eq ? 0 : kExitFalse;
            } else if (o_op == "minimize") {
                write(dfa_minimize(a));
            } else if (o_op == "reverse") {
                write(dfa_reverse_direction(a));
            } else {
                return fail("usage", "ops: unknown operation " + o_op, kExitUsage);
            }
            return 0;
        }
        if (*cmd_member) {
            std::string text = slurp(m_file);
            auto j = nlohmann::json::parse(text);
            bool member;
            if (j.contains("kind") && j["kind"] == "group") {
                auto g = group_from_json(text);
                member = group_membership(g, parse_int_tuple(m_point, g.preimage.d));
            } else if (j.contains("kind") && j["kind"] == "signed") {
                auto s = signed_from_json(text);
                member = signed_membership(s, parse_int_tuple(m_point, s.d));
            } else {
                Dfa a = dfa_from_json(text);
                member = dfa_accepts(a, parse_tuple(m_point, a.d));
            }
            std::cout << (member ? "member" : "not a member") << "\n";
            return member ? 0 : kExitFalse;
        }
        if (*cmd_rec || *cmd_sunit || *cmd_matrix) {
            FieldPtr hint;
            if (!a_field.empty()) hint = Field::make(parse_field_spec(a_field));
            auto prob = parse_problem(slurp(a_prob), hint);
            BuildOptions opts;
            opts.jobs = a_jobs;
            if (*cmd_rec) {
                if (prob.recurrences.empty())
                    throw input_error("problem file has no [recurrence i] sections");
                Dfa z = recurrence_zero_set(prob.recurrences, opts);
                if (!a_out.empty()) spill(a_out, dfa_to_json(z));
                Tuple w;
                bool empty = dfa_is_empty(z, &w);
                std::cout << "empty: " << (empty ? "yes" : "no") << "\n";
                if (!empty) {
                    std::cout << "witness: " << tuple_str(w) << "\n";
                    std::vector<Tuple> elems;
                    bool fin = dfa_is_finite(z, &elems);
                    std::cout << "finite: " << (fin ? "yes" : "no") << "\n";
                    if (fin) {
                        std::cout << "elements:";
                        for (auto& n : elems) std::cout << " " << tuple_str(n);
                        std::cout << "\n";
                    }
                } else {
                    std::cout << "finite: yes\n";
                }
                return 0;
            }
            GroupAutomaticSet sol = *cmd_sunit ? [&] {
                if (!prob.sunit) throw input_error("problem file has no [equation] section");
                return sunit_solutions(*prob.sunit, opts);
            }()
                                               : [&] {
                if (!prob.matrix) throw input_error("problem file has no [matrices] section");
                return matrix_intersection(*prob.matrix, opts);
            }();
            if (!a_out.empty()) spill(a_out, group_to_json(sol));
            print_signed_report(sol.preimage);
            return 0;
        }
        if (*cmd_bound) {
            if (bn_override) bp.n_override = BigInt(bn_override);
            auto chain = complexity_bound_chain(bp);
            std::cout << "M       " << chain.M.to_decimal() << "\n";
            std::cout << "N0      " << chain.N0.to_decimal() << "\n";
            std::cout << "N1      " << chain.N1.to_string() << "\n";
            std::cout << "N3      " << chain.N3.to_decimal() << "\n";
            std::cout << "N4      " << chain.N4.to_decimal() << "\n";
            std::cout << "n       " << chain.n.to_decimal() << "\n";
            std::cout << "N6      " << chain.N6.to_decimal() << "\n";
            std::cout << "M'      " << chain.Mprime.to_decimal() << "\n";
            std::cout << "k0      " << chain.k0.to_decimal() << "\n";
            std::cout << "N7      " << chain.N7.to_string() << "\n";
            std::cout << "N8      " << chain.N8.to_string() << "\n";
            std::cout << "N9      " << chain.N9.to_string() << "\n";
            std::cout << "log2 N9 " << chain.N9.log2_string() << "\n";
            if (!bound_json.empty()) spill(bound_json, bound_chain_to_json(chain));
            return 0;
        }
        return fail("usage", "no subcommand", kExitUsage);
    } catch (const resource_error& e) {
        return fail("resource", e.what(), kExitResource);
    } catch (const precision_error& e) {
        return fail("input", e.what(), kExitInput);
    } catch (const input_error& e) {
        return fail("input", e.what(), kExitInput);
    } catch (const internal_error& e) {
        return fail("internal", e.what(), kExitInput);
    } catch (const std::exception& e) {
        return fail("input", e.what(), kExitInput);
    }
}
