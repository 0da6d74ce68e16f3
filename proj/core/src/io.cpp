#include "zca/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace zca {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// recursive-descent expression parser into TPoly

struct Lexer {
    std::string s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        return s.substr(start, pos - start);
    }
    uint64_t integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) throw input_error("parse: expected an integer at '" + rest() + "'");
        return std::stoull(s.substr(start, pos - start));
    }
    std::string rest() { return s.substr(std::min(pos, s.size()), 24); }
};

struct PolyParser {
    Lexer lx;
    FieldPtr K;
    uint32_t d;                           // t-variable count
    std::vector<std::string> tvar_names;  // index -> name

    TPoly parse() {
        TPoly v = expr();
        if (!lx.eof()) throw input_error("parse: trailing input at '" + lx.rest() + "'");
        return v;
    }

    TPoly expr() {
        bool neg = lx.eat('-');
        TPoly acc = term();
        if (neg) acc = tp_neg(acc);
        while (true) {
            if (lx.eat('+')) {
                acc = tp_add(acc, term());
            } else if (lx.eat('-')) {
                acc = tp_sub(acc, term());
            } else {
                return acc;
            }
        }
    }
    TPoly term() {
        TPoly acc = factor();
        while (true) {
            if (lx.eat('*')) {
                acc = tp_mul(acc, factor());
            } else if (lx.eat('/')) {
                TPoly rhs = factor();
                if (rhs.deg() != 0)
                    throw input_error("parse: division by a non-constant polynomial");
                FieldElement c = rhs.at_zero();
                if (c.is_zero()) throw input_error("parse: division by zero");
                acc = tp_scale(acc, c.inverse());
            } else {
                return acc;
            }
        }
    }
    TPoly factor() {
        TPoly base = atom();
        if (lx.eat('^')) {
            uint64_t e = lx.integer();
            return tp_pow(base, e);
        }
        return base;
    }
    TPoly atom() {
        if (lx.eat('(')) {
            TPoly v = expr();
            if (!lx.eat(')')) throw input_error("parse: missing ')' at '" + lx.rest() + "'");
            return v;
        }
        char c = lx.peek();
        if (std::isdigit((unsigned char)c))
            return TPoly::constant(K, d, FieldElement::from_int(K, (int64_t)lx.integer()));
        std::string name = lx.ident();
        if (name.empty()) throw input_error("parse: unexpected character at '" + lx.rest() + "'");
        if (name == "a" && K->spec().e > 1)
            return TPoly::constant(K, d, FieldElement::from_scalar(K, K->gf().gen()));
        int uvar = K->var_index(name);
        if (uvar >= 0) return TPoly::constant(K, d, FieldElement::var(K, (uint32_t)uvar));
        auto tvar = [&](const std::string& want) -> std::optional<TPoly> {
            for (uint32_t v = 0; v < tvar_names.size(); ++v)
                if (tvar_names[v] == want) {
                    Exp e;
                    e.e[v] = 1;
                    return TPoly::monomial(K, d, e, FieldElement::one(K));
                }
            return std::nullopt;
        };
        if (auto hit = tvar(name)) return *hit;
        // "t" is a convenient alias for "t1"
        if (name == "t")
            if (auto hit = tvar("t1")) return *hit;
        throw input_error("parse: unknown symbol '" + name + "'");
    }
};

std::vector<std::string> default_tvars(uint32_t d, bool with_x) {
    std::vector<std::string> names;
    for (uint32_t v = 0; v < d; ++v) names.push_back("t" + std::to_string(v + 1));
    if (with_x) names.push_back("X");
    return names;
}

// splits on commas at parenthesis/bracket depth 0
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim_copy(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
    Lexer lx{text};
    if (lx.ident() != "GF" || !lx.eat('('))
        throw input_error("field spec: expected GF(...) in '" + text + "'");
    FieldSpec spec;
    uint64_t q = lx.integer();
    uint32_t p = 0, e = 1;
    if (lx.eat('^')) {
        p = (uint32_t)q;
        e = (uint32_t)lx.integer();
    } else {
        // plain q: factor the prime power
        uint32_t base = 0;
        for (uint32_t cand = 2; cand <= q; ++cand) {
            if (q % cand == 0) {
                base = cand;
                break;
            }
        }
        uint64_t v = q;
        e = 0;
        while (v > 1) {
            if (v % base != 0) throw input_error("field spec: " + std::to_string(q) +
                                                 " is not a prime power");
            v /= base;
            ++e;
        }
        p = base;
    }
    spec.p = p;
    spec.e = e;
    if (lx.eat(';')) {
        std::string key = lx.ident();
        if (key != "modulus" || !lx.eat('='))
            throw input_error("field spec: expected modulus=... in '" + text + "'");
        // the modulus is a polynomial in a over F_p; parse it over a scratch
        // field with one transcendental named a
        size_t start = lx.pos;
        int depth = 0;
        while (lx.pos < lx.s.size() && (lx.s[lx.pos] != ')' || depth > 0)) {
            if (lx.s[lx.pos] == '(') ++depth;
            if (lx.s[lx.pos] == ')') --depth;
            ++lx.pos;
        }
        std::string modtext = lx.s.substr(start, lx.pos - start);
        auto scratch = Field::make({p, 1, {}, {"a"}});
        FieldElement m = parse_field_element(scratch, modtext);
        if (!m.is_polynomial())
            throw input_error("field spec: modulus must be a polynomial in a");
        spec.modulus.assign(e + 1, 0);
        for (auto& t : m.num().terms) {
            if (t.first.e[0] > e) throw input_error("field spec: modulus degree exceeds e");
            spec.modulus[t.first.e[0]] = t.second;
        }
    }
    if (!lx.eat(')')) throw input_error("field spec: missing ')' in '" + text + "'");
    if (lx.eat('(')) {
        while (true) {
            std::string v = lx.ident();
            if (v.empty()) throw input_error("field spec: bad variable list in '" + text + "'");
            spec.trans_vars.push_back(v);
            if (lx.eat(')')) break;
            if (!lx.eat(',')) throw input_error("field spec: bad variable list in '" + text + "'");
        }
    }
    if (!lx.eof()) throw input_error("field spec: trailing input in '" + text + "'");
    return spec;
}

FieldElement parse_field_element(const FieldPtr& K, const std::string& text) {
    PolyParser pp{Lexer{text}, K, 0, {}};
    TPoly v = pp.parse();
    return v.at_zero();
}

TPoly parse_tpoly(const FieldPtr& K, uint32_t d, const std::string& text,
                  const std::vector<std::string>& tvar_names) {
    std::vector<std::string> names = tvar_names.empty() ? default_tvars(d, false) : tvar_names;
    PolyParser pp{Lexer{text}, K, d, names};
    return pp.parse();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<Exp, FieldElement>> parse_seed_lines(const FieldPtr& K, uint32_t d,
                                                           std::istream& in) {
    std::vector<std::pair<Exp, FieldElement>> seed;
    std::string line;
    while (std::getline(in, line)) {
        line = trim_copy(line);
        if (line.empty() || line[0] == '#') continue;
        if (line[0] != '(') throw input_error("seed: expected (n1,..,nd) value");
        size_t close = line.find(')');
        if (close == std::string::npos) throw input_error("seed: missing ')'");
        auto parts = split_list(line.substr(1, close - 1));
        if (parts.size() != d) throw input_error("seed: exponent tuple has wrong arity");
        Exp e;
        for (uint32_t v = 0; v < d; ++v) e.e[v] = (uint16_t)std::stoul(trim_copy(parts[v]));
        FieldElement val = parse_field_element(K, trim_copy(line.substr(close + 1)));
        seed.push_back({e, val});
    }
    return seed;
}

}  // namespace

ParsedInput parse_algebraic_input(const std::string& text, FieldPtr field_hint) {
    std::istringstream in(text);
    std::string header;
    // first non-empty line
    while (std::getline(in, header)) {
        header = trim_copy(header);
        if (!header.empty() && header[0] != '#') break;
    }
    std::istringstream hl(header);
    std::string kind;
    hl >> kind;
    std::map<std::string, std::string> kv;
    std::string tok;
    while (hl >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos) throw input_error("input header: expected key=value");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto need = [&](const char* k) {
        auto it = kv.find(k);
        if (it == kv.end())
            throw input_error(std::string("input header: missing ") + k + "=...");
        return std::stoul(it->second);
    };

    FieldPtr K = field_hint;
    std::map<std::string, std::string> body;  // single-line keys
    std::vector<std::string> qlines;          // Q0..Qs in order
    std::string seed_text;
    bool in_seed = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trim_copy(line);
        if (line.empty() || line[0] == '#') continue;
        if (in_seed) {
            seed_text += line + "\n";
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        rest = trim_copy(rest);
        if (key == "seed") {
            in_seed = true;
        } else if (key == "field") {
            K = Field::make(parse_field_spec(rest));
        } else {
            body[key] = rest;
            if (key.size() >= 1 && key[0] == 'Q') qlines.push_back(key);
        }
    }
    if (!K) throw input_error("input: no field line and no --field given");

    ParsedInput out;
    out.field = K;
    if (kind == "rational") {
        uint32_t d = need("d");
        if (!body.count("num") || !body.count("den"))
            throw input_error("rational input: need num and den lines");
        TPoly A = parse_tpoly(K, d, body["num"]);
        TPoly B = parse_tpoly(K, d, body["den"]);
        out.input = AlgebraicInput::rational(A, B);
    } else if (kind == "annihilator") {
        uint32_t d = need("d");
        if (!body.count("P")) throw input_error("annihilator input: need a P line");
        // parse over d t-variables plus X as variable index d
        TPoly P = parse_tpoly(K, d + 1, body["P"], default_tvars(d, true));
        uint32_t xdeg = P.deg_var(d);
        std::vector<TPoly> coeffs(xdeg + 1, TPoly::zero(K, d));
        for (auto& t : P.terms) {
            Exp e = t.first;
            uint32_t xe = e.e[d];
            e.e[d] = 0;
            coeffs[xe] = tp_add(coeffs[xe], TPoly::monomial(K, d, e, t.second));
        }
        std::istringstream seeds(seed_text);
        out.input = AlgebraicInput::annihilator(K, d, coeffs, parse_seed_lines(K, d, seeds));
    } else if (kind == "ore") {
        uint32_t p = need("p");
        uint32_t s = need("s");
        uint32_t d = kv.count("d") ? need("d") : 1;
        if (p != K->p()) throw input_error("ore input: p does not match the field");
        // expansion goes through the annihilator P(X) = sum Q_i X^{p^i}
        uint64_t top = 1;
        for (uint32_t i = 0; i < s; ++i) top *= p;
        std::vector<TPoly> coeffs(top + 1, TPoly::zero(K, d));
        uint64_t pi = 1;
        for (uint32_t i = 0; i <= s; ++i) {
            std::string key = "Q" + std::to_string(i);
            if (!body.count(key)) throw input_error("ore input: missing " + key);
            coeffs[pi] = tp_add(coeffs[pi], parse_tpoly(K, d, body[key]));
            pi *= p;
        }
        std::istringstream seeds(seed_text);
        out.input = AlgebraicInput::annihilator(K, d, coeffs, parse_seed_lines(K, d, seeds));
    } else {
        throw input_error("input: unknown kind '" + kind + "'");
    }
    return out;
}

std::string ore_to_text(const OreRelation& rel,
                        const std::vector<std::pair<Exp, FieldElement>>& seed) {
    std::ostringstream out;
    out << "ore p=" << rel.K->p() << " s=" << rel.s << " d=" << rel.d << "\n";
    out << "field " << rel.K->spec().to_string() << "\n";
    for (uint32_t i = 0; i <= rel.s; ++i) out << "Q" << i << " " << rel.Q[i].to_string() << "\n";
    if (!seed.empty()) {
        out << "seed\n";
        for (auto& [e, v] : seed) {
            out << "(";
            for (uint32_t i = 0; i < rel.d; ++i) out << (i ? "," : "") << e.e[i];
            out << ") " << v.to_string() << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------

std::string dfa_to_json(const Dfa& a) {
    json j;
    j["p"] = a.p;
    j["d"] = a.d;
    j["dir"] = a.dir == Direction::LSB ? "lsb" : "msb";
    j["states"] = a.num_states();
    j["start"] = a.start;
    json accept = json::array();
    for (uint32_t s = 0; s < a.num_states(); ++s)
        if (a.out[s]) accept.push_back(s);
    j["accept"] = std::move(accept);
    json delta = json::array();
    for (uint32_t s = 0; s < a.num_states(); ++s)
        for (uint32_t w = 0; w < a.alphabet(); ++w) {
            Exp dig = digit_decode(a.p, a.d, w);
            json tuple = json::array();
            for (uint32_t v = 0; v < a.d; ++v) tuple.push_back(dig.e[v]);
            delta.push_back(json::array({s, std::move(tuple), a.delta[s][w]}));
        }
    j["delta"] = std::move(delta);
    return j.dump();
}

Dfa dfa_from_json(const std::string& text) {
    json j = json::parse(text);
    Dfa a;
    a.p = j.at("p").get<uint32_t>();
    a.d = j.at("d").get<uint32_t>();
    std::string dir = j.at("dir").get<std::string>();
    if (dir != "lsb" && dir != "msb") throw input_error("dfa json: dir must be lsb or msb");
    a.dir = dir == "lsb" ? Direction::LSB : Direction::MSB;
    uint32_t n = j.at("states").get<uint32_t>();
    a.start = j.at("start").get<uint32_t>();
    a.out.assign(n, 0);
    for (auto& s : j.at("accept")) a.out.at(s.get<uint32_t>()) = 1;
    a.delta.assign(n, std::vector<uint32_t>(a.alphabet(), UINT32_MAX));
    for (auto& row : j.at("delta")) {
        uint32_t s = row.at(0).get<uint32_t>();
        Exp dig;
        auto& tuple = row.at(1);
        if (tuple.size() != a.d) throw input_error("dfa json: digit tuple arity mismatch");
        for (uint32_t v = 0; v < a.d; ++v) dig.e[v] = (uint16_t)tuple.at(v).get<uint32_t>();
        uint32_t w = digit_encode(a.p, a.d, dig);
        a.delta.at(s).at(w) = row.at(2).get<uint32_t>();
    }
    for (auto& row : a.delta)
        for (uint32_t t : row)
            if (t == UINT32_MAX) throw input_error("dfa json: transition table not total");
    dfa_validate(a);
    return a;
}

std::string dfa_to_dot(const Dfa& a) {
    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
    for (uint32_t s = 0; s < a.num_states(); ++s)
        out << "  q" << s << " [shape=circle, label=\"q" << s << "/" << (int)a.out[s] << "\"];\n";
    out << "  init -> q" << a.start << ";\n";
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        std::map<uint32_t, std::vector<std::string>> grouped;
        for (uint32_t w = 0; w < a.alphabet(); ++w) {
            Exp dig = digit_decode(a.p, a.d, w);
            std::string lab;
            if (a.d == 1) {
                lab = std::to_string(dig.e[0]);
            } else {
                lab = "(";
                for (uint32_t v = 0; v < a.d; ++v)
                    lab += (v ? "," : "") + std::to_string(dig.e[v]);
                lab += ")";
            }
            grouped[a.delta[s][w]].push_back(lab);
        }
        for (auto& [t, labs] : grouped) {
            std::string joined;
            for (auto& l : labs) joined += (joined.empty() ? "" : ",") + l;
            out << "  q" << s << " -> q" << t << " [label=\"" << joined << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string signed_to_json(const SignedDfa& s) {
    json j;
    j["kind"] = "signed";
    j["p"] = s.p;
    j["d"] = s.d;
    json orth = json::array();
    for (uint32_t mask = 0; mask < s.orthants.size(); ++mask) {
        json o;
        json signs = json::array();
        for (uint32_t v = 0; v < s.d; ++v) signs.push_back((mask >> v) & 1 ? -1 : 1);
        o["signs"] = std::move(signs);
        o["dfa"] = json::parse(dfa_to_json(s.orthants[mask]));
        orth.push_back(std::move(o));
    }
    j["orthants"] = std::move(orth);
    return j.dump();
}

SignedDfa signed_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("kind").get<std::string>() != "signed") throw input_error("expected a signed container");
    uint32_t p = j.at("p").get<uint32_t>();
    uint32_t d = j.at("d").get<uint32_t>();
    std::vector<Dfa> orth(1u << d);
    std::vector<bool> seen(1u << d, false);
    for (auto& o : j.at("orthants")) {
        uint32_t mask = 0;
        auto& signs = o.at("signs");
        if (signs.size() != d) throw input_error("signed json: bad sign vector");
        for (uint32_t v = 0; v < d; ++v)
            if (signs.at(v).get<int>() < 0) mask |= 1u << v;
        orth[mask] = dfa_from_json(o.at("dfa").dump());
        seen[mask] = true;
    }
    for (bool b : seen)
        if (!b) throw input_error("signed json: missing orthant");
    return assemble_signed(p, d, std::move(orth));
}

std::string group_to_json(const GroupAutomaticSet& g) {
    json j;
    j["kind"] = "group";
    j["generators"] = g.spec.labels;
    if (g.spec.target) {
        json t;
        t["free_rank"] = g.spec.target->free_rank;
        t["torsion"] = g.spec.target->torsion;
        t["images"] = g.spec.target->images;
        j["target"] = std::move(t);
    }
    j["preimage"] = json::parse(signed_to_json(g.preimage));
    return j.dump();
}

GroupAutomaticSet group_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("kind").get<std::string>() != "group") throw input_error("expected a group container");
    GroupSpec spec;
    spec.labels = j.at("generators").get<std::vector<std::string>>();
    spec.m = (uint32_t)spec.labels.size();
    if (j.contains("target")) {
        GroupSpec::Target t;
        t.free_rank = j["target"].at("free_rank").get<uint32_t>();
        t.torsion = j["target"].at("torsion").get<std::vector<uint64_t>>();
        t.images = j["target"].at("images").get<std::vector<std::vector<int64_t>>>();
        spec.target = std::move(t);
    }
    SignedDfa pre = signed_from_json(j.at("preimage").dump());
    return group_pullback(std::move(spec), std::move(pre));
}

// ---------------------------------------------------------------------------

Problem parse_problem(const std::string& text, FieldPtr field_hint) {
    std::istringstream in(text);
    std::string line, section;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        line = trim_copy(line);
        // strip comments
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim_copy(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim_copy(line.substr(1, line.size() - 2));
            if (!sections.count(section)) order.push_back(section);
            sections[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw input_error("problem: expected key = value: " + line);
        sections[section][trim_copy(line.substr(0, eq))] = trim_copy(line.substr(eq + 1));
    }

    Problem prob;
    prob.field = field_hint;
    if (sections.count("field") && sections["field"].count("spec"))
        prob.field = Field::make(parse_field_spec(sections["field"]["spec"]));
    if (!prob.field) throw input_error("problem: no [field] spec and no --field given");
    const FieldPtr& K = prob.field;

    std::vector<std::pair<uint64_t, LinearRecurrence>> recs;
    for (const std::string& sec : order) {
        if (sec.rfind("recurrence", 0) != 0) continue;
        uint64_t index = std::stoull(trim_copy(sec.substr(10)));
        auto& kv = sections[sec];
        LinearRecurrence rec;
        rec.K = K;
        for (auto& c : split_list(kv.at("coeffs")))
            rec.coeffs.push_back(parse_field_element(K, trim_copy(c)));
        for (auto& c : split_list(kv.at("init")))
            rec.init.push_back(parse_field_element(K, trim_copy(c)));
        recs.push_back({index, std::move(rec)});
    }
    std::sort(recs.begin(), recs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, rec] : recs) prob.recurrences.push_back(std::move(rec));

    if (sections.count("equation")) {
        SUnitProblem su;
        su.K = K;
        for (auto& c : split_list(sections["equation"].at("coeffs")))
            su.coeffs.push_back(parse_field_element(K, trim_copy(c)));
        if (!sections.count("generators"))
            throw input_error("problem: [equation] requires [generators]");
        for (uint32_t g = 1;; ++g) {
            std::string key = "g" + std::to_string(g);
            if (!sections["generators"].count(key)) break;
            su.generators.push_back(parse_field_element(K, sections["generators"][key]));
        }
        if (su.generators.empty()) throw input_error("problem: no generators g1..gm");
        prob.sunit = std::move(su);
    }

    if (sections.count("matrices")) {
        MatrixProblem mp;
        mp.K = K;
        auto& kv = sections["matrices"];
        mp.dim = kv.count("dim") ? (uint32_t)std::stoul(kv.at("dim")) : 1;
        for (uint32_t c = 1;; ++c) {
            std::string key = "C" + std::to_string(c);
            if (!kv.count(key)) break;
            std::string lit = kv[key];
            // [[e,e],[e,e]]
            lit = trim_copy(lit);
            if (lit.size() < 4 || lit.front() != '[' || lit.back() != ']')
                throw input_error("problem: matrix literal must be [[..],[..]]");
            auto rows = split_list(lit.substr(1, lit.size() - 2));
            KMatrix M;
            for (auto& r : rows) {
                std::string rr = trim_copy(r);
                if (rr.front() != '[' || rr.back() != ']')
                    throw input_error("problem: matrix row must be [..]");
                std::vector<FieldElement> row;
                for (auto& ent : split_list(rr.substr(1, rr.size() - 2)))
                    row.push_back(parse_field_element(K, trim_copy(ent)));
                if (row.size() != mp.dim) throw input_error("problem: matrix row arity mismatch");
                M.push_back(std::move(row));
            }
            if (M.size() != mp.dim) throw input_error("problem: matrix size mismatch");
            mp.gens.push_back(std::move(M));
        }
        if (!sections.count("variety")) throw input_error("problem: [matrices] requires [variety]");
        if (mp.dim > 2 && mp.dim * mp.dim > Exp::kMaxVars)
            throw resource_error("problem: variety polynomials support dim^2 <= 8 variables");
        std::vector<std::string> xnames;
        for (uint32_t i = 1; i <= mp.dim; ++i)
            for (uint32_t jj = 1; jj <= mp.dim; ++jj)
                xnames.push_back("x" + std::to_string(i) + std::to_string(jj));
        for (uint32_t pidx = 1;; ++pidx) {
            std::string key = "P" + std::to_string(pidx);
            if (!sections["variety"].count(key)) break;
            mp.variety.push_back(
                parse_tpoly(K, mp.dim * mp.dim, sections["variety"][key], xnames));
        }
        if (mp.variety.empty()) throw input_error("problem: no variety polynomials P1..Pr");
        prob.matrix = std::move(mp);
    }
    return prob;
}

std::string bound_chain_to_json(const BoundChain& c) {
    json j;
    j["p"] = c.params.p;
    j["d"] = c.params.d;
    j["H"] = c.params.H;
    j["s"] = c.params.s;
    j["r"] = c.params.r;
    j["N2"] = c.params.N2;
    j["N5"] = c.params.N5;
    j["s_alg"] = c.params.s_alg;
    j["t_alg"] = c.params.t_alg;
    j["M"] = c.M.to_decimal();
    j["N0"] = c.N0.to_decimal();
    j["N1"] = c.N1.to_string();
    j["N3"] = c.N3.to_decimal();
    j["N4"] = c.N4.to_decimal();
    j["n"] = c.n.to_decimal();
    j["N6"] = c.N6.to_decimal();
    j["Mprime"] = c.Mprime.to_decimal();
    j["k0"] = c.k0.to_decimal();
    j["N7"] = c.N7.to_string();
    j["N8"] = c.N8.to_string();
    j["N9"] = c.N9.to_string();
    j["log2_N9"] = c.N9.log2_string();
    return j.dump(2);
}

}  // namespace zca
