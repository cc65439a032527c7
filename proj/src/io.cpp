#include <vertexflow/io.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include <vertexflow/errors.hpp>

namespace vertexflow {

int TomlDocument::line_of(const std::string &path) const
{
    auto it = lines.find(path);
    return it == lines.end() ? 0 : it->second;
}

namespace {

class TomlParser {
public:
    explicit TomlParser(const std::string &text) : s_(text) {}

    TomlDocument parse()
    {
        TomlDocument doc;
        std::vector<std::string> table;
        while (true) {
            skip_blank_lines();
            if (at_end()) break;
            if (peek() == '[') {
                const int header_line = line_;
                get();
                if (peek() == '[') fail("arrays of tables are not supported");
                table = parse_key_path(']');
                expect(']');
                end_of_line();
                Json *node = descend(doc.root, table);
                if (!node->is_object()) fail("table '" + join(table) + "' redefines a value");
                doc.lines.emplace(join(table), header_line);
                continue;
            }
            const int key_line = line_;
            std::vector<std::string> key = parse_key_path('=');
            expect('=');
            skip_ws();
            Json value = parse_value();
            end_of_line();
            std::vector<std::string> full = table;
            full.insert(full.end(), key.begin(), key.end());
            const std::string leaf = full.back();
            full.pop_back();
            Json *parent = descend(doc.root, full);
            if (parent->contains(leaf)) {
                line_ = key_line;
                fail("duplicate key '" + leaf + "'");
            }
            (*parent)[leaf] = std::move(value);
            full.push_back(leaf);
            doc.lines[join(full)] = key_line;
        }
        return doc;
    }

private:
    const std::string &s_;
    std::size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ConfigError("line " + std::to_string(line_) + ": " + msg);
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get()
    {
        if (at_end()) fail("unexpected end of input");
        const char c = s_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }
    void expect(char c)
    {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    void skip_ws()
    {
        while (peek() == ' ' || peek() == '\t') get();
    }
    void skip_comment()
    {
        if (peek() == '#')
            while (!at_end() && peek() != '\n') get();
    }
    void skip_blank_lines()
    {
        while (!at_end()) {
            skip_ws();
            skip_comment();
            if (peek() == '\n' || peek() == '\r') {
                get();
            } else {
                break;
            }
        }
    }
    // whitespace, comments and newlines inside arrays
    void skip_space_multiline()
    {
        while (!at_end()) {
            skip_ws();
            skip_comment();
            if (peek() == '\n' || peek() == '\r') {
                get();
            } else {
                break;
            }
        }
    }
    void end_of_line()
    {
        skip_ws();
        skip_comment();
        if (peek() == '\r') get();
        if (!at_end() && peek() != '\n') fail("unexpected text after value");
        if (!at_end()) get();
    }

    static std::string join(const std::vector<std::string> &parts)
    {
        std::string out;
        for (const auto &p : parts) out += (out.empty() ? "" : ".") + p;
        return out;
    }

    std::vector<std::string> parse_key_path(char terminator)
    {
        std::vector<std::string> parts;
        while (true) {
            skip_ws();
            if (peek() == '"') {
                parts.push_back(parse_basic_string());
            } else if (peek() == '\'') {
                parts.push_back(parse_literal_string());
            } else {
                std::string k;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-') k += get();
                if (k.empty()) fail("expected a key");
                parts.push_back(k);
            }
            skip_ws();
            if (peek() == '.') {
                get();
                continue;
            }
            if (peek() != terminator) fail(std::string("expected '") + terminator + "' after key");
            return parts;
        }
    }

    Json *descend(Json &root, const std::vector<std::string> &path)
    {
        Json *node = &root;
        for (const auto &p : path) {
            if (!node->is_object()) fail("'" + p + "' is nested under a non-table value");
            if (!node->contains(p)) (*node)[p] = Json::object();
            node = &(*node)[p];
        }
        return node;
    }

    std::string parse_basic_string()
    {
        get(); // opening quote
        std::string out;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            char c = get();
            if (c == '"') return out;
            if (c != '\\') {
                out += c;
                continue;
            }
            const char e = get();
            switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: fail(std::string("unsupported escape \\") + e);
            }
        }
    }

    std::string parse_literal_string()
    {
        get();
        std::string out;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = get();
            if (c == '\'') return out;
            out += c;
        }
    }

    Json parse_value()
    {
        skip_ws();
        const char c = peek();
        if (c == '"') return parse_basic_string();
        if (c == '\'') return parse_literal_string();
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        if (s_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            return true;
        }
        if (s_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            return false;
        }
        return parse_number();
    }

    Json parse_number()
    {
        std::string tok;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' || peek() == '.' ||
               peek() == '_')
            tok += get();
        if (tok.empty()) fail("expected a value");
        std::string clean;
        for (char ch : tok)
            if (ch != '_') clean += ch;
        const bool is_float = clean.find_first_of(".eE") != std::string::npos;
        try {
            std::size_t used = 0;
            if (is_float) {
                const double v = std::stod(clean, &used);
                if (used != clean.size()) throw std::invalid_argument(clean);
                return v;
            }
            const long long v = std::stoll(clean, &used);
            if (used != clean.size()) throw std::invalid_argument(clean);
            return v;
        } catch (const std::logic_error &) {
            fail("invalid value '" + tok + "'");
        }
    }

    Json parse_array()
    {
        get();
        Json arr = Json::array();
        while (true) {
            skip_space_multiline();
            if (peek() == ']') {
                get();
                return arr;
            }
            arr.push_back(parse_value());
            skip_space_multiline();
            if (peek() == ',') {
                get();
                continue;
            }
            if (peek() != ']') fail("expected ',' or ']' in array");
        }
    }

    Json parse_inline_table()
    {
        get();
        Json obj = Json::object();
        skip_ws();
        if (peek() == '}') {
            get();
            return obj;
        }
        while (true) {
            std::vector<std::string> key = parse_key_path('=');
            expect('=');
            skip_ws();
            Json v = parse_value();
            Json *parent = &obj;
            for (std::size_t i = 0; i + 1 < key.size(); ++i) {
                if (!parent->contains(key[i])) (*parent)[key[i]] = Json::object();
                parent = &(*parent)[key[i]];
            }
            if (parent->contains(key.back())) fail("duplicate key '" + key.back() + "'");
            (*parent)[key.back()] = std::move(v);
            skip_ws();
            if (peek() == ',') {
                get();
                continue;
            }
            if (peek() == '}') {
                get();
                return obj;
            }
            fail("expected ',' or '}' in inline table");
        }
    }
};

} // namespace

TomlDocument parse_toml(const std::string &text) { return TomlParser(text).parse(); }

std::string gauss_string(const GaussRational &z) { return z.to_string(); }

Json to_json(const QSeries &s)
{
    Json out = Json::array();
    for (const auto &[e, c] : s.terms()) {
        const GaussRational ex = e + s.offset();
        out.push_back(Json{{"re_exp", to_pq_string(ex.re())},
                           {"im_exp", to_pq_string(ex.im())},
                           {"re_coeff", to_pq_string(c.re())},
                           {"im_coeff", to_pq_string(c.im())}});
    }
    return out;
}

QSeries qseries_from_json(const Json &j, const Rational &order)
{
    QSeries out(order);
    for (const auto &t : j) {
        out.add_term(GaussRational(parse_rational(t.at("re_exp").get<std::string>()),
                                   parse_rational(t.at("im_exp").get<std::string>())),
                     GaussRational(parse_rational(t.at("re_coeff").get<std::string>()),
                                   parse_rational(t.at("im_coeff").get<std::string>())));
    }
    return out;
}

Json to_json(const EvenLattice &lattice, const GradedVector &v)
{
    Json out = Json::array();
    for (const auto &[b, c] : v.terms()) {
        Json fock = Json::array();
        for (const auto &f : b.fock.factors()) fock.push_back(Json::array({f.mode, f.index + 1}));
        Json point = Json::array();
        for (const auto &x : lattice.coords(b.point)) point.push_back(to_pq_string(x));
        out.push_back(Json{{"fock", fock}, {"point", point}, {"coeff", gauss_string(c)}});
    }
    return out;
}

GradedVector graded_vector_from_json(const EvenLattice &lattice, const Json &j)
{
    if (!j.is_array()) throw ConfigError("graded vector must be an array of terms");
    GradedVector out;
    for (const auto &t : j) {
        if (!t.is_object() || !t.contains("fock") || !t.contains("point") || !t.contains("coeff")) {
            throw ConfigError("graded vector term needs fock, point and coeff");
        }
        std::vector<FockFactor> factors;
        for (const auto &f : t.at("fock")) {
            if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer()) {
                throw ConfigError("fock factor must be [mode, index]");
            }
            const int mode = f[0].get<int>(), index = f[1].get<int>();
            if (mode < 1 || index < 1 || static_cast<std::size_t>(index) > lattice.rank()) {
                throw ConfigError("fock factor out of range");
            }
            factors.push_back(FockFactor{mode, index - 1});
        }
        RatVector coords;
        for (const auto &x : t.at("point")) coords.push_back(parse_rational(x.get<std::string>()));
        if (coords.size() != lattice.rank()) throw ConfigError("point has the wrong rank");
        out.add(BasisVector{FockMonomial(std::move(factors)), lattice.point(coords)},
                parse_gauss(t.at("coeff").get<std::string>()));
    }
    return out;
}

std::string spectrum_csv(const std::vector<SpectrumReport> &reports)
{
    std::ostringstream os;
    os << "module,level,re_mu,im_mu,mult,jordan_max\n";
    for (const auto &r : reports) {
        for (const auto &e : r.entries) {
            os << r.coset << ',' << to_pq_string(e.level) << ',' << to_pq_string(e.mu.re()) << ','
               << to_pq_string(e.mu.im()) << ',' << e.multiplicity << ',' << e.jordan_max << '\n';
        }
    }
    return os.str();
}

std::string jacobi_csv(const std::vector<JacobiCoeffs> &tables)
{
    std::ostringstream os;
    os << "module,n,r,count\n";
    for (const auto &t : tables) {
        for (const auto &[key, c] : t.table) os << t.module << ',' << key.first << ',' << key.second << ',' << c << '\n';
    }
    return os.str();
}

Json to_json(const IdentityReport &r)
{
    return Json{{"name", r.name},
                {"instances_tested", r.instances_tested},
                {"passes", r.passes},
                {"cutoff_qualified", r.cutoff_qualified}};
}

Json to_json(const EvenLattice &lattice, const ZhuQuotient &q)
{
    Json reps = Json::array();
    for (const auto &b : q.representatives) reps.push_back(to_json(lattice, GradedVector(b)).at(0));
    return Json{{"d", to_pq_string(q.d)},
                {"d_gen", to_pq_string(q.d_gen)},
                {"dim_upper_bound", q.dim_upper_bound},
                {"representatives", reps},
                {"products_outside_cutoff", q.products_outside_cutoff},
                {"associativity_triples", q.associativity_triples},
                {"associativity_passes", q.associativity_passes},
                {"unit_ok", q.unit_ok}};
}

std::string fnv1a_hex(const std::string &bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace vertexflow
