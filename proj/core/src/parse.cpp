#include <cctype>
#include <optional>
#include <sstream>

#include "eqh/catalog.hpp"

namespace eqh {

namespace {

[[noreturn]] void syntax_error(int line, int col, const std::string& what) {
    fail(Errc::SyntaxError,
         "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what);
}

[[noreturn]] void semantic_error(int line, const std::string& what) {
    fail(Errc::SemanticError, "line " + std::to_string(line) + ": " + what);
}

// ---------------------------------------------------------------- lexer --

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Slash,
                 Question, At, Colon, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    int col;
};

class Lexer {
  public:
    Lexer(const std::string& s, int line, int col0) : s_(s), line_(line), col0_(col0) {
        advance();
    }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    void expect(Tok kind, const std::string& what) {
        if (tok_.kind != kind) syntax_error(line_, tok_.col, "expected " + what);
    }
    int line() const { return line_; }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        tok_.col = col0_ + static_cast<int>(pos_);
        if (pos_ >= s_.size()) {
            tok_ = {Tok::End, "", tok_.col};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            tok_ = {Tok::Int, s_.substr(start, pos_ - start), tok_.col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Tok::Ident, s_.substr(start, pos_ - start), tok_.col};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Tok::Plus, "+", tok_.col}; return;
            case '-': tok_ = {Tok::Minus, "-", tok_.col}; return;
            case '*': tok_ = {Tok::Star, "*", tok_.col}; return;
            case '^': tok_ = {Tok::Caret, "^", tok_.col}; return;
            case '(': tok_ = {Tok::LParen, "(", tok_.col}; return;
            case ')': tok_ = {Tok::RParen, ")", tok_.col}; return;
            case '/': tok_ = {Tok::Slash, "/", tok_.col}; return;
            case '?': tok_ = {Tok::Question, "?", tok_.col}; return;
            case '@': tok_ = {Tok::At, "@", tok_.col}; return;
            case ':': tok_ = {Tok::Colon, ":", tok_.col}; return;
            case ',': tok_ = {Tok::Comma, ",", tok_.col}; return;
            default:
                syntax_error(line_, tok_.col, std::string("unexpected character '") + c + "'");
        }
    }

    std::string s_;
    int line_;
    int col0_;
    size_t pos_ = 0;
    Token tok_{Tok::End, "", 0};
};

// ----------------------------------------------------- expression parser --

// A parsed expression: scalar part plus per-basis-vector parts.
struct Value {
    SymElem scalar;
    std::map<size_t, SymElem> coords;

    bool is_scalar() const { return coords.empty(); }
};

class ExprParser {
  public:
    ExprParser(Lexer& lex, const BasisSpec& basis, const RingConfig& cfg)
        : lex_(lex), basis_(basis), cfg_(cfg) {}

    Value parse() {
        Value v = expr();
        lex_.expect(Tok::End, "end of expression");
        return v;
    }

  private:
    Value expr() {
        Value acc = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Value rhs = term();
            acc = add(acc, minus ? negate(rhs) : rhs);
        }
        return acc;
    }

    Value term() {
        Value acc = factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc = mul(acc, factor());
        }
        return acc;
    }

    Value factor() {
        Value base = primary();
        if (lex_.peek().kind == Tok::Caret) {
            Token caret = lex_.take();
            int e = exponent();
            if (!base.is_scalar())
                semantic_error(lex_.line(), "basis labels cannot be raised to powers");
            Value out;
            out.scalar = power(base.scalar, e, caret.col);
            return out;
        }
        return base;
    }

    int exponent() {
        bool neg = false;
        bool parens = false;
        if (lex_.peek().kind == Tok::LParen) {
            parens = true;
            lex_.take();
        }
        if (lex_.peek().kind == Tok::Minus) {
            neg = true;
            lex_.take();
        }
        Token t = lex_.take();
        if (t.kind != Tok::Int) syntax_error(lex_.line(), t.col, "integer exponent");
        if (lex_.peek().kind == Tok::Slash)
            syntax_error(lex_.line(), lex_.peek().col, "exponents are integers");
        if (parens) {
            lex_.expect(Tok::RParen, "')'");
            lex_.take();
        }
        int v = std::stoi(t.text);
        return neg ? -v : v;
    }

    Value primary() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Tok::Int: {
                Rat c(t.text);
                if (lex_.peek().kind == Tok::Slash) {
                    lex_.take();
                    Token den = lex_.take();
                    if (den.kind != Tok::Int)
                        syntax_error(lex_.line(), den.col, "integer denominator");
                    c = make_rat(Int(t.text), Int(den.text));
                    if (cfg_.coeff_domain == CoeffDomain::Integer && !is_integral(c))
                        semantic_error(lex_.line(),
                                       "rational literal in an integer-coefficient ring");
                }
                Value v;
                v.scalar = SymElem::constant(cfg_, c);
                return v;
            }
            case Tok::Ident: {
                if (t.text == "q") return scalar_monomial(1, 0, t.col);
                if (t.text == "u") return scalar_monomial(0, 1, t.col);
                if (t.text == "r") {
                    Value v;
                    v.scalar = SymElem::variable(cfg_, "r");
                    return v;
                }
                if (auto idx = basis_.find(t.text)) {
                    Value v;
                    v.coords[*idx] = SymElem::constant(cfg_, 1);
                    return v;
                }
                semantic_error(lex_.line(), "unknown symbol '" + t.text + "'");
            }
            case Tok::Question: {
                Token name = lex_.take();
                if (name.kind != Tok::Ident)
                    syntax_error(lex_.line(), name.col, "unknown name after '?'");
                Value v;
                v.scalar = SymElem::variable(cfg_, name.text);
                return v;
            }
            case Tok::Minus: {
                return negate(factor());
            }
            case Tok::LParen: {
                Value v = expr();
                lex_.expect(Tok::RParen, "')'");
                lex_.take();
                return v;
            }
            default:
                syntax_error(lex_.line(), t.col, "unexpected token '" + t.text + "'");
        }
    }

    Value scalar_monomial(int a, int b, int col) {
        if (a != 0 && !cfg_.has_q)
            semantic_error(lex_.line(), "q used in a q-free ring");
        Value v;
        v.scalar = SymElem::from_ring(RingElem::monomial(cfg_, 1, a, b));
        (void)col;
        return v;
    }

    SymElem power(const SymElem& base, int e, int col) {
        if (e >= 0) return base.pow(e);
        // Negative powers: only single invertible ring monomials (q powers,
        // or u when localized).
        if (base.is_numeric()) {
            RingElem r = base.ring_value();
            if (r.is_unit() || (r.terms().size() == 1 && cfg_.has_q &&
                                r.terms().begin()->first.b == 0)) {
                RingElem inv = RingElem::monomial(
                    cfg_, Rat(1) / r.terms().begin()->second,
                    -r.terms().begin()->first.a, -r.terms().begin()->first.b);
                if (cfg_.coeff_domain == CoeffDomain::Integer &&
                    !is_integral(inv.terms().begin()->second))
                    semantic_error(lex_.line(), "negative power is not integral");
                return SymElem::from_ring(inv).pow(-e);
            }
        }
        syntax_error(lex_.line(), col, "negative exponent on a non-invertible factor");
    }

    Value add(const Value& x, const Value& y) {
        Value out = x;
        out.scalar += y.scalar;
        for (const auto& [k, c] : y.coords) {
            auto it = out.coords.find(k);
            if (it == out.coords.end())
                out.coords[k] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) out.coords.erase(it);
            }
        }
        return out;
    }

    Value negate(const Value& x) {
        Value out;
        out.scalar = -x.scalar;
        for (const auto& [k, c] : x.coords) out.coords[k] = -c;
        return out;
    }

    Value mul(const Value& x, const Value& y) {
        if (!x.is_scalar() && !y.is_scalar())
            semantic_error(lex_.line(), "basis labels cannot be multiplied");
        const Value& scalar = x.is_scalar() ? x : y;
        const Value& other = x.is_scalar() ? y : x;
        Value out;
        out.scalar = scalar.scalar * other.scalar;
        for (const auto& [k, c] : other.coords) {
            SymElem prod = scalar.scalar * c;
            if (!prod.is_zero()) out.coords[k] = prod;
        }
        return out;
    }

    Lexer& lex_;
    const BasisSpec& basis_;
    const RingConfig& cfg_;
};

// ------------------------------------------------------- section parsing --

struct Line {
    int number;
    std::string text;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string line;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = line.find_last_not_of(" \t\r");
        out.push_back({number, line.substr(begin, end - begin + 1)});
    }
    return out;
}

struct RawSection {
    std::string name;
    int line;
    std::vector<std::pair<std::string, std::pair<std::string, int>>> assigns;
    std::vector<std::pair<std::string, std::pair<std::string, int>>> entries;
};

std::vector<RawSection> split_sections(const std::string& text) {
    std::vector<RawSection> out;
    for (const auto& line : significant_lines(text)) {
        if (line.text.front() == '[') {
            if (line.text.back() != ']')
                syntax_error(line.number, 1, "unterminated section header");
            out.push_back({line.text.substr(1, line.text.size() - 2), line.number, {}, {}});
            continue;
        }
        if (out.empty())
            syntax_error(line.number, 1, "content before the first section header");
        auto arrow = line.text.find("->");
        auto equals = line.text.find('=');
        if (arrow != std::string::npos && (equals == std::string::npos || arrow < equals)) {
            std::string key = line.text.substr(0, arrow);
            size_t kend = key.find_last_not_of(" \t");
            key = key.substr(0, kend + 1);
            out.back().entries.push_back(
                {key, {line.text.substr(arrow + 2), line.number}});
        } else if (equals != std::string::npos) {
            std::string key = line.text.substr(0, equals);
            size_t kend = key.find_last_not_of(" \t");
            key = key.substr(0, kend + 1);
            std::string value = line.text.substr(equals + 1);
            size_t vbegin = value.find_first_not_of(" \t");
            value = vbegin == std::string::npos ? "" : value.substr(vbegin);
            out.back().assigns.push_back({key, {value, line.number}});
        } else {
            syntax_error(line.number, 1, "expected 'key = value' or 'label -> expression'");
        }
    }
    return out;
}

std::optional<std::string> find_assign(const RawSection& s, const std::string& key) {
    for (const auto& [k, v] : s.assigns)
        if (k == key) return v.first;
    return std::nullopt;
}

int parse_int(const std::string& text, int line, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        semantic_error(line, "bad integer for " + what + ": '" + text + "'");
    }
}

SymElem parse_scalar(const std::string& text, int line, const BasisSpec& basis,
                     const RingConfig& cfg) {
    Lexer lex(text, line, 1);
    ExprParser parser(lex, basis, cfg);
    Value v = parser.parse();
    if (!v.is_scalar()) semantic_error(line, "expected a scalar expression");
    return v.scalar;
}

} // namespace

SpaceSpec parse_space(const std::string& text) {
    auto sections = split_sections(text);
    if (sections.empty() || sections[0].name != "space")
        fail(Errc::SyntaxError, "line 1, col 1: the file must start with [space]");

    SpaceSpec spec;
    const RawSection& head = sections[0];
    if (auto id = find_assign(head, "id"))
        spec.id = *id;
    else
        semantic_error(head.line, "[space] needs an id");
    int q_degree = 0;
    if (auto q = find_assign(head, "q_degree"))
        q_degree = parse_int(*q, head.line, "q_degree");
    std::string coeffs = find_assign(head, "coeffs").value_or("integer");
    bool local = find_assign(head, "localized").value_or("false") == "true";
    spec.ring = RingConfig{q_degree != 0, q_degree,
                           coeffs == "rational" ? CoeffDomain::Rational
                                                : CoeffDomain::Integer,
                           local};
    try {
        spec.ring.validate();
    } catch (const Error& e) {
        semantic_error(head.line, e.what());
    }
    auto basis_text = find_assign(head, "basis");
    if (!basis_text) semantic_error(head.line, "[space] needs a basis");
    {
        Lexer lex(*basis_text, head.line, 1);
        while (lex.peek().kind != Tok::End) {
            Token label = lex.take();
            if (label.kind != Tok::Ident)
                syntax_error(head.line, label.col, "basis label");
            lex.expect(Tok::Colon, "':'");
            lex.take();
            bool neg = false;
            if (lex.peek().kind == Tok::Minus) {
                neg = true;
                lex.take();
            }
            Token deg = lex.take();
            if (deg.kind != Tok::Int) syntax_error(head.line, deg.col, "basis degree");
            spec.basis.labels.push_back(label.text);
            spec.basis.degrees.push_back((neg ? -1 : 1) * std::stoi(deg.text));
            if (lex.peek().kind == Tok::Comma) lex.take();
        }
    }
    try {
        spec.basis.validate();
    } catch (const Error& e) {
        semantic_error(head.line, e.what());
    }

    const size_t n = spec.basis.rank();
    auto empty_tmpl = [&] {
        return SymMatrix(n, std::vector<SymElem>(n, SymElem(spec.ring)));
    };

    auto parse_entries = [&](const RawSection& s, SymMatrix& tmpl) {
        for (const auto& [key, value] : s.entries) {
            auto col = spec.basis.find(key);
            if (!col) semantic_error(value.second, "unknown basis label '" + key + "'");
            Lexer lex(value.first, value.second, 1);
            ExprParser parser(lex, spec.basis, spec.ring);
            Value v;
            try {
                v = parser.parse();
            } catch (const Error& e) {
                if (e.code() == Errc::SyntaxError || e.code() == Errc::SemanticError)
                    throw;
                semantic_error(value.second, e.what());
            }
            if (!v.scalar.is_zero())
                semantic_error(value.second, "entry has a scalar part without a label");
            for (const auto& [l, c] : v.coords) tmpl[l][*col] = c;
        }
    };

    bool seen_seidel = false;
    for (size_t i = 1; i < sections.size(); ++i) {
        const RawSection& s = sections[i];
        if (s.name == "product") {
            spec.has_product = true;
            spec.unit_label = find_assign(s, "unit").value_or("e0");
            spec.gen_label = find_assign(s, "generator").value_or("e1");
            spec.product_tmpl = empty_tmpl();
            parse_entries(s, spec.product_tmpl);
            size_t unit, gen;
            try {
                unit = spec.basis.index_of(spec.unit_label);
                gen = spec.basis.index_of(spec.gen_label);
            } catch (const Error& e) {
                semantic_error(s.line, e.what());
            }
            spec.product_tmpl[gen][unit] = SymElem::constant(spec.ring, 1);
            for (size_t k = 0; k < n; ++k) {
                if (k == unit) continue;
                bool declared = false;
                for (const auto& [key, value] : s.entries)
                    if (spec.basis.find(key) == k) declared = true;
                if (!declared)
                    semantic_error(s.line, "missing product entry for " +
                                               spec.basis.labels[k]);
            }
        } else if (s.name == "seidel") {
            const bool inverse = find_assign(s, "role").value_or("forward") == "inverse";
            auto shift_text = find_assign(s, "shift");
            if (!shift_text) semantic_error(s.line, "[seidel] needs a shift");
            int shift = parse_int(*shift_text, s.line, "shift");
            if (inverse) {
                spec.inverse_shift = shift;
                spec.inverse_tmpl = empty_tmpl();
                parse_entries(s, spec.inverse_tmpl);
            } else {
                spec.maslov_shift = shift;
                spec.seidel_tmpl = empty_tmpl();
                parse_entries(s, spec.seidel_tmpl);
                seen_seidel = true;
            }
        } else if (s.name == "seeds") {
            for (const auto& [key, value] : s.assigns) {
                auto at = key.find('@');
                if (at == std::string::npos) {
                    spec.expr_seeds[key] =
                        parse_scalar(value.first, value.second, spec.basis, spec.ring);
                } else {
                    std::string name = key.substr(0, at);
                    int level = 0;
                    try {
                        level = std::stoi(key.substr(at + 1));
                    } catch (const std::exception&) {
                        semantic_error(value.second, "bad seed level in '" + key + "'");
                    }
                    SymElem v =
                        parse_scalar(value.first, value.second, spec.basis, spec.ring);
                    bool constant =
                        v.is_numeric() &&
                        (v.is_zero() || (v.ring_value().terms().size() == 1 &&
                                         v.ring_value().terms().begin()->first ==
                                             ExpKey{0, 0}));
                    if (!constant)
                        semantic_error(value.second, "level seed must be a constant");
                    Rat c = v.is_zero() ? Rat(0) : v.ring_value().coeff(0, 0);
                    spec.level_seeds[{name, level}] = c;
                }
            }
        } else if (s.name == "limit") {
            for (const auto& [key, value] : s.entries) {
                Lexer lex(value.first, value.second, 1);
                ExprParser parser(lex, spec.basis, spec.ring);
                Value v = parser.parse();
                if (!v.scalar.is_zero())
                    semantic_error(value.second, "limit vector has a scalar part");
                ModuleElem elem(spec.basis, spec.ring);
                for (const auto& [l, c] : v.coords) {
                    if (!c.is_numeric())
                        semantic_error(value.second, "limit vector must be numeric");
                    elem.set_coord(l, c.ring_value());
                }
                spec.limit_labels.push_back(key);
                spec.limit_basis.push_back(elem);
            }
        } else {
            syntax_error(s.line, 1, "unknown section [" + s.name + "]");
        }
    }
    if (!seen_seidel) fail(Errc::SemanticError, "missing [seidel] section");
    try {
        spec.validate();
    } catch (const Error& e) {
        if (e.code() == Errc::SemanticError) throw;
        fail(Errc::SemanticError, e.what());
    }
    return spec;
}

// ------------------------------------------------------------- renderer --

namespace {

std::string render_coeff_label(const SymElem& c, const std::string& label) {
    std::string s = c.str();
    if (s == "1") return label;
    if (s == "-1") return "-" + label;
    bool needs_parens = false;
    int depth = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] == ' ')
            needs_parens = true;
    }
    return needs_parens ? "(" + s + ")*" + label : s + "*" + label;
}

std::string render_column(const SymMatrix& tmpl, size_t col,
                          const BasisSpec& basis) {
    std::ostringstream os;
    bool first = true;
    for (size_t l = 0; l < basis.rank(); ++l) {
        if (tmpl[l][col].is_zero()) continue;
        std::string piece = render_coeff_label(tmpl[l][col], basis.labels[l]);
        if (first) {
            os << piece;
            first = false;
        } else if (piece.front() == '-') {
            os << " - " << piece.substr(1);
        } else {
            os << " + " << piece;
        }
    }
    return first ? "0" : os.str();
}

void render_matrix_section(std::ostringstream& os, const std::string& header,
                           const SymMatrix& tmpl, const BasisSpec& basis,
                           const std::vector<std::pair<std::string, std::string>>& assigns,
                           bool skip_zero_cols, std::optional<size_t> skip_col) {
    os << "[" << header << "]\n";
    for (const auto& [k, v] : assigns) os << k << " = " << v << "\n";
    for (size_t k = 0; k < basis.rank(); ++k) {
        if (skip_col && *skip_col == k) continue;
        bool zero = true;
        for (size_t l = 0; l < basis.rank(); ++l)
            if (!tmpl[l][k].is_zero()) zero = false;
        if (zero && skip_zero_cols) continue;
        os << basis.labels[k] << " -> " << render_column(tmpl, k, basis) << "\n";
    }
    os << "\n";
}

} // namespace

std::string render_space(const SpaceSpec& spec) {
    std::ostringstream os;
    os << "[space]\n";
    os << "id = " << spec.id << "\n";
    if (spec.ring.has_q) os << "q_degree = " << spec.ring.q_degree << "\n";
    os << "coeffs = "
       << (spec.ring.coeff_domain == CoeffDomain::Rational ? "rational" : "integer")
       << "\n";
    if (spec.ring.u_localized) os << "localized = true\n";
    os << "basis = ";
    for (size_t k = 0; k < spec.basis.rank(); ++k) {
        if (k) os << " ";
        os << spec.basis.labels[k] << ":" << spec.basis.degrees[k];
    }
    os << "\n\n";

    if (spec.has_product) {
        render_matrix_section(os, "product", spec.product_tmpl, spec.basis,
                              {{"unit", spec.unit_label},
                               {"generator", spec.gen_label}},
                              false, spec.basis.index_of(spec.unit_label));
    }
    render_matrix_section(os, "seidel", spec.seidel_tmpl, spec.basis,
                          {{"shift", std::to_string(spec.maslov_shift)}}, true,
                          std::nullopt);
    if (spec.inverse_shift) {
        render_matrix_section(os, "seidel", spec.inverse_tmpl, spec.basis,
                              {{"role", "inverse"},
                               {"shift", std::to_string(*spec.inverse_shift)}},
                              true, std::nullopt);
    }
    if (!spec.expr_seeds.empty() || !spec.level_seeds.empty()) {
        os << "[seeds]\n";
        for (const auto& [name, value] : spec.expr_seeds)
            os << name << " = " << value.str() << "\n";
        for (const auto& [nk, value] : spec.level_seeds)
            os << nk.first << "@" << nk.second << " = " << rat_to_string(value)
               << "\n";
        os << "\n";
    }
    if (!spec.limit_basis.empty()) {
        os << "[limit]\n";
        for (size_t k = 0; k < spec.limit_basis.size(); ++k)
            os << (k < spec.limit_labels.size() ? spec.limit_labels[k]
                                                : "g" + std::to_string(k))
               << " -> " << spec.limit_basis[k].str() << "\n";
        os << "\n";
    }
    return os.str();
}

} // namespace eqh
