#include "gint/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "gint/error.hpp"

namespace gint {
namespace {

const std::vector<std::string> kAtoms = {"Q8",    "H2",    "H16",   "H27",
                                         "H32",   "A4",    "Q8sZ3", "Z4sZ4",
                                         "E9sZ2", "D6xZ3", "Dic12"};

struct Token {
    enum class Type { word, number, lparen, rparen, cross, end };
    Type type = Type::end;
    std::string text;
    long long value = 0;
    int col = 0;  // 1-based
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        Token t;
        t.col = static_cast<int>(i) + 1;
        char c = text[i];
        if (c == '(') {
            t.type = Token::Type::lparen;
            t.text = "(";
            ++i;
        } else if (c == ')') {
            t.type = Token::Type::rparen;
            t.text = ")";
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.type = Token::Type::number;
            t.text = text.substr(i, j - i);
            t.value = std::stoll(t.text);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[j])))
                ++j;
            t.text = text.substr(i, j - i);
            t.type = t.text == "x" ? Token::Type::cross : Token::Type::word;
            i = j;
        } else {
            throw SyntaxError("unexpected character '" + std::string(1, c) + "'", 1, t.col,
                              "a name, number, 'x', or parenthesis");
        }
        out.push_back(t);
    }
    Token end;
    end.col = static_cast<int>(text.size()) + 1;
    out.push_back(end);
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    GroupSpec parse() {
        GroupSpec s = spec();
        if (cur().type != Token::Type::end)
            fail("trailing input '" + cur().text + "'", "end of input or 'x'");
        return s;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) const {
        throw SyntaxError(msg, 1, cur().col, expected);
    }

    GroupSpec spec() {
        GroupSpec first = term();
        if (cur().type != Token::Type::cross) return first;
        GroupSpec prod;
        prod.kind = GroupSpec::Kind::product;
        prod.children.push_back(std::move(first));
        while (cur().type == Token::Type::cross) {
            advance();
            prod.children.push_back(term());
        }
        return prod;
    }

    GroupSpec term() {
        if (cur().type != Token::Type::word) {
            if (cur().type == Token::Type::end) fail("input ended early", "a term");
            fail("expected a term, found '" + cur().text + "'",
                 "a named atom or constructor C/E/D/Dic");
        }
        const std::string word = cur().text;
        if (word == "C" || word == "E" || word == "D" || word == "Dic") {
            advance();
            return ctor(word);
        }
        if (std::find(kAtoms.begin(), kAtoms.end(), word) != kAtoms.end()) {
            GroupSpec s;
            s.kind = GroupSpec::Kind::named;
            s.name = word;
            advance();
            return s;
        }
        // common slip: D6 for the 6-element dihedral group
        std::string hint = "one of Q8, H2, H16, H27, H32, A4, Q8sZ3, Z4sZ4, E9sZ2, D6xZ3, "
                           "Dic12, or a constructor C/E/D/Dic";
        if (word.size() > 1 && (word[0] == 'C' || word[0] == 'E' || word[0] == 'D') &&
            std::all_of(word.begin() + 1, word.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            hint = std::string(1, word[0]) + "(" + word.substr(1) + ")";
        fail("unknown name '" + word + "'", hint);
    }

    GroupSpec ctor(const std::string& name) {
        if (cur().type != Token::Type::lparen)
            fail("constructor " + name + " needs parentheses", "'('");
        advance();
        GroupSpec s;
        if (name == "Dic") {
            s.kind = GroupSpec::Kind::dicyclic;
            s.children.push_back(spec());
        } else {
            if (cur().type != Token::Type::number)
                fail(name + " takes an integer argument", "an integer");
            s.kind = name == "C"   ? GroupSpec::Kind::cyclic
                     : name == "E" ? GroupSpec::Kind::elementary
                                   : GroupSpec::Kind::dihedral;
            s.number = cur().value;
            advance();
        }
        if (cur().type != Token::Type::rparen)
            fail("unclosed " + name + "(...)", "')'");
        advance();
        return s;
    }
};

constexpr long long kSpecOrderCap = 2048;  // matches the group table cap

// E(q): q = p^m for one prime p; the factor list is m copies of p
std::vector<int> elementary_orders(long long q) {
    if (q < 2) throw InvalidArgument("E argument must be a prime power >= 2, got " +
                                     std::to_string(q));
    if (q > kSpecOrderCap)
        throw InvalidArgument("E argument exceeds the order cap of " +
                              std::to_string(kSpecOrderCap));
    long long p = 0;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;  // q itself is prime
    std::vector<int> orders;
    long long rest = q;
    while (rest > 1) {
        if (rest % p != 0)
            throw InvalidArgument("E argument must be a prime power, got " + std::to_string(q));
        rest /= p;
        orders.push_back(static_cast<int>(p));
    }
    return orders;
}

bool is_abelian_leaf(const GroupSpec& s) {
    return s.kind == GroupSpec::Kind::cyclic || s.kind == GroupSpec::Kind::elementary;
}

void append_abelian_orders(const GroupSpec& s, std::vector<int>& orders) {
    if (s.kind == GroupSpec::Kind::cyclic) {
        if (s.number < 1)
            throw InvalidArgument("C argument must be >= 1, got " + std::to_string(s.number));
        if (s.number > kSpecOrderCap)
            throw InvalidArgument("C argument exceeds the order cap of " +
                                  std::to_string(kSpecOrderCap));
        orders.push_back(static_cast<int>(s.number));
    } else {
        for (int p : elementary_orders(s.number)) orders.push_back(p);
    }
}

Group build_factor(const GroupSpec& s);

Group build_product(const std::vector<GroupSpec>& factors) {
    // collapse maximal runs of abelian leaves so labels stay u, v, w, ...
    std::vector<Group> parts;
    size_t i = 0;
    while (i < factors.size()) {
        if (is_abelian_leaf(factors[i])) {
            std::vector<int> orders;
            while (i < factors.size() && is_abelian_leaf(factors[i]))
                append_abelian_orders(factors[i++], orders);
            parts.push_back(make_abelian(orders));
        } else {
            parts.push_back(build_factor(factors[i++]));
        }
    }
    Group G = std::move(parts.front());
    for (size_t j = 1; j < parts.size(); ++j) G = direct_product(G, parts[j]);
    return G;
}

Group build_factor(const GroupSpec& s) {
    switch (s.kind) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::elementary: {
            std::vector<int> orders;
            append_abelian_orders(s, orders);
            return make_abelian(orders);
        }
        case GroupSpec::Kind::dihedral:
            if (s.number > kSpecOrderCap)
                throw InvalidArgument("D argument exceeds the order cap of " +
                                      std::to_string(kSpecOrderCap));
            return make_dihedral(static_cast<int>(s.number));
        case GroupSpec::Kind::dicyclic:
            return generalized_dicyclic(build_spec(s.children.front()));
        case GroupSpec::Kind::named:
            return named_group(s.name);
        case GroupSpec::Kind::product:
            return build_product(s.children);
    }
    throw InvalidArgument("unreachable spec kind");
}

}  // namespace

GroupSpec parse_spec(const std::string& text) { return Parser(text).parse(); }

std::string print_spec(const GroupSpec& spec) {
    switch (spec.kind) {
        case GroupSpec::Kind::cyclic:
            return "C(" + std::to_string(spec.number) + ")";
        case GroupSpec::Kind::elementary:
            return "E(" + std::to_string(spec.number) + ")";
        case GroupSpec::Kind::dihedral:
            return "D(" + std::to_string(spec.number) + ")";
        case GroupSpec::Kind::dicyclic:
            return "Dic(" + print_spec(spec.children.front()) + ")";
        case GroupSpec::Kind::named:
            return spec.name;
        case GroupSpec::Kind::product: {
            std::string out;
            for (size_t i = 0; i < spec.children.size(); ++i) {
                if (i) out += " x ";
                out += print_spec(spec.children[i]);
            }
            return out;
        }
    }
    return "";
}

Group build_spec(const GroupSpec& spec) { return build_factor(spec); }

Group build_spec(const std::string& text) { return build_spec(parse_spec(text)); }

const std::vector<std::string>& spec_atom_names() { return kAtoms; }

}  // namespace gint
