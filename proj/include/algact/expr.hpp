#pragma once

#include <cctype>

#include "algact/group_ring.hpp"

namespace algact {

namespace detail {

// Recursive-descent parser for group-ring expressions over the generator
// labels of a descriptor:   expr   := term (('+'|'-') term)*
//                           term   := atom atom*              (juxtaposition)
//                           atom   := integer | label ('^' int)? | '(' expr ')'
// "e" is the identity. Examples: "2e-g", "4e-a-a^-1-b-b^-1", "3e+(e-a-a^2)b".
class ExprParser {
public:
    ExprParser(const GroupDescriptor& G, const std::string& src) : G_(G), s_(src) {
        labels_ = G.generator_labels();
    }

    FinSupp<std::int64_t> parse() {
        auto v = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) throw config_error("trailing input in expression: " + s_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    std::int64_t parse_int() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw config_error("expected integer in expression: " + s_);
        std::int64_t v = std::stoll(s_.substr(start, pos_ - start));
        return neg ? -v : v;
    }

    FinSupp<std::int64_t> parse_expr() {
        FinSupp<std::int64_t> acc(G_);
        bool neg = eat('-');
        acc += sign(parse_term(), neg);
        while (true) {
            if (eat('+')) acc += parse_term();
            else if (eat('-')) acc += sign(parse_term(), true);
            else break;
        }
        return acc;
    }

    static FinSupp<std::int64_t> sign(FinSupp<std::int64_t> v, bool neg) { return neg ? -v : v; }

    FinSupp<std::int64_t> parse_term() {
        FinSupp<std::int64_t> acc = parse_atom();
        while (true) {
            char c = peek();
            if (c == '*' || c == '.') { ++pos_; acc = convolve(acc, parse_atom()); continue; }
            if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                (std::isalpha(static_cast<unsigned char>(c)))) {
                acc = convolve(acc, parse_atom());
                continue;
            }
            break;
        }
        return acc;
    }

    FinSupp<std::int64_t> parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto v = parse_expr();
            if (!eat(')')) throw config_error("missing ')' in expression: " + s_);
            return maybe_power_of(v);
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return delta<std::int64_t>(G_, identity(G_), parse_int());
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_symbol();
        throw config_error("unexpected character '" + std::string(1, c) + "' in expression: " + s_);
    }

    FinSupp<std::int64_t> parse_symbol() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        // longest match may swallow a following label ("ab" = a then b):
        // shrink until the prefix is "e" or a known label
        while (!name.empty()) {
            if (name == "e" ||
                std::find(labels_.begin(), labels_.end(), name) != labels_.end())
                break;
            name.pop_back();
        }
        if (name.empty()) throw config_error("unknown symbol in expression: " + s_);
        pos_ = start + name.size();
        if (name == "e") return maybe_power_of(delta<std::int64_t>(G_, identity(G_)));

        auto it = std::find(labels_.begin(), labels_.end(), name);
        int gi = static_cast<int>(it - labels_.begin());
        GroupElement gen = identity(G_);
        if (G_.kind == GroupKind::Free) gen.w.push_back(2 * gi);
        else gen.w[gi] = G_.kind == GroupKind::FiniteAbelian && G_.moduli[gi] == 1 ? 0 : 1;
        return maybe_power(gen);
    }

    FinSupp<std::int64_t> maybe_power(const GroupElement& gen) {
        std::int64_t p = 1;
        if (eat('^')) p = parse_int();
        GroupElement g = identity(G_);
        GroupElement base = p >= 0 ? gen : inverse(G_, gen);
        for (std::int64_t i = 0; i < std::llabs(p); ++i) g = mul(G_, g, base);
        return delta<std::int64_t>(G_, g);
    }

    FinSupp<std::int64_t> maybe_power_of(FinSupp<std::int64_t> v) {
        if (eat('^')) {
            std::int64_t p = parse_int();
            if (p < 0) throw config_error("negative powers only apply to generators");
            FinSupp<std::int64_t> acc = delta<std::int64_t>(G_, identity(G_));
            for (std::int64_t i = 0; i < p; ++i) acc = convolve(acc, v);
            return acc;
        }
        return v;
    }

    GroupDescriptor G_;
    std::string s_;
    std::size_t pos_ = 0;
    std::vector<std::string> labels_;
};

}  // namespace detail

/// Parses a scalar group-ring expression like "2e-g" or "3e+(e-a-a^2)b".
inline FinSupp<std::int64_t> parse_ring_expr(const GroupDescriptor& G, const std::string& s) {
    return detail::ExprParser(G, s).parse();
}

/// Parses either a scalar expression (n = 1) or a matrix in brackets:
/// "[[e, g],[0, e]]".
inline GroupRingMatrix<std::int64_t> parse_ring_matrix(const GroupDescriptor& G,
                                                       const std::string& s) {
    std::size_t p = s.find_first_not_of(" \t");
    if (p == std::string::npos) throw config_error("empty ring expression");
    if (s[p] != '[') {
        GroupRingMatrix<std::int64_t> f(G, 1, 1);
        f.at(0, 0) = parse_ring_expr(G, s);
        return f;
    }
    // split "[[...],[...]]" on top-level rows and commas
    std::vector<std::vector<std::string>> cells;
    int depth = 0;
    std::string cur;
    std::vector<std::string> row;
    bool in_row = false;
    for (std::size_t i = p; i < s.size(); ++i) {
        char c = s[i];
        if (c == '[') {
            ++depth;
            if (depth == 2) { in_row = true; row.clear(); cur.clear(); }
            else if (depth > 2) cur += c;
        } else if (c == ']') {
            if (depth == 2) { row.push_back(cur); cells.push_back(row); in_row = false; }
            else if (depth > 2) cur += c;
            --depth;
        } else if (c == ',' && depth == 2) {
            row.push_back(cur);
            cur.clear();
        } else if (c == ',' && depth == 1) {
            // between rows
        } else if (in_row) {
            cur += c;
        }
    }
    if (cells.empty()) throw config_error("empty matrix expression");
    int rows = static_cast<int>(cells.size());
    int cols = static_cast<int>(cells[0].size());
    GroupRingMatrix<std::int64_t> f(G, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(cells[i].size()) != cols)
            throw config_error("ragged matrix expression");
        for (int j = 0; j < cols; ++j) f.at(i, j) = parse_ring_expr(G, cells[i][j]);
    }
    return f;
}

}  // namespace algact
