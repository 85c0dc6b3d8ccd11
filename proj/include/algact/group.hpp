#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace algact {

/// Thrown on malformed configuration (bad descriptor string, mismatched
/// groups, unparsable elements). The CLI maps it to exit status 3.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GroupKind { Lattice, Free, FiniteAbelian };

/// Which group we are working over: Z^d, the free group F_k, or a finite
/// abelian product Z/N_1 x ... x Z/N_d. Finite abelian groups violate the
/// standing "countably infinite" hypothesis of the theory and exist here
/// purely as brute-force oracles; oracle_only() flags them.
struct GroupDescriptor {
    GroupKind kind = GroupKind::Lattice;
    int rank = 1;                       // d for Z^d, k for F_k
    std::vector<std::int64_t> moduli;   // finite abelian only, each >= 1

    bool oracle_only() const { return kind == GroupKind::FiniteAbelian; }

    int components() const {
        return kind == GroupKind::FiniteAbelian ? static_cast<int>(moduli.size()) : rank;
    }

    std::int64_t order() const {  // finite abelian only
        std::int64_t n = 1;
        for (auto m : moduli) n *= m;
        return n;
    }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        return a.kind == b.kind && a.rank == b.rank && a.moduli == b.moduli;
    }
    friend bool operator!=(const GroupDescriptor& a, const GroupDescriptor& b) { return !(a == b); }

    /// Generator labels as accepted by the expression parser: "g" for Z,
    /// "x","y","z","w" for Z^d (d <= 4), "a".."z" for free groups,
    /// "g" / "g1","g2",... for finite abelian factors.
    std::vector<std::string> generator_labels() const {
        std::vector<std::string> out;
        if (kind == GroupKind::Free) {
            for (int i = 0; i < rank; ++i) out.push_back(std::string(1, char('a' + i)));
        } else if (kind == GroupKind::Lattice) {
            if (rank == 1) {
                out.push_back("g");
            } else {
                const char* names = "xyzw";
                for (int i = 0; i < rank; ++i) {
                    if (i < 4) out.push_back(std::string(1, names[i]));
                    else out.push_back("x" + std::to_string(i + 1));
                }
            }
        } else {
            if (moduli.size() == 1) out.push_back("g");
            else
                for (std::size_t i = 0; i < moduli.size(); ++i)
                    out.push_back("g" + std::to_string(i + 1));
        }
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case GroupKind::Lattice:
                os << "Z";
                if (rank > 1) os << "^" << rank;
                break;
            case GroupKind::Free:
                os << "F" << rank;
                break;
            case GroupKind::FiniteAbelian:
                for (std::size_t i = 0; i < moduli.size(); ++i) {
                    if (i) os << " x ";
                    os << "Z/" << moduli[i];
                }
                break;
        }
        return os.str();
    }

    /// Parses "Z", "Z^2", "F2", "Z/5 x Z/5".
    static GroupDescriptor parse(const std::string& s);
};

/// One group element. The payload meaning depends on the descriptor:
/// lattice / finite abelian: coordinate vector; free group: reduced word
/// as letter codes, where code 2*i is generator i and 2*i+1 its inverse.
struct GroupElement {
    std::vector<std::int32_t> w;

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.w == b.w; }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return a.w != b.w; }
};

inline std::int32_t free_inverse_letter(std::int32_t c) { return c ^ 1; }

inline GroupElement identity(const GroupDescriptor& G) {
    GroupElement e;
    if (G.kind != GroupKind::Free) e.w.assign(G.components(), 0);
    return e;
}

inline void check_same_group(const GroupDescriptor& a, const GroupDescriptor& b) {
    if (a != b) throw config_error("group descriptors do not match");
}

inline std::int64_t word_length(const GroupDescriptor& G, const GroupElement& a) {
    switch (G.kind) {
        case GroupKind::Free:
            return static_cast<std::int64_t>(a.w.size());
        case GroupKind::Lattice: {
            std::int64_t s = 0;
            for (auto c : a.w) s += std::abs(static_cast<std::int64_t>(c));
            return s;
        }
        case GroupKind::FiniteAbelian: {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < a.w.size(); ++i) {
                std::int64_t r = a.w[i];
                s += std::min(r, G.moduli[i] - r);
            }
            return s;
        }
    }
    return 0;
}

inline GroupElement mul(const GroupDescriptor& G, const GroupElement& a, const GroupElement& b) {
    GroupElement out;
    switch (G.kind) {
        case GroupKind::Lattice:
            out.w.resize(a.w.size());
            for (std::size_t i = 0; i < a.w.size(); ++i) out.w[i] = a.w[i] + b.w[i];
            break;
        case GroupKind::FiniteAbelian:
            out.w.resize(a.w.size());
            for (std::size_t i = 0; i < a.w.size(); ++i) {
                std::int64_t v = (a.w[i] + b.w[i]) % G.moduli[i];
                out.w[i] = static_cast<std::int32_t>(v);
            }
            break;
        case GroupKind::Free: {
            out.w = a.w;
            for (auto c : b.w) {
                if (!out.w.empty() && out.w.back() == free_inverse_letter(c))
                    out.w.pop_back();
                else
                    out.w.push_back(c);
            }
            break;
        }
    }
    return out;
}

inline GroupElement inverse(const GroupDescriptor& G, const GroupElement& a) {
    GroupElement out;
    switch (G.kind) {
        case GroupKind::Lattice:
            out.w.resize(a.w.size());
            for (std::size_t i = 0; i < a.w.size(); ++i) out.w[i] = -a.w[i];
            break;
        case GroupKind::FiniteAbelian:
            out.w.resize(a.w.size());
            for (std::size_t i = 0; i < a.w.size(); ++i)
                out.w[i] = a.w[i] == 0 ? 0 : static_cast<std::int32_t>(G.moduli[i] - a.w[i]);
            break;
        case GroupKind::Free:
            out.w.assign(a.w.rbegin(), a.w.rend());
            for (auto& c : out.w) c = free_inverse_letter(c);
            break;
    }
    return out;
}

/// Canonical total order: first by word length, then lexicographically
/// (coordinate tuples for abelian kinds, letter codes for free groups,
/// with a < a^-1 < b < b^-1). Every enumeration and serialization in the
/// library follows this order, so outputs are bit-stable across runs.
inline bool canonical_less(const GroupDescriptor& G, const GroupElement& a, const GroupElement& b) {
    std::int64_t la = word_length(G, a), lb = word_length(G, b);
    if (la != lb) return la < lb;
    return std::lexicographical_compare(a.w.begin(), a.w.end(), b.w.begin(), b.w.end());
}

/// Comparator usable as a std::map key order; carries the descriptor.
struct CanonicalLess {
    GroupDescriptor G;
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        return canonical_less(G, a, b);
    }
};

// --- element <-> string -------------------------------------------------

inline std::string element_str(const GroupDescriptor& G, const GroupElement& a) {
    if (G.kind == GroupKind::Free) {
        if (a.w.empty()) return "e";
        std::string s;
        std::size_t i = 0;
        while (i < a.w.size()) {
            std::int32_t c = a.w[i];
            std::size_t j = i;
            while (j < a.w.size() && a.w[j] == c) ++j;
            std::int64_t p = static_cast<std::int64_t>(j - i);
            s += char('a' + c / 2);
            if (c % 2 == 1) s += "^-" + std::to_string(p);
            else if (p > 1) s += "^" + std::to_string(p);
            i = j;
        }
        return s;
    }
    if (a.w.size() == 1) return std::to_string(a.w[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < a.w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.w[i]);
    }
    return s + ")";
}

/// Parses "(1,-2)" / "3" for abelian kinds, reduced words like "ab^-1a" or
/// "e" for free groups.
inline GroupElement parse_element(const GroupDescriptor& G, const std::string& s) {
    if (G.kind == GroupKind::Free) {
        GroupElement out;
        std::size_t i = 0;
        if (s == "e") return out;
        while (i < s.size()) {
            char ch = s[i];
            if (ch < 'a' || ch >= 'a' + G.rank) throw config_error("bad free word: " + s);
            std::int32_t c = 2 * (ch - 'a');
            ++i;
            std::int64_t p = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                bool neg = false;
                if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
                std::size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw config_error("bad exponent in word: " + s);
                p = std::stoll(s.substr(i, j - i));
                if (neg) p = -p;
                i = j;
            }
            std::int32_t letter = p >= 0 ? c : free_inverse_letter(c);
            GroupElement gen;
            gen.w.assign(static_cast<std::size_t>(std::abs(p)), letter);
            out = mul(G, out, gen);
        }
        return out;
    }
    GroupElement out = identity(G);
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw config_error("bad element tuple: " + s);
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::int64_t> vals;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        vals.push_back(std::stoll(item));
    }
    if (static_cast<int>(vals.size()) != G.components())
        throw config_error("element arity mismatch: " + s);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::int64_t v = vals[i];
        if (G.kind == GroupKind::FiniteAbelian) {
            v %= G.moduli[i];
            if (v < 0) v += G.moduli[i];
        }
        out.w[i] = static_cast<std::int32_t>(v);
    }
    return out;
}

inline GroupDescriptor GroupDescriptor::parse(const std::string& s) {
    auto trim = [](std::string t) {
        std::size_t b = t.find_first_not_of(" \t");
        std::size_t e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    std::string t = trim(s);
    GroupDescriptor G;
    if (t.empty()) throw config_error("empty group descriptor");
    if (t[0] == 'F') {
        G.kind = GroupKind::Free;
        G.rank = std::stoi(t.substr(1));
        if (G.rank < 1 || G.rank > 26) throw config_error("bad free rank in " + s);
        return G;
    }
    if (t.find('/') != std::string::npos) {
        G.kind = GroupKind::FiniteAbelian;
        std::size_t pos = 0;
        while (pos < t.size()) {
            std::size_t x = t.find('x', pos);
            std::string part = trim(x == std::string::npos ? t.substr(pos) : t.substr(pos, x - pos));
            if (part.rfind("Z/", 0) != 0) throw config_error("bad finite abelian factor in " + s);
            std::int64_t n = std::stoll(part.substr(2));
            if (n < 1) throw config_error("modulus must be >= 1 in " + s);
            G.moduli.push_back(n);
            if (x == std::string::npos) break;
            pos = x + 1;
        }
        G.rank = static_cast<int>(G.moduli.size());
        return G;
    }
    if (t[0] == 'Z') {
        G.kind = GroupKind::Lattice;
        G.rank = 1;
        std::size_t c = t.find('^');
        if (c != std::string::npos) G.rank = std::stoi(t.substr(c + 1));
        if (G.rank < 1) throw config_error("bad lattice rank in " + s);
        return G;
    }
    throw config_error("unrecognized group descriptor: " + s);
}

}  // namespace algact
