#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "algact/group.hpp"
#include "algact/rational.hpp"

namespace algact {

/// Thrown when a requested ball would exceed the configured element cap.
class ball_cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultBallCap = 1'000'000;

namespace detail {

// #{x in Z^d : |x|_1 = r}, with memoization. Small arguments only.
inline std::int64_t lattice_sphere_count(int d, std::int64_t r) {
    static thread_local std::map<std::pair<int, std::int64_t>, std::int64_t> memo;
    if (r < 0) return 0;
    if (r == 0) return 1;
    if (d == 0) return 0;
    if (d == 1) return 2;
    auto key = std::make_pair(d, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::int64_t s = lattice_sphere_count(d - 1, r);  // first coordinate 0
    for (std::int64_t j = 1; j <= r; ++j)
        s = checked_add(s, checked_mul(2, lattice_sphere_count(d - 1, r - j)));
    memo[key] = s;
    return s;
}

inline std::int64_t ipow_checked(std::int64_t base, std::int64_t exp, std::int64_t clamp) {
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        v = checked_mul(v, base);
        if (v > clamp) return clamp + 1;
    }
    return v;
}

}  // namespace detail

/// #{g : word_length(g) = r}. Free sphere counts are 2k(2k-1)^{r-1}.
inline std::int64_t sphere_count(const GroupDescriptor& G, std::int64_t r) {
    if (r < 0) return 0;
    switch (G.kind) {
        case GroupKind::Lattice:
            return detail::lattice_sphere_count(G.rank, r);
        case GroupKind::Free: {
            if (r == 0) return 1;
            std::int64_t k2 = 2 * G.rank;
            return checked_mul(k2, detail::ipow_checked(k2 - 1, r - 1, (std::int64_t)1 << 62));
        }
        case GroupKind::FiniteAbelian: {
            // small groups; count directly
            std::int64_t c = 0;
            std::vector<std::int64_t> x(G.moduli.size(), 0);
            std::int64_t total = G.order();
            for (std::int64_t idx = 0; idx < total; ++idx) {
                std::int64_t rem = idx, len = 0;
                for (std::size_t i = 0; i < G.moduli.size(); ++i) {
                    std::int64_t v = rem % G.moduli[i];
                    rem /= G.moduli[i];
                    len += std::min(v, G.moduli[i] - v);
                }
                if (len == r) ++c;
            }
            return c;
        }
    }
    return 0;
}

inline std::int64_t ball_count(const GroupDescriptor& G, std::int64_t R) {
    if (G.kind == GroupKind::FiniteAbelian) return G.order();
    std::int64_t s = 0;
    for (std::int64_t r = 0; r <= R; ++r) s = checked_add(s, sphere_count(G, r));
    return s;
}

namespace detail {

inline void lattice_sphere_emit(const GroupDescriptor& G, int coord, std::int64_t rem,
                                GroupElement& cur, std::vector<GroupElement>& out) {
    int d = G.rank;
    if (coord == d - 1) {
        // last coordinate must absorb the full remaining norm; -rem then +rem
        if (rem == 0) {
            cur.w[coord] = 0;
            out.push_back(cur);
        } else {
            cur.w[coord] = static_cast<std::int32_t>(-rem);
            out.push_back(cur);
            cur.w[coord] = static_cast<std::int32_t>(rem);
            out.push_back(cur);
        }
        return;
    }
    for (std::int64_t c = -rem; c <= rem; ++c) {
        cur.w[coord] = static_cast<std::int32_t>(c);
        lattice_sphere_emit(G, coord + 1, rem - std::abs(c), cur, out);
    }
}

}  // namespace detail

/// All g with word_length(g) <= R in canonical (length, lex) order. Finite
/// abelian groups ignore R and return the whole group. The result for R is
/// a prefix of the result for R+1.
inline std::vector<GroupElement> enumerate_ball(const GroupDescriptor& G, std::int64_t R,
                                                std::size_t cap = kDefaultBallCap) {
    std::vector<GroupElement> out;
    if (G.kind == GroupKind::FiniteAbelian) {
        std::int64_t total = G.order();
        if (static_cast<std::size_t>(total) > cap)
            throw ball_cap_error("finite group order exceeds ball cap");
        for (std::int64_t idx = 0; idx < total; ++idx) {
            GroupElement g = identity(G);
            std::int64_t rem = idx;
            for (std::size_t i = 0; i < G.moduli.size(); ++i) {
                g.w[i] = static_cast<std::int32_t>(rem % G.moduli[i]);
                rem /= G.moduli[i];
            }
            out.push_back(g);
        }
        std::sort(out.begin(), out.end(), CanonicalLess{G});
        return out;
    }
    std::size_t n = 0;
    {
        std::int64_t cnt = ball_count(G, R);
        if (cnt < 0 || static_cast<std::size_t>(cnt) > cap)
            throw ball_cap_error("ball of radius " + std::to_string(R) + " exceeds cap (" +
                                 std::to_string(cnt) + " > " + std::to_string(cap) + ")");
        n = static_cast<std::size_t>(cnt);
    }
    out.reserve(n);
    if (G.kind == GroupKind::Lattice) {
        GroupElement cur = identity(G);
        for (std::int64_t r = 0; r <= R; ++r)
            detail::lattice_sphere_emit(G, 0, r, cur, out);
        return out;
    }
    // free group: BFS by length, children in letter order, skipping the
    // letter that would cancel; this emits each sphere in lex order.
    out.push_back(identity(G));
    std::size_t sphere_begin = 0, sphere_end = 1;
    for (std::int64_t r = 1; r <= R; ++r) {
        for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
            GroupElement w = out[i];
            for (std::int32_t c = 0; c < 2 * G.rank; ++c) {
                if (!w.w.empty() && w.w.back() == free_inverse_letter(c)) continue;
                GroupElement child = w;
                child.w.push_back(c);
                out.push_back(std::move(child));
            }
        }
        sphere_begin = sphere_end;
        sphere_end = out.size();
    }
    return out;
}

/// Index of g in the canonical enumeration of the whole group, i.e. in
/// enumerate_ball(R) for any R >= word_length(g). The sampler keys its
/// counter-based RNG on this rank.
inline std::int64_t rank_of(const GroupDescriptor& G, const GroupElement& g) {
    std::int64_t len = word_length(G, g);
    switch (G.kind) {
        case GroupKind::Free: {
            std::int64_t rank = len == 0 ? 0 : ball_count(G, len - 1);
            std::int64_t width = 2 * G.rank - 1;
            std::int64_t tail = len == 0 ? 0 : detail::ipow_checked(width, len - 1, (std::int64_t)1 << 62);
            for (std::size_t j = 0; j < g.w.size(); ++j) {
                std::int64_t smaller;
                if (j == 0) {
                    smaller = g.w[j];
                } else {
                    std::int32_t banned = free_inverse_letter(g.w[j - 1]);
                    smaller = g.w[j] - (banned < g.w[j] ? 1 : 0);
                }
                rank = checked_add(rank, checked_mul(smaller, tail));
                if (j + 1 < g.w.size()) tail /= width;
            }
            return rank;
        }
        case GroupKind::Lattice: {
            std::int64_t rank = len == 0 ? 0 : ball_count(G, len - 1);
            std::int64_t rem = len;
            int d = G.rank;
            for (int i = 0; i < d; ++i) {
                std::int64_t xi = g.w[i];
                if (i == d - 1) {
                    // remaining sphere at the last coordinate is {-rem, +rem}
                    if (xi > 0 && rem > 0) rank = checked_add(rank, 1);
                    break;
                }
                for (std::int64_t c = -rem; c < xi; ++c)
                    rank = checked_add(rank, detail::lattice_sphere_count(d - 1 - i, rem - std::abs(c)));
                rem -= std::abs(xi);
            }
            return rank;
        }
        case GroupKind::FiniteAbelian: {
            auto all = enumerate_ball(G, 0);
            auto it = std::lower_bound(all.begin(), all.end(), g, CanonicalLess{G});
            return static_cast<std::int64_t>(it - all.begin());
        }
    }
    return 0;
}

/// Dense indexing of a ball: canonical element list plus O(word length)
/// element->index lookup via rank_of. Solvers run on flat arrays indexed
/// by this.
class BallIndex {
public:
    BallIndex(const GroupDescriptor& G, std::int64_t R, std::size_t cap = kDefaultBallCap)
        : G_(G), R_(R), elems_(enumerate_ball(G, R, cap)), finite_rank_(CanonicalLess{G}) {
        if (G.kind == GroupKind::FiniteAbelian) {
            for (std::size_t i = 0; i < elems_.size(); ++i) finite_rank_[elems_[i]] = i;
        }
        lengths_.reserve(elems_.size());
        for (const auto& g : elems_) lengths_.push_back(word_length(G_, g));
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const GroupDescriptor& group() const { return G_; }
    std::int64_t radius() const { return R_; }
    std::size_t size() const { return elems_.size(); }
    const GroupElement& element(std::size_t i) const { return elems_[i]; }
    const std::vector<GroupElement>& elements() const { return elems_; }
    std::int64_t length(std::size_t i) const { return lengths_[i]; }

    std::size_t index_of(const GroupElement& g) const {
        if (G_.kind == GroupKind::FiniteAbelian) {
            auto it = finite_rank_.find(g);
            return it == finite_rank_.end() ? npos : it->second;
        }
        if (word_length(G_, g) > R_) return npos;
        return static_cast<std::size_t>(rank_of(G_, g));
    }

private:
    GroupDescriptor G_;
    std::int64_t R_;
    std::vector<GroupElement> elems_;
    std::vector<std::int64_t> lengths_;
    std::map<GroupElement, std::size_t, CanonicalLess> finite_rank_;
};

}  // namespace algact
