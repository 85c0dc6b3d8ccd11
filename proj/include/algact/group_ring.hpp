#pragma once

#include <vector>

#include "algact/finsupp.hpp"

namespace algact {

/// m x n matrix over the group ring: each entry a finitely supported
/// function G -> T. Houses f in M_n(Z(G)) and, as an n x 1 column, vectors
/// alpha in Z(G)^{oplus n}.
template <class T>
class GroupRingMatrix {
public:
    GroupRingMatrix(const GroupDescriptor& G, int rows, int cols)
        : G_(G), rows_(rows), cols_(cols), e_(std::size_t(rows) * cols, FinSupp<T>(G)) {
        if (rows < 1 || cols < 1) throw config_error("matrix dimensions must be >= 1");
    }

    static GroupRingMatrix identity_matrix(const GroupDescriptor& G, int n) {
        GroupRingMatrix out(G, n, n);
        for (int i = 0; i < n; ++i) out.at(i, i) = delta<T>(G, identity(G));
        return out;
    }

    const GroupDescriptor& group() const { return G_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FinSupp<T>& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const FinSupp<T>& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

    friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const GroupRingMatrix& a, const GroupRingMatrix& b) { return !(a == b); }

    GroupRingMatrix operator-(const GroupRingMatrix& o) const {
        GroupRingMatrix out(G_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
        return out;
    }

    /// Max word length over all entry supports; 0 for the zero matrix.
    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& f : e_) d = std::max(d, f.support_radius());
        return d;
    }

    bool is_zero() const {
        for (const auto& f : e_)
            if (!f.is_zero()) return false;
        return true;
    }

    /// Adjoint: (x*)_{ij}(g) = conj(x_{ji}(g^{-1})).
    GroupRingMatrix star() const {
        GroupRingMatrix out(G_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).star();
        return out;
    }

    /// Group-ring matrix product (fg)_{ij} = sum_k f_{ik} g_{kj}.
    friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
        check_same_group(a.G_, b.G_);
        if (a.cols_ != b.rows_) throw config_error("matrix dimension mismatch");
        GroupRingMatrix out(a.G_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j)
                for (int k = 0; k < a.cols_; ++k)
                    out.at(i, j) += convolve(a.at(i, k), b.at(k, j));
        return out;
    }

    template <class U, class Fn>
    GroupRingMatrix<U> map_values(Fn fn) const {
        GroupRingMatrix<U> out(G_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.at(i, j) = at(i, j).template map_values<U>(fn);
        return out;
    }

private:
    template <class U>
    friend class GroupRingMatrix;

    GroupDescriptor G_;
    int rows_, cols_;
    std::vector<FinSupp<T>> e_;
};

/// Element of T(G)^{oplus n}: n finitely supported coefficient functions.
template <class T>
struct FinSuppVector {
    GroupDescriptor G;
    std::vector<FinSupp<T>> comp;

    FinSuppVector(const GroupDescriptor& g, int n) : G(g), comp(n, FinSupp<T>(g)) {}

    int size() const { return static_cast<int>(comp.size()); }
    FinSupp<T>& operator[](int i) { return comp[i]; }
    const FinSupp<T>& operator[](int i) const { return comp[i]; }

    friend bool operator==(const FinSuppVector& a, const FinSuppVector& b) {
        return a.G == b.G && a.comp == b.comp;
    }
    friend bool operator!=(const FinSuppVector& a, const FinSuppVector& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    double l1_norm() const {
        double s = 0;
        for (const auto& c : comp) s += c.l1_norm();
        return s;
    }

    double l2_norm() const {
        double s = 0;
        for (const auto& c : comp) s += c.l2_norm_sq();
        return std::sqrt(s);
    }

    std::int64_t support_radius() const {
        std::int64_t r = 0;
        for (const auto& c : comp) r = std::max(r, c.support_radius());
        return r;
    }
};

inline FinSuppVector<double> to_real(const FinSuppVector<std::int64_t>& a) {
    FinSuppVector<double> out(a.G, a.size());
    for (int i = 0; i < a.size(); ++i) out[i] = to_real(a[i]);
    return out;
}

/// The hat map x -> x (delta_e ⊗ id): extracts coefficient functions. On
/// this representation the coefficients are the stored data, so hat is the
/// identity on entries; the overloads exist to mirror the algebra, where
/// hat moves a ring element to an l2 vector.
template <class T>
FinSupp<T> hat(const FinSupp<T>& a) { return a; }
template <class T>
GroupRingMatrix<T> hat(const GroupRingMatrix<T>& a) { return a; }
template <class T>
FinSuppVector<T> hat(const FinSuppVector<T>& a) { return a; }

/// Left action (lambda(f) x)(l) = sum_k f_{lk} * x(k) on coefficient
/// vectors; exact finite convolution.
template <class T>
FinSuppVector<T> lambda_apply(const GroupRingMatrix<T>& f, const FinSuppVector<T>& x) {
    check_same_group(f.group(), x.G);
    if (f.cols() != x.size()) throw config_error("lambda_apply dimension mismatch");
    FinSuppVector<T> out(f.group(), f.rows());
    for (int l = 0; l < f.rows(); ++l)
        for (int k = 0; k < f.cols(); ++k)
            out[l] += convolve(f.at(l, k), x[k]);
    return out;
}

/// Left action on a matrix of l2 coefficient functions: (f xi)_{ij} =
/// sum_k f_{ik} * xi_{kj}.
template <class T>
GroupRingMatrix<T> lambda_apply(const GroupRingMatrix<T>& f, const GroupRingMatrix<T>& xi) {
    return f * xi;
}

/// Right multiplication (r(f) alpha)(l) = sum_k alpha(k) f_{kl} on
/// C(G)^{oplus m}; integer inputs give integer outputs.
template <class T>
FinSuppVector<T> r_apply(const GroupRingMatrix<T>& f, const FinSuppVector<T>& alpha) {
    check_same_group(f.group(), alpha.G);
    if (f.rows() != alpha.size()) throw config_error("r_apply dimension mismatch");
    FinSuppVector<T> out(f.group(), f.cols());
    for (int l = 0; l < f.cols(); ++l)
        for (int k = 0; k < f.rows(); ++k)
            out[l] += convolve(alpha[k], f.at(k, l));
    return out;
}

/// Right action of the ring on a matrix of coefficient functions:
/// (xi f)_{ij} = sum_k xi_{ik} * f_{kj}.
template <class T>
GroupRingMatrix<T> xi_times(const GroupRingMatrix<T>& xi, const GroupRingMatrix<T>& f) {
    return xi * f;
}

}  // namespace algact
