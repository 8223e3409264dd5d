#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mal {

// Exact integers. Every linear-algebra result in this project is computed over
// Z; entry growth during elimination is absorbed by arbitrary precision.
using Int = boost::multiprecision::cpp_int;

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const T& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool is_zero() const {
        for (const T& x : a_) if (x != 0) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<T> times(const std::vector<T>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matrix*vector: size");
        std::vector<T> y(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    Matrix times(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix*matrix: size");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    if (o.at(k, j) != 0) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Matrix<Int>;
using Mat64 = Matrix<std::int64_t>;

inline IntMat widen(const Mat64& m) {
    IntMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

struct Overflow64 : std::runtime_error {
    Overflow64() : std::runtime_error("int64 overflow") {}
};

namespace detail {
inline std::int64_t mul_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow64{};
    return r;
}
inline std::int64_t sub_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow64{};
    return r;
}
template <typename T> T abs_of(const T& x) { return x < 0 ? T(-x) : x; }
}  // namespace detail

// Invariant-factor-only Smith normal form (no transform bookkeeping). The
// pivot is the smallest nonzero |entry|; rows/columns are cleared by repeated
// division with remainder, so all arithmetic stays integral.
inline std::vector<Int> snf_invariants(IntMat A) {
    const int R = A.rows(), C = A.cols();
    std::vector<Int> diag;
    int r = 0, c = 0;
    while (r < R && c < C) {
        bool dirty = true;
        bool any = false;
        while (dirty) {
            // entries compound across row/col sweeps unless the pivot is
            // re-selected globally after every dirty pass
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = r; i < R; ++i)
                for (int j = c; j < C; ++j) {
                    if (A.at(i, j) == 0) continue;
                    Int a = detail::abs_of(A.at(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) break;
            any = true;
            for (int j = 0; j < C; ++j) std::swap(A.at(r, j), A.at(pi, j));
            for (int i = 0; i < R; ++i) std::swap(A.at(i, c), A.at(i, pj));
            dirty = false;
            for (int i = r + 1; i < R; ++i) {
                if (A.at(i, c) == 0) continue;
                Int q = A.at(i, c) / A.at(r, c);
                if (q != 0)
                    for (int j = c; j < C; ++j) A.at(i, j) -= q * A.at(r, j);
                if (A.at(i, c) != 0) dirty = true;  // remainder < pivot; repivot
            }
            for (int j = c + 1; j < C; ++j) {
                if (A.at(r, j) == 0) continue;
                Int q = A.at(r, j) / A.at(r, c);
                if (q != 0)
                    for (int i = r; i < R; ++i) A.at(i, j) -= q * A.at(i, c);
                if (A.at(r, j) != 0) dirty = true;
            }
        }
        if (!any) break;
        diag.push_back(detail::abs_of(A.at(r, c)));
        ++r; ++c;
    }
    // enforce d_1 | d_2 | ... (gcd/lcm fix-up preserves the group)
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i + 1] % diag[i] != 0) {
                Int g = boost::multiprecision::gcd(diag[i], diag[i + 1]);
                Int l = diag[i] / g * diag[i + 1];
                diag[i] = g;
                diag[i + 1] = l;
                changed = true;
            }
        }
    }
    return diag;
}

// Full Smith normal form with unimodular transforms:
//     D = P * M * Q,   M = R * D * C,   R = P^{-1},  C = Q^{-1}.
struct SnfResult {
    IntMat d;
    IntMat p, q;       // D = P M Q
    IntMat r, c;       // M = R D C
    int rank = 0;
    std::vector<Int> invariant_factors;  // the nonzero diagonal, d_1 | d_2 | ...

    // Kernel of M: the last cols(M) - rank columns of Q.
    std::vector<std::vector<Int>> kernel_basis() const {
        std::vector<std::vector<Int>> out;
        for (int j = rank; j < q.cols(); ++j) {
            std::vector<Int> v(q.rows());
            for (int i = 0; i < q.rows(); ++i) v[i] = q.at(i, j);
            out.push_back(std::move(v));
        }
        return out;
    }

    // Solve M x = b over the integers.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
        std::vector<Int> pb = p.times(b);
        std::vector<Int> y(q.cols(), Int(0));
        for (int i = 0; i < static_cast<int>(pb.size()); ++i) {
            if (i < rank) {
                if (pb[i] % d.at(i, i) != 0) return std::nullopt;
                y[i] = pb[i] / d.at(i, i);
            } else if (pb[i] != 0) {
                return std::nullopt;
            }
        }
        return q.times(y);
    }
};

namespace detail {
struct TransformTracker {
    IntMat p, q, r, c;
    void init(int rows, int cols) {
        p = IntMat::identity(rows);
        r = IntMat::identity(rows);
        q = IntMat::identity(cols);
        c = IntMat::identity(cols);
    }
    void row_swap(int i, int j) {
        for (int k = 0; k < p.cols(); ++k) std::swap(p.at(i, k), p.at(j, k));
        for (int k = 0; k < r.rows(); ++k) std::swap(r.at(k, i), r.at(k, j));
    }
    void col_swap(int i, int j) {
        for (int k = 0; k < q.rows(); ++k) std::swap(q.at(k, i), q.at(k, j));
        for (int k = 0; k < c.cols(); ++k) std::swap(c.at(i, k), c.at(j, k));
    }
    void row_negate(int i) {
        for (int k = 0; k < p.cols(); ++k) p.at(i, k) = -p.at(i, k);
        for (int k = 0; k < r.rows(); ++k) r.at(k, i) = -r.at(k, i);
    }
    // row_i += f * row_j on M;  P gets the same op, R gets col_j -= f * col_i
    void row_add(int i, int j, const Int& f) {
        for (int k = 0; k < p.cols(); ++k) p.at(i, k) += f * p.at(j, k);
        for (int k = 0; k < r.rows(); ++k) r.at(k, j) -= f * r.at(k, i);
    }
    // col_i += f * col_j on M;  Q gets the same op, C gets row_j -= f * row_i
    void col_add(int i, int j, const Int& f) {
        for (int k = 0; k < q.rows(); ++k) q.at(k, i) += f * q.at(k, j);
        for (int k = 0; k < c.cols(); ++k) c.at(j, k) -= f * c.at(i, k);
    }
};
}  // namespace detail

// Toggle for the expensive factorization re-check (M == R D C and P R == I).
#ifdef NDEBUG
inline bool snf_verify_factorization = false;
#else
inline bool snf_verify_factorization = true;
#endif

inline SnfResult smith_normal_form(const IntMat& m_in) {
    IntMat A = m_in;
    const int R = A.rows(), C = A.cols();
    detail::TransformTracker t;
    t.init(R, C);
    int r = 0, c = 0;
    while (r < R && c < C) {
        bool dirty = true;
        bool any = false;
        while (dirty) {
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = r; i < R; ++i)
                for (int j = c; j < C; ++j) {
                    if (A.at(i, j) == 0) continue;
                    Int a = detail::abs_of(A.at(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) break;
            any = true;
            if (pi != r) {
                for (int j = 0; j < C; ++j) std::swap(A.at(r, j), A.at(pi, j));
                t.row_swap(r, pi);
            }
            if (pj != c) {
                for (int i = 0; i < R; ++i) std::swap(A.at(i, c), A.at(i, pj));
                t.col_swap(c, pj);
            }
            dirty = false;
            for (int i = r + 1; i < R; ++i) {
                if (A.at(i, c) == 0) continue;
                Int q = A.at(i, c) / A.at(r, c);
                if (q != 0) {
                    for (int j = c; j < C; ++j) A.at(i, j) -= q * A.at(r, j);
                    t.row_add(i, r, -q);
                }
                if (A.at(i, c) != 0) dirty = true;
            }
            for (int j = c + 1; j < C; ++j) {
                if (A.at(r, j) == 0) continue;
                Int q = A.at(r, j) / A.at(r, c);
                if (q != 0) {
                    for (int i = r; i < R; ++i) A.at(i, j) -= q * A.at(i, c);
                    t.col_add(j, c, -q);
                }
                if (A.at(r, j) != 0) dirty = true;
            }
        }
        if (!any) break;
        if (A.at(r, c) < 0) {
            for (int j = c; j < C; ++j) A.at(r, j) = -A.at(r, j);
            t.row_negate(r);
        }
        ++r; ++c;
    }
    const int rank = r;
    // divisibility chain: if d_i does not divide d_j (i<j), mix column j into
    // column i and re-clear the 2x2 block
    for (int i = 0; i < rank; ++i) {
        for (int j = i + 1; j < rank; ++j) {
            if (A.at(j, j) % A.at(i, i) == 0) continue;
            // col_i += col_j  (brings d_j into position (j,i))
            A.at(j, i) += A.at(j, j);
            t.col_add(i, j, Int(1));
            // now reduce the 2x2 corner {i,j} x {i,j} to diagonal by euclid
            while (true) {
                if (A.at(j, i) != 0) {
                    Int q = A.at(j, i) / A.at(i, i);
                    if (q != 0) {
                        for (int k : {i, j}) A.at(j, k) -= q * A.at(i, k);
                        t.row_add(j, i, -q);
                    }
                    if (A.at(j, i) != 0) {
                        for (int k : {i, j}) std::swap(A.at(i, k), A.at(j, k));
                        t.row_swap(i, j);
                        continue;
                    }
                }
                if (A.at(i, j) != 0) {
                    Int q = A.at(i, j) / A.at(i, i);
                    if (q != 0) {
                        for (int k : {i, j}) A.at(k, j) -= q * A.at(k, i);
                        t.col_add(j, i, -q);
                    }
                    if (A.at(i, j) != 0) {
                        for (int k : {i, j}) std::swap(A.at(k, i), A.at(k, j));
                        t.col_swap(i, j);
                        continue;
                    }
                }
                break;
            }
            if (A.at(i, i) < 0) {
                A.at(i, i) = -A.at(i, i);
                t.row_negate(i);
            }
            if (A.at(j, j) < 0) {
                for (int k = 0; k < C; ++k) A.at(j, k) = -A.at(j, k);
                t.row_negate(j);
            }
        }
    }
    SnfResult res;
    res.d = A;
    res.p = t.p; res.q = t.q; res.r = t.r; res.c = t.c;
    res.rank = rank;
    for (int i = 0; i < rank; ++i) res.invariant_factors.push_back(A.at(i, i));
    if (snf_verify_factorization) {
        if (res.r.times(res.d).times(res.c) != m_in)
            throw std::logic_error("smith_normal_form: M != R*D*C");
        if (res.p.times(res.r) != IntMat::identity(R) ||
            res.c.times(res.q) != IntMat::identity(C))
            throw std::logic_error("smith_normal_form: transforms not inverse");
    }
    return res;
}

inline std::vector<Int> snf_invariants_checked(const Mat64& m) {
    try {
        Mat64 copy = m;
        // reuse the generic routine through the Int path only on overflow
        std::vector<std::int64_t> diag;
        {
            // local int64 run
            const int R = copy.rows(), C = copy.cols();
            int r = 0, c = 0;
            while (r < R && c < C) {
                bool dirty = true;
                bool any = false;
                while (dirty) {
                    int pi = -1, pj = -1;
                    std::int64_t best = 0;
                    for (int i = r; i < R; ++i)
                        for (int j = c; j < C; ++j) {
                            std::int64_t a = copy.at(i, j);
                            if (a == 0) continue;
                            std::int64_t ab = a < 0 ? -a : a;
                            if (pi < 0 || ab < best) { best = ab; pi = i; pj = j; }
                        }
                    if (pi < 0) break;
                    any = true;
                    for (int j = 0; j < C; ++j) std::swap(copy.at(r, j), copy.at(pi, j));
                    for (int i = 0; i < R; ++i) std::swap(copy.at(i, c), copy.at(i, pj));
                    dirty = false;
                    for (int i = r + 1; i < R; ++i) {
                        if (copy.at(i, c) == 0) continue;
                        std::int64_t q = copy.at(i, c) / copy.at(r, c);
                        if (q != 0)
                            for (int j = c; j < C; ++j)
                                copy.at(i, j) =
                                    detail::sub_ck(copy.at(i, j), detail::mul_ck(q, copy.at(r, j)));
                        if (copy.at(i, c) != 0) dirty = true;
                    }
                    for (int j = c + 1; j < C; ++j) {
                        if (copy.at(r, j) == 0) continue;
                        std::int64_t q = copy.at(r, j) / copy.at(r, c);
                        if (q != 0)
                            for (int i = r; i < R; ++i)
                                copy.at(i, j) =
                                    detail::sub_ck(copy.at(i, j), detail::mul_ck(q, copy.at(i, c)));
                        if (copy.at(r, j) != 0) dirty = true;
                    }
                }
                if (!any) break;
                std::int64_t dv = copy.at(r, c);
                diag.push_back(dv < 0 ? -dv : dv);
                ++r; ++c;
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < diag.size(); ++i)
                if (diag[i + 1] % diag[i] != 0) {
                    std::int64_t a = diag[i], b = diag[i + 1];
                    std::int64_t g = std::gcd(a, b);
                    diag[i] = g;
                    diag[i + 1] = detail::mul_ck(a / g, b);
                    changed = true;
                }
        }
        std::vector<Int> out(diag.begin(), diag.end());
        return out;
    } catch (const Overflow64&) {
        return snf_invariants(widen(m));
    }
}

// Rank over Q (= rank over Z of the free part) = number of invariant factors.
inline int rank_of(const Mat64& m) {
    return static_cast<int>(snf_invariants_checked(m).size());
}

}  // namespace mal
