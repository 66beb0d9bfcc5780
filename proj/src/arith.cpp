#include "lgdeg/arith.hpp"

#include <algorithm>
#include <utility>

#include "lgdeg/errors.hpp"

namespace lgdeg {

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVector primitive(const IntVector& v) {
    Integer g = content(v);
    if (g == 0) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix transpose(const IntMatrix& m) {
    if (m.empty()) return {};
    IntMatrix t(m[0].size(), IntVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix c(a.size(), IntVector(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntVector row_times(const IntVector& row, const IntMatrix& m) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    IntVector out(cols, 0);
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) out[j] += row[k] * m[k][j];
    }
    return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVector scale(const IntVector& a, const Integer& s) {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

Integer det(const IntMatrix& input) {
    std::size_t n = input.size();
    if (n == 0) return 1;
    IntMatrix m = input;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::size_t rank(const RatMatrix& input) {
    RatMatrix m = input;
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

namespace {

void row_axpy(IntVector& target, const IntVector& source, const Integer& q) {
    for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * source[j];
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    HnfResult res;
    res.h = m;
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    res.u = identity(rows);
    auto& h = res.h;
    auto& u = res.u;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h[i][c] == 0) continue;
                if (best == rows || abs(h[i][c]) < abs(h[best][c])) best = i;
            }
            if (best == rows) break;
            std::swap(h[r], h[best]);
            std::swap(u[r], u[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h[i][c] == 0) continue;
                Integer q = floor_div(h[i][c], h[r][c]);
                row_axpy(h[i], h[r], q);
                row_axpy(u[i], u[r], q);
                if (h[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (h[r][c] == 0) continue;
        if (h[r][c] < 0) {
            for (auto& x : h[r]) x = -x;
            for (auto& x : u[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h[i][c], h[r][c]);
            if (q == 0) continue;
            row_axpy(h[i], h[r], q);
            row_axpy(u[i], u[r], q);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

SnfResult snf(const IntMatrix& m, std::size_t cols) {
    std::size_t rows = m.size();
    IntMatrix d = m;
    IntMatrix left = identity(rows);
    IntMatrix right = identity(cols);
    auto swap_cols = [&](IntMatrix& a, std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
    };
    auto col_axpy = [&](IntMatrix& a, std::size_t target, std::size_t source, const Integer& q) {
        for (auto& row : a) row[target] -= q * row[source];
    };
    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
        // Move the smallest nonzero entry of the trailing block to (t, t).
        bool found = false;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0 && (!found || abs(d[i][j]) < abs(d[bi][bj]))) {
                    found = true;
                    bi = i;
                    bj = j;
                }
        if (!found) break;
        std::swap(d[t], d[bi]);
        std::swap(left[t], left[bi]);
        swap_cols(d, t, bj);
        swap_cols(right, t, bj);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                Integer q = floor_div(d[i][t], d[t][t]);
                row_axpy(d[i], d[t], q);
                row_axpy(left[i], left[t], q);
                if (d[i][t] != 0) {
                    clean = false;
                    if (abs(d[i][t]) < abs(d[t][t])) {
                        std::swap(d[t], d[i]);
                        std::swap(left[t], left[i]);
                    }
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                Integer q = floor_div(d[t][j], d[t][t]);
                col_axpy(d, j, t, q);
                col_axpy(right, j, t, q);
                if (d[t][j] != 0) {
                    clean = false;
                    if (abs(d[t][j]) < abs(d[t][t])) {
                        swap_cols(d, t, j);
                        swap_cols(right, t, j);
                    }
                }
            }
            if (!clean) continue;
            // Enforce divisibility of the trailing block by the pivot.
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        for (std::size_t k = 0; k < cols; ++k) d[t][k] += d[i][k];
                        for (std::size_t k = 0; k < rows; ++k) left[t][k] += left[i][k];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (d[t][t] < 0) {
            for (auto& x : d[t]) x = -x;
            for (auto& x : left[t]) x = -x;
        }
    }
    SnfResult res;
    for (std::size_t i = 0; i < t; ++i) res.diagonal.push_back(d[i][i]);
    res.left = std::move(left);
    res.right = std::move(right);
    return res;
}

IntMatrix kernel(const IntMatrix& m, std::size_t cols) {
    if (m.empty()) {
        IntMatrix id = identity(cols);
        return id;
    }
    HnfResult t = hnf(transpose(m));
    IntMatrix basis(t.u.begin() + static_cast<std::ptrdiff_t>(t.rank), t.u.end());
    if (basis.empty()) return basis;
    HnfResult canon = hnf(basis);
    canon.h.resize(canon.rank);
    return canon.h;
}

std::optional<RatVector> solve_left(const RatMatrix& a, const RatVector& b) {
    // x * a = b  <=>  a^T x^T = b^T
    std::size_t n = a.size();
    RatMatrix aug(n, RatVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[j][i];
        aug[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && aug[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(aug[c], aug[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rational f = aug[i][c] / aug[c][c];
            for (std::size_t j = c; j <= n; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
    return x;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = to_rational(m[i]);
    return out;
}

RatVector to_rational(const IntVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace lgdeg
