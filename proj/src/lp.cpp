#include "lgdeg/lp.hpp"

#include "lgdeg/errors.hpp"

namespace lgdeg {

LpResult lp_maximize(const RatMatrix& a_in, const RatVector& b_in, const RatVector& c_in) {
    std::size_t m = a_in.size();
    std::size_t n = c_in.size();
    for (const auto& bi : b_in)
        if (bi < 0) throw ArgumentError("lp_maximize requires a nonnegative right-hand side");

    // Dictionary form: basic_i = b_i - sum_j a_ij nonbasic_j, z = z0 + sum_j c_j nonbasic_j.
    RatMatrix a = a_in;
    RatVector b = b_in;
    RatVector c = c_in;
    Rational z0 = 0;
    std::vector<std::size_t> basic(m), nonbasic(n);
    for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
    for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;

    LpResult res;
    while (true) {
        std::size_t s = n;
        for (std::size_t j = 0; j < n; ++j)
            if (c[j] > 0 && (s == n || nonbasic[j] < nonbasic[s])) s = j;
        if (s == n) break;

        std::size_t r = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][s] <= 0) continue;
            Rational ratio = b[i] / a[i][s];
            if (r == m || ratio < best || (ratio == best && basic[i] < basic[r])) {
                r = i;
                best = ratio;
            }
        }
        if (r == m) {
            res.bounded = false;
            return res;
        }

        Rational inv = 1 / a[r][s];
        for (std::size_t j = 0; j < n; ++j)
            if (j != s && a[r][j] != 0) a[r][j] *= inv;
        a[r][s] = inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][s] == 0) continue;
            Rational f = a[i][s];
            for (std::size_t j = 0; j < n; ++j)
                if (j != s && a[r][j] != 0) a[i][j] -= f * a[r][j];
            a[i][s] = -f * inv;
            if (b[r] != 0) b[i] -= f * b[r];
        }
        {
            Rational f = c[s];
            for (std::size_t j = 0; j < n; ++j)
                if (j != s && a[r][j] != 0) c[j] -= f * a[r][j];
            c[s] = -f * inv;
            z0 += f * b[r];
        }
        std::swap(basic[r], nonbasic[s]);
    }
    res.value = z0;
    res.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < n) res.x[basic[i]] = b[i];
    return res;
}

SlackResult max_uniform_slack(const IntMatrix& strict, const IntMatrix& equalities, std::size_t vars) {
    std::size_t n = vars + 1;
    RatMatrix a;
    RatVector b;
    a.reserve(strict.size() + 2 * equalities.size() + 1);
    for (const auto& row : strict) {
        RatVector r(n);
        for (std::size_t j = 0; j < vars; ++j) r[j] = row[j];
        r[vars] = 1;
        a.push_back(std::move(r));
        b.push_back(0);
    }
    for (const auto& row : equalities) {
        RatVector r(n), q(n);
        for (std::size_t j = 0; j < vars; ++j) {
            r[j] = row[j];
            q[j] = -row[j];
        }
        a.push_back(std::move(r));
        a.push_back(std::move(q));
        b.push_back(0);
        b.push_back(0);
    }
    RatVector cap(n, 0);
    cap[vars] = 1;
    a.push_back(cap);
    b.push_back(1);
    RatVector c(n, 0);
    c[vars] = 1;
    LpResult lp = lp_maximize(a, b, c);
    if (!lp.bounded) throw InvariantError("uniform-slack LP reported unbounded");
    SlackResult out;
    out.slack = lp.value;
    out.x.assign(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(vars));
    return out;
}

}  // namespace lgdeg
