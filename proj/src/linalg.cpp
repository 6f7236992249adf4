#include "ibody/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <utility>

namespace ibody {

namespace {

void check_rectangular(const RatMat& m, const char* where) {
    if (m.empty()) throw ValidationError(std::string(where) + ": empty matrix");
    for (const auto& row : m) {
        if (row.size() != m[0].size()) {
            throw ValidationError(std::string(where) + ": ragged rows");
        }
    }
}

Int lcm_int(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

} // namespace

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw ValidationError("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero_vec(const RatVec& v) {
    for (const auto& e : v) {
        if (e != 0) return false;
    }
    return true;
}

RatVec scale_to_coprime_integers(const RatVec& v, bool first_nonzero_positive) {
    Int den_lcm = 1;
    for (const auto& e : v) den_lcm = lcm_int(den_lcm, denominator_of(e));

    std::vector<Int> ints;
    ints.reserve(v.size());
    Int g = 0;
    for (const auto& e : v) {
        Int n = numerator_of(e) * (den_lcm / denominator_of(e));
        g = boost::multiprecision::gcd(g, n);
        ints.push_back(std::move(n));
    }
    if (g == 0) return RatVec(v.size(), Rat(0)); // zero vector stays zero

    int flip = 1;
    if (first_nonzero_positive) {
        for (const auto& n : ints) {
            if (n != 0) {
                flip = n < 0 ? -1 : 1;
                break;
            }
        }
    }
    RatVec out;
    out.reserve(v.size());
    for (const auto& n : ints) out.emplace_back(Int(n * flip / g));
    return out;
}

Rat det(const RatMat& m) {
    check_rectangular(m, "det");
    const std::size_t n = m.size();
    if (m[0].size() != n) throw ValidationError("det: non-square matrix");

    // Clear denominators row by row; det(m) = sign * bareiss / prod(row lcms).
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Rat scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int L = 1;
        for (std::size_t j = 0; j < n; ++j) L = lcm_int(L, denominator_of(m[i][j]));
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = numerator_of(m[i][j]) * (L / denominator_of(m[i][j]));
        }
        scale *= Rat(L);
    }

    int sgn = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return Rat(sgn * a[n - 1][n - 1]) / scale;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& rhs) {
    check_rectangular(m, "solve");
    const std::size_t n = m.size();
    if (m[0].size() != n) throw ValidationError("solve: non-square matrix");
    if (rhs.size() != n) throw ValidationError("solve: rhs dimension mismatch");

    RatMat a = m;
    RatVec b = rhs;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);

        const Rat p = a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] /= p;
        b[col] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rat f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

std::vector<RatVec> kernel_basis(const RatMat& m) {
    check_rectangular(m, "kernel_basis");
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();

    RatMat a = m;
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[row], a[piv]);

        const Rat p = a[row][col];
        for (std::size_t j = col; j < cols; ++j) a[row][j] /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rat f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        pivots.emplace_back(row, col);
        ++row;
    }

    std::vector<bool> is_pivot_col(cols, false);
    for (const auto& [r, c] : pivots) is_pivot_col[c] = true;

    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot_col[f]) continue;
        RatVec v(cols, Rat(0));
        v[f] = 1;
        for (const auto& [r, c] : pivots) v[c] = -a[r][f];
        basis.push_back(scale_to_coprime_integers(v));
    }
    return basis;
}

namespace {

// Full-tableau simplex state for max_margin_point. Columns:
//   [0, d)                z_j = x_j + 1 in [0, 2]
//   d, d+1                t = tp - tm (free variable split)
//   [d+2, d+2+m)          surplus s_i of margin row i
//   [d+2+m, d+2+m+d)      box slack r_j of z_j + r_j = 2
//   [base, base+a)        phase-1 artificials
struct Tableau {
    std::vector<RatVec> T;
    RatVec b;
    std::vector<int> basis;
    RatVec rc;  // reduced-cost row
    Rat value = 0;
    int limit; // columns < limit may enter (excludes artificials in phase 2)

    void pivot(std::size_t r, int e) {
        const Rat p = T[r][e];
        for (auto& v : T[r]) v /= p;
        b[r] /= p;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == r || T[i][e] == 0) continue;
            const Rat f = T[i][e];
            for (std::size_t j = 0; j < T[i].size(); ++j) T[i][j] -= f * T[r][j];
            b[i] -= f * b[r];
        }
        if (rc[e] != 0) {
            const Rat f = rc[e];
            for (std::size_t j = 0; j < rc.size(); ++j) rc[j] -= f * T[r][j];
            value += f * b[r];
        }
        basis[r] = e;
    }

    // Bland's rule: smallest-index entering column with negative reduced
    // cost; leaving row by minimum ratio, ties broken by smallest basic
    // variable index. Returns false at optimality.
    bool step() {
        int e = -1;
        for (int j = 0; j < limit; ++j) {
            if (rc[j] < 0) {
                e = j;
                break;
            }
        }
        if (e < 0) return false;

        std::ptrdiff_t r = -1;
        Rat best;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (T[i][e] <= 0) continue;
            const Rat ratio = b[i] / T[i][e];
            if (r < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[static_cast<std::size_t>(r)])) {
                r = static_cast<std::ptrdiff_t>(i);
                best = ratio;
            }
        }
        if (r < 0) {
            throw InternalError("max_margin_point: unbounded objective "
                                "(the bounding box should prevent this)");
        }
        pivot(static_cast<std::size_t>(r), e);
        return true;
    }

    void run() {
        while (step()) {
        }
    }
};

} // namespace

MarginPoint max_margin_point(const std::vector<MarginRow>& rows) {
    if (rows.empty()) {
        throw ValidationError("max_margin_point: empty constraint sequence");
    }
    const std::size_t d = rows[0].normal.size();
    if (d == 0) throw ValidationError("max_margin_point: zero-dimensional normals");
    const std::size_t m = rows.size();
    for (const auto& row : rows) {
        if (row.normal.size() != d) {
            throw ValidationError("max_margin_point: mixed normal dimensions");
        }
        if (row.sign != 1 && row.sign != -1) {
            throw ValidationError("max_margin_point: sign must be +1 or -1");
        }
        if (is_zero_vec(row.normal)) {
            throw ValidationError("max_margin_point: zero normal");
        }
    }

    const int col_tp = static_cast<int>(d);
    const int col_tm = col_tp + 1;
    const int col_s = col_tm + 1;
    const int col_r = col_s + static_cast<int>(m);
    const int base = col_r + static_cast<int>(d);

    // Margin rows with positive right-hand side need an artificial variable;
    // the rest start with their own surplus (row negated) or box slack basic.
    int n_art = 0;
    for (const auto& row : rows) {
        Rat beta = 0;
        for (std::size_t j = 0; j < d; ++j) beta += Rat(row.sign) * row.normal[j];
        if (beta > 0) ++n_art;
    }
    const int ncols = base + n_art;

    Tableau tab;
    tab.T.assign(m + d, RatVec(ncols, Rat(0)));
    tab.b.assign(m + d, Rat(0));
    tab.basis.assign(m + d, -1);
    tab.rc.assign(ncols, Rat(0));
    tab.limit = ncols;

    int art = base;
    for (std::size_t i = 0; i < m; ++i) {
        RatVec& row = tab.T[i];
        Rat beta = 0;
        for (std::size_t j = 0; j < d; ++j) {
            row[j] = Rat(rows[i].sign) * rows[i].normal[j];
            beta += row[j];
        }
        row[col_tp] = -1;
        row[col_tm] = 1;
        row[col_s + static_cast<int>(i)] = -1;
        tab.b[i] = beta;
        if (beta > 0) {
            row[art] = 1;
            tab.basis[i] = art;
            ++art;
        } else {
            for (auto& v : row) v = -v;
            tab.b[i] = -beta;
            tab.basis[i] = col_s + static_cast<int>(i);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        tab.T[m + j][j] = 1;
        tab.T[m + j][col_r + static_cast<int>(j)] = 1;
        tab.b[m + j] = 2;
        tab.basis[m + j] = col_r + static_cast<int>(j);
    }

    if (n_art > 0) {
        // Phase 1: minimize the sum of artificials (cost 1 each); reduced
        // costs start as -sum of the artificial-basic rows.
        for (std::size_t i = 0; i < tab.T.size(); ++i) {
            if (tab.basis[i] < base) continue;
            for (int j = 0; j < ncols; ++j) tab.rc[j] -= tab.T[i][j];
            tab.value += tab.b[i];
        }
        for (int j = base; j < ncols; ++j) tab.rc[j] += 1;
        tab.run();
        if (tab.value != 0) {
            throw InternalError("max_margin_point: phase 1 ended infeasible, "
                                "but x = 0, t <= 0 is always feasible");
        }
        // Pivot leftover artificials out of the basis (degenerate rows); a
        // row with no real nonzero entry is redundant and dropped.
        for (std::size_t i = 0; i < tab.T.size();) {
            if (tab.basis[i] < base) {
                ++i;
                continue;
            }
            int e = -1;
            for (int j = 0; j < base; ++j) {
                if (tab.T[i][j] != 0) {
                    e = j;
                    break;
                }
            }
            if (e >= 0) {
                tab.pivot(i, e);
                ++i;
            } else {
                tab.T.erase(tab.T.begin() + static_cast<std::ptrdiff_t>(i));
                tab.b.erase(tab.b.begin() + static_cast<std::ptrdiff_t>(i));
                tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    // Phase 2: minimize tm - tp, never re-admitting artificials.
    tab.limit = base;
    tab.rc.assign(ncols, Rat(0));
    tab.value = 0;
    tab.rc[col_tp] = -1;
    tab.rc[col_tm] = 1;
    for (std::size_t i = 0; i < tab.T.size(); ++i) {
        Rat c = 0;
        if (tab.basis[i] == col_tp) c = -1;
        if (tab.basis[i] == col_tm) c = 1;
        if (c == 0) continue;
        for (int j = 0; j < ncols; ++j) tab.rc[j] -= c * tab.T[i][j];
        tab.value += c * tab.b[i];
    }
    tab.run();

    RatVec solution(static_cast<std::size_t>(base), Rat(0));
    for (std::size_t i = 0; i < tab.T.size(); ++i) {
        if (tab.basis[i] >= 0 && tab.basis[i] < base) {
            solution[static_cast<std::size_t>(tab.basis[i])] = tab.b[i];
        }
    }

    MarginPoint out;
    out.t = solution[static_cast<std::size_t>(col_tp)] -
            solution[static_cast<std::size_t>(col_tm)];
    out.x.reserve(d);
    for (std::size_t j = 0; j < d; ++j) out.x.push_back(solution[j] - 1);

    for (const auto& row : rows) {
        if (Rat(row.sign) * dot(row.normal, out.x) < out.t) {
            throw InternalError("max_margin_point: optimum violates a "
                                "constraint it reported satisfying");
        }
    }
    return out;
}

} // namespace ibody
