#include "ibody/polynomial.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <unordered_map>

namespace ibody {

Poly Poly::constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw ValidationError("Poly::variable: index out of range");
    Poly p(nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    p.add_term(m, Rat(1));
    return p;
}

Poly Poly::linear_form(const RatVec& coeffs) {
    Poly p(coeffs.size());
    Monomial m(coeffs.size(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        m[i] = 1;
        p.add_term(m, coeffs[i]);
        m[i] = 0;
    }
    return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    if (m.size() != nvars_) throw ValidationError("Poly::add_term: wrong arity");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw ValidationError("Poly: mixed variable counts");
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    if (nvars_ != o.nvars_) throw ValidationError("Poly: mixed variable counts");
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw ValidationError("Poly: mixed variable counts");
    Poly out(nvars_);
    Monomial m(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly Poly::operator*(const Rat& c) const {
    Poly out(nvars_);
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Rat Poly::evaluate(const RatVec& x) const {
    if (x.size() != nvars_) throw ValidationError("Poly::evaluate: dimension mismatch");
    // Precompute the powers each variable actually needs.
    std::vector<std::uint32_t> maxe(nvars_, 0);
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], m[i]);
    }
    std::vector<std::vector<Rat>> pow(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        pow[i].resize(maxe[i] + 1);
        pow[i][0] = 1;
        for (std::uint32_t e = 1; e <= maxe[i]; ++e) pow[i][e] = pow[i][e - 1] * x[i];
    }
    Rat sum = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] > 0) t *= pow[i][m[i]];
        }
        sum += t;
    }
    return sum;
}

std::optional<unsigned> Poly::homogeneous_degree() const {
    if (terms_.empty()) return 0u;
    std::uint64_t deg = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::uint64_t d = 0;
        for (auto e : m) d += e;
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return std::nullopt;
        }
    }
    return static_cast<unsigned>(deg);
}

unsigned Poly::total_degree() const {
    unsigned deg = 0;
    for (const auto& [m, c] : terms_) {
        unsigned d = 0;
        for (auto e : m) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

namespace {

// ---------------------------------------------------------------------------
// Dense fast path for determinants of all-linear-form matrices. Minors over
// the first k rows and a column subset S are homogeneous of degree k, stored
// as dense coefficient vectors indexed by a per-degree monomial ranking.
// ---------------------------------------------------------------------------

struct DenseTables {
    std::size_t nvars = 0;
    // monos[k] lists degree-k monomials; up[k][r][v] ranks monos[k][r] * x_v
    // inside monos[k+1].
    std::vector<std::vector<Monomial>> monos;
    std::vector<std::vector<std::vector<int>>> up;

    void grow(std::size_t upto_degree) {
        if (monos.empty()) {
            monos.push_back({Monomial(nvars, 0)});
        }
        while (monos.size() <= upto_degree) {
            const std::size_t k = monos.size() - 1;
            std::map<Monomial, int, GradedLexDescending> rank;
            for (const auto& base : monos[k]) {
                Monomial m = base;
                for (std::size_t v = 0; v < nvars; ++v) {
                    m[v] += 1;
                    rank.emplace(m, -1);
                    m[v] -= 1;
                }
            }
            std::vector<Monomial> next;
            next.reserve(rank.size());
            for (auto& [m, r] : rank) {
                r = static_cast<int>(next.size());
                next.push_back(m);
            }
            up.resize(k + 1);
            up[k].assign(monos[k].size(), std::vector<int>(nvars, -1));
            for (std::size_t r = 0; r < monos[k].size(); ++r) {
                Monomial m = monos[k][r];
                for (std::size_t v = 0; v < nvars; ++v) {
                    m[v] += 1;
                    up[k][r][v] = rank.at(m);
                    m[v] -= 1;
                }
            }
            monos.push_back(std::move(next));
        }
    }
};

DenseTables& tables_for(std::size_t nvars, std::size_t degree) {
    thread_local std::unordered_map<std::size_t, DenseTables> cache;
    DenseTables& t = cache[nvars];
    t.nvars = nvars;
    t.grow(degree);
    return t;
}

Poly det_linear_dense(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    const std::size_t d = m[0][0].nvars();
    DenseTables& tab = tables_for(d, n);

    // Extract coefficient vectors; empty marks a zero entry.
    std::vector<std::vector<RatVec>> lin(n, std::vector<RatVec>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j].is_zero()) continue;
            RatVec v(d, Rat(0));
            for (const auto& [mono, c] : m[i][j].terms()) {
                for (std::size_t k = 0; k < d; ++k) {
                    if (mono[k] == 1) v[k] = c;
                }
            }
            lin[i][j] = std::move(v);
        }
    }

    // dp[S]: minor over rows [0, popcount(S)) and columns S; empty = zero.
    std::vector<std::vector<Rat>> dp(std::size_t(1) << n);
    dp[0] = {Rat(1)};
    for (std::uint32_t S = 1; S < (std::uint32_t(1) << n); ++S) {
        const int k = std::popcount(S);
        const std::size_t row = static_cast<std::size_t>(k) - 1;
        const std::size_t nk = tab.monos[static_cast<std::size_t>(k)].size();
        std::vector<Rat> acc;
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(S & (std::uint32_t(1) << j))) continue;
            const int sign = ((static_cast<int>(row) + pos) % 2 == 0) ? 1 : -1;
            ++pos;
            const auto& entry = lin[row][j];
            if (entry.empty()) continue;
            const auto& sub = dp[S & ~(std::uint32_t(1) << j)];
            if (sub.empty()) continue;
            if (acc.empty()) acc.assign(nk, Rat(0));
            const auto& up = tab.up[static_cast<std::size_t>(k) - 1];
            for (std::size_t r = 0; r < sub.size(); ++r) {
                if (sub[r] == 0) continue;
                for (std::size_t v = 0; v < d; ++v) {
                    if (entry[v] == 0) continue;
                    Rat term = entry[v] * sub[r];
                    if (sign < 0) term = -term;
                    acc[static_cast<std::size_t>(up[r][v])] += term;
                }
            }
        }
        bool all_zero = true;
        for (const auto& c : acc) {
            if (c != 0) {
                all_zero = false;
                break;
            }
        }
        if (!all_zero) dp[S] = std::move(acc);
    }

    Poly out(d);
    const auto& top = dp[(std::size_t(1) << n) - 1];
    for (std::size_t r = 0; r < top.size(); ++r) {
        if (top[r] != 0) out.add_term(tab.monos[n][r], top[r]);
    }
    return out;
}

Poly det_general_memo(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    const std::size_t d = m[0][0].nvars();
    std::vector<std::optional<Poly>> dp(std::size_t(1) << n);
    dp[0] = Poly::constant(d, Rat(1));
    for (std::uint32_t S = 1; S < (std::uint32_t(1) << n); ++S) {
        const int k = std::popcount(S);
        const std::size_t row = static_cast<std::size_t>(k) - 1;
        Poly acc(d);
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(S & (std::uint32_t(1) << j))) continue;
            const int sign = ((static_cast<int>(row) + pos) % 2 == 0) ? 1 : -1;
            ++pos;
            if (m[row][j].is_zero()) continue;
            const auto& sub = dp[S & ~(std::uint32_t(1) << j)];
            if (!sub || sub->is_zero()) continue;
            const Poly prod = m[row][j] * *sub;
            acc = (sign > 0) ? acc + prod : acc - prod;
        }
        dp[S] = std::move(acc);
    }
    return *dp[(std::size_t(1) << n) - 1];
}

} // namespace

Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    if (m.empty()) throw ValidationError("poly_det: empty matrix");
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw ValidationError("poly_det: non-square matrix");
    }
    const std::size_t d = m[0][0].nvars();
    if (n > 25) throw ValidationError("poly_det: matrix too large");
    bool all_linear = true;
    for (const auto& row : m) {
        for (const auto& e : row) {
            if (e.nvars() != d) throw ValidationError("poly_det: mixed variable counts");
            if (e.is_zero()) continue;
            const auto h = e.homogeneous_degree();
            if (!h || *h != 1) all_linear = false;
        }
    }
    return all_linear ? det_linear_dense(m) : det_general_memo(m);
}

std::optional<Poly> exact_divide(const Poly& p, const Poly& f) {
    if (f.is_zero()) throw ValidationError("exact_divide: zero divisor");
    if (p.nvars() != f.nvars()) throw ValidationError("exact_divide: mixed variable counts");
    Poly quotient(p.nvars());
    Poly r = p;
    const auto& ltf = *f.terms().begin();
    while (!r.is_zero()) {
        const auto& ltr = *r.terms().begin();
        Monomial q(ltr.first.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (ltr.first[i] < ltf.first[i]) return std::nullopt;
            q[i] = ltr.first[i] - ltf.first[i];
        }
        const Rat c = ltr.second / ltf.second;
        quotient.add_term(q, c);
        // r -= c * x^q * f
        Monomial shifted(q.size());
        for (const auto& [mf, cf] : f.terms()) {
            for (std::size_t i = 0; i < q.size(); ++i) shifted[i] = q[i] + mf[i];
            r.add_term(shifted, -c * cf);
        }
    }
    return quotient;
}

namespace {

// Positive scale making the coefficient set integral with content 1.
Rat integral_coprime_scale(const std::vector<const Rat*>& coeffs) {
    Int den_lcm = 1;
    for (const Rat* c : coeffs) {
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator_of(*c));
    }
    Int g = 0;
    for (const Rat* c : coeffs) {
        g = boost::multiprecision::gcd(g, numerator_of(*c) * (den_lcm / denominator_of(*c)));
    }
    return Rat(den_lcm, g);
}

} // namespace

std::pair<Poly, Rat> normalize(const Poly& p) {
    if (p.is_zero()) throw ValidationError("normalize: zero polynomial");
    std::vector<const Rat*> coeffs;
    for (const auto& [m, c] : p.terms()) coeffs.push_back(&c);
    Rat scale = integral_coprime_scale(coeffs);
    if (p.terms().begin()->second < 0) scale = -scale;
    return {p * scale, scale};
}

std::pair<Poly, Poly> normalize_pair(const Poly& p, const Poly& q,
                                     const RatVec& sign_point) {
    if (q.is_zero()) throw InternalError("normalize_pair: zero denominator");
    const Rat qv = q.evaluate(sign_point);
    if (qv == 0) {
        throw InternalError("normalize_pair: denominator vanishes at the sign point");
    }
    std::vector<const Rat*> coeffs;
    for (const auto& [m, c] : p.terms()) coeffs.push_back(&c);
    for (const auto& [m, c] : q.terms()) coeffs.push_back(&c);
    Rat scale = integral_coprime_scale(coeffs);
    if (qv < 0) scale = -scale;
    return {p * scale, q * scale};
}

std::string variable_name(std::size_t nvars, std::size_t index) {
    static const char* short_names[4] = {"x", "y", "z", "w"};
    if (nvars <= 4) return short_names[index];
    return "x" + std::to_string(index + 1);
}

std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        const Rat a = negative ? Rat(-c) : c;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variable_name(p.nvars(), i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out += rat_to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += rat_to_string(a) + "*" + mono;
        }
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t nvars;

    void skip_ws() {
        while (pos < s.size() && s[pos] == ' ') ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string number() {
        skip_ws();
        std::string out;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') out += s[pos++];
        if (out.empty()) throw ValidationError("polynomial parse: expected a number");
        return out;
    }

    std::string ident() {
        skip_ws();
        std::string out;
        while (pos < s.size() &&
               ((s[pos] >= 'a' && s[pos] <= 'z') || (s[pos] >= '0' && s[pos] <= '9'))) {
            if (out.empty() && s[pos] >= '0' && s[pos] <= '9') break;
            out += s[pos++];
        }
        return out;
    }

    int var_index(const std::string& name) {
        for (std::size_t i = 0; i < nvars; ++i) {
            if (variable_name(nvars, i) == name) return static_cast<int>(i);
        }
        throw ValidationError("polynomial parse: unknown variable \"" + name + "\"");
    }

    // factor := number [ '/' number ] | ident [ '^' number ]
    void factor(Rat& coeff, Monomial& mono) {
        skip_ws();
        if (pos >= s.size()) throw ValidationError("polynomial parse: truncated term");
        if (s[pos] >= '0' && s[pos] <= '9') {
            const std::string num = number();
            if (eat('/')) {
                coeff *= Rat(Int(num), Int(number()));
            } else {
                coeff *= Rat(Int(num));
            }
            return;
        }
        const std::string name = ident();
        if (name.empty()) throw ValidationError("polynomial parse: unexpected character");
        const int v = var_index(name);
        std::uint32_t e = 1;
        if (eat('^')) e = static_cast<std::uint32_t>(std::stoul(number()));
        mono[static_cast<std::size_t>(v)] += e;
    }

    Poly run() {
        Poly out(nvars);
        skip_ws();
        bool neg = false;
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        while (true) {
            Rat coeff = neg ? -1 : 1;
            Monomial mono(nvars, 0);
            factor(coeff, mono);
            while (eat('*')) factor(coeff, mono);
            out.add_term(mono, coeff);
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) {
                neg = false;
            } else if (eat('-')) {
                neg = true;
            } else {
                throw ValidationError("polynomial parse: expected '+' or '-'");
            }
        }
        return out;
    }
};

} // namespace

Poly parse_poly(const std::string& text, std::size_t nvars) {
    PolyParser parser{text, 0, nvars};
    return parser.run();
}

} // namespace ibody
