#include "ibody/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

// Canonical order on sign vectors: +1 sorts before -1, lexicographically.
bool signs_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i]; // +1 > -1 numerically
    }
    return a.size() < b.size();
}

struct SubsetIter {
    std::size_t n, k;
    std::vector<std::size_t> idx;
    bool done = false;

    SubsetIter(std::size_t n_, std::size_t k_) : n(n_), k(k_) {
        if (k > n || k == 0) { done = true; return; }
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    }
    void advance() {
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return;
            }
        }
        done = true;
    }
};

struct RayCandidate {
    RatVec ray;            // canonical: coprime ints, first nonzero positive
    std::vector<int> sig;  // sig[i] = sign(<normals[i], ray>)
};

// All lines spanned by kernels of rank-(d-1) subsets of the normals; every
// extreme ray of every chamber lies on d-1 independent hyperplanes, so this
// pool is exhaustive.
std::vector<RayCandidate> build_ray_pool(const NormalSet& ns) {
    if (ns.normals.empty()) return {};
    const std::size_t d = ns.normals[0].size();
    const std::size_t m = ns.m();
    std::set<RatVec> seen;
    std::vector<RayCandidate> pool;
    for (SubsetIter it(m, d - 1); !it.done; it.advance()) {
        RatMat rows;
        rows.reserve(d - 1);
        for (std::size_t i : it.idx) rows.push_back(ns.normals[i]);
        std::vector<RatVec> kern = kernel_basis(rows);
        if (kern.size() != 1) continue;
        RatVec ray = kern[0];
        if (!seen.insert(ray).second) continue;
        RayCandidate cand;
        cand.sig.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            cand.sig.push_back(sign_of(dot(ns.normals[i], ray)));
        cand.ray = std::move(ray);
        pool.push_back(std::move(cand));
    }
    return pool;
}

// Both orientations of each pool candidate tested against the chamber signs;
// a ray is kept when every inner product sign is zero or agrees.
std::vector<RatVec> rays_from_pool(const std::vector<RayCandidate>& pool,
                                   const std::vector<int>& signs) {
    std::vector<RatVec> rays;
    for (const RayCandidate& cand : pool) {
        bool plus_ok = true, minus_ok = true;
        for (std::size_t i = 0; i < signs.size(); ++i) {
            if (cand.sig[i] == 0) continue;
            if (cand.sig[i] != signs[i]) plus_ok = false;
            if (-cand.sig[i] != signs[i]) minus_ok = false;
            if (!plus_ok && !minus_ok) break;
        }
        if (plus_ok) rays.push_back(cand.ray);
        if (minus_ok) {
            RatVec neg(cand.ray.size());
            for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -cand.ray[j];
            rays.push_back(std::move(neg));
        }
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

std::vector<MarginRow> margin_rows(const NormalSet& ns,
                                   const std::vector<int>& signs,
                                   std::size_t count) {
    std::vector<MarginRow> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        rows.push_back(MarginRow{ns.normals[i], signs[i]});
    return rows;
}

} // namespace

NormalSet build_normals(const VPolytope& p) {
    std::set<RatVec> seen;
    for (const RatVec& v : p.vertices()) {
        if (is_zero_vec(v)) continue;
        seen.insert(scale_to_coprime_integers(v));
    }
    if (seen.empty())
        throw ValidationError("arrangement: no nonzero vertex directions");
    NormalSet ns;
    ns.normals.assign(seen.begin(), seen.end());
    return ns;
}

std::vector<RatVec> zonotope_generators(const VPolytope& p) {
    return build_normals(p).normals;
}

std::size_t chamber_count_bound(std::size_t m, std::size_t d) {
    std::size_t total = 0;
    for (std::size_t j = 0; j <= d && j <= m; ++j) {
        // C(m, j) computed incrementally
        std::size_t c = 1;
        for (std::size_t i = 0; i < j; ++i) c = c * (m - i) / (i + 1);
        total += c;
    }
    return total;
}

std::vector<Chamber> enumerate_chambers(const NormalSet& ns) {
    const std::size_t m = ns.m();
    if (m == 0) throw ValidationError("enumerate_chambers: empty normal set");
    const std::size_t d = ns.normals[0].size();

    struct Partial {
        std::vector<int> signs;
        RatVec witness;
    };

    std::vector<Partial> partial;
    {
        RatVec w = ns.normals[0];
        RatVec nw(d);
        for (std::size_t j = 0; j < d; ++j) nw[j] = -w[j];
        partial.push_back({{+1}, std::move(w)});
        partial.push_back({{-1}, std::move(nw)});
    }

    for (std::size_t k = 1; k < m; ++k) {
        const RatVec& nk = ns.normals[k];
        std::vector<Partial> next;
        next.reserve(partial.size() * 2);
        for (Partial& pc : partial) {
            int s = sign_of(dot(nk, pc.witness));
            if (s != 0) {
                // The witness keeps its side for free; only the opposite
                // side needs a feasibility LP.
                std::vector<int> flipped = pc.signs;
                flipped.push_back(-s);
                std::vector<MarginRow> rows = margin_rows(ns, flipped, k + 1);
                MarginPoint opt = max_margin_point(rows);
                pc.signs.push_back(s);
                next.push_back(std::move(pc));
                if (opt.t > 0)
                    next.push_back({std::move(flipped), std::move(opt.x)});
            } else {
                // Witness on the new hyperplane: both sides are nonempty.
                // Shift it off the hyperplane by a step small enough to keep
                // every existing strict margin positive.
                Rat delta = 1;
                for (std::size_t i = 0; i < k; ++i) {
                    Rat c = dot(ns.normals[i], nk);
                    if (c == 0) continue;
                    if (c < 0) c = -c;
                    Rat margin = Rat(pc.signs[i]) * dot(ns.normals[i], pc.witness);
                    Rat step = margin / (2 * c);
                    if (step < delta) delta = step;
                }
                RatVec wp = pc.witness, wm = pc.witness;
                for (std::size_t j = 0; j < d; ++j) {
                    wp[j] += delta * nk[j];
                    wm[j] -= delta * nk[j];
                }
                std::vector<int> plus = pc.signs, minus = std::move(pc.signs);
                plus.push_back(+1);
                minus.push_back(-1);
                next.push_back({std::move(plus), std::move(wp)});
                next.push_back({std::move(minus), std::move(wm)});
            }
        }
        partial = std::move(next);
        if (partial.size() > chamber_count_bound(k + 1, d))
            throw InternalError("enumerate_chambers: count exceeds bound");
    }

    std::sort(partial.begin(), partial.end(),
              [](const Partial& a, const Partial& b) {
                  return signs_less(a.signs, b.signs);
              });

    std::vector<RayCandidate> pool = build_ray_pool(ns);
    std::vector<Chamber> chambers;
    chambers.reserve(partial.size());
    for (std::size_t i = 0; i < partial.size(); ++i) {
        Chamber c;
        c.id = i;
        c.signs = std::move(partial[i].signs);
        c.rays = rays_from_pool(pool, c.signs);
        chambers.push_back(std::move(c));
    }

    // Canonical witnesses: margin LP on the full sign system, independent of
    // insertion history. Chambers come in antipodal pairs (the arrangement is
    // central), and the margin LP's feasible region is centrally symmetric,
    // so the partner's witness is the exact negation — one LP per pair.
    std::map<std::vector<int>, std::size_t> by_signs;
    for (const Chamber& c : chambers) by_signs.emplace(c.signs, c.id);
    for (Chamber& c : chambers) {
        if (!c.witness.empty()) continue;
        MarginPoint opt = max_margin_point(margin_rows(ns, c.signs, m));
        if (!(opt.t > 0))
            throw InternalError("enumerate_chambers: canonical witness LP "
                                "found an empty chamber");
        c.witness = std::move(opt.x);
        std::vector<int> negated(m);
        for (std::size_t i = 0; i < m; ++i) negated[i] = -c.signs[i];
        auto it = by_signs.find(negated);
        if (it == by_signs.end())
            throw InternalError("enumerate_chambers: missing antipodal "
                                "chamber");
        Chamber& partner = chambers[it->second];
        if (partner.witness.empty()) {
            partner.witness.resize(d);
            for (std::size_t j = 0; j < d; ++j)
                partner.witness[j] = -c.witness[j];
        }
    }
    return chambers;
}

std::vector<RatVec> chamber_rays(const NormalSet& ns, const Chamber& c) {
    return rays_from_pool(build_ray_pool(ns), c.signs);
}

std::vector<std::pair<std::size_t, std::size_t>> adjacency_graph(
    const NormalSet& ns, const std::vector<Chamber>& chambers) {
    const std::size_t m = ns.m();
    if (chambers.empty()) return {};
    const std::size_t d = ns.normals[0].size();

    std::map<std::vector<int>, std::size_t> by_signs;
    for (const Chamber& c : chambers) by_signs.emplace(c.signs, c.id);

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Chamber& c : chambers) {
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<int> flipped = c.signs;
            flipped[k] = -flipped[k];
            auto it = by_signs.find(flipped);
            if (it == by_signs.end() || it->second < c.id) continue;
            // Certify the shared wall is (d-1)-dimensional: strict margins
            // for all other constraints restricted to the hyperplane of
            // normal k.
            RatMat nk_row{ns.normals[k]};
            std::vector<RatVec> basis = kernel_basis(nk_row);
            if (basis.size() != d - 1)
                throw InternalError("adjacency_graph: bad wall basis");
            std::vector<MarginRow> rows;
            rows.reserve(m - 1);
            bool degenerate = false;
            for (std::size_t i = 0; i < m && !degenerate; ++i) {
                if (i == k) continue;
                RatVec restricted(d - 1);
                for (std::size_t l = 0; l < d - 1; ++l)
                    restricted[l] = dot(basis[l], ns.normals[i]);
                if (is_zero_vec(restricted)) {
                    degenerate = true;
                    break;
                }
                rows.push_back(MarginRow{std::move(restricted), c.signs[i]});
            }
            if (degenerate) continue;
            bool adjacent = rows.empty();
            if (!adjacent) adjacent = max_margin_point(rows).t > 0;
            if (adjacent) edges.emplace_back(c.id, it->second);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

LocateResult locate(const NormalSet& ns, const std::vector<Chamber>& chambers,
                    const RatVec& x) {
    if (ns.normals.empty())
        throw ValidationError("locate: empty normal set");
    if (x.size() != ns.normals[0].size())
        throw ValidationError("locate: dimension mismatch");
    if (is_zero_vec(x))
        throw ValidationError("locate: the zero vector lies in every wall");

    LocateResult out;
    std::vector<int> signs(ns.m());
    for (std::size_t i = 0; i < ns.m(); ++i) {
        signs[i] = sign_of(dot(ns.normals[i], x));
        if (signs[i] == 0) out.on_walls.push_back(i);
    }
    if (!out.on_walls.empty()) return out;

    auto it = std::lower_bound(
        chambers.begin(), chambers.end(), signs,
        [](const Chamber& c, const std::vector<int>& s) {
            return signs_less(c.signs, s);
        });
    if (it == chambers.end() || it->signs != signs)
        throw InternalError("locate: sign vector not among the chambers");
    out.chamber_id = it->id;
    return out;
}

} // namespace ibody
