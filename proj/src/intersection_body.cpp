#include "ibody/intersection_body.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "ibody/errors.hpp"
#include "ibody/triangulate.hpp"

namespace ibody {

namespace {

RatVec subtract(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

Rat factorial(std::size_t n) {
    Rat f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= Rat(i);
    return f;
}

// True when the affine line through a and b passes through the origin,
// i.e. a and b are proportional (either may be zero). Such an edge meets
// every central hyperplane at the origin itself, never at a proper
// crossing point.
bool edge_span_contains_origin(const RatVec& a, const RatVec& b) {
    if (is_zero_vec(a) || is_zero_vec(b)) return true;
    return scale_to_coprime_integers(a) == scale_to_coprime_integers(b);
}

// Crossed edges of the chamber, each oriented so that the second endpoint
// is on the strictly positive side of the witness.
struct OrientedEdge {
    std::size_t edge_index;
    RatVec a; // <a, witness> < 0
    RatVec b; // <b, witness> > 0
};

std::vector<OrientedEdge> oriented_crossed_edges(
    const VPolytope& p, const Chamber& c,
    const std::vector<std::size_t>& crossed) {
    std::vector<OrientedEdge> out;
    out.reserve(crossed.size());
    for (std::size_t e : crossed) {
        const Edge& edge = p.edges()[e];
        RatVec a = p.vertices()[edge.a];
        RatVec b = p.vertices()[edge.b];
        if (sign_of(dot(b, c.witness)) < 0) std::swap(a, b);
        out.push_back(OrientedEdge{e, std::move(a), std::move(b)});
    }
    return out;
}

// Exact crossing point of edge [a, b] with the hyperplane orthogonal to u.
RatVec crossing_point(const RatVec& a, const RatVec& b, const RatVec& u) {
    Rat da = dot(a, u), db = dot(b, u), denom = db - da;
    RatVec v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        v[k] = (db * a[k] - da * b[k]) / denom;
    return v;
}

} // namespace

SymbolicVertex symbolic_vertex(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw ValidationError("symbolic_vertex: dimension mismatch");
    if (a == b)
        throw ValidationError(
            "symbolic_vertex: degenerate edge, denominator vanishes");
    const std::size_t d = a.size();
    SymbolicVertex v;
    v.numerators.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        // <b,x> a_k - <a,x> b_k as a linear form in x.
        RatVec coeffs(d);
        for (std::size_t j = 0; j < d; ++j)
            coeffs[j] = a[k] * b[j] - b[k] * a[j];
        v.numerators.push_back(Poly::linear_form(coeffs));
    }
    v.denominator = subtract(b, a);
    return v;
}

SectionCombinatorics section_combinatorics(const VPolytope& p,
                                           const Chamber& c) {
    const std::size_t d = p.dimension();
    const RatVec& w = c.witness;
    if (w.size() != d)
        throw ValidationError("section_combinatorics: witness dimension "
                              "mismatch");

    SectionCombinatorics sc;
    sc.chamber_id = c.id;

    std::vector<int> vsign(p.vertices().size());
    for (std::size_t i = 0; i < p.vertices().size(); ++i)
        vsign[i] = sign_of(dot(p.vertices()[i], w));

    for (std::size_t e = 0; e < p.edges().size(); ++e) {
        const Edge& edge = p.edges()[e];
        const RatVec& a = p.vertices()[edge.a];
        const RatVec& b = p.vertices()[edge.b];
        if (edge_span_contains_origin(a, b)) continue;
        if (vsign[edge.a] == 0 || vsign[edge.b] == 0)
            throw InternalError(
                "section_combinatorics: a vertex lies on the witness "
                "hyperplane of an open chamber");
        if (vsign[edge.a] * vsign[edge.b] < 0) sc.crossed_edges.push_back(e);
    }
    if (sc.crossed_edges.empty()) return sc; // zero piece downstream

    std::vector<OrientedEdge> oriented =
        oriented_crossed_edges(p, c, sc.crossed_edges);

    for (std::size_t f = 0; f < p.facets().size(); ++f) {
        const HFacet& facet = p.facets()[f];
        if (facet.offset == 0) continue; // cone apex lies in this facet
        std::vector<std::size_t> edges_here; // positions into crossed_edges
        for (std::size_t k = 0; k < sc.crossed_edges.size(); ++k) {
            const Edge& edge = p.edges()[sc.crossed_edges[k]];
            const auto& vi = facet.vertex_indices;
            if (std::binary_search(vi.begin(), vi.end(), edge.a) &&
                std::binary_search(vi.begin(), vi.end(), edge.b))
                edges_here.push_back(k);
        }
        if (edges_here.empty()) continue;

        std::vector<std::size_t> edge_ids;
        std::vector<RatVec> points;
        std::vector<std::size_t> exps;
        edge_ids.reserve(edges_here.size());
        points.reserve(edges_here.size());
        for (std::size_t pos : edges_here) {
            edge_ids.push_back(sc.crossed_edges[pos]);
            points.push_back(crossing_point(oriented[pos].a, oriented[pos].b, w));
            exps.push_back(exps.size());
        }
        auto cells_local = triangulate_points(points, 3, exps);
        const int s = sign_of(facet.offset);
        for (const std::vector<std::size_t>& cell : cells_local) {
            if (cell.size() != d - 1)
                throw InternalError(
                    "section_combinatorics: facet section has unexpected "
                    "dimension");
            std::vector<std::size_t> cell_edges;
            cell_edges.reserve(cell.size());
            for (std::size_t i : cell) cell_edges.push_back(edge_ids[i]);
            sc.cells.push_back(std::move(cell_edges));
            sc.cell_signs.push_back(s);
        }
        sc.section_facets.emplace_back(f, std::move(edge_ids));
    }
    return sc;
}

ChamberPiece chamber_radial(const VPolytope& p, const Chamber& c,
                            const SectionCombinatorics& sc,
                            NormalizationMode mode) {
    const std::size_t d = p.dimension();
    ChamberPiece piece;
    piece.chamber_id = c.id;
    piece.mode = mode;
    piece.crossed_edge_count = sc.crossed_edges.size();

    if (sc.cells.empty()) {
        piece.is_zero_piece = true;
        piece.p_tilde = Poly(d);
        piece.q = Poly::constant(d, 1);
        piece.boundary_poly = Poly::constant(d, 1);
        piece.degree = 0;
        return piece;
    }

    const RatVec& w = c.witness;
    std::vector<OrientedEdge> oriented =
        oriented_crossed_edges(p, c, sc.crossed_edges);
    std::map<std::size_t, const OrientedEdge*> by_edge;
    for (const OrientedEdge& oe : oriented) by_edge.emplace(oe.edge_index, &oe);

    // Denominator: one linear factor per proportionality class of crossed
    // edge directions.
    std::set<RatVec> dir_set;
    for (const OrientedEdge& oe : oriented)
        dir_set.insert(scale_to_coprime_integers(subtract(oe.b, oe.a)));
    std::vector<RatVec> dirs(dir_set.begin(), dir_set.end());
    auto product_of = [&d](const std::vector<RatVec>& forms) {
        Poly prod = Poly::constant(d, 1);
        for (const RatVec& f : forms) prod = prod * Poly::linear_form(f);
        return prod;
    };
    Poly q = product_of(dirs);

    // Numerator: sum over cells of +-det(M-hat) * q / (cell's own actual
    // denominator product), each term an exact polynomial division.
    Poly total(d);
    for (std::size_t ci = 0; ci < sc.cells.size(); ++ci) {
        const std::vector<std::size_t>& cell = sc.cells[ci];
        std::vector<std::vector<Poly>> mhat;
        mhat.reserve(d);
        Poly cell_denom = Poly::constant(d, 1);
        for (std::size_t e : cell) {
            const OrientedEdge& oe = *by_edge.at(e);
            SymbolicVertex sv = symbolic_vertex(oe.a, oe.b);
            mhat.push_back(std::move(sv.numerators));
            cell_denom = cell_denom * Poly::linear_form(sv.denominator);
        }
        std::vector<Poly> last;
        last.reserve(d);
        for (std::size_t k = 0; k < d; ++k)
            last.push_back(Poly::variable(d, k));
        mhat.push_back(std::move(last));

        Poly det_hat = poly_det(mhat);
        int eps = sign_of(det_hat.evaluate(w));
        if (eps == 0)
            throw InternalError("chamber_radial: cell determinant vanishes "
                                "at the witness");
        std::optional<Poly> term = exact_divide(det_hat * q, cell_denom);
        if (!term)
            throw InternalError("chamber_radial: cell denominator does not "
                                "divide det * q");
        total = total + *term * Rat(sc.cell_signs[ci] * eps);
    }

    // The assembled numerator always carries the factor |x|^2.
    Poly norm2(d);
    for (std::size_t k = 0; k < d; ++k) {
        Monomial m(d, 0);
        m[k] = 2;
        norm2.add_term(m, 1);
    }
    std::optional<Poly> reduced = exact_divide(total, norm2);
    if (!reduced)
        throw InternalError(
            "chamber_radial: numerator is not divisible by |x|^2");
    Rat scale = mode == NormalizationMode::TrueVolume
                    ? Rat(1) / factorial(d - 1)
                    : Rat(1) / factorial(d);
    Poly p_tilde = *reduced * scale;

    // Cancel any denominator factor that happens to divide the numerator.
    bool cancelled = false;
    for (std::size_t i = 0; i < dirs.size();) {
        std::optional<Poly> quo = exact_divide(p_tilde, Poly::linear_form(dirs[i]));
        if (quo) {
            p_tilde = std::move(*quo);
            dirs.erase(dirs.begin() + static_cast<std::ptrdiff_t>(i));
            cancelled = true;
        } else {
            ++i;
        }
    }
    if (cancelled) q = product_of(dirs);

    auto [np, nq] = normalize_pair(p_tilde, q, w);
    piece.p_tilde = std::move(np);
    piece.q = std::move(nq);
    if (!(piece.p_tilde.evaluate(w) > 0))
        throw InternalError("chamber_radial: section volume not positive at "
                            "the witness");
    std::optional<unsigned> dp = piece.p_tilde.homogeneous_degree();
    std::optional<unsigned> dq = piece.q.homogeneous_degree();
    if (!dp || !dq || *dp + 1 != *dq)
        throw InternalError("chamber_radial: numerator degree is not one "
                            "below denominator degree");
    piece.boundary_poly = normalize(piece.q - piece.p_tilde).first;
    piece.degree = piece.boundary_poly.total_degree();
    return piece;
}

std::vector<ChamberPiece> radial_function(const VPolytope& p,
                                          const NormalSet& ns,
                                          const std::vector<Chamber>& chambers,
                                          NormalizationMode mode,
                                          unsigned jobs) {
    (void)ns;
    if (jobs == 0) jobs = 1;
    std::vector<ChamberPiece> pieces(chambers.size());

    auto compute_one = [&](std::size_t i) {
        pieces[i] = chamber_radial(p, chambers[i],
                                   section_combinatorics(p, chambers[i]), mode);
    };

    if (jobs == 1 || chambers.size() <= 1) {
        for (std::size_t i = 0; i < chambers.size(); ++i) compute_one(i);
        return pieces;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= chambers.size()) return;
            try {
                compute_one(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(chambers.size()));
    threads.reserve(n);
    for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return pieces;
}

IntersectionBody::IntersectionBody(VPolytope p, NormalizationMode mode,
                                   unsigned jobs)
    : polytope_(std::move(p)),
      mode_(mode),
      normals_(build_normals(polytope_)),
      chambers_(enumerate_chambers(normals_)),
      pieces_(radial_function(polytope_, normals_, chambers_, mode, jobs)) {}

RadialValue IntersectionBody::evaluate_radial(const RatVec& x) const {
    if (x.size() != polytope_.dimension())
        throw ValidationError("evaluate_radial: dimension mismatch");
    if (is_zero_vec(x)) return RadialValue{true, 0};

    LocateResult loc = locate(normals_, chambers_, x);
    if (loc.chamber_id) {
        const ChamberPiece& piece = pieces_[*loc.chamber_id];
        if (piece.is_zero_piece) return RadialValue{false, 0};
        return RadialValue{false,
                           piece.p_tilde.evaluate(x) / piece.q.evaluate(x)};
    }

    // Wall point: the maximum over all pieces whose chamber closure
    // contains x (all chambers agreeing with x's nonzero signs).
    std::vector<int> xsigns(normals_.m());
    for (std::size_t i = 0; i < normals_.m(); ++i)
        xsigns[i] = sign_of(dot(normals_.normals[i], x));
    Rat best = 0;
    for (const Chamber& c : chambers_) {
        bool agrees = true;
        for (std::size_t i = 0; i < xsigns.size() && agrees; ++i)
            if (xsigns[i] != 0 && xsigns[i] != c.signs[i]) agrees = false;
        if (!agrees) continue;
        const ChamberPiece& piece = pieces_[c.id];
        if (piece.is_zero_piece) continue;
        Rat qv = piece.q.evaluate(x);
        if (qv == 0) continue; // removable 0/0 on this wall; neighbors decide
        Rat val = piece.p_tilde.evaluate(x) / qv;
        if (val > best) best = val;
    }
    return RadialValue{false, best};
}

bool IntersectionBody::membership(const RatVec& x) const {
    if (x.size() != polytope_.dimension())
        throw ValidationError("membership: dimension mismatch");
    if (is_zero_vec(x)) return true; // the center of a star body
    RadialValue r = evaluate_radial(x);
    return r.is_infinite || r.value >= 1;
}

DegreeReport IntersectionBody::degree_table() const {
    DegreeReport report;
    const std::size_t d = polytope_.dimension();

    // Central symmetry: the vertex set is closed under negation.
    std::set<RatVec> vertex_set(polytope_.vertices().begin(),
                                polytope_.vertices().end());
    report.centrally_symmetric = true;
    for (const RatVec& v : polytope_.vertices()) {
        RatVec neg(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];
        if (!vertex_set.count(neg)) {
            report.centrally_symmetric = false;
            break;
        }
    }

    std::size_t f1 = polytope_.edges().size();
    if (f1 < d - 1)
        throw InternalError("degree_table: fewer edges than dimension - 1");
    report.global_bound = f1 - (d - 1);
    if (report.centrally_symmetric) report.global_bound /= 2;

    report.per_chamber_bound.reserve(pieces_.size());
    for (const ChamberPiece& piece : pieces_) {
        report.per_chamber_bound.push_back(piece.crossed_edge_count);
        if (piece.is_zero_piece) continue;
        report.histogram[piece.degree] += 1;
        if (piece.degree > piece.crossed_edge_count)
            throw InternalError(
                "degree_table: piece degree exceeds its crossed-edge count");
        if (piece.degree > report.global_bound)
            throw InternalError(
                "degree_table: piece degree exceeds the global bound");
    }
    report.satisfied = true;
    return report;
}

BoundarySummary IntersectionBody::boundary_components() const {
    BoundarySummary summary;
    std::map<std::string, std::size_t> index_by_text;
    for (const ChamberPiece& piece : pieces_) {
        if (piece.is_zero_piece) continue;
        summary.components.push_back(
            BoundaryComponent{piece.chamber_id, piece.boundary_poly,
                              piece.degree});
        std::string key = poly_to_string(piece.boundary_poly);
        auto it = index_by_text.find(key);
        if (it == index_by_text.end()) {
            index_by_text.emplace(std::move(key), summary.distinct.size());
            summary.distinct.emplace_back(
                piece.boundary_poly,
                std::vector<std::size_t>{piece.chamber_id});
        } else {
            summary.distinct[it->second].second.push_back(piece.chamber_id);
        }
    }
    return summary;
}

} // namespace ibody
