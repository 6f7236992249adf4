#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ibody/errors.hpp"
#include "ibody/io.hpp"
#include "ibody/oracle.hpp"
#include "ibody/rng.hpp"

using namespace ibody;

namespace {

unsigned default_jobs() {
    if (const char* env = std::getenv("IBODY_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << text;
}

RatVec parse_point(const std::string& text, std::size_t dim) {
    RatVec point;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            point.push_back(parse_rat(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) point.push_back(parse_rat(cur));
    if (point.size() != dim)
        throw ValidationError("--point needs " + std::to_string(dim) +
                              " comma-separated coordinates");
    return point;
}

int run_compute(const std::string& input, const std::string& mode,
                const std::string& output, unsigned jobs) {
    VPolytope p = read_polytope_file(input);
    IntersectionBody body(p, mode_from_string(mode), jobs);
    write_text(output, result_to_json(body).dump(2) + "\n");
    return 0;
}

int run_member(const std::string& input, const std::string& mode,
               const std::string& point_text, unsigned jobs) {
    VPolytope p = read_polytope_file(input);
    IntersectionBody body(p, mode_from_string(mode), jobs);
    RatVec x = parse_point(point_text, p.dimension());
    RadialValue rho = body.evaluate_radial(x);
    std::string verdict;
    if (rho.is_infinite) {
        verdict = "inside";
    } else if (rho.value > 1) {
        verdict = "inside";
    } else if (rho.value == 1) {
        verdict = "boundary";
    } else {
        verdict = "outside";
    }
    std::cout << verdict << " rho="
              << (rho.is_infinite ? std::string("inf")
                                  : rat_to_string(rho.value))
              << "\n";
    return 0;
}

int run_mesh(const std::string& input, const std::string& mode,
             unsigned refine, const std::string& obj, unsigned jobs) {
    VPolytope p = read_polytope_file(input);
    IntersectionBody body(p, mode_from_string(mode), jobs);
    write_text(obj, mesh_to_obj(body.mesh_boundary(refine)));
    return 0;
}

int run_graph(const std::string& input, const std::string& mode,
              const std::string& dot, unsigned jobs) {
    VPolytope p = read_polytope_file(input);
    IntersectionBody body(p, mode_from_string(mode), jobs);
    auto adjacency = adjacency_graph(body.normals(), body.chambers());
    write_text(dot, chambers_to_dot(body.pieces(), adjacency));
    return 0;
}

int run_check(const std::string& input, const std::string& mode,
              unsigned samples, std::uint64_t seed, unsigned jobs) {
    std::ifstream in(input);
    if (!in) throw ValidationError("cannot open input file: " + input);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }

    if (doc.contains("chambers")) {
        std::string violated = validate_result_json(doc);
        if (!violated.empty()) {
            std::cout << "check result-file: FAIL (" << violated << ")\n";
            return 2;
        }
        std::cout << "check result-file: ok\n"
                  << "all checks passed\n";
        return 0;
    }

    VPolytope p = polytope_from_json(doc);
    IntersectionBody body(p, mode_from_string(mode), jobs);
    Rng rng(seed);
    bool ok = true;
    auto report = [&](const std::string& name, bool passed) {
        std::cout << "check " << name << (passed ? ": ok" : ": FAIL") << "\n";
        ok = ok && passed;
    };

    // Exact section-volume oracle at the witness and sampled interior
    // points of every chamber (identity p * |x|^2 == q * W).
    bool oracle_ok = true;
    Rat scale = body.mode() == NormalizationMode::TrueVolume
                    ? Rat(1)
                    : Rat(p.dimension());
    for (const Chamber& c : body.chambers()) {
        const ChamberPiece& piece = body.pieces()[c.id];
        for (unsigned t = 0; t < samples + 1 && oracle_ok; ++t) {
            RatVec x = c.witness;
            if (t > 0)
                for (const RatVec& r : c.rays) {
                    Rat lambda(rng.range(0, 7), 1 + rng.range(0, 3));
                    for (std::size_t j = 0; j < x.size(); ++j)
                        x[j] += lambda * r[j];
                }
            Rat w = section_volume_scaled(p, x);
            oracle_ok = piece.p_tilde.evaluate(x) * dot(x, x) * scale ==
                        piece.q.evaluate(x) * w;
        }
        if (!oracle_ok) break;
    }
    report("section-volume oracle", oracle_ok);

    DegreeReport degrees = body.degree_table();
    report("degree bounds", degrees.satisfied);

    // Piece continuity across a sample of walls.
    auto adjacency = adjacency_graph(body.normals(), body.chambers());
    bool walls_ok = true;
    std::size_t step = std::max<std::size_t>(
        1, adjacency.size() / std::max(1u, samples * 8));
    for (std::size_t i = 0; i < adjacency.size() && walls_ok; i += step) {
        auto [ia, ib] = adjacency[i];
        const Chamber& ca = body.chambers()[ia];
        const Chamber& cb = body.chambers()[ib];
        std::size_t k = 0;
        for (std::size_t j = 0; j < ca.signs.size(); ++j)
            if (ca.signs[j] != cb.signs[j]) k = j;
        const RatVec& nk = body.normals().normals[k];
        Rat da = dot(nk, ca.witness), db = dot(nk, cb.witness);
        Rat t = da / (da - db);
        RatVec wall(ca.witness.size());
        for (std::size_t j = 0; j < wall.size(); ++j)
            wall[j] =
                ca.witness[j] + t * (cb.witness[j] - ca.witness[j]);
        const ChamberPiece& fa = body.pieces()[ia];
        const ChamberPiece& fb = body.pieces()[ib];
        walls_ok = fa.p_tilde.evaluate(wall) * fb.q.evaluate(wall) ==
                   fb.p_tilde.evaluate(wall) * fa.q.evaluate(wall);
    }
    report("wall continuity", walls_ok);

    // Antipodal symmetry of the sampled radial values.
    bool antipodal_ok = true;
    for (const Chamber& c : body.chambers()) {
        RatVec neg(c.witness.size());
        for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -c.witness[j];
        RadialValue a = body.evaluate_radial(c.witness);
        RadialValue b = body.evaluate_radial(neg);
        antipodal_ok = antipodal_ok && !a.is_infinite && !b.is_infinite &&
                       a.value == b.value;
    }
    report("antipodal symmetry", antipodal_ok);

    // Pyramid decomposition from a far exterior apex.
    RatVec apex(p.dimension(), Rat(0));
    Rat far(1);
    for (const RatVec& v : p.vertices())
        for (const Rat& coord : v)
            if (abs(coord) + 1 > far) far = abs(coord) + 1;
    apex[0] = 3 * far;
    apex[1] = 2 * far;
    report("pyramid decomposition", lemma31_check(p, apex));

    if (p.dimension() == 2) {
        bool symmetric = true;
        std::set<RatVec> verts(p.vertices().begin(), p.vertices().end());
        for (const RatVec& v : p.vertices())
            if (!verts.count(RatVec{-v[0], -v[1]})) symmetric = false;
        if (symmetric)
            report("quarter-turn dilation law",
                   rotate2d_check(body, seed, 100));
    }

    std::cout << (ok ? "all checks passed\n" : "checks FAILED\n");
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact engine for intersection bodies of rational polytopes"};
    app.require_subcommand(1);

    std::string input, output, point_text, obj_path, dot_path;
    std::string mode = "true";
    unsigned jobs = default_jobs();
    unsigned refine = 0;
    unsigned samples = 5;
    std::uint64_t seed = 20260816ull;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "Polytope JSON file")->required();
        cmd->add_option("--mode", mode,
                        "Radial normalization: true (Euclidean section "
                        "volume) or cone (volume of the unit-apex cone)");
        cmd->add_option("--jobs", jobs,
                        "Worker threads (default: env IBODY_JOBS or 1)");
    };

    CLI::App* compute = app.add_subcommand(
        "compute", "Compute the piecewise-rational radial function");
    add_common(compute);
    compute->add_option("--output", output, "Result JSON path (default: stdout)");

    CLI::App* member = app.add_subcommand(
        "member", "Classify a point against the intersection body");
    add_common(member);
    member->add_option("--point", point_text, "Comma-separated coordinates")
        ->required();

    CLI::App* mesh = app.add_subcommand(
        "mesh", "Triangulate the boundary surface (dimension 3) as OBJ");
    add_common(mesh);
    mesh->add_option("--refine", refine, "Barycentric refinement rounds");
    mesh->add_option("--obj", obj_path, "OBJ output path (default: stdout)");

    CLI::App* graph = app.add_subcommand(
        "graph", "Chamber adjacency graph as DOT, nodes labeled by degree");
    add_common(graph);
    graph->add_option("--dot", dot_path, "DOT output path (default: stdout)");

    CLI::App* check = app.add_subcommand(
        "check", "Run the invariant suite on a polytope or result file");
    add_common(check);
    check->add_option("--samples", samples, "Sampled points per chamber");
    check->add_option("--seed", seed, "RNG seed for sampled checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute(input, mode, output, jobs);
        if (member->parsed()) return run_member(input, mode, point_text, jobs);
        if (mesh->parsed())
            return run_mesh(input, mode, refine, obj_path, jobs);
        if (graph->parsed()) return run_graph(input, mode, dot_path, jobs);
        if (check->parsed())
            return run_check(input, mode, samples, seed, jobs);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
