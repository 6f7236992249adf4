#include "ibody/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

Rat coordinate_from_json(const Json& value) {
    if (value.is_number_integer())
        return Rat(static_cast<long long>(value.get<std::int64_t>()));
    if (value.is_string()) return parse_rat(value.get<std::string>());
    if (value.is_number_float())
        throw ValidationError(
            "not an exact rational: floating-point coordinate "
            "(irrational coordinates unsupported)");
    throw ValidationError("coordinate must be an integer or a \"p/q\" string");
}

Json rat_vec_to_json(const RatVec& v) {
    Json arr = Json::array();
    for (const Rat& c : v) arr.push_back(rat_to_string(c));
    return arr;
}

RatVec rat_vec_from_json(const Json& arr) {
    if (!arr.is_array()) throw ValidationError("expected an array of rationals");
    RatVec v;
    for (const Json& c : arr) v.push_back(coordinate_from_json(c));
    return v;
}

} // namespace

VPolytope polytope_from_json(const Json& doc) {
    if (!doc.is_object()) throw ValidationError("polytope file must be a JSON object");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw ValidationError("polytope file needs an integer \"dimension\"");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw ValidationError("polytope file needs a \"vertices\" array");
    const std::size_t d = doc["dimension"].get<std::size_t>();
    std::vector<RatVec> vertices;
    for (const Json& row : doc["vertices"]) {
        RatVec v = rat_vec_from_json(row);
        if (v.size() != d)
            throw ValidationError("vertex length disagrees with \"dimension\"");
        vertices.push_back(std::move(v));
    }
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw ValidationError("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    return VPolytope(std::move(vertices), name);
}

VPolytope read_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    return polytope_from_json(doc);
}

std::string polytope_hash(const VPolytope& p) {
    std::string canon;
    for (const RatVec& v : p.vertices()) {
        for (const Rat& c : v) {
            canon += rat_to_string(c);
            canon += ',';
        }
        canon += ';';
    }
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64 offset basis
    for (unsigned char byte : canon) {
        h ^= byte;
        h *= 1099511628211ull; // FNV-1a 64 prime
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string mode_to_string(NormalizationMode mode) {
    return mode == NormalizationMode::TrueVolume ? "true-volume"
                                                 : "cone-volume";
}

NormalizationMode mode_from_string(const std::string& text) {
    if (text == "true-volume" || text == "true")
        return NormalizationMode::TrueVolume;
    if (text == "cone-volume" || text == "cone")
        return NormalizationMode::ConeVolume;
    throw ValidationError("unknown mode \"" + text +
                          "\" (expected true or cone)");
}

Json result_to_json(const IntersectionBody& body) {
    Json doc;
    doc["polytope"] = {{"name", body.polytope().name()},
                       {"hash", polytope_hash(body.polytope())}};
    doc["mode"] = mode_to_string(body.mode());
    doc["m"] = body.normals().m();

    Json chambers = Json::array();
    for (const Chamber& c : body.chambers()) {
        const ChamberPiece& piece = body.pieces()[c.id];
        Json entry;
        entry["id"] = c.id;
        entry["signs"] = c.signs;
        entry["witness"] = rat_vec_to_json(c.witness);
        Json rays = Json::array();
        for (const RatVec& r : c.rays) rays.push_back(rat_vec_to_json(r));
        entry["rays"] = std::move(rays);
        entry["p_tilde"] = poly_to_string(piece.p_tilde);
        entry["q"] = poly_to_string(piece.q);
        entry["boundary"] = poly_to_string(piece.boundary_poly);
        entry["degree"] = piece.degree;
        entry["is_zero"] = piece.is_zero_piece;
        chambers.push_back(std::move(entry));
    }
    doc["chambers"] = std::move(chambers);

    DegreeReport report = body.degree_table();
    Json hist = Json::object();
    for (auto [deg, count] : report.histogram)
        hist[std::to_string(deg)] = count;
    doc["degree_histogram"] = std::move(hist);
    doc["bounds"] = {{"f0_per_chamber", report.per_chamber_bound},
                     {"global", report.global_bound},
                     {"satisfied", report.satisfied}};
    return doc;
}

namespace {

// signs a sorts before b: +1 runs ahead of -1 position by position.
bool result_signs_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return a.size() < b.size();
}

} // namespace

std::string validate_result_json(const Json& doc) {
    try {
        if (!doc.is_object()) return "file is not a JSON object";
        for (const char* key :
             {"polytope", "mode", "m", "chambers", "degree_histogram",
              "bounds"})
            if (!doc.contains(key))
                return std::string("missing key \"") + key + "\"";
        mode_from_string(doc["mode"].get<std::string>());
        const std::size_t m = doc["m"].get<std::size_t>();
        const Json& chambers = doc["chambers"];
        if (!chambers.is_array() || chambers.empty())
            return "\"chambers\" must be a nonempty array";

        std::size_t d = 0;
        std::map<std::vector<int>, std::size_t> by_signs;
        std::map<std::size_t, std::size_t> hist;
        std::vector<std::vector<int>> sign_rows;
        const Json& bounds = doc["bounds"];
        if (!bounds.contains("f0_per_chamber") ||
            !bounds["f0_per_chamber"].is_array() ||
            bounds["f0_per_chamber"].size() != chambers.size())
            return "\"bounds.f0_per_chamber\" must list one bound per chamber";

        for (std::size_t i = 0; i < chambers.size(); ++i) {
            const Json& c = chambers[i];
            if (c["id"].get<std::size_t>() != i)
                return "chamber ids are not consecutive from 0";
            std::vector<int> signs = c["signs"].get<std::vector<int>>();
            if (signs.size() != m) return "chamber sign vector length != m";
            for (int s : signs)
                if (s != 1 && s != -1) return "chamber sign not in {+1,-1}";
            RatVec witness = rat_vec_from_json(c["witness"]);
            if (d == 0) d = witness.size();
            if (witness.size() != d || d < 2)
                return "witness dimension inconsistent";
            by_signs.emplace(signs, i);
            sign_rows.push_back(signs);

            Poly p = parse_poly(c["p_tilde"].get<std::string>(), d);
            Poly q = parse_poly(c["q"].get<std::string>(), d);
            Poly boundary = parse_poly(c["boundary"].get<std::string>(), d);
            bool is_zero = c["is_zero"].get<bool>();
            std::size_t degree = c["degree"].get<std::size_t>();
            if (is_zero) {
                if (!p.is_zero() || q != Poly::constant(d, 1))
                    return "zero piece must have p_tilde = 0 and q = 1";
            } else {
                if (p.is_zero()) return "nonzero piece with zero p_tilde";
                auto dp = p.homogeneous_degree();
                auto dq = q.homogeneous_degree();
                if (!dp || !dq) return "piece polynomials not homogeneous";
                if (*dp + 1 != *dq)
                    return "deg p_tilde + 1 != deg q";
                if (p.evaluate(witness) <= 0)
                    return "p_tilde not positive at the witness";
                if (q.evaluate(witness) <= 0)
                    return "q not positive at the witness";
                hist[degree]++;
            }
            if (normalize(q - p).first != boundary)
                return "boundary polynomial != normalize(q - p_tilde)";
            if (boundary.total_degree() != degree)
                return "stored degree != degree of boundary polynomial";
            std::size_t f0 =
                bounds["f0_per_chamber"][i].get<std::size_t>();
            if (!is_zero && degree > f0)
                return "piece degree exceeds its per-chamber bound";
        }

        for (std::size_t i = 0; i + 1 < sign_rows.size(); ++i)
            if (!result_signs_less(sign_rows[i], sign_rows[i + 1]))
                return "chambers not in canonical sign order";
        for (const auto& [signs, idx] : by_signs) {
            std::vector<int> neg(signs.size());
            for (std::size_t j = 0; j < signs.size(); ++j) neg[j] = -signs[j];
            auto it = by_signs.find(neg);
            if (it == by_signs.end())
                return "chamber without its antipodal partner";
            RatVec w = rat_vec_from_json(chambers[idx]["witness"]);
            RatVec nw = rat_vec_from_json(chambers[it->second]["witness"]);
            for (std::size_t j = 0; j < w.size(); ++j)
                if (w[j] != -nw[j])
                    return "antipodal witnesses are not negations";
        }

        const Json& stored_hist = doc["degree_histogram"];
        std::map<std::size_t, std::size_t> parsed_hist;
        for (auto it = stored_hist.begin(); it != stored_hist.end(); ++it)
            parsed_hist[std::stoul(it.key())] =
                it.value().get<std::size_t>();
        if (parsed_hist != hist)
            return "degree_histogram disagrees with the chamber list";

        std::size_t global = bounds["global"].get<std::size_t>();
        for (auto [deg, count] : hist)
            if (deg > global) return "degree exceeds the global bound";
        if (!bounds["satisfied"].get<bool>())
            return "bounds.satisfied is false";
        return "";
    } catch (const std::exception& e) {
        return std::string("malformed field: ") + e.what();
    }
}

std::string mesh_to_obj(const BoundaryMesh& mesh) {
    std::ostringstream out;
    for (const RatVec& v : mesh.vertices) {
        out << 'v';
        for (const Rat& c : v) out << ' ' << rat_to_decimal(c);
        out << '\n';
    }
    std::size_t current = SIZE_MAX;
    for (const auto& tri : mesh.triangles) {
        if (tri.chamber_id != current) {
            current = tri.chamber_id;
            out << "g chamber_" << current << '\n';
        }
        out << 'f';
        for (std::size_t idx : tri.v) out << ' ' << idx + 1;
        out << '\n';
    }
    return out.str();
}

std::string chambers_to_dot(
    const std::vector<ChamberPiece>& pieces,
    const std::vector<std::pair<std::size_t, std::size_t>>& adjacency) {
    std::ostringstream out;
    out << "graph chambers {\n";
    for (const ChamberPiece& piece : pieces)
        out << "  c" << piece.chamber_id << " [label=\"" << piece.degree
            << "\"];\n";
    for (const auto& [a, b] : adjacency)
        out << "  c" << a << " -- c" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace ibody
