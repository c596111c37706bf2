#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/action.hpp"
#include "rigidity/decide.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/lattice.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/verify.hpp"
#include "rigidity/witness.hpp"

namespace rigidity {

using Json = nlohmann::json;

// Documents store integers as decimal strings so consumers never truncate
// them to 64 bits, and doubles as 17-significant-digit strings so values
// round-trip bit for bit.

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s) {
    if (s.empty()) throw ParseError("empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ParseError("malformed number '" + s + "'");
    return v;
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

inline Int json_to_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (!j.is_string()) throw ParseError("integer entries must be decimal strings");
    const std::string s = j.get<std::string>();
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed integer '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ParseError("malformed integer '" + s + "'");
    return Int(s);
}

inline double json_to_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw ParseError("decimal entries must be strings");
    return parse_double(j.get<std::string>());
}

inline std::size_t json_to_size(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace detail

inline Json vec_to_json(const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(x.str());
    return a;
}

inline IntVec json_to_vec(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of integers");
    IntVec v;
    v.reserve(j.size());
    for (const Json& x : j) v.push_back(detail::json_to_int(x));
    return v;
}

inline Json dvec_to_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(format_double(x));
    return a;
}

inline std::vector<double> json_to_dvec(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of decimals");
    std::vector<double> v;
    v.reserve(j.size());
    for (const Json& x : j) v.push_back(detail::json_to_double(x));
    return v;
}

inline Json mat_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row_vec(i)));
    return rows;
}

inline IntMatrix json_to_mat(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of matrix rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be nonempty arrays");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const IntVec row = json_to_vec(j[i]);
        if (row.size() != cols) throw ParseError("matrix rows have unequal lengths");
        m.set_row(i, row);
    }
    return m;
}

struct SystemPair {
    MatrixAction source;
    MatrixAction target;
    std::optional<IntMatrix> factor;
};

namespace detail {

inline MatrixAction parse_action(const Json& j, std::size_t rank, const char* side) {
    try {
        const std::size_t dim = json_to_size(field(j, "dim"), "dim");
        const Json& gens = field(j, "generators");
        if (!gens.is_array() || gens.size() != rank)
            throw ParseError("generator count differs from rank");
        std::vector<IntMatrix> matrices;
        matrices.reserve(rank);
        for (const Json& g : gens) {
            IntMatrix m = json_to_mat(g);
            if (m.rows() != dim || m.cols() != dim)
                throw ParseError("generator is not dim x dim");
            matrices.push_back(std::move(m));
        }
        return MatrixAction(std::move(matrices));
    } catch (const std::invalid_argument& e) {
        // Unimodularity, commutativity and shape checks are document
        // validation when the matrices come from a file.
        throw ParseError(std::string(side) + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(std::string(side) + ": " + e.what());
    }
}

}  // namespace detail

inline SystemPair parse_system(const Json& j) {
    if (!j.is_object()) throw ParseError("system document must be an object");
    if (detail::field(j, "kind").get<std::string>() != std::string("system"))
        throw ParseError("document kind is not 'system'");
    const std::size_t rank = detail::json_to_size(detail::field(j, "rank"), "rank");
    if (rank == 0) throw ParseError("rank must be positive");
    SystemPair pair{detail::parse_action(detail::field(j, "source"), rank, "source"),
                    detail::parse_action(detail::field(j, "target"), rank, "target"), {}};
    if (j.contains("factor_matrix")) {
        IntMatrix theta = json_to_mat(j["factor_matrix"]);
        if (theta.rows() != pair.target.dim() || theta.cols() != pair.source.dim())
            throw ParseError("factor_matrix must map the source torus onto the target torus");
        pair.factor = std::move(theta);
    }
    return pair;
}

inline Json action_to_json(const MatrixAction& a) {
    Json j;
    j["dim"] = a.dim();
    Json gens = Json::array();
    for (const IntMatrix& g : a.generators()) gens.push_back(mat_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

inline Json system_to_json(const SystemPair& pair) {
    Json j;
    j["kind"] = "system";
    j["rank"] = pair.source.rank();
    j["source"] = action_to_json(pair.source);
    j["target"] = action_to_json(pair.target);
    if (pair.factor) j["factor_matrix"] = mat_to_json(*pair.factor);
    return j;
}

inline Json lattice_to_json(const LatticeBasis& l) {
    Json j;
    j["ambient_dim"] = l.ambient_dim();
    Json rows = Json::array();
    for (const IntVec& r : l.basis()) rows.push_back(vec_to_json(r));
    j["basis"] = std::move(rows);
    return j;
}

inline LatticeBasis json_to_lattice(const Json& j) {
    const std::size_t ambient = detail::json_to_size(detail::field(j, "ambient_dim"), "ambient_dim");
    std::vector<IntVec> rows;
    for (const Json& r : detail::field(j, "basis")) rows.push_back(json_to_vec(r));
    return LatticeBasis::from_generators(ambient, rows);
}

inline Json subgroup_to_json(const SubgroupLattice& s) {
    Json j;
    j["rank"] = s.rank();
    Json rows = Json::array();
    for (const IntVec& r : s.lattice().basis()) rows.push_back(vec_to_json(r));
    j["basis"] = std::move(rows);
    j["index"] = s.index().str();
    return j;
}

inline SubgroupLattice json_to_subgroup(const Json& j) {
    const std::size_t rank = detail::json_to_size(detail::field(j, "rank"), "rank");
    std::vector<IntVec> rows;
    for (const Json& r : detail::field(j, "basis")) rows.push_back(json_to_vec(r));
    try {
        SubgroupLattice s(LatticeBasis::from_generators(rank, rows));
        if (j.contains("index") && detail::json_to_int(j["index"]) != s.index())
            throw ParseError("subgroup index disagrees with its basis");
        return s;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("subgroup: ") + e.what());
    }
}

inline DecisionMode mode_from_name(const std::string& name) {
    if (name == "exact") return DecisionMode::Exact;
    if (name == "almost") return DecisionMode::Almost;
    if (name == "cyclic") return DecisionMode::Cyclic;
    if (name == "factor") return DecisionMode::Factor;
    throw ParseError("unknown mode '" + name + "'");
}

inline Refusal refusal_from_name(const std::string& name) {
    if (name == "SourceErgodic") return Refusal::SourceErgodic;
    if (name == "NoFiniteOrbitTargetVector") return Refusal::NoFiniteOrbitTargetVector;
    if (name == "NoStabilizerFixedVector") return Refusal::NoStabilizerFixedVector;
    if (name == "TargetErgodic") return Refusal::TargetErgodic;
    throw ParseError("unknown certificate '" + name + "'");
}

inline Json decision_to_json(const DecisionReport& r) {
    Json j;
    j["kind"] = "decision";
    j["mode"] = mode_name(r.mode);
    j["exists_nonaffine"] = r.exists_nonaffine;
    Json certificate;
    if (r.exists_nonaffine) {
        certificate["type"] = "NonAffineWitnessable";
        certificate["finite_orbit_characters"] = lattice_to_json(r.evidence->finite_orbit_characters);
        certificate["stabilizer"] = subgroup_to_json(r.evidence->stabilizer);
        certificate["fixed_vector"] = vec_to_json(r.evidence->fixed_vector);
    } else {
        certificate["type"] = refusal_name(*r.refusal);
    }
    j["certificate"] = std::move(certificate);
    Json d;
    d["source_k_indices"] = r.diagnostics.source_k_indices;
    d["target_k_indices"] = r.diagnostics.target_k_indices;
    d["finite_orbit_rank"] = r.diagnostics.finite_orbit_rank;
    if (r.diagnostics.stabilizer_index) d["stabilizer_index"] = r.diagnostics.stabilizer_index->str();
    if (r.diagnostics.cyclic_k) d["cyclic_k"] = *r.diagnostics.cyclic_k;
    if (r.diagnostics.det_power_minus_identity)
        d["det_power_minus_identity"] = r.diagnostics.det_power_minus_identity->str();
    j["diagnostics"] = std::move(d);
    return j;
}

inline DecisionReport decision_from_json(const Json& j) {
    if (detail::field(j, "kind").get<std::string>() != std::string("decision"))
        throw ParseError("document kind is not 'decision'");
    DecisionReport r;
    r.mode = mode_from_name(detail::field(j, "mode").get<std::string>());
    r.exists_nonaffine = detail::field(j, "exists_nonaffine").get<bool>();
    const Json& certificate = detail::field(j, "certificate");
    const std::string type = detail::field(certificate, "type").get<std::string>();
    if (r.exists_nonaffine) {
        if (type != "NonAffineWitnessable") throw ParseError("YES decision with refusal certificate");
        r.evidence = Evidence{
            json_to_lattice(detail::field(certificate, "finite_orbit_characters")),
            json_to_subgroup(detail::field(certificate, "stabilizer")),
            json_to_vec(detail::field(certificate, "fixed_vector"))};
    } else {
        r.refusal = refusal_from_name(type);
    }
    const Json& d = detail::field(j, "diagnostics");
    r.diagnostics.source_k_indices =
        detail::field(d, "source_k_indices").get<std::vector<long long>>();
    r.diagnostics.target_k_indices =
        detail::field(d, "target_k_indices").get<std::vector<long long>>();
    r.diagnostics.finite_orbit_rank =
        detail::json_to_size(detail::field(d, "finite_orbit_rank"), "finite_orbit_rank");
    if (d.contains("stabilizer_index"))
        r.diagnostics.stabilizer_index = detail::json_to_int(d["stabilizer_index"]);
    if (d.contains("cyclic_k")) r.diagnostics.cyclic_k = d["cyclic_k"].get<long long>();
    if (d.contains("det_power_minus_identity"))
        r.diagnostics.det_power_minus_identity = detail::json_to_int(d["det_power_minus_identity"]);
    return r;
}

inline Json witness_to_json(const WitnessSpec& w) {
    Json j;
    j["kind"] = "witness";
    j["rank"] = w.source.rank();
    j["source"] = action_to_json(w.source);
    j["target"] = action_to_json(w.target);
    j["character"] = vec_to_json(w.character);
    j["base_point"] = dvec_to_json(w.base_point);
    Json reps = Json::array();
    for (const IntVec& r : w.reps) reps.push_back(vec_to_json(r));
    j["reps"] = std::move(reps);
    j["circle_values"] = dvec_to_json(w.circle_values);
    j["bump_radius"] = format_double(w.bump_radius);
    j["direction"] = vec_to_json(w.direction);
    Json sm = Json::array();
    for (const IntMatrix& m : w.source_rep_matrices) sm.push_back(mat_to_json(m));
    j["source_rep_matrices"] = std::move(sm);
    Json tm = Json::array();
    for (const IntMatrix& m : w.target_rep_inverses) tm.push_back(mat_to_json(m));
    j["target_rep_inverses"] = std::move(tm);
    return j;
}

inline WitnessSpec witness_from_json(const Json& j) {
    if (detail::field(j, "kind").get<std::string>() != std::string("witness"))
        throw ParseError("document kind is not 'witness'");
    const std::size_t rank = detail::json_to_size(detail::field(j, "rank"), "rank");
    if (rank == 0) throw ParseError("rank must be positive");
    WitnessSpec w(detail::parse_action(detail::field(j, "source"), rank, "source"),
                  detail::parse_action(detail::field(j, "target"), rank, "target"));
    w.character = json_to_vec(detail::field(j, "character"));
    w.base_point = json_to_dvec(detail::field(j, "base_point"));
    for (const Json& r : detail::field(j, "reps")) w.reps.push_back(json_to_vec(r));
    w.circle_values = json_to_dvec(detail::field(j, "circle_values"));
    w.bump_radius = detail::json_to_double(detail::field(j, "bump_radius"));
    w.direction = json_to_vec(detail::field(j, "direction"));
    for (const Json& m : detail::field(j, "source_rep_matrices"))
        w.source_rep_matrices.push_back(json_to_mat(m));
    for (const Json& m : detail::field(j, "target_rep_inverses"))
        w.target_rep_inverses.push_back(json_to_mat(m));
    try {
        w.finalize();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("witness: ") + e.what());
    }
    return w;
}

inline Json verification_to_json(const VerificationReport& r) {
    Json j;
    j["kind"] = "verification";
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["equivariance_tol"] = format_double(r.equivariance_tol);
    j["max_equivariance_error"] = format_double(r.max_equivariance_error);
    j["per_generator_error"] = dvec_to_json(r.per_generator_error);
    j["nonconstancy_gap"] = format_double(r.nonconstancy_gap);
    j["nonconstancy_threshold"] = format_double(r.nonconstancy_threshold);
    j["pass"] = r.pass;
    return j;
}

inline VerificationReport verification_from_json(const Json& j) {
    if (detail::field(j, "kind").get<std::string>() != std::string("verification"))
        throw ParseError("document kind is not 'verification'");
    VerificationReport r;
    r.samples = detail::json_to_size(detail::field(j, "samples"), "samples");
    r.seed = detail::field(j, "seed").get<std::uint64_t>();
    r.equivariance_tol = detail::json_to_double(detail::field(j, "equivariance_tol"));
    r.max_equivariance_error = detail::json_to_double(detail::field(j, "max_equivariance_error"));
    r.per_generator_error = json_to_dvec(detail::field(j, "per_generator_error"));
    r.nonconstancy_gap = detail::json_to_double(detail::field(j, "nonconstancy_gap"));
    r.nonconstancy_threshold = detail::json_to_double(detail::field(j, "nonconstancy_threshold"));
    r.pass = detail::field(j, "pass").get<bool>();
    return r;
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rigidity
