#pragma once

#include "dcpoly/dc_solver.hpp"
#include "dcpoly/errors.hpp"
#include "dcpoly/function_rep.hpp"
#include "dcpoly/instances.hpp"
#include "dcpoly/poly_core.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dcpoly::io {

inline constexpr int kFormatVersion = 1;

/// Malformed instance document; the message names the offending field.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Builtin convex oracle attached to one side of the problem.
struct OracleSpec {
    std::string side;  // "g" or "h"
    std::string kind;  // "quadratic_psd" or "gauge_sum"
    Eigen::MatrixXd Q;
    // gauge_sum
    Eigen::MatrixXd points;
    Eigen::VectorXd weights;
    std::vector<Eigen::MatrixXd> balls;
    Eigen::MatrixXd region_P;
    Eigen::VectorXd region_p;

    friend bool operator==(const OracleSpec&, const OracleSpec&);
};

struct InstanceFile {
    int n = 0;
    /// Generator that produced the file, informational.
    std::string source;
    std::optional<FunctionRep> g_rep;
    std::optional<FunctionRep> h_rep;
    std::vector<OracleSpec> oracles;
    std::optional<Reference> reference;
    /// Lifted polyhedron for the project command.
    std::optional<PRep> prep;

    friend bool operator==(const InstanceFile&, const InstanceFile&);
};

/// Validates and converts; throws SchemaError.
InstanceFile parse_instance(const nlohmann::json& j);
/// Reads a file; JSON syntax errors become SchemaError with the byte offset.
InstanceFile read_instance(const std::string& path);

nlohmann::json to_json(const InstanceFile& f);

/// Solver inputs: representations as given, oracles from the builtin specs,
/// LP-backed oracles for a side that only has a representation.
InstanceBundle to_bundle(const InstanceFile& f);

InstanceFile ferrer_file(int n);
InstanceFile quadbox_file(int n, int m);
InstanceFile quadg_file(int n);
InstanceFile location_file(const LocationInstance& inst);

nlohmann::json to_json(const VRep& v);
nlohmann::json to_json(const DcSolution& s, double wall_time_s);

}  // namespace dcpoly::io
