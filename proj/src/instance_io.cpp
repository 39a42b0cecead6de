#include "dcpoly/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace dcpoly::io {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

namespace {

bool same(const MatrixXd& a, const MatrixXd& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; }

bool same(const VectorXd& a, const VectorXd& b) { return a.size() == b.size() && a == b; }

bool same(const FunctionRep& a, const FunctionRep& b) {
    return same(a.B(), b.B()) && same(a.b(), b.b()) && same(a.C(), b.C()) && same(a.c(), b.c());
}

template <class T>
bool same_opt(const std::optional<T>& a, const std::optional<T>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || same(*a, *b);
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Index count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return static_cast<Index>(j.get<long long>());
}

VectorXd vector(const json& j, const std::string& path, Index size = -1) {
    if (!j.is_array()) fail(path, "expected an array");
    if (size >= 0 && static_cast<Index>(j.size()) != size) {
        fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
    }
    VectorXd v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

// Row-major array of arrays; `cols` is needed when there are no rows.
MatrixXd matrix(const json& j, const std::string& path, Index rows, Index cols) {
    if (!j.is_array()) fail(path, "expected an array of rows");
    if (rows >= 0 && static_cast<Index>(j.size()) != rows) {
        fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    }
    if (cols < 0) {
        if (j.empty()) fail(path, "cannot infer the column count of an empty matrix");
        if (!j[0].is_array()) fail(path + "[0]", "expected an array");
        cols = static_cast<Index>(j[0].size());
    }
    MatrixXd M(static_cast<Index>(j.size()), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        M.row(static_cast<Index>(i)) = vector(j[i], path + "[" + std::to_string(i) + "]", cols).transpose();
    }
    return M;
}

json to_json(const VectorXd& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json to_json(const MatrixXd& M) {
    json a = json::array();
    for (Index i = 0; i < M.rows(); ++i) a.push_back(to_json(VectorXd(M.row(i).transpose())));
    return a;
}

json rep_to_json(const FunctionRep& f) {
    return json{{"m", f.rows()},         {"k", f.num_aux()},     {"B", to_json(f.B())},
                {"b", to_json(f.b())},   {"C", to_json(f.C())},  {"c", to_json(f.c())}};
}

FunctionRep rep_from_json(const json& j, const std::string& path, Index n) {
    const Index m = count(field(j, path, "m"), path + ".m");
    const Index k = count(field(j, path, "k"), path + ".k");
    MatrixXd B = matrix(field(j, path, "B"), path + ".B", m, n);
    VectorXd b = vector(field(j, path, "b"), path + ".b", m);
    MatrixXd C = matrix(field(j, path, "C"), path + ".C", m, k);
    VectorXd c = vector(field(j, path, "c"), path + ".c", m);
    try {
        return FunctionRep(B, b, C, c);
    } catch (const DimensionError& e) {
        fail(path, e.what());
    }
}

OracleSpec oracle_from_json(const json& j, const std::string& path, Index n) {
    OracleSpec o;
    const json& side = field(j, path, "side");
    if (!side.is_string() || (side != "g" && side != "h")) fail(path + ".side", "expected \"g\" or \"h\"");
    o.side = side.get<std::string>();
    const json& kind = field(j, path, "kind");
    if (!kind.is_string()) fail(path + ".kind", "expected a string");
    o.kind = kind.get<std::string>();
    if (o.kind == "quadratic_psd") {
        o.Q = matrix(field(j, path, "Q"), path + ".Q", n, n);
    } else if (o.kind == "gauge_sum") {
        o.points = matrix(field(j, path, "points"), path + ".points", -1, n);
        const Index M = o.points.rows();
        o.weights = vector(field(j, path, "weights"), path + ".weights", M);
        const json& balls = field(j, path, "balls");
        if (!balls.is_array() || static_cast<Index>(balls.size()) != M) {
            fail(path + ".balls", "expected one ball matrix per point");
        }
        for (std::size_t i = 0; i < balls.size(); ++i) {
            o.balls.push_back(matrix(balls[i], path + ".balls[" + std::to_string(i) + "]", -1, n));
        }
        if (j.contains("region")) {
            const std::string rp = path + ".region";
            o.region_P = matrix(field(j["region"], rp, "P"), rp + ".P", -1, n);
            o.region_p = vector(field(j["region"], rp, "p"), rp + ".p", o.region_P.rows());
        } else {
            o.region_P.resize(0, n);
            o.region_p.resize(0);
        }
    } else {
        fail(path + ".kind", "unknown oracle kind \"" + o.kind + "\"");
    }
    return o;
}

json oracle_to_json(const OracleSpec& o) {
    json j{{"side", o.side}, {"kind", o.kind}};
    if (o.kind == "quadratic_psd") {
        j["Q"] = to_json(o.Q);
    } else {
        j["points"] = to_json(o.points);
        j["weights"] = to_json(o.weights);
        json balls = json::array();
        for (const MatrixXd& B : o.balls) balls.push_back(to_json(B));
        j["balls"] = balls;
        if (o.region_P.rows() > 0) j["region"] = json{{"P", to_json(o.region_P)}, {"p", to_json(o.region_p)}};
    }
    return j;
}

ConvexOracle make_oracle(const OracleSpec& o) {
    if (o.kind == "quadratic_psd") return quadratic_oracle(o.Q);
    return gauge_sum_oracle(o.points, o.weights, o.balls, o.region_P, o.region_p);
}

}  // namespace

bool operator==(const OracleSpec& a, const OracleSpec& b) {
    if (a.side != b.side || a.kind != b.kind || a.balls.size() != b.balls.size()) return false;
    for (std::size_t i = 0; i < a.balls.size(); ++i) {
        if (!same(a.balls[i], b.balls[i])) return false;
    }
    return same(a.Q, b.Q) && same(a.points, b.points) && same(a.weights, b.weights) &&
           same(a.region_P, b.region_P) && same(a.region_p, b.region_p);
}

bool operator==(const InstanceFile& a, const InstanceFile& b) {
    if (a.n != b.n || a.source != b.source || !same_opt(a.g_rep, b.g_rep) || !same_opt(a.h_rep, b.h_rep) ||
        a.oracles != b.oracles || a.reference.has_value() != b.reference.has_value() ||
        a.prep.has_value() != b.prep.has_value()) {
        return false;
    }
    if (a.reference) {
        const Reference& ra = *a.reference;
        const Reference& rb = *b.reference;
        if (ra.value != rb.value || ra.provenance != rb.provenance || !same_opt(ra.x, rb.x)) return false;
    }
    if (a.prep) {
        if (!same(a.prep->B(), b.prep->B()) || !same(a.prep->C(), b.prep->C()) || !same(a.prep->c(), b.prep->c())) {
            return false;
        }
    }
    return true;
}

InstanceFile parse_instance(const json& j) {
    InstanceFile f;
    const json& version = field(j, "$", "format_version");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
        fail("$.format_version", "expected " + std::to_string(kFormatVersion));
    }
    const Index n = count(field(j, "$", "n"), "$.n");
    if (n < 1) fail("$.n", "must be at least 1");
    f.n = static_cast<int>(n);
    if (j.contains("source")) {
        if (!j["source"].is_string()) fail("$.source", "expected a string");
        f.source = j["source"].get<std::string>();
    }
    if (j.contains("g_rep")) f.g_rep = rep_from_json(j["g_rep"], "$.g_rep", n);
    if (j.contains("h_rep")) f.h_rep = rep_from_json(j["h_rep"], "$.h_rep", n);
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        if (o.is_array()) {
            for (std::size_t i = 0; i < o.size(); ++i) {
                f.oracles.push_back(oracle_from_json(o[i], "$.oracle[" + std::to_string(i) + "]", n));
            }
        } else {
            f.oracles.push_back(oracle_from_json(o, "$.oracle", n));
        }
        for (std::size_t i = 0; i < f.oracles.size(); ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                if (f.oracles[i].side == f.oracles[k].side) fail("$.oracle", "two oracles for side " + f.oracles[i].side);
            }
        }
    }
    if (j.contains("reference")) {
        const json& r = j["reference"];
        Reference ref;
        ref.value = number(field(r, "$.reference", "value"), "$.reference.value");
        if (r.contains("x") && !r["x"].is_null()) ref.x = vector(r["x"], "$.reference.x", n);
        if (r.contains("provenance")) {
            if (!r["provenance"].is_string()) fail("$.reference.provenance", "expected a string");
            ref.provenance = r["provenance"].get<std::string>();
        }
        f.reference = ref;
    }
    if (j.contains("prep")) {
        const json& p = j["prep"];
        MatrixXd B = matrix(field(p, "$.prep", "B"), "$.prep.B", -1, n);
        const Index m = B.rows();
        const Index k = count(field(p, "$.prep", "k"), "$.prep.k");
        MatrixXd C = matrix(field(p, "$.prep", "C"), "$.prep.C", m, k);
        VectorXd c = vector(field(p, "$.prep", "c"), "$.prep.c", m);
        f.prep = PRep(B, C, c);
    }
    if (!f.g_rep && !f.h_rep && !f.prep) fail("$", "need at least one of g_rep, h_rep (or prep for projection)");
    return f;
}

InstanceFile read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return parse_instance(j);
}

json to_json(const InstanceFile& f) {
    json j{{"format_version", kFormatVersion}, {"n", f.n}};
    if (!f.source.empty()) j["source"] = f.source;
    if (f.g_rep) j["g_rep"] = rep_to_json(*f.g_rep);
    if (f.h_rep) j["h_rep"] = rep_to_json(*f.h_rep);
    if (f.oracles.size() == 1) {
        j["oracle"] = oracle_to_json(f.oracles[0]);
    } else if (!f.oracles.empty()) {
        json a = json::array();
        for (const OracleSpec& o : f.oracles) a.push_back(oracle_to_json(o));
        j["oracle"] = a;
    }
    if (f.reference) {
        json r{{"value", f.reference->value}, {"provenance", f.reference->provenance}};
        if (f.reference->x) r["x"] = to_json(*f.reference->x);
        j["reference"] = r;
    }
    if (f.prep) {
        j["prep"] = json{{"k", f.prep->num_aux()}, {"B", to_json(f.prep->B())}, {"C", to_json(f.prep->C())},
                         {"c", to_json(f.prep->c())}};
    }
    return j;
}

InstanceBundle to_bundle(const InstanceFile& f) {
    InstanceBundle b;
    b.n = f.n;
    b.g_rep = f.g_rep;
    b.h_rep = f.h_rep;
    b.reference = f.reference;
    for (const OracleSpec& o : f.oracles) (o.side == "g" ? b.g_oracle : b.h_oracle) = make_oracle(o);
    if (!b.g_oracle && b.g_rep && b.g_rep->proper()) b.g_oracle = oracle_from_rep(*b.g_rep);
    if (!b.h_oracle && b.h_rep && b.h_rep->proper()) b.h_oracle = oracle_from_rep(*b.h_rep);
    return b;
}

InstanceFile ferrer_file(int n) {
    const InstanceBundle b = build_ferrer(n);
    InstanceFile f;
    f.n = n;
    f.source = "ferrer";
    f.g_rep = b.g_rep;
    f.h_rep = b.h_rep;
    f.reference = b.reference;
    return f;
}

InstanceFile quadbox_file(int n, int m) {
    const InstanceBundle b = build_quadratic_box(n, m);
    InstanceFile f;
    f.n = m;
    f.source = "quadbox";
    f.g_rep = b.g_rep;
    OracleSpec o;
    o.side = "h";
    o.kind = "quadratic_psd";
    o.Q = MatrixXd::Identity(m, m);
    f.oracles.push_back(o);
    f.reference = b.reference;
    // T = {y : exists x in [-1,1]^n, y = P x}
    const MatrixXd P = quadratic_box_matrix(n, m);
    MatrixXd B = MatrixXd::Zero(2 * m + 2 * n, m);
    MatrixXd C = MatrixXd::Zero(2 * m + 2 * n, n);
    VectorXd c = VectorXd::Zero(2 * m + 2 * n);
    B.topRows(m) = MatrixXd::Identity(m, m);
    C.topRows(m) = -P;
    B.middleRows(m, m) = -MatrixXd::Identity(m, m);
    C.middleRows(m, m) = P;
    C.middleRows(2 * m, n) = MatrixXd::Identity(n, n);
    C.bottomRows(n) = -MatrixXd::Identity(n, n);
    c.tail(2 * n).setConstant(-1.0);
    f.prep = PRep(B, C, c);
    return f;
}

InstanceFile quadg_file(int n) {
    const InstanceBundle b = build_quadratic_g(n);
    InstanceFile f;
    f.n = n;
    f.source = "quadg";
    f.h_rep = b.h_rep;
    const MatrixXd L = MatrixXd::Ones(n, n).triangularView<Eigen::Lower>();
    OracleSpec o;
    o.side = "g";
    o.kind = "quadratic_psd";
    o.Q = L.transpose() * L;
    f.oracles.push_back(o);
    f.reference = b.reference;
    return f;
}

InstanceFile location_file(const LocationInstance& inst) {
    const InstanceBundle b = build_location(inst);
    InstanceFile f;
    f.n = static_cast<int>(inst.dim());
    f.source = "location";
    f.g_rep = b.g_rep;
    f.h_rep = b.h_rep;
    OracleSpec g;
    g.side = "g";
    g.kind = "gauge_sum";
    g.points = inst.attraction;
    g.weights = inst.attraction_weights;
    g.balls = inst.attraction_balls;
    g.region_P = inst.region_P;
    g.region_p = inst.region_p;
    OracleSpec h;
    h.side = "h";
    h.kind = "gauge_sum";
    h.points = inst.repulsion;
    h.weights = inst.repulsion_weights;
    h.balls = inst.repulsion_balls;
    h.region_P.resize(0, inst.dim());
    h.region_p.resize(0);
    f.oracles = {g, h};
    return f;
}

json to_json(const VRep& v) {
    return json{{"format_version", kFormatVersion},
                {"points", to_json(MatrixXd(v.points().transpose()))},
                {"directions", to_json(MatrixXd(v.directions().transpose()))}};
}

json to_json(const DcSolution& s, double wall_time_s) {
    return json{{"algorithm", to_string(s.algorithm)},
                {"value", s.value},
                {"x", to_json(s.x_opt)},
                {"certificate",
                 {{"kind", s.certificate.kind == Algorithm::Primal ? "epi_g_vertex" : "epi_h_conjugate_vertex"},
                  {"point", to_json(s.certificate.point)},
                  {"value", s.certificate.value}}},
                {"vertex_count", s.vertex_count},
                {"wall_time_s", wall_time_s}};
}

}  // namespace dcpoly::io
