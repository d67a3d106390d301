#include "qcsp/serialize.hpp"

#include <fstream>
#include <sstream>

namespace qcsp {

Json to_json(const GeneralCspInstance& inst) {
    Json constraints = Json::array();
    for (const Constraint& c : inst.constraints) {
        constraints.push_back(
            {{"vars", c.vars}, {"accept", c.accept}, {"weight", c.weight}});
    }
    return {{"kind", "general"},
            {"k", inst.arity},
            {"m", inst.alphabet},
            {"n", inst.variable_count},
            {"constraints", constraints}};
}

Json to_json(const LabelCoverInstance& inst) {
    Json edges = Json::array();
    for (const LabelCoverEdge& e : inst.edges) {
        edges.push_back(
            {{"u", e.u}, {"v", e.v}, {"pi", e.pi}, {"weight", e.weight}});
    }
    return {{"kind", inst.unique ? "ulc" : "label_cover"},
            {"m", inst.alphabet},
            {"left", inst.left_count},
            {"right", inst.right_count},
            {"edges", edges}};
}

Json to_json(const LinInstance& inst) {
    if (is_maxcut(inst)) {
        Json edges = Json::array();
        for (const LinConstraint& c : inst.constraints) {
            edges.push_back({{"vars", c.vars}, {"weight", c.weight}});
        }
        return {{"kind", "maxcut"},
                {"n", inst.variable_count},
                {"edges", edges}};
    }
    Json constraints = Json::array();
    for (const LinConstraint& c : inst.constraints) {
        constraints.push_back(
            {{"vars", c.vars}, {"parity", c.parity}, {"weight", c.weight}});
    }
    return {{"kind", "lin"},
            {"k", inst.arity},
            {"n", inst.variable_count},
            {"constraints", constraints}};
}

InstanceVariant instance_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "general") {
        GeneralCspInstance inst;
        inst.arity = j.at("k").get<int>();
        inst.alphabet = j.at("m").get<int>();
        inst.variable_count = j.at("n").get<int>();
        for (const Json& c : j.at("constraints")) {
            inst.constraints.push_back(
                {c.at("vars").get<std::vector<int>>(),
                 c.at("accept").get<std::vector<std::vector<int>>>(),
                 c.at("weight").get<double>()});
        }
        return inst;
    }
    if (kind == "ulc" || kind == "label_cover") {
        LabelCoverInstance inst;
        inst.alphabet = j.at("m").get<int>();
        inst.left_count = j.at("left").get<int>();
        inst.right_count = j.at("right").get<int>();
        inst.unique = kind == "ulc";
        for (const Json& e : j.at("edges")) {
            inst.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                                  e.at("pi").get<std::vector<int>>(),
                                  e.at("weight").get<double>()});
        }
        return inst;
    }
    if (kind == "lin") {
        LinInstance inst;
        inst.arity = j.at("k").get<int>();
        inst.variable_count = j.at("n").get<int>();
        for (const Json& c : j.at("constraints")) {
            inst.constraints.push_back({c.at("vars").get<std::vector<int>>(),
                                        c.at("parity").get<int>(),
                                        c.at("weight").get<double>()});
        }
        return inst;
    }
    if (kind == "maxcut") {
        LinInstance inst;
        inst.arity = 2;
        inst.variable_count = j.at("n").get<int>();
        for (const Json& e : j.at("edges")) {
            inst.constraints.push_back({e.at("vars").get<std::vector<int>>(), -1,
                                        e.at("weight").get<double>()});
        }
        return inst;
    }
    throw std::invalid_argument("unknown instance kind: " + kind);
}

Json matrix_to_json(const CMatrix& m) {
    std::vector<double> flat;
    flat.reserve(2 * m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            flat.push_back(m(i, j).real());
            flat.push_back(m(i, j).imag());
        }
    }
    return Json(flat);
}

CMatrix matrix_from_json(const Json& j, int dim) {
    const auto flat = j.get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != 2 * dim * dim) {
        throw std::invalid_argument("operator entry count does not match dimension");
    }
    CMatrix m(dim, dim);
    std::size_t idx = 0;
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = Complex(flat[idx], flat[idx + 1]);
            idx += 2;
        }
    }
    return m;
}

namespace {

std::string kind_name(MeasurementKind kind) {
    return kind == MeasurementKind::Pvm ? "pvm" : "povm";
}

}  // namespace

Json to_json(const MeasurementAssignment& asg) {
    Json vertices = Json::object();
    for (std::size_t v = 0; v < asg.vertices.size(); ++v) {
        Json ops = Json::array();
        for (const CMatrix& op : asg.vertices[v]) ops.push_back(matrix_to_json(op));
        vertices[std::to_string(v)] = ops;
    }
    return {{"dimension", asg.dim},
            {"class", to_string(asg.cls)},
            {"kind", kind_name(asg.kind)},
            {"vertex_count", asg.vertices.size()},
            {"vertices", vertices}};
}

MeasurementAssignment measurement_assignment_from_json(const Json& j) {
    MeasurementAssignment asg;
    asg.dim = j.at("dimension").get<int>();
    asg.cls = commutation_class_from_string(j.at("class").get<std::string>());
    asg.kind = j.at("kind").get<std::string>() == "pvm" ? MeasurementKind::Pvm
                                                        : MeasurementKind::Povm;
    const std::size_t n = j.at("vertex_count").get<std::size_t>();
    asg.vertices.resize(n);
    for (const auto& [key, ops] : j.at("vertices").items()) {
        Measurement p;
        for (const Json& op : ops) p.push_back(matrix_from_json(op, asg.dim));
        asg.vertices.at(std::stoul(key)) = std::move(p);
    }
    return asg;
}

Json to_json(const ObservableAssignment& asg) {
    Json vertices = Json::object();
    for (std::size_t v = 0; v < asg.vertices.size(); ++v) {
        vertices[std::to_string(v)] = matrix_to_json(asg.vertices[v]);
    }
    return {{"dimension", asg.dim},
            {"class", "quantum"},
            {"kind", "observable"},
            {"folded", asg.folded},
            {"vertex_count", asg.vertices.size()},
            {"vertices", vertices}};
}

ObservableAssignment observable_assignment_from_json(const Json& j) {
    ObservableAssignment asg;
    asg.dim = j.at("dimension").get<int>();
    asg.folded = j.value("folded", false);
    const std::size_t n = j.at("vertex_count").get<std::size_t>();
    asg.vertices.resize(n);
    for (const auto& [key, op] : j.at("vertices").items()) {
        asg.vertices.at(std::stoul(key)) = matrix_from_json(op, asg.dim);
    }
    return asg;
}

namespace {

Json vertex_map_json(const std::vector<PsiVertex>& keys) {
    Json map = Json::array();
    for (const PsiVertex& key : keys) {
        map.push_back({{"side", key.side == Side::Left ? "u" : "v"},
                       {"vertex", key.vertex},
                       {"mask", key.mask}});
    }
    return map;
}

}  // namespace

Json certificate_to_json(const TwoLinReduction& red) {
    return {{"kind", "2lin"},
            {"eps", red.eps},
            {"m", red.m},
            {"source", to_json(red.source)},
            {"edge_counts",
             {{"e1", red.e1_count}, {"e2", red.e2_count}, {"e3", red.e3_count}}},
            {"psi_vertices", red.psi.variable_count},
            {"vertex_map", vertex_map_json(red.keys)}};
}

Json certificate_to_json(const MaxCutReduction& red) {
    return {{"kind", "maxcut"},
            {"rho", red.rho},
            {"m", red.m},
            {"source", to_json(red.source)},
            {"psi_vertices", red.psi.variable_count},
            {"vertex_map", vertex_map_json(red.keys)}};
}

ReductionVariant reduction_from_certificate(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const auto source = instance_from_json(j.at("source"));
    const auto& phi = std::get<LabelCoverInstance>(source);
    if (kind == "2lin") {
        TwoLinReduction red =
            reduce_ulc_to_2lin(phi, j.at("eps").get<double>(), phi.alphabet);
        if (red.psi.variable_count != j.at("psi_vertices").get<int>()) {
            throw std::runtime_error("certificate does not match reconstruction");
        }
        return red;
    }
    if (kind == "maxcut") {
        MaxCutReduction red =
            reduce_ulc_to_maxcut(phi, j.at("rho").get<double>(), phi.alphabet);
        if (red.psi.variable_count != j.at("psi_vertices").get<int>()) {
            throw std::runtime_error("certificate does not match reconstruction");
        }
        return red;
    }
    throw std::invalid_argument("unknown certificate kind: " + kind);
}

namespace {

Json to_json(const GoodSet& set) {
    return {{"items", set.items},          {"lhs", set.lhs},
            {"good", set.good},            {"threshold", set.threshold},
            {"lower_is_good", set.lower_is_good},
            {"good_mass", set.good_mass}};
}

Json to_json(const FourierDiagnostics& diag) {
    return {{"first_premise", diag.first_premise},
            {"second_premise", diag.second_premise},
            {"mass_outside_s1", diag.mass_outside_s1},
            {"bourgain_premise_threshold", diag.bourgain_premise_threshold},
            {"mass_outside_s2", diag.mass_outside_s2},
            {"mixed_sum_s1s2", diag.mixed_sum_s1s2},
            {"conclusion_quarter", diag.conclusion_quarter},
            {"final_quantity", diag.final_quantity},
            {"final_threshold", diag.final_threshold},
            {"final_ok", diag.final_ok}};
}

}  // namespace

Json to_json(const SoundnessReport& report) {
    Json certificates = Json::array();
    for (const InfluenceCertificate& c : report.influence_certificates) {
        certificates.push_back({{"label", c.label},
                                {"influence", c.influence},
                                {"passes", c.passes}});
    }
    return {{"kind", report.kind},
            {"parameters",
             {{"eps", report.params.eps},
              {"t", report.params.t},
              {"c_t", report.params.c_t},
              {"b_t", report.params.b_t()},
              {"delta2", report.params.delta2},
              {"k_mis", report.params.k_mis},
              {"seed", report.params.seed},
              {"rho", report.rho}}},
            {"psi_value", report.psi_value},
            {"precondition_threshold", report.precondition_threshold},
            {"precondition_ok", report.precondition_ok},
            {"good_objects", to_json(report.good_objects)},
            {"chosen_object", report.chosen_object},
            {"good_indices", to_json(report.good_indices)},
            {"chosen_index", report.chosen_index},
            {"fourier", to_json(report.fourier)},
            {"influence_certificates", certificates},
            {"good_neighbors", to_json(report.good_neighbors)},
            {"extracted", to_json(report.extracted)},
            {"projectivized", to_json(report.projectivized)},
            {"projectivize_value_trace", report.projectivize_value_trace},
            {"extracted_value", report.extracted_value},
            {"pvm_value", report.pvm_value},
            {"paper_bound", report.paper_bound},
            {"exceeds_bound", report.exceeds_bound}};
}

std::string soundness_slacks_csv(const SoundnessReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "item,lhs,threshold,slack,good\n";
    const GoodSet& set = report.good_objects;
    for (std::size_t i = 0; i < set.items.size(); ++i) {
        double slack = set.lower_is_good ? set.threshold - set.lhs[i]
                                         : set.lhs[i] - set.threshold;
        out << set.items[i] << "," << set.lhs[i] << "," << set.threshold << ","
            << slack << "," << (set.good[i] ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string interval_csv_header() {
    return "instance_id,omega_c,gw_floor,quantum_lb,omega_sdp\n";
}

std::string interval_csv_row(const std::string& instance_id,
                             const IntervalReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << instance_id << "," << report.omega_c << "," << report.gw_floor << ",";
    if (report.quantum_lb) out << *report.quantum_lb;
    out << "," << report.omega_sdp << "\n";
    return out.str();
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::ostringstream hex;
    hex << std::hex << fnv1a64(buffer.str());
    return hex.str();
}

}  // namespace qcsp
