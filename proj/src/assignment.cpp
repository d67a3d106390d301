#include "qcsp/assignment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qcsp {

std::string to_string(CommutationClass cls) {
    switch (cls) {
        case CommutationClass::Classical: return "classical";
        case CommutationClass::WeakQuantum: return "weak-quantum";
        case CommutationClass::Quantum: return "quantum";
        case CommutationClass::Noncommutative: return "noncommutative";
    }
    return "unknown";
}

CommutationClass commutation_class_from_string(const std::string& name) {
    if (name == "classical") return CommutationClass::Classical;
    if (name == "weak-quantum") return CommutationClass::WeakQuantum;
    if (name == "quantum") return CommutationClass::Quantum;
    if (name == "noncommutative") return CommutationClass::Noncommutative;
    throw std::invalid_argument("unknown commutation class: " + name);
}

namespace {

void check_shape(int vertex_count, const MeasurementAssignment& asg) {
    if (static_cast<int>(asg.vertices.size()) != vertex_count) {
        throw std::invalid_argument("assignment vertex count mismatch");
    }
    for (const Measurement& p : asg.vertices) {
        if (measurement_dim(p) != asg.dim) {
            throw std::invalid_argument("assignment dimension mismatch across vertices");
        }
    }
}

void record_commutation(const Measurement& p, const Measurement& q, int i, int j,
                        AssignmentVerdict& verdict) {
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < q.size(); ++b) {
            CommuteResult c = commute(p[a], q[b]);
            verdict.worst_commutation_defect =
                std::max(verdict.worst_commutation_defect, c.defect);
            if (!c.commuting) {
                verdict.failures.push_back(
                    "vertices " + std::to_string(i) + "," + std::to_string(j) +
                    " outcomes " + std::to_string(a) + "," + std::to_string(b) +
                    ": commutator defect " + std::to_string(c.defect));
                return;  // one failure per vertex pair keeps verdicts readable
            }
        }
    }
}

}  // namespace

AssignmentVerdict validate_assignment(const GeneralCspInstance& inst,
                                      const MeasurementAssignment& asg) {
    check_shape(inst.variable_count, asg);
    AssignmentVerdict verdict;
    if (asg.cls == CommutationClass::Classical && asg.dim != 1) {
        verdict.failures.push_back("classical assignments require dimension 1");
    }
    if (asg.cls == CommutationClass::WeakQuantum) {
        verdict.failures.push_back(
            "weak-quantum class is defined on Label-Cover instances");
    }
    if (asg.cls == CommutationClass::Quantum ||
        asg.cls == CommutationClass::WeakQuantum) {
        std::set<std::pair<int, int>> seen;
        for (const Constraint& c : inst.constraints) {
            for (std::size_t i = 0; i < c.vars.size(); ++i) {
                for (std::size_t j = i + 1; j < c.vars.size(); ++j) {
                    int a = c.vars[i], b = c.vars[j];
                    if (a == b) continue;
                    if (a > b) std::swap(a, b);
                    if (!seen.insert({a, b}).second) continue;
                    record_commutation(asg.vertices[a], asg.vertices[b], a, b,
                                       verdict);
                }
            }
        }
    }
    verdict.ok = verdict.failures.empty();
    return verdict;
}

AssignmentVerdict validate_assignment(const LabelCoverInstance& inst,
                                      const MeasurementAssignment& asg) {
    const int n = inst.left_count + inst.right_count;
    check_shape(n, asg);
    AssignmentVerdict verdict;
    if (asg.cls == CommutationClass::Classical && asg.dim != 1) {
        verdict.failures.push_back("classical assignments require dimension 1");
    }
    if (asg.cls == CommutationClass::Quantum ||
        asg.cls == CommutationClass::WeakQuantum) {
        std::set<std::pair<int, int>> seen;
        for (const LabelCoverEdge& e : inst.edges) {
            int a = e.u;
            int b = inst.left_count + e.v;
            if (seen.insert({a, b}).second) {
                record_commutation(asg.vertices[a], asg.vertices[b], a, b, verdict);
            }
        }
        if (asg.cls == CommutationClass::WeakQuantum) {
            // v, v' sharing a left neighbor must be simultaneously measurable.
            std::vector<std::vector<int>> neighbors(inst.left_count);
            for (const LabelCoverEdge& e : inst.edges) {
                neighbors[e.u].push_back(e.v);
            }
            for (auto& nu : neighbors) {
                std::sort(nu.begin(), nu.end());
                nu.erase(std::unique(nu.begin(), nu.end()), nu.end());
            }
            for (const auto& nu : neighbors) {
                for (std::size_t i = 0; i < nu.size(); ++i) {
                    for (std::size_t j = i + 1; j < nu.size(); ++j) {
                        int a = inst.left_count + nu[i];
                        int b = inst.left_count + nu[j];
                        if (seen.insert({a, b}).second) {
                            record_commutation(asg.vertices[a], asg.vertices[b], a,
                                               b, verdict);
                        }
                    }
                }
            }
        }
    }
    verdict.ok = verdict.failures.empty();
    return verdict;
}

AssignmentVerdict validate_observable_assignment(const LinInstance& inst,
                                                 const ObservableAssignment& asg,
                                                 CommutationClass cls) {
    if (static_cast<int>(asg.vertices.size()) != inst.variable_count) {
        throw std::invalid_argument("assignment vertex count mismatch");
    }
    AssignmentVerdict verdict;
    for (std::size_t i = 0; i < asg.vertices.size(); ++i) {
        const CMatrix& x = asg.vertices[i];
        if (x.rows() != asg.dim || x.cols() != asg.dim) {
            throw std::invalid_argument("assignment dimension mismatch across vertices");
        }
        double defect = observable_defect(x);
        if (defect > tol::observable) {
            verdict.failures.push_back("vertex " + std::to_string(i) +
                                       ": observable defect " +
                                       std::to_string(defect));
        }
    }
    if (cls == CommutationClass::Quantum || cls == CommutationClass::Classical ||
        cls == CommutationClass::WeakQuantum) {
        std::set<std::pair<int, int>> seen;
        for (const LinConstraint& c : inst.constraints) {
            for (std::size_t i = 0; i < c.vars.size(); ++i) {
                for (std::size_t j = i + 1; j < c.vars.size(); ++j) {
                    int a = c.vars[i], b = c.vars[j];
                    if (a == b) continue;
                    if (a > b) std::swap(a, b);
                    if (!seen.insert({a, b}).second) continue;
                    CommuteResult r = commute(asg.vertices[a], asg.vertices[b]);
                    verdict.worst_commutation_defect =
                        std::max(verdict.worst_commutation_defect, r.defect);
                    if (!r.commuting) {
                        verdict.failures.push_back(
                            "vertices " + std::to_string(a) + "," +
                            std::to_string(b) + ": commutator defect " +
                            std::to_string(r.defect));
                    }
                }
            }
        }
    }
    verdict.ok = verdict.failures.empty();
    return verdict;
}

double eval_csp_value(const GeneralCspInstance& inst,
                      const MeasurementAssignment& asg) {
    check_shape(inst.variable_count, asg);
    if (asg.cls == CommutationClass::Noncommutative && inst.arity > 2) {
        throw std::invalid_argument(
            "noncommutative evaluation is defined only for 2-CSPs");
    }
    const bool commuting_class = asg.cls != CommutationClass::Noncommutative;
    double value = 0.0;
    for (const Constraint& c : inst.constraints) {
        double edge_value = 0.0;
        for (const auto& tuple : c.accept) {
            CMatrix prod = asg.vertices[c.vars[0]][tuple[0]];
            for (std::size_t i = 1; i < tuple.size(); ++i) {
                prod = prod * asg.vertices[c.vars[i]][tuple[i]];
            }
            Complex t = normalized_trace(prod);
            if (commuting_class && std::abs(t.imag()) > tol::trace_imag) {
                throw std::runtime_error(
                    "eval_csp_value: nonreal trace (residue " +
                    std::to_string(std::abs(t.imag())) +
                    ") on a constraint of a commuting class");
            }
            edge_value += t.real();
        }
        value += c.weight * edge_value;
    }
    return value;
}

double eval_labelcover_value(const LabelCoverInstance& inst,
                             const MeasurementAssignment& asg) {
    const int n = inst.left_count + inst.right_count;
    check_shape(n, asg);
    double value = 0.0;
    for (const LabelCoverEdge& e : inst.edges) {
        const Measurement& pu = asg.vertices[e.u];
        const Measurement& pv = asg.vertices[inst.left_count + e.v];
        double edge_value = 0.0;
        for (int a = 0; a < inst.alphabet; ++a) {
            Complex t = normalized_trace(pu[a] * pv[e.pi[a]]);
            if (std::abs(t.imag()) > tol::trace_imag) {
                throw std::runtime_error("eval_labelcover_value: nonreal trace");
            }
            edge_value += t.real();
        }
        value += e.weight * edge_value;
    }
    return value;
}

double eval_lin_observable_value(const LinInstance& inst,
                                 const ObservableAssignment& asg) {
    if (static_cast<int>(asg.vertices.size()) != inst.variable_count) {
        throw std::invalid_argument("assignment vertex count mismatch");
    }
    double correlation = 0.0;
    for (const LinConstraint& c : inst.constraints) {
        CMatrix prod = asg.vertices[c.vars[0]];
        for (std::size_t i = 1; i < c.vars.size(); ++i) {
            prod = prod * asg.vertices[c.vars[i]];
        }
        correlation += c.weight * c.parity * real_trace(prod);
    }
    return 0.5 + 0.5 * correlation;
}

OperatorFunction long_code_encode(const Measurement& pvm, int m) {
    if (static_cast<int>(pvm.size()) != m) {
        throw std::invalid_argument("long_code_encode: outcome count mismatch");
    }
    MeasurementVerdict check = check_measurement(pvm, MeasurementKind::Pvm);
    if (!check.ok) {
        throw std::invalid_argument("long_code_encode: input is not a PVM (" +
                                    check.failures.front() + ")");
    }
    const int d = measurement_dim(pvm);
    OperatorFunction f;
    f.m = m;
    f.dim = d;
    f.table.resize(std::size_t{1} << m);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        CMatrix acc = CMatrix::Zero(d, d);
        for (int a = 0; a < m; ++a) {
            double sign = ((x >> a) & 1u) ? -1.0 : 1.0;  // bit set ⇔ x_a = −1
            acc += sign * pvm[a];
        }
        f.table[x] = acc;
    }
    return f;
}

MeasurementAssignment classical_assignment(const std::vector<int>& labels, int m) {
    MeasurementAssignment asg;
    asg.dim = 1;
    asg.cls = CommutationClass::Classical;
    asg.kind = MeasurementKind::Pvm;
    asg.vertices.reserve(labels.size());
    for (int label : labels) {
        if (label < 0 || label >= m) {
            throw std::invalid_argument("classical_assignment: label out of range");
        }
        Measurement p(m, CMatrix::Zero(1, 1));
        p[label](0, 0) = 1.0;
        asg.vertices.push_back(std::move(p));
    }
    return asg;
}

}  // namespace qcsp
