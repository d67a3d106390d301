#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "qcsp/assignment.hpp"
#include "qcsp/instance.hpp"
#include "qcsp/reduction.hpp"
#include "qcsp/sdp.hpp"
#include "qcsp/soundness.hpp"

namespace qcsp {

using Json = nlohmann::json;
using InstanceVariant =
    std::variant<GeneralCspInstance, LabelCoverInstance, LinInstance>;

// Instance files carry a "kind" tag: general | label_cover | ulc | lin |
// maxcut. Permutations are arrays of m integers, operators row-major
// interleaved (re, im) arrays.

Json to_json(const GeneralCspInstance& inst);
Json to_json(const LabelCoverInstance& inst);
Json to_json(const LinInstance& inst);
InstanceVariant instance_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, int dim);

Json to_json(const MeasurementAssignment& asg);
MeasurementAssignment measurement_assignment_from_json(const Json& j);
Json to_json(const ObservableAssignment& asg);
ObservableAssignment observable_assignment_from_json(const Json& j);

// Certificates embed the source instance and parameters; loading replays the
// (deterministic) construction so ψ and the vertex map always match.
Json certificate_to_json(const TwoLinReduction& red);
Json certificate_to_json(const MaxCutReduction& red);
using ReductionVariant = std::variant<TwoLinReduction, MaxCutReduction>;
ReductionVariant reduction_from_certificate(const Json& j);

Json to_json(const SoundnessReport& report);
std::string soundness_slacks_csv(const SoundnessReport& report);

std::string interval_csv_header();
std::string interval_csv_row(const std::string& instance_id,
                             const IntervalReport& report);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

std::uint64_t fnv1a64(const std::string& bytes);
std::string file_digest(const std::string& path);

}  // namespace qcsp
