#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "ssgraph/certify.h"
#include "ssgraph/geometry.h"
#include "ssgraph/loop.h"
#include "ssgraph/signals.h"
#include "ssgraph/spectral.h"
#include "ssgraph/ssg.h"
#include "ssgraph/systems.h"

namespace ssgraph {

// Model documents:
//   {"type": "tf", "num": [...], "den": [...]}
//   {"type": "ss", "A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]]}
//   {"type": "static", "kind": "saturation", "limit": 1.0}
//     (kinds: saturation/limit, deadzone/width, relu, cubic/coefficient, gain/gain)
//   {"type": "series", "left": {...}, "right": {...}}
//   {"type": "parallel", "left": {...}, "right": {...}}
//   {"type": "feedback", "forward": {...}, "backward": {...}, "sign": -1}
//   {"type": "scale", "factor": -0.5, "inner": {...}}
// Parse errors throw ModelError with the JSON path of the offending node.
OperatorModel ModelFromJson(const nlohmann::json& doc, const std::string& path = "$");
nlohmann::json ModelToJson(const OperatorModel& model);

/// Fields named as in InputFamily ("kind", "omega_min", ..., "seed", "count").
InputFamily InputFamilyFromJson(const nlohmann::json& doc,
                                const InputFamily& defaults = {});
nlohmann::json InputFamilyToJson(const InputFamily& family);

/// Numbers formatted with 15 significant digits.
std::string FormatNumber(double value);

// CSV writers. `preamble` lines (if any) are emitted first, each prefixed
// with "# ".
void WriteSignalCsv(std::ostream& out, const SampledSignal& signal,
                    const std::string& preamble = {});
/// Reads `t,value` rows (lines starting with '#' are skipped). dt and start
/// come from the time column, which must be uniform. Throws ParameterError
/// with the offending line number.
SampledSignal ReadSignalCsv(std::istream& in);
void WriteSpectrumCsv(std::ostream& out, const Spectrum& spectrum,
                      const std::string& preamble = {});
/// input_id,gain,phase,re,im,indeterminate; indeterminate points appear once
/// per sign.
void WriteCloudCsv(std::ostream& out, const PointCloud& cloud,
                   const std::string& preamble = {});
void WriteTrajectoryCsv(std::ostream& out, const LoopTrajectory& trajectory,
                        const std::string& preamble = {});

nlohmann::json VerdictToJson(const StabilityVerdict& verdict);
nlohmann::json ReportToJson(const CertificateReport& report);
nlohmann::json PassivityVerdictToJson(const PassivityVerdict& verdict);
nlohmann::json NiVerdictToJson(const NiVerdict& verdict);
nlohmann::json WSetToJson(const WSetDiagnostic& diagnostic);
nlohmann::json GainToJson(const GainEstimate& estimate, std::uint64_t seed);

/// 64-bit FNV-1a, used for config provenance hashes.
std::uint64_t Fnv1a64(const std::string& bytes);
std::string HexDigest(std::uint64_t value);

}  // namespace ssgraph
