#pragma once

#include <poincare/conic_maps.hpp>
#include <poincare/domain_catalog.hpp>
#include <poincare/estimators.hpp>
#include <poincare/homotopy_arcs.hpp>
#include <poincare/verification.hpp>

#include <json.hpp>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace poincare::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };

/// Raised when the output target cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x rounded to 12 significant digits; the JSON writer prints the shortest
/// representation of the rounded value, so output is byte-stable.
[[nodiscard]] double round12(double x);
/// "%.12g".
[[nodiscard]] std::string format12(double x);

[[nodiscard]] Json to_json(const DomainSpec& domain);
[[nodiscard]] Json to_json(const EstimateResult& result);
[[nodiscard]] Json to_json(const ArcConstants& constants);
[[nodiscard]] Json to_json(const ConicCertificate& certificate);
[[nodiscard]] Json to_json(const VerificationReport& report);
[[nodiscard]] Json to_json(const SweepReport& report);
[[nodiscard]] Json to_json(const NeckReport& report);

/// Two-space indented JSON with every number passed through round12 and
/// non-finite numbers written as null; ends with a newline.
[[nodiscard]] std::string render_json(const Json& value);

[[nodiscard]] std::string render_csv(const SweepReport& report);
[[nodiscard]] std::string render_csv(const VerificationReport& report);
[[nodiscard]] std::string render_csv(const EstimateResult& result);
[[nodiscard]] std::string render_csv(const std::vector<DomainSpec>& catalog);
/// x,y,value rows of a nodal function.
[[nodiscard]] std::string render_witness_csv(const DiscreteFunction& witness);

/// Writes `text` to `path`, or to `out` when no path is given. Throws
/// OutputError when the file cannot be written.
void write_report(const std::string& text, const std::optional<std::string>& path, std::ostream& out);

}  // namespace poincare::cli
