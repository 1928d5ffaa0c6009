#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "monoq/pattern.hpp"
#include "monoq/search.hpp"

namespace monoq {

inline constexpr const char* kToolVersion = "monoq 0.1.0";
inline constexpr int kCertificateFormat = 1;

nlohmann::json options_to_json(const FamilyOptions& o);
FamilyOptions options_from_json(const nlohmann::json& j);

/// Deterministic JSON view of a search result. Wall time is left out so
/// identical runs serialize identically.
nlohmann::json result_to_json(const SearchResult& result);

/// Lower-bound certificate (avoiding coloring) or upper-bound certificate
/// (exhaustion record). Budget-exceeded results have no certificate.
std::optional<nlohmann::json> make_certificate(const SearchResult& result, const FamilyOptions& family_options);

struct VerificationReport {
    bool ok = false;
    std::string message;
    /// First monochromatic instance found in a lower-bound coloring.
    std::optional<Witness> violation;
};

/// Re-checks a certificate: lower bounds through the detector, upper bounds
/// by re-running the recorded search and comparing node count and trace hash.
VerificationReport verify_certificate(const nlohmann::json& certificate);

std::string witness_to_string(const Witness& w);

}  // namespace monoq
