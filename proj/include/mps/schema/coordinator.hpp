#pragma once

#include "mps/schema/certificate.hpp"

#include <optional>
#include <string>

namespace mps::schema {

/// Who may ask this signer for signatures.
///
/// Requests are named `<signer prefix>/MPS/request/<coordinator identity>/<random>`.
/// The request name must match request_pattern, the signing key must match
/// key_pattern, the coordinator identity in the request name must be the
/// identity of the signing key, and the key's certificate must chain (by exact
/// issuer key name, at most MaxChainDepth links) to one of the anchors.
struct CoordinatorSchema
{
  static constexpr size_t MaxChainDepth = 4;

  Name signer_prefix;
  NamePattern request_pattern;
  NamePattern key_pattern;
  std::vector<Certificate> anchors;

  /// Builds a schema from text patterns. A leading `/<SignerPrefix>` in the
  /// request pattern is replaced by the signer's own prefix.
  static CoordinatorSchema make(const Name& signer_prefix, std::string_view request_pattern,
                                std::string_view key_pattern, std::vector<Certificate> anchors);
};

/// The request name prefix `<signer prefix>/MPS/request`.
Name request_prefix(const Name& signer_prefix);

/// Checks a signed request Interest against the schema. `keychain` supplies
/// the coordinator's certificate and any intermediates; `now_ms`, if given,
/// is checked against certificate validity periods. On failure, `reason`
/// receives a one-line diagnostic.
bool verify_coordinator(const CoordinatorSchema& cs, const InterestPacket& request, const KnownSigners& keychain,
                        std::optional<uint64_t> now_ms = std::nullopt, std::string* reason = nullptr);

} // namespace mps::schema
