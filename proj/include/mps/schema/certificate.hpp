#pragma once

#include "mps/crypto/bls.hpp"
#include "mps/packet.hpp"
#include "mps/schema/pattern.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace mps::schema {

/// Certificate whose proof of possession does not verify under its key.
class BadPop : public Error
{
public:
  explicit BadPop(const Name& key_name)
    : Error("proof of possession does not verify for " + key_name.to_uri())
    , m_key_name(key_name)
  {}

  const Name& key_name() const noexcept { return m_key_name; }

private:
  Name m_key_name;
};

/// Structurally invalid certificate packet.
class BadCertificate : public Error
{
public:
  using Error::Error;
};

struct ValidityPeriod
{
  uint64_t not_before_ms = 0;
  uint64_t not_after_ms = 0;

  bool contains(uint64_t t) const { return not_before_ms <= t && t <= not_after_ms; }

  friend bool operator==(const ValidityPeriod&, const ValidityPeriod&) = default;
};

/// A BLS key binding: a Data packet named by the key name `/<identity>/KEY/<id>`
/// whose content carries the public key, its proof of possession, an optional
/// routable prefix and an optional validity period. The packet is BLS-signed
/// by the issuer named in its key locator; a trust anchor names itself.
struct Certificate
{
  Name key_name;
  crypto::BlsPublicKey pk;
  crypto::ProofOfPossession pop;
  std::optional<Name> route_prefix;
  std::optional<ValidityPeriod> validity;
  DataPacket packet;

  /// The key name without the trailing `KEY/<id>`.
  Name identity() const { return key_name.prefix(-2); }

  /// Where the key holder answers requests: the configured route prefix, else the identity.
  Name routable_prefix() const { return route_prefix.value_or(identity()); }

  const Name& issuer() const { return packet.sig_info.key_locator.name; }
  bool self_signed() const { return issuer() == key_name; }
};

/// True for names of the form `/<identity...>/KEY/<id>` with a non-empty identity.
bool is_key_name(const Name& name);

struct CertificateFields
{
  Name key_name;
  crypto::BlsPublicKey pk;
  crypto::ProofOfPossession pop;
  std::optional<Name> route_prefix;
  std::optional<ValidityPeriod> validity;
};

/// Builds and signs a certificate. Pass the subject's own key name and secret
/// key as issuer to create a self-signed anchor.
Certificate issue_certificate(const CertificateFields& fields, const Name& issuer_key_name,
                              const crypto::BlsSecretKey& issuer_sk);

/// Parses a certificate packet. Checks structure only; no signature or POP
/// verification. Throws BadCertificate or DecodeError.
Certificate decode_certificate(const DataPacket& packet);

bool verify_certificate_signature(const Certificate& cert, const crypto::BlsPublicKey& issuer_pk);

/// The known-signers store: certificates keyed by unique key name.
///
/// The checked constructors verify every proof of possession and reject the
/// whole set (BadPop) if one fails, so a rogue key can never enter through
/// them. unchecked() exists for tests and tools that need to inspect bad data;
/// the verifier re-checks proofs of possession regardless.
class KnownSigners
{
public:
  KnownSigners() = default;

  /// Throws BadPop or Error (duplicate key name).
  explicit KnownSigners(std::vector<Certificate> certs);

  static KnownSigners unchecked(std::vector<Certificate> certs);

  /// Concatenated certificate Data packets.
  static KnownSigners from_wire(ByteSpan wire);
  Buffer to_wire() const;

  const Certificate* find(const Name& key_name) const;
  const std::vector<Certificate>& certificates() const { return m_certs; }
  size_t size() const { return m_certs.size(); }

  /// Key names of certificates matching the pattern, in store order.
  std::vector<Name> matching(const NamePattern& pattern) const;

private:
  static void check_unique(const std::vector<Certificate>& certs);

  std::vector<Certificate> m_certs;
};

/// Reads a `signers.tlv` file. Throws BadPop naming the first offending certificate.
KnownSigners load_known_signers(const std::filesystem::path& path);

/// Decodes concatenated certificates without checking proofs of possession.
std::vector<Certificate> decode_certificates(ByteSpan wire);

} // namespace mps::schema
