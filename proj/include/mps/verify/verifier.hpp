#pragma once

#include "mps/net/face.hpp"
#include "mps/rpc/messages.hpp"
#include "mps/schema/certificate.hpp"
#include "mps/schema/rule.hpp"

#include <string>

namespace mps::verify {

/// The SigInfo packet could not be retrieved; says nothing about validity.
class FetchTimeout : public Error
{
public:
  explicit FetchTimeout(const Name& name)
    : Error("SigInfo " + name.to_uri() + " could not be fetched")
  {}
};

class UnknownSigner : public Error
{
public:
  explicit UnknownSigner(const Name& key_name)
    : Error("unknown signer " + key_name.to_uri())
    , m_key_name(key_name)
  {}

  const Name& key_name() const noexcept { return m_key_name; }

private:
  Name m_key_name;
};

/// The first check a packet failed, in pipeline order.
enum class Failure {
  None,
  NotMultiSigned,      ///< not a BLS-signed packet with a key locator
  SigInfoMismatch,     ///< SigInfo is not named by the key locator or is not a SigInfo packet
  UnknownCoordinator,  ///< SigInfo signer is not a known certificate
  BadSigInfoSignature, ///< SigInfo signature does not verify under the coordinator's key
  MalformedSigInfo,
  SchemaUnsatisfied,
  UnknownSigner,
  BadPop,
  BadAggregate,
};

std::string_view to_string(Failure f);

struct Verdict
{
  Failure failure = Failure::None;
  std::string detail;
  std::vector<Name> signers; ///< from the SigInfo, once decoded

  bool valid() const { return failure == Failure::None; }
  explicit operator bool() const { return valid(); }
};

struct VerifierOptions
{
  uint64_t fetch_timeout_ms = 4000;
  unsigned fetch_retries = 3; ///< after the first attempt
};

/// Fetches the SigInfo named by the packet's key locator and verifies the
/// packet with it. Throws FetchTimeout if the SigInfo never arrives.
Verdict verify_multisigned(const DataPacket& signed_data, const schema::PolicySet& policy,
                           const schema::KnownSigners& known, net::Face& face, VerifierOptions options = {});

/// Verifies with a SigInfo packet already in hand.
Verdict verify_with_siginfo(const DataPacket& signed_data, const DataPacket& siginfo,
                            const schema::PolicySet& policy, const schema::KnownSigners& known);

/// Aggregate of the listed signers' public keys; order does not matter.
/// Throws UnknownSigner, or EmptyInput for an empty list.
crypto::BlsPublicKey aggregate_public_keys_for(std::span<const Name> signers, const schema::KnownSigners& known);

} // namespace mps::verify
