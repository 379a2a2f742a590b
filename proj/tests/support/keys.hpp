#pragma once

#include "mps/crypto/hash.hpp"
#include "mps/schema/certificate.hpp"

#include <string_view>

namespace mps::testing {

/// Reproducible key pair derived from a label.
inline crypto::BlsKeyPair
test_keys(std::string_view label)
{
  auto seed = crypto::sha256(as_bytes(label));
  return crypto::bls_keygen(seed);
}

struct TestIdentity
{
  Name key_name;
  crypto::BlsKeyPair keys;
  schema::Certificate cert;
};

inline TestIdentity
make_anchor(const Name& key_name)
{
  auto kp = test_keys(key_name.to_uri());
  auto cert = schema::issue_certificate({key_name, kp.pk, kp.pop, std::nullopt, std::nullopt}, key_name, kp.sk);
  return {key_name, kp, cert};
}

inline TestIdentity
make_issued(const Name& key_name, const TestIdentity& issuer, std::optional<Name> route = std::nullopt)
{
  auto kp = test_keys(key_name.to_uri());
  auto cert = schema::issue_certificate({key_name, kp.pk, kp.pop, std::move(route), std::nullopt}, issuer.key_name,
                                        issuer.keys.sk);
  return {key_name, kp, cert};
}

} // namespace mps::testing
