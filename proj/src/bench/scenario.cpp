#include "mps/bench/scenario.hpp"

namespace mps::bench {

Identity
make_identity(const Name& key_name, const Identity* issuer)
{
  auto keys = crypto::bls_keygen(crypto::sha256(as_bytes(key_name.to_uri())));
  const Name& issuer_name = issuer ? issuer->key_name : key_name;
  const auto& issuer_sk = issuer ? issuer->keys.sk : keys.sk;
  auto cert = schema::issue_certificate({key_name, keys.pk, keys.pop, std::nullopt, std::nullopt}, issuer_name, issuer_sk);
  return {key_name, keys, cert};
}

} // namespace mps::bench
