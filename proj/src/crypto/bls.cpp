#include "mps/crypto/bls.hpp"

#include <blst.h>
#include <sodium.h>

#include <cstring>

namespace mps::crypto {

static_assert(sizeof(blst_p1_affine) == 96);
static_assert(sizeof(blst_p2_affine) == 192);

class BlsAccess
{
public:
  static blst_scalar
  scalar(const BlsSecretKey& sk)
  {
    blst_scalar s;
    blst_scalar_from_bendian(&s, sk.m_scalar.data());
    return s;
  }

  static BlsSecretKey
  make_secret(const blst_scalar& s)
  {
    BlsSecretKey sk;
    blst_bendian_from_scalar(sk.m_scalar.data(), &s);
    return sk;
  }

  static const blst_p1_affine*
  affine(const BlsPublicKey& pk)
  {
    return reinterpret_cast<const blst_p1_affine*>(pk.m_affine.data());
  }

  static const blst_p2_affine*
  affine(const BlsSignature& sig)
  {
    return reinterpret_cast<const blst_p2_affine*>(sig.m_affine.data());
  }

  static BlsPublicKey
  make_public(const blst_p1_affine& point)
  {
    BlsPublicKey pk;
    std::memcpy(pk.m_affine.data(), &point, sizeof(point));
    blst_p1_affine_compress(pk.m_compressed.data(), &point);
    return pk;
  }

  static BlsSignature
  make_signature(const blst_p2_affine& point)
  {
    BlsSignature sig;
    std::memcpy(sig.m_affine.data(), &point, sizeof(point));
    blst_p2_affine_compress(sig.m_compressed.data(), &point);
    return sig;
  }

  static BlsPublicKey
  make_public(const blst_p1& point)
  {
    blst_p1_affine a;
    blst_p1_to_affine(&a, &point);
    return make_public(a);
  }

  static BlsSignature
  make_signature(const blst_p2& point)
  {
    blst_p2_affine a;
    blst_p2_to_affine(&a, &point);
    return make_signature(a);
  }
};

namespace {

const byte*
as_byte_ptr(std::string_view s)
{
  return reinterpret_cast<const byte*>(s.data());
}

BlsSignature
sign_with_dst(const BlsSecretKey& sk, ByteSpan message, std::string_view dst)
{
  blst_p2 hash;
  blst_hash_to_g2(&hash, message.data(), message.size(), as_byte_ptr(dst), dst.size(), nullptr, 0);
  blst_scalar s = BlsAccess::scalar(sk);
  blst_p2 sig;
  blst_sign_pk_in_g1(&sig, &hash, &s);
  sodium_memzero(&s, sizeof(s));
  return BlsAccess::make_signature(sig);
}

bool
verify_with_dst(const BlsPublicKey& pk, ByteSpan message, const BlsSignature& sig, std::string_view dst)
{
  return blst_core_verify_pk_in_g1(BlsAccess::affine(pk), BlsAccess::affine(sig), true, message.data(),
                                   message.size(), as_byte_ptr(dst), dst.size(), nullptr, 0) == BLST_SUCCESS;
}

} // namespace

BlsSecretKey
BlsSecretKey::from_bytes(ByteSpan bytes)
{
  if (bytes.size() != BlsSecretKeySize)
    throw Error("BLS secret key must be 32 bytes");
  blst_scalar s;
  blst_scalar_from_bendian(&s, bytes.data());
  bool ok = blst_sk_check(&s);
  sodium_memzero(&s, sizeof(s));
  if (!ok)
    throw Error("BLS secret key is not a valid non-zero scalar");
  BlsSecretKey sk;
  std::copy(bytes.begin(), bytes.end(), sk.m_scalar.begin());
  return sk;
}

BlsSecretKey::~BlsSecretKey()
{
  sodium_memzero(m_scalar.data(), m_scalar.size());
}

BlsPublicKey
BlsPublicKey::from_bytes(ByteSpan bytes)
{
  if (bytes.size() != BlsPublicKeySize)
    throw MalformedPoint("BLS public key must be 48 bytes");
  blst_p1_affine point;
  if (blst_p1_uncompress(&point, bytes.data()) != BLST_SUCCESS)
    throw MalformedPoint("BLS public key does not decode");
  if (blst_p1_affine_is_inf(&point))
    throw MalformedPoint("BLS public key is the identity");
  if (!blst_p1_affine_in_g1(&point))
    throw MalformedPoint("BLS public key is not in G1");
  return BlsAccess::make_public(point);
}

BlsSignature
BlsSignature::from_bytes(ByteSpan bytes)
{
  if (bytes.size() != BlsSignatureSize)
    throw MalformedPoint("BLS signature must be 96 bytes");
  blst_p2_affine point;
  if (blst_p2_uncompress(&point, bytes.data()) != BLST_SUCCESS)
    throw MalformedPoint("BLS signature does not decode");
  if (!blst_p2_affine_in_g2(&point))
    throw MalformedPoint("BLS signature is not in G2");
  return BlsAccess::make_signature(point);
}

BlsKeyPair
bls_keygen(ByteSpan seed)
{
  if (seed.size() < 32)
    throw WeakSeed("BLS key generation needs at least 32 bytes of seed");
  blst_scalar s;
  blst_keygen(&s, seed.data(), seed.size(), nullptr, 0);
  BlsSecretKey sk = BlsAccess::make_secret(s);
  sodium_memzero(&s, sizeof(s));
  BlsPublicKey pk = bls_public_key(sk);
  ProofOfPossession pop = pop_prove(sk);
  return {std::move(sk), std::move(pk), std::move(pop)};
}

BlsPublicKey
bls_public_key(const BlsSecretKey& sk)
{
  blst_scalar s = BlsAccess::scalar(sk);
  blst_p1 pk;
  blst_sk_to_pk_in_g1(&pk, &s);
  sodium_memzero(&s, sizeof(s));
  return BlsAccess::make_public(pk);
}

BlsSignature
bls_sign(const BlsSecretKey& sk, ByteSpan message)
{
  return sign_with_dst(sk, message, BlsSignatureDst);
}

bool
bls_verify(const BlsPublicKey& pk, ByteSpan message, const BlsSignature& sig)
{
  return verify_with_dst(pk, message, sig, BlsSignatureDst);
}

BlsSignature
bls_aggregate_sigs(std::span<const BlsSignature> sigs)
{
  if (sigs.empty())
    throw EmptyInput("cannot aggregate an empty list of signatures");
  blst_p2 sum;
  blst_p2_from_affine(&sum, BlsAccess::affine(sigs[0]));
  for (size_t i = 1; i < sigs.size(); ++i)
    blst_p2_add_or_double_affine(&sum, &sum, BlsAccess::affine(sigs[i]));
  return BlsAccess::make_signature(sum);
}

BlsPublicKey
bls_aggregate_pks(std::span<const BlsPublicKey> pks)
{
  if (pks.empty())
    throw EmptyInput("cannot aggregate an empty list of public keys");
  blst_p1 sum;
  blst_p1_from_affine(&sum, BlsAccess::affine(pks[0]));
  for (size_t i = 1; i < pks.size(); ++i)
    blst_p1_add_or_double_affine(&sum, &sum, BlsAccess::affine(pks[i]));
  if (blst_p1_is_inf(&sum))
    throw MalformedPoint("aggregate public key is the identity");
  return BlsAccess::make_public(sum);
}

bool
bls_fast_aggregate_verify(std::span<const BlsPublicKey> pks, ByteSpan message, const BlsSignature& sig)
{
  if (pks.empty())
    return false;
  try {
    return bls_verify(bls_aggregate_pks(pks), message, sig);
  }
  catch (const MalformedPoint&) {
    return false;
  }
}

ProofOfPossession
pop_prove(const BlsSecretKey& sk)
{
  BlsPublicKey pk = bls_public_key(sk);
  return {sign_with_dst(sk, pk.bytes(), BlsPopDst)};
}

bool
pop_verify(const BlsPublicKey& pk, const ProofOfPossession& pop)
{
  return verify_with_dst(pk, pk.bytes(), pop.proof, BlsPopDst);
}

} // namespace mps::crypto
