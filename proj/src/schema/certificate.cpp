#include "mps/schema/certificate.hpp"
#include "mps/tlv.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace mps::schema {

namespace {

namespace ctype {
inline constexpr uint64_t PublicKey = 0x70;
inline constexpr uint64_t Pop = 0x71;
inline constexpr uint64_t RoutePrefix = 0x72;
inline constexpr uint64_t ValidityPeriod = 0x73;
inline constexpr uint64_t NotBefore = 0x74;
inline constexpr uint64_t NotAfter = 0x75;
} // namespace ctype

Buffer
encode_content(const CertificateFields& f)
{
  Buffer out;
  tlv::append_tlv(out, ctype::PublicKey, f.pk.bytes());
  tlv::append_tlv(out, ctype::Pop, f.pop.proof.bytes());
  if (f.route_prefix)
    tlv::append_tlv(out, ctype::RoutePrefix, encode_name(*f.route_prefix));
  if (f.validity) {
    Buffer period;
    tlv::append_nni_tlv(period, ctype::NotBefore, f.validity->not_before_ms);
    tlv::append_nni_tlv(period, ctype::NotAfter, f.validity->not_after_ms);
    tlv::append_tlv(out, ctype::ValidityPeriod, period);
  }
  return out;
}

} // namespace

bool
is_key_name(const Name& name)
{
  static const Name::Component key{'K', 'E', 'Y'};
  return name.size() >= 3 && name[name.size() - 2] == key;
}

Certificate
issue_certificate(const CertificateFields& fields, const Name& issuer_key_name, const crypto::BlsSecretKey& issuer_sk)
{
  if (!is_key_name(fields.key_name))
    throw BadCertificate("certificate name must have the form /<identity>/KEY/<id>: " + fields.key_name.to_uri());
  DataPacket packet;
  packet.name = fields.key_name;
  packet.content = encode_content(fields);
  packet.sig_info.type = SignatureType::Bls;
  packet.sig_info.key_locator.name = issuer_key_name;
  auto sig = crypto::bls_sign(issuer_sk, tbs_bytes(packet));
  packet.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
  return Certificate{fields.key_name, fields.pk, fields.pop, fields.route_prefix, fields.validity, std::move(packet)};
}

Certificate
decode_certificate(const DataPacket& packet)
{
  if (!is_key_name(packet.name))
    throw BadCertificate("certificate name must have the form /<identity>/KEY/<id>: " + packet.name.to_uri());
  if (packet.sig_info.type != SignatureType::Bls || packet.sig_value.empty())
    throw BadCertificate("certificate " + packet.name.to_uri() + " is not BLS-signed");

  tlv::ElementSequence seq(packet.content, {ctype::PublicKey, ctype::Pop, ctype::RoutePrefix, ctype::ValidityPeriod});
  auto pk_bytes = seq.require(ctype::PublicKey).value;
  auto pop_bytes = seq.require(ctype::Pop).value;
  std::optional<Name> route;
  if (auto e = seq.take(ctype::RoutePrefix))
    route = decode_name(e->value);
  std::optional<ValidityPeriod> validity;
  if (auto e = seq.take(ctype::ValidityPeriod)) {
    tlv::ElementSequence period(e->value, {ctype::NotBefore, ctype::NotAfter});
    ValidityPeriod v;
    v.not_before_ms = tlv::read_nni(period.require(ctype::NotBefore).value);
    v.not_after_ms = tlv::read_nni(period.require(ctype::NotAfter).value);
    period.finish();
    validity = v;
  }
  seq.finish();

  try {
    return Certificate{packet.name,
                       crypto::BlsPublicKey::from_bytes(pk_bytes),
                       crypto::ProofOfPossession{crypto::BlsSignature::from_bytes(pop_bytes)},
                       std::move(route),
                       validity,
                       packet};
  }
  catch (const crypto::MalformedPoint& e) {
    throw BadCertificate("certificate " + packet.name.to_uri() + ": " + e.what());
  }
}

bool
verify_certificate_signature(const Certificate& cert, const crypto::BlsPublicKey& issuer_pk)
{
  try {
    return crypto::bls_verify(issuer_pk, tbs_bytes(cert.packet), crypto::BlsSignature::from_bytes(cert.packet.sig_value));
  }
  catch (const crypto::MalformedPoint&) {
    return false;
  }
}

KnownSigners::KnownSigners(std::vector<Certificate> certs)
{
  for (const auto& c : certs) {
    if (!crypto::pop_verify(c.pk, c.pop))
      throw BadPop(c.key_name);
  }
  check_unique(certs);
  m_certs = std::move(certs);
}

KnownSigners
KnownSigners::unchecked(std::vector<Certificate> certs)
{
  check_unique(certs);
  KnownSigners out;
  out.m_certs = std::move(certs);
  return out;
}

void
KnownSigners::check_unique(const std::vector<Certificate>& certs)
{
  std::vector<Name> names;
  for (const auto& c : certs)
    names.push_back(c.key_name);
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end())
    throw Error("duplicate certificate for " + dup->to_uri());
}

KnownSigners
KnownSigners::from_wire(ByteSpan wire)
{
  return KnownSigners(decode_certificates(wire));
}

Buffer
KnownSigners::to_wire() const
{
  Buffer out;
  for (const auto& c : m_certs)
    append(out, encode_data(c.packet));
  return out;
}

const Certificate*
KnownSigners::find(const Name& key_name) const
{
  auto it = std::find_if(m_certs.begin(), m_certs.end(), [&](const Certificate& c) { return c.key_name == key_name; });
  return it == m_certs.end() ? nullptr : &*it;
}

std::vector<Name>
KnownSigners::matching(const NamePattern& pattern) const
{
  std::vector<Name> out;
  for (const auto& c : m_certs) {
    if (pattern.matches(c.key_name))
      out.push_back(c.key_name);
  }
  return out;
}

std::vector<Certificate>
decode_certificates(ByteSpan wire)
{
  std::vector<Certificate> certs;
  tlv::Reader reader(wire);
  while (!reader.empty())
    certs.push_back(decode_certificate(decode_data(reader.read().wire)));
  return certs;
}

KnownSigners
load_known_signers(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path.string());
  Buffer wire((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return KnownSigners::from_wire(wire);
}

} // namespace mps::schema
