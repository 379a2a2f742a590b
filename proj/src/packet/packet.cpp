#include "mps/packet.hpp"
#include "mps/error.hpp"
#include "mps/tlv.hpp"

#include <algorithm>

namespace mps {

namespace t = tlv::type;

Buffer
encode_signature_info(const SignatureInfo& info)
{
  Buffer value;
  tlv::append_nni_tlv(value, t::SignatureType, static_cast<uint64_t>(info.type));
  tlv::append_tlv(value, t::KeyLocator, encode_name(info.key_locator.name));
  if (info.timestamp)
    tlv::append_nni_tlv(value, t::Timestamp, *info.timestamp);
  if (info.nonce)
    tlv::append_tlv(value, t::Nonce, *info.nonce);
  return tlv::make_tlv(t::SignatureInfo, value);
}

namespace {

SignatureInfo
decode_signature_info_value(ByteSpan value)
{
  tlv::ElementSequence seq(value, {t::SignatureType, t::KeyLocator, t::Timestamp, t::Nonce});
  SignatureInfo info;
  uint64_t type = tlv::read_nni(seq.require(t::SignatureType).value);
  if (type != static_cast<uint64_t>(SignatureType::Bls) &&
      type != static_cast<uint64_t>(SignatureType::HmacSha256))
    throw DecodeError("unsupported signature type " + std::to_string(type));
  info.type = static_cast<SignatureType>(type);
  info.key_locator.name = decode_name(seq.require(t::KeyLocator).value);
  if (auto e = seq.take(t::Timestamp))
    info.timestamp = tlv::read_nni(e->value);
  if (auto e = seq.take(t::Nonce)) {
    if (e->value.size() != InterestNonce{}.size())
      throw DecodeError("nonce must be 8 bytes");
    InterestNonce nonce;
    std::copy(e->value.begin(), e->value.end(), nonce.begin());
    info.nonce = nonce;
  }
  seq.finish();
  return info;
}

void
check_signature_length(SignatureType type, size_t length, bool allow_empty)
{
  if ((length == 0 && allow_empty) || length == signature_size(type))
    return;
  throw Error("signature value length " + std::to_string(length) + " does not match signature type");
}

void
append_data_signed_portion(Buffer& out, const DataPacket& data)
{
  append_name(out, data.name);
  tlv::append_nni_tlv(out, t::ContentType, static_cast<uint64_t>(data.content_type));
  tlv::append_nni_tlv(out, t::FreshnessPeriod, data.freshness_ms);
  tlv::append_tlv(out, t::Content, data.content);
  append(out, encode_signature_info(data.sig_info));
}

void
append_interest_signed_portion(Buffer& out, const InterestPacket& interest)
{
  append_name(out, interest.name);
  if (!interest.app_params.empty())
    tlv::append_tlv(out, t::ApplicationParameters, interest.app_params);
  if (interest.sig_info)
    append(out, encode_signature_info(*interest.sig_info));
}

} // namespace

SignatureInfo
decode_signature_info(ByteSpan wire)
{
  tlv::Element e = tlv::read_single(wire);
  if (e.type != t::SignatureInfo)
    throw DecodeError("expected SignatureInfo TLV");
  return decode_signature_info_value(e.value);
}

Buffer
tbs_bytes(const DataPacket& data)
{
  Buffer out;
  append_data_signed_portion(out, data);
  return out;
}

Buffer
encode_data(const DataPacket& data)
{
  if (data.name.empty())
    throw Error("Data name must not be empty");
  check_signature_length(data.sig_info.type, data.sig_value.size(), true);
  Buffer value = tbs_bytes(data);
  tlv::append_tlv(value, t::SignatureValue, data.sig_value);
  return tlv::make_tlv(t::Data, value);
}

DataPacket
decode_data(ByteSpan wire)
{
  tlv::Element outer = tlv::read_single(wire);
  if (outer.type != t::Data)
    throw DecodeError("expected Data TLV");
  tlv::ElementSequence seq(outer.value, {t::Name, t::ContentType, t::FreshnessPeriod, t::Content,
                                         t::SignatureInfo, t::SignatureValue});
  DataPacket data;
  data.name = decode_name_value(seq.require(t::Name).value);
  if (data.name.empty())
    throw DecodeError("Data name must not be empty");
  data.content_type = static_cast<ContentType>(tlv::read_nni(seq.require(t::ContentType).value));
  data.freshness_ms = tlv::read_nni(seq.require(t::FreshnessPeriod).value);
  auto content = seq.require(t::Content).value;
  data.content.assign(content.begin(), content.end());
  data.sig_info = decode_signature_info_value(seq.require(t::SignatureInfo).value);
  auto sig = seq.require(t::SignatureValue).value;
  seq.finish();
  if (!sig.empty() && sig.size() != signature_size(data.sig_info.type))
    throw DecodeError("signature value length does not match signature type");
  data.sig_value.assign(sig.begin(), sig.end());
  return data;
}

Buffer
tbs_bytes(const InterestPacket& interest)
{
  Buffer out;
  append_interest_signed_portion(out, interest);
  return out;
}

Buffer
encode_interest(const InterestPacket& interest)
{
  if (interest.name.empty())
    throw Error("Interest name must not be empty");
  if (interest.sig_info)
    check_signature_length(interest.sig_info->type, interest.sig_value.size(), true);
  else if (!interest.sig_value.empty())
    throw Error("Interest signature value without signature info");

  Buffer value;
  append_name(value, interest.name);
  if (interest.forwarding_hint)
    tlv::append_tlv(value, t::ForwardingHint, encode_name(*interest.forwarding_hint));
  if (!interest.app_params.empty())
    tlv::append_tlv(value, t::ApplicationParameters, interest.app_params);
  if (interest.sig_info) {
    append(value, encode_signature_info(*interest.sig_info));
    tlv::append_tlv(value, t::SignatureValue, interest.sig_value);
  }
  return tlv::make_tlv(t::Interest, value);
}

InterestPacket
decode_interest(ByteSpan wire)
{
  tlv::Element outer = tlv::read_single(wire);
  if (outer.type != t::Interest)
    throw DecodeError("expected Interest TLV");
  tlv::ElementSequence seq(outer.value, {t::Name, t::ForwardingHint, t::ApplicationParameters,
                                         t::SignatureInfo, t::SignatureValue});
  InterestPacket interest;
  interest.name = decode_name_value(seq.require(t::Name).value);
  if (interest.name.empty())
    throw DecodeError("Interest name must not be empty");
  if (auto e = seq.take(t::ForwardingHint))
    interest.forwarding_hint = decode_name(e->value);
  if (auto e = seq.take(t::ApplicationParameters)) {
    if (e->value.empty())
      throw DecodeError("empty ApplicationParameters must be omitted");
    interest.app_params.assign(e->value.begin(), e->value.end());
  }
  if (auto e = seq.take(t::SignatureInfo)) {
    interest.sig_info = decode_signature_info_value(e->value);
    auto sig = seq.require(t::SignatureValue).value;
    if (!sig.empty() && sig.size() != signature_size(interest.sig_info->type))
      throw DecodeError("signature value length does not match signature type");
    interest.sig_value.assign(sig.begin(), sig.end());
  }
  seq.finish();
  return interest;
}

} // namespace mps
