#include "mps/error.hpp"
#include "mps/packet.hpp"
#include "mps/tlv.hpp"
#include "support/generators.hpp"

#include "doctest.h"

#include <set>

using namespace mps;

namespace {

DataPacket
sample_data()
{
  DataPacket d;
  d.name = Name("/Site/inverters/firmware/update");
  d.content = Buffer{'f', 'w', '-', '1', '.', '2'};
  d.freshness_ms = 10000;
  d.sig_info.type = SignatureType::Bls;
  d.sig_info.key_locator.name = Name("/Site/maintenance/Alice/MPS/siginfo/xyz");
  return d;
}

/// Wire length of the outer Data type and length octets.
size_t
outer_header_size(ByteSpan wire)
{
  return wire.size() - tlv::read_single(wire).value.size();
}

} // namespace

TEST_SUITE("packet")
{

TEST_CASE("data round trip and BLS signature length")
{
  DataPacket d = sample_data();
  d.sig_value = Buffer(96, 0x5A);
  DataPacket back = decode_data(encode_data(d));
  CHECK(back == d);
  CHECK(back.sig_value.size() == 96);
}

TEST_CASE("signature value length must match the type")
{
  DataPacket d = sample_data();
  d.sig_value = Buffer(64, 0);
  CHECK_THROWS_AS(encode_data(d), Error);
  d.sig_info.type = SignatureType::HmacSha256;
  d.sig_value = Buffer(32, 0);
  CHECK_NOTHROW(encode_data(d));
}

TEST_CASE("empty names are not encodable")
{
  DataPacket d = sample_data();
  d.name = Name();
  CHECK_THROWS_AS(encode_data(d), Error);
}

TEST_CASE("tbs excludes the signature value")
{
  DataPacket d = sample_data();
  DataPacket signed_copy = d;
  signed_copy.sig_value = Buffer(96, 0x11);
  CHECK(tbs_bytes(d) == tbs_bytes(signed_copy));
}

TEST_CASE("tbs covers the key locator")
{
  DataPacket d = sample_data();
  DataPacket other = d;
  other.sig_info.key_locator.name = Name("/Site/maintenance/Alice/MPS/siginfo/abc");
  CHECK(tbs_bytes(d) != tbs_bytes(other));
}

TEST_CASE("tbs length equals the Data value minus the SignatureValue element")
{
  testing::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    DataPacket d = gen.data();
    Buffer wire = encode_data(d);
    size_t sig_tlv = tlv::make_tlv(tlv::type::SignatureValue, d.sig_value).size();
    CHECK(tbs_bytes(d).size() == wire.size() - outer_header_size(wire) - sig_tlv);
  }
}

TEST_CASE("property: tbs is sensitive to every signed field")
{
  testing::Gen gen(12);
  for (int i = 0; i < 100; ++i) {
    DataPacket d = gen.data();
    Buffer base = tbs_bytes(d);

    auto changed = [&](auto mutate) {
      DataPacket m = d;
      mutate(m);
      return tbs_bytes(m) != base;
    };
    CHECK(changed([](DataPacket& m) { m.name.append(std::string_view("x")); }));
    CHECK(changed([](DataPacket& m) {
      m.content_type = static_cast<ContentType>((static_cast<uint64_t>(m.content_type) + 1) % 3);
    }));
    CHECK(changed([](DataPacket& m) { m.freshness_ms += 1; }));
    CHECK(changed([](DataPacket& m) { m.content.push_back(0); }));
    if (!d.content.empty()) {
      size_t pos = gen.below(d.content.size());
      CHECK(changed([&](DataPacket& m) { m.content[pos] ^= 0x01; }));
    }
    CHECK(changed([](DataPacket& m) {
      m.sig_info.type = m.sig_info.type == SignatureType::Bls ? SignatureType::HmacSha256 : SignatureType::Bls;
    }));
    CHECK(changed([](DataPacket& m) { m.sig_info.key_locator.name.append(std::string_view("k")); }));
    CHECK(changed([](DataPacket& m) { m.sig_info.timestamp = m.sig_info.timestamp.value_or(0) + 1; }));
    CHECK(changed([](DataPacket& m) {
      m.sig_info.nonce = InterestNonce{1, 2, 3, 4, 5, 6, 7, static_cast<uint8_t>(m.sig_info.nonce ? (*m.sig_info.nonce)[7] + 1 : 0)};
    }));
    CHECK_FALSE(changed([](DataPacket& m) { m.sig_value = Buffer(signature_size(m.sig_info.type), 0xEE); }));
  }
}

TEST_CASE("property: data and interest round trip")
{
  testing::Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    DataPacket d = gen.data();
    CHECK(decode_data(encode_data(d)) == d);
    InterestPacket in = gen.interest();
    CHECK(decode_interest(encode_interest(in)) == in);
  }
}

TEST_CASE("encoding is deterministic and injective over a random corpus")
{
  testing::Gen gen(14);
  std::vector<DataPacket> corpus;
  for (int i = 0; i < 1000; ++i)
    corpus.push_back(gen.data());

  std::set<Buffer> seen;
  size_t distinct_packets = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    Buffer wire = encode_data(corpus[i]);
    CHECK(encode_data(DataPacket(corpus[i])) == wire);
    bool duplicate_packet = false;
    for (size_t j = 0; j < i && !duplicate_packet; ++j)
      duplicate_packet = corpus[j] == corpus[i];
    if (!duplicate_packet) {
      ++distinct_packets;
      seen.insert(wire);
    }
  }
  CHECK(seen.size() == distinct_packets);
}

TEST_CASE("unknown non-critical fields are skipped")
{
  DataPacket d = sample_data();
  Buffer wire = encode_data(d);
  auto outer = tlv::read_single(wire);
  Buffer value(outer.value.begin(), outer.value.end());
  Buffer extra = tlv::make_tlv(0x90, Buffer{1, 2, 3});
  value.insert(value.begin() + static_cast<std::ptrdiff_t>(encode_name(d.name).size()), extra.begin(), extra.end());
  CHECK(decode_data(tlv::make_tlv(tlv::type::Data, value)) == d);
}

TEST_CASE("unknown critical fields are rejected")
{
  DataPacket d = sample_data();
  Buffer wire = encode_data(d);
  auto outer = tlv::read_single(wire);
  Buffer value(outer.value.begin(), outer.value.end());
  Buffer extra = tlv::make_tlv(0x40, Buffer{1});
  value.insert(value.end(), extra.begin(), extra.end());
  CHECK_THROWS_AS(decode_data(tlv::make_tlv(tlv::type::Data, value)), UnknownCriticalField);
}

TEST_CASE("duplicate or reordered fields are rejected")
{
  DataPacket d = sample_data();
  Buffer wire = encode_data(d);
  auto outer = tlv::read_single(wire);
  Buffer value(outer.value.begin(), outer.value.end());
  Buffer twice = value;
  Buffer sig = tlv::make_tlv(tlv::type::SignatureValue, Buffer{});
  twice.insert(twice.end(), sig.begin(), sig.end());
  CHECK_THROWS_AS(decode_data(tlv::make_tlv(tlv::type::Data, twice)), DecodeError);
}

TEST_CASE("truncated packets are rejected")
{
  DataPacket d = sample_data();
  Buffer wire = encode_data(d);
  for (size_t cut = 0; cut < wire.size(); ++cut)
    CHECK_THROWS_AS(decode_data(ByteSpan(wire).first(cut)), DecodeError);
}

TEST_CASE("signed interest tbs covers name, parameters and signature info only")
{
  InterestPacket i;
  i.name = Name("/Mfr/QA/operatorX/MPS/request/Site/maintenance/Alice/r");
  i.app_params = Buffer{1, 2, 3};
  SignatureInfo info;
  info.key_locator.name = Name("/Site/maintenance/Alice/KEY/1");
  info.timestamp = 1700000000000;
  info.nonce = InterestNonce{1, 2, 3, 4, 5, 6, 7, 8};
  i.sig_info = info;
  i.sig_value = Buffer(96, 0);

  Buffer base = tbs_bytes(i);
  InterestPacket hinted = i;
  hinted.forwarding_hint = Name("/repo");
  CHECK(tbs_bytes(hinted) == base);

  InterestPacket resigned = i;
  resigned.sig_value = Buffer(96, 1);
  CHECK(tbs_bytes(resigned) == base);

  InterestPacket params = i;
  params.app_params.push_back(4);
  CHECK(tbs_bytes(params) != base);

  InterestPacket nonce = i;
  nonce.sig_info->nonce = InterestNonce{};
  CHECK(tbs_bytes(nonce) != base);
}

} // TEST_SUITE
