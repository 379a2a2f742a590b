#include "mps/error.hpp"
#include "mps/name.hpp"
#include "mps/tlv.hpp"
#include "support/generators.hpp"

#include "doctest.h"

using namespace mps;

TEST_SUITE("tlv")
{

TEST_CASE("varnum widths")
{
  CHECK(tlv::varnum_size(0) == 1);
  CHECK(tlv::varnum_size(252) == 1);
  CHECK(tlv::varnum_size(253) == 3);
  CHECK(tlv::varnum_size(0xFFFF) == 3);
  CHECK(tlv::varnum_size(0x10000) == 5);
  CHECK(tlv::varnum_size(0x100000000ULL) == 9);

  Buffer out;
  tlv::append_varnum(out, 253);
  CHECK(out == Buffer{0xFD, 0x00, 0xFD});
}

TEST_CASE("long value uses three-byte length")
{
  Buffer value(300, 0xAB);
  Buffer wire = tlv::make_tlv(0x15, value);
  REQUIRE(wire.size() == 1 + 3 + 300);
  CHECK(wire[1] == 0xFD);
  auto e = tlv::read_single(wire);
  CHECK(e.type == 0x15);
  CHECK(e.value.size() == 300);
}

TEST_CASE("non-minimal length is rejected")
{
  Buffer wire{0x15, 0xFD, 0x00, 0x01, 0xAA};
  CHECK_THROWS_AS(tlv::read_single(wire), DecodeError);
}

TEST_CASE("nni round trip and minimality")
{
  for (uint64_t n : {0ULL, 1ULL, 255ULL, 256ULL, 65535ULL, 65536ULL, 0xFFFFFFFFULL, 0x100000000ULL}) {
    Buffer b;
    tlv::append_nni(b, n);
    CHECK(tlv::read_nni(b) == n);
  }
  CHECK_THROWS_AS(tlv::read_nni(Buffer{0x00, 0x05}), DecodeError);
  CHECK_THROWS_AS(tlv::read_nni(Buffer{0x00, 0x00, 0x05}), DecodeError);
}

TEST_CASE("encode_name single component")
{
  CHECK(encode_name(Name("/a")) == Buffer{0x07, 0x03, 0x08, 0x01, 0x61});
}

TEST_CASE("decode_name rejects declared length beyond input")
{
  CHECK_THROWS_AS(decode_name(Buffer{0x07, 0x02, 0x08, 0x05}), DecodeError);
}

TEST_CASE("decode_name rejects empty and foreign components")
{
  CHECK_THROWS_AS(decode_name(Buffer{0x07, 0x02, 0x08, 0x00}), DecodeError);
  CHECK_THROWS_AS(decode_name(Buffer{0x07, 0x03, 0x09, 0x01, 0x61}), DecodeError);
  CHECK_THROWS_AS(decode_name(Buffer{0x07, 0x03, 0x08, 0x01, 0x61, 0x00}), DecodeError);
}

TEST_CASE("name round trip")
{
  Name n("/Site/maintenance/Alice");
  CHECK(n.size() == 3);
  CHECK(decode_name(encode_name(n)) == n);
  CHECK(n.to_uri() == "/Site/maintenance/Alice");
}

TEST_CASE("name text escaping")
{
  Name n;
  n.append(ByteSpan(Buffer{0x00, 'a', '/', '*', 0xFF}));
  CHECK(n.to_uri() == "/%00a%2F%2A%FF");
  CHECK(Name(n.to_uri()) == n);
  CHECK(Name("/") == Name());
  CHECK(Name("/a/b/") == Name("/a/b"));
  CHECK_THROWS_AS(Name("a/b"), Error);
  CHECK_THROWS_AS(Name("/a//b"), Error);
  CHECK_THROWS_AS(Name("/a%4"), Error);
}

TEST_CASE("component length limits")
{
  Name n;
  CHECK_NOTHROW(n.append(ByteSpan(Buffer(255, 'x'))));
  CHECK_THROWS_AS(n.append(ByteSpan(Buffer(256, 'x'))), Error);
  CHECK_THROWS_AS(n.append(std::string_view("")), Error);
}

TEST_CASE("prefix helpers")
{
  Name n("/a/b/c/d");
  CHECK(n.prefix(2) == Name("/a/b"));
  CHECK(n.prefix(-1) == Name("/a/b/c"));
  CHECK(n.sub_name(1, 2) == Name("/b/c"));
  CHECK(Name("/a/b").is_prefix_of(n));
  CHECK_FALSE(Name("/a/c").is_prefix_of(n));
  CHECK(Name().is_prefix_of(n));
}

TEST_CASE("property: name round trip in binary and text form")
{
  testing::Gen gen(7);
  for (int i = 0; i < 500; ++i) {
    Name n = gen.name(0, 8);
    CHECK(decode_name(encode_name(n)) == n);
    CHECK(Name(n.to_uri()) == n);
  }
}

} // TEST_SUITE
