#include <stdexcept>

#include "clbf/bloom.hpp"
#include "clbf/errors.hpp"
#include "clbf/packet.hpp"
#include "doctest.h"

using namespace clbf;

TEST_SUITE_BEGIN("bloom-packet");

TEST_CASE("bloom set/test and query") {
  BloomFilter bf(10);
  CHECK(bf.popcount() == 0);
  CHECK_FALSE(query(bf, std::vector<uint32_t>{1, 5}));
  bf.set_index(1);
  bf.set_index(10);
  CHECK(bf.popcount() == 2);
  CHECK(bf.test_index(1));
  CHECK(bf.test_index(10));
  CHECK_FALSE(bf.test_index(5));
  CHECK(query(bf, std::vector<uint32_t>{1, 10}));
  CHECK_FALSE(query(bf, std::vector<uint32_t>{1, 5}));
  CHECK_THROWS_AS(bf.test_index(0), std::out_of_range);
  CHECK_THROWS_AS(bf.set_index(11), std::out_of_range);
  CHECK_THROWS_AS((void)query(bf, std::vector<uint32_t>{11}), std::out_of_range);
}

TEST_CASE("packet wire golden bytes") {
  ClbfPacket pkt(make_pid(0x0102030405060708ULL), 12, 9, "hi");
  pkt.hop_counter = 3;
  pkt.bf1.set_index(1);   // MSB of first BF1 byte
  pkt.bf1.set_index(12);  // bit 12 -> byte 1 mask 0x10
  pkt.bf2.set_index(9);   // bit 9 -> byte 1 mask 0x80
  const Bytes wire = pkt.serialize();
  CHECK(to_hex(wire) == "0102030405060708"  // pid
                        "03"                // hops
                        "000c" "8010"       // m1, BF1 bits
                        "0009" "0080"       // m2, BF2 bits
                        "0002" "6869");     // payload
  CHECK(ClbfPacket::parse(wire) == pkt);
}

TEST_CASE("packet parse rejects malformed input") {
  ClbfPacket pkt(make_pid(1), 16, 16);
  Bytes wire = pkt.serialize();
  CHECK_THROWS_AS(ClbfPacket::parse(wire.substr(0, wire.size() - 1)), DecodeError);
  CHECK_THROWS_AS(ClbfPacket::parse(wire + "x"), DecodeError);
  CHECK_THROWS_AS(ClbfPacket::parse(Bytes()), DecodeError);
}

TEST_CASE("nonzero padding bits are rejected") {
  // m2 = 9 bits leaves 7 padding bits in the last BF2 byte.
  ClbfPacket pkt(make_pid(2), 8, 9);
  Bytes wire = pkt.serialize();
  wire[wire.size() - 3] = char(0x01);  // lowest bit of the BF2 pad byte
  CHECK_THROWS_AS(ClbfPacket::parse(wire), DecodeError);
}

TEST_CASE("packet id must be 8 bytes") {
  CHECK_THROWS_AS(ClbfPacket("short", 8, 8), std::invalid_argument);
}

TEST_SUITE_END();
