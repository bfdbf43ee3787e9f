#include "clbf/packet.hpp"

#include <stdexcept>

#include "clbf/errors.hpp"

namespace clbf {

namespace {

void put_u16(Bytes& out, uint32_t v) {
  out.push_back(char((v >> 8) & 0xFF));
  out.push_back(char(v & 0xFF));
}

class Reader {
 public:
  explicit Reader(const Bytes& b) : b_(b) {}
  Bytes take(std::size_t n) {
    if (pos_ + n > b_.size()) throw DecodeError("truncated packet");
    Bytes out = b_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  uint32_t u8() { return uint8_t(take(1)[0]); }
  uint32_t u16() {
    Bytes t = take(2);
    return (uint32_t(uint8_t(t[0])) << 8) | uint8_t(t[1]);
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  const Bytes& b_;
  std::size_t pos_ = 0;
};

}  // namespace

ClbfPacket::ClbfPacket(Bytes packet_id, uint32_t m1, uint32_t m2, Bytes body)
    : pid(std::move(packet_id)), bf1(m1), bf2(m2), payload(std::move(body)) {
  if (pid.size() != 8) throw std::invalid_argument("packet id must be 8 bytes");
}

Bytes ClbfPacket::serialize() const {
  if (hop_counter > 0xFF) throw std::invalid_argument("hop counter exceeds one byte");
  if (bf1.size_bits() > 0xFFFF || bf2.size_bits() > 0xFFFF)
    throw std::invalid_argument("filter size exceeds wire limit");
  if (payload.size() > 0xFFFF) throw std::invalid_argument("payload exceeds wire limit");
  Bytes out;
  out.reserve(8 + 1 + 2 + (bf1.size_bits() + 7) / 8 + 2 + (bf2.size_bits() + 7) / 8 + 2 +
              payload.size());
  out += pid;
  out.push_back(char(hop_counter & 0xFF));
  put_u16(out, bf1.size_bits());
  out += bf1.bits().to_bytes();
  put_u16(out, bf2.size_bits());
  out += bf2.bits().to_bytes();
  put_u16(out, uint32_t(payload.size()));
  out += payload;
  return out;
}

ClbfPacket ClbfPacket::parse(const Bytes& wire) {
  Reader r(wire);
  Bytes pid = r.take(8);
  const uint32_t hops = r.u8();
  const uint32_t m1 = r.u16();
  if (m1 < 1) throw DecodeError("BF1 size must be positive");
  BitVec b1 = BitVec::from_bytes(r.take((m1 + 7) / 8), m1);
  const uint32_t m2 = r.u16();
  if (m2 < 1) throw DecodeError("BF2 size must be positive");
  BitVec b2 = BitVec::from_bytes(r.take((m2 + 7) / 8), m2);
  const uint32_t plen = r.u16();
  Bytes payload = r.take(plen);
  if (!r.done()) throw DecodeError("trailing bytes after packet");

  ClbfPacket pkt(std::move(pid), m1, m2, std::move(payload));
  pkt.bf1 = BloomFilter::from_bits(b1);
  pkt.bf2 = BloomFilter::from_bits(b2);
  pkt.hop_counter = hops;
  return pkt;
}

}  // namespace clbf
