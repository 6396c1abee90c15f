#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofs/task.hpp"

namespace ofs {

struct SerializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Big-endian fixed-width encoding. Doubles travel as their IEEE-754 bit
// pattern, so genomes survive the wire bit-exactly on any host.
class ByteWriter {
  public:
    void u8(std::uint8_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    void str(const std::string& s); // u32 length prefix + raw bytes
    void raw(const Bytes& data);

    Bytes take() { return std::move(out_); }
    const Bytes& bytes() const { return out_; }

  private:
    Bytes out_;
};

class ByteReader {
  public:
    explicit ByteReader(const Bytes& data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    double f64();
    std::string str();
    Bytes take_remaining();

    std::size_t remaining() const { return data_.size() - pos_; }
    /// Throws unless every byte has been consumed.
    void expect_end() const;

  private:
    void need(std::size_t n) const;
    const Bytes& data_;
    std::size_t pos_ = 0;
};

} // namespace ofs
