#pragma once

// Little-endian primitive encoding shared by the model and embedding file formats.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "driftlab/error.hpp"

namespace driftlab::detail {

class ByteWriter {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_arithmetic_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(bytes, bytes + sizeof(T));
    }
    buffer_.insert(buffer_.end(), bytes, bytes + sizeof(T));
  }

  void put_bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    buffer_.insert(buffer_.end(), p, p + size);
  }

  const std::vector<unsigned char>& bytes() const noexcept { return buffer_; }

  // Writes through a temporary file and renames it into place.
  void save(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
      out.write(reinterpret_cast<const char*>(buffer_.data()),
                static_cast<std::streamsize>(buffer_.size()));
      if (!out) throw DataError("write failed for '" + path.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw DataError("cannot move '" + tmp.string() + "' into place: " + ec.message());
  }

 private:
  std::vector<unsigned char> buffer_;
};

class ByteReader {
 public:
  ByteReader(std::vector<unsigned char> data, std::string origin)
      : data_(std::move(data)), origin_(std::move(origin)) {}

  static ByteReader open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return ByteReader(std::move(data), path.string());
  }

  template <typename T>
  T get() {
    require(sizeof(T));
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(bytes, bytes + sizeof(T));
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

  void get_bytes(void* out, std::size_t size) {
    require(size);
    std::memcpy(out, data_.data() + pos_, size);
    pos_ += size;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::size_t size() const noexcept { return data_.size(); }
  const std::string& origin() const noexcept { return origin_; }

  void require(std::size_t n) const {
    if (remaining() < n) {
      throw DataError(origin_ + ": truncated file (needed " + std::to_string(n) +
                      " more bytes at offset " + std::to_string(pos_) + ", have " +
                      std::to_string(remaining()) + ")");
    }
  }

 private:
  std::vector<unsigned char> data_;
  std::string origin_;
  std::size_t pos_ = 0;
};

}  // namespace driftlab::detail
