#include "driftlab/embedding_io.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "binary_io.hpp"
#include "driftlab/error.hpp"

namespace driftlab {

namespace {
constexpr char kMagic[4] = {'D', 'L', 'E', 'M'};
}

void write_embeddings(const Matrix& vectors, const std::optional<std::vector<std::uint8_t>>& labels,
                      const std::filesystem::path& path) {
  if (vectors.rows() == 0 || vectors.cols() == 0) {
    throw ParameterError("write_embeddings: matrix must have at least one row and one column");
  }
  if (labels && labels->size() != static_cast<std::size_t>(vectors.rows())) {
    throw ParameterError("write_embeddings: " + std::to_string(labels->size()) + " labels for " +
                         std::to_string(vectors.rows()) + " rows");
  }
  detail::ByteWriter w;
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put<std::uint32_t>(kEmbeddingFileVersion);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(vectors.rows()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(vectors.cols()));
  w.put<std::uint8_t>(labels ? 1 : 0);
  if (labels) w.put_bytes(labels->data(), labels->size());
  for (Index r = 0; r < vectors.rows(); ++r) {
    for (Index c = 0; c < vectors.cols(); ++c) {
      const auto value = static_cast<float>(vectors(r, c));
      if (!std::isfinite(value)) {
        throw DataError("write_embeddings: value at (" + std::to_string(r) + ", " +
                        std::to_string(c) + ") is not finite as a 32-bit float");
      }
      w.put<float>(value);
    }
  }
  w.save(path);
}

Embeddings read_embeddings(const std::filesystem::path& path) {
  auto r = detail::ByteReader::open(path);
  if (r.size() < kEmbeddingHeaderBytes) {
    throw DataError(r.origin() + ": file shorter than the " +
                    std::to_string(kEmbeddingHeaderBytes) + "-byte header");
  }
  char magic[4];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw DataError(r.origin() + ": not an embedding file (bad magic)");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kEmbeddingFileVersion) {
    throw DataError(r.origin() + ": unsupported embedding file version " + std::to_string(version));
  }
  const auto rows = r.get<std::uint64_t>();
  const auto cols = r.get<std::uint64_t>();
  const auto flag = r.get<std::uint8_t>();
  if (rows == 0 || cols == 0) throw DataError(r.origin() + ": zero rows or columns");
  if (flag > 1) throw DataError(r.origin() + ": invalid label flag " + std::to_string(flag));

  std::uint64_t cells = 0;
  std::uint64_t payload = 0;
  const std::uint64_t max_index = static_cast<std::uint64_t>(std::numeric_limits<Index>::max());
  if (__builtin_mul_overflow(rows, cols, &cells) || __builtin_mul_overflow(cells, 4, &payload) ||
      rows > max_index || cols > max_index) {
    throw DataError(r.origin() + ": dimension overflow (" + std::to_string(rows) + " x " +
                    std::to_string(cols) + ")");
  }
  const std::uint64_t label_bytes = flag ? rows : 0;
  const std::uint64_t expected = label_bytes + payload;
  if (r.remaining() != expected) {
    throw DataError(r.origin() + ": payload length mismatch: expected " + std::to_string(expected) +
                    " bytes after header, found " + std::to_string(r.remaining()));
  }

  Embeddings out;
  if (flag) {
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(rows));
    r.get_bytes(labels.data(), labels.size());
    out.labels = std::move(labels);
  }
  out.vectors.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < out.vectors.rows(); ++i) {
    for (Index j = 0; j < out.vectors.cols(); ++j) {
      out.vectors(i, j) = static_cast<double>(r.get<float>());
    }
  }
  require_finite(out.vectors, r.origin().c_str());
  return out;
}

}  // namespace driftlab
