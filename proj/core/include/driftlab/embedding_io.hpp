#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "driftlab/matrix.hpp"

namespace driftlab {

/// Embedding exchange file (little-endian, no padding):
///
///   offset  size        field
///   0       4           magic "DLEM"
///   4       4           u32 version (1)
///   8       8           u64 rows (> 0)
///   16      8           u64 cols (> 0)
///   24      1           u8 label flag (0 or 1)
///   25      rows        u8 per-row labels, only when the flag is 1
///   ...     rows*cols*4 f32 payload, row-major
inline constexpr std::uint32_t kEmbeddingFileVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 25;

struct Embeddings {
  Matrix vectors;
  std::optional<std::vector<std::uint8_t>> labels;
};

/// Values are narrowed to 32-bit floats. Throws ParameterError for an empty
/// matrix or a label count that differs from the row count, DataError for
/// values that are not finite as f32 or an unwritable path.
void write_embeddings(const Matrix& vectors, const std::optional<std::vector<std::uint8_t>>& labels,
                      const std::filesystem::path& path);

Embeddings read_embeddings(const std::filesystem::path& path);

}  // namespace driftlab
