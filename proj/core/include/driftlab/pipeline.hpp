#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "driftlab/reduce.hpp"
#include "driftlab/vectorize.hpp"

namespace driftlab {

enum class PipelineKind : std::uint32_t {
  kPca = 1,       // dense embeddings -> PCA
  kTfidfLsa = 2,  // raw text -> TF-IDF -> LSA
  kIdentity = 3,  // dense embeddings passed through unchanged
};

std::string_view to_string(PipelineKind kind);

struct TfidfLsaOptions {
  std::size_t max_features = kDefaultMaxFeatures;
  Index components = kDefaultLsaComponents;
};

/// Immutable fitted reference state. Everything a transform needs was
/// computed from the reference sample; current samples are never inspected
/// at fit time.
class FittedPipeline {
 public:
  static FittedPipeline fit_tfidf_lsa(std::span<const std::string> docs,
                                      const TfidfLsaOptions& options, std::uint64_t seed);
  static FittedPipeline fit_pca(const Matrix& reference, Index components, std::uint64_t seed);
  static FittedPipeline identity(Index width);

  /// Assembles a pipeline from already fitted parts (used by model loading).
  static FittedPipeline from_parts(Vocabulary vocabulary, LsaModel lsa);
  static FittedPipeline from_parts(PcaModel pca);

  PipelineKind kind() const noexcept { return kind_; }
  bool accepts_documents() const noexcept { return kind_ == PipelineKind::kTfidfLsa; }

  /// Vocabulary size for tfidf-lsa, embedding width otherwise.
  Index input_width() const;
  Index output_width() const;
  Index effective_rank() const;

  Matrix transform(std::span<const std::string> docs) const;
  Matrix transform(const Matrix& vectors) const;

  const Vocabulary* vocabulary() const { return vocabulary_ ? &*vocabulary_ : nullptr; }
  const LsaModel* lsa() const { return lsa_ ? &*lsa_ : nullptr; }
  const PcaModel* pca() const { return pca_ ? &*pca_ : nullptr; }

 private:
  FittedPipeline() = default;

  PipelineKind kind_ = PipelineKind::kIdentity;
  Index identity_width_ = 0;
  std::optional<Vocabulary> vocabulary_;
  std::optional<LsaModel> lsa_;
  std::optional<PcaModel> pca_;
};

/// Binary model file: "DLPM", u32 version, u32 kind, u64 d, u64 k,
/// u64 effective rank, then little-endian f64 arrays (and for tfidf-lsa the
/// vocabulary block). See README for the full layout.
inline constexpr std::uint32_t kModelFileVersion = 1;

void save_pipeline(const FittedPipeline& pipeline, const std::filesystem::path& path);
FittedPipeline load_pipeline(const std::filesystem::path& path);

}  // namespace driftlab
