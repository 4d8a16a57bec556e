#include "driftlab/pipeline.hpp"

#include <string>

#include "driftlab/error.hpp"

namespace driftlab {

std::string_view to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::kPca:
      return "pca";
    case PipelineKind::kTfidfLsa:
      return "tfidf-lsa";
    case PipelineKind::kIdentity:
      return "identity";
  }
  return "unknown";
}

FittedPipeline FittedPipeline::fit_tfidf_lsa(std::span<const std::string> docs,
                                             const TfidfLsaOptions& options, std::uint64_t seed) {
  Vocabulary vocabulary = fit_vocabulary(docs, options.max_features);
  const SparseMatrix tfidf = transform_tfidf(docs, vocabulary);
  LsaModel lsa = fit_lsa(tfidf, options.components, seed);
  return from_parts(std::move(vocabulary), std::move(lsa));
}

FittedPipeline FittedPipeline::fit_pca(const Matrix& reference, Index components,
                                       std::uint64_t seed) {
  return from_parts(driftlab::fit_pca(reference, components, seed));
}

FittedPipeline FittedPipeline::identity(Index width) {
  if (width < 1) throw ParameterError("identity pipeline: width must be positive");
  FittedPipeline p;
  p.kind_ = PipelineKind::kIdentity;
  p.identity_width_ = width;
  return p;
}

FittedPipeline FittedPipeline::from_parts(Vocabulary vocabulary, LsaModel lsa) {
  if (static_cast<Index>(vocabulary.size()) != lsa.input_width()) {
    throw DataError("tfidf-lsa pipeline: vocabulary size " + std::to_string(vocabulary.size()) +
                    " does not match LSA input width " + std::to_string(lsa.input_width()));
  }
  FittedPipeline p;
  p.kind_ = PipelineKind::kTfidfLsa;
  p.vocabulary_ = std::move(vocabulary);
  p.lsa_ = std::move(lsa);
  return p;
}

FittedPipeline FittedPipeline::from_parts(PcaModel pca) {
  FittedPipeline p;
  p.kind_ = PipelineKind::kPca;
  p.pca_ = std::move(pca);
  return p;
}

Index FittedPipeline::input_width() const {
  switch (kind_) {
    case PipelineKind::kTfidfLsa:
      return lsa_->input_width();
    case PipelineKind::kPca:
      return pca_->input_width();
    case PipelineKind::kIdentity:
      break;
  }
  return identity_width_;
}

Index FittedPipeline::output_width() const {
  switch (kind_) {
    case PipelineKind::kTfidfLsa:
      return lsa_->k();
    case PipelineKind::kPca:
      return pca_->k();
    case PipelineKind::kIdentity:
      break;
  }
  return identity_width_;
}

Index FittedPipeline::effective_rank() const {
  switch (kind_) {
    case PipelineKind::kTfidfLsa:
      return lsa_->effective_rank;
    case PipelineKind::kPca:
      return pca_->effective_rank;
    case PipelineKind::kIdentity:
      break;
  }
  return identity_width_;
}

Matrix FittedPipeline::transform(std::span<const std::string> docs) const {
  if (!accepts_documents()) {
    throw ParameterError(std::string(to_string(kind_)) + " pipeline expects embedding vectors, not text");
  }
  return transform_lsa(transform_tfidf(docs, *vocabulary_), *lsa_);
}

Matrix FittedPipeline::transform(const Matrix& vectors) const {
  switch (kind_) {
    case PipelineKind::kTfidfLsa:
      throw ParameterError("tfidf-lsa pipeline expects documents, not embedding vectors");
    case PipelineKind::kPca:
      return transform_pca(vectors, *pca_);
    case PipelineKind::kIdentity:
      break;
  }
  if (vectors.cols() != identity_width_) {
    throw ParameterError("identity pipeline: input has " + std::to_string(vectors.cols()) +
                         " columns, expected " + std::to_string(identity_width_));
  }
  return vectors;
}

}  // namespace driftlab
