#include <cstring>
#include <limits>
#include <string>

#include "binary_io.hpp"
#include "driftlab/error.hpp"
#include "driftlab/pipeline.hpp"

namespace driftlab {

namespace {

constexpr char kMagic[4] = {'D', 'L', 'P', 'M'};
constexpr std::uint64_t kMaxDimension = std::uint64_t{1} << 32;

void put_matrix(detail::ByteWriter& w, const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) w.put<double>(m(r, c));
  }
}

void put_vector(detail::ByteWriter& w, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) w.put<double>(v(i));
}

Matrix get_matrix(detail::ByteReader& r, Index rows, Index cols) {
  r.require(static_cast<std::size_t>(rows * cols) * sizeof(double));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = r.get<double>();
  }
  require_finite(m, r.origin().c_str());
  return m;
}

Vector get_vector(detail::ByteReader& r, Index size) {
  r.require(static_cast<std::size_t>(size) * sizeof(double));
  Vector v(size);
  for (Index i = 0; i < size; ++i) v(i) = r.get<double>();
  if (!v.allFinite()) throw DataError(r.origin() + ": non-finite value in model");
  return v;
}

}  // namespace

void save_pipeline(const FittedPipeline& pipeline, const std::filesystem::path& path) {
  detail::ByteWriter w;
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put<std::uint32_t>(kModelFileVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(pipeline.kind()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(pipeline.input_width()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(pipeline.output_width()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(pipeline.effective_rank()));

  switch (pipeline.kind()) {
    case PipelineKind::kPca: {
      const PcaModel& pca = *pipeline.pca();
      put_vector(w, pca.means);
      put_matrix(w, pca.components);
      put_vector(w, pca.explained_variance);
      break;
    }
    case PipelineKind::kTfidfLsa: {
      const LsaModel& lsa = *pipeline.lsa();
      const Vocabulary& vocab = *pipeline.vocabulary();
      put_matrix(w, lsa.components);
      put_vector(w, lsa.singular_values);
      w.put<std::uint64_t>(vocab.n_docs_fitted());
      for (std::size_t i = 0; i < vocab.size(); ++i) {
        const std::string& term = vocab.terms()[i];
        w.put<std::uint32_t>(static_cast<std::uint32_t>(term.size()));
        w.put_bytes(term.data(), term.size());
        w.put<std::uint64_t>(vocab.document_frequency()[i]);
      }
      break;
    }
    case PipelineKind::kIdentity:
      break;
  }
  w.save(path);
}

FittedPipeline load_pipeline(const std::filesystem::path& path) {
  auto r = detail::ByteReader::open(path);
  char magic[4];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw DataError(r.origin() + ": not a model file (bad magic)");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kModelFileVersion) {
    throw DataError(r.origin() + ": unsupported model file version " + std::to_string(version));
  }
  const auto kind = r.get<std::uint32_t>();
  const auto d64 = r.get<std::uint64_t>();
  const auto k64 = r.get<std::uint64_t>();
  const auto rank64 = r.get<std::uint64_t>();
  if (d64 == 0 || k64 == 0 || d64 > kMaxDimension || k64 > kMaxDimension || rank64 > k64) {
    throw DataError(r.origin() + ": implausible model dimensions");
  }
  const auto d = static_cast<Index>(d64);
  const auto k = static_cast<Index>(k64);

  auto finish = [&](FittedPipeline p) {
    if (r.remaining() != 0) {
      throw DataError(r.origin() + ": " + std::to_string(r.remaining()) + " trailing bytes");
    }
    return p;
  };

  switch (static_cast<PipelineKind>(kind)) {
    case PipelineKind::kPca: {
      PcaModel pca;
      pca.means = get_vector(r, d);
      pca.components = get_matrix(r, d, k);
      pca.explained_variance = get_vector(r, k);
      pca.effective_rank = static_cast<Index>(rank64);
      return finish(FittedPipeline::from_parts(std::move(pca)));
    }
    case PipelineKind::kTfidfLsa: {
      LsaModel lsa;
      lsa.components = get_matrix(r, d, k);
      lsa.singular_values = get_vector(r, k);
      lsa.effective_rank = static_cast<Index>(rank64);
      const auto n_docs = r.get<std::uint64_t>();
      std::vector<std::string> terms;
      std::vector<std::size_t> df;
      terms.reserve(static_cast<std::size_t>(d));
      df.reserve(static_cast<std::size_t>(d));
      for (Index i = 0; i < d; ++i) {
        const auto len = r.get<std::uint32_t>();
        std::string term(len, '\0');
        r.get_bytes(term.data(), len);
        terms.push_back(std::move(term));
        df.push_back(static_cast<std::size_t>(r.get<std::uint64_t>()));
      }
      Vocabulary vocab(std::move(terms), std::move(df), static_cast<std::size_t>(n_docs));
      return finish(FittedPipeline::from_parts(std::move(vocab), std::move(lsa)));
    }
    case PipelineKind::kIdentity:
      if (k != d) throw DataError(r.origin() + ": identity model with d != k");
      return finish(FittedPipeline::identity(d));
  }
  throw DataError(r.origin() + ": unknown model kind " + std::to_string(kind));
}

}  // namespace driftlab
