#include "driftlab/vectorize.hpp"

#include <clocale>
#include <cmath>
#include <cwctype>
#include <locale.h>
#include <wctype.h>

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "driftlab/error.hpp"

namespace driftlab {

namespace {

// Returns the decoded code point and advances `pos`; yields U+FFFD and skips a
// single byte on malformed input.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + static_cast<std::size_t>(extra) >= s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto byte = static_cast<unsigned char>(s[pos + static_cast<std::size_t>(i)]);
    if ((byte & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (byte & 0x3F);
  }
  pos += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode classification through glibc's C.UTF-8 tables; ASCII-only fallback
// when that locale is not installed.
class CharClassifier {
 public:
  CharClassifier() : locale_(newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0))) {}
  ~CharClassifier() {
    if (locale_ != static_cast<locale_t>(0)) freelocale(locale_);
  }
  CharClassifier(const CharClassifier&) = delete;
  CharClassifier& operator=(const CharClassifier&) = delete;

  bool is_word(char32_t cp) const {
    if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
    if (cp == 0xFFFD || locale_ == static_cast<locale_t>(0)) return false;
    return iswalnum_l(static_cast<wint_t>(cp), locale_) != 0;
  }

  char32_t lower(char32_t cp) const {
    if (cp < 0x80) return static_cast<char32_t>(std::tolower(static_cast<int>(cp)));
    if (locale_ == static_cast<locale_t>(0)) return cp;
    return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), locale_));
  }

 private:
  locale_t locale_;
};

const CharClassifier& classifier() {
  static const CharClassifier instance;
  return instance;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const auto& cls = classifier();
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode_utf8(text, pos);
    if (cls.is_word(cp)) {
      encode_utf8(cls.lower(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequency,
                       std::size_t n_docs_fitted)
    : terms_(std::move(terms)), df_(std::move(document_frequency)), n_docs_fitted_(n_docs_fitted) {
  if (terms_.size() != df_.size()) {
    throw ParameterError("Vocabulary: terms and document frequencies differ in length");
  }
  idf_.reserve(terms_.size());
  index_.reserve(terms_.size());
  const double numerator = 1.0 + static_cast<double>(n_docs_fitted_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (df_[i] < 1 || df_[i] > n_docs_fitted_) {
      throw DataError("Vocabulary: document frequency of '" + terms_[i] + "' out of range");
    }
    if (!index_.emplace(terms_[i], static_cast<Index>(i)).second) {
      throw DataError("Vocabulary: duplicate term '" + terms_[i] + "'");
    }
    idf_.push_back(std::log(numerator / (1.0 + static_cast<double>(df_[i]))) + 1.0);
  }
}

Index Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(term);
  return it == index_.end() ? -1 : it->second;
}

Vocabulary fit_vocabulary(std::span<const std::string> corpus, std::size_t max_features) {
  if (corpus.empty()) throw ParameterError("fit_vocabulary: empty corpus");
  if (max_features == 0) throw ParameterError("fit_vocabulary: max_features must be positive");

  std::unordered_map<std::string, std::size_t> df;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus) {
    seen.clear();
    for (auto& token : tokenize(doc)) {
      if (seen.insert(token).second) ++df[token];
    }
  }

  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  const auto by_frequency = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (ranked.size() > max_features) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(max_features),
                      ranked.end(), by_frequency);
    ranked.resize(max_features);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::string> terms;
  std::vector<std::size_t> frequencies;
  terms.reserve(ranked.size());
  frequencies.reserve(ranked.size());
  for (auto& [term, count] : ranked) {
    terms.push_back(std::move(term));
    frequencies.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(frequencies), corpus.size());
}

SparseMatrix transform_tfidf(std::span<const std::string> docs, const Vocabulary& vocab) {
  SparseMatrix out(0, static_cast<Index>(vocab.size()));
  std::map<Index, double> counts;
  std::vector<SparseMatrix::Entry> row;
  for (const auto& doc : docs) {
    counts.clear();
    for (const auto& token : tokenize(doc)) {
      const Index idx = vocab.index_of(token);
      if (idx >= 0) counts[idx] += 1.0;
    }
    row.clear();
    double norm_sq = 0.0;
    for (const auto& [idx, count] : counts) {
      const double weight = count * vocab.idf()[static_cast<std::size_t>(idx)];
      row.emplace_back(idx, weight);
      norm_sq += weight * weight;
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& entry : row) entry.second *= inv;
    }
    out.push_row(row);
  }
  return out;
}

}  // namespace driftlab
