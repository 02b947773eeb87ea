#include "subasis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace qpure {

GeneratorBasis::GeneratorBasis(std::size_t d) : dim_(d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "SU(d) basis needs d >= 2, got " + std::to_string(d));
  const auto n = static_cast<Eigen::Index>(d);
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  const Complex i_unit{0.0, 1.0};

  elements_.push_back(ComplexMatrix::Identity(n, n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = s(k, j) = scale;
      elements_.push_back(std::move(s));
    }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = -i_unit * scale;
      s(k, j) = i_unit * scale;
      elements_.push_back(std::move(s));
    }
  for (Eigen::Index l = 1; l < n; ++l) {
    const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1))) * scale;
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < l; ++j) s(j, j) = norm;
    s(l, l) = -static_cast<double>(l) * norm;
    elements_.push_back(std::move(s));
  }

  for (const auto& s : elements_) {
    std::vector<Entry> nz;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        if (s(r, c) != Complex{0.0, 0.0})
          nz.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), s(r, c)});
    entries_.push_back(std::move(nz));
  }
}

std::shared_ptr<const GeneratorBasis> generators(std::size_t d) {
  static std::shared_mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GeneratorBasis>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  auto basis = std::make_shared<const GeneratorBasis>(d);
  std::unique_lock lock(mutex);
  return cache.emplace(d, std::move(basis)).first->second;
}

double casimir_check(std::size_t d) {
  const auto basis = generators(d);
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 1; a < basis->size(); ++a) sum += (*basis)[a] * (*basis)[a];
  sum -= static_cast<double>(d * d - 1) * ComplexMatrix::Identity(n, n);
  return sum.cwiseAbs().maxCoeff();
}

}  // namespace qpure
