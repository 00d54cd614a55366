#pragma once

// Dense complex polynomial systems: degree bookkeeping, the graded monomial
// basis, evaluation, Jacobians and (de)homogenization.
//
// Every equation of degree d_i is stored as a dense coefficient vector over
// the monomials X_0^a_0 ... X_n^a_n with a_0 + ... + a_n = d_i, listed in
// descending lexicographic order of (a_0, ..., a_n); X_0^d_i comes first and
// X_n^d_i last. Affine systems reuse exactly the same storage with X_0 as the
// implicit homogenizing variable, so (de)homogenization is a relabeling.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "certhom/types.hpp"

namespace certhom {

/// Exact binomial coefficient; throws on uint64 overflow.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // result * num / i is exact at every step; guard the multiplication.
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

class DegreeVector {
 public:
  DegreeVector() = default;

  explicit DegreeVector(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw DimensionError("degree vector must have at least one entry");
    for (int d : degrees_) {
      if (d < 1) throw DimensionError("every degree must be >= 1");
    }
  }

  DegreeVector(std::initializer_list<int> degrees) : DegreeVector(std::vector<int>(degrees)) {}

  int num_equations() const { return static_cast<int>(degrees_.size()); }
  int num_variables() const { return num_equations() + 1; }
  int operator[](int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const { return degrees_; }

  /// d = max d_i.
  int max_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }

  /// D = d_1 ... d_n, the number of projective zeros of a generic system.
  std::uint64_t bezout_number() const {
    std::uint64_t product = 1;
    for (int d : degrees_) {
      if (product > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d)) {
        throw std::overflow_error("Bezout number overflows 64 bits");
      }
      product *= static_cast<std::uint64_t>(d);
    }
    return product;
  }

  /// N + 1 = sum_i C(n + d_i, d_i).
  std::uint64_t space_dimension() const {
    const int n = num_equations();
    std::uint64_t total = 0;
    for (int d : degrees_) {
      const std::uint64_t term = binomial(n + d, d);
      if (total > std::numeric_limits<std::uint64_t>::max() - term) {
        throw std::overflow_error("space dimension overflows 64 bits");
      }
      total += term;
    }
    return total;
  }

  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;

 private:
  std::vector<int> degrees_;
};

inline std::uint64_t space_dimension(const DegreeVector& degrees) { return degrees.space_dimension(); }

/// The monomials of one fixed degree in a fixed number of variables, with the
/// index <-> exponent bijection and the cached multinomial coefficients that
/// the Bombieri-Weyl product needs.
class MonomialBasis {
 public:
  MonomialBasis(int num_vars, int degree) : num_vars_(num_vars), degree_(degree) {
    if (num_vars < 1 || degree < 0) throw DimensionError("invalid monomial basis shape");
    const std::size_t count = count_monomials(num_vars, degree);
    exponents_.reserve(count * static_cast<std::size_t>(num_vars));
    std::vector<int> alpha(static_cast<std::size_t>(num_vars), 0);
    enumerate(0, degree, alpha);
    multinomials_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      multinomials_.push_back(static_cast<double>(multinomial_exact(exponents(k))));
    }
  }

  /// Shared instance for (num_vars, degree); bases are immutable after
  /// construction, so the cache only guards insertion.
  static std::shared_ptr<const MonomialBasis> get(int num_vars, int degree) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{num_vars, degree}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(num_vars, degree);
    return slot;
  }

  static std::size_t count_monomials(int num_vars, int degree) {
    if (degree < 0) return 0;
    return static_cast<std::size_t>(binomial(degree + num_vars - 1, num_vars - 1));
  }

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return multinomials_.size(); }

  std::span<const int> exponents(std::size_t index) const {
    return {exponents_.data() + index * static_cast<std::size_t>(num_vars_),
            static_cast<std::size_t>(num_vars_)};
  }

  /// Rank of an exponent tuple in descending lexicographic order.
  std::size_t index_of(std::span<const int> alpha) const {
    if (alpha.size() != static_cast<std::size_t>(num_vars_)) {
      throw DimensionError("exponent tuple has wrong length");
    }
    int remaining = degree_;
    for (int a : alpha) {
      if (a < 0) throw DimensionError("negative exponent");
      remaining -= a;
    }
    if (remaining != 0) throw DimensionError("exponent tuple has wrong total degree");

    std::size_t rank = 0;
    remaining = degree_;
    for (int j = 0; j + 1 < num_vars_; ++j) {
      const int aj = alpha[static_cast<std::size_t>(j)];
      // Tuples with a larger j-th exponent (same prefix) come first.
      for (int a = remaining; a > aj; --a) rank += count_monomials(num_vars_ - j - 1, remaining - a);
      remaining -= aj;
    }
    return rank;
  }

  /// deg! / (a_0! ... a_n!) for the monomial at `index`.
  double multinomial(std::size_t index) const { return multinomials_[index]; }

 private:
  void enumerate(int var, int remaining, std::vector<int>& alpha) {
    if (var == num_vars_ - 1) {
      alpha[static_cast<std::size_t>(var)] = remaining;
      exponents_.insert(exponents_.end(), alpha.begin(), alpha.end());
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      alpha[static_cast<std::size_t>(var)] = a;
      enumerate(var + 1, remaining - a, alpha);
    }
  }

  static std::uint64_t multinomial_exact(std::span<const int> alpha) {
    int remaining = std::accumulate(alpha.begin(), alpha.end(), 0);
    std::uint64_t result = 1;
    for (int a : alpha) {
      const std::uint64_t factor = binomial(remaining, a);
      if (factor != 0 && result > std::numeric_limits<std::uint64_t>::max() / factor) {
        throw std::overflow_error("multinomial coefficient overflows 64 bits");
      }
      result *= factor;
      remaining -= a;
    }
    return result;
  }

  int num_vars_;
  int degree_;
  std::vector<int> exponents_;
  std::vector<double> multinomials_;
};

/// A point of P(C^{n+1}) held by its unit-norm representative.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;

  explicit ProjectivePoint(CVector coords) : coords_(std::move(coords)) {
    const double norm = coords_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DimensionError("projective point needs a finite nonzero representative");
    }
    coords_ /= norm;
  }

  static ProjectivePoint basis_vector(Eigen::Index size, Eigen::Index k) {
    CVector e = CVector::Zero(size);
    e(k) = 1.0;
    return ProjectivePoint(std::move(e));
  }

  const CVector& coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }
  Complex operator[](Eigen::Index i) const { return coords_(i); }

 private:
  CVector coords_;
};

struct HomogeneousTag {};
struct AffineTag {};

/// Dense polynomial system over the graded monomial basis. PolySystem and
/// AffineSystem share the layout; only the interpretation of X_0 differs.
template <class Tag>
class DenseSystem {
 public:
  DenseSystem() = default;

  /// The zero system of the given degrees.
  explicit DenseSystem(DegreeVector degrees) : degrees_(std::move(degrees)) {
    const int vars = degrees_.num_variables();
    for (int i = 0; i < degrees_.num_equations(); ++i) {
      bases_.push_back(MonomialBasis::get(vars, degrees_[i]));
      coeffs_.push_back(CVector::Zero(static_cast<Eigen::Index>(bases_.back()->size())));
    }
  }

  DenseSystem(DegreeVector degrees, std::vector<CVector> coeffs) : DenseSystem(std::move(degrees)) {
    if (coeffs.size() != coeffs_.size()) throw DimensionError("one coefficient vector per equation expected");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].size() != coeffs_[i].size()) {
        throw DimensionError("coefficient vector length must be C(n + d_i, d_i)");
      }
      coeffs_[i] = std::move(coeffs[i]);
    }
  }

  const DegreeVector& degrees() const { return degrees_; }
  int num_equations() const { return degrees_.num_equations(); }
  /// Variables of the homogeneous representation (n + 1).
  int num_variables() const { return degrees_.num_variables(); }

  const MonomialBasis& basis(int i) const { return *bases_[static_cast<std::size_t>(i)]; }
  const CVector& coeffs(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  CVector& coeffs(int i) { return coeffs_[static_cast<std::size_t>(i)]; }

  /// Coefficient of a monomial; `alpha` has n + 1 entries for homogeneous
  /// systems and n entries (X_1..X_n) for affine ones.
  Complex& coeff(int i, std::span<const int> alpha) { return coeffs(i)(index_of(i, alpha)); }
  Complex coeff(int i, std::span<const int> alpha) const { return coeffs(i)(index_of(i, alpha)); }
  Complex& coeff(int i, std::initializer_list<int> alpha) {
    return coeff(i, std::span<const int>(alpha.begin(), alpha.size()));
  }
  Complex coeff(int i, std::initializer_list<int> alpha) const {
    return coeff(i, std::span<const int>(alpha.begin(), alpha.size()));
  }

  std::size_t index_of(int i, std::span<const int> alpha) const {
    if constexpr (std::is_same_v<Tag, AffineTag>) {
      if (alpha.size() != static_cast<std::size_t>(num_equations())) {
        throw DimensionError("affine exponent tuple must have n entries");
      }
      const int total = std::accumulate(alpha.begin(), alpha.end(), 0);
      if (total > degrees_[i]) throw DimensionError("affine monomial exceeds the equation degree");
      std::vector<int> full;
      full.reserve(alpha.size() + 1);
      full.push_back(degrees_[i] - total);
      full.insert(full.end(), alpha.begin(), alpha.end());
      return basis(i).index_of(full);
    } else {
      return basis(i).index_of(alpha);
    }
  }

  DenseSystem& operator+=(const DenseSystem& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  DenseSystem& operator-=(const DenseSystem& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  DenseSystem& operator*=(Complex scale) {
    for (auto& c : coeffs_) c *= scale;
    return *this;
  }

  friend DenseSystem operator+(DenseSystem a, const DenseSystem& b) { return a += b; }
  friend DenseSystem operator-(DenseSystem a, const DenseSystem& b) { return a -= b; }
  friend DenseSystem operator*(Complex s, DenseSystem a) { return a *= s; }
  friend DenseSystem operator*(DenseSystem a, Complex s) { return a *= s; }

  void require_same_shape(const DenseSystem& other) const {
    if (!(degrees_ == other.degrees_)) throw DimensionError("systems have different degree vectors");
  }

 private:
  DegreeVector degrees_;
  std::vector<std::shared_ptr<const MonomialBasis>> bases_;
  std::vector<CVector> coeffs_;
};

using PolySystem = DenseSystem<HomogeneousTag>;
using AffineSystem = DenseSystem<AffineTag>;

namespace detail {

/// powers[j][k] = z_j^k for k = 0..max_degree.
inline std::vector<std::vector<Complex>> power_table(const CVector& z, int max_degree) {
  std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(z.size()));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    auto& row = powers[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(max_degree) + 1);
    row[0] = 1.0;
    for (int k = 1; k <= max_degree; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k) - 1] * z(j);
  }
  return powers;
}

template <class Tag>
void require_point_size(const DenseSystem<Tag>& h, const CVector& z) {
  if (z.size() != h.num_variables()) throw DimensionError("point has wrong number of coordinates");
}

}  // namespace detail

/// (h_1(z), ..., h_n(z)) for an arbitrary (not necessarily unit) representative.
inline CVector evaluate(const PolySystem& h, const CVector& z) {
  detail::require_point_size(h, z);
  const auto powers = detail::power_table(z, h.degrees().max_degree());
  const int vars = h.num_variables();
  CVector out(h.num_equations());
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    const CVector& c = h.coeffs(i);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex ck = c(static_cast<Eigen::Index>(k));
      if (ck == Complex(0.0)) continue;
      const auto alpha = basis.exponents(k);
      Complex term = ck;
      for (int j = 0; j < vars; ++j) term *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(j)])];
      sum += term;
    }
    out(i) = sum;
  }
  return out;
}

inline CVector evaluate(const PolySystem& h, const ProjectivePoint& z) { return evaluate(h, z.coords()); }

/// n x (n+1) matrix of partial derivatives dh_i/dX_j at z.
inline CMatrix jacobian(const PolySystem& h, const CVector& z) {
  detail::require_point_size(h, z);
  const auto powers = detail::power_table(z, h.degrees().max_degree());
  const int vars = h.num_variables();
  CMatrix jac = CMatrix::Zero(h.num_equations(), vars);
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    const CVector& c = h.coeffs(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex ck = c(static_cast<Eigen::Index>(k));
      if (ck == Complex(0.0)) continue;
      const auto alpha = basis.exponents(k);
      for (int j = 0; j < vars; ++j) {
        const int aj = alpha[static_cast<std::size_t>(j)];
        if (aj == 0) continue;
        Complex term = ck * static_cast<double>(aj) *
                       powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(aj - 1)];
        for (int m = 0; m < vars; ++m) {
          if (m != j) term *= powers[static_cast<std::size_t>(m)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(m)])];
        }
        jac(i, j) += term;
      }
    }
  }
  return jac;
}

inline CMatrix jacobian(const PolySystem& h, const ProjectivePoint& z) { return jacobian(h, z.coords()); }

inline PolySystem homogenize(const AffineSystem& f) {
  std::vector<CVector> coeffs;
  for (int i = 0; i < f.num_equations(); ++i) coeffs.push_back(f.coeffs(i));
  return PolySystem(f.degrees(), std::move(coeffs));
}

inline AffineSystem dehomogenize(const PolySystem& h) {
  std::vector<CVector> coeffs;
  for (int i = 0; i < h.num_equations(); ++i) coeffs.push_back(h.coeffs(i));
  return AffineSystem(h.degrees(), std::move(coeffs));
}

/// Largest total degree (in X_1..X_n) among nonzero terms of equation i;
/// -1 for the zero polynomial.
inline int actual_degree(const AffineSystem& f, int i) {
  int best = -1;
  const auto& basis = f.basis(i);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (f.coeffs(i)(static_cast<Eigen::Index>(k)) == Complex(0.0)) continue;
    best = std::max(best, f.degrees()[i] - basis.exponents(k)[0]);
  }
  return best;
}

inline CVector affine_lift(const CVector& x) {
  CVector z(x.size() + 1);
  z(0) = 1.0;
  z.tail(x.size()) = x;
  return z;
}

/// f(x) via the homogeneous representation at (1, x).
inline CVector evaluate(const AffineSystem& f, const CVector& x) {
  if (x.size() != f.num_equations()) throw DimensionError("affine point must have n coordinates");
  return evaluate(homogenize(f), affine_lift(x));
}

/// n x n affine Jacobian: the X_1..X_n columns of Dh(1, x).
inline CMatrix jacobian(const AffineSystem& f, const CVector& x) {
  if (x.size() != f.num_equations()) throw DimensionError("affine point must have n coordinates");
  return jacobian(homogenize(f), affine_lift(x)).rightCols(f.num_equations());
}

}  // namespace certhom
