#include "smm/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smm/errors.hpp"

namespace smm {

namespace {

using Index = Eigen::Index;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Rotates rows/columns p, q of `a` so that a(p, q) vanishes; accumulates into v.
//
// The 2x2 unitary is U = diag(1, conj(e)) * [[c, s], [-s, c]] where e is the phase
// of a(p, q): the diagonal phase makes the pivot block real symmetric, then a real
// rotation annihilates it.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex e = apq / r;

  const Complex u_qp = -s * std::conj(e);
  const Complex u_qq = c * std::conj(e);
  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + u_qp * akq;
    a(k, q) = s * akp + u_qq * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(u_qp) * aqk;
    a(q, k) = s * apk + std::conj(u_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;

  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + u_qp * vkq;
    v(k, q) = s * vkp + u_qq * vkq;
  }
}

// Largest-magnitude entry made real and nonnegative; first index wins ties.
void fix_phase(ComplexMatrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > best_abs) {
        best_abs = mag;
        best = i;
      }
    }
    if (best_abs <= 0.0) continue;
    const Complex phase = std::conj(vectors(best, j)) / best_abs;
    vectors.col(j) *= phase;
    vectors(best, j) = best_abs;
  }
}

EigenSolution sorted_solution(const RealVector& values, const ComplexMatrix& vectors) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return values(x) < values(y); });
  EigenSolution out;
  out.eigenvalues.resize(values.size());
  out.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (Index k = 0; k < values.size(); ++k) {
    out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  fix_phase(out.eigenvectors);
  return out;
}

struct JacobiResult {
  RealVector values;
  ComplexMatrix vectors;
};

JacobiResult jacobi(ComplexMatrix a, const JacobiOptions& options) {
  const Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > options.relative_tolerance * scale) {
    if (sweep == options.max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge in " +
                               std::to_string(options.max_sweeps) +
                               " sweeps; off-diagonal norm " + std::to_string(off),
                           off);
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Negligible pivot relative to both diagonal entries: drop it.
        const double g = 100.0 * r;
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + g == app && aqq + g == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }
  return {a.diagonal().real(), std::move(v)};
}

void check_hermitian(const ComplexMatrix& h) {
  // HermitianMatrix's constructor performs the validation.
  HermitianMatrix checked(h);
  (void)checked;
}

}  // namespace

EigenSolution eigh(const HermitianMatrix& h, const JacobiOptions& options) {
  auto [values, vectors] = jacobi(h.entries(), options);
  return sorted_solution(values, vectors);
}

EigenSolution eigh(const ComplexMatrix& h, const JacobiOptions& options) {
  check_hermitian(h);
  return eigh(HermitianMatrix(h), options);
}

SymmetrySectors detect_symmetry_sectors(const ComplexMatrix& h) {
  const Index n = h.rows();
  const double tol = 1e-14 * std::max(h.cwiseAbs().maxCoeff(), 1e-300);

  SymmetrySectors sectors;
  sectors.parity = true;
  for (Index i = 0; i < n && sectors.parity; ++i) {
    for (Index j = 0; j < n; ++j) {
      if ((i + j) % 2 == 1 && std::abs(h(i, j)) > tol) {
        sectors.parity = false;
        break;
      }
    }
  }

  auto reversal_holds = [&](int pattern) {
    auto sign = [&](Index i) { return pattern > 0 || i % 2 == 0 ? 1.0 : -1.0; };
    for (Index i = 0; i < n; ++i) {
      if (sign(i) != sign(n - 1 - i)) return false;
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Complex mirrored = sign(i) * sign(j) * h(n - 1 - i, n - 1 - j);
        if (std::abs(mirrored - h(i, j)) > tol) return false;
      }
    }
    return true;
  };
  for (int pattern : {+1, -1}) {
    if (reversal_holds(pattern)) {
      sectors.reflection = true;
      sectors.reflection_sign_pattern = pattern;
      break;
    }
  }

  // Candidate basis vectors tagged by (parity class, reflection eigenvalue).
  struct Tagged {
    int sector;
    Eigen::VectorXd vec;
  };
  std::vector<Tagged> tagged;
  auto parity_tag = [&](Index i) { return sectors.parity ? static_cast<int>(i % 2) : 0; };
  if (sectors.reflection) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto sign = [&](Index i) {
      return sectors.reflection_sign_pattern > 0 || i % 2 == 0 ? 1.0 : -1.0;
    };
    for (Index i = 0; i < n; ++i) {
      const Index mirror = n - 1 - i;
      if (i > mirror) break;
      if (i == mirror) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        tagged.push_back({2 * parity_tag(i) + (sign(i) > 0 ? 0 : 1), std::move(e)});
        continue;
      }
      for (int r : {+1, -1}) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = inv_sqrt2;
        e(mirror) = r * sign(i) * inv_sqrt2;
        tagged.push_back({2 * parity_tag(i) + (r > 0 ? 0 : 1), std::move(e)});
      }
    }
  } else {
    for (Index i = 0; i < n; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(i) = 1.0;
      tagged.push_back({2 * parity_tag(i), std::move(e)});
    }
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const Tagged& x, const Tagged& y) { return x.sector < y.sector; });

  sectors.basis.resize(n, n);
  int current = -1;
  for (std::size_t k = 0; k < tagged.size(); ++k) {
    sectors.basis.col(static_cast<Index>(k)) = tagged[k].vec;
    if (tagged[k].sector != current) {
      sectors.sector_sizes.push_back(0);
      current = tagged[k].sector;
    }
    ++sectors.sector_sizes.back();
  }
  return sectors;
}

EigenSolution eigh_symmetry_adapted(const HermitianMatrix& h, const JacobiOptions& options) {
  const SymmetrySectors sectors = detect_symmetry_sectors(h.entries());
  if (sectors.count() <= 1) {
    return eigh(h, options);
  }
  const Index n = static_cast<Index>(h.dim());
  const ComplexMatrix q = sectors.basis.cast<Complex>();
  const ComplexMatrix rotated = q.adjoint() * h.entries() * q;

  RealVector values(n);
  ComplexMatrix vectors = ComplexMatrix::Zero(n, n);
  Index offset = 0;
  for (std::size_t size : sectors.sector_sizes) {
    const Index m = static_cast<Index>(size);
    ComplexMatrix block = rotated.block(offset, offset, m, m);
    // Restore exact Hermiticity lost to rounding in the basis change.
    block = 0.5 * (block + block.adjoint()).eval();
    auto [block_values, block_vectors] = jacobi(block, options);
    values.segment(offset, m) = block_values;
    vectors.block(0, offset, n, m) = q.middleCols(offset, m) * block_vectors;
    offset += m;
  }
  return sorted_solution(values, vectors);
}

}  // namespace smm
