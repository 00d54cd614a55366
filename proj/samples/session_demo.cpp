// Solves {x^2 + y^2 - z^2, xy} in P^2 from the total-degree start system
// (X_1^2 - X_0^2, X_2^2 - X_0^2) with (X_0, X_1, X_2) = (z, x, y) and gamma = 1,
// then prints each root in (x, y, z) order with its step count.

#include <complex>
#include <cstdio>

#include "certhom/certhom.hpp"

int main() {
  using namespace certhom;

  PolySystem h{DegreeVector{2, 2}};
  h.coeff(0, {0, 2, 0}) = 1.0;
  h.coeff(0, {0, 0, 2}) = 1.0;
  h.coeff(0, {2, 0, 0}) = -1.0;
  h.coeff(1, {0, 1, 1}) = 1.0;

  const SphereSystem f = normalize_to_sphere(h);
  const StartSet start = total_degree_start(f.degrees(), Complex(1.0));
  const AllRootsResult all = solve_all_total_degree(f, start);

  for (const PathSolution& p : all.paths) {
    CVector z = p.root.coords();
    // Rotate the representative so its largest coordinate is real and positive.
    Eigen::Index big = 0;
    z.cwiseAbs().maxCoeff(&big);
    z *= std::polar(1.0, -std::arg(z(big)));
    std::printf("path %zu: %-8s steps %4zu  certified %d  (x, y, z) = (%+.4f%+.4fi, %+.4f%+.4fi, %+.4f%+.4fi)\n",
                p.start_index, to_string(p.track.status).c_str(), p.track.num_steps,
                p.ok() && p.certificate.certified ? 1 : 0, z(1).real(), z(1).imag(), z(2).real(), z(2).imag(),
                z(0).real(), z(0).imag());
  }
  std::printf("complete %d, distinct %d\n", all.complete ? 1 : 0, all.distinct ? 1 : 0);
  return all.complete ? 0 : 1;
}
