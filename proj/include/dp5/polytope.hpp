#pragma once

// Exact volumes of bounded rational polytopes {x : a . x <= b}.

#include <gmpxx.h>

#include <vector>

namespace dp5 {

using RationalVector = std::vector<mpq_class>;

struct HalfSpace {
  RationalVector a;
  mpq_class b;
};

struct Polytope {
  int dim = 0;
  std::vector<HalfSpace> constraints;
};

/// Vertices by solving every dim-subset of tight constraints; sorted, unique.
std::vector<RationalVector> vertices(const Polytope& P);

/// Integrates the exact (dim-1)-volume of coordinate slices x_dim = t, which is
/// a polynomial of degree dim-1 between consecutive vertex coordinates.
mpq_class volume_by_slicing(const Polytope& P);

/// Pulling triangulation over the face lattice: cone from the first vertex over
/// each facet not containing it, recursively; sums |det| / dim!.
mpq_class volume_by_triangulation(const Polytope& P);

/// {x in R^4_{>=0} : 2x_i + 2x_j + 2x_k - x_l <= 1 for every l}.
Polytope v1_polytope();

}  // namespace dp5
