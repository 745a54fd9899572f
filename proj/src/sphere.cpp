#include "atlas/sphere.hpp"

#include <cmath>

#include "atlas/simplicial.hpp"

namespace atlas {

SphereReport sphere_report(const WeightTruncation& trunc) {
  SphereReport rep;
  auto gens = make_generators({{"x", 1}});
  ChenDifferential delta{Derivation(gens, -1, trunc)};
  DerivationSpace sp(gens, trunc);
  for (int n = -1; n <= 2 * trunc.N; ++n)
    for (int i = 0; i <= trunc.N - 1; ++i)
      for (size_t k = 0; k < sp.block_dim(n, i); ++k) {
        rep.der_basis.push_back(sp.basis_element(n, i, k));
        ++rep.der_dim;
      }
  auto h1 = derivation_homology(delta, 1, std::nullopt, trunc);
  rep.h1_dim = h1.total_dim;
  for (const auto& blk : h1.blocks)
    for (const auto& r : blk.representatives) rep.h1_reps.push_back(r);
  rep.h2_dim = derivation_homology(delta, 2, std::nullopt, trunc).total_dim;

  // obstruction pipeline on the minimal simplicial 2-sphere: one value,
  // the coordinate of [x,x] d/dx in the degree-1 homology basis
  FiniteSimplicialSet k = sphere_model();
  LocalSystem m = trivial_system(k, rep.h1_dim);
  Cochain c = zero_cochain(k, m, 2);
  c.values[0] = Vec(rep.h1_dim, Scalar(0));
  if (!rep.h1_dim) throw InvalidInput("degenerate sphere model: no degree-1 homology");
  c.values[0][0] = Scalar(1);
  rep.obstruction = class_reduce(c, m, k);
  MultiForm nu{1, {{Vec(rep.h1_dim, Scalar(0))}}};
  nu.terms[0][0][0] = Scalar(1);  // dual basis of the representative
  rep.characteristic = cup_characteristic(nu, c, m, k).cls.class_coords;
  return rep;
}

namespace {

double integrand(double x, double scale) {
  double u = 1.0 + x;
  return scale * 2.0 / (u * u * u);
}

/// Adaptive Simpson on [a,b] for the compactified integrand.
double adaptive_simpson(double (*f)(double, double), double scale, double a, double b,
                        double fa, double fm, double fb, double whole, double eps,
                        int depth, bool& converged) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm, scale), frm = f(rm, scale);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) {
    converged = false;
    return left + right;
  }
  if (std::fabs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, scale, a, m, fa, flm, fm, left, eps / 2.0, depth - 1,
                          converged) +
         adaptive_simpson(f, scale, m, b, fm, frm, fb, right, eps / 2.0, depth - 1,
                          converged);
}

/// Integrand after the substitution x = t/(1-t) mapping [0,1) to [0,inf).
double compactified(double t, double scale) {
  double om = 1.0 - t;
  return integrand(t / om, scale) / (om * om);
}

}  // namespace

IntegralReport sphere_integral_check(double tolerance, double scale) {
  if (!(tolerance > 0)) throw InvalidInput("tolerance must be positive");
  IntegralReport rep;
  rep.expected = scale;
  rep.closed_form = scale;  // 2 * [-1/(2(1+x)^2)] from 0 to inf = 1, times scale
  rep.converged = true;
  double a = 0.0, b = 1.0 - 1e-12;
  double fa = compactified(a, scale), fb = compactified(b, scale);
  double m = 0.5 * (a + b), fm = compactified(m, scale);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double eps = tolerance / 16.0;
  rep.value = adaptive_simpson(compactified, scale, a, b, fa, fm, fb, whole, eps, 48,
                               rep.converged);
  rep.error_bound = eps * 16.0;
  rep.ok = rep.converged && std::fabs(rep.value - rep.expected) <= tolerance;
  return rep;
}

}  // namespace atlas
