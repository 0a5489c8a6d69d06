#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ambrose/bundle.hpp"

namespace ambrose {

using Params = std::map<std::string, double>;

/// A closed-form example. `canonical` is a connection with parallel torsion and
/// curvature (the Levi-Civita connection on the symmetric examples). `a` is the
/// connection form paired with it in triple checks and the total space, `a0`
/// the reference form of the triple. All manifold axes live in `chart`'s
/// working frame.
struct Fixture {
  Fixture(std::string name, Chart chart) : name(std::move(name)), chart(std::move(chart)) {}

  std::string name;
  Params params;
  /// Subset of metric, connection-form, canonical-connection, triple, total-space.
  std::set<std::string> provides;
  Chart chart;
  MetricField g;
  LinearConnection levi_civita;
  LinearConnection canonical;
  LieAlgebra algebra;
  Mat inner;
  ConnectionForm a;
  ConnectionForm a0;
  /// Whether (nabla x nabla^a)(a - a0) = 0 holds for the canonical connection.
  bool alpha_parallel = true;
  bool homogeneous = true;

  bool has(const std::string& tag) const { return provides.count(tag) > 0; }
  int dim() const { return chart.dim(); }
};

/// Catalog (default parameters in brackets):
///   euclidean(n [2])             [-1, 1]^n, flat
///   flat_torus_chart             [0, 2 pi]^2, flat
///   round_sphere2(radius [1])    (theta, phi), sectional curvature 1 / radius^2
///   hyperbolic_plane             upper half plane, curvature -1
///   round_sphere3                SU(2) in Euler angles, left-invariant frame, curvature 1
///   berger_sphere(lambda [2])    frame metric diag(lambda^2, 1, 1), canonical connection w = 0
///   su2_canonical                bi-invariant SU(2), canonical connection w = 0, trivial su(2)
///                                bundle with a = 0 and a0(E_a) = -e_a
///   hopf_monopole(charge [1], bump [0])
///                                round S^2 with the u(1) monopole a_phi = (charge / 2)(1 - cos theta);
///                                a0 = a - bump * (gaussian form)
///   su2_monopole                 round S^2 with a = cos theta dphi E3 and the flat
///                                a0 = dtheta E2 + dphi (cos theta E3 - sin theta E1), E = e / 2
///   trivial_bundle_flat(algebra [1])
///                                euclidean(2) with a = a0 = 0 for u(1) (1), su(2) (2), so(3) (3)
Fixture instantiate(const std::string& name, const Params& params = {});

std::vector<std::string> fixture_catalog();

/// Levi-Civita coefficients of a constant frame metric G on a frame with
/// constant structure C^c_{ab}.
DenseTensor left_invariant_levi_civita(const Mat& g, const DenseTensor& c);

/// Left-invariant frame of SU(2) in the Euler chart q = exp(phi k) exp(theta j) exp(psi k),
/// coordinates (phi, theta, psi); [E_a, E_b] = 2 eps_abc E_c.
FrameField su2_euler_frame();

/// Left-invariant coframe W (W[:, mu] = Im(q^-1 d_mu q)).
Mat su2_euler_coframe(const Vec& x);

/// Default section of a fixture: (R^g, F^{a0}).
SectionSpec default_section(const Fixture& f);

/// so(n) + k with the adjoint action on lie axes.
TensorRep fixture_rep(const Fixture& f);

}  // namespace ambrose
