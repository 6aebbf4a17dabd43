#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <rotorchan/reshape.hpp>
#include <rotorchan/spectral.hpp>

using namespace rotorchan;

namespace {

// Conjugate-partner order inside an equal-modulus pair is backend dependent,
// so spectra are compared by nearest match, not by rank.
double nearest_gap(const std::vector<cxd>& reference, const cxd& v) {
  double best = 1e300;
  for (const cxd& r : reference) best = std::min(best, std::abs(v - r));
  return best;
}

}  // namespace

TEST_CASE("sorting orders by modulus and pairs conjugates") {
  SpectralDecomposition sd;
  sd.values = {cxd(0.45, 0.0), cxd(0.3, -0.4), cxd(1.0, 0.0), cxd(0.3, 0.4),
               cxd(-0.9, 0.0)};
  sort_and_pair(sd);

  REQUIRE(sd.values.size() == 5);
  CHECK(sd.values[0] == cxd(1.0, 0.0));
  CHECK(sd.values[1] == cxd(-0.9, 0.0));
  CHECK(sd.values[2] == cxd(0.3, 0.4));
  CHECK(sd.values[3] == cxd(0.3, -0.4));
  CHECK(sd.values[4] == cxd(0.45, 0.0));

  CHECK(sd.real_flag == std::vector<bool>{true, true, false, false, true});
  CHECK(sd.pair_index[2] == 3);
  CHECK(sd.pair_index[3] == 2);
  CHECK(sd.pair_index[0] == -1);
  CHECK(sd.pair_index[4] == -1);
}

TEST_CASE("dense spectrum returns usable left and right vectors") {
  Matrix m = build_channel_fast(6, 1.9, 0.8);
  SpectralDecomposition sd = full_spectrum(m, true);
  REQUIRE(sd.full);
  REQUIRE(sd.right.cols() == 36);
  REQUIRE(sd.left.cols() == 36);
  for (int i = 0; i < 36; ++i) {
    CHECK((m * sd.right.col(i) - sd.values[i] * sd.right.col(i)).norm() < 1e-11);
    CHECK((sd.left.col(i).adjoint() * m -
           sd.values[i] * sd.left.col(i).adjoint())
              .norm() < 1e-10);
  }
  for (size_t i = 1; i < sd.values.size(); ++i)
    CHECK(std::abs(sd.values[i]) <= std::abs(sd.values[i - 1]) + 1e-14);
}

TEST_CASE("restarted solver matches the dense spectrum") {
  KoopmanChannel k = build_koopman_channel(12, MapParams{2.0, 2.0, 0.5},
                                           Axis::R1);
  SpectralDecomposition full = full_spectrum(Matrix(k.matrix.cast<cxd>()), false);
  TopKOptions opt;
  opt.k = 8;
  opt.seed = 3;
  SpectralDecomposition tk = top_k_spectrum(make_op(k.matrix), opt);
  REQUIRE(int(tk.values.size()) >= 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(nearest_gap(full.values, tk.values[i]) < 1e-8);
    CHECK(std::abs(std::abs(tk.values[i]) - std::abs(full.values[i])) < 1e-8);
    CHECK(tk.residuals[i] < 1e-8);
  }
}

TEST_CASE("restarted solver is deterministic for a fixed seed") {
  KoopmanChannel k = build_koopman_channel(10, MapParams{2.0, 2.0, 0.5},
                                           Axis::R1);
  TopKOptions opt;
  opt.k = 6;
  opt.seed = 11;
  SpectralDecomposition a = top_k_spectrum(make_op(k.matrix), opt);
  SpectralDecomposition b = top_k_spectrum(make_op(k.matrix), opt);
  for (int i = 0; i < 6; ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("solver reports failure instead of returning junk") {
  KoopmanChannel k = build_koopman_channel(8, MapParams{2.0, 2.0, 0.5}, Axis::R1);
  TopKOptions opt;
  opt.k = 40;
  opt.subspace = 42;
  opt.tol = 1e-15;
  opt.max_restarts = 1;
  CHECK_THROWS_AS(top_k_spectrum(make_op(k.matrix), opt), SolverError);
}

TEST_CASE("trivial-mode deflation removes exactly one eigenvalue") {
  const int n = 8;
  Matrix m = build_channel_fast(n, 2.0, 0.5);
  Vector triv = maximally_mixed_direction(n);
  CHECK(std::abs(triv.norm() - 1.0) < 1e-14);
  CHECK((m * triv - triv).norm() < 1e-13);

  LinearOp op = deflate_op(make_op(m), triv);
  Vector out;
  op.apply(triv, out);
  CHECK(out.norm() < 1e-13);

  SpectralDecomposition full = full_spectrum(m, false);
  TopKOptions opt;
  opt.k = 4;
  opt.seed = 2;
  SpectralDecomposition defl = top_k_spectrum(op, opt);
  // Leading deflated eigenvalue is the first nontrivial one of the channel.
  CHECK(std::abs(std::abs(defl.values[0]) - std::abs(full.values[1])) < 1e-9);
}

TEST_CASE("dense and iterative leading nontrivial eigenvalues agree") {
  const int n = 20;
  Matrix m = build_channel_fast(n, 2.0, 0.5);
  Vector triv = maximally_mixed_direction(n);
  Lambda1Result ld = lambda1_dense(m, triv);
  CHECK(ld.backend == "dense");
  CHECK(std::abs(ld.value - cxd(0.9507768762732005, 0.0)) < 1e-9);

  ChannelApplier ch(n, 2.0, 0.5);
  TopKOptions opt;
  opt.k = 8;
  opt.seed = 5;
  Lambda1Result li = lambda1_iterative(make_op(ch), triv, opt, true);
  CHECK(li.backend == "iterative");
  CHECK(std::abs(ld.value - li.value) < 1e-9);
  REQUIRE(li.right_mode.size() == ch.dim());

  // Reported mode solves the eigenproblem of the deflated operator.
  LinearOp op = deflate_op(make_op(ch), triv);
  Vector img;
  op.apply(li.right_mode, img);
  CHECK((img - li.value * li.right_mode).norm() < 1e-8);
}

TEST_CASE("classical sweep reproduces pointwise solves") {
  TopKOptions opt;
  opt.k = 6;
  opt.seed = 4;
  std::vector<double> alphas = {0.0, 2.0};
  auto rows = lambda1_sweep_classical(10, 0.5, Axis::R1, alphas, opt);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha == 0.0);
  CHECK(rows[1].alpha == 2.0);

  for (const auto& row : rows) {
    KoopmanChannel k =
        build_koopman_channel(10, MapParams{row.alpha, row.alpha, 0.5}, Axis::R1);
    Lambda1Result ref = lambda1_dense(Matrix(k.matrix.cast<cxd>()),
                                      koopman_trivial_direction(10));
    CHECK(row.lambda1_abs == doctest::Approx(std::abs(ref.value)).epsilon(1e-8));
  }
}

TEST_CASE("entangling power closed form matches the generic definition") {
  Matrix u = build_coupled_unitary(8, MapParams{1.7, 2.9, 0.7});
  CHECK(entangling_power(u) ==
        doctest::Approx(entangling_power_coupled(8, 0.7)).epsilon(1e-12));

  // Products entangle nothing; the swap sets the normalization scale.
  Matrix prod = build_coupled_unitary(8, MapParams{1.7, 2.9, 0.0});
  CHECK(std::abs(entangling_power(prod)) < 1e-12);
  CHECK(entangling_power_coupled(8, 0.0) == 0.0);
  CHECK(operator_entanglement(swap_gate(8)) ==
        doctest::Approx(1.0 - 1.0 / 64.0).epsilon(1e-14));

  CHECK(std::abs(ep_bessel_asymptotic(100, 0.1) -
                 entangling_power_coupled(100, 0.1)) < 1e-3);
}

TEST_CASE("ring radii closed form matches the singular-value route") {
  const int n = 20;
  Matrix m = build_channel_fast(n, 1.3, 0.3);
  RingRadii generic = ring_radii(m);
  RingRadii closed = ring_radii_coupled(n, 0.3);
  CHECK(std::abs(generic.r_in - closed.r_in) < 1e-12);
  CHECK(std::abs(generic.r_out - closed.r_out) < 1e-12);
  CHECK(closed.r_in > 0.0);
  CHECK(closed.r_in < closed.r_out);
  CHECK(closed.r_out < 1.0);

  // Outer radius ties to the entangling power through the frobenius mass.
  CHECK(closed.r_out * closed.r_out ==
        doctest::Approx(1.0 - entangling_power_coupled(n, 0.3)).epsilon(1e-12));
}

TEST_CASE("annulus occupancy counts padded moduli") {
  RingRadii r{0.4, 0.8};
  std::vector<cxd> values = {cxd(0.5, 0.0), cxd(0.0, 0.79), cxd(0.39, 0.0),
                             cxd(0.85, 0.0), cxd(0.2, 0.0)};
  CHECK(annulus_occupancy(values, r, 0.0) == doctest::Approx(0.4));
  CHECK(annulus_occupancy(values, r, 0.05) == doctest::Approx(0.8));
  CHECK(annulus_occupancy({}, r, 0.1) == 0.0);
  CHECK(annulus_area(r) == doctest::Approx(kPi * (0.64 - 0.16)).epsilon(1e-14));
}
