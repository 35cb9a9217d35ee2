#include "aot/channel_metrics.hpp"

#include <cmath>
#include <string>

namespace aot {

namespace {

using Cplx = std::complex<double>;
using CMat = DenseMatrix<Cplx>;

}  // namespace

double trace_norm(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian);
  return solver.eigenvalues().cwiseAbs().sum();
}

DiamondBounds diamond_distance_bounds(const std::vector<CMat>& map_a,
                                      const std::vector<CMat>& map_b) {
  CMat ja = choi_matrix(map_a);
  CMat jb = choi_matrix(map_b);
  if (ja.rows() != jb.rows())
    throw structural_error("diamond bounds need maps of equal dimension");
  DiamondBounds bounds;
  bounds.lower = trace_norm(ja - jb);
  bounds.upper = static_cast<double>(map_a.front().rows()) * bounds.lower;
  return bounds;
}

PerturbedInstruments perturb_convex(const InstrumentSet<Cplx>& nominal,
                                    double epsilon,
                                    const InstrumentSet<Cplx>& alternative) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw structural_error("perturbation strength must be in [0, 1], got " +
                           std::to_string(epsilon));
  if (nominal.outcomes != alternative.outcomes ||
      nominal.settings != alternative.settings ||
      nominal.dimension != alternative.dimension)
    throw structural_error("perturbation needs instrument sets of equal shape");

  PerturbedInstruments result;
  if (epsilon == 0.0) {
    result.instruments = nominal;
    result.certified_eps = 0.0;
    return result;
  }
  if (epsilon == 1.0) {
    result.instruments = alternative;
    result.certified_eps = 2.0;
    return result;
  }

  result.instruments = nominal;
  double keep = std::sqrt(1.0 - epsilon);
  double mix = std::sqrt(epsilon);
  for (int x = 1; x <= nominal.settings; ++x) {
    auto& inst = result.instruments.instruments[static_cast<std::size_t>(x - 1)];
    const auto& alt = alternative.instruments[static_cast<std::size_t>(x - 1)];
    for (int a = 0; a < nominal.outcomes; ++a) {
      auto& list = inst.kraus[static_cast<std::size_t>(a)];
      for (auto& k : list) k *= keep;
      for (const auto& k : alt.kraus[static_cast<std::size_t>(a)])
        list.push_back(mix * k);
    }
  }
  result.certified_eps = 2.0 * epsilon;
  return result;
}

RobustnessReport robustness_check(const QuantumState<Cplx>& state,
                                  const InstrumentSet<Cplx>& nominal,
                                  const InstrumentSet<Cplx>& perturbed,
                                  double certified_eps, const Scenario& sc,
                                  int from_step) {
  if (nominal.outcomes != sc.outcomes || nominal.settings != sc.settings ||
      perturbed.outcomes != sc.outcomes || perturbed.settings != sc.settings)
    throw structural_error("robustness check needs matching scenario shape");
  if (nominal.dimension != perturbed.dimension)
    throw structural_error("robustness check needs equal dimensions");
  if (from_step < 1 || from_step > sc.length)
    throw structural_error("perturbation onset must be within 1..L");
  detail::check_table_bounds(sc);

  RobustnessReport report;
  report.length = sc.length;
  report.from_step = from_step;
  report.certified_eps = certified_eps;

  auto step = [&](const InstrumentSet<Cplx>& set, const CMat& rho, int x,
                  int a) {
    return apply_map(
        set.instruments[static_cast<std::size_t>(x - 1)]
            .kraus[static_cast<std::size_t>(a)],
        rho);
  };

  for (std::uint64_t ix = 0; ix < input_space_size(sc); ++ix) {
    std::vector<int> xs = decode_inputs(sc, ix);
    for (std::uint64_t oa = 0; oa < output_space_size(sc); ++oa) {
      std::vector<int> as = decode_outputs(sc, oa);
      CMat rho_nominal = state.rho;
      CMat rho_mixed = state.rho;
      double p_first = 0.0;
      for (int t = 1; t <= sc.length; ++t) {
        int x = xs[static_cast<std::size_t>(t - 1)];
        int a = as[static_cast<std::size_t>(t - 1)];
        rho_nominal = step(nominal, rho_nominal, x, a);
        rho_mixed = step(t >= from_step ? perturbed : nominal, rho_mixed, x, a);
        if (t == 1) p_first = rho_nominal.trace().real();
      }
      double p = rho_nominal.trace().real();
      double p_tilde = rho_mixed.trace().real();
      double deviation = std::abs(p_tilde - p);
      double bound = from_step >= 2
                         ? (sc.length - 1) * certified_eps * p_first
                         : sc.length * certified_eps;
      ++report.sequences_checked;
      bool worst = deviation > report.max_deviation;
      if (deviation > report.max_deviation) report.max_deviation = deviation;
      if (bound > 0.0 && deviation / bound > report.max_ratio)
        report.max_ratio = deviation / bound;
      if (deviation > bound + 1e-12) ++report.violations;
      if (worst) {
        report.worst_inputs = xs;
        report.worst_outputs = as;
        report.worst_bound = bound;
        report.worst_p = p;
        report.worst_p_tilde = p_tilde;
      }
    }
  }
  return report;
}

}  // namespace aot
