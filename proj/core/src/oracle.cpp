#include "mollow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mollow/correlations.hpp"
#include "mollow/error.hpp"
#include "mollow/parallel.hpp"

namespace mollow::oracle {

using cd = std::complex<double>;

void check_capacity(int n_atoms) {
  if (n_atoms < 1) throw InvalidParameter("oracle: need at least one atom");
  if (n_atoms > kMaxAtoms) {
    std::ostringstream msg;
    msg << "oracle: N = " << n_atoms << " exceeds the dense-operator limit N <= "
        << kMaxAtoms;
    throw CapacityError(msg.str(), n_atoms, kMaxAtoms);
  }
}

Eigen::Matrix2cd inversion() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::Matrix2cd raising() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 1) = 1.0;
  return m;
}

Eigen::Matrix2cd lowering() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 0) = 1.0;
  return m;
}

namespace {

// out += coef * (identity (x) ... op on `atom` ... (x) identity)
void add_embedded(Eigen::MatrixXcd& out, const Eigen::Matrix2cd& op, int atom, cd coef) {
  const Eigen::Index dim = out.rows();
  const Eigen::Index mask = Eigen::Index{1} << atom;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int bit = (col & mask) ? 1 : 0;
    for (int new_bit = 0; new_bit < 2; ++new_bit) {
      const cd v = op(new_bit, bit);
      if (v == cd{}) continue;
      const Eigen::Index row = new_bit ? (col | mask) : (col & ~mask);
      out(row, col) += coef * v;
    }
  }
}

Eigen::Index dimension(int n_atoms) { return Eigen::Index{1} << n_atoms; }

}  // namespace

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, int atom, int n_atoms) {
  check_capacity(n_atoms);
  if (atom < 0 || atom >= n_atoms) throw InvalidParameter("embed: atom index out of range");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dimension(n_atoms), dimension(n_atoms));
  add_embedded(out, op, atom, 1.0);
  return out;
}

BandOperator build_band_operator(int n_atoms, Band band, double delta,
                                 double mixing_angle) {
  check_capacity(n_atoms);
  const double s = std::sin(mixing_angle);
  const double c = std::cos(mixing_angle);
  Eigen::Matrix2cd source;
  switch (band) {
    case Band::C: source = inversion() * (std::sin(2.0 * mixing_angle) / 2.0); break;
    case Band::R: source = raising() * (c * c); break;
    case Band::L: source = lowering() * (s * s); break;
  }
  const Eigen::Index dim = dimension(n_atoms);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < n_atoms; ++j)
    add_embedded(a, source, j, std::polar(1.0, static_cast<double>(j) * delta));
  return {std::move(a), band, delta, n_atoms};
}

SteadyDensity uniform_density(int n_atoms) {
  check_capacity(n_atoms);
  const Eigen::Index dim = dimension(n_atoms);
  return {Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim),
          DensityKind::ResonantUniform};
}

SteadyDensity density_from_two_atom_state(const TwoAtomState& state) {
  const auto p = state.populations();
  const double r = 1.0 / std::sqrt(2.0);
  // Index = bit(atom a) + 2 bit(atom b); |2~ 1~> has atom a up, atom b down.
  const Eigen::Vector4cd e(1.0, 0.0, 0.0, 0.0);
  const Eigen::Vector4cd g(0.0, 0.0, 0.0, 1.0);
  const Eigen::Vector4cd sym(0.0, r, r, 0.0);
  const Eigen::Vector4cd anti(0.0, -r, r, 0.0);
  Eigen::MatrixXcd rho = p.ee * (e * e.adjoint()) + p.gg * (g * g.adjoint()) +
                         p.ss * (sym * sym.adjoint()) + p.aa * (anti * anti.adjoint());
  return {std::move(rho), DensityKind::TwoAtomDynamics};
}

cd expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
  return rho.cwiseProduct(op.transpose()).sum();
}

double first_order(const Eigen::MatrixXcd& rho, const BandOperator& a, Ordering ordering) {
  const Eigen::MatrixXcd& m = a.matrix;
  const Eigen::MatrixXcd intensity =
      ordering == Ordering::AntiNormal ? Eigen::MatrixXcd(m * m.adjoint())
                                       : Eigen::MatrixXcd(m.adjoint() * m);
  return expectation(rho, intensity).real();
}

Evaluation evaluate(const SteadyDensity& rho, const BandOperator& a_m,
                    const BandOperator& a_n, Ordering ordering) {
  const Eigen::MatrixXcd& am = a_m.matrix;
  const Eigen::MatrixXcd& an = a_n.matrix;
  Eigen::MatrixXcd product;
  switch (ordering) {
    case Ordering::Normal: {
      // A_m+ A_n+ A_n A_m = (A_n A_m)+ (A_n A_m)
      const Eigen::MatrixXcd b = an * am;
      product = b.adjoint() * b;
      break;
    }
    case Ordering::AntiNormal: {
      const Eigen::MatrixXcd b = an.adjoint() * am.adjoint();
      product = b.adjoint() * b;
      break;
    }
    case Ordering::IntensityProduct:
      product = (am.adjoint() * am) * (an.adjoint() * an);
      break;
  }
  Evaluation ev;
  ev.numerator = expectation(rho.matrix, product);
  ev.first_order_m = first_order(rho.matrix, a_m, ordering);
  ev.first_order_n = first_order(rho.matrix, a_n, ordering);
  if (std::abs(ev.numerator.imag()) > 1e-12 * std::max(1.0, std::abs(ev.numerator)))
    throw Error("oracle: second-order numerator is not real");
  if (!(ev.first_order_m > 1e-14) || !(ev.first_order_n > 1e-14))
    throw NormalizationError("oracle: vanishing first-order intensity");
  ev.value = ev.numerator.real() / (ev.first_order_m * ev.first_order_n);
  return ev;
}

double oracle_g2(int n_atoms, BandPair pair, double delta1, double delta2) {
  const auto rho = uniform_density(n_atoms);
  const auto am = build_band_operator(n_atoms, pair.first, delta1);
  const auto an = build_band_operator(n_atoms, pair.second, delta2);
  return evaluate(rho, am, an).value;
}

double DeltaGrid::at(int i) const noexcept {
  if (steps <= 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::size_t worker_memory_bytes(int n_atoms) {
  // Six band operators plus two product temporaries and the density.
  const std::size_t dim = std::size_t{1} << n_atoms;
  return 9 * dim * dim * sizeof(cd);
}

namespace {

std::size_t band_index(Band b) { return static_cast<std::size_t>(b); }

}  // namespace

SweepReport oracle_sweep_report(std::span<const int> n_range, const DeltaGrid& grid,
                                std::span<const BandPair> pairs,
                                const SweepOptions& options) {
  for (int n : n_range) {
    check_capacity(n);
    if (n < 2) throw InvalidParameter("oracle sweep: closed forms need N >= 2");
    if (options.density && options.density->matrix.rows() != dimension(n))
      throw InvalidParameter("oracle sweep: density size does not match N");
  }
  if (grid.steps < 1) throw InvalidParameter("oracle sweep: grid needs at least one step");

  const double tolerance = options.tolerance;
  SweepReport report{grid, tolerance, {}, true,
                     options.density ? options.density->kind
                                     : DensityKind::ResonantUniform};
  const auto steps = static_cast<std::size_t>(grid.steps);

  for (int n : n_range) {
    const std::size_t cap =
        std::max<std::size_t>(1, options.memory_budget_bytes / worker_memory_bytes(n));
    const std::size_t pool = std::min(std::max<std::size_t>(options.workers, 1), cap);
    const auto rho = options.density ? *options.density : uniform_density(n);

    // worst[row][pair] = (deviation, column)
    std::vector<std::vector<std::pair<double, std::size_t>>> worst(
        steps, std::vector<std::pair<double, std::size_t>>(pairs.size(), {0.0, 0}));

    parallel_blocks(steps, pool, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double d1 = grid.at(static_cast<int>(i));
        std::vector<BandOperator> first;
        for (Band b : kAllBands) first.push_back(build_band_operator(n, b, d1));
        for (std::size_t j = 0; j < steps; ++j) {
          const double d2 = grid.at(static_cast<int>(j));
          std::vector<BandOperator> second;
          for (Band b : kAllBands) second.push_back(build_band_operator(n, b, d2));
          for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto& pair = pairs[p];
            const double oracle_value =
                evaluate(rho, first[band_index(pair.first)],
                         second[band_index(pair.second)])
                    .value;
            const double dev = std::abs(oracle_value - g2_chain(pair, n, d1, d2));
            if (dev > worst[i][p].first || !std::isfinite(dev)) worst[i][p] = {dev, j};
          }
        }
      }
    });

    for (std::size_t p = 0; p < pairs.size(); ++p) {
      ReportEntry entry{n, pairs[p], 0.0, grid.at(0), grid.at(0)};
      for (std::size_t i = 0; i < steps; ++i) {
        const auto [dev, j] = worst[i][p];
        if (dev > entry.max_deviation || !std::isfinite(dev)) {
          entry.max_deviation = dev;
          entry.worst_delta1 = grid.at(static_cast<int>(i));
          entry.worst_delta2 = grid.at(static_cast<int>(j));
        }
      }
      if (!(entry.max_deviation < tolerance)) report.pass = false;
      report.entries.push_back(entry);
    }
  }
  return report;
}

SweepReport oracle_sweep_report(std::span<const int> n_range, const DeltaGrid& grid,
                                std::size_t workers) {
  const auto pairs = all_band_pairs();
  SweepOptions options;
  options.workers = workers;
  return oracle_sweep_report(n_range, grid, pairs, options);
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"n_atoms", e.n_atoms},
                       {"pair", to_string(e.pair)},
                       {"max_deviation", e.max_deviation},
                       {"worst_delta", {e.worst_delta1, e.worst_delta2}}});
  }
  return {{"grid",
           {{"delta_min", report.grid.min},
            {"delta_max", report.grid.max},
            {"steps", report.grid.steps}}},
          {"tolerance", report.tolerance},
          {"density", report.density == DensityKind::ResonantUniform
                          ? "resonant-uniform"
                          : "two-atom-dynamics (exploratory)"},
          {"entries", std::move(entries)},
          {"pass", report.pass}};
}

}  // namespace mollow::oracle
