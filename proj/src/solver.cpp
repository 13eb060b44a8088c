#include "finrank/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "finrank/errors.hpp"

namespace finrank {

namespace {

constexpr double kMaxDCondition = 1e12;
constexpr double kPathAgreementTol = 1e-8;   // eigen path vs determinant scan
constexpr double kDegenerateGap = 1e-9;      // roots closer than this are flagged

// Per-sector pieces of A(E): A_s(E) = I + V_s diag(1/(eps_r - E)) W_s with
// W_s = V_s^T D_s^{-1}.
struct SectorOperator {
  const Sector* sector = nullptr;
  Eigen::VectorXd eps;    // poles of this sector
  Eigen::MatrixXd v;      // |n| x |r|
  Eigen::MatrixXd w;      // |r| x |n|

  Eigen::MatrixXd block(double energy) const {
    Eigen::VectorXd green = (eps.array() - energy).inverse().matrix();
    Eigen::MatrixXd a = v * green.asDiagonal() * w;
    a.diagonal().array() += 1.0;
    return a;
  }

  double det(double energy) const { return block(energy).determinant(); }
};

SectorOperator make_sector_operator(const Sector& sector, const Assembly& assembly) {
  const int nn = static_cast<int>(sector.n_ordinals.size());
  const int nr = static_cast<int>(sector.r_ordinals.size());
  SectorOperator op;
  op.sector = &sector;
  op.eps.resize(nr);
  op.v.resize(nn, nr);
  for (int j = 0; j < nr; ++j) {
    int r = sector.r_ordinals[j];
    op.eps(j) = assembly.eps(r - 1);
    for (int i = 0; i < nn; ++i) {
      op.v(i, j) = assembly.v_nr(sector.n_ordinals[i] - 1, r - 1);
    }
  }
  Eigen::MatrixXd d_block(nn, nn);
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      d_block(i, j) = assembly.d(sector.n_ordinals[i] - 1, sector.n_ordinals[j] - 1);
    }
  }
  op.w = d_block.llt().solve(op.v).transpose();
  return op;
}

void check_not_near_pole(double energy, const Eigen::VectorXd& eps,
                         double pole_exclusion) {
  for (Eigen::Index r = 0; r < eps.size(); ++r) {
    if (std::abs(energy - eps(r)) <= pole_exclusion) {
      throw PoleProximityError(energy, eps(r));
    }
  }
}

struct SectorRoots {
  std::vector<double> energies;    // eigen path, ascending
  std::vector<double> scan;        // determinant path, paired by index
  std::vector<double> residuals;
};

std::vector<double> scan_sector(const SectorOperator& op, double lo, double hi,
                                const SolverConfig& config) {
  std::vector<double> poles(op.eps.data(), op.eps.data() + op.eps.size());
  std::sort(poles.begin(), poles.end());

  std::vector<double> edges{lo};
  for (double p : poles) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);

  auto is_pole = [&](double x) {
    return std::any_of(poles.begin(), poles.end(),
                       [&](double p) { return p == x; });
  };

  std::vector<double> roots;
  auto bisect = [&](double a, double b, double fa, double fb) {
    while (b - a > config.root_tol) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;  // bracket at floating-point resolution
      double fm = op.det(mid);
      if (fm == 0.0) return mid;
      if ((fa < 0) != (fm < 0)) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    (void)fb;
    return 0.5 * (a + b);
  };

  const int points = config.scan_points_per_interval;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    double a = edges[e] + (is_pole(edges[e]) ? config.pole_exclusion : 0.0);
    double b = edges[e + 1] - (is_pole(edges[e + 1]) ? config.pole_exclusion : 0.0);
    if (a >= b) continue;
    double step = (b - a) / (points - 1);
    double x_prev = a;
    double f_prev = op.det(x_prev);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
      x_prev = a + 0.25 * step;
      f_prev = op.det(x_prev);
    }
    for (int i = 1; i < points; ++i) {
      double x = (i == points - 1) ? b : a + step * i;
      double f = op.det(x);
      if (f == 0.0) {
        roots.push_back(x);
        // resume the sign comparison just past the exact zero
        x = std::min(b, x + 0.25 * step);
        f = op.det(x);
        if (f == 0.0) continue;
      } else if ((f_prev < 0) != (f < 0)) {
        roots.push_back(bisect(x_prev, x, f_prev, f));
      }
      x_prev = x;
      f_prev = f;
    }
  }
  std::sort(roots.begin(), roots.end());
  // collapse duplicates from a root landing on a shared grid point
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 2 * config.root_tol) {
      unique.push_back(r);
    }
  }
  return unique;
}

SectorRoots solve_sector(const Sector& sector, const Assembly& assembly,
                         const SolverConfig& config, double lo, double hi) {
  Eigen::MatrixXd m = reduced_matrix(sector, assembly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("reduced eigenproblem failed to converge");
  }

  SectorRoots out;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    double mu = solver.eigenvalues()(j);
    if (mu < lo || mu > hi) continue;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      double pole = assembly.eps(sector.r_ordinals[r] - 1);
      if (std::abs(mu - pole) <= config.pole_exclusion) {
        throw NumericalError(
            "root " + std::to_string(mu) +
            " lies inside the exclusion band of the pole at " + std::to_string(pole));
      }
    }
    out.energies.push_back(mu);
    out.residuals.push_back(
        (m * solver.eigenvectors().col(j) - mu * solver.eigenvectors().col(j)).norm());
  }

  SectorOperator op = make_sector_operator(sector, assembly);
  out.scan = scan_sector(op, lo, hi, config);

  if (out.scan.size() != out.energies.size()) {
    std::ostringstream msg;
    msg << "path disagreement in sector l=" << sector.l << ": eigen path found "
        << out.energies.size() << " roots, determinant scan found "
        << out.scan.size();
    throw PathDisagreementError(msg.str());
  }
  for (std::size_t i = 0; i < out.scan.size(); ++i) {
    if (std::abs(out.scan[i] - out.energies[i]) > kPathAgreementTol) {
      std::ostringstream msg;
      msg << "path disagreement in sector l=" << sector.l << ": eigen root "
          << out.energies[i] << " vs scanned root " << out.scan[i];
      throw PathDisagreementError(msg.str());
    }
  }
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (n_rank < 1) {
    throw std::invalid_argument("n_rank: potential rank N must be at least 1");
  }
  if (r_rank < n_rank) {
    throw std::invalid_argument(
        "r_rank: Green's-function rank R must satisfy R >= N (choosing R < N "
        "reduces to R = N = min(R, N))");
  }
  if (!(root_tol > 0)) {
    throw std::invalid_argument("root_tol: must be positive");
  }
  if (!(pole_exclusion > 0)) {
    throw std::invalid_argument("pole_exclusion: must be positive");
  }
  if (scan_points_per_interval < 2) {
    throw std::invalid_argument("scan_points_per_interval: need at least 2 grid points");
  }
  if (window && !(window->first < window->second)) {
    throw std::invalid_argument("window: lower edge must be below upper edge");
  }
}

std::vector<Sector> partition_sectors(int n_rank, int r_rank) {
  if (n_rank < 1 || r_rank < n_rank) {
    throw std::invalid_argument("sector partition requires 1 <= N <= R");
  }
  BasisTable table = build_basis_table(r_rank);
  std::map<int, Sector> by_l;
  for (int ordinal = 1; ordinal <= r_rank; ++ordinal) {
    Sector& sector = by_l[table.state(ordinal).l];
    sector.l = table.state(ordinal).l;
    sector.r_ordinals.push_back(ordinal);
    if (ordinal <= n_rank) sector.n_ordinals.push_back(ordinal);
  }
  std::vector<Sector> sectors;
  sectors.reserve(by_l.size());
  for (auto& [l, sector] : by_l) sectors.push_back(std::move(sector));
  return sectors;
}

Assembly assemble(const SolverConfig& config, const PotentialSpec& spec) {
  config.validate();
  spec.validate();
  Assembly assembly;
  assembly.table = build_basis_table(config.r_rank);
  assembly.eps.resize(config.r_rank);
  for (int r = 1; r <= config.r_rank; ++r) {
    assembly.eps(r - 1) = assembly.table.energy(r);
  }
  assembly.v_nr = build_coupling(config.n_rank, config.r_rank, spec).entries;
  assembly.d = assembly.v_nr.leftCols(config.n_rank);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dsolver(assembly.d);
  double ev_min = dsolver.eigenvalues().cwiseAbs().minCoeff();
  double ev_max = dsolver.eigenvalues().cwiseAbs().maxCoeff();
  assembly.d_condition = (ev_min == 0.0) ? std::numeric_limits<double>::infinity()
                                         : ev_max / ev_min;
  if (!(assembly.d_condition <= kMaxDCondition)) {
    std::ostringstream msg;
    msg << "coupling matrix D is ill-conditioned (condition estimate "
        << assembly.d_condition << " exceeds " << kMaxDCondition << ")";
    throw NumericalError(msg.str());
  }
  assembly.d_inv = assembly.d.partialPivLu().inverse();
  assembly.sectors = partition_sectors(config.n_rank, config.r_rank);
  return assembly;
}

std::pair<double, double> search_window(const SolverConfig& config,
                                        const Assembly& assembly) {
  if (config.window) return *config.window;
  double bound = assembly.eps.maxCoeff();
  for (const Sector& sector : assembly.sectors) {
    if (sector.inert()) continue;  // rows reduce to the bare pole energies
    Eigen::MatrixXd m = reduced_matrix(sector, assembly);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      double row = m(r, r);
      for (Eigen::Index s = 0; s < m.cols(); ++s) {
        if (s != r) row += std::abs(m(r, s));
      }
      bound = std::max(bound, row);
    }
  }
  return {0.0, bound + 10.0};
}

Eigen::MatrixXd build_A(double energy, const Assembly& assembly,
                        const SolverConfig& config) {
  check_not_near_pole(energy, assembly.eps, config.pole_exclusion);
  Eigen::VectorXd green = (assembly.eps.array() - energy).inverse().matrix();
  Eigen::MatrixXd a =
      assembly.v_nr * green.asDiagonal() * assembly.v_nr.transpose() * assembly.d_inv;
  a.diagonal().array() += 1.0;
  return a;
}

Eigen::MatrixXd build_A(double energy, const SolverConfig& config,
                        const PotentialSpec& spec) {
  return build_A(energy, assemble(config, spec), config);
}

double det_A(double energy, const Assembly& assembly, const SolverConfig& config) {
  return build_A(energy, assembly, config).partialPivLu().determinant();
}

double det_A(double energy, const SolverConfig& config, const PotentialSpec& spec) {
  return det_A(energy, assemble(config, spec), config);
}

Eigen::MatrixXd reduced_matrix(const Sector& sector, const Assembly& assembly) {
  if (sector.inert()) {
    throw std::invalid_argument(
        "sector l=" + std::to_string(sector.l) +
        " is inert (no potential-rank states) and has no reduced matrix");
  }
  SectorOperator op = make_sector_operator(sector, assembly);
  Eigen::MatrixXd k = op.w * op.v;           // V^T D^{-1} V on this sector
  k = 0.5 * (k + k.transpose()).eval();      // remove solve round-off skew
  k.diagonal() += op.eps;
  return k;
}

Eigen::MatrixXd reduced_matrix(const Sector& sector, const SolverConfig& config,
                               const PotentialSpec& spec) {
  return reduced_matrix(sector, assemble(config, spec));
}

SpectrumResult solve_spectrum(const SolverConfig& config, const PotentialSpec& spec) {
  Assembly assembly = assemble(config, spec);
  auto [lo, hi] = search_window(config, assembly);

  std::vector<Root> merged;
  for (const Sector& sector : assembly.sectors) {
    if (sector.inert()) continue;
    SectorRoots sector_roots = solve_sector(sector, assembly, config, lo, hi);
    for (std::size_t i = 0; i < sector_roots.energies.size(); ++i) {
      Root root;
      root.energy = sector_roots.energies[i];
      root.scan_energy = sector_roots.scan[i];
      root.sector_l = sector.l;
      root.residual = sector_roots.residuals[i];
      merged.push_back(root);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.sector_l < b.sector_l;
  });
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i + 1].energy - merged[i].energy < kDegenerateGap) {
      merged[i].near_degenerate = true;
      merged[i + 1].near_degenerate = true;
    }
  }
  SpectrumResult result;
  result.roots = std::move(merged);
  return result;
}

}  // namespace finrank
