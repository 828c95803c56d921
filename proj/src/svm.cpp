#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>
#include <vector>

#include "nlosbench/error.hpp"
#include "nlosbench/learn.hpp"
#include "nlosbench/log.hpp"

namespace nlosbench::learn {

namespace {

constexpr double kAlphaFloor = 1e-12;  // below this an alpha is zero
constexpr double kEtaFloor = 1e-12;    // stand-in curvature for flat pairs

}  // namespace

double kernel_eval(const KernelSpec& kernel, const FeatureVec& a,
                   const FeatureVec& b) {
  if (kernel.type == KernelSpec::Type::Linear) return a.dot(b);
  if (!(kernel.gamma > 0.0)) throw Error("rbf kernel requires gamma > 0");
  return std::exp(-kernel.gamma * (a - b).squaredNorm());
}

namespace {

// SMO on the dual with per-point box constraints [0, cap_i]. Capacities
// above C arise from merged duplicate samples (see svm_train); the dual
// is identical either way and merging keeps the working set small.
//
// Pair selection is maximal-violating-pair with a second-order refinement
// of the partner choice; the bias never enters the iteration (it cancels
// from every update) and is recovered from the final gradient. The stop
// test, gap <= 2*tol, is exactly "every point meets its KKT condition
// within tol once the bias is placed mid-gap".
class Smo {
 public:
  Smo(const FeatureMatrix& x, const Eigen::VectorXd& y,
      const Eigen::VectorXd& cap, const KernelSpec& kernel, double tol,
      int max_passes)
      : x_(x),
        y_(y),
        cap_(cap),
        kernel_(kernel),
        tol_(tol),
        m_(x.rows()),
        iteration_cap_(static_cast<std::size_t>(max_passes) * 5 *
                       std::max<std::size_t>(static_cast<std::size_t>(m_),
                                             200)),
        sq_norm_(x.rowwise().squaredNorm()),
        alpha_(Eigen::VectorXd::Zero(x.rows())),
        grad_(Eigen::VectorXd::Zero(x.rows())) {
    const std::size_t bytes_per_col = sizeof(double) * m_;
    const std::size_t budget = std::size_t{256} << 20;
    cache_capacity_ = std::min<std::size_t>(
        static_cast<std::size_t>(m_),
        std::max<std::size_t>(64, budget / std::max<std::size_t>(
                                      1, bytes_per_col)));
    slot_of_.assign(static_cast<std::size_t>(m_), -1);
    slots_.resize(cache_capacity_);
    owner_.assign(cache_capacity_, -1);
  }

  void run() {
    int stuck = 0;
    for (;;) {
      if (iterations_ >= iteration_cap_) {
        converged_ = false;
        break;
      }
      const Selection sel = select_pair();
      if (sel.gap <= 2.0 * tol_) {
        // Candidate optimum; confirm against a freshly computed gradient
        // in case the incremental updates drifted.
        refresh_gradient();
        if (select_pair().gap <= 2.0 * tol_) {
          converged_ = true;
          break;
        }
        continue;
      }
      if (sel.up < 0 || sel.low < 0) {
        converged_ = false;
        break;
      }
      ++iterations_;
      if (take_step(sel.up, sel.low)) {
        stuck = 0;
        continue;
      }
      // A maximal violating pair always admits a strict step; failing
      // twice in a row even on an exact gradient means round-off has
      // pinned us.
      refresh_gradient();
      if (++stuck >= 2) {
        converged_ = false;
        break;
      }
    }
    finalize();
  }

  const Eigen::VectorXd& alpha() const { return alpha_; }
  double bias() const { return bias_; }
  bool converged() const { return converged_; }
  std::size_t iterations() const { return iterations_; }
  double max_violation() const { return max_violation_; }

 private:
  struct Selection {
    Eigen::Index up = -1;   // argmax beta over the b >= beta_i side
    Eigen::Index low = -1;  // argmin beta over the b <= beta_i side
    double gap = 0.0;
  };

  // beta_i = y_i - u_i is the bias that would put point i exactly on its
  // margin, where u_i = sum_j alpha_j y_j K_ij is the biasless decision
  // value and grad_[i] = u_i * y_i - 1 its dual gradient.
  double beta(Eigen::Index i) const { return -y_[i] * grad_[i]; }

  // Bound classification must tolerate clamp residue, or points an ulp
  // away from their box edge get selected for steps too small to apply.
  double bound_eps(Eigen::Index i) const {
    return kAlphaFloor * (1.0 + cap_[i]);
  }
  bool at_lower(Eigen::Index i) const { return alpha_[i] <= bound_eps(i); }
  bool at_upper(Eigen::Index i) const {
    return alpha_[i] >= cap_[i] - bound_eps(i);
  }

  bool in_up_set(Eigen::Index i) const {
    return y_[i] > 0.0 ? !at_upper(i) : !at_lower(i);
  }
  bool in_low_set(Eigen::Index i) const {
    return y_[i] > 0.0 ? !at_lower(i) : !at_upper(i);
  }

  Selection select_pair() {
    Selection sel;
    double best_up = -std::numeric_limits<double>::infinity();
    double min_le = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double b_i = beta(i);
      if (in_up_set(i) && b_i > best_up) {
        best_up = b_i;
        sel.up = i;
      }
      if (in_low_set(i)) min_le = std::min(min_le, b_i);
    }
    if (sel.up < 0 || !std::isfinite(min_le)) return sel;
    sel.gap = best_up - min_le;
    if (sel.gap <= 2.0 * tol_) return sel;

    // Second-order partner choice: largest decrease estimate
    // (beta_up - beta_j)^2 / eta_j among violating partners.
    const Eigen::VectorXd& col_up = column(sel.up);
    const double k_up = kernel_diag(sel.up);
    double best_score = -1.0;
    for (Eigen::Index j = 0; j < m_; ++j) {
      if (j == sel.up || !in_low_set(j)) continue;
      const double diff = best_up - beta(j);
      if (diff <= 0.0) continue;
      double eta = k_up + kernel_diag(j) - 2.0 * col_up[j];
      if (eta <= 0.0) eta = kEtaFloor;
      const double score = diff * diff / eta;
      if (score > best_score) {
        best_score = score;
        sel.low = j;
      }
    }
    return sel;
  }

  double kernel_diag(Eigen::Index i) const {
    return kernel_.type == KernelSpec::Type::Linear ? sq_norm_[i] : 1.0;
  }

  double kernel_scalar(Eigen::Index i, Eigen::Index j) const {
    if (kernel_.type == KernelSpec::Type::Linear) {
      return x_.row(i).dot(x_.row(j));
    }
    if (i == j) return 1.0;
    return std::exp(-kernel_.gamma * (x_.row(i) - x_.row(j)).squaredNorm());
  }

  // Kernel column K(:, i), cached with round-robin eviction.
  const Eigen::VectorXd& column(Eigen::Index i) {
    const auto idx = static_cast<std::size_t>(i);
    if (slot_of_[idx] >= 0) {
      return slots_[static_cast<std::size_t>(slot_of_[idx])];
    }
    const std::size_t slot = next_slot_++ % cache_capacity_;
    if (owner_[slot] >= 0) slot_of_[static_cast<std::size_t>(owner_[slot])] = -1;
    owner_[slot] = i;
    slot_of_[idx] = static_cast<int>(slot);
    Eigen::VectorXd& col = slots_[slot];
    if (kernel_.type == KernelSpec::Type::Linear) {
      col.noalias() = x_ * x_.row(i).transpose();
    } else {
      col = (-kernel_.gamma *
             (sq_norm_.array() + sq_norm_[i] -
              2.0 * (x_ * x_.row(i).transpose()).array())
                 .max(0.0))
                .exp();
    }
    return col;
  }

  bool take_step(Eigen::Index i1, Eigen::Index i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1], a2 = alpha_[i2];
    const double y1 = y_[i1], y2 = y_[i2];
    const double c1 = cap_[i1], c2 = cap_[i2];
    const double s = y1 * y2;

    double lo, hi;
    if (s < 0.0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c2, c1 + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c1);
      hi = std::min(c2, a1 + a2);
    }
    if (lo >= hi) return false;

    const double k11 = kernel_diag(i1);
    const double k22 = kernel_diag(i2);
    const double k12 = kernel_scalar(i1, i2);
    double eta = k11 + k22 - 2.0 * k12;
    if (eta <= 0.0) eta = kEtaFloor;

    // F_i = u_i - y_i = y_i * grad_i; the bias cancels from the update.
    const double f1 = y1 * grad_[i1];
    const double f2 = y2 * grad_[i2];
    const double a2_new =
        std::clamp(a2 + y2 * (f1 - f2) / eta, lo, hi);
    if (a2_new == a2) return false;
    double a1_new = a1 + s * (a2 - a2_new);
    a1_new = std::clamp(a1_new, 0.0, c1);  // absorb round-off at the box

    const double d1 = a1_new - a1;
    const double d2 = a2_new - a2;
    {
      const Eigen::VectorXd& col1 = column(i1);
      grad_ += (y1 * d1) * (y_.cwiseProduct(col1));
    }
    {
      const Eigen::VectorXd& col2 = column(i2);
      grad_ += (y2 * d2) * (y_.cwiseProduct(col2));
    }
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    return true;
  }

  // Recomputes grad_ = diag(y) * u - 1 from scratch.
  void refresh_gradient() {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m_);
    for (Eigen::Index j = 0; j < m_; ++j) {
      if (alpha_[j] > kAlphaFloor) u += (alpha_[j] * y_[j]) * column(j);
    }
    grad_ = y_.cwiseProduct(u) - Eigen::VectorXd::Ones(m_);
  }

  // Places the bias mid-gap and records the worst KKT residual.
  void finalize() {
    refresh_gradient();
    double max_ge = -std::numeric_limits<double>::infinity();
    double min_le = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (in_up_set(i)) max_ge = std::max(max_ge, beta(i));
      if (in_low_set(i)) min_le = std::min(min_le, beta(i));
    }
    if (std::isfinite(max_ge) && std::isfinite(min_le)) {
      bias_ = 0.5 * (max_ge + min_le);
    } else if (std::isfinite(max_ge)) {
      bias_ = max_ge;
    } else if (std::isfinite(min_le)) {
      bias_ = min_le;
    } else {
      bias_ = 0.0;
    }
    max_violation_ = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      // y_i f_i - 1 = y_i (bias - beta_i)
      const double slack = y_[i] * (bias_ - beta(i));
      double violation = 0.0;
      if (at_lower(i)) {
        violation = std::max(0.0, -slack);
      } else if (at_upper(i)) {
        violation = std::max(0.0, slack);
      } else {
        violation = std::abs(slack);
      }
      max_violation_ = std::max(max_violation_, violation);
    }
    if (converged_ && max_violation_ > tol_) converged_ = false;
  }

  const FeatureMatrix& x_;
  const Eigen::VectorXd& y_;
  const Eigen::VectorXd& cap_;
  KernelSpec kernel_;
  double tol_;
  Eigen::Index m_;
  std::size_t iteration_cap_;
  Eigen::VectorXd sq_norm_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd grad_;  // y_i * u_i - 1
  double bias_ = 0.0;

  std::size_t cache_capacity_ = 0;
  std::vector<int> slot_of_;
  std::vector<Eigen::VectorXd> slots_;
  std::vector<Eigen::Index> owner_;
  std::size_t next_slot_ = 0;

  bool converged_ = true;
  std::size_t iterations_ = 0;
  double max_violation_ = 0.0;
};

struct SampleKey {
  std::uint64_t bits[3];
  int label;

  bool operator==(const SampleKey&) const = default;
};

struct SampleKeyHash {
  std::size_t operator()(const SampleKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    mix(k.bits[0]);
    mix(k.bits[1]);
    mix(k.bits[2]);
    mix(static_cast<std::uint64_t>(k.label));
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t double_bits(double v) {
  std::uint64_t out;
  std::memcpy(&out, &v, sizeof(out));
  return out;
}

}  // namespace

SvmModel svm_train(const std::vector<features::FeatureSample>& samples,
                   const SvmTrainOptions& options) {
  if (options.c <= 0.0) throw Error("c must be positive");
  if (options.tol <= 0.0) throw Error("tol must be positive");
  if (options.max_passes <= 0) throw Error("max_passes must be positive");

  const std::size_t n = samples.size();
  bool saw_los = false, saw_nlos = false;
  for (const auto& s : samples) {
    (s.label == Condition::LoS ? saw_los : saw_nlos) = true;
  }
  if (!saw_los || !saw_nlos) throw SingleClass();

  const FeatureMatrix x = feature_matrix(samples);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    y[static_cast<Eigen::Index>(i)] =
        samples[i].label == Condition::NLoS ? 1.0 : -1.0;
  }

  KernelSpec kernel = options.kernel;
  if (kernel.type == KernelSpec::Type::Linear) {
    kernel.gamma = 0.0;
  } else if (kernel.gamma <= 0.0) {
    // Scale heuristic: 1 / (n_features * mean feature variance).
    const Eigen::RowVector3d mean = x.colwise().mean();
    const double mean_var = (x.rowwise() - mean).array().square().mean();
    kernel.gamma = mean_var > 0.0 ? 1.0 / (kNumFeatures * mean_var) : 1.0;
  }

  // PDR features land on a coarse grid, so big traces carry many exact
  // duplicates. Merging a duplicate group into one dual variable with
  // capacity count*C leaves the optimization problem unchanged and cuts
  // SMO's working set by an order of magnitude.
  std::unordered_map<SampleKey, Eigen::Index, SampleKeyHash> seen;
  std::vector<std::vector<std::size_t>> members;
  std::vector<Eigen::Index> unique_rows;
  seen.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const SampleKey key{{double_bits(x(row, 0)), double_bits(x(row, 1)),
                         double_bits(x(row, 2))},
                        y[row] > 0.0 ? 1 : -1};
    const auto [it, inserted] =
        seen.try_emplace(key, static_cast<Eigen::Index>(members.size()));
    if (inserted) {
      members.emplace_back();
      unique_rows.push_back(row);
    }
    members[static_cast<std::size_t>(it->second)].push_back(i);
  }

  const auto mu = static_cast<Eigen::Index>(members.size());
  FeatureMatrix xu(mu, kNumFeatures);
  Eigen::VectorXd yu(mu), cap(mu);
  for (Eigen::Index u = 0; u < mu; ++u) {
    xu.row(u) = x.row(unique_rows[static_cast<std::size_t>(u)]);
    yu[u] = y[unique_rows[static_cast<std::size_t>(u)]];
    cap[u] = options.c *
             static_cast<double>(members[static_cast<std::size_t>(u)].size());
  }

  Smo smo(xu, yu, cap, kernel, options.tol, options.max_passes);
  smo.run();
  if (!smo.converged()) {
    log::warn("SMO did not converge after " + std::to_string(smo.iterations()) +
              " iterations (max KKT violation " +
              std::to_string(smo.max_violation()) +
              "); returning best iterate");
  }

  // Split each merged alpha back over its duplicates: fill whole boxes of
  // C first, then the remainder. Per-point KKT status is preserved since
  // duplicates share f(x).
  std::vector<std::pair<std::size_t, double>> expanded;
  for (Eigen::Index u = 0; u < mu; ++u) {
    double rem = smo.alpha()[u];
    if (rem <= kAlphaFloor) continue;
    for (const std::size_t orig : members[static_cast<std::size_t>(u)]) {
      if (rem <= kAlphaFloor) break;
      const double a = std::min(options.c, rem);
      expanded.emplace_back(orig, a);
      rem -= a;
    }
  }
  std::sort(expanded.begin(), expanded.end());

  SvmModel model;
  model.kernel = kernel;
  model.c = options.c;
  model.bias = smo.bias();
  const auto n_sv = static_cast<Eigen::Index>(expanded.size());
  model.support_vectors.resize(n_sv, kNumFeatures);
  model.alpha.resize(n_sv);
  model.label.resize(n_sv);
  double alpha_label_sum = 0.0;
  for (Eigen::Index i = 0; i < n_sv; ++i) {
    const auto [orig, a] = expanded[static_cast<std::size_t>(i)];
    model.support_vectors.row(i) = x.row(static_cast<Eigen::Index>(orig));
    model.alpha[i] = a;
    model.label[i] = y[static_cast<Eigen::Index>(orig)];
    alpha_label_sum += a * model.label[i];
  }
  model.diagnostics.converged = smo.converged();
  model.diagnostics.iterations = smo.iterations();
  model.diagnostics.max_kkt_violation = smo.max_violation();
  model.diagnostics.alpha_label_sum = alpha_label_sum;
  return model;
}

Eigen::VectorXd svm_decision_function(const SvmModel& model,
                                      const FeatureMatrix& x) {
  if (model.support_vectors.rows() == 0) throw EmptyModel();
  const Eigen::VectorXd w = model.alpha.cwiseProduct(model.label);
  Eigen::VectorXd out(x.rows());
  if (model.kernel.type == KernelSpec::Type::Linear) {
    const Eigen::Vector3d folded = model.support_vectors.transpose() * w;
    out = (x * folded).array() + model.bias;
    return out;
  }
  const Eigen::VectorXd sv_sq = model.support_vectors.rowwise().squaredNorm();
  constexpr Eigen::Index kBlock = 512;
  for (Eigen::Index start = 0; start < x.rows(); start += kBlock) {
    const Eigen::Index len = std::min(kBlock, x.rows() - start);
    const auto block = x.middleRows(start, len);
    Eigen::MatrixXd dist =
        (-2.0 * (block * model.support_vectors.transpose())).eval();
    dist.colwise() += block.rowwise().squaredNorm();
    dist.rowwise() += sv_sq.transpose();
    out.segment(start, len) =
        ((-model.kernel.gamma * dist.cwiseMax(0.0)).array().exp().matrix() *
         w)
            .array() +
        model.bias;
  }
  return out;
}

SvmPrediction svm_predict(const SvmModel& model, const FeatureVec& x) {
  FeatureMatrix one(1, kNumFeatures);
  one.row(0) = x.transpose();
  const double margin = svm_decision_function(model, one)[0];
  return {margin > 0.0 ? Condition::NLoS : Condition::LoS, margin};
}

}  // namespace nlosbench::learn
