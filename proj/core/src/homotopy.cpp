#include "seqpath/homotopy.hpp"

#include <cmath>
#include <stdexcept>

#include "profile_eval.hpp"
#include "seqpath/rng.hpp"

namespace seqpath {

namespace {

constexpr double kTinyW = 1e-12;

// Everything point-dependent the rows need: transformed variables and the
// chain-rule factors onto the perturbed profile pi = (1-t) d(w) + t prior.
struct PointEval {
  double t = 0;
  Eigen::VectorXd w, lambda, b, pi;
  Eigen::VectorXd dlam_dtau, dlam_dtheta_dt;  // z-formulation only
  Eigen::VectorXd db_dcoord;   // d b_k / d coord_k
  Eigen::VectorXd db_dt;       // d b_k / d t at fixed coords (z-formulation)
  Eigen::VectorXd pi_x, pi_t;  // d pi_k / d coord_k, d pi_k / d t
};

struct PsiFull {
  double s1, s2, w, lam;
  double dw_dtau, dw_dtheta, dl_dtau, dl_dtheta;
};

PsiFull psi_full(double tau, double theta, double kappa) {
  PsiFull e{};
  const double rr = std::sqrt(tau * tau + 4 * theta);
  if (tau >= 0) {
    e.s1 = (tau + rr) / 2;
    e.s2 = e.s1 > 0 ? theta / e.s1 : 0.0;
  } else {
    e.s2 = (rr - tau) / 2;
    e.s1 = e.s2 > 0 ? theta / e.s2 : 0.0;
  }
  e.w = std::pow(e.s1, kappa);
  e.lam = std::pow(e.s2, kappa);
  const double r = e.s1 + e.s2;
  if (r > 0) {
    const double p1 = std::pow(e.s1, kappa - 1);
    const double p2 = std::pow(e.s2, kappa - 1);
    e.dw_dtau = kappa * p1 * e.s1 / r;
    e.dw_dtheta = kappa * p1 / r;
    e.dl_dtau = -kappa * p2 * e.s2 / r;
    e.dl_dtheta = kappa * p2 / r;
  }
  return e;
}

}  // namespace

double transform_d(double v) {
  if (v < kTinyW) return 0.0;
  return std::exp(1.0 - 1.0 / v);
}

double transform_d_deriv(double v) {
  if (v < kTinyW) return 0.0;
  return std::exp(1.0 - 1.0 / v) / (v * v);
}

std::pair<double, double> psi(double tau, double theta, double kappa0,
                              double gamma0) {
  const double rr = std::sqrt(tau * tau + 4 * gamma0 * theta);
  double s1, s2;
  if (tau >= 0) {
    s1 = (tau + rr) / 2;
    s2 = s1 > 0 ? gamma0 * theta / s1 : 0.0;
  } else {
    s2 = (rr - tau) / 2;
    s1 = s2 > 0 ? gamma0 * theta / s2 : 0.0;
  }
  return {std::pow(s1, kappa0), std::pow(s2, kappa0)};
}

struct HomotopySystem::Impl {
  const GameTree& game;
  detail::EvalTables tables;
  BehavioralProfile prior;
  Eigen::VectorXd log_prior;
  Eigen::VectorXd alpha;  // indexed by residual row
  std::vector<int> row_of_flat;      // gap row per flat index, -1 at a0
  std::vector<int> norm_row;         // per infoset
  mutable double worst_identity = 0;

  explicit Impl(const GameTree& g) : game(g), tables(g) {}

  void eval_point(const SolverConfig& cfg, const HomotopyPoint& pt,
                  PointEval& pe) const {
    const int m0 = tables.m0;
    const double t = pt.t;
    pe.t = t;
    pe.w.resize(m0);
    pe.b.resize(m0);
    pe.pi.resize(m0);
    pe.db_dcoord.resize(m0);
    pe.pi_x.resize(m0);
    pe.pi_t.resize(m0);
    if (cfg.formulation == Formulation::kZSystem) {
      pe.lambda.resize(m0);
      pe.dlam_dtau.resize(m0);
      pe.dlam_dtheta_dt.resize(m0);
      pe.db_dt.resize(m0);
      const double kappa = cfg.kappa0;
      const double theta = std::pow(t, 1.0 / kappa);
      const double dtheta_dt =
          t > 0 ? (1.0 / kappa) * std::pow(t, 1.0 / kappa - 1.0) : 0.0;
      for (int k = 0; k < m0; ++k) {
        const PsiFull e = psi_full(pt.coords[k], theta, kappa);
        pe.w[k] = e.w;
        pe.lambda[k] = e.lam;
        if (t > 0) {
          // Overflowing trial points are rejected by their non-finite
          // residual; the identity is only meaningful where psi is finite.
          const double rel = std::abs(e.w * e.lam - t) / t;
          if (std::isfinite(rel) && rel > worst_identity)
            worst_identity = rel;
        }
        const double dprime = transform_d_deriv(e.w);
        pe.b[k] = transform_d(e.w);
        pe.db_dcoord[k] = dprime * e.dw_dtau;
        pe.db_dt[k] = dprime * e.dw_dtheta * dtheta_dt;
        pe.dlam_dtau[k] = e.dl_dtau;
        pe.dlam_dtheta_dt[k] = e.dl_dtheta * dtheta_dt;
        pe.pi_x[k] = (1 - t) * pe.db_dcoord[k];
        pe.pi_t[k] = (1 - t) * pe.db_dt[k] + prior.probs[k] - pe.b[k];
        pe.pi[k] = (1 - t) * pe.b[k] + t * prior.probs[k];
      }
    } else {
      for (int k = 0; k < m0; ++k) {
        const double w = pt.coords[k];
        pe.w[k] = w;
        pe.b[k] = transform_d(w);
        pe.db_dcoord[k] = transform_d_deriv(w);
        pe.pi_x[k] = (1 - t) * pe.db_dcoord[k];
        pe.pi_t[k] = prior.probs[k] - pe.b[k];
        pe.pi[k] = (1 - t) * pe.b[k] + t * prior.probs[k];
      }
    }
  }
};

HomotopySystem::HomotopySystem(const GameTree& game, const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(game)), config_(cfg) {
  if (!(config_.kappa0 > 2))
    throw AssessmentError("kappa0 must exceed 2");
  const int m0 = game.num_actions_total();
  if (config_.prior.empty()) {
    impl_->prior = uniform_profile(game);
  } else {
    impl_->prior.probs = config_.prior;
    validate_profile(game, impl_->prior);
    if (!impl_->prior.totally_mixed())
      throw AssessmentError("prior must be totally mixed");
  }
  impl_->log_prior.resize(m0);
  for (int k = 0; k < m0; ++k)
    impl_->log_prior[k] = std::log(impl_->prior.probs[k]);

  impl_->row_of_flat.assign(m0, -1);
  impl_->norm_row.resize(game.num_infosets());
  int row = 0;
  for (const InformationSet& is : game.infosets()) {
    for (int a = 1; a < is.num_actions(); ++a)
      impl_->row_of_flat[is.first_flat_index + a] = row++;
    impl_->norm_row[is.global_index] = row++;
  }

  if (config_.alpha.empty()) {
    Rng rng = Rng(config_.seed).split(0xa1fa);
    Eigen::VectorXd a(m0);
    for (int k = 0; k < m0; ++k)
      a[k] = rng.uniform(-config_.alpha_max, config_.alpha_max);
    impl_->alpha = std::move(a);
  } else {
    if (static_cast<int>(config_.alpha.size()) != m0)
      throw AssessmentError("alpha must have one entry per action");
    impl_->alpha =
        Eigen::Map<const Eigen::VectorXd>(config_.alpha.data(), m0);
  }
}

HomotopySystem::~HomotopySystem() = default;
HomotopySystem::HomotopySystem(HomotopySystem&&) noexcept = default;

const GameTree& HomotopySystem::game() const { return impl_->game; }
int HomotopySystem::dimension() const { return impl_->tables.m0; }
const Eigen::VectorXd& HomotopySystem::alpha() const { return impl_->alpha; }
void HomotopySystem::set_alpha(Eigen::VectorXd alpha) {
  if (alpha.size() != impl_->tables.m0)
    throw AssessmentError("alpha must have one entry per action");
  impl_->alpha = std::move(alpha);
}
const BehavioralProfile& HomotopySystem::prior() const { return impl_->prior; }
double HomotopySystem::worst_identity_error() const {
  return impl_->worst_identity;
}
void HomotopySystem::reset_identity_error() { impl_->worst_identity = 0; }

HomotopyPoint HomotopySystem::start_point() const {
  const int m0 = impl_->tables.m0;
  HomotopyPoint pt;
  pt.t = 1.0;
  pt.coords.resize(m0);
  for (int k = 0; k < m0; ++k) {
    const double c = 1.0 - impl_->log_prior[k];  // > 1
    if (config_.formulation == Formulation::kZSystem)
      pt.coords[k] =
          std::pow(c, -1.0 / config_.kappa0) - std::pow(c, 1.0 / config_.kappa0);
    else
      pt.coords[k] = 1.0 / c;
  }
  return pt;
}

Eigen::VectorXd HomotopySystem::residual(const HomotopyPoint& pt) const {
  const Impl& im = *impl_;
  const int m0 = im.tables.m0;
  PointEval pe;
  im.eval_point(config_, pt, pe);
  detail::ProfileEval prof;
  detail::eval_profile(im.tables, pe.pi, false, prof);

  const double t = pt.t;
  const double tt = t * (1 - t);
  Eigen::VectorXd R(m0);
  for (const InformationSet& is : im.game.infosets()) {
    const int k0 = is.first_flat_index;
    const int n = is.num_actions();
    const int gi = is.global_index;
    if (config_.formulation == Formulation::kZSystem) {
      for (int a = 1; a < n; ++a) {
        const int k = k0 + a;
        const int r = im.row_of_flat[k];
        const double lamdiff = pe.lambda[k] - pe.lambda[k0] -
                               t * (im.log_prior[k0] - im.log_prior[k]);
        R[r] = (1 - t) * (prof.P[k] - prof.P[k0]) + prof.omega[gi] * lamdiff -
               tt * im.alpha[r];
      }
    } else {
      double S = 0, WP = 0, WL = 0;
      for (int a = 0; a < n; ++a) {
        const int k = k0 + a;
        S += pe.w[k];
        WP += pe.w[k] * prof.P[k];
        WL += pe.w[k] * im.log_prior[k];
      }
      for (int a = 1; a < n; ++a) {
        const int k = k0 + a;
        const int r = im.row_of_flat[k];
        const double brace =
            pe.w[k] * (S * im.log_prior[k] - WL) + (S - n * pe.w[k]);
        R[r] = (1 - t) * pe.w[k] * (S * prof.P[k] - WP) +
               t * prof.omega[gi] * brace - tt * im.alpha[r];
      }
    }
    double bsum = 0;
    for (int a = 0; a < n; ++a) bsum += pe.b[k0 + a];
    R[im.norm_row[gi]] = bsum - 1.0 - tt * im.alpha[im.norm_row[gi]];
  }
  return R;
}

Eigen::MatrixXd HomotopySystem::jacobian(const HomotopyPoint& pt) const {
  const Impl& im = *impl_;
  const int m0 = im.tables.m0;
  PointEval pe;
  im.eval_point(config_, pt, pe);
  detail::ProfileEval prof;
  detail::eval_profile(im.tables, pe.pi, true, prof);

  const double t = pt.t;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m0, m0 + 1);
  const Eigen::VectorXd dPdt = prof.dP * pe.pi_t;          // m0
  const Eigen::VectorXd dOdt = prof.dOmega * pe.pi_t;      // per infoset

  for (const InformationSet& is : im.game.infosets()) {
    const int k0 = is.first_flat_index;
    const int n = is.num_actions();
    const int gi = is.global_index;
    if (config_.formulation == Formulation::kZSystem) {
      for (int a = 1; a < n; ++a) {
        const int k = k0 + a;
        const int r = im.row_of_flat[k];
        const double lamdiff = pe.lambda[k] - pe.lambda[k0] -
                               t * (im.log_prior[k0] - im.log_prior[k]);
        J.row(r).head(m0) =
            ((1 - t) * (prof.dP.row(k) - prof.dP.row(k0)) +
             lamdiff * prof.dOmega.row(gi))
                .cwiseProduct(pe.pi_x.transpose());
        J(r, k) += prof.omega[gi] * pe.dlam_dtau[k];
        J(r, k0) -= prof.omega[gi] * pe.dlam_dtau[k0];
        J(r, m0) = -(prof.P[k] - prof.P[k0]) +
                   (1 - t) * (dPdt[k] - dPdt[k0]) + dOdt[gi] * lamdiff +
                   prof.omega[gi] *
                       (pe.dlam_dtheta_dt[k] - pe.dlam_dtheta_dt[k0] -
                        (im.log_prior[k0] - im.log_prior[k])) -
                   (1 - 2 * t) * im.alpha[r];
      }
    } else {
      double S = 0, WP = 0, WL = 0, WdPdt = 0;
      Eigen::RowVectorXd WdP = Eigen::RowVectorXd::Zero(m0);
      for (int a = 0; a < n; ++a) {
        const int k = k0 + a;
        S += pe.w[k];
        WP += pe.w[k] * prof.P[k];
        WL += pe.w[k] * im.log_prior[k];
        WdP += pe.w[k] * prof.dP.row(k);
        WdPdt += pe.w[k] * dPdt[k];
      }
      for (int a = 1; a < n; ++a) {
        const int k = k0 + a;
        const int r = im.row_of_flat[k];
        const double gapsum = S * prof.P[k] - WP;
        const double brace =
            pe.w[k] * (S * im.log_prior[k] - WL) + (S - n * pe.w[k]);
        J.row(r).head(m0) =
            ((1 - t) * pe.w[k] * (S * prof.dP.row(k) - WdP) +
             t * brace * prof.dOmega.row(gi))
                .cwiseProduct(pe.pi_x.transpose());
        for (int a2 = 0; a2 < n; ++a2) {
          const int m = k0 + a2;
          const double delta = m == k ? 1.0 : 0.0;
          const double direct =
              (1 - t) * (delta * gapsum + pe.w[k] * (prof.P[k] - prof.P[m])) +
              t * prof.omega[gi] *
                  (delta * (S * im.log_prior[k] - WL) +
                   pe.w[k] * (im.log_prior[k] - im.log_prior[m]) + 1.0 -
                   n * delta);
          J(r, m) += direct;
        }
        J(r, m0) = -pe.w[k] * gapsum + prof.omega[gi] * brace +
                   (1 - t) * pe.w[k] * (S * dPdt[k] - WdPdt) +
                   t * dOdt[gi] * brace - (1 - 2 * t) * im.alpha[r];
      }
    }
    const int nr = im.norm_row[gi];
    double dbt = 0;
    for (int a = 0; a < n; ++a) {
      const int k = k0 + a;
      J(nr, k) = pe.db_dcoord[k];
      if (config_.formulation == Formulation::kZSystem) dbt += pe.db_dt[k];
    }
    J(nr, m0) = dbt - (1 - 2 * t) * im.alpha[nr];
  }
  return J;
}

Multipliers HomotopySystem::multipliers(const HomotopyPoint& pt) const {
  if (config_.formulation != Formulation::kZSystem)
    throw AssessmentError("multipliers are defined for the z-formulation");
  const int m0 = impl_->tables.m0;
  Multipliers mult;
  mult.w.resize(m0);
  mult.lambda.resize(m0);
  const double theta = std::pow(pt.t, 1.0 / config_.kappa0);
  for (int k = 0; k < m0; ++k) {
    auto [w, lam] = psi(pt.coords[k], theta, config_.kappa0, 1.0);
    mult.w[k] = w;
    mult.lambda[k] = lam;
  }
  return mult;
}

BehavioralProfile HomotopySystem::strategy(const HomotopyPoint& pt) const {
  const Impl& im = *impl_;
  PointEval pe;
  im.eval_point(config_, pt, pe);
  BehavioralProfile beta;
  beta.probs.resize(im.tables.m0);
  for (const InformationSet& is : im.game.infosets()) {
    const int k0 = is.first_flat_index;
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a) sum += pe.b[k0 + a];
    if (!(sum > 0))
      throw AssessmentError("degenerate point: strategy mass vanished at '" +
                            is.label + "'");
    for (int a = 0; a < is.num_actions(); ++a)
      beta.probs[k0 + a] = pe.b[k0 + a] / sum;
  }
  return beta;
}

Assessment HomotopySystem::recover_assessment(const HomotopyPoint& pt,
                                              double belief_t) const {
  const double bt = belief_t >= 0 ? belief_t : pt.t;
  Assessment as;
  as.profile = strategy(pt);
  const BehavioralProfile mixed =
      perturb_toward(impl_->game, as.profile, impl_->prior, bt);
  as.beliefs = bayes_beliefs(impl_->game, mixed);
  return as;
}

}  // namespace seqpath
