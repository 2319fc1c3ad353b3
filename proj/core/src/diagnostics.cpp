#include "triodflow/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace triodflow {

namespace {

// trapezoid rule over the uniform x grid
double trapezoid(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  double sum = 0.5 * (q.front() + q.back());
  for (int i = 1; i < n; ++i) sum += q[i];
  return sum / n;
}

// second-order d/dx of an arbitrary sampled field
std::vector<double> dx_field(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  const double inv2dx = 0.5 * n;
  std::vector<double> out(f.size());
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2dx;
  for (int i = 1; i < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2dx;
  out[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) * inv2dx;
  return out;
}

void append_g17(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// derivative at t of the quadratic through (t0,y0), (t1,y1), (t2,y2)
double quadratic_derivative(double t, double t0, double y0, double t1,
                            double y1, double t2, double y2) {
  return y0 * (2.0 * t - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
         y1 * (2.0 * t - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
         y2 * (2.0 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
}

void require_increasing_times(const std::vector<DiagnosticsRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].t > records[i - 1].t))
      throw ConfigError("record times must be strictly increasing");
}

double balance_residual_at(const std::vector<DiagnosticsRecord>& r,
                           std::size_t i, std::size_t lo) {
  const double de =
      quadratic_derivative(r[i].t, r[lo].t, r[lo].energy, r[lo + 1].t,
                           r[lo + 1].energy, r[lo + 2].t, r[lo + 2].energy);
  return std::abs(de - r[i].dissipation_rhs);
}

}  // namespace

// ===== pointwise observables ===============================================

double energy(const TriodState& state, const TriodModel& model) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  return sig[0] * state.lengths[0] + sig[1] * state.lengths[1] +
         sig[2] * state.lengths[2];
}

double dissipation_rhs(const TriodState& state, const TriodModel& model) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    // int (sigma kappa)^2 ds = (sigma^2 / L) int (d theta/dx)^2 dx
    const auto d1 = dx_field(state.theta[j]);
    std::vector<double> q(d1.size());
    for (std::size_t i = 0; i < d1.size(); ++i) q[i] = d1[i] * d1[i];
    total += sig[j] * sig[j] / state.lengths[j] * trapezoid(q);
  }
  const auto rate = alpha_rate(state.alpha, state.lengths, model);
  for (int j = 0; j < 3; ++j) total += rate[j] * rate[j] / model.gamma;
  return -total;
}

double misorientation_norm(const TriodState& state) {
  const auto d = misorientations(state.alpha);
  return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
}

double alpha_sum(const TriodState& state) {
  return state.alpha[0] + state.alpha[1] + state.alpha[2];
}

std::pair<double, double> weighted_curvature_norms(const TriodState& state,
                                                   const TriodModel& model) {
  const auto sig = sigma_triple(model.sigma, state.alpha);
  double kappa_norm = 0.0, dkappa_norm = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double length = state.lengths[j];
    const std::vector<double> kappa = curvature_field(state, j);
    std::vector<double> q(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) q[i] = kappa[i] * kappa[i];
    kappa_norm += sig[j] * sig[j] * length * trapezoid(q);

    std::vector<double> dk = dx_field(kappa);  // d kappa/ds = (1/L) d kappa/dx
    for (double& v : dk) v /= length;
    for (std::size_t i = 0; i < dk.size(); ++i) q[i] = dk[i] * dk[i];
    dkappa_norm += sig[j] * sig[j] * sig[j] * length * trapezoid(q);
  }
  return {kappa_norm, dkappa_norm};
}

// ===== record assembly =====================================================

DiagnosticsRecord make_record(const TriodState& state, const TriodModel& model,
                              const EndpointSet& endpoints,
                              const PlanarTriod& steiner_reference) {
  DiagnosticsRecord rec;
  rec.t = state.time;
  rec.energy = energy(state, model);
  rec.dissipation_rhs = dissipation_rhs(state, model);
  rec.sum_delta_alpha_sq = misorientation_norm(state);
  rec.alpha_sum = alpha_sum(state);
  const auto norms = weighted_curvature_norms(state, model);
  rec.weighted_kappa_l2 = norms.first;
  rec.weighted_dkappa_l2 = norms.second;
  rec.herring_residual = herring_residual(state, model);

  const PlanarTriod triod = reconstruct(state, endpoints);
  Vec2 centroid{0.0, 0.0};
  for (int j = 0; j < 3; ++j) centroid = centroid + triod.curves[j].back();
  rec.junction_x = centroid.x / 3.0;
  rec.junction_y = centroid.y / 3.0;
  rec.junction_mismatch = junction_mismatch(triod);
  rec.dist_to_steiner = triod_distance(triod, steiner_reference);

  rec.min_length =
      std::min({state.lengths[0], state.lengths[1], state.lengths[2]});
  rec.triangle_condition_ok =
      triangle_condition(sigma_triple(model.sigma, state.alpha));
  rec.alpha = state.alpha;
  rec.lengths = state.lengths;
  return rec;
}

// ===== series tools ========================================================

std::vector<double> energy_balance_residuals(
    const std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 3)
    throw InsufficientRecords(
        "energy balance residual needs at least three records");
  require_increasing_times(records);
  std::vector<double> out(records.size() - 2);
  for (std::size_t i = 1; i + 1 < records.size(); ++i)
    out[i - 1] = balance_residual_at(records, i, i - 1);
  return out;
}

void fill_energy_balance_residuals(std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 3)
    throw InsufficientRecords(
        "energy balance residual needs at least three records");
  require_increasing_times(records);
  const std::size_t last = records.size() - 1;
  records[0].energy_balance_residual = balance_residual_at(records, 0, 0);
  for (std::size_t i = 1; i < last; ++i)
    records[i].energy_balance_residual = balance_residual_at(records, i, i - 1);
  records[last].energy_balance_residual =
      balance_residual_at(records, last, last - 2);
}

DecayFit decay_rate_fit(const std::vector<double>& ts,
                        const std::vector<double>& ys, double window_begin,
                        double window_end) {
  if (ts.size() != ys.size())
    throw ConfigError("decay fit needs matching sample counts");
  double st = 0.0, sy = 0.0;
  std::vector<double> t, ly;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < window_begin || ts[i] > window_end) continue;
    if (!(ys[i] > 0.0))
      throw NonPositiveSamples(
          "decay fit requires strictly positive samples in the window");
    t.push_back(ts[i]);
    ly.push_back(std::log(ys[i]));
    st += ts[i];
    sy += ly.back();
  }
  if (t.size() < 3)
    throw InsufficientRecords("decay fit needs at least three samples");
  const double n = static_cast<double>(t.size());
  const double mt = st / n, my = sy / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(stt > 0.0)) throw ConfigError("decay fit window has zero time spread");
  const double slope = sty / stt;
  DecayFit fit;
  fit.rate = -slope;
  // syy at the level of mean-subtraction roundoff means the series is
  // constant to machine precision; call that a perfect zero-rate fit rather
  // than dividing noise by noise.
  const double syy_floor =
      n * 1e-28 * std::max(1.0, my * my);
  if (syy > syy_floor) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double r = ly[i] - (my + slope * (t[i] - mt));
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  } else {
    fit.r_squared = 1.0;  // constant positive series: exact (rate 0) fit
  }
  return fit;
}

DecayFit decay_rate_fit(
    const std::vector<DiagnosticsRecord>& records,
    const std::function<double(const DiagnosticsRecord&)>& field,
    double window_begin, double window_end) {
  std::vector<double> ts, ys;
  ts.reserve(records.size());
  ys.reserve(records.size());
  for (const auto& r : records) {
    ts.push_back(r.t);
    ys.push_back(field(r));
  }
  return decay_rate_fit(ts, ys, window_begin, window_end);
}

std::array<double, 2> default_fit_window(
    const std::vector<DiagnosticsRecord>& records) {
  if (records.empty())
    throw InsufficientRecords("cannot derive a fit window from no records");
  const double t0 = records.front().t;
  const double t1 = records.back().t;
  return {t0 + 0.1 * (t1 - t0), t1};
}

// ===== CSV =================================================================

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = kTimeseriesHeader;
  out += '\n';
  for (const auto& r : records) {
    const double cols[] = {r.t,
                           r.energy,
                           r.dissipation_rhs,
                           r.energy_balance_residual,
                           r.sum_delta_alpha_sq,
                           r.alpha_sum,
                           r.weighted_kappa_l2,
                           r.weighted_dkappa_l2,
                           r.herring_residual,
                           r.junction_x,
                           r.junction_y,
                           r.junction_mismatch,
                           r.dist_to_steiner,
                           r.min_length,
                           r.alpha[0],
                           r.alpha[1],
                           r.alpha[2],
                           r.lengths[0],
                           r.lengths[1],
                           r.lengths[2]};
    bool first = true;
    for (double v : cols) {
      if (!first) out += ',';
      append_g17(out, v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

void write_timeseries_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& records) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << timeseries_csv(records);
  if (!file) throw Error("failed writing " + path);
}

}  // namespace triodflow
