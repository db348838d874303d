#include "cricrec/rating/innings.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cricrec/error.h"

namespace cricrec {

namespace {

// Neumaier compensated sum.
class Sum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

struct LogBinomials {
  std::array<double, kInningsBalls + 1> all_out{};  // [b] = log C(b-1, 9)
  std::array<double, kInningsWickets> not_out{};    // [w] = log C(300, w)

  LogBinomials() {
    for (int b = kInningsWickets; b <= kInningsBalls; ++b) all_out[b] = log_choose(b - 1, kInningsWickets - 1);
    for (int w = 0; w < kInningsWickets; ++w) not_out[w] = log_choose(kInningsBalls, w);
  }
};

const LogBinomials& binomials() {
  static const LogBinomials table;
  return table;
}

// exp(log_coef + a·log(p) + b·log(q)) with 0^0 = 1.
double term(double log_coef, int a, double log_p, int b, double log_q) {
  double e = log_coef;
  if (a > 0) e += a * log_p;
  if (b > 0) e += b * log_q;
  return std::exp(e);
}

}  // namespace

InningsModel InningsModel::make(double r, double avg) {
  if (!(r > 0) || !(avg > 0) || !std::isfinite(r) || !std::isfinite(avg))
    throw malformed("innings model needs r > 0 and avg > 0");
  return {r, avg};
}

double InningsModel::dismissal_probability() const { return cricrec::dismissal_probability(r, avg); }

double dismissal_probability(double r, double avg) {
  if (!(r > 0) || !(avg > 0)) throw malformed("dismissal probability needs r > 0 and avg > 0");
  return std::min(r / avg, 1.0);
}

InningsMoments innings_moments(const InningsModel& model) {
  return innings_moments_for(model.r, model.dismissal_probability());
}

InningsMoments innings_moments_for(double r, double p_out) {
  p_out = std::clamp(p_out, 0.0, 1.0);
  const double p_survive = 1.0 - p_out;
  const double log_p = p_survive > 0 ? std::log(p_survive) : -std::numeric_limits<double>::infinity();
  const double log_q = p_out > 0 ? std::log(p_out) : -std::numeric_limits<double>::infinity();
  const LogBinomials& lb = binomials();

  Sum mass, e1, e2, allout;
  // All out on ball b: nine wickets in the first b-1 balls, the tenth on ball b.
  for (int b = kInningsWickets; b <= kInningsBalls; ++b) {
    const double prob = term(lb.all_out[b], b - kInningsWickets, log_p, kInningsWickets, log_q);
    const double runs = r * (b - kInningsWickets);
    mass.add(prob);
    allout.add(prob);
    e1.add(prob * runs);
    e2.add(prob * runs * runs);
  }
  // Innings survives all 300 balls having lost w < 10 wickets.
  for (int w = 0; w < kInningsWickets; ++w) {
    const double prob = term(lb.not_out[w], kInningsBalls - w, log_p, w, log_q);
    const double runs = r * (kInningsBalls - w);
    mass.add(prob);
    e1.add(prob * runs);
    e2.add(prob * runs * runs);
  }

  InningsMoments m;
  m.e_runs = e1.value();
  m.e_runs2 = e2.value();
  m.p_allout = std::min(allout.value(), 1.0);
  m.total_probability = mass.value();
  m.sigma_runs = std::sqrt(std::max(m.e_runs2 - m.e_runs * m.e_runs, 0.0));
  return m;
}

}  // namespace cricrec
